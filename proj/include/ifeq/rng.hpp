#pragma once

#include <bit>
#include <cstdint>

namespace ifeq {

inline constexpr std::uint64_t golden64 = 0x9e3779b97f4a7c15ull;

// splitmix64 finalizer; bijective on u64.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

constexpr std::uint64_t key_combine(std::uint64_t a, std::uint64_t b) {
    return mix64(a + golden64 + mix64(b));
}

inline std::uint64_t key_of_double(double x) {
    return std::bit_cast<std::uint64_t>(x);
}

// Counter-based stream: the n-th draw depends only on (key, n), so any
// (point, sample) pair can be keyed independently of evaluation schedule.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t key) : key_(key) {}

    std::uint64_t next_u64() { return mix64(key_ + golden64 * ++counter_); }

    // uniform in [0, 1), 53 random bits
    double next_unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

} // namespace ifeq
