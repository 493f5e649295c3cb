#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "ifeq/almost_limit.hpp"
#include "ifeq/errors.hpp"

using namespace ifeq;

namespace {

std::vector<double> alternating(std::size_t len) {
    std::vector<double> s(len);
    for (std::size_t i = 0; i < len; ++i) s[i] = double(i % 2);
    return s;
}

// blocks of 0s then 1s with doubling lengths: 0 1 1 0 0 0 0 1x8 ...
std::vector<double> doubling_blocks(std::size_t len) {
    std::vector<double> s(len);
    double bit = 0.0;
    std::size_t block = 1, fill = 0;
    for (std::size_t i = 0; i < len; ++i) {
        s[i] = bit;
        if (++fill == block) {
            fill = 0;
            block *= 2;
            bit = 1.0 - bit;
        }
    }
    return s;
}

} // namespace

TEST_CASE("window mean table matches a direct sum on a tiny sequence") {
    std::vector<double> seq = {1, 2, 3, 4, 5};
    AlmostLimitParams p;
    p.n_values = {1, 2};
    p.shift_max = 2;
    p.m_max = 16;
    auto t = cesaro_table(seq, p);
    CHECK(t.means[0][0] == 1.0); // C(1,k) copies the sequence
    CHECK(t.means[0][1] == 2.0);
    CHECK(t.means[0][2] == 3.0);
    CHECK(t.means[1][0] == 1.5);
    CHECK(t.means[1][1] == 2.5);
    CHECK(t.means[1][2] == 3.5);
}

TEST_CASE("short sequences are rejected") {
    std::vector<double> seq(100, 0.0);
    AlmostLimitParams p; // needs 512 + 256 entries
    CHECK_THROWS_AS(almost_limit(seq, p), Error);
    CHECK_THROWS_AS(cesaro_table(seq, p), Error);
}

TEST_CASE("constant sequences converge to the constant exactly") {
    std::vector<double> seq(2049, 0.625);
    auto r = almost_limit(seq, {});
    CHECK(r.status == AlmostLimitStatus::convergent);
    CHECK(r.value == 0.625);
    CHECK(certified(r.status));
}

TEST_CASE("fast-decaying tails certify convergence to the limit") {
    // geometric transient dies long before the second half
    std::size_t len = 2049;
    std::vector<double> seq(len);
    for (std::size_t i = 0; i < len; ++i)
        seq[i] = 0.375 + 2.0 * std::pow(0.97, double(i));
    auto r = almost_limit(seq, {});
    CHECK(r.status == AlmostLimitStatus::convergent);
    CHECK(std::fabs(r.value - 0.375) <= 1e-6);
}

TEST_CASE("squaring-map iterates at 0.9 certify convergence to zero") {
    // seq[m] = 0.9^(2^m), a large transient then exact zeros
    std::size_t len = 2049;
    std::vector<double> seq(len);
    for (std::size_t i = 0; i < len; ++i) {
        double v = 0.9;
        for (std::size_t j = 0; j < i && v > 0.0; ++j) v *= v;
        seq[i] = v;
    }
    auto r = almost_limit(seq, {});
    CHECK(r.status == AlmostLimitStatus::convergent);
    CHECK(std::fabs(r.value) <= 1e-6);
}

TEST_CASE("the alternating sequence is almost convergent to one half") {
    auto r = almost_limit(alternating(2049), {});
    CHECK(r.status == AlmostLimitStatus::almost_convergent);
    CHECK(r.value == 0.5);
    CHECK(std::fabs(r.value - 0.5) <= 1e-3);
}

TEST_CASE("doubling blocks stay undecided at every probe length") {
    for (std::size_t len : {1024, 1500, 2049, 4096}) {
        auto p = AlmostLimitParams::for_length(len);
        auto r = almost_limit(doubling_blocks(len), p);
        CHECK(r.status == AlmostLimitStatus::undecided);
        CHECK(std::isnan(r.value));
    }
}

TEST_CASE("oscillations that never settle stay undecided at default layout") {
    auto r = almost_limit(doubling_blocks(2049), {});
    CHECK(r.status == AlmostLimitStatus::undecided);
}

TEST_CASE("entries past the cap report unbounded") {
    std::vector<double> seq(2049, 0.0);
    seq[1000] = 2e9;
    auto r = almost_limit(seq, {});
    CHECK(r.status == AlmostLimitStatus::unbounded);
    seq[1000] = std::numeric_limits<double>::quiet_NaN();
    CHECK(almost_limit(seq, {}).status == AlmostLimitStatus::unbounded);
    seq[1000] = std::numeric_limits<double>::infinity();
    CHECK(almost_limit(seq, {}).status == AlmostLimitStatus::unbounded);
}

TEST_CASE("certified values respect shifts and linear combinations") {
    std::size_t len = 2049;
    std::vector<double> a(len), b(len);
    for (std::size_t i = 0; i < len; ++i) {
        a[i] = 0.25 + std::pow(0.9, double(i));
        b[i] = 0.5 - 0.3 * std::pow(0.85, double(i));
    }
    auto ra = almost_limit(a, {});
    auto rb = almost_limit(b, {});
    REQUIRE(certified(ra.status));
    REQUIRE(certified(rb.status));

    // shift invariance: dropping the first entry moves nothing
    std::vector<double> shifted(a.begin() + 1, a.end());
    auto rs = almost_limit(shifted, {});
    REQUIRE(certified(rs.status));
    CHECK(std::fabs(rs.value - ra.value) <= 2e-6);

    // linearity on the certified cone
    std::vector<double> combo(len);
    for (std::size_t i = 0; i < len; ++i) combo[i] = 2.0 * a[i] - 3.0 * b[i];
    auto rc = almost_limit(combo, {});
    REQUIRE(certified(rc.status));
    CHECK(std::fabs(rc.value - (2.0 * ra.value - 3.0 * rb.value)) <= 5e-6);

    // positivity: nonnegative sequence, nonnegative value
    CHECK(ra.value >= 0.0);
}

TEST_CASE("inflation loosens the working tolerance and is recorded") {
    // slow drift of amplitude 3e-5: window means move by more than 1e-6
    // across shifts, but everything fits inside an inflated tolerance
    std::size_t len = 2049;
    std::vector<double> seq(len);
    for (std::size_t i = 0; i < len; ++i)
        seq[i] = 0.5 + 3e-5 * std::cos(0.001 * double(i));
    auto tight = almost_limit(seq, {});
    CHECK(tight.status == AlmostLimitStatus::undecided);
    auto loose = almost_limit(seq, {}, 1e-4);
    CHECK(loose.status == AlmostLimitStatus::convergent);
    CHECK(loose.tol_used == doctest::Approx(1e-6 + 1e-4));
    CHECK(std::fabs(loose.value - 0.5) <= 1e-4);
}

TEST_CASE("for_length builds a layout that fits the sequence") {
    for (std::size_t len : {64, 100, 777, 2049, 5000}) {
        auto p = AlmostLimitParams::for_length(len);
        p.validate();
        std::size_t max_n = 0;
        for (std::size_t n : p.n_values) max_n = std::max(max_n, n);
        CHECK(max_n + p.shift_max <= len);
        std::vector<double> seq(len, 1.0);
        CHECK(almost_limit(seq, p).status == AlmostLimitStatus::convergent);
    }
}

TEST_CASE("iterate pipeline certifies orbit limits of the squaring map") {
    WeightedSystem sys({UnitMap::power(2.0)}, {1.0});
    auto h = FunctionRep::poly({0.0, 1.0});
    AlmostLimitParams p;
    p.m_max = 900;
    p.n_values = {32, 64, 128};
    p.shift_max = 128;
    auto mid = almost_limit_of_iterates(sys, h, 0.5, p);
    CHECK(mid.status == AlmostLimitStatus::convergent);
    CHECK(std::fabs(mid.value) <= 1e-6);
    auto top = almost_limit_of_iterates(sys, h, 1.0, p);
    CHECK(top.status == AlmostLimitStatus::convergent);
    CHECK(top.value == 1.0);
}

TEST_CASE("diagnostics expose per-window means") {
    auto r = almost_limit(alternating(2049), {});
    REQUIRE(r.diagnostics.size() == 4);
    for (const auto& d : r.diagnostics) {
        CHECK(d.n >= 64);
        CHECK(d.front_mean == doctest::Approx(0.5).epsilon(0.02));
    }
}
