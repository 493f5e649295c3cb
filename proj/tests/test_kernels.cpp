#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "ifeq/kernels.hpp"
#include "ifeq/rng.hpp"

using namespace ifeq;

// Naive references. The scalar kernels must match these exactly; the AVX2
// kernels must match the scalar ones bit for bit.

namespace ref {

void axpy(double* y, const double* x, double w, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += w * x[i];
}

void affine(double* y, const double* x, double a, double b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] = a + b * x[i];
}

double pow_int_one(double x, unsigned e) {
    double r = 1.0, b = x;
    while (e) {
        if (e & 1u) r *= b;
        e >>= 1;
        if (e) b *= b;
    }
    return r;
}

double horner_one(double x, const double* c, std::size_t nc) {
    double r = 0.0;
    for (std::size_t j = nc; j-- > 0;) r = r * x + c[j];
    return r;
}

double lerp_one(double x, const double* v, std::size_t cells, double lo,
                double hi) {
    if (x == hi) return v[cells];
    double t = (x - lo) * (static_cast<double>(cells) / (hi - lo));
    double jf = std::floor(t);
    if (jf < 0.0) jf = 0.0;
    if (jf > static_cast<double>(cells - 1)) jf = static_cast<double>(cells - 1);
    std::size_t j = static_cast<std::size_t>(jf);
    double frac = t - jf;
    return (1.0 - frac) * v[j] + frac * v[j + 1];
}

void window_sums(double* out, const double* seq, std::size_t w,
                 std::size_t count) {
    for (std::size_t k = 0; k < count; ++k) {
        double s = 0.0;
        for (std::size_t j = 0; j < w; ++j) s += seq[k + j];
        out[k] = s;
    }
}

} // namespace ref

namespace {

std::vector<double> random_unit(std::size_t n, std::uint64_t key) {
    CounterRng rng(key);
    std::vector<double> v(n);
    for (double& x : v) x = rng.next_unit();
    return v;
}

bool bits_equal(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (std::bit_cast<std::uint64_t>(a[i]) !=
            std::bit_cast<std::uint64_t>(b[i]))
            return false;
    return true;
}

// sizes straddling the vector width, including remainder-only cases
const std::size_t sizes[] = {0, 1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 17, 63, 64, 257};

} // namespace

TEST_CASE("scalar kernels match the naive references exactly") {
    for (std::size_t n : sizes) {
        auto x = random_unit(n, 11);
        auto y0 = random_unit(n, 22);

        auto ya = y0, yb = y0;
        kernels::scalar::axpy(ya.data(), x.data(), 0.375, n);
        ref::axpy(yb.data(), x.data(), 0.375, n);
        CHECK(bits_equal(ya, yb));

        kernels::scalar::affine(ya.data(), x.data(), 0.25, -1.5, n);
        ref::affine(yb.data(), x.data(), 0.25, -1.5, n);
        CHECK(bits_equal(ya, yb));

        for (unsigned e : {1u, 2u, 3u, 7u, 16u, 31u}) {
            kernels::scalar::pow_int(ya.data(), x.data(), e, n);
            for (std::size_t i = 0; i < n; ++i)
                yb[i] = ref::pow_int_one(x[i], e);
            CHECK(bits_equal(ya, yb));
        }

        double coeffs[] = {1.0, -2.0, 0.5, 4.0};
        kernels::scalar::poly_horner(ya.data(), x.data(), coeffs, 4, n);
        for (std::size_t i = 0; i < n; ++i)
            yb[i] = ref::horner_one(x[i], coeffs, 4);
        CHECK(bits_equal(ya, yb));

        auto vals = random_unit(9, 33);
        kernels::scalar::lerp_uniform(ya.data(), x.data(), vals.data(), 8, 0.0,
                                      1.0, n);
        for (std::size_t i = 0; i < n; ++i)
            yb[i] = ref::lerp_one(x[i], vals.data(), 8, 0.0, 1.0);
        CHECK(bits_equal(ya, yb));
    }
}

TEST_CASE("window_sums matches the naive reference") {
    auto seq = random_unit(300, 44);
    for (std::size_t w : {1, 2, 5, 16, 64}) {
        std::size_t count = seq.size() - w + 1;
        std::vector<double> a(count), b(count);
        kernels::scalar::window_sums(a.data(), seq.data(), w, count);
        ref::window_sums(b.data(), seq.data(), w, count);
        CHECK(bits_equal(a, b));
    }
}

TEST_CASE("max_abs and max_abs_diff") {
    std::vector<double> a = {0.5, -2.0, 1.5};
    std::vector<double> b = {0.5, -1.0, 3.5};
    CHECK(kernels::scalar::max_abs(a.data(), a.size()) == 2.0);
    CHECK(kernels::scalar::max_abs_diff(a.data(), b.data(), a.size()) == 2.0);
    CHECK(kernels::scalar::max_abs(a.data(), 0) == 0.0);
}

TEST_CASE("lerp_uniform hits stored values at the knots and the top end") {
    auto vals = random_unit(5, 55);
    std::vector<double> xs = {0.0, 0.25, 0.5, 0.75, 1.0};
    std::vector<double> out(xs.size());
    kernels::scalar::lerp_uniform(out.data(), xs.data(), vals.data(), 4, 0.0,
                                  1.0, xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) CHECK(out[i] == vals[i]);
}

#ifdef IFEQ_HAVE_AVX2_KERNELS
TEST_CASE("avx2 kernels are bit-identical to scalar") {
    if (!kernels::cpu_supports_avx2()) {
        MESSAGE("cpu lacks avx2, skipping");
        return;
    }
    for (std::size_t n : sizes) {
        auto x = random_unit(n, 66);
        auto y0 = random_unit(n, 77);

        auto ya = y0, yb = y0;
        kernels::scalar::axpy(ya.data(), x.data(), 0.625, n);
        kernels::avx2::axpy(yb.data(), x.data(), 0.625, n);
        CHECK(bits_equal(ya, yb));

        kernels::scalar::affine(ya.data(), x.data(), -0.125, 2.5, n);
        kernels::avx2::affine(yb.data(), x.data(), -0.125, 2.5, n);
        CHECK(bits_equal(ya, yb));

        for (unsigned e : {1u, 2u, 5u, 12u, 31u}) {
            kernels::scalar::pow_int(ya.data(), x.data(), e, n);
            kernels::avx2::pow_int(yb.data(), x.data(), e, n);
            CHECK(bits_equal(ya, yb));
        }

        double coeffs[] = {0.5, 1.0, -3.0, 2.0, -0.25};
        kernels::scalar::poly_horner(ya.data(), x.data(), coeffs, 5, n);
        kernels::avx2::poly_horner(yb.data(), x.data(), coeffs, 5, n);
        CHECK(bits_equal(ya, yb));

        auto vals = random_unit(17, 88);
        kernels::scalar::lerp_uniform(ya.data(), x.data(), vals.data(), 16,
                                      0.0, 1.0, n);
        kernels::avx2::lerp_uniform(yb.data(), x.data(), vals.data(), 16, 0.0,
                                    1.0, n);
        CHECK(bits_equal(ya, yb));

        // include the exact top-end value the gather path special-cases
        if (n > 0) {
            auto xe = x;
            xe[n / 2] = 1.0;
            kernels::scalar::lerp_uniform(ya.data(), xe.data(), vals.data(),
                                          16, 0.0, 1.0, n);
            kernels::avx2::lerp_uniform(yb.data(), xe.data(), vals.data(), 16,
                                        0.0, 1.0, n);
            CHECK(bits_equal(ya, yb));
        }

        auto seq = random_unit(n + 64, 99);
        std::vector<double> wa(n + 1), wb(n + 1);
        kernels::scalar::window_sums(wa.data(), seq.data(), 64, n + 1);
        kernels::avx2::window_sums(wb.data(), seq.data(), 64, n + 1);
        CHECK(bits_equal(wa, wb));

        CHECK(kernels::scalar::max_abs(x.data(), n) ==
              kernels::avx2::max_abs(x.data(), n));
        CHECK(kernels::scalar::max_abs_diff(x.data(), y0.data(), n) ==
              kernels::avx2::max_abs_diff(x.data(), y0.data(), n));
    }
}
#endif

TEST_CASE("dispatched entry points agree with the active implementation") {
    auto x = random_unit(100, 123);
    std::vector<double> ya(100), yb(100);
    kernels::affine(ya.data(), x.data(), 0.0, 1.0, 100);
    kernels::scalar::affine(yb.data(), x.data(), 0.0, 1.0, 100);
    // both impls are bit-identical, so the dispatched result must match scalar
    CHECK(bits_equal(ya, yb));
    CHECK(kernels::impl_name(kernels::active()) != nullptr);
}
