#include "ifeq/kernels.hpp"

#include <cmath>
#include <cstdlib>
#include <cstring>

#if defined(IFEQ_HAVE_AVX2_KERNELS)
#include <immintrin.h>
#endif

namespace ifeq::kernels {

// ---------------------------------------------------------------- scalar --

namespace scalar {

void axpy(double* y, const double* x, double w, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] = y[i] + w * x[i];
}

void affine(double* y, const double* x, double a, double b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] = a + b * x[i];
}

void pow_int(double* y, const double* x, unsigned exponent, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        // binary exponentiation, LSB first; op order fixed across impls
        double r = 1.0;
        double b = x[i];
        unsigned e = exponent;
        while (e != 0) {
            if (e & 1u) r *= b;
            e >>= 1u;
            if (e != 0) b *= b;
        }
        y[i] = r;
    }
}

void poly_horner(double* y, const double* x, const double* coeffs,
                 std::size_t n_coeffs, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        double r = coeffs[n_coeffs - 1];
        for (std::size_t j = n_coeffs - 1; j-- > 0;) r = r * x[i] + coeffs[j];
        y[i] = r;
    }
}

void lerp_uniform(double* y, const double* x, const double* values,
                  std::size_t cells, double lo, double hi, std::size_t n) {
    double scale = static_cast<double>(cells) / (hi - lo);
    double jmax = static_cast<double>(cells - 1);
    for (std::size_t i = 0; i < n; ++i) {
        if (x[i] == hi) { y[i] = values[cells]; continue; }
        double t = (x[i] - lo) * scale;
        double jf = std::floor(t);
        if (jf < 0.0) jf = 0.0;
        if (jf > jmax) jf = jmax;
        double frac = t - jf;
        std::size_t j = static_cast<std::size_t>(jf);
        y[i] = (1.0 - frac) * values[j] + frac * values[j + 1];
    }
}

void window_sums(double* out, const double* seq, std::size_t window,
                 std::size_t count) {
    for (std::size_t k = 0; k < count; ++k) {
        double s = 0.0;
        for (std::size_t j = 0; j < window; ++j) s += seq[k + j];
        out[k] = s;
    }
}

double max_abs(const double* x, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double a = std::fabs(x[i]);
        if (a > m) m = a;
    }
    return m;
}

double max_abs_diff(const double* a, const double* b, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double d = std::fabs(a[i] - b[i]);
        if (d > m) m = d;
    }
    return m;
}

} // namespace scalar

// ------------------------------------------------------------------ avx2 --

#if defined(IFEQ_HAVE_AVX2_KERNELS)

namespace avx2 {

#define IFEQ_AVX2 __attribute__((target("avx2")))

IFEQ_AVX2 void axpy(double* y, const double* x, double w, std::size_t n) {
    std::size_t i = 0;
    __m256d vw = _mm256_set1_pd(w);
    for (; i + 4 <= n; i += 4) {
        __m256d vy = _mm256_loadu_pd(y + i);
        __m256d vx = _mm256_loadu_pd(x + i);
        vy = _mm256_add_pd(vy, _mm256_mul_pd(vw, vx));
        _mm256_storeu_pd(y + i, vy);
    }
    for (; i < n; ++i) y[i] = y[i] + w * x[i];
}

IFEQ_AVX2 void affine(double* y, const double* x, double a, double b,
                      std::size_t n) {
    std::size_t i = 0;
    __m256d va = _mm256_set1_pd(a);
    __m256d vb = _mm256_set1_pd(b);
    for (; i + 4 <= n; i += 4) {
        __m256d vx = _mm256_loadu_pd(x + i);
        _mm256_storeu_pd(y + i, _mm256_add_pd(va, _mm256_mul_pd(vb, vx)));
    }
    for (; i < n; ++i) y[i] = a + b * x[i];
}

IFEQ_AVX2 void pow_int(double* y, const double* x, unsigned exponent,
                       std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d r = _mm256_set1_pd(1.0);
        __m256d b = _mm256_loadu_pd(x + i);
        unsigned e = exponent;
        while (e != 0) {
            if (e & 1u) r = _mm256_mul_pd(r, b);
            e >>= 1u;
            if (e != 0) b = _mm256_mul_pd(b, b);
        }
        _mm256_storeu_pd(y + i, r);
    }
    if (i < n) scalar::pow_int(y + i, x + i, exponent, n - i);
}

IFEQ_AVX2 void poly_horner(double* y, const double* x, const double* coeffs,
                           std::size_t n_coeffs, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vx = _mm256_loadu_pd(x + i);
        __m256d r = _mm256_set1_pd(coeffs[n_coeffs - 1]);
        for (std::size_t j = n_coeffs - 1; j-- > 0;)
            r = _mm256_add_pd(_mm256_mul_pd(r, vx), _mm256_set1_pd(coeffs[j]));
        _mm256_storeu_pd(y + i, r);
    }
    if (i < n) scalar::poly_horner(y + i, x + i, coeffs, n_coeffs, n - i);
}

IFEQ_AVX2 void lerp_uniform(double* y, const double* x, const double* values,
                            std::size_t cells, double lo, double hi,
                            std::size_t n) {
    double scale = static_cast<double>(cells) / (hi - lo);
    std::size_t i = 0;
    __m256d vlo = _mm256_set1_pd(lo);
    __m256d vhi = _mm256_set1_pd(hi);
    __m256d vscale = _mm256_set1_pd(scale);
    __m256d vzero = _mm256_setzero_pd();
    __m256d vjmax = _mm256_set1_pd(static_cast<double>(cells - 1));
    __m256d vone = _mm256_set1_pd(1.0);
    __m256d vend = _mm256_set1_pd(values[cells]);
    for (; i + 4 <= n; i += 4) {
        __m256d vx = _mm256_loadu_pd(x + i);
        __m256d t = _mm256_mul_pd(_mm256_sub_pd(vx, vlo), vscale);
        __m256d jf = _mm256_floor_pd(t);
        jf = _mm256_max_pd(jf, vzero);
        jf = _mm256_min_pd(jf, vjmax);
        __m256d frac = _mm256_sub_pd(t, jf);
        __m128i idx = _mm256_cvttpd_epi32(jf);
        __m256d v0 = _mm256_i32gather_pd(values, idx, 8);
        __m256d v1 = _mm256_i32gather_pd(values + 1, idx, 8);
        __m256d r = _mm256_add_pd(_mm256_mul_pd(_mm256_sub_pd(vone, frac), v0),
                                  _mm256_mul_pd(frac, v1));
        __m256d at_hi = _mm256_cmp_pd(vx, vhi, _CMP_EQ_OQ);
        r = _mm256_blendv_pd(r, vend, at_hi);
        _mm256_storeu_pd(y + i, r);
    }
    if (i < n) scalar::lerp_uniform(y + i, x + i, values, cells, lo, hi, n - i);
}

IFEQ_AVX2 void window_sums(double* out, const double* seq, std::size_t window,
                           std::size_t count) {
    std::size_t k = 0;
    for (; k + 4 <= count; k += 4) {
        __m256d acc = _mm256_setzero_pd();
        for (std::size_t j = 0; j < window; ++j)
            acc = _mm256_add_pd(acc, _mm256_loadu_pd(seq + k + j));
        _mm256_storeu_pd(out + k, acc);
    }
    if (k < count) scalar::window_sums(out + k, seq + k, window, count - k);
}

IFEQ_AVX2 double max_abs(const double* x, std::size_t n) {
    __m256d signmask = _mm256_set1_pd(-0.0);
    __m256d vm = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d v = _mm256_andnot_pd(signmask, _mm256_loadu_pd(x + i));
        vm = _mm256_max_pd(vm, v);
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, vm);
    double m = lanes[0];
    for (int l = 1; l < 4; ++l)
        if (lanes[l] > m) m = lanes[l];
    for (; i < n; ++i) {
        double a = std::fabs(x[i]);
        if (a > m) m = a;
    }
    return m;
}

IFEQ_AVX2 double max_abs_diff(const double* a, const double* b, std::size_t n) {
    __m256d signmask = _mm256_set1_pd(-0.0);
    __m256d vm = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        vm = _mm256_max_pd(vm, _mm256_andnot_pd(signmask, d));
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, vm);
    double m = lanes[0];
    for (int l = 1; l < 4; ++l)
        if (lanes[l] > m) m = lanes[l];
    for (; i < n; ++i) {
        double d = std::fabs(a[i] - b[i]);
        if (d > m) m = d;
    }
    return m;
}

#undef IFEQ_AVX2

} // namespace avx2

#endif // IFEQ_HAVE_AVX2_KERNELS

// -------------------------------------------------------------- dispatch --

bool cpu_supports_avx2() {
#if defined(IFEQ_HAVE_AVX2_KERNELS)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

const char* impl_name(Impl impl) {
    switch (impl) {
        case Impl::scalar: return "scalar";
        case Impl::avx2: return "avx2";
    }
    return "unknown";
}

static Impl detect() {
    if (const char* env = std::getenv("IFEQ_KERNELS")) {
        if (std::strcmp(env, "scalar") == 0) return Impl::scalar;
        if (std::strcmp(env, "avx2") == 0 && cpu_supports_avx2())
            return Impl::avx2;
    }
    return cpu_supports_avx2() ? Impl::avx2 : Impl::scalar;
}

Impl active() {
    static Impl impl = detect();
    return impl;
}

#if defined(IFEQ_HAVE_AVX2_KERNELS)
#define IFEQ_DISPATCH(fn, ...) \
    (active() == Impl::avx2 ? avx2::fn(__VA_ARGS__) : scalar::fn(__VA_ARGS__))
#else
#define IFEQ_DISPATCH(fn, ...) scalar::fn(__VA_ARGS__)
#endif

void axpy(double* y, const double* x, double w, std::size_t n) {
    IFEQ_DISPATCH(axpy, y, x, w, n);
}
void affine(double* y, const double* x, double a, double b, std::size_t n) {
    IFEQ_DISPATCH(affine, y, x, a, b, n);
}
void pow_int(double* y, const double* x, unsigned exponent, std::size_t n) {
    IFEQ_DISPATCH(pow_int, y, x, exponent, n);
}
void poly_horner(double* y, const double* x, const double* coeffs,
                 std::size_t n_coeffs, std::size_t n) {
    IFEQ_DISPATCH(poly_horner, y, x, coeffs, n_coeffs, n);
}
void lerp_uniform(double* y, const double* x, const double* values,
                  std::size_t cells, double lo, double hi, std::size_t n) {
    IFEQ_DISPATCH(lerp_uniform, y, x, values, cells, lo, hi, n);
}
void window_sums(double* out, const double* seq, std::size_t window,
                 std::size_t count) {
    IFEQ_DISPATCH(window_sums, out, seq, window, count);
}
double max_abs(const double* x, std::size_t n) {
    return IFEQ_DISPATCH(max_abs, x, n);
}
double max_abs_diff(const double* a, const double* b, std::size_t n) {
    return IFEQ_DISPATCH(max_abs_diff, a, b, n);
}

#undef IFEQ_DISPATCH

} // namespace ifeq::kernels
