#pragma once

#include <cstddef>

// Batch kernels behind the grid/sequence hot loops. Every kernel exists as a
// scalar reference and, on x86-64, an AVX2 variant. Both variants perform the
// same floating-point operations in the same order per output element, so
// results are bit-identical across implementations; the equivalence suite
// asserts exact equality. No FMA contraction for that reason.

namespace ifeq::kernels {

enum class Impl { scalar, avx2 };

// Implementation used by the dispatched entry points. Picked once per
// process: AVX2 when the CPU supports it, overridable with
// IFEQ_KERNELS=scalar|avx2 in the environment.
Impl active();
const char* impl_name(Impl impl);
bool cpu_supports_avx2();

namespace scalar {
void axpy(double* y, const double* x, double w, std::size_t n);
void affine(double* y, const double* x, double a, double b, std::size_t n);
void pow_int(double* y, const double* x, unsigned exponent, std::size_t n);
void poly_horner(double* y, const double* x, const double* coeffs,
                 std::size_t n_coeffs, std::size_t n);
void lerp_uniform(double* y, const double* x, const double* values,
                  std::size_t cells, double lo, double hi, std::size_t n);
void window_sums(double* out, const double* seq, std::size_t window,
                 std::size_t count);
double max_abs(const double* x, std::size_t n);
double max_abs_diff(const double* a, const double* b, std::size_t n);
} // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define IFEQ_HAVE_AVX2_KERNELS 1
namespace avx2 {
void axpy(double* y, const double* x, double w, std::size_t n);
void affine(double* y, const double* x, double a, double b, std::size_t n);
void pow_int(double* y, const double* x, unsigned exponent, std::size_t n);
void poly_horner(double* y, const double* x, const double* coeffs,
                 std::size_t n_coeffs, std::size_t n);
void lerp_uniform(double* y, const double* x, const double* values,
                  std::size_t cells, double lo, double hi, std::size_t n);
void window_sums(double* out, const double* seq, std::size_t window,
                 std::size_t count);
double max_abs(const double* x, std::size_t n);
double max_abs_diff(const double* a, const double* b, std::size_t n);
} // namespace avx2
#endif

// Dispatched entry points.
void axpy(double* y, const double* x, double w, std::size_t n);
void affine(double* y, const double* x, double a, double b, std::size_t n);
void pow_int(double* y, const double* x, unsigned exponent, std::size_t n);
void poly_horner(double* y, const double* x, const double* coeffs,
                 std::size_t n_coeffs, std::size_t n);
void lerp_uniform(double* y, const double* x, const double* values,
                  std::size_t cells, double lo, double hi, std::size_t n);
void window_sums(double* out, const double* seq, std::size_t window,
                 std::size_t count);
double max_abs(const double* x, std::size_t n);
double max_abs_diff(const double* a, const double* b, std::size_t n);

} // namespace ifeq::kernels
