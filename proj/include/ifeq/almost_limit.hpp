#pragma once

#include <span>
#include <vector>

#include "ifeq/transfer.hpp"

namespace ifeq {

struct AlmostLimitParams {
    std::vector<std::size_t> n_values = {64, 128, 256, 512};
    std::size_t shift_max = 256; // K
    double tol = 1e-6;
    std::size_t m_max = 2048;    // iterate budget when sequences are generated
    double bound_cap = 1e9;

    void validate() const; // requires max(n_values) + shift_max <= m_max

    // window layout scaled down to a short sequence, same tolerance
    static AlmostLimitParams for_length(std::size_t len, double tol = 1e-6);
};

enum class AlmostLimitStatus { convergent, almost_convergent, undecided, unbounded };

const char* almost_limit_status_name(AlmostLimitStatus s);
bool certified(AlmostLimitStatus s);

struct WindowDiagnostic {
    std::size_t n = 0;
    double front_mean = 0.0;  // C(n, 0)
    double front_spread = 0.0;
    double tail_mean = 0.0;   // mean of the last n entries
};

struct AlmostLimitResult {
    AlmostLimitStatus status = AlmostLimitStatus::undecided;
    double value = 0.0; // NaN unless certified
    double spread = 0.0;
    double tail_oscillation = 0.0;
    double tol_used = 0.0; // tol after any Monte Carlo inflation
    std::vector<WindowDiagnostic> diagnostics;
};

// Shifted window means C(n, k) = (1/n) sum_{j<n} seq[k+j] for every n in
// n_values and k = 0..K. Exact index-order summation; C(1, k) copies seq.
struct CesaroTable {
    std::vector<std::size_t> n_values;
    std::size_t shift_max = 0;
    std::vector<std::vector<double>> means; // means[i][k] = C(n_values[i], k)
};

CesaroTable cesaro_table(std::span<const double> seq,
                         const AlmostLimitParams& params);

// Uniform-window surrogate for the limit functional on bounded sequences.
//
// Certification is two-tier. A sequence whose raw tail (second half) stays
// within tol of the mean of its last max-window is reported convergent, with
// that tail mean as the value; windows there are anchored at the latest
// admissible shift, which agrees with the front anchor for any sequence
// whose window means have settled, and rejects long transients. Otherwise
// the front-anchored table decides almost convergence: the largest window
// must be flat across all K shifts and agree with the second-largest
// window, and the value is C(n*, 0). Anything else stays undecided;
// entries beyond bound_cap report unbounded.
AlmostLimitResult almost_limit(std::span<const double> seq,
                               const AlmostLimitParams& params,
                               double inflation = 0.0);

// Runs almost_limit on ((T^m h)(x))_{m=0..m_max}. Monte Carlo half-widths
// inflate the working tolerance; the result records the tolerance used.
AlmostLimitResult almost_limit_of_iterates(const WeightedSystem& sys,
                                           const FunctionRep& h, double x,
                                           const AlmostLimitParams& params,
                                           const IterateOptions& opts = {});

} // namespace ifeq
