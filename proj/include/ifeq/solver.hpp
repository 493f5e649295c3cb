#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ifeq/almost_limit.hpp"
#include "ifeq/function_rep.hpp"
#include "ifeq/transfer.hpp"
#include "ifeq/weighted_system.hpp"

namespace ifeq {

struct SolverParams {
    Grid grid;
    AlmostLimitParams limit;
    std::size_t branch_budget = 10'000'000;
    std::size_t mc_samples = 10'000;
    std::uint64_t seed = 0;
    unsigned workers = 1;
    // reuse one letter stream across probe points (couples estimates for
    // monotonicity-style comparisons)
    bool shared_streams = false;

    std::size_t g_k_max = 100;  // partial-sum probe depth for boundedness
    double g_cap = 1e6;         // |g_k| beyond this is unbounded outright
    std::size_t neumann_finite_cap = 64;
    std::size_t neumann_uniform_cap = 256;
    double neumann_drop = 1e-12; // sup |T^m g| below this ends the series
    double truncation_tau = 1e-12;
    double max_undecided = 0.0; // allowed fraction of undecided grid points

    IterateOptions iterate_options(double x) const;
};

// per-point outcome of the limit surrogate
struct PointReport {
    double x = 0.0;
    AlmostLimitStatus status = AlmostLimitStatus::undecided;
    double value = 0.0; // NaN unless certified
    double spread = 0.0;
    double tol_used = 0.0;
};

struct E0Report {
    FunctionRep phi; // limit of the iterate sequence, sampled on the grid
    std::vector<PointReport> points;
    std::size_t undecided = 0;
    double residual = 0.0; // sup |phi - T phi| over certified points
    bool certified = false;
};

struct GBoundReport {
    bool bounded = false;
    double bound = 0.0;     // max over probe points and k of |g_k(x)|
    double slope = 0.0;     // least-squares growth rate over the top half of k
    double threshold = 0.0; // slope above this flags sustained linear growth
    std::size_t k_max = 0;
    std::vector<double> sup_by_k; // sup over probe points of |g_k|, k = 0..k_max
};

enum class ParticularMethod { neumann_finite, neumann_uniform, almost_limit };

const char* particular_method_name(ParticularMethod m);

struct ParticularSolutionReport {
    FunctionRep b_star;
    ParticularMethod method = ParticularMethod::almost_limit;
    std::size_t terms = 0;    // series terms consumed (finite/uniform paths)
    double tail_bound = 0.0;  // certified truncation tail (uniform path)
    GBoundReport g_family;
    double bg_residual = 0.0; // sup over probe points of the iterate limit of g
    std::vector<PointReport> points;
    std::size_t undecided = 0;
    double residual = 0.0; // sup |b_star - T b_star - g| over certified points
};

enum class Admissibility { admissible, not_admissible, undecided };

const char* admissibility_name(Admissibility a);

enum class SolutionClass {
    bounded,
    continuous_at_0,
    continuous_at_1,
    lipschitz,
    bounded_variation,
    monotone
};

const char* solution_class_name(SolutionClass c);
SolutionClass solution_class_from_name(const std::string& name);

struct AdmissibilityReport {
    Admissibility verdict = Admissibility::undecided;
    std::string reason;
    GBoundReport g_family;
    double bg_residual = 0.0;
};

struct SolveReport {
    FunctionRep phi; // e0.phi + particular.b_star, identical layout
    E0Report e0;
    ParticularSolutionReport particular;
    double residual = 0.0; // sup |phi - T phi - g| over certified points
    EndpointPair boundary; // achieved values at the window ends
    Admissibility admissibility = Admissibility::undecided;
    std::string admissibility_reason;
};

// g_k(x) = sum_{l<k} (T^l g)(x). Throws boundary_violation unless
// g(0) = g(1) = 0: applying T to any bounded solution forces that.
double partial_sum_gk(const WeightedSystem& sys, const FunctionRep& g,
                      std::size_t k, double x, const SolverParams& params = {});

// Probes |g_k| on the grid for k <= g_k_max. The family is flagged unbounded
// on sustained linear growth of the running sup (least-squares slope over the
// top half of the k range above a machine- and noise-scaled threshold) or
// when the sup passes g_cap.
GBoundReport check_G_bounded(const WeightedSystem& sys, const FunctionRep& g,
                             const SolverParams& params = {});

// sup over probe points of |limit surrogate of ((T^m g)(x))_m|, a necessary
// condition (the value must vanish wherever the equation is solvable).
struct BgReport {
    double sup_value = 0.0; // over certified points
    std::vector<PointReport> points;
    std::size_t undecided = 0;
};
BgReport check_Bg_zero(const WeightedSystem& sys, const FunctionRep& g,
                       const SolverParams& params = {});

// Limit of (T^m h) at every grid point: the general bounded solution of the
// homogeneous equation with h's boundary values. Undecided points hold NaN
// in the output grid and are never silently zeroed.
E0Report solve_E0(const WeightedSystem& sys, const FunctionRep& h,
                  const SolverParams& params = {});

// Truncated series sum_{l<=L} T^l g once the term sup-norms certify a
// geometric tail <= tol; throws no_uniform_convergence when no L <= l_max
// qualifies. Evaluated per point along exact iterate paths, so no
// interpolation error accumulates across terms.
FunctionRep neumann_series_uniform(const WeightedSystem& sys,
                                   const FunctionRep& g, double tol,
                                   std::size_t l_max,
                                   const SolverParams& params = {});

// Least m <= m_cap with sup |T^m g| <= neumann_drop on the grid gives the
// exact finite sum; nullopt when no such m exists.
std::optional<FunctionRep> neumann_series_finite(const WeightedSystem& sys,
                                                 const FunctionRep& g,
                                                 std::size_t m_cap,
                                                 const SolverParams& params = {});

// Canonical particular solution: the limit surrogate of the partial-sum
// family, produced by the cheapest certifying strategy (finite sum, then
// geometric tail, then the window detector on (g_k)).
ParticularSolutionReport solve_particular(const WeightedSystem& sys,
                                          const FunctionRep& g,
                                          const SolverParams& params = {});

// Full solve: phi = solve_E0(h) + solve_particular(g) with h defaulting to
// the affine interpolant of the endpoint data.
SolveReport solve_E(const WeightedSystem& sys, const FunctionRep& g,
                    EndpointPair endpoints, const SolverParams& params = {},
                    const FunctionRep* h = nullptr);

// Closed form for uniformly weighted periodic systems:
// phi = (1/order) sum_n h(f^n(x)) + g(x), solvable exactly when
// sum_n g(f^n(x)) vanishes on the grid.
struct PeriodicClosedForm {
    FunctionRep phi;
    double defect = 0.0; // sup over grid of |sum_n g(f^n(x))|
};
PeriodicClosedForm periodic_closed_form(const WeightedSystem& sys,
                                        const FunctionRep& g,
                                        const FunctionRep& h,
                                        const Grid& grid = {});

AdmissibilityReport admissibility_report(const WeightedSystem& sys,
                                         const FunctionRep& g,
                                         SolutionClass cls,
                                         const SolverParams& params = {});

} // namespace ifeq
