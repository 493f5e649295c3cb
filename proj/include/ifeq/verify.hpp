#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "ifeq/function_rep.hpp"
#include "ifeq/solver.hpp"
#include "ifeq/weighted_system.hpp"

namespace ifeq {

// One failed inequality with the concrete point (or pair) that broke it.
struct Witness {
    double x = 0.0;
    double y = 0.0; // unused for single-point conditions
    double lhs = 0.0;
    double rhs = 0.0;
};

struct HypothesisReport {
    bool h1_monotone = false; // every map nondecreasing on the grid
    std::optional<Witness> h1_witness;
    bool h2_mean_lipschitz = false; // sum p |f(x)-f(y)| <= |x-y| on grid pairs
    std::optional<Witness> h2_witness;
    // largest dyadic window at each endpoint where the difference quotient
    // of every map stays <= 1; 0 when none passes
    double h3_eta_at_0 = 0.0;
    double h3_eta_at_1 = 0.0;
    std::optional<Witness> h3_witness;
    double mean_identity_sup = 0.0; // sup over grid of |mean_map(x) - x|
};

struct ClassReport {
    double sup_norm = 0.0;
    double lipschitz_estimate = 0.0; // max difference quotient over partition
    double total_variation = 0.0;
    bool monotone = false;
    // max |h(x) - h(endpoint)| over shrinking dyadic windows; last entry is
    // the tightest window
    std::vector<double> modulus_at_0;
    std::vector<double> modulus_at_1;
    EndpointPair boundary;
};

HypothesisReport check_hypotheses(const WeightedSystem& sys,
                                  const Grid& grid = {});

// sup over grid and override points of |phi(x) - sum p_n phi(f_n(x)) - g(x)|;
// points where phi is NaN (undecided) are skipped.
double residual_E(const FunctionRep& phi, const WeightedSystem& sys,
                  const FunctionRep& g, const Grid& grid = {});

// homogeneous residual, g = 0
double residual_E0(const FunctionRep& phi, const WeightedSystem& sys,
                   const Grid& grid = {});

ClassReport class_report(const FunctionRep& h, const Grid& grid = {});

// Splits a verified homogeneous solution into its nondecreasing Jordan parts
// and returns both homogeneous residuals; with all maps nondecreasing the
// parts solve the homogeneous equation too. Throws hypothesis_not_met when
// monotonicity fails or phi is not a solution to begin with.
std::pair<double, double> jordan_parts_solve_E0(const FunctionRep& phi,
                                                const WeightedSystem& sys,
                                                const Grid& grid = {},
                                                double tol = 1e-6);

// Monotone h under monotone maps must produce a monotone certified solution
// with small homogeneous residual.
struct IncreasingCheck {
    bool pass = false;
    double residual = 0.0;
    double worst_drop = 0.0; // most negative adjacent increment found
    std::size_t undecided = 0;
};
IncreasingCheck increasing_solution_check(const WeightedSystem& sys,
                                          const FunctionRep& h,
                                          const SolverParams& params = {});

} // namespace ifeq
