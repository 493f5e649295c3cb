#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ifeq/function_rep.hpp"
#include "ifeq/weighted_system.hpp"

namespace ifeq {

enum class IterateMethod { exact_tree, alpha_table, monte_carlo };

const char* iterate_method_name(IterateMethod m);

struct IterateEstimate {
    double value = 0.0;
    double half_width = 0.0; // 0 whenever the method is exact
    IterateMethod method = IterateMethod::exact_tree;
    std::size_t m = 0;
};

// Row m holds the weights of the m-fold letter sum modulo the order:
// row(1) = p, row(m+1)[n] = sum_k row(m)[k] * p[(n-k) mod order].
struct AlphaTable {
    std::size_t order = 0;
    std::size_t m_max = 0;
    std::vector<double> rows;

    std::span<const double> row(std::size_t m) const; // 1 <= m <= m_max
};

struct IterateOptions {
    std::size_t branch_budget = 10'000'000;
    std::size_t mc_samples = 10'000;
    std::uint64_t seed = 0;
    std::uint64_t point_key = 0;
    // draw the same letter streams at every point (monotone coupling for
    // property checks); default keys streams by (seed, point, sample)
    bool shared_streams = false;
    const AlphaTable* alpha = nullptr; // reuse a prebuilt table
};

// One transfer-operator application sampled onto a grid. Exact at the true
// endpoints and at override points of h; interior grid values interpolate h.
FunctionRep apply_T(const WeightedSystem& sys, const FunctionRep& h,
                    const Grid& grid = {});

// weighted mean of the maps at x
double mean_map(const WeightedSystem& sys, double x);

AlphaTable build_alpha_table(const WeightedSystem& sys, std::size_t m_max);

// (T^m h)(x) by full branch enumeration (single-map systems reduce to an
// orbit walk). Throws budget_exceeded if the tree would pass the node budget.
IterateEstimate iterate_exact(const WeightedSystem& sys, const FunctionRep& h,
                              std::size_t m, double x,
                              const IterateOptions& opts = {});

// (T^m h)(x) via the convolution table of a declared periodic system.
IterateEstimate iterate_periodic(const WeightedSystem& sys,
                                 const FunctionRep& h, std::size_t m, double x,
                                 const AlphaTable& table);

// Monte Carlo estimate from `samples` independent letter trajectories;
// deterministic for fixed (seed, x, m, samples) and schedule-independent.
IterateEstimate iterate_mc(const WeightedSystem& sys, const FunctionRep& h,
                           std::size_t m, double x, std::size_t samples,
                           std::uint64_t seed);

// All of (T^m h)(x), m = 0..m_max, picking the cheapest applicable method:
// orbit walk for one map, convolution table for periodic systems, one
// shared branch-tree walk when it fits the budget, Monte Carlo otherwise.
std::vector<IterateEstimate> iterate_sequence(const WeightedSystem& sys,
                                              const FunctionRep& h,
                                              std::size_t m_max, double x,
                                              const IterateOptions& opts = {});

// Partial sums s_k(x) = sum_{l<k} (T^l g)(x), k = 0..k_max (s_0 = 0). Exact
// methods cumulate the iterate sequence; Monte Carlo keeps the running sum
// inside each trajectory so the half-widths cover the sums themselves.
std::vector<IterateEstimate> partial_sum_sequence(const WeightedSystem& sys,
                                                  const FunctionRep& g,
                                                  std::size_t k_max, double x,
                                                  const IterateOptions& opts = {});

} // namespace ifeq
