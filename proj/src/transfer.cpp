#include "ifeq/transfer.hpp"

#include <cmath>

#include "ifeq/errors.hpp"
#include "ifeq/kernels.hpp"
#include "ifeq/parallel.hpp"
#include "ifeq/rng.hpp"

namespace ifeq {

const char* iterate_method_name(IterateMethod m) {
    switch (m) {
        case IterateMethod::exact_tree: return "exact_tree";
        case IterateMethod::alpha_table: return "alpha_table";
        case IterateMethod::monte_carlo: return "monte_carlo";
    }
    return "unknown";
}

std::span<const double> AlphaTable::row(std::size_t m) const {
    if (m < 1 || m > m_max)
        raise(ErrorCode::out_of_range, "alpha table row index out of range");
    return {rows.data() + (m - 1) * order, order};
}

FunctionRep apply_T(const WeightedSystem& sys, const FunctionRep& h,
                    const Grid& grid) {
    std::vector<double> xs = grid.points();
    const std::size_t n = xs.size();
    std::vector<double> acc(n, 0.0), ys(n), hv(n);
    for (std::size_t k = 0; k < sys.size(); ++k) {
        if (sys.weights()[k] == 0.0) continue;
        sys.map(k).eval_batch(xs, ys);
        h.eval_batch(ys, hv);
        kernels::axpy(acc.data(), hv.data(), sys.weights()[k], n);
    }
    // maps fix the endpoints, so T preserves boundary values exactly
    if (grid.x_min == 0.0) acc.front() = h(0.0);
    if (grid.x_max == 1.0) acc.back() = h(1.0);

    std::vector<std::pair<double, double>> overrides;
    for (const auto& [ox, ov] : h.overrides()) {
        (void)ov;
        double v = 0.0;
        for (std::size_t k = 0; k < sys.size(); ++k) {
            if (sys.weights()[k] == 0.0) continue;
            v += sys.weights()[k] * h(sys.map(k)(ox));
        }
        overrides.emplace_back(ox, v);
    }
    if (overrides.empty())
        return FunctionRep::grid(std::move(acc), FunctionRep::Interp::linear,
                                 grid.x_min, grid.x_max, h.declared_bound());
    return FunctionRep::grid_with_overrides(
        std::move(acc), std::move(overrides), FunctionRep::Interp::linear,
        grid.x_min, grid.x_max, h.declared_bound());
}

double mean_map(const WeightedSystem& sys, double x) {
    double s = 0.0;
    for (std::size_t k = 0; k < sys.size(); ++k)
        s += sys.weights()[k] * sys.map(k)(x);
    return s;
}

AlphaTable build_alpha_table(const WeightedSystem& sys, std::size_t m_max) {
    if (!sys.periodic_order())
        raise(ErrorCode::not_periodic,
              "alpha table requires a declared periodic system");
    const std::size_t order = *sys.periodic_order();
    AlphaTable t;
    t.order = order;
    t.m_max = m_max;
    t.rows.resize(order * m_max);
    const std::vector<double>& p = sys.weights();
    for (std::size_t nn = 0; nn < order; ++nn) t.rows[nn] = p[nn];
    for (std::size_t m = 1; m < m_max; ++m) {
        const double* prev = t.rows.data() + (m - 1) * order;
        double* next = t.rows.data() + m * order;
        for (std::size_t nn = 0; nn < order; ++nn) {
            double s = 0.0;
            for (std::size_t k = 0; k < order; ++k)
                s += prev[k] * p[(nn + order - k) % order];
            next[nn] = s;
        }
    }
    return t;
}

namespace {

// node budget for a full depth-m tree over `branches` letters
bool tree_fits(std::size_t branches, std::size_t depth, std::size_t budget,
               bool cumulative) {
    double nodes = 0.0;
    double level = 1.0;
    for (std::size_t d = 1; d <= depth; ++d) {
        level *= static_cast<double>(branches);
        nodes = cumulative ? nodes + level : level;
        if (nodes > static_cast<double>(budget)) return false;
    }
    return true;
}

double orbit_iterate(const UnitMap& f, const FunctionRep& h, std::size_t m,
                     double x) {
    double y = x;
    for (std::size_t i = 0; i < m; ++i) y = f(y);
    return h(y);
}

// depth-first sum over all length-m words; out[d] collects depth d when
// per_depth is set, otherwise only depth m contributes
void tree_walk(const WeightedSystem& sys, const FunctionRep& h,
               std::size_t depth, double x, double weight,
               std::vector<double>* per_depth, double* leaf_sum,
               std::size_t target) {
    if (depth == target) {
        if (!per_depth) *leaf_sum += weight * h(x);
        return;
    }
    for (std::size_t k = 0; k < sys.size(); ++k) {
        double p = sys.weights()[k];
        if (p == 0.0) continue;
        double y = sys.map(k)(x);
        double w = weight * p;
        if (per_depth) (*per_depth)[depth + 1] += w * h(y);
        tree_walk(sys, h, depth + 1, y, w, per_depth, leaf_sum, target);
    }
}

std::uint64_t stream_key(const IterateOptions& opts, std::uint64_t sample) {
    std::uint64_t base =
        key_combine(opts.seed, opts.shared_streams ? 0 : opts.point_key);
    return key_combine(base, sample);
}

} // namespace

IterateEstimate iterate_exact(const WeightedSystem& sys, const FunctionRep& h,
                              std::size_t m, double x,
                              const IterateOptions& opts) {
    if (m == 0) return {h(x), 0.0, IterateMethod::exact_tree, 0};
    if (sys.nonzero_weight_count() == 1) {
        std::size_t k = 0;
        while (sys.weights()[k] == 0.0) ++k;
        return {orbit_iterate(sys.map(k), h, m, x), 0.0,
                IterateMethod::exact_tree, m};
    }
    if (!tree_fits(sys.nonzero_weight_count(), m, opts.branch_budget, false))
        raise(ErrorCode::budget_exceeded,
              "branch tree larger than the node budget");
    double sum = 0.0;
    tree_walk(sys, h, 0, x, 1.0, nullptr, &sum, m);
    return {sum, 0.0, IterateMethod::exact_tree, m};
}

IterateEstimate iterate_periodic(const WeightedSystem& sys,
                                 const FunctionRep& h, std::size_t m, double x,
                                 const AlphaTable& table) {
    if (!sys.periodic_order())
        raise(ErrorCode::not_periodic, "system is not declared periodic");
    if (m == 0) return {h(x), 0.0, IterateMethod::alpha_table, 0};
    std::span<const double> alpha = table.row(m);
    double s = 0.0;
    for (std::size_t n = 0; n < alpha.size(); ++n) {
        if (alpha[n] == 0.0) continue;
        s += alpha[n] * h(sys.map(n)(x));
    }
    return {s, 0.0, IterateMethod::alpha_table, m};
}

IterateEstimate iterate_mc(const WeightedSystem& sys, const FunctionRep& h,
                           std::size_t m, double x, std::size_t samples,
                           std::uint64_t seed) {
    if (m == 0) return {h(x), 0.0, IterateMethod::monte_carlo, 0};
    IterateOptions opts;
    opts.seed = seed;
    opts.point_key = key_of_double(x);
    RunningMoments mom;
    for (std::size_t r = 0; r < samples; ++r) {
        CounterRng rng(stream_key(opts, r));
        double y = x;
        for (std::size_t t = 0; t < m; ++t)
            y = sys.map(sys.sample_letter(rng.next_unit()))(y);
        mom.add(h(y));
    }
    double hw = 1.96 * std::sqrt(mom.variance() / static_cast<double>(samples));
    return {mom.mean, hw, IterateMethod::monte_carlo, m};
}

std::vector<IterateEstimate> iterate_sequence(const WeightedSystem& sys,
                                              const FunctionRep& h,
                                              std::size_t m_max, double x,
                                              const IterateOptions& opts) {
    std::vector<IterateEstimate> out(m_max + 1);
    out[0] = {h(x), 0.0, IterateMethod::exact_tree, 0};
    if (m_max == 0) return out;

    if (sys.nonzero_weight_count() == 1) {
        std::size_t k = 0;
        while (sys.weights()[k] == 0.0) ++k;
        const UnitMap& f = sys.map(k);
        double y = x;
        for (std::size_t m = 1; m <= m_max; ++m) {
            y = f(y);
            out[m] = {h(y), 0.0, IterateMethod::exact_tree, m};
        }
        return out;
    }

    if (sys.periodic_order()) {
        AlphaTable local;
        const AlphaTable* table = opts.alpha;
        if (!table || table->m_max < m_max || table->order != sys.size()) {
            local = build_alpha_table(sys, m_max);
            table = &local;
        }
        // h on the orbit of x is shared by every row
        std::vector<double> hv(sys.size());
        for (std::size_t n = 0; n < sys.size(); ++n) hv[n] = h(sys.map(n)(x));
        for (std::size_t m = 1; m <= m_max; ++m) {
            std::span<const double> alpha = table->row(m);
            double s = 0.0;
            for (std::size_t n = 0; n < alpha.size(); ++n)
                s += alpha[n] * hv[n];
            out[m] = {s, 0.0, IterateMethod::alpha_table, m};
        }
        return out;
    }

    if (tree_fits(sys.nonzero_weight_count(), m_max, opts.branch_budget, true)) {
        std::vector<double> sums(m_max + 1, 0.0);
        double dummy = 0.0;
        tree_walk(sys, h, 0, x, 1.0, &sums, &dummy, m_max);
        for (std::size_t m = 1; m <= m_max; ++m)
            out[m] = {sums[m], 0.0, IterateMethod::exact_tree, m};
        return out;
    }

    // Monte Carlo over full-length trajectories; estimates across m share
    // trajectories but each depth gets its own interval
    std::vector<RunningMoments> mom(m_max + 1);
    for (std::size_t r = 0; r < opts.mc_samples; ++r) {
        CounterRng rng(stream_key(opts, r));
        double y = x;
        for (std::size_t m = 1; m <= m_max; ++m) {
            y = sys.map(sys.sample_letter(rng.next_unit()))(y);
            mom[m].add(h(y));
        }
    }
    for (std::size_t m = 1; m <= m_max; ++m) {
        double hw = 1.96 * std::sqrt(mom[m].variance() /
                                     static_cast<double>(opts.mc_samples));
        out[m] = {mom[m].mean, hw, IterateMethod::monte_carlo, m};
    }
    return out;
}

std::vector<IterateEstimate> partial_sum_sequence(const WeightedSystem& sys,
                                                  const FunctionRep& g,
                                                  std::size_t k_max, double x,
                                                  const IterateOptions& opts) {
    std::vector<IterateEstimate> out(k_max + 1);
    out[0] = {0.0, 0.0, IterateMethod::exact_tree, 0};
    if (k_max == 0) return out;

    bool exact = sys.nonzero_weight_count() == 1 || sys.periodic_order() ||
                 tree_fits(sys.nonzero_weight_count(), k_max - 1,
                           opts.branch_budget, true);
    if (exact) {
        std::vector<IterateEstimate> it =
            iterate_sequence(sys, g, k_max - 1, x, opts);
        double s = 0.0;
        for (std::size_t k = 1; k <= k_max; ++k) {
            s += it[k - 1].value;
            out[k] = {s, 0.0, it[k - 1].method, k};
        }
        return out;
    }

    // each trajectory carries its own running sum, so the spread across
    // trajectories measures the partial sum directly
    std::vector<RunningMoments> mom(k_max + 1);
    for (std::size_t r = 0; r < opts.mc_samples; ++r) {
        CounterRng rng(stream_key(opts, r));
        double y = x;
        double run = 0.0;
        for (std::size_t k = 1; k <= k_max; ++k) {
            run += g(y);
            mom[k].add(run);
            y = sys.map(sys.sample_letter(rng.next_unit()))(y);
        }
    }
    for (std::size_t k = 1; k <= k_max; ++k) {
        double hw = 1.96 * std::sqrt(mom[k].variance() /
                                     static_cast<double>(opts.mc_samples));
        out[k] = {mom[k].mean, hw, IterateMethod::monte_carlo, k};
    }
    return out;
}

} // namespace ifeq
