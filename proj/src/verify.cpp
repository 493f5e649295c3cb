#include "ifeq/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ifeq/errors.hpp"
#include "ifeq/transfer.hpp"

namespace ifeq {

namespace {

// grid points plus any override abscissae that land inside the window,
// sorted and deduplicated
std::vector<double> partition_points(const Grid& grid,
                                     std::initializer_list<const FunctionRep*> fns) {
    std::vector<double> xs = grid.points();
    for (const FunctionRep* fn : fns)
        for (const auto& [ox, ov] : fn->overrides()) {
            (void)ov;
            if (ox >= grid.x_min && ox <= grid.x_max) xs.push_back(ox);
        }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    return xs;
}

constexpr double quotient_slack = 1e-9;

} // namespace

HypothesisReport check_hypotheses(const WeightedSystem& sys, const Grid& grid) {
    HypothesisReport rep;
    std::vector<double> xs = grid.points();
    const std::size_t n = xs.size();

    std::vector<std::vector<double>> fx(sys.size(), std::vector<double>(n));
    for (std::size_t k = 0; k < sys.size(); ++k)
        sys.map(k).eval_batch(xs, fx[k]);

    rep.h1_monotone = true;
    for (std::size_t k = 0; k < sys.size() && rep.h1_monotone; ++k) {
        if (sys.weights()[k] == 0.0) continue;
        for (std::size_t i = 0; i + 1 < n; ++i)
            if (fx[k][i + 1] < fx[k][i] - 1e-12) {
                rep.h1_monotone = false;
                rep.h1_witness = Witness{xs[i], xs[i + 1], fx[k][i + 1], fx[k][i]};
                break;
            }
    }

    rep.h2_mean_lipschitz = true;
    for (std::size_t i = 0; i < n && rep.h2_mean_lipschitz; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < sys.size(); ++k)
                s += sys.weights()[k] * std::fabs(fx[k][j] - fx[k][i]);
            double gap = xs[j] - xs[i];
            if (s > gap + quotient_slack) {
                rep.h2_mean_lipschitz = false;
                rep.h2_witness = Witness{xs[i], xs[j], s, gap};
                break;
            }
        }

    // dyadic windows at each fixed endpoint: the difference quotient of every
    // map must stay <= 1 inside the window
    auto eta_at = [&](double end) {
        double best = 0.0;
        for (int e = 1; e <= 10; ++e) {
            double eta = std::ldexp(1.0, -e);
            bool ok = true;
            for (std::size_t k = 0; k < sys.size() && ok; ++k) {
                if (sys.weights()[k] == 0.0) continue;
                const UnitMap& f = sys.map(k);
                for (int j = 1; j <= 16 && ok; ++j) {
                    double d = eta * static_cast<double>(j) / 16.0;
                    double x = end == 0.0 ? d : 1.0 - d;
                    double q = std::fabs(f(x) - end) / d;
                    if (q > 1.0 + quotient_slack) {
                        ok = false;
                        if (!rep.h3_witness)
                            rep.h3_witness = Witness{x, end, q, 1.0};
                    }
                }
            }
            if (ok && eta > best) best = eta;
        }
        return best;
    };
    rep.h3_eta_at_0 = eta_at(0.0);
    rep.h3_eta_at_1 = eta_at(1.0);

    for (double x : xs)
        rep.mean_identity_sup =
            std::max(rep.mean_identity_sup, std::fabs(mean_map(sys, x) - x));
    return rep;
}

double residual_E(const FunctionRep& phi, const WeightedSystem& sys,
                  const FunctionRep& g, const Grid& grid) {
    std::vector<double> xs = partition_points(grid, {&phi, &g});
    double sup = 0.0;
    for (double x : xs) {
        double r = phi(x) - g(x);
        for (std::size_t k = 0; k < sys.size(); ++k) {
            if (sys.weights()[k] == 0.0) continue;
            r -= sys.weights()[k] * phi(sys.map(k)(x));
        }
        if (std::isnan(r)) continue; // undecided points carry NaN
        sup = std::max(sup, std::fabs(r));
    }
    return sup;
}

double residual_E0(const FunctionRep& phi, const WeightedSystem& sys,
                   const Grid& grid) {
    return residual_E(phi, sys, FunctionRep(), grid);
}

ClassReport class_report(const FunctionRep& h, const Grid& grid) {
    ClassReport rep;
    std::vector<double> xs = partition_points(grid, {&h});
    std::vector<double> v(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) v[i] = h(xs[i]);

    rep.monotone = true;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        rep.sup_norm = std::max(rep.sup_norm, std::fabs(v[i]));
        if (i == 0) continue;
        double dv = v[i] - v[i - 1];
        double dx = xs[i] - xs[i - 1];
        rep.total_variation += std::fabs(dv);
        if (dx > 0.0)
            rep.lipschitz_estimate =
                std::max(rep.lipschitz_estimate, std::fabs(dv) / dx);
        if (dv < -1e-12) rep.monotone = false;
    }
    rep.boundary = {v.front(), v.back()};

    const double span = grid.x_max - grid.x_min;
    auto modulus = [&](bool at_min) {
        std::vector<double> out;
        for (int e = 1; e <= 10; ++e) {
            double w = span * std::ldexp(1.0, -e);
            double worst = 0.0;
            bool seen = false;
            if (at_min) {
                for (std::size_t i = 1; i < xs.size() &&
                                        xs[i] <= grid.x_min + w; ++i) {
                    worst = std::max(worst, std::fabs(v[i] - v.front()));
                    seen = true;
                }
            } else {
                for (std::size_t i = xs.size() - 1;
                     i-- > 0 && xs[i] >= grid.x_max - w;) {
                    worst = std::max(worst, std::fabs(v[i] - v.back()));
                    seen = true;
                }
            }
            if (!seen) break; // window smaller than the partition spacing
            out.push_back(worst);
        }
        return out;
    };
    rep.modulus_at_0 = modulus(true);
    rep.modulus_at_1 = modulus(false);
    return rep;
}

std::pair<double, double> jordan_parts_solve_E0(const FunctionRep& phi,
                                                const WeightedSystem& sys,
                                                const Grid& grid, double tol) {
    HypothesisReport hr = check_hypotheses(sys, grid);
    if (!hr.h1_monotone)
        raise(ErrorCode::hypothesis_not_met,
              "the decomposition needs every map nondecreasing");
    double r = residual_E0(phi, sys, grid);
    if (r > tol)
        raise(ErrorCode::hypothesis_not_met,
              "phi does not solve the homogeneous equation at this tolerance");
    auto [up, down] = jordan_decompose(phi, grid);
    return {residual_E0(up, sys, grid), residual_E0(down, sys, grid)};
}

IncreasingCheck increasing_solution_check(const WeightedSystem& sys,
                                          const FunctionRep& h,
                                          const SolverParams& params) {
    SolverParams p = params;
    p.shared_streams = true; // couple the letter streams across points
    E0Report rep = solve_E0(sys, h, p);

    IncreasingCheck out;
    out.undecided = rep.undecided;
    out.residual = rep.residual;
    const std::vector<double>& v = rep.phi.values();
    double prev = std::numeric_limits<double>::quiet_NaN();
    for (double cur : v) {
        if (!std::isnan(prev) && !std::isnan(cur))
            out.worst_drop = std::min(out.worst_drop, cur - prev);
        if (!std::isnan(cur)) prev = cur;
    }
    out.pass = out.worst_drop >= -1e-9 && out.undecided == 0;
    return out;
}

} // namespace ifeq
