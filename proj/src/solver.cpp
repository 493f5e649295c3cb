#include "ifeq/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ifeq/errors.hpp"
#include "ifeq/parallel.hpp"
#include "ifeq/rng.hpp"
#include "ifeq/verify.hpp"

namespace ifeq {

namespace {

constexpr double quiet_nan = std::numeric_limits<double>::quiet_NaN();
constexpr double boundary_tol = 1e-12;

// grid points first, then override abscissae that are not already on the grid
struct ProbeSet {
    std::vector<double> xs;
    std::size_t grid_count = 0;
};

ProbeSet make_probes(const Grid& grid, const FunctionRep& fn) {
    ProbeSet p;
    p.xs = grid.points();
    p.grid_count = p.xs.size();
    for (const auto& [ox, ov] : fn.overrides()) {
        (void)ov;
        if (ox < grid.x_min || ox > grid.x_max) continue;
        bool dup = false;
        for (std::size_t i = 0; i < p.grid_count && !dup; ++i)
            dup = p.xs[i] == ox;
        if (!dup) p.xs.push_back(ox);
    }
    return p;
}

void require_boundary_zero(const FunctionRep& g) {
    if (std::fabs(g(0.0)) > boundary_tol || std::fabs(g(1.0)) > boundary_tol)
        raise(ErrorCode::boundary_violation,
              "g must vanish at both endpoints: any bounded solution forces "
              "g(0) = g(1) = 0");
}

// A sub-window of [0,1] must be mapped into itself, or grid evaluations of
// the solution would clamp silently.
void require_invariant_window(const WeightedSystem& sys, const Grid& grid) {
    if (grid.x_min == 0.0 && grid.x_max == 1.0) return;
    std::vector<double> xs = grid.points();
    std::vector<double> ys(xs.size());
    for (std::size_t k = 0; k < sys.size(); ++k) {
        if (sys.weights()[k] == 0.0) continue;
        sys.map(k).eval_batch(xs, ys);
        for (double y : ys)
            if (y < grid.x_min - boundary_tol || y > grid.x_max + boundary_tol)
                raise(ErrorCode::domain_error,
                      "grid window is not invariant under the maps; solve on "
                      "[0,1] or shrink the window");
    }
}

// least-squares slope of y over k = k_lo..k_hi
double growth_slope(const std::vector<double>& y, std::size_t k_lo,
                    std::size_t k_hi) {
    double kb = 0.0, yb = 0.0;
    std::size_t n = k_hi - k_lo + 1;
    for (std::size_t k = k_lo; k <= k_hi; ++k) {
        kb += static_cast<double>(k);
        yb += y[k];
    }
    kb /= static_cast<double>(n);
    yb /= static_cast<double>(n);
    double num = 0.0, den = 0.0;
    for (std::size_t k = k_lo; k <= k_hi; ++k) {
        double dk = static_cast<double>(k) - kb;
        num += dk * (y[k] - yb);
        den += dk * dk;
    }
    return den > 0.0 ? num / den : 0.0;
}

PointReport point_report(double x, const AlmostLimitResult& r) {
    return {x, r.status, r.value, r.spread, r.tol_used};
}

// grid rep from per-probe values: endpoint values pinned exactly when the
// window ends are the true fixed points, extra probes become overrides
FunctionRep assemble(const ProbeSet& probes, const std::vector<double>& vals,
                     const Grid& grid) {
    std::vector<double> gv(vals.begin(),
                           vals.begin() + static_cast<std::ptrdiff_t>(probes.grid_count));
    std::vector<std::pair<double, double>> ov;
    for (std::size_t i = probes.grid_count; i < probes.xs.size(); ++i)
        ov.emplace_back(probes.xs[i], vals[i]);
    if (ov.empty())
        return FunctionRep::grid(std::move(gv), FunctionRep::Interp::linear,
                                 grid.x_min, grid.x_max);
    return FunctionRep::grid_with_overrides(std::move(gv), std::move(ov),
                                            FunctionRep::Interp::linear,
                                            grid.x_min, grid.x_max);
}

} // namespace

IterateOptions SolverParams::iterate_options(double x) const {
    IterateOptions o;
    o.branch_budget = branch_budget;
    o.mc_samples = mc_samples;
    o.seed = seed;
    o.point_key = key_of_double(x);
    o.shared_streams = shared_streams;
    return o;
}

const char* particular_method_name(ParticularMethod m) {
    switch (m) {
        case ParticularMethod::neumann_finite: return "neumann_finite";
        case ParticularMethod::neumann_uniform: return "neumann_uniform";
        case ParticularMethod::almost_limit: return "almost_limit";
    }
    return "unknown";
}

const char* admissibility_name(Admissibility a) {
    switch (a) {
        case Admissibility::admissible: return "admissible";
        case Admissibility::not_admissible: return "not_admissible";
        case Admissibility::undecided: return "undecided";
    }
    return "unknown";
}

const char* solution_class_name(SolutionClass c) {
    switch (c) {
        case SolutionClass::bounded: return "bounded";
        case SolutionClass::continuous_at_0: return "continuous_at_0";
        case SolutionClass::continuous_at_1: return "continuous_at_1";
        case SolutionClass::lipschitz: return "lipschitz";
        case SolutionClass::bounded_variation: return "bounded_variation";
        case SolutionClass::monotone: return "monotone";
    }
    return "unknown";
}

SolutionClass solution_class_from_name(const std::string& name) {
    for (SolutionClass c :
         {SolutionClass::bounded, SolutionClass::continuous_at_0,
          SolutionClass::continuous_at_1, SolutionClass::lipschitz,
          SolutionClass::bounded_variation, SolutionClass::monotone})
        if (name == solution_class_name(c)) return c;
    raise(ErrorCode::validation, "unknown solution class: " + name);
}

double partial_sum_gk(const WeightedSystem& sys, const FunctionRep& g,
                      std::size_t k, double x, const SolverParams& params) {
    require_boundary_zero(g);
    auto sums = partial_sum_sequence(sys, g, k, x, params.iterate_options(x));
    return sums[k].value;
}

GBoundReport check_G_bounded(const WeightedSystem& sys, const FunctionRep& g,
                             const SolverParams& params) {
    const std::size_t k_max = std::max<std::size_t>(params.g_k_max, 2);
    ProbeSet probes = make_probes(params.grid, g);
    const std::size_t np = probes.xs.size();

    std::vector<std::vector<IterateEstimate>> sums(np);
    parallel_for(np, params.workers, [&](std::size_t i) {
        sums[i] = partial_sum_sequence(sys, g, k_max, probes.xs[i],
                                       params.iterate_options(probes.xs[i]));
    });

    GBoundReport rep;
    rep.k_max = k_max;
    rep.sup_by_k.assign(k_max + 1, 0.0);
    double max_hw = 0.0;
    for (std::size_t i = 0; i < np; ++i)
        for (std::size_t k = 0; k <= k_max; ++k) {
            rep.sup_by_k[k] =
                std::max(rep.sup_by_k[k], std::fabs(sums[i][k].value));
            max_hw = std::max(max_hw, sums[i][k].half_width);
        }
    rep.bound = *std::max_element(rep.sup_by_k.begin(), rep.sup_by_k.end());

    const std::size_t k_lo = k_max / 2;
    rep.slope = growth_slope(rep.sup_by_k, k_lo, k_max);
    // scale for round-off in the sums themselves, plus sampling noise
    rep.threshold =
        rep.bound * 64.0 * std::numeric_limits<double>::epsilon() +
        8.0 * max_hw / static_cast<double>(k_max - k_lo);
    rep.bounded = rep.slope <= rep.threshold && rep.bound <= params.g_cap;
    return rep;
}

BgReport check_Bg_zero(const WeightedSystem& sys, const FunctionRep& g,
                       const SolverParams& params) {
    ProbeSet probes = make_probes(params.grid, g);
    const std::size_t np = probes.xs.size();
    std::vector<AlmostLimitResult> res(np);
    parallel_for(np, params.workers, [&](std::size_t i) {
        res[i] = almost_limit_of_iterates(sys, g, probes.xs[i], params.limit,
                                          params.iterate_options(probes.xs[i]));
    });
    BgReport rep;
    for (std::size_t i = 0; i < np; ++i) {
        rep.points.push_back(point_report(probes.xs[i], res[i]));
        if (certified(res[i].status))
            rep.sup_value = std::max(rep.sup_value, std::fabs(res[i].value));
        else
            ++rep.undecided;
    }
    return rep;
}

E0Report solve_E0(const WeightedSystem& sys, const FunctionRep& h,
                  const SolverParams& params) {
    require_invariant_window(sys, params.grid);
    Truncation tr = sys.truncated(params.truncation_tau);
    const WeightedSystem& s = tr.system;

    ProbeSet probes = make_probes(params.grid, h);
    const std::size_t np = probes.xs.size();
    std::vector<AlmostLimitResult> res(np);
    parallel_for(np, params.workers, [&](std::size_t i) {
        res[i] = almost_limit_of_iterates(s, h, probes.xs[i], params.limit,
                                          params.iterate_options(probes.xs[i]));
    });

    E0Report rep;
    std::vector<double> vals(np);
    for (std::size_t i = 0; i < np; ++i) {
        vals[i] = certified(res[i].status) ? res[i].value : quiet_nan;
        rep.points.push_back(point_report(probes.xs[i], res[i]));
        if (!certified(res[i].status)) ++rep.undecided;
    }
    // the maps fix 0 and 1, so the iterate sequence is constant there
    if (params.grid.x_min == 0.0) vals[0] = h(0.0);
    if (params.grid.x_max == 1.0) vals[probes.grid_count - 1] = h(1.0);

    rep.phi = assemble(probes, vals, params.grid);
    rep.certified = rep.undecided == 0;
    rep.residual = residual_E0(rep.phi, sys, params.grid);
    return rep;
}

namespace {

// iterate matrix rows[i][l] = (T^l g)(x_i), l = 0..cap, plus term sup-norms
// inflated by the Monte Carlo half-widths
struct SeriesScan {
    std::vector<std::vector<IterateEstimate>> rows;
    std::vector<double> term_sup;
};

SeriesScan scan_series(const WeightedSystem& sys, const FunctionRep& g,
                       const ProbeSet& probes, std::size_t cap,
                       const SolverParams& params) {
    SeriesScan sc;
    sc.rows.resize(probes.xs.size());
    parallel_for(probes.xs.size(), params.workers, [&](std::size_t i) {
        sc.rows[i] = iterate_sequence(sys, g, cap, probes.xs[i],
                                      params.iterate_options(probes.xs[i]));
    });
    sc.term_sup.assign(cap + 1, 0.0);
    for (const auto& row : sc.rows)
        for (std::size_t l = 0; l <= cap; ++l)
            sc.term_sup[l] = std::max(
                sc.term_sup[l], std::fabs(row[l].value) + row[l].half_width);
    return sc;
}

// geometric-tail certificate: over the last `window` terms ending at L the
// ratios stay below 1 and the implied tail sum is <= tol
struct TailCertificate {
    bool ok = false;
    std::size_t terms = 0; // L + 1 terms summed
    double tail = 0.0;
};

TailCertificate find_geometric_tail(const std::vector<double>& t, double tol,
                                    std::size_t l_max) {
    constexpr std::size_t window = 8;
    TailCertificate cert;
    for (std::size_t L = window; L <= l_max && L < t.size(); ++L) {
        double r_hat = 0.0;
        bool usable = true;
        for (std::size_t l = L - window; l < L; ++l) {
            if (t[l] <= 0.0) {
                usable = false; // exact zeros belong to the finite path
                break;
            }
            r_hat = std::max(r_hat, t[l + 1] / t[l]);
        }
        if (!usable || r_hat >= 1.0) continue;
        double tail = t[L] * r_hat / (1.0 - r_hat);
        if (tail <= tol) {
            cert.ok = true;
            cert.terms = L + 1;
            cert.tail = tail;
            return cert;
        }
    }
    return cert;
}

FunctionRep sum_of_terms(const SeriesScan& sc, const ProbeSet& probes,
                         std::size_t terms, const Grid& grid) {
    std::vector<double> vals(probes.xs.size(), 0.0);
    for (std::size_t i = 0; i < probes.xs.size(); ++i)
        for (std::size_t l = 0; l < terms; ++l)
            vals[i] += sc.rows[i][l].value;
    // g vanishes at the endpoints, so every term does too
    if (grid.x_min == 0.0) vals[0] = 0.0;
    if (grid.x_max == 1.0) vals[probes.grid_count - 1] = 0.0;
    return assemble(probes, vals, grid);
}

} // namespace

std::optional<FunctionRep> neumann_series_finite(const WeightedSystem& sys,
                                                 const FunctionRep& g,
                                                 std::size_t m_cap,
                                                 const SolverParams& params) {
    require_boundary_zero(g);
    require_invariant_window(sys, params.grid);
    ProbeSet probes = make_probes(params.grid, g);
    SeriesScan sc = scan_series(sys, g, probes, m_cap, params);
    for (std::size_t m = 0; m <= m_cap; ++m)
        if (sc.term_sup[m] <= params.neumann_drop)
            return sum_of_terms(sc, probes, m, params.grid);
    return std::nullopt;
}

FunctionRep neumann_series_uniform(const WeightedSystem& sys,
                                   const FunctionRep& g, double tol,
                                   std::size_t l_max,
                                   const SolverParams& params) {
    require_boundary_zero(g);
    require_invariant_window(sys, params.grid);
    ProbeSet probes = make_probes(params.grid, g);
    SeriesScan sc = scan_series(sys, g, probes, l_max, params);
    // a vanished term makes the series finite, which certifies trivially
    for (std::size_t m = 0; m <= l_max; ++m)
        if (sc.term_sup[m] <= params.neumann_drop)
            return sum_of_terms(sc, probes, m, params.grid);
    TailCertificate cert = find_geometric_tail(sc.term_sup, tol, l_max);
    if (!cert.ok)
        raise(ErrorCode::no_uniform_convergence,
              "term sup-norms show no geometric tail within the cap");
    return sum_of_terms(sc, probes, cert.terms, params.grid);
}

ParticularSolutionReport solve_particular(const WeightedSystem& sys,
                                          const FunctionRep& g,
                                          const SolverParams& params) {
    require_boundary_zero(g);
    require_invariant_window(sys, params.grid);

    ParticularSolutionReport rep;
    rep.g_family = check_G_bounded(sys, g, params);
    if (!rep.g_family.bounded) {
        std::ostringstream msg;
        msg << "the partial-sum family grows without bound (slope "
            << rep.g_family.slope << " over k = " << rep.g_family.k_max / 2
            << ".." << rep.g_family.k_max << "); no bounded solution exists";
        raise(ErrorCode::not_solvable, msg.str());
    }

    ProbeSet probes = make_probes(params.grid, g);
    const std::size_t np = probes.xs.size();

    if (g.is_identically_zero()) {
        rep.b_star = assemble(probes, std::vector<double>(np, 0.0), params.grid);
        rep.method = ParticularMethod::neumann_finite;
        for (double x : probes.xs)
            rep.points.push_back(
                {x, AlmostLimitStatus::convergent, 0.0, 0.0, 0.0});
        rep.residual = residual_E(rep.b_star, sys, g, params.grid);
        return rep;
    }

    const std::size_t cap =
        std::max(params.neumann_finite_cap, params.neumann_uniform_cap);
    SeriesScan sc = scan_series(sys, g, probes, cap, params);

    auto fill_series_report = [&](std::size_t terms, ParticularMethod method,
                                  double tail) {
        rep.b_star = sum_of_terms(sc, probes, terms, params.grid);
        rep.method = method;
        rep.terms = terms;
        rep.tail_bound = tail;
        rep.bg_residual = terms <= cap ? sc.term_sup[terms] : tail;
        for (std::size_t i = 0; i < np; ++i) {
            double v = rep.b_star(probes.xs[i]);
            rep.points.push_back(
                {probes.xs[i], AlmostLimitStatus::convergent, v, tail, tail});
        }
    };

    bool done = false;
    for (std::size_t m = 0; m <= params.neumann_finite_cap && !done; ++m)
        if (sc.term_sup[m] <= params.neumann_drop) {
            fill_series_report(m, ParticularMethod::neumann_finite,
                               sc.term_sup[m]);
            done = true;
        }

    if (!done) {
        TailCertificate cert = find_geometric_tail(
            sc.term_sup, params.limit.tol, params.neumann_uniform_cap);
        if (cert.ok) {
            fill_series_report(cert.terms, ParticularMethod::neumann_uniform,
                               cert.tail);
            done = true;
        }
    }

    if (!done) {
        // window detector on the partial sums themselves
        std::vector<AlmostLimitResult> res(np);
        parallel_for(np, params.workers, [&](std::size_t i) {
            auto sums =
                partial_sum_sequence(sys, g, params.limit.m_max, probes.xs[i],
                                     params.iterate_options(probes.xs[i]));
            std::vector<double> seq(sums.size());
            double infl = 0.0;
            for (std::size_t k = 0; k < sums.size(); ++k) {
                seq[k] = sums[k].value;
                infl = std::max(infl, sums[k].half_width);
            }
            res[i] = almost_limit(seq, params.limit, infl);
        });
        std::vector<double> vals(np);
        for (std::size_t i = 0; i < np; ++i) {
            vals[i] = certified(res[i].status) ? res[i].value : quiet_nan;
            rep.points.push_back(point_report(probes.xs[i], res[i]));
            if (!certified(res[i].status)) ++rep.undecided;
        }
        if (params.grid.x_min == 0.0) vals[0] = 0.0;
        if (params.grid.x_max == 1.0) vals[probes.grid_count - 1] = 0.0;
        rep.b_star = assemble(probes, vals, params.grid);
        rep.method = ParticularMethod::almost_limit;
        rep.bg_residual = check_Bg_zero(sys, g, params).sup_value;
    }

    rep.residual = residual_E(rep.b_star, sys, g, params.grid);
    return rep;
}

SolveReport solve_E(const WeightedSystem& sys, const FunctionRep& g,
                    EndpointPair endpoints, const SolverParams& params,
                    const FunctionRep* h) {
    FunctionRep h_used =
        h ? *h
          : FunctionRep::poly({endpoints.a, endpoints.b - endpoints.a});
    if (std::fabs(h_used(0.0) - endpoints.a) > boundary_tol ||
        std::fabs(h_used(1.0) - endpoints.b) > boundary_tol)
        raise(ErrorCode::validation,
              "h must match the endpoint data: h(0) = a and h(1) = b");

    SolveReport rep;
    rep.e0 = solve_E0(sys, h_used, params);
    rep.particular = solve_particular(sys, g, params);
    rep.phi = rep.e0.phi.plus(rep.particular.b_star);
    rep.residual = residual_E(rep.phi, sys, g, params.grid);
    rep.boundary = rep.phi.boundary();

    if (rep.e0.undecided == 0 && rep.particular.undecided == 0) {
        rep.admissibility = Admissibility::admissible;
        rep.admissibility_reason =
            "partial-sum family bounded and every grid point certified";
    } else {
        rep.admissibility = Admissibility::undecided;
        std::ostringstream msg;
        msg << (rep.e0.undecided + rep.particular.undecided)
            << " grid points left undecided by the limit surrogate";
        rep.admissibility_reason = msg.str();
    }
    return rep;
}

PeriodicClosedForm periodic_closed_form(const WeightedSystem& sys,
                                        const FunctionRep& g,
                                        const FunctionRep& h,
                                        const Grid& grid) {
    if (!sys.periodic_order())
        raise(ErrorCode::not_periodic,
              "closed form requires a declared periodic system");
    if (!sys.weights_uniform())
        raise(ErrorCode::not_uniform_weights,
              "closed form requires uniform weights 1/order");
    require_invariant_window(sys, grid);
    const std::size_t order = sys.size();
    const double inv = 1.0 / static_cast<double>(order);

    // solvability defect: the orbit sums of g must vanish everywhere
    ProbeSet probes = make_probes(grid, g);
    for (const auto& [ox, ov] : h.overrides()) {
        (void)ov;
        bool dup = false;
        for (double x : probes.xs)
            if (x == ox) { dup = true; break; }
        if (!dup && ox >= grid.x_min && ox <= grid.x_max)
            probes.xs.push_back(ox);
    }
    double defect = 0.0;
    double worst_x = 0.0;
    for (double x : probes.xs) {
        double s = 0.0;
        for (std::size_t n = 0; n < order; ++n) s += g(sys.map(n)(x));
        if (std::fabs(s) > defect) {
            defect = std::fabs(s);
            worst_x = x;
        }
    }
    if (defect > 1e-12) {
        std::ostringstream msg;
        msg << "orbit sums of g do not vanish (|sum| = " << defect
            << " at x = " << worst_x << "); the closed form has no solution";
        raise(ErrorCode::not_solvable, msg.str());
    }

    PeriodicClosedForm out;
    out.defect = defect;

    bool closed_inputs = h.kind() == FunctionRep::Kind::closed_form &&
                         g.kind() == FunctionRep::Kind::closed_form &&
                         h.indicator_coeff() == 0.0 &&
                         g.indicator_coeff() == 0.0;
    if (closed_inputs) {
        // phi = (1/order) sum_n h(f_n(x)) + g(x), written term by term
        std::vector<FunctionRep::Term> terms;
        for (std::size_t n = 0; n < order; ++n)
            for (const auto& t : h.terms()) {
                FunctionRep::Term nt;
                nt.poly = t.poly;
                for (double& c : nt.poly) c *= inv;
                if (n == 0 && !t.inner)
                    nt.inner = std::nullopt;
                else if (!t.inner)
                    nt.inner = sys.map(n);
                else
                    nt.inner = UnitMap::composition({*t.inner, sys.map(n)});
                terms.push_back(std::move(nt));
            }
        for (const auto& t : g.terms()) terms.push_back(t);
        out.phi = FunctionRep::closed_form(std::move(terms));
        return out;
    }

    std::vector<double> vals(probes.xs.size());
    for (std::size_t i = 0; i < probes.xs.size(); ++i) {
        double x = probes.xs[i];
        double s = 0.0;
        for (std::size_t n = 0; n < order; ++n) s += h(sys.map(n)(x));
        vals[i] = inv * s + g(x);
    }
    out.phi = assemble(probes, vals, grid);
    return out;
}

AdmissibilityReport admissibility_report(const WeightedSystem& sys,
                                         const FunctionRep& g,
                                         SolutionClass cls,
                                         const SolverParams& params) {
    AdmissibilityReport rep;
    rep.g_family = check_G_bounded(sys, g, params);
    if (!rep.g_family.bounded) {
        rep.verdict = Admissibility::not_admissible;
        std::ostringstream msg;
        msg << "partial-sum family unbounded (growth slope "
            << rep.g_family.slope << ")";
        rep.reason = msg.str();
        return rep;
    }
    if (std::fabs(g(0.0)) > boundary_tol || std::fabs(g(1.0)) > boundary_tol) {
        rep.verdict = Admissibility::not_admissible;
        rep.reason = "g does not vanish at the endpoints";
        return rep;
    }

    ParticularSolutionReport part = solve_particular(sys, g, params);
    rep.bg_residual = part.bg_residual;
    if (part.undecided > 0) {
        rep.verdict = Admissibility::undecided;
        std::ostringstream msg;
        msg << part.undecided << " probe points undecided";
        rep.reason = msg.str();
        return rep;
    }
    if (cls == SolutionClass::bounded) {
        // bounded forcing with a bounded partial-sum family is always enough
        rep.verdict = Admissibility::admissible;
        rep.reason = "partial-sum family bounded, limit certified everywhere";
        return rep;
    }

    ClassReport cr = class_report(part.b_star, params.grid);
    auto measured = [&](const char* what, double value, bool ok) {
        std::ostringstream msg;
        msg << what << " = " << value << " on the grid (estimate, not proof)";
        rep.reason = msg.str();
        rep.verdict = ok ? Admissibility::admissible
                         : Admissibility::not_admissible;
    };
    switch (cls) {
        case SolutionClass::bounded:
            break; // handled above
        case SolutionClass::continuous_at_0: {
            double tight = cr.modulus_at_0.empty() ? 0.0
                                                   : cr.modulus_at_0.back();
            if (tight <= 1e-2)
                measured("modulus at 0", tight, true);
            else if (tight >= 0.1)
                measured("modulus at 0", tight, false);
            else {
                rep.verdict = Admissibility::undecided;
                std::ostringstream msg;
                msg << "modulus at 0 = " << tight
                    << " is inconclusive at this grid resolution";
                rep.reason = msg.str();
            }
            break;
        }
        case SolutionClass::continuous_at_1: {
            double tight = cr.modulus_at_1.empty() ? 0.0
                                                   : cr.modulus_at_1.back();
            if (tight <= 1e-2)
                measured("modulus at 1", tight, true);
            else if (tight >= 0.1)
                measured("modulus at 1", tight, false);
            else {
                rep.verdict = Admissibility::undecided;
                std::ostringstream msg;
                msg << "modulus at 1 = " << tight
                    << " is inconclusive at this grid resolution";
                rep.reason = msg.str();
            }
            break;
        }
        case SolutionClass::lipschitz:
            measured("difference quotient", cr.lipschitz_estimate,
                     cr.lipschitz_estimate <= 1e3);
            break;
        case SolutionClass::bounded_variation:
            measured("total variation", cr.total_variation,
                     cr.total_variation <= 1e6);
            break;
        case SolutionClass::monotone:
            measured("monotone", cr.monotone ? 1.0 : 0.0, cr.monotone);
            break;
    }
    return rep;
}

} // namespace ifeq
