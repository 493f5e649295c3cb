#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "ifeq/unit_map.hpp"

namespace ifeq {

// Uniform evaluation grid: m cells, m+1 points, exact at both ends.
struct Grid {
    std::size_t m = 1024;
    double x_min = 0.0;
    double x_max = 1.0;

    double point(std::size_t i) const {
        double t = static_cast<double>(i) / static_cast<double>(m);
        return (1.0 - t) * x_min + t * x_max;
    }
    std::vector<double> points() const {
        std::vector<double> xs(m + 1);
        for (std::size_t i = 0; i <= m; ++i) xs[i] = point(i);
        return xs;
    }
};

struct EndpointPair {
    double a = 0.0;
    double b = 0.0;
};

// Bounded real function on [0,1] (or a sub-window for solver output).
// Closed forms are sums of polynomial terms, each optionally precomposed
// with a UnitMap, plus a multiple of the indicator of [0,1). Grid kinds
// hold samples at uniform abscissae; overrides pin exact values at
// individual points and win over interpolation.
class FunctionRep {
public:
    enum class Kind { closed_form, grid, grid_with_overrides };
    enum class Interp { nearest, linear };

    struct Term {
        std::vector<double> poly; // ascending coefficients, c0 + c1 x + ...
        std::optional<UnitMap> inner;
    };

    // default state is the zero closed form
    FunctionRep() = default;

    static FunctionRep constant(double c);
    static FunctionRep poly(std::vector<double> coeffs);
    static FunctionRep composed_poly(std::vector<double> coeffs, UnitMap inner);
    // c * indicator of [0,1): value c on [0,1), 0 at 1
    static FunctionRep indicator_below_one(double c);
    static FunctionRep closed_form(std::vector<Term> terms,
                                   double indicator_coeff = 0.0,
                                   std::optional<double> bound = {});
    static FunctionRep grid(std::vector<double> values,
                            Interp interp = Interp::linear,
                            double lo = 0.0, double hi = 1.0,
                            std::optional<double> bound = {});
    static FunctionRep grid_with_overrides(
        std::vector<double> values,
        std::vector<std::pair<double, double>> overrides,
        Interp interp = Interp::linear, double lo = 0.0, double hi = 1.0,
        std::optional<double> bound = {});

    Kind kind() const { return kind_; }
    Interp interp() const { return interp_; }
    double lo() const { return lo_; }
    double hi() const { return hi_; }
    double declared_bound() const { return bound_; }
    const std::vector<double>& values() const { return values_; }
    const std::vector<std::pair<double, double>>& overrides() const {
        return overrides_;
    }
    const std::vector<Term>& terms() const { return terms_; }
    double indicator_coeff() const { return indicator_; }

    double operator()(double x) const;
    void eval_batch(std::span<const double> xs, std::span<double> out) const;

    EndpointPair boundary() const { return {(*this)(lo_), (*this)(hi_)}; }

    // pointwise combination; closed forms combine structurally, grid kinds
    // require an identical layout
    FunctionRep plus(const FunctionRep& other) const;
    FunctionRep scaled(double s) const;

    bool is_identically_zero() const;

private:
    Kind kind_ = Kind::closed_form;
    Interp interp_ = Interp::linear;
    double lo_ = 0.0;
    double hi_ = 1.0;
    double bound_ = 0.0;
    std::vector<Term> terms_;
    double indicator_ = 0.0;
    std::vector<double> values_;
    std::vector<std::pair<double, double>> overrides_;

    double eval_plain(double x) const; // without override lookup
};

// Splits h sampled on a grid into nondecreasing parts h_plus - h_minus with
// h_plus(x_min) = h_minus(x_min) = 0, via cumulative positive and negated
// negative increments.
std::pair<FunctionRep, FunctionRep> jordan_decompose(const FunctionRep& h,
                                                     const Grid& grid);

} // namespace ifeq
