#include "ifeq/function_rep.hpp"

#include <algorithm>
#include <cmath>

#include "ifeq/errors.hpp"
#include "ifeq/kernels.hpp"

namespace ifeq {

namespace {

double poly_eval(const std::vector<double>& c, double x) {
    if (c.empty()) return 0.0;
    double r = c.back();
    for (std::size_t j = c.size() - 1; j-- > 0;) r = r * x + c[j];
    return r;
}

double conservative_closed_bound(const std::vector<FunctionRep::Term>& terms,
                                 double indicator) {
    // |x| <= 1 and inner maps stay in [0,1], so sum of |coeffs| bounds each term
    double b = std::fabs(indicator);
    for (const auto& t : terms)
        for (double c : t.poly) b += std::fabs(c);
    return b;
}

double grid_bound(const std::vector<double>& values,
                  const std::vector<std::pair<double, double>>& overrides) {
    double b = kernels::scalar::max_abs(values.data(), values.size());
    for (const auto& [x, v] : overrides) {
        (void)x;
        b = std::max(b, std::fabs(v));
    }
    return b;
}

} // namespace

FunctionRep FunctionRep::constant(double c) {
    FunctionRep f;
    f.kind_ = Kind::closed_form;
    f.terms_.clear();
    if (c != 0.0) f.terms_.push_back({{c}, std::nullopt});
    f.indicator_ = 0.0;
    f.bound_ = std::fabs(c);
    return f;
}

FunctionRep FunctionRep::poly(std::vector<double> coeffs) {
    FunctionRep f;
    f.kind_ = Kind::closed_form;
    f.terms_.clear();
    f.terms_.push_back({std::move(coeffs), std::nullopt});
    f.bound_ = conservative_closed_bound(f.terms_, 0.0);
    return f;
}

FunctionRep FunctionRep::composed_poly(std::vector<double> coeffs, UnitMap inner) {
    FunctionRep f;
    f.kind_ = Kind::closed_form;
    f.terms_.clear();
    f.terms_.push_back({std::move(coeffs), std::move(inner)});
    f.bound_ = conservative_closed_bound(f.terms_, 0.0);
    return f;
}

FunctionRep FunctionRep::indicator_below_one(double c) {
    FunctionRep f;
    f.kind_ = Kind::closed_form;
    f.terms_.clear();
    f.indicator_ = c;
    f.bound_ = std::fabs(c);
    return f;
}

FunctionRep FunctionRep::closed_form(std::vector<Term> terms,
                                     double indicator_coeff,
                                     std::optional<double> bound) {
    FunctionRep f;
    f.kind_ = Kind::closed_form;
    f.terms_ = std::move(terms);
    f.indicator_ = indicator_coeff;
    f.bound_ = bound ? *bound : conservative_closed_bound(f.terms_, indicator_coeff);
    return f;
}

FunctionRep FunctionRep::grid(std::vector<double> values, Interp interp,
                              double lo, double hi, std::optional<double> bound) {
    if (values.size() < 2)
        raise(ErrorCode::domain_error, "grid needs at least two values");
    if (!(lo < hi))
        raise(ErrorCode::domain_error, "grid window must have positive width");
    FunctionRep f;
    f.kind_ = Kind::grid;
    f.interp_ = interp;
    f.lo_ = lo;
    f.hi_ = hi;
    f.values_ = std::move(values);
    f.bound_ = bound ? *bound : grid_bound(f.values_, {});
    return f;
}

FunctionRep FunctionRep::grid_with_overrides(
    std::vector<double> values, std::vector<std::pair<double, double>> overrides,
    Interp interp, double lo, double hi, std::optional<double> bound) {
    FunctionRep f = grid(std::move(values), interp, lo, hi, std::nullopt);
    for (const auto& [x, v] : overrides) {
        (void)v;
        if (!(x >= lo && x <= hi))
            raise(ErrorCode::domain_error, "override point outside grid window");
    }
    f.kind_ = Kind::grid_with_overrides;
    f.overrides_ = std::move(overrides);
    f.bound_ = bound ? *bound : grid_bound(f.values_, f.overrides_);
    return f;
}

double FunctionRep::eval_plain(double x) const {
    if (kind_ == Kind::closed_form) {
        double r = 0.0;
        for (const auto& t : terms_) {
            double y = t.inner ? (*t.inner)(x) : x;
            r += poly_eval(t.poly, y);
        }
        if (indicator_ != 0.0 && x < 1.0) r += indicator_;
        return r;
    }
    // grid kinds; replicate the kernel lerp formula exactly
    const std::size_t cells = values_.size() - 1;
    if (x == hi_) return values_[cells];
    double scale = static_cast<double>(cells) / (hi_ - lo_);
    double t = (x - lo_) * scale;
    if (interp_ == Interp::nearest) {
        double jf = std::floor(t + 0.5);
        if (jf < 0.0) jf = 0.0;
        if (jf > static_cast<double>(cells)) jf = static_cast<double>(cells);
        return values_[static_cast<std::size_t>(jf)];
    }
    double jf = std::floor(t);
    double jmax = static_cast<double>(cells - 1);
    if (jf < 0.0) jf = 0.0;
    if (jf > jmax) jf = jmax;
    double frac = t - jf;
    std::size_t j = static_cast<std::size_t>(jf);
    return (1.0 - frac) * values_[j] + frac * values_[j + 1];
}

double FunctionRep::operator()(double x) const {
    if (kind_ != Kind::closed_form) {
        if (!(x >= lo_ && x <= hi_)) {
            // clamp into the represented window; solver windows cover the
            // reachable set, so this only absorbs float drift at the edges
            x = x < lo_ ? lo_ : hi_;
        }
        for (const auto& [ox, ov] : overrides_)
            if (x == ox) return ov;
    } else if (!(x >= 0.0 && x <= 1.0)) {
        raise(ErrorCode::domain_error, "function argument outside [0,1]");
    }
    return eval_plain(x);
}

void FunctionRep::eval_batch(std::span<const double> xs,
                             std::span<double> out) const {
    const std::size_t n = xs.size();
    if (kind_ == Kind::closed_form) {
        std::vector<double> acc(n, 0.0), buf(n);
        for (const auto& t : terms_) {
            const double* arg = xs.data();
            if (t.inner) {
                t.inner->eval_batch(xs, buf);
                arg = buf.data();
            }
            if (t.poly.empty()) continue;
            std::vector<double> tmp(n);
            kernels::poly_horner(tmp.data(), arg, t.poly.data(), t.poly.size(), n);
            kernels::axpy(acc.data(), tmp.data(), 1.0, n);
        }
        if (indicator_ != 0.0)
            for (std::size_t i = 0; i < n; ++i)
                if (xs[i] < 1.0) acc[i] += indicator_;
        std::copy(acc.begin(), acc.end(), out.begin());
        return;
    }
    const std::size_t cells = values_.size() - 1;
    if (interp_ == Interp::linear) {
        kernels::lerp_uniform(out.data(), xs.data(), values_.data(), cells,
                              lo_, hi_, n);
    } else {
        for (std::size_t i = 0; i < n; ++i) out[i] = eval_plain(xs[i]);
    }
    if (!overrides_.empty()) {
        for (std::size_t i = 0; i < n; ++i)
            for (const auto& [ox, ov] : overrides_)
                if (xs[i] == ox) { out[i] = ov; break; }
    }
}

FunctionRep FunctionRep::plus(const FunctionRep& other) const {
    if (kind_ == Kind::closed_form && other.kind_ == Kind::closed_form) {
        std::vector<Term> terms = terms_;
        terms.insert(terms.end(), other.terms_.begin(), other.terms_.end());
        return closed_form(std::move(terms), indicator_ + other.indicator_);
    }
    if (kind_ != Kind::closed_form && other.kind_ != Kind::closed_form) {
        if (values_.size() != other.values_.size() || lo_ != other.lo_ ||
            hi_ != other.hi_ || interp_ != other.interp_)
            raise(ErrorCode::domain_error,
                  "grid layouts differ; cannot combine pointwise");
        std::vector<double> v(values_.size());
        for (std::size_t i = 0; i < v.size(); ++i)
            v[i] = values_[i] + other.values_[i];
        std::vector<std::pair<double, double>> ov;
        for (const auto& [x, val] : overrides_) ov.emplace_back(x, val + other(x));
        for (const auto& [x, val] : other.overrides_) {
            bool seen = false;
            for (const auto& [x0, v0] : overrides_)
                if (x0 == x) { seen = true; break; }
            if (!seen) ov.emplace_back(x, val + (*this)(x));
        }
        if (ov.empty() && kind_ == Kind::grid && other.kind_ == Kind::grid)
            return grid(std::move(v), interp_, lo_, hi_);
        return grid_with_overrides(std::move(v), std::move(ov), interp_, lo_, hi_);
    }
    // mixed kinds: sample the closed form onto the grid layout
    const FunctionRep& g = kind_ == Kind::closed_form ? other : *this;
    const FunctionRep& c = kind_ == Kind::closed_form ? *this : other;
    const std::size_t cells = g.values_.size() - 1;
    Grid layout{cells, g.lo_, g.hi_};
    std::vector<double> xs = layout.points();
    std::vector<double> cv(xs.size());
    c.eval_batch(xs, cv);
    std::vector<double> v(xs.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = g.values_[i] + cv[i];
    std::vector<std::pair<double, double>> ov;
    for (const auto& [x, val] : g.overrides_) ov.emplace_back(x, val + c(x));
    if (ov.empty()) return grid(std::move(v), g.interp_, g.lo_, g.hi_);
    return grid_with_overrides(std::move(v), std::move(ov), g.interp_, g.lo_, g.hi_);
}

FunctionRep FunctionRep::scaled(double s) const {
    if (kind_ == Kind::closed_form) {
        std::vector<Term> terms = terms_;
        for (auto& t : terms)
            for (double& c : t.poly) c *= s;
        return closed_form(std::move(terms), indicator_ * s);
    }
    std::vector<double> v = values_;
    for (double& x : v) x *= s;
    auto ov = overrides_;
    for (auto& [x, val] : ov) val *= s;
    if (ov.empty()) return grid(std::move(v), interp_, lo_, hi_);
    return grid_with_overrides(std::move(v), std::move(ov), interp_, lo_, hi_);
}

bool FunctionRep::is_identically_zero() const {
    if (kind_ == Kind::closed_form) {
        if (indicator_ != 0.0) return false;
        for (const auto& t : terms_)
            for (double c : t.poly)
                if (c != 0.0) return false;
        return true;
    }
    for (double v : values_)
        if (v != 0.0) return false;
    for (const auto& [x, v] : overrides_) {
        (void)x;
        if (v != 0.0) return false;
    }
    return true;
}

std::pair<FunctionRep, FunctionRep> jordan_decompose(const FunctionRep& h,
                                                     const Grid& grid) {
    std::vector<double> xs = grid.points();
    std::vector<double> v(xs.size());
    h.eval_batch(xs, v);
    std::vector<double> plus(v.size()), minus(v.size());
    plus[0] = 0.0;
    minus[0] = 0.0;
    for (std::size_t i = 1; i < v.size(); ++i) {
        double d = v[i] - v[i - 1];
        plus[i] = plus[i - 1] + (d > 0.0 ? d : 0.0);
        minus[i] = minus[i - 1] + (d < 0.0 ? -d : 0.0);
    }
    return {FunctionRep::grid(std::move(plus), FunctionRep::Interp::linear,
                              grid.x_min, grid.x_max),
            FunctionRep::grid(std::move(minus), FunctionRep::Interp::linear,
                              grid.x_min, grid.x_max)};
}

} // namespace ifeq
