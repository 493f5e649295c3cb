#include "ifeq/unit_map.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "ifeq/errors.hpp"
#include "ifeq/kernels.hpp"

namespace ifeq {

namespace {

bool is_small_integer(double e) {
    return e == std::floor(e) && e >= 1.0 && e <= 4096.0;
}

double pow_int_scalar(double x, unsigned e) {
    double r = 1.0;
    double b = x;
    while (e != 0) {
        if (e & 1u) r *= b;
        e >>= 1u;
        if (e != 0) b *= b;
    }
    return r;
}

void check_domain(double x) {
    if (!(x >= 0.0 && x <= 1.0))
        raise(ErrorCode::domain_error, "map argument outside [0,1]");
}

} // namespace

UnitMap UnitMap::identity() { return UnitMap(); }

UnitMap UnitMap::power(double exponent) {
    if (!(exponent >= 1.0) || !std::isfinite(exponent))
        raise(ErrorCode::domain_error, "power map needs exponent >= 1");
    UnitMap m;
    m.kind_ = Kind::power;
    m.exponent_ = exponent;
    m.integer_exponent_ = is_small_integer(exponent);
    return m;
}

UnitMap UnitMap::mirror_power(double exponent) {
    UnitMap m = power(exponent);
    m.kind_ = Kind::mirror_power;
    return m;
}

UnitMap UnitMap::piecewise_linear(std::vector<Knot> knots) {
    if (knots.size() < 2)
        raise(ErrorCode::domain_error, "piecewise_linear needs at least two knots");
    if (knots.front().x != 0.0 || knots.front().y != 0.0 ||
        knots.back().x != 1.0 || knots.back().y != 1.0)
        raise(ErrorCode::domain_error,
              "piecewise_linear must include knots (0,0) and (1,1)");
    for (std::size_t i = 0; i + 1 < knots.size(); ++i)
        if (!(knots[i].x < knots[i + 1].x))
            raise(ErrorCode::domain_error,
                  "piecewise_linear knot abscissae must be strictly increasing");
    for (const Knot& k : knots)
        if (!(k.y >= 0.0 && k.y <= 1.0))
            raise(ErrorCode::domain_error,
                  "piecewise_linear knot values must lie in [0,1]");
    UnitMap m;
    m.kind_ = Kind::piecewise_linear;
    m.knots_ = std::move(knots);
    return m;
}

UnitMap UnitMap::point_swap(std::vector<std::pair<double, double>> pairs) {
    std::vector<double> seen;
    for (const auto& [u, v] : pairs) {
        if (!(u > 0.0 && u < 1.0 && v > 0.0 && v < 1.0))
            raise(ErrorCode::domain_error, "point_swap pairs must lie in (0,1)");
        if (u == v)
            raise(ErrorCode::domain_error, "point_swap pair members must differ");
        seen.push_back(u);
        seen.push_back(v);
    }
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
        raise(ErrorCode::domain_error, "point_swap points must be pairwise distinct");
    UnitMap m;
    m.kind_ = Kind::point_swap;
    m.pairs_ = std::move(pairs);
    return m;
}

UnitMap UnitMap::composition(std::vector<UnitMap> chain) {
    if (chain.empty())
        raise(ErrorCode::domain_error, "composition needs a non-empty chain");
    if (chain.size() == 1) return chain.front();
    UnitMap m;
    m.kind_ = Kind::composition;
    m.chain_ = std::move(chain);
    return m;
}

double UnitMap::operator()(double x) const {
    check_domain(x);
    switch (kind_) {
        case Kind::identity:
            return x;
        case Kind::power:
            if (integer_exponent_)
                return pow_int_scalar(x, static_cast<unsigned>(exponent_));
            return std::pow(x, exponent_);
        case Kind::mirror_power: {
            double u = 1.0 + (-1.0) * x;
            double p = integer_exponent_
                           ? pow_int_scalar(u, static_cast<unsigned>(exponent_))
                           : std::pow(u, exponent_);
            return 1.0 + (-1.0) * p;
        }
        case Kind::piecewise_linear: {
            // first segment whose right knot is >= x
            auto it = std::lower_bound(
                knots_.begin(), knots_.end(), x,
                [](const Knot& k, double v) { return k.x < v; });
            if (it->x == x) return it->y;
            const Knot& b = *it;
            const Knot& a = *(it - 1);
            double t = (x - a.x) / (b.x - a.x);
            double y = (1.0 - t) * a.y + t * b.y;
            if (y < 0.0) y = 0.0;
            if (y > 1.0) y = 1.0;
            return y;
        }
        case Kind::point_swap:
            for (const auto& [u, v] : pairs_) {
                if (x == u) return v;
                if (x == v) return u;
            }
            return x;
        case Kind::composition: {
            double y = x;
            for (std::size_t i = chain_.size(); i-- > 0;) y = chain_[i](y);
            return y;
        }
    }
    raise(ErrorCode::domain_error, "map kind corrupt");
}

void UnitMap::eval_batch(std::span<const double> xs, std::span<double> out) const {
    const std::size_t n = xs.size();
    switch (kind_) {
        case Kind::identity:
            if (out.data() != xs.data())
                std::copy(xs.begin(), xs.end(), out.begin());
            return;
        case Kind::power:
            if (integer_exponent_) {
                kernels::pow_int(out.data(), xs.data(),
                                 static_cast<unsigned>(exponent_), n);
            } else {
                for (std::size_t i = 0; i < n; ++i)
                    out[i] = std::pow(xs[i], exponent_);
            }
            return;
        case Kind::mirror_power:
            kernels::affine(out.data(), xs.data(), 1.0, -1.0, n);
            if (integer_exponent_) {
                kernels::pow_int(out.data(), out.data(),
                                 static_cast<unsigned>(exponent_), n);
            } else {
                for (std::size_t i = 0; i < n; ++i)
                    out[i] = std::pow(out[i], exponent_);
            }
            kernels::affine(out.data(), out.data(), 1.0, -1.0, n);
            return;
        case Kind::piecewise_linear:
        case Kind::point_swap:
            for (std::size_t i = 0; i < n; ++i) out[i] = (*this)(xs[i]);
            return;
        case Kind::composition: {
            std::span<double> buf = out;
            chain_.back().eval_batch(xs, buf);
            for (std::size_t i = chain_.size() - 1; i-- > 0;)
                chain_[i].eval_batch(buf, buf);
            return;
        }
    }
}

bool UnitMap::operator==(const UnitMap& o) const {
    if (kind_ != o.kind_) return false;
    switch (kind_) {
        case Kind::identity: return true;
        case Kind::power:
        case Kind::mirror_power: return exponent_ == o.exponent_;
        case Kind::piecewise_linear:
            return knots_.size() == o.knots_.size() &&
                   std::equal(knots_.begin(), knots_.end(), o.knots_.begin(),
                              [](const Knot& a, const Knot& b) {
                                  return a.x == b.x && a.y == b.y;
                              });
        case Kind::point_swap: return pairs_ == o.pairs_;
        case Kind::composition: return chain_ == o.chain_;
    }
    return false;
}

UnitMap compose_map_power(const UnitMap& f, unsigned n) {
    if (n == 0) return UnitMap::identity();
    if (n == 1) return f;
    std::vector<UnitMap> chain(n, f);
    return UnitMap::composition(std::move(chain));
}

} // namespace ifeq
