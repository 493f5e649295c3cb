#pragma once

#include <span>
#include <utility>
#include <vector>

namespace ifeq {

struct Knot {
    double x;
    double y;
};

// Self-map of [0,1] that fixes both endpoints exactly. The builtin family is
// closed under composition; every eval clamps nothing because each kind is
// range-safe on [0,1] by construction.
class UnitMap {
public:
    enum class Kind {
        identity,
        power,            // x^e, e >= 1
        mirror_power,     // 1 - (1-x)^e, e >= 1
        piecewise_linear, // knots with strictly increasing x, (0,0) and (1,1) included
        point_swap,       // involution exchanging listed interior pairs
        composition
    };

    UnitMap() : kind_(Kind::identity) {}

    static UnitMap identity();
    static UnitMap power(double exponent);
    static UnitMap mirror_power(double exponent);
    static UnitMap piecewise_linear(std::vector<Knot> knots);
    static UnitMap point_swap(std::vector<std::pair<double, double>> pairs);
    // chain[0] is outermost: composition({f, g})(x) = f(g(x))
    static UnitMap composition(std::vector<UnitMap> chain);

    Kind kind() const { return kind_; }
    double exponent() const { return exponent_; }
    const std::vector<Knot>& knots() const { return knots_; }
    const std::vector<std::pair<double, double>>& swap_pairs() const {
        return pairs_;
    }
    const std::vector<UnitMap>& chain() const { return chain_; }

    // throws on x outside [0,1]
    double operator()(double x) const;

    // elementwise eval; xs and out may alias
    void eval_batch(std::span<const double> xs, std::span<double> out) const;

    bool operator==(const UnitMap& o) const;

private:
    Kind kind_;
    double exponent_ = 1.0;
    bool integer_exponent_ = false;
    std::vector<Knot> knots_;
    std::vector<std::pair<double, double>> pairs_;
    std::vector<UnitMap> chain_;
};

// n-fold self-composition; n = 0 gives the identity.
UnitMap compose_map_power(const UnitMap& f, unsigned n);

} // namespace ifeq
