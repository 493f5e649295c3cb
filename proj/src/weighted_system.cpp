#include "ifeq/weighted_system.hpp"

#include <algorithm>
#include <cmath>

#include "ifeq/errors.hpp"

namespace ifeq {

namespace {

void collect_probe_points(const UnitMap& m, std::vector<double>& pts) {
    switch (m.kind()) {
        case UnitMap::Kind::piecewise_linear:
            for (const Knot& k : m.knots()) pts.push_back(k.x);
            break;
        case UnitMap::Kind::point_swap:
            for (const auto& [u, v] : m.swap_pairs()) {
                pts.push_back(u);
                pts.push_back(v);
            }
            break;
        case UnitMap::Kind::composition:
            for (const UnitMap& c : m.chain()) collect_probe_points(c, pts);
            break;
        default:
            break;
    }
}

std::vector<double> probe_points(const std::vector<UnitMap>& maps) {
    std::vector<double> pts;
    for (std::size_t i = 0; i <= 64; ++i)
        pts.push_back(static_cast<double>(i) / 64.0);
    for (const UnitMap& m : maps) collect_probe_points(m, pts);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

} // namespace

WeightedSystem::WeightedSystem(std::vector<UnitMap> maps,
                               std::vector<double> weights,
                               std::optional<std::size_t> periodic_order)
    : maps_(std::move(maps)), weights_(std::move(weights)),
      periodic_order_(periodic_order) {
    if (maps_.empty() || maps_.size() != weights_.size())
        raise(ErrorCode::domain_error,
              "system needs matching, non-empty map and weight lists");
    double sum = 0.0;
    for (double w : weights_) {
        if (!(w >= 0.0))
            raise(ErrorCode::domain_error, "weights must be non-negative");
        sum += w;
    }
    if (std::fabs(sum - 1.0) > 1e-12)
        raise(ErrorCode::domain_error, "weights must sum to 1 within 1e-12");

    if (periodic_order_) {
        if (*periodic_order_ != maps_.size())
            raise(ErrorCode::domain_error,
                  "periodic_order must equal the number of maps");
        // maps[n] must track the n-th iterate of maps[1], and one more
        // application of the base must close the cycle
        std::vector<double> pts = probe_points(maps_);
        const UnitMap& base = maps_.size() > 1 ? maps_[1] : maps_[0];
        for (double x : pts) {
            double it = x;
            for (std::size_t n = 0; n < maps_.size(); ++n) {
                if (std::fabs(maps_[n](x) - it) > 1e-12)
                    raise(ErrorCode::not_periodic,
                          "maps[n] does not match the n-th iterate of maps[1]");
                it = base(it);
            }
            if (std::fabs(it - x) > 1e-12)
                raise(ErrorCode::not_periodic,
                      "base map does not return to the identity after N+1 steps");
        }
    }
    build_cumulative();
}

WeightedSystem WeightedSystem::periodic(const UnitMap& base,
                                        std::vector<double> weights) {
    std::vector<UnitMap> maps;
    maps.reserve(weights.size());
    for (std::size_t n = 0; n < weights.size(); ++n)
        maps.push_back(compose_map_power(base, static_cast<unsigned>(n)));
    std::size_t order = weights.size();
    return WeightedSystem(std::move(maps), std::move(weights), order);
}

void WeightedSystem::build_cumulative() {
    cumulative_.resize(weights_.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < weights_.size(); ++i) {
        acc += weights_[i];
        cumulative_[i] = acc;
    }
    cumulative_.back() = 1.0; // guard the final bucket against round-off
}

std::size_t WeightedSystem::nonzero_weight_count() const {
    std::size_t c = 0;
    for (double w : weights_)
        if (w > 0.0) ++c;
    return c;
}

bool WeightedSystem::weights_uniform(double tol) const {
    double u = 1.0 / static_cast<double>(weights_.size());
    for (double w : weights_)
        if (std::fabs(w - u) > tol) return false;
    return true;
}

std::size_t WeightedSystem::sample_letter(double u) const {
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    if (it == cumulative_.end()) return cumulative_.size() - 1;
    return static_cast<std::size_t>(it - cumulative_.begin());
}

Truncation WeightedSystem::truncated(double tau) const {
    if (periodic_order_) return {*this, 0, 0.0};
    // trailing mass <= tau goes first, then any exact zeros
    std::size_t keep = weights_.size();
    double tail = 0.0;
    while (keep > 1 && tail + weights_[keep - 1] <= tau) {
        tail += weights_[keep - 1];
        --keep;
    }
    std::vector<UnitMap> maps;
    std::vector<double> weights;
    double kept_mass = 0.0;
    for (std::size_t i = 0; i < keep; ++i) {
        if (weights_[i] == 0.0) continue;
        maps.push_back(maps_[i]);
        weights.push_back(weights_[i]);
        kept_mass += weights_[i];
    }
    std::size_t dropped = weights_.size() - maps.size();
    if (dropped == 0) return {*this, 0, 0.0};
    for (double& w : weights) w /= kept_mass;
    return {WeightedSystem(std::move(maps), std::move(weights)), dropped, tail};
}

} // namespace ifeq
