#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ifeq/unit_map.hpp"

namespace ifeq {

struct Truncation;

// Finite family of endpoint-fixing maps with probability weights. When
// periodic_order = N+1 is declared, maps[n] must be the n-th iterate of
// maps[1] and maps[1]^(N+1) the identity; that structure is what the
// convolution table exploits.
class WeightedSystem {
public:
    WeightedSystem(std::vector<UnitMap> maps, std::vector<double> weights,
                   std::optional<std::size_t> periodic_order = {});

    // builds {f^0, ..., f^N} from a single base map
    static WeightedSystem periodic(const UnitMap& base,
                                   std::vector<double> weights);

    std::size_t size() const { return maps_.size(); }
    const UnitMap& map(std::size_t n) const { return maps_[n]; }
    const std::vector<UnitMap>& maps() const { return maps_; }
    const std::vector<double>& weights() const { return weights_; }
    std::optional<std::size_t> periodic_order() const { return periodic_order_; }

    std::size_t nonzero_weight_count() const;
    bool weights_uniform(double tol = 1e-12) const;

    // smallest index i with u < cumulative weight through i
    std::size_t sample_letter(double u) const;

    // Drops zero-weight maps and any trailing maps of cumulative weight
    // <= tau, then renormalizes. Periodic systems pass through unchanged
    // (index n encodes the iterate there).
    Truncation truncated(double tau = 1e-12) const;

private:
    std::vector<UnitMap> maps_;
    std::vector<double> weights_;
    std::vector<double> cumulative_;
    std::optional<std::size_t> periodic_order_;

    void build_cumulative();
};

struct Truncation {
    WeightedSystem system;
    std::size_t dropped = 0;
    double tail_mass = 0.0; // sup-norm error is <= 2 * bound * tail_mass
};

} // namespace ifeq
