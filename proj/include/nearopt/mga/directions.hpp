#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "nearopt/rng.hpp"

namespace nearopt::mga {

using Direction = std::vector<double>;

/// z / |z|. Throws on a zero vector.
Direction normalize_direction(std::vector<double> z);

/// Uniform point on the unit sphere in `nd` dimensions: a normalized vector of
/// standard normal draws. An all-zero draw is redrawn.
Direction sample_hypersphere(std::size_t nd, Rng& rng);

/// Angle in [0, pi] between two unit vectors. The dot product is clamped.
double angle_distance(std::span<const double> d1, std::span<const double> d2);

/// L_i = |optimum_i| where it exceeds 1e-6 * max(max_i |optimum_i|, 1), else
/// fallback_i. A single fallback value is broadcast.
std::vector<double> characteristic_scales(std::span<const double> optimum,
                                          std::span<const double> fallback);

struct DirectionSet {
    std::vector<Direction> directions;
    std::vector<double> scales;               // L, one per interest column
    std::vector<std::size_t> interest_columns;
    std::uint64_t seed = 0;

    std::size_t size() const noexcept { return directions.size(); }
    std::size_t dimension() const noexcept { return interest_columns.size(); }
    void validate() const;
};

/// Draws `n_objectives` directions from `rng` in order, so the first k
/// directions do not depend on n_objectives.
DirectionSet generate_directions(std::size_t n_objectives, std::vector<double> scales,
                                 std::vector<std::size_t> interest_columns, Rng& rng);

/// Cost vector of length n_columns with d_i / L_i on interest column i.
std::vector<double> make_objective(std::span<const double> direction, const DirectionSet& set,
                                   std::size_t n_columns);

/// Among directions with done[k] == false, the one at the smallest angle from
/// `current`, lowest index on ties. nullopt when every objective is done.
std::optional<std::size_t> select_next_objective(std::span<const double> current,
                                                 std::span<const Direction> directions,
                                                 const std::vector<bool>& done);

} // namespace nearopt::mga
