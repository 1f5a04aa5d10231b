#include "nearopt/mga/directions.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nearopt/error.hpp"

namespace nearopt::mga {

Direction normalize_direction(std::vector<double> z) {
    double norm2 = 0.0;
    for (double v : z) norm2 += v * v;
    require(norm2 > 0.0 && std::isfinite(norm2), "cannot normalize a zero or non-finite vector");
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& v : z) v *= inv;
    return z;
}

Direction sample_hypersphere(std::size_t nd, Rng& rng) {
    require(nd >= 1, "N_d must be >= 1");
    std::normal_distribution<double> z;
    Direction d(nd);
    for (;;) {
        double norm2 = 0.0;
        for (auto& v : d) {
            v = z(rng);
            norm2 += v * v;
        }
        if (norm2 > 0.0) return normalize_direction(std::move(d));
    }
}

double angle_distance(std::span<const double> d1, std::span<const double> d2) {
    require(d1.size() == d2.size(), "direction dimension mismatch");
    double dot = 0.0;
    for (std::size_t i = 0; i < d1.size(); ++i) dot += d1[i] * d2[i];
    return std::acos(std::clamp(dot, -1.0, 1.0));
}

std::vector<double> characteristic_scales(std::span<const double> optimum,
                                          std::span<const double> fallback) {
    require(fallback.size() == 1 || fallback.size() == optimum.size(),
            "fallback scales must be one value or one per interest variable");
    double largest = 0.0;
    for (double v : optimum) largest = std::max(largest, std::abs(v));
    const double threshold = 1e-6 * (largest > 0.0 ? largest : 1.0);
    std::vector<double> out(optimum.size());
    for (std::size_t i = 0; i < optimum.size(); ++i) {
        const double fb = fallback.size() == 1 ? fallback[0] : fallback[i];
        require(fb > 0.0, "fallback scales must be positive");
        out[i] = std::abs(optimum[i]) > threshold ? std::abs(optimum[i]) : fb;
    }
    return out;
}

void DirectionSet::validate() const {
    require(!directions.empty(), "N_k must be >= 1");
    require(scales.size() == interest_columns.size(), "one scale per interest column");
    for (double l : scales) require(l > 0.0 && std::isfinite(l), "scales must be positive");
    for (const auto& d : directions)
        require(d.size() == interest_columns.size(), "direction dimension != N_d");
}

DirectionSet generate_directions(std::size_t n_objectives, std::vector<double> scales,
                                 std::vector<std::size_t> interest_columns, Rng& rng) {
    require(n_objectives >= 1, "N_k must be >= 1");
    DirectionSet set;
    set.scales = std::move(scales);
    set.interest_columns = std::move(interest_columns);
    set.directions.reserve(n_objectives);
    for (std::size_t k = 0; k < n_objectives; ++k)
        set.directions.push_back(sample_hypersphere(set.interest_columns.size(), rng));
    set.validate();
    return set;
}

std::vector<double> make_objective(std::span<const double> direction, const DirectionSet& set,
                                   std::size_t n_columns) {
    require(direction.size() == set.dimension(), "direction dimension != N_d");
    std::vector<double> c(n_columns, 0.0);
    for (std::size_t i = 0; i < direction.size(); ++i) {
        const std::size_t col = set.interest_columns[i];
        require(col < n_columns, "interest column " + std::to_string(col) + " out of range");
        c[col] = direction[i] / set.scales[i];
    }
    return c;
}

std::optional<std::size_t> select_next_objective(std::span<const double> current,
                                                 std::span<const Direction> directions,
                                                 const std::vector<bool>& done) {
    require(done.size() == directions.size(), "done flags != objective count");
    std::optional<std::size_t> best;
    double best_angle = 0.0;
    for (std::size_t k = 0; k < directions.size(); ++k) {
        if (done[k]) continue;
        const double a = angle_distance(current, directions[k]);
        if (!best || a < best_angle) {
            best = k;
            best_angle = a;
        }
    }
    return best;
}

} // namespace nearopt::mga
