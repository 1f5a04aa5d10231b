#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace nearopt::mga {

enum class VertexTag { kOptimal, kIntermediary };

std::string_view to_string(VertexTag tag) noexcept;

struct StoredVertex {
    std::vector<double> projection;  // values of the interest variables
    double cost = 0.0;
    VertexTag tag = VertexTag::kIntermediary;
    std::vector<double> full;  // whole LP vertex, only when requested
};

/// Visited vertices, deduplicated in projection space: a point within L-inf
/// distance `tolerance` of a stored one is merged into it (first seen wins,
/// the tag is upgraded to optimal if needed).
class VertexStore {
public:
    explicit VertexStore(double tolerance = 0.0) : tolerance_(tolerance) {}

    // Returns true when a new entry was created.
    bool insert(std::span<const double> projection, double cost, VertexTag tag,
                std::span<const double> full = {});

    const std::vector<StoredVertex>& entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }
    double tolerance() const noexcept { return tolerance_; }
    std::size_t count(VertexTag tag) const noexcept;

    std::vector<std::vector<double>> projections() const;
    std::vector<std::vector<double>> projections(VertexTag tag) const;

private:
    double tolerance_;
    std::vector<StoredVertex> entries_;
};

} // namespace nearopt::mga
