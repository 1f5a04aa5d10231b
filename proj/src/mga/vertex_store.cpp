#include "nearopt/mga/vertex_store.hpp"

#include <algorithm>
#include <cmath>

#include "nearopt/error.hpp"

namespace nearopt::mga {

std::string_view to_string(VertexTag tag) noexcept {
    return tag == VertexTag::kOptimal ? "optimal" : "intermediary";
}

bool VertexStore::insert(std::span<const double> projection, double cost, VertexTag tag,
                         std::span<const double> full) {
    for (auto& e : entries_) {
        require(e.projection.size() == projection.size(), "projection dimension mismatch");
        bool close = true;
        for (std::size_t i = 0; i < projection.size() && close; ++i)
            close = std::abs(e.projection[i] - projection[i]) <= tolerance_;
        if (close) {
            if (tag == VertexTag::kOptimal) e.tag = VertexTag::kOptimal;
            return false;
        }
    }
    StoredVertex v;
    v.projection.assign(projection.begin(), projection.end());
    v.cost = cost;
    v.tag = tag;
    v.full.assign(full.begin(), full.end());
    entries_.push_back(std::move(v));
    return true;
}

std::size_t VertexStore::count(VertexTag tag) const noexcept {
    return static_cast<std::size_t>(
        std::count_if(entries_.begin(), entries_.end(), [&](const auto& e) { return e.tag == tag; }));
}

std::vector<std::vector<double>> VertexStore::projections() const {
    std::vector<std::vector<double>> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) out.push_back(e.projection);
    return out;
}

std::vector<std::vector<double>> VertexStore::projections(VertexTag tag) const {
    std::vector<std::vector<double>> out;
    for (const auto& e : entries_)
        if (e.tag == tag) out.push_back(e.projection);
    return out;
}

} // namespace nearopt::mga
