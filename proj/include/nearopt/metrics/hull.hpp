#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace nearopt::metrics {

enum class CloudSource { kFunplex, kSpores, kRandomDirections, kPlanarReference, kOther };

const char* to_string(CloudSource source) noexcept;
CloudSource cloud_source_from(std::string_view name);

struct PointCloud {
    std::size_t dimension = 0;
    std::vector<std::vector<double>> points;
    CloudSource source = CloudSource::kOther;

    /// Throws kInvalidArgument on ragged or non-finite points.
    void validate() const;
};

/// Coordinates x_i / L_i.
PointCloud scale_cloud(const PointCloud& cloud, std::span<const double> scales);

enum class VolumeMethod { kAuto, kExact, kMonteCarlo };

const char* to_string(VolumeMethod method) noexcept;

struct HullOptions {
    VolumeMethod method = VolumeMethod::kAuto;
    // kAuto picks the exact hull up to these limits.
    std::size_t exact_max_dimension = 5;
    std::size_t exact_max_points = 5000;
    std::size_t samples = 1'000'000;
    std::uint64_t seed = 1;
};

struct HullVolumeResult {
    double volume = 0.0;
    VolumeMethod method = VolumeMethod::kExact;
    double standard_error = 0.0;  // Monte Carlo only
    std::size_t points = 0;       // distinct input points
    std::size_t facets = 0;       // exact only
    bool degenerate = false;      // points lie in a lower-dimensional flat
};

/// Volume of the convex hull. Needs at least dimension + 1 points.
HullVolumeResult hull_volume(const PointCloud& cloud, const HullOptions& options = {});

/// Incremental beneath-beyond hull with a simplex decomposition from an
/// interior point.
HullVolumeResult exact_hull_volume(const PointCloud& cloud);

/// Uniform samples in the bounding box; membership by linear separation
/// (an LP feasibility test behind caches of separating hyperplanes and of
/// simplices already shown to lie inside).
HullVolumeResult monte_carlo_hull_volume(const PointCloud& cloud, std::size_t samples,
                                         std::uint64_t seed);

} // namespace nearopt::metrics
