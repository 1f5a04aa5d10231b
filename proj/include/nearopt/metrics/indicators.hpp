#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace nearopt::metrics {

struct MethodVolume {
    std::string method;
    double volume = 0.0;
};

/// Each volume divided by the one named `reference` (Funplex by default).
std::vector<MethodVolume> normalized_volumes(std::span<const MethodVolume> volumes,
                                             const std::string& reference = "funplex");

double volume_gain(double funplex_volume, double baseline_volume);
double efficiency_gain(double baseline_pivots, double funplex_pivots);

/// Least-squares slope of log y against log x.
double scaling_slope(std::span<const double> x, std::span<const double> y);

} // namespace nearopt::metrics
