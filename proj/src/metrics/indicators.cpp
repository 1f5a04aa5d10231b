#include "nearopt/metrics/indicators.hpp"

#include <cmath>

#include "nearopt/error.hpp"

namespace nearopt::metrics {

std::vector<MethodVolume> normalized_volumes(std::span<const MethodVolume> volumes,
                                             const std::string& reference) {
    const MethodVolume* ref = nullptr;
    for (const auto& v : volumes)
        if (v.method == reference) ref = &v;
    require(ref != nullptr, "no volume for reference method '" + reference + "'");
    require(ref->volume > 0.0, "reference volume must be positive");
    std::vector<MethodVolume> out;
    out.reserve(volumes.size());
    for (const auto& v : volumes) out.push_back({v.method, v.volume / ref->volume});
    return out;
}

double volume_gain(double funplex_volume, double baseline_volume) {
    require(baseline_volume > 0.0, "baseline volume must be positive");
    return funplex_volume / baseline_volume;
}

double efficiency_gain(double baseline_pivots, double funplex_pivots) {
    require(funplex_pivots > 0.0, "Funplex pivot count must be positive");
    return baseline_pivots / funplex_pivots;
}

double scaling_slope(std::span<const double> x, std::span<const double> y) {
    require(x.size() == y.size(), "x and y differ in length");
    require(x.size() >= 3, "scaling slope needs at least 3 points");
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        require(x[i] > 0.0 && y[i] > 0.0, "scaling slope needs positive values");
        mx += std::log(x[i]);
        my += std::log(y[i]);
    }
    mx /= static_cast<double>(x.size());
    my /= static_cast<double>(x.size());
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = std::log(x[i]) - mx;
        sxy += dx * (std::log(y[i]) - my);
        sxx += dx * dx;
    }
    require(sxx > 0.0, "scaling slope needs distinct x values");
    return sxy / sxx;
}

} // namespace nearopt::metrics
