#include "nearopt/metrics/hull.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>

#include "nearopt/error.hpp"
#include "nearopt/lp/simplex.hpp"
#include "nearopt/rng.hpp"

namespace nearopt::metrics {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

constexpr double kFlatTol = 1e-9;     // affine rank test, unit-box coordinates
constexpr double kVisibleTol = 1e-10;  // point-above-facet test

// Points mapped into the unit box [0, 1]^d, duplicates removed.
struct Normalized {
    std::vector<VectorXd> points;
    std::vector<double> lower;
    std::vector<double> extent;
    double box_volume = 1.0;
    bool flat = false;  // some coordinate has zero extent
};

Normalized normalize(const PointCloud& cloud) {
    const std::size_t d = cloud.dimension;
    Normalized n;
    n.lower.assign(d, 0.0);
    n.extent.assign(d, 0.0);
    for (std::size_t i = 0; i < d; ++i) {
        double lo = cloud.points[0][i];
        double hi = lo;
        for (const auto& p : cloud.points) {
            lo = std::min(lo, p[i]);
            hi = std::max(hi, p[i]);
        }
        n.lower[i] = lo;
        n.extent[i] = hi - lo;
        n.box_volume *= n.extent[i];
        if (!(n.extent[i] > 0.0)) n.flat = true;
    }
    if (n.flat) return n;

    auto sorted = cloud.points;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    n.points.reserve(sorted.size());
    for (const auto& p : sorted) {
        VectorXd v(d);
        for (std::size_t i = 0; i < d; ++i) v[i] = (p[i] - n.lower[i]) / n.extent[i];
        n.points.push_back(std::move(v));
    }
    return n;
}

double factorial(std::size_t d) {
    double f = 1.0;
    for (std::size_t k = 2; k <= d; ++k) f *= static_cast<double>(k);
    return f;
}

// d + 1 affinely independent points, or empty when the cloud is flat.
std::vector<std::size_t> initial_simplex(const std::vector<VectorXd>& pts, std::size_t d) {
    std::vector<std::size_t> chosen{0};
    std::vector<VectorXd> basis;
    for (std::size_t k = 0; k < d; ++k) {
        double best = kFlatTol;
        std::size_t arg = pts.size();
        VectorXd best_residual;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            VectorXd r = pts[i] - pts[chosen[0]];
            for (const auto& q : basis) r -= r.dot(q) * q;
            const double len = r.norm();
            if (len > best) {
                best = len;
                arg = i;
                best_residual = std::move(r);
            }
        }
        if (arg == pts.size()) return {};
        chosen.push_back(arg);
        basis.push_back(best_residual / best);
    }
    return chosen;
}

class IncrementalHull {
public:
    IncrementalHull(const std::vector<VectorXd>& pts, std::size_t d) : pts_(pts), d_(d) {}

    // False when the points are affinely dependent.
    bool build() {
        auto simplex = initial_simplex(pts_, d_);
        if (simplex.empty()) return false;
        center_ = VectorXd::Zero(static_cast<Eigen::Index>(d_));
        for (std::size_t s : simplex) center_ += pts_[s];
        center_ /= static_cast<double>(d_ + 1);

        for (std::size_t j = 0; j <= d_; ++j) {
            Facet f;
            for (std::size_t i = 0; i <= d_; ++i) {
                if (i == j) continue;
                f.v.push_back(simplex[i]);
                f.nb.push_back(i);  // facet i is the one without simplex[i]
            }
            set_plane(f);
            facets_.push_back(std::move(f));
        }
        for (std::size_t j = 0; j <= d_; ++j) active_.push_back(j);

        std::vector<std::size_t> order(pts_.size());
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), Rng(0x5eed));
        for (std::size_t p : order) add_point(p);
        return true;
    }

    double volume() const {
        MatrixXd m(d_, d_);
        double sum = 0.0;
        for (std::size_t f : active_) {
            for (std::size_t i = 0; i < d_; ++i)
                m.col(static_cast<Eigen::Index>(i)) = pts_[facets_[f].v[i]] - center_;
            sum += std::abs(m.determinant());
        }
        return sum / factorial(d_);
    }

    std::size_t facet_count() const noexcept { return active_.size(); }

private:
    struct Facet {
        std::vector<std::size_t> v;   // d vertices
        std::vector<std::size_t> nb;  // nb[k] shares every vertex but v[k]
        VectorXd normal;
        double offset = 0.0;
        bool alive = true;
    };

    void set_plane(Facet& f) const {
        const auto d = static_cast<Eigen::Index>(d_);
        VectorXd n(d);
        if (d_ == 1) {
            n[0] = 1.0;
        } else {
            MatrixXd rows(d - 1, d);
            for (Eigen::Index i = 1; i < d; ++i)
                rows.row(i - 1) = (pts_[f.v[static_cast<std::size_t>(i)]] - pts_[f.v[0]]).transpose();
            // Generalized cross product: cofactors along a virtual first row.
            MatrixXd minor(d - 1, d - 1);
            for (Eigen::Index j = 0; j < d; ++j) {
                for (Eigen::Index c = 0, k = 0; c < d; ++c)
                    if (c != j) minor.col(k++) = rows.col(c);
                n[j] = ((j % 2) ? -1.0 : 1.0) * minor.determinant();
            }
        }
        const double len = n.norm();
        if (len > 0.0) n /= len;
        f.normal = n;
        f.offset = n.dot(pts_[f.v[0]]);
        if (f.normal.dot(center_) > f.offset) {
            f.normal = -f.normal;
            f.offset = -f.offset;
        }
    }

    void add_point(std::size_t p) {
        const VectorXd& x = pts_[p];
        std::vector<std::size_t> visible;
        for (std::size_t f : active_)
            if (facets_[f].normal.dot(x) - facets_[f].offset > kVisibleTol) visible.push_back(f);
        if (visible.empty()) return;
        for (std::size_t f : visible) facets_[f].alive = false;

        std::vector<std::size_t> created;
        for (std::size_t f : visible) {
            for (std::size_t k = 0; k < d_; ++k) {
                const std::size_t g = facets_[f].nb[k];
                if (!facets_[g].alive) continue;
                Facet h;
                h.v = facets_[f].v;
                h.v[k] = p;
                h.nb.assign(d_, 0);
                h.nb[k] = g;
                set_plane(h);
                const std::size_t id = facets_.size();
                for (auto& slot : facets_[g].nb)
                    if (slot == f) slot = id;
                facets_.push_back(std::move(h));
                created.push_back(id);
            }
        }

        // New facets meet along ridges that contain p.
        std::map<std::vector<std::size_t>, std::pair<std::size_t, std::size_t>> open;
        for (std::size_t id : created) {
            for (std::size_t j = 0; j < d_; ++j) {
                if (facets_[id].v[j] == p) continue;
                std::vector<std::size_t> key;
                key.reserve(d_ - 1);
                for (std::size_t i = 0; i < d_; ++i)
                    if (i != j) key.push_back(facets_[id].v[i]);
                std::sort(key.begin(), key.end());
                auto it = open.find(key);
                if (it == open.end()) {
                    open.emplace(std::move(key), std::make_pair(id, j));
                } else {
                    const auto [other, slot] = it->second;
                    facets_[id].nb[j] = other;
                    facets_[other].nb[slot] = id;
                    open.erase(it);
                }
            }
        }

        std::erase_if(active_, [&](std::size_t f) { return !facets_[f].alive; });
        active_.insert(active_.end(), created.begin(), created.end());
    }

    const std::vector<VectorXd>& pts_;
    std::size_t d_;
    VectorXd center_;
    std::vector<Facet> facets_;
    std::vector<std::size_t> active_;
};

// Membership in conv(points) for Monte Carlo sampling.
class Membership {
public:
    Membership(const std::vector<VectorXd>& pts, std::size_t d, Rng& rng) : pts_(pts), d_(d) {
        centroid_ = VectorXd::Zero(static_cast<Eigen::Index>(d));
        for (const auto& p : pts) centroid_ += p;
        centroid_ /= static_cast<double>(pts.size());
        std::normal_distribution<double> g;
        for (std::size_t k = 0; k < 64 * d; ++k) {
            VectorXd u(d);
            for (auto& v : u) v = g(rng);
            add_separator(u.normalized());
        }
        lp_rows_.resize(d + 1);
        for (std::size_t r = 0; r <= d; ++r) {
            lp_rows_[r].coeffs.resize(pts.size());
            lp_rows_[r].relation = lp::Relation::kEqual;
            for (std::size_t i = 0; i < pts.size(); ++i)
                lp_rows_[r].coeffs[i] = r < d ? pts[i][static_cast<Eigen::Index>(r)] : 1.0;
        }
    }

    bool contains(const VectorXd& q) {
        for (std::size_t k = 0; k < planes_.size(); ++k) {
            if (planes_[k].normal.dot(q) > planes_[k].support) {
                if (k > 0) std::swap(planes_[k], planes_[k - 1]);
                return false;
            }
        }
        for (std::size_t k = 0; k < simplices_.size(); ++k) {
            if (inside(simplices_[k], q)) {
                if (k > 0) std::swap(simplices_[k], simplices_[k - 1]);
                return true;
            }
        }
        return solve(q);
    }

private:
    struct Plane {
        VectorXd normal;
        double support = 0.0;
    };
    struct Simplex {
        VectorXd origin;
        MatrixXd inverse;
    };

    static constexpr std::size_t kMaxSimplices = 512;

    void add_separator(const VectorXd& u) {
        double h = -std::numeric_limits<double>::infinity();
        for (const auto& p : pts_) h = std::max(h, u.dot(p));
        planes_.push_back({u, h + 1e-12});
    }

    static bool inside(const Simplex& s, const VectorXd& q) {
        const VectorXd lambda = s.inverse * (q - s.origin);
        double sum = 0.0;
        for (double l : lambda) {
            if (l < -1e-12) return false;
            sum += l;
        }
        return sum <= 1.0 + 1e-12;
    }

    bool solve(const VectorXd& q) {
        for (std::size_t r = 0; r < d_; ++r) lp_rows_[r].rhs = q[static_cast<Eigen::Index>(r)];
        lp_rows_[d_].rhs = 1.0;
        const std::vector<double> zero(pts_.size(), 0.0);
        lp::Basis basis;
        try {
            basis = lp::phase_one(lp::build_standard_form(lp_rows_, zero));
        } catch (const Error& e) {
            if (e.code() != ErrorCode::kInfeasible) throw;
            const VectorXd u = q - centroid_;
            if (u.norm() > 0.0) add_separator(u.normalized());
            return false;
        }
        std::vector<std::size_t> corners;
        for (std::size_t c : basis.indices)
            if (c < pts_.size()) corners.push_back(c);
        if (corners.size() == d_ + 1 && simplices_.size() < kMaxSimplices) {
            MatrixXd m(d_, d_);
            for (std::size_t i = 0; i < d_; ++i)
                m.col(static_cast<Eigen::Index>(i)) = pts_[corners[i + 1]] - pts_[corners[0]];
            Eigen::FullPivLU<MatrixXd> lu(m);
            if (lu.isInvertible()) simplices_.push_back({pts_[corners[0]], lu.inverse()});
        }
        return true;
    }

    const std::vector<VectorXd>& pts_;
    std::size_t d_;
    VectorXd centroid_;
    std::vector<Plane> planes_;
    std::vector<Simplex> simplices_;
    std::vector<lp::RowSpec> lp_rows_;
};

void check_size(const PointCloud& cloud) {
    cloud.validate();
    require(cloud.dimension >= 1, "hull volume needs dimension >= 1");
    require(cloud.points.size() >= cloud.dimension + 1,
            "hull volume needs at least dimension + 1 points");
}

} // namespace

const char* to_string(CloudSource source) noexcept {
    switch (source) {
        case CloudSource::kFunplex: return "funplex";
        case CloudSource::kSpores: return "spores";
        case CloudSource::kRandomDirections: return "random_directions";
        case CloudSource::kPlanarReference: return "planar_reference";
        case CloudSource::kOther: break;
    }
    return "other";
}

CloudSource cloud_source_from(std::string_view name) {
    for (auto s : {CloudSource::kFunplex, CloudSource::kSpores, CloudSource::kRandomDirections,
                   CloudSource::kPlanarReference, CloudSource::kOther})
        if (name == to_string(s)) return s;
    fail(ErrorCode::kInvalidArgument, "unknown cloud source '" + std::string(name) + "'");
}

const char* to_string(VolumeMethod method) noexcept {
    switch (method) {
        case VolumeMethod::kExact: return "exact";
        case VolumeMethod::kMonteCarlo: return "monte_carlo";
        case VolumeMethod::kAuto: break;
    }
    return "auto";
}

void PointCloud::validate() const {
    for (const auto& p : points) {
        require(p.size() == dimension, "point dimension mismatch");
        for (double v : p) require(std::isfinite(v), "non-finite point coordinate");
    }
}

PointCloud scale_cloud(const PointCloud& cloud, std::span<const double> scales) {
    require(scales.size() == cloud.dimension, "scale count must match the dimension");
    PointCloud out = cloud;
    for (auto& p : out.points)
        for (std::size_t i = 0; i < p.size(); ++i) {
            require(scales[i] > 0.0, "scales must be positive");
            p[i] /= scales[i];
        }
    return out;
}

HullVolumeResult hull_volume(const PointCloud& cloud, const HullOptions& options) {
    VolumeMethod method = options.method;
    if (method == VolumeMethod::kAuto)
        method = cloud.dimension <= options.exact_max_dimension &&
                         cloud.points.size() <= options.exact_max_points
                     ? VolumeMethod::kExact
                     : VolumeMethod::kMonteCarlo;
    return method == VolumeMethod::kExact
               ? exact_hull_volume(cloud)
               : monte_carlo_hull_volume(cloud, options.samples, options.seed);
}

HullVolumeResult exact_hull_volume(const PointCloud& cloud) {
    check_size(cloud);
    HullVolumeResult out;
    out.method = VolumeMethod::kExact;
    const Normalized n = normalize(cloud);
    out.points = n.flat ? 0 : n.points.size();
    if (n.flat) {
        out.degenerate = true;
        return out;
    }
    IncrementalHull hull(n.points, cloud.dimension);
    if (!hull.build()) {
        out.degenerate = true;
        return out;
    }
    out.facets = hull.facet_count();
    out.volume = hull.volume() * n.box_volume;
    return out;
}

HullVolumeResult monte_carlo_hull_volume(const PointCloud& cloud, std::size_t samples,
                                         std::uint64_t seed) {
    check_size(cloud);
    require(samples >= 1, "Monte Carlo needs at least one sample");
    HullVolumeResult out;
    out.method = VolumeMethod::kMonteCarlo;
    const Normalized n = normalize(cloud);
    out.points = n.flat ? 0 : n.points.size();
    if (n.flat || initial_simplex(n.points, cloud.dimension).empty()) {
        out.degenerate = true;
        return out;
    }
    Rng rng = make_stream(seed, "metrics/monte_carlo");
    Membership member(n.points, cloud.dimension, rng);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    VectorXd q(static_cast<Eigen::Index>(cloud.dimension));
    std::size_t hits = 0;
    for (std::size_t s = 0; s < samples; ++s) {
        for (auto& v : q) v = unit(rng);
        if (member.contains(q)) ++hits;
    }
    const double frac = static_cast<double>(hits) / static_cast<double>(samples);
    out.volume = frac * n.box_volume;
    out.standard_error =
        n.box_volume * std::sqrt(frac * (1.0 - frac) / static_cast<double>(samples));
    return out;
}

} // namespace nearopt::metrics
