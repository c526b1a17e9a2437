#pragma once

#include <cmath>
#include <initializer_list>
#include <vector>

#include "rotsig/common.hpp"

namespace rotsig {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Vec2 operator*(double k, Vec2 v) { return {k * v.x, k * v.y}; }
    friend bool operator==(Vec2 a, Vec2 b) = default;

    double norm_sq() const { return x * x + y * y; }
    double norm() const { return std::sqrt(norm_sq()); }
};

/// Piecewise-linear curve: an ordered 2D vertex list (length >= 1).
/// Zero-length segments are dropped at construction -- they contribute
/// identity factors to the signature and would raise 0/0 normalization
/// questions downstream.
class Polyline {
public:
    explicit Polyline(std::vector<Vec2> vertices) {
        require(!vertices.empty(), "polyline needs at least one vertex");
        pts_.reserve(vertices.size());
        for (const Vec2& v : vertices) {
            require(std::isfinite(v.x) && std::isfinite(v.y),
                    "polyline vertices must be finite");
            if (pts_.empty() || !(pts_.back() == v)) pts_.push_back(v);
        }
    }

    Polyline(std::initializer_list<Vec2> vertices)
        : Polyline(std::vector<Vec2>(vertices)) {}

    const std::vector<Vec2>& vertices() const { return pts_; }
    std::size_t segment_count() const { return pts_.size() - 1; }

    Vec2 front() const { return pts_.front(); }
    Vec2 back() const { return pts_.back(); }

    /// Polygonal arc length (total variation).
    double length() const {
        double len = 0.0;
        for (std::size_t i = 1; i < pts_.size(); ++i)
            len += (pts_[i] - pts_[i - 1]).norm();
        return len;
    }

private:
    std::vector<Vec2> pts_;
};

/// Applies the rotation matrix (cos t, sin t; -sin t, cos t) to every vertex.
inline Polyline rotate(const Polyline& path, double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    std::vector<Vec2> out;
    out.reserve(path.vertices().size());
    for (Vec2 v : path.vertices())
        out.push_back({v.x * c + v.y * s, -v.x * s + v.y * c});
    return Polyline(std::move(out));
}

/// Squared Euclidean distance between start and end point.
inline double endpoint_distance_sq(const Polyline& path) {
    return (path.back() - path.front()).norm_sq();
}

/// Signed area enclosed by the curve closed with the chord back to its
/// start, by the shoelace rule over vertices. Counter-clockwise positive.
inline double signed_area(const Polyline& path) {
    const auto& p = path.vertices();
    double twice = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const Vec2& a = p[i];
        const Vec2& b = p[(i + 1) % p.size()];
        twice += a.x * b.y - b.x * a.y;
    }
    return 0.5 * twice;
}

}  // namespace rotsig
