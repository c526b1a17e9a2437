#pragma once

#include <cstdint>
#include <cstring>

#include "rotsig/common.hpp"
#include "rotsig/polyline.hpp"
#include "rotsig/tensor_series.hpp"

namespace rotsig {

namespace detail {

inline std::uint64_t fnv1a(const void* data, std::size_t len, std::uint64_t h) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::uint64_t hash_polyline(const Polyline& path, int order) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    h = fnv1a(&order, sizeof(order), h);
    for (const Vec2& v : path.vertices()) h = fnv1a(&v, sizeof(v), h);
    return h;
}

}  // namespace detail

/// Truncated signature of a curve together with an identifier of the
/// generating polyline and order. Level 0 is exactly 1; level 1 equals the
/// endpoint displacement.
struct Signature {
    TensorSeries<double> series;
    std::uint64_t source_hash = 0;

    int order() const { return series.order(); }
};

/// exp of the level-1 element d1*x1 + d2*x2, truncated: the level-k slice
/// carries d_{i1}...d_{ik}/k! on word i1...ik. Built level by level via
/// coeff(w.i) = coeff(w) * d_i / n.
inline TensorSeries<double> segment_exp(Vec2 delta, int order) {
    check_order(order);
    TensorSeries<double> out = TensorSeries<double>::unit(order);
    for (int n = 1; n <= order; ++n) {
        const auto& prev = out.level(n - 1);
        auto& lv = out.level(n);
        const double fx = delta.x / n;
        const double fy = delta.y / n;
        for (std::uint32_t b = 0; b < prev.size(); ++b) {
            lv[b << 1] = prev[b] * fx;
            lv[(b << 1) | 1u] = prev[b] * fy;
        }
    }
    return out;
}

/// Signature of a piecewise-linear path: the concatenation product of the
/// per-segment exponentials, earliest segment leftmost. A single-vertex
/// (constant) path has the unit series.
inline Signature signature(const Polyline& path, int order) {
    check_order(order);
    TensorSeries<double> acc = TensorSeries<double>::unit(order);
    const auto& pts = path.vertices();
    for (std::size_t i = 1; i < pts.size(); ++i)
        acc = concat_product(acc, segment_exp(pts[i] - pts[i - 1], order));
    return Signature{std::move(acc), detail::hash_polyline(path, order)};
}

/// Concatenation product of two signatures; equals the signature of the
/// concatenated paths when a's endpoint is translated onto b's start.
inline Signature chen_concat(const Signature& a, const Signature& b) {
    require(a.order() == b.order(), "chen_concat: order mismatch");
    std::uint64_t h = a.source_hash;
    h = detail::fnv1a(&b.source_hash, sizeof(b.source_hash), h ^ 0x9e3779b97f4a7c15ull);
    return Signature{concat_product(a.series, b.series), h};
}

/// Independent oracle for `signature`: first-order Euler updates of the
/// nested integrals on a fine discretization. For each step with increment
/// dX, every prefix value updates as S_{w.i} += S_w * dX^i (levels processed
/// top-down so the right-hand side uses pre-step values). Converges to the
/// closed form at first order as steps_per_segment grows.
inline TensorSeries<double> brute_force_signature(const Polyline& path, int order,
                                                  int steps_per_segment) {
    check_order(order);
    require(steps_per_segment >= 1, "brute_force_signature: steps_per_segment >= 1");
    TensorSeries<double> s = TensorSeries<double>::unit(order);
    const auto& pts = path.vertices();
    for (std::size_t i = 1; i < pts.size(); ++i) {
        const Vec2 step = (1.0 / steps_per_segment) * (pts[i] - pts[i - 1]);
        for (int k = 0; k < steps_per_segment; ++k) {
            for (int n = order; n >= 1; --n) {
                auto& lv = s.level(n);
                const auto& prev = s.level(n - 1);
                for (std::uint32_t b = 0; b < prev.size(); ++b) {
                    lv[b << 1] += prev[b] * step.x;
                    lv[(b << 1) | 1u] += prev[b] * step.y;
                }
            }
        }
    }
    return s;
}

}  // namespace rotsig
