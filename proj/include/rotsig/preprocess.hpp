#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "rotsig/common.hpp"
#include "rotsig/polyline.hpp"
#include "rotsig/stroke_data.hpp"

namespace rotsig {

/// Join a sample's strokes into one polyline, connecting the endpoint of
/// each stroke to the start of the next with a straight segment. Zero-length
/// connectors (and any duplicate vertices) are dropped by the Polyline
/// builder.
inline Polyline join_strokes(const StrokeSample& sample) {
    require(!sample.strokes.empty(), "join_strokes: sample has no strokes");
    std::vector<Vec2> pts;
    for (const auto& stroke : sample.strokes) {
        require(!stroke.empty(), "join_strokes: empty stroke");
        pts.insert(pts.end(), stroke.begin(), stroke.end());
    }
    return Polyline(std::move(pts));
}

enum class NormalizeMode { kNone, kTotalVariation, kBbox };

inline std::optional<NormalizeMode> normalize_mode_from_name(const std::string& name) {
    if (name == "none") return NormalizeMode::kNone;
    if (name == "tv" || name == "total-variation") return NormalizeMode::kTotalVariation;
    if (name == "bbox") return NormalizeMode::kBbox;
    return std::nullopt;
}

inline const char* normalize_mode_name(NormalizeMode m) {
    switch (m) {
        case NormalizeMode::kNone: return "none";
        case NormalizeMode::kTotalVariation: return "total-variation";
        case NormalizeMode::kBbox: return "bbox";
    }
    return "?";
}

/// Uniform rescaling: `total-variation` makes the polygonal length 1, `bbox`
/// makes max(width, height) 1. Translation is irrelevant to the signature
/// (it sees increments only) and is not applied.
inline Polyline normalize(const Polyline& path, NormalizeMode mode) {
    if (mode == NormalizeMode::kNone) return path;
    require(path.segment_count() >= 1,
            "normalize: scaling modes need a path with at least one segment");
    double scale = 0.0;
    if (mode == NormalizeMode::kTotalVariation) {
        scale = path.length();
    } else {
        double min_x = path.vertices()[0].x, max_x = min_x;
        double min_y = path.vertices()[0].y, max_y = min_y;
        for (const Vec2& v : path.vertices()) {
            min_x = std::min(min_x, v.x);
            max_x = std::max(max_x, v.x);
            min_y = std::min(min_y, v.y);
            max_y = std::max(max_y, v.y);
        }
        scale = std::max(max_x - min_x, max_y - min_y);
    }
    require(scale > 0.0, "normalize: degenerate path");
    std::vector<Vec2> out;
    out.reserve(path.vertices().size());
    for (Vec2 v : path.vertices()) out.push_back((1.0 / scale) * v);
    return Polyline(std::move(out));
}

}  // namespace rotsig
