#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "rotsig/features.hpp"
#include "rotsig/polyline.hpp"
#include "rotsig/stroke_data.hpp"

namespace rotsig {

// Offline stand-in for a real stroke corpus: eight polyline shape classes
// (orientation-separated circles, a figure-eight, and letter-like open
// paths where the turn structure, not the silhouette, tells classes apart).
// Everything is generated from counter-based draws, so a (seed, split)
// pair always yields the same dataset.

inline const std::vector<std::string>& synthetic_class_names() {
    static const std::vector<std::string> names = {
        "circle_ccw", "circle_cw", "eight", "ell", "em", "dub", "ess", "vee"};
    return names;
}

namespace detail {

inline std::vector<Vec2> base_shape(const std::string& cls) {
    std::vector<Vec2> pts;
    auto arc = [&](double from, double to, int steps, double r) {
        for (int i = 0; i <= steps; ++i) {
            const double t = from + (to - from) * i / steps;
            pts.push_back({r * std::cos(t), r * std::sin(t)});
        }
    };
    const double pi = 3.14159265358979323846;
    if (cls == "circle_ccw") {
        arc(0.0, 2.0 * pi, 24, 0.5);
    } else if (cls == "circle_cw") {
        arc(2.0 * pi, 0.0, 24, 0.5);
    } else if (cls == "eight") {
        for (int i = 0; i <= 32; ++i) {
            const double t = 2.0 * pi * i / 32;
            pts.push_back({0.5 * std::sin(t), 0.5 * std::sin(t) * std::cos(t)});
        }
    } else if (cls == "ell") {
        pts = {{0.0, 1.0}, {0.0, 0.0}, {0.8, 0.0}};
    } else if (cls == "em") {
        pts = {{0.0, 0.0}, {0.0, 1.0}, {0.5, 0.4}, {1.0, 1.0}, {1.0, 0.0}};
    } else if (cls == "dub") {
        pts = {{0.0, 1.0}, {0.25, 0.0}, {0.5, 0.6}, {0.75, 0.0}, {1.0, 1.0}};
    } else if (cls == "ess") {
        pts = {{0.8, 1.0}, {0.2, 1.0}, {0.0, 0.75}, {0.2, 0.5},
               {0.8, 0.5}, {1.0, 0.25}, {0.8, 0.0}, {0.2, 0.0}};
    } else if (cls == "vee") {
        pts = {{0.0, 1.0}, {0.5, 0.0}, {1.0, 1.0}};
    }
    return pts;
}

/// Subdivide so each sample has a comparable vertex budget.
inline std::vector<Vec2> resample(const std::vector<Vec2>& pts, std::size_t target) {
    if (pts.size() >= target || pts.size() < 2) return pts;
    const std::size_t per_seg = (target - 1) / (pts.size() - 1) + 1;
    std::vector<Vec2> out;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        for (std::size_t k = 0; k < per_seg; ++k) {
            const double t = static_cast<double>(k) / static_cast<double>(per_seg);
            out.push_back({pts[i].x + t * (pts[i + 1].x - pts[i].x),
                           pts[i].y + t * (pts[i + 1].y - pts[i].y)});
        }
    }
    out.push_back(pts.back());
    return out;
}

}  // namespace detail

struct SyntheticOptions {
    int per_class = 50;
    std::uint64_t seed = 1;
    Split split = Split::kTrain;
    double jitter = 0.03;   // per-vertex uniform noise, relative to unit size
};

/// Deterministic 8-class benchmark; every sample gets its own rotation,
/// scale wobble and vertex jitter.
inline Dataset make_synthetic_dataset(const SyntheticOptions& opts) {
    require(opts.per_class >= 1, "make_synthetic_dataset: per_class >= 1");
    Dataset ds;
    ds.split = opts.split;
    const auto& classes = synthetic_class_names();
    const std::uint64_t split_salt = opts.split == Split::kTrain ? 0x7261696eull : 0x74657374ull;
    std::size_t global = 0;
    for (int inst = 0; inst < opts.per_class; ++inst) {
        for (std::size_t c = 0; c < classes.size(); ++c, ++global) {
            const std::uint64_t sample_seed =
                counter_draw(opts.seed ^ split_salt, global);
            std::uint64_t draw = 0;
            auto uniform = [&](double lo, double hi) {
                return lo + (hi - lo) * counter_uniform(sample_seed, draw++);
            };
            auto pts = detail::resample(detail::base_shape(classes[c]), 24);
            const double angle = uniform(0.0, 2.0 * 3.14159265358979323846);
            const double scale = uniform(0.8, 1.25);
            const double ca = std::cos(angle), sa = std::sin(angle);
            for (Vec2& p : pts) {
                p.x += uniform(-opts.jitter, opts.jitter);
                p.y += uniform(-opts.jitter, opts.jitter);
                p = {scale * (p.x * ca + p.y * sa), scale * (-p.x * sa + p.y * ca)};
            }
            StrokeSample sample;
            sample.id = (opts.split == Split::kTrain   ? "train_"
                         : opts.split == Split::kTest ? "test_"
                                                       : "sample_") +
                        classes[c] + "_" + std::to_string(inst);
            sample.label = classes[c];
            sample.strokes.push_back(std::move(pts));
            ds.samples.push_back(std::move(sample));
        }
    }
    return ds;
}

}  // namespace rotsig
