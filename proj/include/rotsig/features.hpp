#pragma once

#include <cstdint>
#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rotsig/common.hpp"
#include "rotsig/invariants.hpp"
#include "rotsig/preprocess.hpp"
#include "rotsig/signature.hpp"
#include "rotsig/stroke_data.hpp"

namespace rotsig {

// Counter-based deterministic randomness (splitmix64): a (seed, index) pair
// always maps to the same draw on every platform, so batch results are
// reproducible regardless of processing order.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

inline std::uint64_t counter_draw(std::uint64_t seed, std::uint64_t index) {
    return splitmix64(splitmix64(seed) + index);
}

/// Uniform in [0, 1) with 53 random bits.
inline double counter_uniform(std::uint64_t seed, std::uint64_t index) {
    return static_cast<double>(counter_draw(seed, index) >> 11) * 0x1.0p-53;
}

/// Rotation angle for sample `index`, uniform in [0, 2*pi).
inline double rotation_angle(std::uint64_t seed, std::uint64_t index) {
    return counter_uniform(seed, index) * 6.283185307179586476925286766559;
}

/// Evaluated invariant features of one sample.
struct FeatureVector {
    std::string sample_id;
    std::optional<std::string> label;
    int order = 0;
    FeatureVariant variant = FeatureVariant::kNewOnly;
    std::string normalization;
    std::vector<double> values;
};

struct SampleError {
    std::string sample_id;
    std::string message;
};

struct FeatureExtraction {
    std::vector<FeatureVector> features;   // input order, failed samples omitted
    std::vector<SampleError> errors;
};

struct FeatureOptions {
    int order = 6;                                    // even, <= table max_level
    FeatureVariant variant = FeatureVariant::kNewOnly;
    NormalizeMode normalization = NormalizeMode::kTotalVariation;
    std::optional<std::uint64_t> rotate_seed;         // random rotation when set
};

/// Per sample: join strokes, normalize, optionally rotate by the seeded
/// random angle, compute the signature and pair it against the table.
/// One bad sample does not abort the batch; its error is collected.
inline FeatureExtraction extract_features(const Dataset& dataset,
                                          const InvariantTable& table,
                                          const FeatureOptions& opts) {
    require(opts.order >= table.max_level,
            "extract_features: order below table max_level");
    FeatureExtraction out;
    for (std::size_t i = 0; i < dataset.samples.size(); ++i) {
        const StrokeSample& sample = dataset.samples[i];
        try {
            Polyline path = normalize(join_strokes(sample), opts.normalization);
            if (opts.rotate_seed)
                path = rotate(path, rotation_angle(*opts.rotate_seed, i));
            const Signature sig = signature(path, opts.order);
            FeatureVector fv;
            fv.sample_id = sample.id;
            fv.label = sample.label;
            fv.order = opts.order;
            fv.variant = opts.variant;
            fv.normalization = normalize_mode_name(opts.normalization);
            fv.values = evaluate_features(sig, table, opts.variant);
            out.features.push_back(std::move(fv));
        } catch (const std::exception& e) {
            out.errors.push_back({sample.id, e.what()});
        }
    }
    return out;
}

namespace detail {

inline std::string double_str(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace detail

/// CSV with one row per sample: `id,label,<invariant labels...>`.
inline void write_feature_csv(std::ostream& os, const std::vector<FeatureVector>& features,
                              const std::vector<std::string>& labels) {
    os << "id,label";
    for (const auto& l : labels) os << ',' << l;
    os << '\n';
    for (const auto& fv : features) {
        os << fv.sample_id << ',' << (fv.label ? *fv.label : "");
        for (double v : fv.values) os << ',' << detail::double_str(v);
        os << '\n';
    }
}

/// JSON sidecar with the run metadata needed to reproduce a feature file.
inline void write_feature_metadata(std::ostream& os, const InvariantTable& table,
                                   const FeatureOptions& opts,
                                   std::size_t sample_count, std::size_t error_count) {
    nlohmann::json j;
    j["order"] = opts.order;
    j["variant"] = variant_name(opts.variant);
    j["normalization"] = normalize_mode_name(opts.normalization);
    if (opts.rotate_seed)
        j["rotate_seed"] = *opts.rotate_seed;
    else
        j["rotate_seed"] = nullptr;
    j["angle_generator"] = "splitmix64(seed,index) -> uniform [0,2pi)";
    j["table"] = {{"version", table.version},
                  {"max_level", table.max_level},
                  {"pivot_rule", table.pivot_rule}};
    j["feature_labels"] = feature_labels(table, opts.variant);
    j["samples"] = sample_count;
    j["sample_errors"] = error_count;
    os << j.dump(2) << '\n';
}

struct LabeledFeatures {
    std::vector<std::string> ids;
    std::vector<std::optional<std::string>> labels;
    std::vector<std::vector<double>> values;
    std::vector<std::string> feature_names;
};

/// Read back a feature CSV produced by write_feature_csv.
inline LabeledFeatures read_feature_csv(std::istream& is) {
    LabeledFeatures out;
    std::string line;
    std::size_t lineno = 0;
    if (!std::getline(is, line)) throw ParseError("feature CSV is empty");
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto header = detail::split_csv_row(line);
    if (header.size() < 2 || header[0] != "id" || header[1] != "label")
        throw ParseError(lineno, "expected feature CSV header 'id,label,...'");
    out.feature_names.assign(header.begin() + 2, header.end());
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto f = detail::split_csv_row(line);
        if (f.size() != header.size())
            throw ParseError(lineno, "row width does not match header");
        out.ids.push_back(f[0]);
        out.labels.push_back(f[1].empty() ? std::optional<std::string>{} : f[1]);
        std::vector<double> vals;
        vals.reserve(f.size() - 2);
        for (std::size_t i = 2; i < f.size(); ++i)
            vals.push_back(detail::parse_coord(f[i], lineno, "feature value"));
        out.values.push_back(std::move(vals));
    }
    return out;
}

}  // namespace rotsig
