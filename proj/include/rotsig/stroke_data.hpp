#pragma once

#include <algorithm>
#include <cctype>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "rotsig/common.hpp"
#include "rotsig/polyline.hpp"

namespace rotsig {

/// One recorded input: pen-down strokes in writing order.
struct StrokeSample {
    std::string id;
    std::optional<std::string> label;           // class as text ("3", "circle_cw", ...)
    std::vector<std::vector<Vec2>> strokes;     // each with >= 1 vertex
};

enum class Split { kTrain, kTest, kUnlabeled };

struct Dataset {
    std::vector<StrokeSample> samples;
    Split split = Split::kUnlabeled;
};

enum class StrokeFormat { kStrokeJson, kStrokeCsv, kUnipenLike };

inline std::optional<StrokeFormat> stroke_format_from_name(const std::string& name) {
    if (name == "stroke-json") return StrokeFormat::kStrokeJson;
    if (name == "stroke-csv") return StrokeFormat::kStrokeCsv;
    if (name == "unipen-like") return StrokeFormat::kUnipenLike;
    return std::nullopt;
}

namespace detail {

inline void check_unique_ids(const Dataset& ds) {
    std::set<std::string> seen;
    for (const auto& s : ds.samples)
        if (!seen.insert(s.id).second)
            throw ParseError("duplicate sample id: " + s.id);
}

inline std::string label_from_json(const nlohmann::json& j) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return std::to_string(j.get<long long>());
    throw std::runtime_error("label must be an integer, a string or null");
}

// stroke-json: one JSON object per line,
// {"id": str, "label": int|str|null, "strokes": [[[x,y], ...], ...]}
inline Dataset parse_stroke_json(std::istream& is, std::vector<std::string>* warnings) {
    Dataset ds;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw ParseError(lineno, std::string("invalid JSON: ") + e.what());
        }
        try {
            StrokeSample sample;
            sample.id = j.at("id").get<std::string>();
            if (j.contains("label") && !j.at("label").is_null())
                sample.label = label_from_json(j.at("label"));
            for (const auto& stroke : j.at("strokes")) {
                std::vector<Vec2> pts;
                for (const auto& pt : stroke)
                    pts.push_back({pt.at(0).get<double>(), pt.at(1).get<double>()});
                if (pts.empty()) throw std::runtime_error("empty stroke");
                sample.strokes.push_back(std::move(pts));
            }
            if (sample.strokes.empty()) throw std::runtime_error("sample has no strokes");
            ds.samples.push_back(std::move(sample));
        } catch (const std::exception& e) {
            throw ParseError(lineno, e.what());
        }
    }
    if (ds.samples.empty() && warnings != nullptr)
        warnings->push_back("stroke-json input contained no samples");
    check_unique_ids(ds);
    return ds;
}

inline std::vector<std::string> split_csv_row(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

inline double parse_coord(const std::string& s, std::size_t lineno, const char* what) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError(lineno, std::string("non-numeric ") + what + ": '" + s + "'");
    }
}

// stroke-csv: header `id,label,stroke_index,point_index,x,y`; points sorted
// by (stroke_index, point_index) within each sample.
inline Dataset parse_stroke_csv(std::istream& is, std::vector<std::string>* warnings) {
    Dataset ds;
    std::string line;
    std::size_t lineno = 0;
    if (!std::getline(is, line)) {
        if (warnings != nullptr) warnings->push_back("stroke-csv input is empty");
        return ds;
    }
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "id,label,stroke_index,point_index,x,y")
        throw ParseError(lineno, "expected header 'id,label,stroke_index,point_index,x,y'");

    struct Row {
        long stroke, point;
        Vec2 p;
    };
    std::vector<std::string> order;  // ids in first-appearance order
    std::map<std::string, std::pair<std::optional<std::string>, std::vector<Row>>> rows;
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto f = split_csv_row(line);
        if (f.size() != 6) throw ParseError(lineno, "expected 6 fields, got " +
                                                        std::to_string(f.size()));
        auto it = rows.find(f[0]);
        if (it == rows.end()) {
            order.push_back(f[0]);
            it = rows.emplace(f[0], std::make_pair(std::optional<std::string>{},
                                                   std::vector<Row>{})).first;
            if (!f[1].empty()) it->second.first = f[1];
        }
        Row r;
        r.stroke = std::lround(parse_coord(f[2], lineno, "stroke_index"));
        r.point = std::lround(parse_coord(f[3], lineno, "point_index"));
        r.p = {parse_coord(f[4], lineno, "x"), parse_coord(f[5], lineno, "y")};
        it->second.second.push_back(r);
    }
    for (const auto& id : order) {
        auto& [label, rs] = rows[id];
        std::stable_sort(rs.begin(), rs.end(), [](const Row& a, const Row& b) {
            return std::tie(a.stroke, a.point) < std::tie(b.stroke, b.point);
        });
        StrokeSample sample;
        sample.id = id;
        sample.label = label;
        long cur = -1;
        for (const Row& r : rs) {
            if (r.stroke != cur) {
                sample.strokes.emplace_back();
                cur = r.stroke;
            }
            sample.strokes.back().push_back(r.p);
        }
        ds.samples.push_back(std::move(sample));
    }
    if (ds.samples.empty() && warnings != nullptr)
        warnings->push_back("stroke-csv input contained no samples");
    check_unique_ids(ds);
    return ds;
}

inline std::optional<std::string> last_quoted(const std::string& line) {
    const auto close = line.rfind('"');
    if (close == std::string::npos || close == 0) return std::nullopt;
    const auto open = line.rfind('"', close - 1);
    if (open == std::string::npos) return std::nullopt;
    return line.substr(open + 1, close - open - 1);
}

// unipen-like: minimal pen-stream reader. `.SEGMENT` starts a sample (label
// = last quoted token, if any), `.PEN_DOWN`/`.PEN_UP` bracket strokes,
// bare `x y` lines are points. Unrecognized directives are skipped with a
// warning; that is enough for the classic pen-trajectory dumps.
inline Dataset parse_unipen(std::istream& is, std::vector<std::string>* warnings) {
    Dataset ds;
    auto warn = [&](const std::string& msg) {
        if (warnings != nullptr) warnings->push_back(msg);
    };
    std::string line;
    std::size_t lineno = 0;
    std::size_t segment_no = 0;
    std::optional<StrokeSample> cur;
    bool pen_down = false;
    std::set<std::string> warned_directives;

    auto flush = [&]() {
        if (!cur) return;
        if (cur->strokes.empty())
            warn("segment '" + cur->id + "' has no pen-down strokes; skipped");
        else
            ds.samples.push_back(std::move(*cur));
        cur.reset();
        pen_down = false;
    };

    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos) continue;
        if (line[first] == '.') {
            std::istringstream ls(line.substr(first));
            std::string directive;
            ls >> directive;
            if (directive == ".SEGMENT") {
                flush();
                ++segment_no;
                cur = StrokeSample{};
                cur->id = "segment_" + std::to_string(segment_no);
                cur->label = last_quoted(line);
            } else if (directive == ".PEN_DOWN") {
                if (!cur) {
                    // tolerate streams that never declare segments
                    ++segment_no;
                    cur = StrokeSample{};
                    cur->id = "segment_" + std::to_string(segment_no);
                }
                cur->strokes.emplace_back();
                pen_down = true;
            } else if (directive == ".PEN_UP") {
                if (pen_down && !cur->strokes.empty() && cur->strokes.back().empty()) {
                    cur->strokes.pop_back();
                    warn("line " + std::to_string(lineno) + ": empty pen-down stroke dropped");
                }
                pen_down = false;
            } else if (directive == ".COMMENT") {
                // common chatter, not worth a warning
            } else if (warned_directives.insert(directive).second) {
                warn("line " + std::to_string(lineno) + ": unrecognized directive " +
                     directive + " skipped");
            }
            continue;
        }
        // coordinate line
        std::istringstream ls(line);
        double x = 0.0, y = 0.0;
        if (!(ls >> x >> y))
            throw ParseError(lineno, "expected 'x y' coordinates: '" + line + "'");
        if (!pen_down || !cur) {
            warn("line " + std::to_string(lineno) + ": coordinates outside pen-down ignored");
            continue;
        }
        cur->strokes.back().push_back({x, y});
    }
    flush();
    if (ds.samples.empty()) warn("unipen-like input contained no samples");
    check_unique_ids(ds);
    return ds;
}

}  // namespace detail

/// Parse a stroke-trajectory stream. Malformed records raise ParseError with
/// the offending line; an empty input yields an empty dataset plus a warning.
inline Dataset parse_strokes(std::istream& is, StrokeFormat format,
                             std::vector<std::string>* warnings = nullptr) {
    switch (format) {
        case StrokeFormat::kStrokeJson: return detail::parse_stroke_json(is, warnings);
        case StrokeFormat::kStrokeCsv: return detail::parse_stroke_csv(is, warnings);
        case StrokeFormat::kUnipenLike: return detail::parse_unipen(is, warnings);
    }
    throw ContractViolation("unknown stroke format");
}

}  // namespace rotsig
