#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rotsig/common.hpp"

namespace rotsig {

/// Class-label order: numeric when both sides are integers, lexicographic
/// otherwise. Drives the deterministic tie-break (smallest label wins).
inline bool label_less(const std::string& a, const std::string& b) {
    auto as_int = [](const std::string& s) -> std::optional<long long> {
        if (s.empty()) return std::nullopt;
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) return std::nullopt;
        for (std::size_t k = i; k < s.size(); ++k)
            if (s[k] < '0' || s[k] > '9') return std::nullopt;
        try {
            return std::stoll(s);
        } catch (const std::exception&) {
            return std::nullopt;
        }
    };
    const auto ia = as_int(a), ib = as_int(b);
    if (ia && ib) return *ia < *ib;
    return a < b;
}

struct KnnResult {
    std::vector<std::string> predicted;   // one per test row
    double error_rate = 0.0;              // over labeled test rows
    std::size_t labeled = 0;
    int k_used = 0;
    std::vector<std::string> warnings;
};

/// Euclidean k-NN with optional per-feature standardization (train-set mean
/// and variance). Neighbor order is (distance, train index); vote ties break
/// to the smallest label. k larger than the train set is clamped with a
/// warning.
inline KnnResult knn_classify(const std::vector<std::vector<double>>& train,
                              const std::vector<std::string>& train_labels,
                              const std::vector<std::vector<double>>& test,
                              const std::vector<std::optional<std::string>>& test_labels,
                              int k, bool standardize) {
    require(k >= 1, "knn_classify: k must be >= 1");
    require(!train.empty(), "knn_classify: empty training set");
    require(train.size() == train_labels.size(), "knn_classify: train size mismatch");
    require(test_labels.empty() || test_labels.size() == test.size(),
            "knn_classify: test label size mismatch");
    const std::size_t dim = train[0].size();
    for (const auto& row : train)
        require(row.size() == dim, "knn_classify: train feature dimension mismatch");
    for (const auto& row : test)
        require(row.size() == dim, "knn_classify: test feature dimension mismatch");

    KnnResult res;
    res.k_used = k;
    if (static_cast<std::size_t>(k) > train.size()) {
        res.k_used = static_cast<int>(train.size());
        res.warnings.push_back("k=" + std::to_string(k) + " larger than training set; clamped to " +
                               std::to_string(res.k_used));
    }

    std::vector<double> mean(dim, 0.0), inv_dev(dim, 1.0);
    if (standardize) {
        for (const auto& row : train)
            for (std::size_t j = 0; j < dim; ++j) mean[j] += row[j];
        for (std::size_t j = 0; j < dim; ++j) mean[j] /= static_cast<double>(train.size());
        std::vector<double> var(dim, 0.0);
        for (const auto& row : train)
            for (std::size_t j = 0; j < dim; ++j) {
                const double d = row[j] - mean[j];
                var[j] += d * d;
            }
        for (std::size_t j = 0; j < dim; ++j) {
            var[j] /= static_cast<double>(train.size());
            inv_dev[j] = var[j] > 0.0 ? 1.0 / std::sqrt(var[j]) : 1.0;  // constant feature: leave as-is
        }
    }

    auto dist_sq = [&](const std::vector<double>& a, const std::vector<double>& b) {
        double s = 0.0;
        for (std::size_t j = 0; j < dim; ++j) {
            const double d = (a[j] - b[j]) * inv_dev[j];
            s += d * d;
        }
        return s;
    };

    std::size_t wrong = 0;
    std::vector<std::pair<double, std::size_t>> order(train.size());
    for (std::size_t t = 0; t < test.size(); ++t) {
        for (std::size_t i = 0; i < train.size(); ++i)
            order[i] = {dist_sq(test[t], train[i]), i};
        std::partial_sort(order.begin(), order.begin() + res.k_used, order.end());
        std::map<std::string, int, decltype(&label_less)> votes(&label_less);
        for (int i = 0; i < res.k_used; ++i) ++votes[train_labels[order[static_cast<std::size_t>(i)].second]];
        // max count; map order makes the first maximum the smallest label
        std::string best;
        int best_count = -1;
        for (const auto& [label, count] : votes)
            if (count > best_count) {
                best = label;
                best_count = count;
            }
        res.predicted.push_back(best);
        if (!test_labels.empty() && test_labels[t]) {
            ++res.labeled;
            if (*test_labels[t] != best) ++wrong;
        }
    }
    res.error_rate = res.labeled > 0 ? static_cast<double>(wrong) / static_cast<double>(res.labeled) : 0.0;
    return res;
}

}  // namespace rotsig
