#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "rotsig/features.hpp"
#include "rotsig/invariants.hpp"
#include "rotsig/polyline.hpp"
#include "rotsig/signature.hpp"
#include "rotsig/tensor_series.hpp"

namespace rotsig {

/// Deterministic random polyline: `segments` in [1, max_segments], vertices
/// uniform in [-1, 1]^2. Counter-based, so index k is the same path
/// everywhere.
inline Polyline random_polyline(std::uint64_t seed, std::uint64_t index,
                                int max_segments = 8) {
    const std::uint64_t s = counter_draw(seed, index);
    std::uint64_t draw = 0;
    auto uniform = [&](double lo, double hi) {
        return lo + (hi - lo) * counter_uniform(s, draw++);
    };
    const int segments = 1 + static_cast<int>(uniform(0.0, 1.0) * max_segments);
    std::vector<Vec2> pts;
    pts.push_back({uniform(-1.0, 1.0), uniform(-1.0, 1.0)});
    while (static_cast<int>(pts.size()) <= segments)
        pts.push_back({uniform(-1.0, 1.0), uniform(-1.0, 1.0)});
    return Polyline(std::move(pts));
}

inline bool close_rel(double a, double b, double tol) {
    return std::abs(a - b) <= tol * (1.0 + std::max(std::abs(a), std::abs(b)));
}

/// Runs the fast end of the property suite; prints one line per check.
/// Returns true when everything passed.
inline bool run_selftest(std::ostream& os) {
    struct Check {
        std::string name;
        std::function<std::string()> run;  // empty string = pass
    };
    std::vector<Check> checks;

    checks.push_back({"shuffle identity <S,a><S,b> = <S,a sh b>", []() -> std::string {
        for (std::uint64_t p = 0; p < 20; ++p) {
            const Signature sig = signature(random_polyline(11, p), 4);
            for (int la = 1; la <= 3; ++la)
                for (int lb = 1; la + lb <= 4; ++lb)
                    for (Word a : words_of_level(la))
                        for (Word b : words_of_level(lb)) {
                            auto sa = TensorSeries<double>::monomial(a, 1.0, 4);
                            auto sb = TensorSeries<double>::monomial(b, 1.0, 4);
                            const double lhs = pairing(sig.series, sa) * pairing(sig.series, sb);
                            const double rhs = pairing(sig.series, shuffle_product(sa, sb));
                            if (!close_rel(lhs, rhs, 1e-9))
                                return "path " + std::to_string(p) + " words " + a.str() +
                                       "," + b.str();
                        }
        }
        return "";
    }});

    checks.push_back({"Chen identity over path concatenation", []() -> std::string {
        for (std::uint64_t p = 0; p < 10; ++p) {
            const Polyline full = random_polyline(23, p, 6);
            const auto& v = full.vertices();
            if (v.size() < 3) continue;
            const std::size_t cut = v.size() / 2;
            const Polyline left(std::vector<Vec2>(v.begin(), v.begin() + cut + 1));
            const Polyline right(std::vector<Vec2>(v.begin() + cut, v.end()));
            const Signature whole = signature(full, 4);
            const Signature glued = chen_concat(signature(left, 4), signature(right, 4));
            for (int n = 0; n <= 4; ++n)
                for (std::size_t i = 0; i < whole.series.level(n).size(); ++i)
                    if (!close_rel(whole.series.level(n)[i], glued.series.level(n)[i], 1e-12))
                        return "path " + std::to_string(p);
        }
        return "";
    }});

    checks.push_back({"discretized integrals converge to closed form", []() -> std::string {
        for (std::uint64_t p = 0; p < 3; ++p) {
            const Polyline path = random_polyline(31, p, 4);
            const Signature exact = signature(path, 3);
            const TensorSeries<double> approx = brute_force_signature(path, 3, 2000);
            for (int n = 0; n <= 3; ++n)
                for (std::size_t i = 0; i < exact.series.level(n).size(); ++i)
                    if (std::abs(exact.series.level(n)[i] - approx.level(n)[i]) > 2e-3)
                        return "path " + std::to_string(p) + " level " + std::to_string(n);
        }
        return "";
    }});

    checks.push_back({"endpoint distance and swept area identities", []() -> std::string {
        const auto i1 = TensorSeries<Rational>::monomial(Word::from_string("11"), Rational(1), 2) +
                        TensorSeries<Rational>::monomial(Word::from_string("22"), Rational(1), 2);
        const auto i2 = TensorSeries<Rational>::monomial(Word::from_string("12"), Rational(1), 2) -
                        TensorSeries<Rational>::monomial(Word::from_string("21"), Rational(1), 2);
        for (std::uint64_t p = 0; p < 20; ++p) {
            const Polyline path = random_polyline(47, p);
            const Signature sig = signature(path, 2);
            if (!close_rel(pairing(sig.series, i1), endpoint_distance_sq(path) / 2.0, 1e-9))
                return "E^2 mismatch on path " + std::to_string(p);
            if (!close_rel(pairing(sig.series, i2), 2.0 * signed_area(path), 1e-9))
                return "area mismatch on path " + std::to_string(p);
        }
        return "";
    }});

    checks.push_back({"integration by parts <S,1><S,2> = <S,12>+<S,21>", []() -> std::string {
        for (std::uint64_t p = 0; p < 20; ++p) {
            const Signature sig = signature(random_polyline(59, p), 2);
            const double lhs = sig.series.coeff(Word::from_string("1")) *
                               sig.series.coeff(Word::from_string("2"));
            const double rhs = sig.series.coeff(Word::from_string("12")) +
                               sig.series.coeff(Word::from_string("21"));
            if (!close_rel(lhs, rhs, 1e-9)) return "path " + std::to_string(p);
        }
        return "";
    }});

    checks.push_back({"invariant subspace dimensions 2/6/20, none at odd levels",
                      []() -> std::string {
        const int expect[] = {2, 6, 20};
        for (int m = 1; m <= 3; ++m)
            if (static_cast<int>(real_invariant_span(2 * m).size()) != expect[m - 1])
                return "level " + std::to_string(2 * m);
        for (int level : {1, 3, 5})
            if (!balanced_words(level).empty())
                return "balanced words at odd level " + std::to_string(level);
        return "";
    }});

    checks.push_back({"c-words span every level (ranks 1..3)", []() -> std::string {
        for (int n = 1; n <= 3; ++n)
            if (!verify_span_lemma(n)) return "level " + std::to_string(n);
        return "";
    }});

    checks.push_back({"feature counts per order: new 2/5/15, full 2/8/28", []() -> std::string {
        const InvariantTable table = derive_basis(6);
        std::size_t cum_new = 0, cum_full = 0;
        const std::size_t expect_new[] = {2, 5, 15}, expect_full[] = {2, 8, 28};
        for (int m = 1; m <= 3; ++m) {
            for (const auto* v : table.at_level(2 * m)) {
                ++cum_full;
                if (v->kind == InvariantKind::kNew) ++cum_new;
            }
            if (cum_new != expect_new[m - 1] || cum_full != expect_full[m - 1])
                return "order " + std::to_string(2 * m);
        }
        return "";
    }});

    checks.push_back({"features invariant under rotation", []() -> std::string {
        const InvariantTable table = derive_basis(6);
        for (std::uint64_t p = 0; p < 10; ++p) {
            const Polyline path = random_polyline(71, p);
            const auto f0 = evaluate_features(signature(path, 6), table, FeatureVariant::kFull);
            for (std::uint64_t a = 0; a < 3; ++a) {
                const double theta = rotation_angle(97, p * 3 + a);
                const auto f1 = evaluate_features(signature(rotate(path, theta), 6), table,
                                                  FeatureVariant::kFull);
                for (std::size_t i = 0; i < f0.size(); ++i)
                    if (std::abs(f0[i] - f1[i]) > 1e-9 * (1.0 + std::abs(f0[i])))
                        return "path " + std::to_string(p) + " feature " + std::to_string(i);
            }
        }
        return "";
    }});

    bool all_ok = true;
    for (const auto& check : checks) {
        std::string failure;
        try {
            failure = check.run();
        } catch (const std::exception& e) {
            failure = std::string("exception: ") + e.what();
        }
        if (failure.empty()) {
            os << "[ ok ] " << check.name << "\n";
        } else {
            os << "[FAIL] " << check.name << ": " << failure << "\n";
            all_ok = false;
        }
    }
    return all_ok;
}

}  // namespace rotsig
