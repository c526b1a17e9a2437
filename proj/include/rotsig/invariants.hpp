#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "rotsig/common.hpp"
#include "rotsig/rational.hpp"
#include "rotsig/rref.hpp"
#include "rotsig/signature.hpp"
#include "rotsig/tensor_series.hpp"
#include "rotsig/word.hpp"

namespace rotsig {

// Rotation-invariant linear functionals of the signature.
//
// Complex construction: with z1 = x1 + i*x2 and z2 = x1 - i*x2, the
// z-monomial c_w of a word w with equally many 1s and 2s pairs invariantly
// against any signature; real and imaginary parts of the expanded c-words
// span all real invariants of that level. Per even level the artifact keeps
// a canonical basis, split into vectors reachable as shuffle products of
// lower-level invariants ("shuffle-derived", so their feature values are
// polynomial in lower features) and genuinely new ones.

/// A word in the z-alphabet; invariant generators are the balanced ones.
using InvariantWord = Word;

inline bool is_balanced(Word w) { return w.count_letter(1) == w.count_letter(2); }

/// All z-words of the given level with equal letter counts, lexicographic.
inline std::vector<InvariantWord> balanced_words(int level) {
    check_order(level);
    std::vector<Word> out;
    for (Word w : words_of_level(level))
        if (is_balanced(w)) out.push_back(w);
    return out;
}

/// Balanced z-words at an even level >= 2; count is binomial(level, level/2).
inline std::vector<InvariantWord> enumerate_invariant_words(int level) {
    require(level >= 2 && level % 2 == 0,
            "enumerate_invariant_words: level must be even and >= 2");
    return balanced_words(level);
}

/// Expand the z-monomial z_{j1}...z_{jn} into the x-monomial basis with
/// exact Gaussian-rational coefficients. The coefficient of x-word
/// (i1...in) is the product over positions of: 1 for x1, +i for x2 in z1,
/// -i for x2 in z2.
inline TensorSeries<GaussianRational> expand_complex_word(Word zword) {
    const int n = zword.level();
    TensorSeries<GaussianRational> out(n);
    auto& lv = out.level(n);
    for (std::uint32_t b = 0; b < lv.size(); ++b) {
        GaussianRational c(Rational(1));
        for (int k = 0; k < n; ++k) {
            const bool x2 = ((b >> (n - 1 - k)) & 1u) != 0;
            if (!x2) continue;  // x1 contributes factor 1 from either letter
            c = (zword.letter(k) == 1) ? c * GaussianRational::i()
                                       : c * (-GaussianRational::i());
        }
        lv[b] = c;
    }
    return out;
}

namespace detail {

inline TensorSeries<Rational> row_to_series(const std::vector<Rational>& row, int level) {
    TensorSeries<Rational> s(level);
    s.level(level) = row;
    return s;
}

/// Homogeneous vector re-embedded into a series of the given order.
inline TensorSeries<Rational> lift_to_order(const TensorSeries<Rational>& v, int order) {
    TensorSeries<Rational> out(order);
    for (int n = 0; n <= v.order() && n <= order; ++n) out.level(n) = v.level(n);
    return out;
}

}  // namespace detail

/// Real and imaginary parts of all balanced c-words of one even level,
/// reduced to the canonical linearly independent spanning set (RREF over
/// exact rationals; rows fed by source word then Re before Im, columns in
/// lexicographic monomial order, first-nonzero pivots). The result rows are
/// the unique RREF basis of the level's invariant subspace.
inline std::vector<TensorSeries<Rational>> real_invariant_span(int level) {
    require(level >= 2 && level % 2 == 0,
            "real_invariant_span: level must be even and >= 2");
    const std::size_t ncols = std::size_t{1} << level;
    RowSpace<Rational> space(ncols);
    for (Word zw : balanced_words(level)) {
        const TensorSeries<GaussianRational> c = expand_complex_word(zw);
        std::vector<Rational> re(ncols), im(ncols);
        for (std::size_t b = 0; b < ncols; ++b) {
            re[b] = c.level(level)[b].re;
            im[b] = c.level(level)[b].im;
        }
        space.insert(std::move(re));
        space.insert(std::move(im));
    }
    std::vector<TensorSeries<Rational>> out;
    out.reserve(space.rank());
    for (const auto& row : space.rows()) out.push_back(detail::row_to_series(row, level));
    return out;
}

enum class InvariantKind { kShuffleDerived, kNew };

/// One homogeneous invariant functional with exact coefficients.
struct InvariantVector {
    std::string label;
    int level = 0;
    InvariantKind kind = InvariantKind::kNew;
    TensorSeries<Rational> coeffs;  // supported on exactly `level`
};

/// Ordered invariant basis per even level up to max_level, shuffle-derived
/// vectors first, then new ones; labels I1, I2, ... number the new vectors
/// consecutively across levels.
struct InvariantTable {
    int max_level = 0;
    int version = 1;
    std::string pivot_rule = "first-nonzero";
    std::vector<InvariantVector> vectors;  // sorted by (level, kind, derivation order)

    std::vector<const InvariantVector*> at_level(int level) const {
        std::vector<const InvariantVector*> out;
        for (const auto& v : vectors)
            if (v.level == level) out.push_back(&v);
        return out;
    }

    std::size_t count(InvariantKind kind) const {
        std::size_t n = 0;
        for (const auto& v : vectors) n += (v.kind == kind) ? 1 : 0;
        return n;
    }
};

namespace detail {

/// Partitions of `level` into even parts >= 2 with at least two parts,
/// parts non-increasing, enumerated largest-first.
inline std::vector<std::vector<int>> even_partitions(int level) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int rest, int maxp) -> void {
        if (rest == 0) {
            if (cur.size() >= 2) out.push_back(cur);
            return;
        }
        for (int p = std::min(rest, maxp); p >= 2; p -= 2) {
            cur.push_back(p);
            self(self, rest - p, p);
            cur.pop_back();
        }
    };
    rec(rec, level, level - 2);  // maxp = level-2 excludes the trivial {level}
    return out;
}

}  // namespace detail

/// Shuffle products of lower-level new invariants over every multiset of
/// levels summing to `level` (pairs, triples, ...), reduced to the canonical
/// independent set by the same RREF. Empty below level 4.
inline std::vector<TensorSeries<Rational>> shuffle_closure(int level,
                                                           const InvariantTable& lower) {
    require(level >= 2 && level % 2 == 0, "shuffle_closure: level must be even and >= 2");
    // collect new invariants per lower level
    std::map<int, std::vector<const InvariantVector*>> new_by_level;
    for (const auto& v : lower.vectors)
        if (v.kind == InvariantKind::kNew && v.level < level)
            new_by_level[v.level].push_back(&v);

    const std::size_t ncols = std::size_t{1} << level;
    RowSpace<Rational> space(ncols);
    for (const auto& part : detail::even_partitions(level)) {
        // multiset choices: one invariant index per part, non-decreasing
        // within runs of equal part size (avoids duplicate products)
        std::vector<std::size_t> choice(part.size(), 0);
        auto emit = [&]() {
            TensorSeries<Rational> prod = detail::lift_to_order(
                new_by_level[part[0]][choice[0]]->coeffs, level);
            for (std::size_t i = 1; i < part.size(); ++i)
                prod = shuffle_product(
                    prod, detail::lift_to_order(new_by_level[part[i]][choice[i]]->coeffs, level));
            space.insert(prod.level(level));
        };
        auto rec = [&](auto&& self, std::size_t pos) -> void {
            if (pos == part.size()) {
                emit();
                return;
            }
            const auto& opts = new_by_level[part[pos]];
            std::size_t start = 0;
            if (pos > 0 && part[pos] == part[pos - 1]) start = choice[pos - 1];
            for (std::size_t i = start; i < opts.size(); ++i) {
                choice[pos] = i;
                self(self, pos + 1);
            }
        };
        if (!part.empty() && !new_by_level[part[0]].empty()) rec(rec, 0);
    }
    std::vector<TensorSeries<Rational>> out;
    out.reserve(space.rank());
    for (const auto& row : space.rows()) out.push_back(detail::row_to_series(row, level));
    return out;
}

/// Derive the full invariant table: per even level take the shuffle-derived
/// basis, then extend by span rows (in enumeration order) that increase the
/// rank. Deterministic by construction; every vector's leading coefficient
/// is +1 (RREF normalization).
inline InvariantTable derive_basis(int max_level) {
    require(max_level >= 2 && max_level % 2 == 0 && max_level <= kMaxOrder,
            "derive_basis: max_level must be even, >= 2 and <= max order");
    InvariantTable table;
    table.max_level = max_level;
    int next_new = 1;
    for (int level = 2; level <= max_level; level += 2) {
        const auto closure = shuffle_closure(level, table);
        const std::size_t ncols = std::size_t{1} << level;
        RowSpace<Rational> space(ncols);
        int idx = 1;
        for (const auto& vec : closure) {
            space.insert(vec.level(level));
            table.vectors.push_back({"S" + std::to_string(level) + "_" + std::to_string(idx++),
                                     level, InvariantKind::kShuffleDerived, vec});
        }
        for (const auto& cand : real_invariant_span(level)) {
            if (!space.insert(cand.level(level))) continue;
            table.vectors.push_back(
                {"I" + std::to_string(next_new++), level, InvariantKind::kNew, cand});
        }
    }
    return table;
}

enum class FeatureVariant { kNewOnly, kFull };

inline const char* variant_name(FeatureVariant v) {
    return v == FeatureVariant::kNewOnly ? "new" : "full";
}

inline std::vector<std::string> feature_labels(const InvariantTable& table,
                                               FeatureVariant variant) {
    std::vector<std::string> out;
    for (const auto& v : table.vectors)
        if (variant == FeatureVariant::kFull || v.kind == InvariantKind::kNew)
            out.push_back(v.label);
    return out;
}

/// Ordered pairings of a signature against the table. `new-only` evaluates
/// the shuffle-reduced invariants, `full` the whole per-level basis
/// (cumulative across levels).
inline std::vector<double> evaluate_features(const Signature& sig,
                                             const InvariantTable& table,
                                             FeatureVariant variant) {
    require(sig.order() >= table.max_level,
            "evaluate_features: signature order below table max_level");
    std::vector<double> out;
    for (const auto& v : table.vectors)
        if (variant == FeatureVariant::kFull || v.kind == InvariantKind::kNew)
            out.push_back(pairing(sig.series, v.coeffs));
    return out;
}

/// Confirms that the expanded c-words of one level (all of them, balanced
/// or not) span the whole level: the 2^n x 2^n Gaussian-rational matrix has
/// full rank.
inline bool verify_span_lemma(int level) {
    require(level >= 1, "verify_span_lemma: level must be >= 1");
    const std::size_t ncols = std::size_t{1} << level;
    RowSpace<GaussianRational> space(ncols);
    for (Word zw : words_of_level(level))
        space.insert(expand_complex_word(zw).level(level));
    return space.rank() == ncols;
}

// --- table text format ----------------------------------------------------
//
//   rotsig-invariant-table v1
//   max-level<TAB>N
//   pivot-rule<TAB>first-nonzero
//   <blank>
//   vector<TAB>LABEL<TAB>LEVEL<TAB>KIND
//   word<TAB>num/den      (one per nonzero coefficient, sorted by word)
//   <blank>
//   ...

inline void write_invariant_table(std::ostream& os, const InvariantTable& table) {
    os << "rotsig-invariant-table v" << table.version << "\n";
    os << "max-level\t" << table.max_level << "\n";
    os << "pivot-rule\t" << table.pivot_rule << "\n";
    for (const auto& v : table.vectors) {
        os << "\nvector\t" << v.label << "\t" << v.level << "\t"
           << (v.kind == InvariantKind::kNew ? "new" : "shuffle-derived") << "\n";
        os << to_text(v.coeffs);
    }
}

inline std::string table_to_string(const InvariantTable& table) {
    std::ostringstream os;
    write_invariant_table(os, table);
    return os.str();
}

inline InvariantTable read_invariant_table(std::istream& is) {
    InvariantTable table;
    std::string line;
    std::size_t lineno = 0;
    auto next = [&]() -> bool {
        if (!std::getline(is, line)) return false;
        ++lineno;
        return true;
    };
    if (!next() || line != "rotsig-invariant-table v1")
        throw ParseError(lineno, "expected header 'rotsig-invariant-table v1'");
    InvariantVector* cur = nullptr;
    while (next()) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string head;
        std::getline(ls, head, '\t');
        if (head == "max-level") {
            ls >> table.max_level;
        } else if (head == "pivot-rule") {
            std::getline(ls, table.pivot_rule, '\t');
        } else if (head == "vector") {
            std::string label, level_s, kind_s;
            if (!std::getline(ls, label, '\t') || !std::getline(ls, level_s, '\t') ||
                !std::getline(ls, kind_s, '\t'))
                throw ParseError(lineno, "malformed vector line");
            const int level = std::stoi(level_s);
            table.vectors.push_back({label, level,
                                     kind_s == "new" ? InvariantKind::kNew
                                                     : InvariantKind::kShuffleDerived,
                                     TensorSeries<Rational>(level)});
            cur = &table.vectors.back();
        } else {
            if (cur == nullptr) throw ParseError(lineno, "coefficient before any vector");
            std::string value;
            if (!std::getline(ls, value, '\t'))
                throw ParseError(lineno, "missing coefficient value");
            const auto slash = value.find('/');
            if (slash == std::string::npos)
                throw ParseError(lineno, "coefficient must be num/den: " + value);
            try {
                Rational r = Rational(BigInt(value.substr(0, slash)),
                                      BigInt(value.substr(slash + 1)));
                cur->coeffs.set(Word::from_string(head), std::move(r));
            } catch (const std::exception& e) {
                throw ParseError(lineno, std::string("bad coefficient: ") + e.what());
            }
        }
    }
    return table;
}

}  // namespace rotsig
