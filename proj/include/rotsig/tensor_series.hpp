#pragma once

#include <cstdint>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "rotsig/common.hpp"
#include "rotsig/rational.hpp"
#include "rotsig/word.hpp"

namespace rotsig {

/// Truncated element of the free tensor algebra over two non-commuting
/// letters: one scalar coefficient per word up to the truncation order.
/// Values are immutable in spirit; all algebra below returns new series.
///
/// Storage is a dense array per level (2^n scalars at level n) -- signature
/// coefficients are dense, so the predictable layout wins over a map.
template <class Scalar>
class TensorSeries {
public:
    using scalar_type = Scalar;

    explicit TensorSeries(int order) : order_(order) {
        check_order(order);
        levels_.resize(static_cast<std::size_t>(order) + 1);
        for (int n = 0; n <= order; ++n)
            levels_[static_cast<std::size_t>(n)].assign(std::size_t{1} << n, Scalar(0));
    }

    /// The unit of concatenation: 1 on the empty word.
    static TensorSeries unit(int order) {
        TensorSeries s(order);
        s.levels_[0][0] = Scalar(1);
        return s;
    }

    static TensorSeries monomial(Word w, Scalar coeff, int order) {
        TensorSeries s(order);
        s.set(w, std::move(coeff));
        return s;
    }

    int order() const { return order_; }

    /// Coefficient of a word; words above the truncation order read as zero.
    const Scalar& coeff(Word w) const {
        static const Scalar zero(0);
        if (w.level() > order_) return zero;
        return levels_[static_cast<std::size_t>(w.level())][w.bits()];
    }

    void set(Word w, Scalar value) {
        require(w.level() <= order_, "coefficient word exceeds series order");
        levels_[static_cast<std::size_t>(w.level())][w.bits()] = std::move(value);
    }

    void add_to(Word w, const Scalar& value) {
        require(w.level() <= order_, "coefficient word exceeds series order");
        levels_[static_cast<std::size_t>(w.level())][w.bits()] += value;
    }

    // Raw per-level access for the dense kernels below.
    const std::vector<Scalar>& level(int n) const {
        return levels_[static_cast<std::size_t>(n)];
    }
    std::vector<Scalar>& level(int n) { return levels_[static_cast<std::size_t>(n)]; }

    bool is_zero() const {
        for (const auto& lv : levels_)
            for (const auto& c : lv)
                if (!scalar_is_zero(c)) return false;
        return true;
    }

    TensorSeries& operator+=(const TensorSeries& o) {
        require(order_ == o.order_, "series order mismatch");
        for (int n = 0; n <= order_; ++n) {
            auto& a = levels_[static_cast<std::size_t>(n)];
            const auto& b = o.levels_[static_cast<std::size_t>(n)];
            for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
        }
        return *this;
    }

    TensorSeries& operator-=(const TensorSeries& o) {
        require(order_ == o.order_, "series order mismatch");
        for (int n = 0; n <= order_; ++n) {
            auto& a = levels_[static_cast<std::size_t>(n)];
            const auto& b = o.levels_[static_cast<std::size_t>(n)];
            for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
        }
        return *this;
    }

    TensorSeries& operator*=(const Scalar& k) {
        for (auto& lv : levels_)
            for (auto& c : lv) c *= k;
        return *this;
    }

    friend TensorSeries operator+(TensorSeries a, const TensorSeries& b) { return a += b; }
    friend TensorSeries operator-(TensorSeries a, const TensorSeries& b) { return a -= b; }
    friend TensorSeries operator*(TensorSeries a, const Scalar& k) { return a *= k; }
    friend TensorSeries operator*(const Scalar& k, TensorSeries a) { return a *= k; }

    friend bool operator==(const TensorSeries& a, const TensorSeries& b) {
        return a.order_ == b.order_ && a.levels_ == b.levels_;
    }

private:
    int order_;
    std::vector<std::vector<Scalar>> levels_;
};

/// Truncated concatenation product: coefficient of w is the sum over all
/// splits w = u.v of a[u]*b[v]; levels above the common order are discarded.
template <class Scalar>
TensorSeries<Scalar> concat_product(const TensorSeries<Scalar>& a,
                                    const TensorSeries<Scalar>& b) {
    require(a.order() == b.order(), "concat_product: series order mismatch");
    const int N = a.order();
    TensorSeries<Scalar> out(N);
    for (int n = 0; n <= N; ++n) {
        auto& dst = out.level(n);
        for (int p = 0; p <= n; ++p) {
            const int q = n - p;
            const auto& lu = a.level(p);
            const auto& lv = b.level(q);
            for (std::uint32_t u = 0; u < lu.size(); ++u) {
                if (scalar_is_zero(lu[u])) continue;
                const std::uint32_t base = u << q;
                for (std::uint32_t v = 0; v < lv.size(); ++v) {
                    if (scalar_is_zero(lv[v])) continue;
                    dst[base | v] += lu[u] * lv[v];
                }
            }
        }
    }
    return out;
}

namespace detail {

/// All n-bit masks with exactly p set bits, ascending. Mask bit (n-1-k)
/// marks letter position k (front first) as coming from the left word.
inline std::vector<std::uint32_t> interleave_selectors(int p, int n) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t m = 0; m < (std::uint32_t{1} << n); ++m)
        if (__builtin_popcount(m) == p) out.push_back(m);
    return out;
}

/// Shuffle of two packed words as (result word, +1 each) accumulated into acc.
template <class Scalar>
void shuffle_words_into(std::uint32_t u, int p, std::uint32_t v, int q,
                        const Scalar& coeff, std::vector<Scalar>& acc) {
    const int n = p + q;
    for (std::uint32_t sel : interleave_selectors(p, n)) {
        std::uint32_t w = 0;
        int ui = 0, vi = 0;
        for (int k = 0; k < n; ++k) {
            std::uint32_t bit;
            if ((sel >> (n - 1 - k)) & 1u)
                bit = (u >> (p - 1 - ui)) & 1u, ++ui;
            else
                bit = (v >> (q - 1 - vi)) & 1u, ++vi;
            w = (w << 1) | bit;
        }
        acc[w] += coeff;
    }
}

}  // namespace detail

/// Bilinear extension of the word shuffle (all order-preserving
/// interleavings); commutative, truncated at the common order.
template <class Scalar>
TensorSeries<Scalar> shuffle_product(const TensorSeries<Scalar>& a,
                                     const TensorSeries<Scalar>& b) {
    require(a.order() == b.order(), "shuffle_product: series order mismatch");
    const int N = a.order();
    TensorSeries<Scalar> out(N);
    for (int p = 0; p <= N; ++p) {
        const auto& lu = a.level(p);
        for (int q = 0; p + q <= N; ++q) {
            const auto& lv = b.level(q);
            auto& dst = out.level(p + q);
            for (std::uint32_t u = 0; u < lu.size(); ++u) {
                if (scalar_is_zero(lu[u])) continue;
                for (std::uint32_t v = 0; v < lv.size(); ++v) {
                    if (scalar_is_zero(lv[v])) continue;
                    detail::shuffle_words_into(u, p, v, q, Scalar(lu[u] * lv[v]), dst);
                }
            }
        }
    }
    return out;
}

/// Pairing with all monomials orthonormal: sum over words of a[w]*b[w].
/// Orders may differ; the missing coefficients read as zero.
template <class Scalar>
Scalar pairing(const TensorSeries<Scalar>& a, const TensorSeries<Scalar>& b) {
    const int N = a.order() < b.order() ? a.order() : b.order();
    Scalar acc(0);
    for (int n = 0; n <= N; ++n) {
        const auto& la = a.level(n);
        const auto& lb = b.level(n);
        for (std::size_t i = 0; i < la.size(); ++i) acc += la[i] * lb[i];
    }
    return acc;
}

/// Mixed pairing: float series against exact-rational functional, evaluated
/// in double after exact-to-float conversion of each coefficient.
inline double pairing(const TensorSeries<double>& a, const TensorSeries<Rational>& b) {
    const int N = a.order() < b.order() ? a.order() : b.order();
    double acc = 0.0;
    for (int n = 0; n <= N; ++n) {
        const auto& la = a.level(n);
        const auto& lb = b.level(n);
        for (std::size_t i = 0; i < la.size(); ++i)
            if (!scalar_is_zero(lb[i])) acc += la[i] * to_double(lb[i]);
    }
    return acc;
}

inline double pairing(const TensorSeries<Rational>& a, const TensorSeries<double>& b) {
    return pairing(b, a);
}

/// Retain exactly the level-n coefficients.
template <class Scalar>
TensorSeries<Scalar> project_level(const TensorSeries<Scalar>& a, int n) {
    require(n >= 0 && n <= a.order(), "project_level: level out of range");
    TensorSeries<Scalar> out(a.order());
    out.level(n) = a.level(n);
    return out;
}

namespace detail {

inline std::string coeff_str(double c) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", c);
    return buf;
}
inline std::string coeff_str(const Rational& c) { return rational_str(c); }

}  // namespace detail

/// Text form used by golden-file tests: one line per nonzero coefficient,
/// `word<TAB>value`, words as digit strings ("" for the empty word), sorted
/// by (level, lexicographic).
template <class Scalar>
std::string to_text(const TensorSeries<Scalar>& s) {
    std::ostringstream os;
    for (int n = 0; n <= s.order(); ++n) {
        const auto& lv = s.level(n);
        for (std::uint32_t b = 0; b < lv.size(); ++b) {
            if (scalar_is_zero(lv[b])) continue;
            os << Word(n, b).str() << '\t' << detail::coeff_str(lv[b]) << '\n';
        }
    }
    return os.str();
}

}  // namespace rotsig
