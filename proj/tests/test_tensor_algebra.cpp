#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdint>

#include "rotsig/features.hpp"
#include "rotsig/rational.hpp"
#include "rotsig/tensor_series.hpp"
#include "rotsig/word.hpp"

using rotsig::ContractViolation;
using rotsig::Rational;
using rotsig::TensorSeries;
using rotsig::Word;

namespace {

Word W(const char* s) { return Word::from_string(s); }

TensorSeries<double> mono(const char* w, double c, int order) {
    return TensorSeries<double>::monomial(W(w), c, order);
}

// deterministic random series for the property checks
TensorSeries<double> random_series(std::uint64_t seed, int order) {
    TensorSeries<double> s(order);
    std::uint64_t draw = 0;
    for (int n = 0; n <= order; ++n)
        for (std::uint32_t b = 0; b < s.level(n).size(); ++b)
            s.level(n)[b] = rotsig::counter_uniform(seed, draw++) * 2.0 - 1.0;
    return s;
}

bool approx_equal(const TensorSeries<double>& a, const TensorSeries<double>& b,
                  double tol = 1e-12) {
    if (a.order() != b.order()) return false;
    for (int n = 0; n <= a.order(); ++n)
        for (std::uint32_t i = 0; i < a.level(n).size(); ++i)
            if (std::abs(a.level(n)[i] - b.level(n)[i]) >
                tol * (1.0 + std::abs(a.level(n)[i])))
                return false;
    return true;
}

}  // namespace

TEST_CASE("word packing keeps lexicographic order and O(1) concat") {
    CHECK(Word::empty().level() == 0);
    CHECK(Word::empty().str() == "");
    CHECK(W("121").str() == "121");
    CHECK(W("121").letter(0) == 1);
    CHECK(W("121").letter(1) == 2);
    CHECK(W("121").letter(2) == 1);
    CHECK(W("12").concat(W("21")) == W("1221"));
    CHECK(W("").concat(W("12")) == W("12"));

    // within a level, bit order == lexicographic order
    const auto words = rotsig::words_of_level(3);
    REQUIRE(words.size() == 8);
    CHECK(words.front().str() == "111");
    CHECK(words[1].str() == "112");
    CHECK(words.back().str() == "222");
    for (std::size_t i = 1; i < words.size(); ++i) {
        CHECK(words[i - 1] < words[i]);
        CHECK(words[i - 1].str() < words[i].str());
    }
    CHECK(W("22") < W("111"));  // level dominates

    CHECK_THROWS_AS(Word::from_string("103"), ContractViolation);
}

TEST_CASE("series construction rejects out-of-range orders") {
    CHECK_NOTHROW(TensorSeries<double>(rotsig::kMaxOrder));
    CHECK_THROWS_AS(TensorSeries<double>(rotsig::kMaxOrder + 1), ContractViolation);
    CHECK_THROWS_AS(TensorSeries<double>(-1), ContractViolation);
}

TEST_CASE("concat product on monomials and small sums") {
    const int N = 2;
    // x1 . x2 = x1x2
    auto p = concat_product(mono("1", 1.0, N), mono("2", 1.0, N));
    CHECK(p.coeff(W("12")) == 1.0);
    CHECK(p.coeff(W("21")) == 0.0);
    CHECK(p.coeff(W("")) == 0.0);

    // unit element
    auto b = random_series(5, 3);
    CHECK(approx_equal(concat_product(TensorSeries<double>::unit(3), b), b));
    CHECK(approx_equal(concat_product(b, TensorSeries<double>::unit(3)), b));

    // (1 + x1)(1 + x2) = 1 + x1 + x2 + x1x2
    auto one_plus_x1 = TensorSeries<double>::unit(N) + mono("1", 1.0, N);
    auto one_plus_x2 = TensorSeries<double>::unit(N) + mono("2", 1.0, N);
    auto prod = concat_product(one_plus_x1, one_plus_x2);
    CHECK(prod.coeff(W("")) == 1.0);
    CHECK(prod.coeff(W("1")) == 1.0);
    CHECK(prod.coeff(W("2")) == 1.0);
    CHECK(prod.coeff(W("12")) == 1.0);
    CHECK(prod.coeff(W("21")) == 0.0);
    CHECK(prod.coeff(W("11")) == 0.0);

    CHECK_THROWS_AS(concat_product(TensorSeries<double>(2), TensorSeries<double>(3)),
                    ContractViolation);
}

TEST_CASE("shuffle product matches the worked interleavings") {
    const int N = 4;
    // x1 sh x2 = x1x2 + x2x1
    auto s = shuffle_product(mono("1", 1.0, N), mono("2", 1.0, N));
    CHECK(s.coeff(W("12")) == 1.0);
    CHECK(s.coeff(W("21")) == 1.0);

    // x1x2 sh x1x2 = 2 x1x2x1x2 + 4 x1x1x2x2
    auto t = shuffle_product(mono("12", 1.0, N), mono("12", 1.0, N));
    CHECK(t.coeff(W("1212")) == 2.0);
    CHECK(t.coeff(W("1122")) == 4.0);
    CHECK(t.coeff(W("1221")) == 0.0);
    CHECK(t.coeff(W("2112")) == 0.0);

    // empty word is the shuffle unit
    auto u = shuffle_product(TensorSeries<double>::unit(N), mono("121", 3.5, N));
    CHECK(u.coeff(W("121")) == 3.5);

    CHECK_THROWS_AS(shuffle_product(TensorSeries<double>(2), TensorSeries<double>(3)),
                    ContractViolation);
}

TEST_CASE("shuffle of two words has binomial(p+q, p) terms with multiplicity") {
    for (int p = 0; p <= 6; ++p)
        for (int q = 0; p + q <= 6; ++q)
            for (const Word u : rotsig::words_of_level(p))
                for (const Word v : rotsig::words_of_level(q)) {
                    auto s = shuffle_product(TensorSeries<double>::monomial(u, 1.0, p + q),
                                             TensorSeries<double>::monomial(v, 1.0, p + q));
                    double total = 0.0;
                    for (double c : s.level(p + q)) total += c;
                    double binom = 1.0;
                    for (int i = 1; i <= p; ++i)
                        binom = binom * (q + i) / i;
                    CHECK(total == binom);
                }
}

TEST_CASE("pairing treats monomials as orthonormal") {
    const int N = 3;
    auto series = TensorSeries<double>::unit(N) + mono("1", 4.3, N) + mono("12", 7.9, N) +
                  mono("121", -0.2, N);
    CHECK(pairing(series, mono("12", 1.0, N)) == 7.9);
    CHECK(pairing(series, TensorSeries<double>(N)) == 0.0);

    auto a = mono("12", 1.0, 2) + mono("21", 1.0, 2);
    auto b = mono("12", 1.0, 2) - mono("21", 1.0, 2);
    CHECK(pairing(a, b) == 0.0);
}

TEST_CASE("mixed rational/float pairing converts exactly") {
    auto poly = TensorSeries<Rational>::monomial(W("12"), Rational(1, 2), 2);
    auto series = mono("12", 3.0, 2);
    CHECK(pairing(series, poly) == 1.5);
    CHECK(pairing(poly, series) == 1.5);
}

TEST_CASE("level projection") {
    const int N = 4;
    auto s = TensorSeries<double>::unit(N) + mono("12", 1.0, N) + mono("21", 1.0, N) +
             mono("1112", 1.0, N);
    auto p2 = project_level(s, 2);
    CHECK(p2.coeff(W("12")) == 1.0);
    CHECK(p2.coeff(W("21")) == 1.0);
    CHECK(p2.coeff(W("")) == 0.0);
    CHECK(p2.coeff(W("1112")) == 0.0);

    auto s2 = TensorSeries<double>::unit(3) + mono("1", 2.0, 3) + mono("21", 3.0, 3);
    CHECK(project_level(s2, 0).coeff(W("")) == 1.0);
    CHECK(project_level(s2, 1).coeff(W("1")) == 2.0);
    CHECK(project_level(s2, 1).coeff(W("21")) == 0.0);

    CHECK_THROWS_AS(project_level(s2, 4), ContractViolation);
    CHECK_THROWS_AS(project_level(s2, -1), ContractViolation);
}

TEST_CASE("algebra laws on random series") {
    for (std::uint64_t i = 0; i < 8; ++i) {
        auto a = random_series(100 + i, 4);
        auto b = random_series(200 + i, 4);
        auto c = random_series(300 + i, 4);

        // associativity
        CHECK(approx_equal(concat_product(concat_product(a, b), c),
                           concat_product(a, concat_product(b, c)), 1e-10));
        CHECK(approx_equal(shuffle_product(shuffle_product(a, b), c),
                           shuffle_product(a, shuffle_product(b, c)), 1e-10));
        // shuffle commutativity
        CHECK(approx_equal(shuffle_product(a, b), shuffle_product(b, a)));

        // pairing bilinearity: <s, 2a + 3b> = 2<s,a> + 3<s,b>
        const double lhs = pairing(c, a * 2.0 + b * 3.0);
        const double rhs = 2.0 * pairing(c, a) + 3.0 * pairing(c, b);
        CHECK(std::abs(lhs - rhs) < 1e-10);

        // projection idempotent; distinct levels orthogonal
        for (int n = 0; n <= 4; ++n) {
            CHECK(approx_equal(project_level(project_level(a, n), n), project_level(a, n)));
            for (int m = 0; m <= 4; ++m)
                if (m != n) CHECK(pairing(project_level(a, m), project_level(b, n)) == 0.0);
        }
    }
}

TEST_CASE("exact arithmetic instantiation obeys the same laws exactly") {
    auto r = [](int num, int den) { return Rational(num, den); };
    TensorSeries<Rational> a(3), b(3);
    a.set(W(""), r(1, 1));
    a.set(W("1"), r(2, 3));
    a.set(W("12"), r(-7, 5));
    b.set(W("2"), r(5, 4));
    b.set(W("21"), r(1, 7));

    CHECK(shuffle_product(a, b) == shuffle_product(b, a));
    auto ab = concat_product(a, b);
    CHECK(ab.coeff(W("12")) == r(5, 6));  // (2/3)*(5/4)
    CHECK(pairing(a, a) == r(1, 1) + r(4, 9) + r(49, 25));
}

TEST_CASE("text serialization is sorted and exact") {
    TensorSeries<Rational> s(2);
    s.set(W(""), Rational(3));
    s.set(W("2"), Rational(-1, 2));
    s.set(W("11"), Rational(5, 3));
    CHECK(rotsig::to_text(s) == "\t3/1\n2\t-1/2\n11\t5/3\n");

    TensorSeries<double> d(1);
    d.set(W("1"), 0.5);
    CHECK(rotsig::to_text(d) == "1\t0.5\n");
}
