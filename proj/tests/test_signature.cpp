#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "rotsig/polyline.hpp"
#include "rotsig/selftest.hpp"
#include "rotsig/signature.hpp"

using rotsig::ContractViolation;
using rotsig::Polyline;
using rotsig::Signature;
using rotsig::TensorSeries;
using rotsig::Vec2;
using rotsig::Word;

namespace {
Word W(const char* s) { return Word::from_string(s); }
}  // namespace

TEST_CASE("polyline construction drops zero-length segments") {
    const Polyline p({{0, 0}, {0, 0}, {1, 0}, {1, 0}, {1, 1}});
    CHECK(p.vertices().size() == 3);
    CHECK(p.segment_count() == 2);

    const Polyline dot({{2, 3}, {2, 3}});
    CHECK(dot.vertices().size() == 1);
    CHECK(dot.segment_count() == 0);

    CHECK_THROWS_AS(Polyline(std::vector<Vec2>{}), ContractViolation);
    CHECK_THROWS_AS(Polyline({{0.0, std::numeric_limits<double>::quiet_NaN()}}),
                    ContractViolation);
    CHECK_THROWS_AS(Polyline({{std::numeric_limits<double>::infinity(), 0.0}}),
                    ContractViolation);
}

TEST_CASE("segment exponential") {
    auto e = rotsig::segment_exp({1, 0}, 2);
    CHECK(e.coeff(W("")) == 1.0);
    CHECK(e.coeff(W("1")) == 1.0);
    CHECK(e.coeff(W("11")) == 0.5);
    CHECK(e.coeff(W("2")) == 0.0);
    CHECK(e.coeff(W("12")) == 0.0);

    auto zero = rotsig::segment_exp({0, 0}, 5);
    CHECK(zero == TensorSeries<double>::unit(5));

    auto diag = rotsig::segment_exp({1, 1}, 2);
    CHECK(diag.coeff(W("")) == 1.0);
    CHECK(diag.coeff(W("1")) == 1.0);
    CHECK(diag.coeff(W("2")) == 1.0);
    for (const char* w : {"11", "12", "21", "22"}) CHECK(diag.coeff(W(w)) == 0.5);
}

TEST_CASE("signature of simple paths") {
    // single horizontal segment
    const Signature seg = rotsig::signature(Polyline({{0, 0}, {1, 0}}), 2);
    CHECK(seg.series.coeff(W("")) == 1.0);
    CHECK(seg.series.coeff(W("1")) == 1.0);
    CHECK(seg.series.coeff(W("2")) == 0.0);
    CHECK(seg.series.coeff(W("11")) == 0.5);
    CHECK(seg.series.coeff(W("12")) == 0.0);
    CHECK(seg.series.coeff(W("21")) == 0.0);
    CHECK(seg.series.coeff(W("22")) == 0.0);

    // L-path: x1 fully increments before x2, so the ordered double integral
    // <S,"12"> is 1 and <S,"21"> is 0 -- this example pins the traversal
    // order of the per-segment product.
    const Signature ell = rotsig::signature(Polyline({{0, 0}, {1, 0}, {1, 1}}), 2);
    CHECK(ell.series.coeff(W("1")) == 1.0);
    CHECK(ell.series.coeff(W("2")) == 1.0);
    CHECK(ell.series.coeff(W("11")) == 0.5);
    CHECK(ell.series.coeff(W("22")) == 0.5);
    CHECK(ell.series.coeff(W("12")) == 1.0);
    CHECK(ell.series.coeff(W("21")) == 0.0);

    // closed triangle: level 1 vanishes, "12"-"21" = twice the area 1/2
    const Signature tri = rotsig::signature(Polyline({{0, 0}, {1, 0}, {0, 1}, {0, 0}}), 2);
    CHECK_THAT(tri.series.coeff(W("1")), Catch::Matchers::WithinAbs(0.0, 1e-15));
    CHECK_THAT(tri.series.coeff(W("2")), Catch::Matchers::WithinAbs(0.0, 1e-15));
    CHECK_THAT(tri.series.coeff(W("12")) - tri.series.coeff(W("21")),
               Catch::Matchers::WithinAbs(1.0, 1e-12));

    // constant path: unit series
    const Signature still = rotsig::signature(Polyline({{4, 5}}), 3);
    CHECK(still.series == TensorSeries<double>::unit(3));

    CHECK_THROWS_AS(rotsig::signature(Polyline({{0, 0}, {1, 0}}), rotsig::kMaxOrder + 1),
                    ContractViolation);
}

TEST_CASE("signature level 0 and level 1 are pinned") {
    for (std::uint64_t i = 0; i < 12; ++i) {
        const Polyline path = rotsig::random_polyline(7, i);
        const Signature sig = rotsig::signature(path, 3);
        CHECK(sig.series.coeff(W("")) == 1.0);
        const Vec2 disp = path.back() - path.front();
        CHECK_THAT(sig.series.coeff(W("1")), Catch::Matchers::WithinAbs(disp.x, 1e-12));
        CHECK_THAT(sig.series.coeff(W("2")), Catch::Matchers::WithinAbs(disp.y, 1e-12));
    }
}

TEST_CASE("discretization oracle agrees and refines") {
    // closed form vs Euler updates on a single segment
    const Polyline seg({{0, 0}, {1, 0}});
    const auto approx = rotsig::brute_force_signature(seg, 2, 1000);
    const auto exact = rotsig::segment_exp({1, 0}, 2);
    for (int n = 0; n <= 2; ++n)
        for (std::uint32_t b = 0; b < approx.level(n).size(); ++b)
            CHECK_THAT(approx.level(n)[b],
                       Catch::Matchers::WithinAbs(exact.level(n)[b], 1e-3));

    // order 0 is exact regardless of steps
    CHECK(rotsig::brute_force_signature(seg, 0, 3) == TensorSeries<double>::unit(0));

    // L-path mixed coefficients
    const Polyline ell({{0, 0}, {1, 0}, {1, 1}});
    const auto bl = rotsig::brute_force_signature(ell, 2, 10000);
    CHECK_THAT(bl.coeff(W("12")), Catch::Matchers::WithinAbs(1.0, 1e-3));
    CHECK_THAT(bl.coeff(W("21")), Catch::Matchers::WithinAbs(0.0, 1e-3));

    CHECK_THROWS_AS(rotsig::brute_force_signature(seg, 2, 0), ContractViolation);

    // halving the step size at least ~halves the worst error
    const Polyline path = rotsig::random_polyline(13, 2);
    const Signature truth = rotsig::signature(path, 3);
    auto max_err = [&](int steps) {
        const auto s = rotsig::brute_force_signature(path, 3, steps);
        double err = 0.0;
        for (int n = 0; n <= 3; ++n)
            for (std::uint32_t b = 0; b < s.level(n).size(); ++b)
                err = std::max(err, std::abs(s.level(n)[b] - truth.series.level(n)[b]));
        return err;
    };
    const double coarse = max_err(500);
    const double fine = max_err(1000);
    CHECK(fine < coarse);
    CHECK(coarse / fine >= 1.8);
}

TEST_CASE("chen concatenation") {
    const int N = 3;
    const Signature a = rotsig::signature(Polyline({{0, 0}, {1, 0}}), N);
    const Signature b = rotsig::signature(Polyline({{0, 0}, {0, 1}}), N);
    const Signature ell = rotsig::signature(Polyline({{0, 0}, {1, 0}, {1, 1}}), N);
    const Signature glued = rotsig::chen_concat(a, b);
    for (int n = 0; n <= N; ++n)
        for (std::uint32_t i = 0; i < glued.series.level(n).size(); ++i)
            CHECK_THAT(glued.series.level(n)[i],
                       Catch::Matchers::WithinAbs(ell.series.level(n)[i], 1e-14));

    // unit on the right is the identity
    const Signature unit = rotsig::signature(Polyline({{9, 9}}), N);
    CHECK(rotsig::chen_concat(a, unit).series == a.series);

    // a path followed by its reversal cancels
    const Polyline path = rotsig::random_polyline(17, 4);
    auto rev = path.vertices();
    std::reverse(rev.begin(), rev.end());
    const Signature total =
        rotsig::chen_concat(rotsig::signature(path, N), rotsig::signature(Polyline(rev), N));
    for (int n = 1; n <= N; ++n)
        for (std::uint32_t i = 0; i < total.series.level(n).size(); ++i)
            CHECK_THAT(total.series.level(n)[i], Catch::Matchers::WithinAbs(0.0, 1e-12));

    CHECK_THROWS_AS(
        rotsig::chen_concat(a, rotsig::signature(Polyline({{0, 0}, {0, 1}}), N + 1)),
        ContractViolation);
}

TEST_CASE("rotation applies the fixed matrix") {
    const Polyline p({{1, 0}, {1, 2}});
    const Polyline same = rotsig::rotate(p, 0.0);
    CHECK(same.vertices()[0] == Vec2{1, 0});
    CHECK(same.vertices()[1] == Vec2{1, 2});

    const Polyline quarter = rotsig::rotate(Polyline({{0, 0}, {1, 0}}), M_PI / 2);
    CHECK_THAT(quarter.vertices()[1].x, Catch::Matchers::WithinAbs(0.0, 1e-15));
    CHECK_THAT(quarter.vertices()[1].y, Catch::Matchers::WithinAbs(-1.0, 1e-15));

    const Polyline half = rotsig::rotate(Polyline({{0, 0}, {1, 2}}), M_PI);
    CHECK_THAT(half.vertices()[1].x, Catch::Matchers::WithinAbs(-1.0, 1e-12));
    CHECK_THAT(half.vertices()[1].y, Catch::Matchers::WithinAbs(-2.0, 1e-12));
}

TEST_CASE("geometric oracles") {
    const Polyline seg({{0, 0}, {3, 4}});
    CHECK(rotsig::endpoint_distance_sq(seg) == 25.0);
    CHECK(rotsig::signed_area(seg) == 0.0);

    const Polyline tri({{0, 0}, {1, 0}, {0, 1}, {0, 0}});
    CHECK(rotsig::endpoint_distance_sq(tri) == 0.0);
    CHECK(rotsig::signed_area(tri) == 0.5);

    const Polyline tri_cw({{0, 0}, {0, 1}, {1, 0}, {0, 0}});
    CHECK(rotsig::signed_area(tri_cw) == -0.5);
}

TEST_CASE("shuffle identity holds on random polylines") {
    for (std::uint64_t p = 0; p < 25; ++p) {
        const Signature sig = rotsig::signature(rotsig::random_polyline(29, p), 4);
        for (int la = 1; la <= 3; ++la)
            for (int lb = 1; la + lb <= 4; ++lb)
                for (const Word a : rotsig::words_of_level(la))
                    for (const Word b : rotsig::words_of_level(lb)) {
                        const auto sa = TensorSeries<double>::monomial(a, 1.0, 4);
                        const auto sb = TensorSeries<double>::monomial(b, 1.0, 4);
                        const double lhs =
                            pairing(sig.series, sa) * pairing(sig.series, sb);
                        const double rhs = pairing(sig.series, shuffle_product(sa, sb));
                        REQUIRE(rotsig::close_rel(lhs, rhs, 1e-9));
                    }
    }
}

TEST_CASE("integration by parts on random polylines") {
    for (std::uint64_t p = 0; p < 30; ++p) {
        const Signature sig = rotsig::signature(rotsig::random_polyline(37, p), 2);
        const double lhs = sig.series.coeff(W("1")) * sig.series.coeff(W("2"));
        const double rhs = sig.series.coeff(W("12")) + sig.series.coeff(W("21"));
        CHECK(rotsig::close_rel(lhs, rhs, 1e-9));
    }
}

TEST_CASE("plain coordinates are not rotation invariant") {
    const Polyline path({{0, 0}, {1, 0}, {1.5, 1.0}, {0.5, 1.5}});
    const Signature before = rotsig::signature(path, 2);
    const Signature after = rotsig::signature(rotsig::rotate(path, 0.7), 2);
    CHECK(std::abs(before.series.coeff(W("11")) - after.series.coeff(W("11"))) > 1e-3);
}

TEST_CASE("source hash identifies path and order") {
    const Polyline a({{0, 0}, {1, 0}});
    const Polyline b({{0, 0}, {0, 1}});
    CHECK(rotsig::signature(a, 2).source_hash == rotsig::signature(a, 2).source_hash);
    CHECK(rotsig::signature(a, 2).source_hash != rotsig::signature(b, 2).source_hash);
    CHECK(rotsig::signature(a, 2).source_hash != rotsig::signature(a, 3).source_hash);
}
