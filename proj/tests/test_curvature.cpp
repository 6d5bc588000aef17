#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "heisgamma/curvature.hpp"
#include "heisgamma/random.hpp"

using namespace heisgamma;

namespace {

Mat3 m3(Scalar a, Scalar b, Scalar c, Scalar d, Scalar e, Scalar f, Scalar g, Scalar h,
        Scalar i) {
    return Mat3::from_rows({{{std::move(a), std::move(b), std::move(c)},
                             {std::move(d), std::move(e), std::move(f)},
                             {std::move(g), std::move(h), std::move(i)}}});
}

template <typename F>
errc code_of(F&& f) {
    try {
        f();
    } catch (const error& e) {
        return e.code();
    }
    FAIL("expected a library error");
    return errc::internal_error;
}

Scalar q(long long n, long long d) { return Scalar::rational(Int(n), Int(d)); }

LieVector v3(Scalar a, Scalar b, Scalar c) {
    return LieVector{std::move(a), std::move(b), std::move(c)};
}

Mat3 flat_matrix() {
    return m3(Scalar(1), Scalar(0), Scalar(0), Scalar(0), Scalar(-1), Scalar(1), Scalar(0),
              Scalar(1), Scalar(0));
}

BilinearForm random_nondegenerate_form(Rng& rng) {
    for (;;) {
        Mat3 m;
        for (int i = 0; i < 3; ++i)
            for (int j = i; j < 3; ++j) m.at(i, j) = m.at(j, i) = Scalar(rng.rational(4, 3));
        const BilinearForm g = BilinearForm::make(m);
        if (g.signature.zero == 0) return g;
    }
}

Automorphism random_automorphism(Rng& rng) {
    for (;;) {
        const Scalar a1 = Scalar(rng.rational(4, 3)), a2 = Scalar(rng.rational(4, 3));
        const Scalar a3 = Scalar(rng.rational(4, 3)), a4 = Scalar(rng.rational(4, 3));
        const Scalar det = a1 * a4 - a2 * a3;
        if (det.is_zero()) continue;
        return Automorphism::make(m3(a1, a2, Scalar(0), a3, a4, Scalar(0),
                                     Scalar(rng.rational(4, 3)), Scalar(rng.rational(4, 3)),
                                     det));
    }
}

}  // namespace

TEST_CASE("metric connections solve the structure identities") {
    SECTION("scaled-center diagonal forms have the classical table") {
        for (const Scalar& lambda : {Scalar(1), Scalar(2), q(1, 2)}) {
            const Scalar l2 = lambda * lambda;
            const BilinearForm g = BilinearForm::diagonal(Scalar(1), Scalar(1), l2);
            const ConnectionTable t = koszul_connection(g);
            const Scalar half = q(1, 2);
            REQUIRE(t.nabla[0][1] == v3(Scalar(0), Scalar(0), half));
            REQUIRE(t.nabla[1][0] == v3(Scalar(0), Scalar(0), -half));
            REQUIRE(t.nabla[0][2] == v3(Scalar(0), -(l2 * half), Scalar(0)));
            REQUIRE(t.nabla[2][0] == v3(Scalar(0), -(l2 * half), Scalar(0)));
            REQUIRE(t.nabla[1][2] == v3(l2 * half, Scalar(0), Scalar(0)));
            REQUIRE(t.nabla[2][1] == v3(l2 * half, Scalar(0), Scalar(0)));
            for (int i = 0; i < 3; ++i)
                REQUIRE(t.nabla[i][i] == v3(Scalar(0), Scalar(0), Scalar(0)));
        }
    }
    SECTION("the null normal form keeps only two derivatives") {
        const ConnectionTable t = koszul_connection(BilinearForm::make(flat_matrix()));
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                if (i == 1 && j == 0) {
                    REQUIRE(t.nabla[i][j] == v3(Scalar(0), Scalar(0), Scalar(-1)));
                } else if (i == 1 && j == 1) {
                    REQUIRE(t.nabla[i][j] == v3(Scalar(1), Scalar(0), Scalar(0)));
                } else {
                    REQUIRE(t.nabla[i][j] == v3(Scalar(0), Scalar(0), Scalar(0)));
                }
            }
    }
    SECTION("an abelian bracket table yields a vanishing connection") {
        Rng rng(51);
        for (int trial = 0; trial < 10; ++trial) {
            const BilinearForm g = random_nondegenerate_form(rng);
            const ConnectionTable t = koszul_connection(g, zero_bracket_table());
            for (const auto& row : t.nabla)
                for (const LieVector& v : row) REQUIRE(v.is_zero());
        }
    }
    SECTION("random non-degenerate forms pass the built-in verification") {
        Rng rng(52);
        for (int trial = 0; trial < 25; ++trial)
            REQUIRE_NOTHROW(koszul_connection(random_nondegenerate_form(rng)));
    }
    SECTION("degenerate forms are refused") {
        REQUIRE(code_of([] {
                    koszul_connection(BilinearForm::diagonal(Scalar(1), Scalar(1), Scalar(0)));
                }) == errc::degenerate_metric);
    }
}

TEST_CASE("curvature certifies flatness and plane curvatures") {
    const LieVector x1 = v3(Scalar(1), Scalar(0), Scalar(0));
    const LieVector x2 = v3(Scalar(0), Scalar(1), Scalar(0));
    const LieVector x3 = v3(Scalar(0), Scalar(0), Scalar(1));

    SECTION("scaled-center diagonal forms have the classical plane curvatures") {
        for (const Scalar& lambda : {Scalar(1), Scalar(2), q(1, 2)}) {
            const Scalar l2 = lambda * lambda;
            const BilinearForm g = BilinearForm::diagonal(Scalar(1), Scalar(1), l2);
            const CurvatureTable r = curvature(g);
            REQUIRE(r.r[0][1][1] == v3(-(q(3, 4) * l2), Scalar(0), Scalar(0)));
            REQUIRE(sectional(g, x1, x2) == -(q(3, 4) * l2));
            REQUIRE(sectional(g, x1, x3) == q(1, 4) * l2);
            REQUIRE(sectional(g, x2, x3) == q(1, 4) * l2);
            REQUIRE_FALSE(is_flat(g));
        }
    }
    SECTION("sectional curvature only sees the spanned plane") {
        const BilinearForm g = BilinearForm::diagonal(Scalar(1), Scalar(1), Scalar(1));
        REQUIRE(sectional(g, v3(Scalar(1), Scalar(1), Scalar(0)), x2) == q(-3, 4));
        REQUIRE(sectional(g, v3(Scalar(2), Scalar(0), Scalar(0)), v3(Scalar(1), Scalar(0),
                                                                     Scalar(5))) == q(1, 4));
    }
    SECTION("the null normal form is flat") {
        const BilinearForm g = BilinearForm::make(flat_matrix());
        REQUIRE(is_flat(g));
        const CurvatureTable r = curvature(g);
        for (const auto& plane : r.r)
            for (const auto& row : plane)
                for (const LieVector& v : row) REQUIRE(v.is_zero());
    }
    SECTION("flatness is invariant under frame changes") {
        Rng rng(53);
        const BilinearForm flat = BilinearForm::make(flat_matrix());
        const BilinearForm round = BilinearForm::diagonal(Scalar(1), Scalar(1), Scalar(1));
        for (int trial = 0; trial < 20; ++trial) {
            const Automorphism s = random_automorphism(rng);
            REQUIRE(is_flat(pullback(flat, s)));
            REQUIRE_FALSE(is_flat(pullback(round, s)));
        }
    }
    SECTION("the tensor keeps its classical symmetries") {
        Rng rng(54);
        const std::vector<LieVector> frame{x1, x2, x3};
        for (int trial = 0; trial < 15; ++trial) {
            const BilinearForm g = random_nondegenerate_form(rng);
            const CurvatureTable r = curvature(g);
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    for (int k = 0; k < 3; ++k) {
                        const LieVector cyclic = r.r[i][j][k] + r.r[j][k][i] + r.r[k][i][j];
                        REQUIRE(cyclic.is_zero());
                        REQUIRE((r.r[i][j][k] + r.r[j][i][k]).is_zero());
                        const Scalar skew = g.pair(r.r[i][j][k], frame[k]);
                        REQUIRE(skew.is_zero());
                        for (int l = 0; l < 3; ++l)
                            REQUIRE((g.pair(r.r[i][j][k], frame[l]) +
                                     g.pair(r.r[i][j][l], frame[k]))
                                        .is_zero());
                    }
        }
    }
    SECTION("degenerate planes are refused") {
        REQUIRE(code_of([&] {
                    sectional(BilinearForm::diagonal(Scalar(1), Scalar(1), Scalar(-1)),
                              v3(Scalar(1), Scalar(0), Scalar(1)), x2);
                }) == errc::degenerate_plane);
        REQUIRE(code_of([&] {
                    sectional(BilinearForm::diagonal(Scalar(1), Scalar(1), Scalar(1)), x1,
                              v3(Scalar(2), Scalar(0), Scalar(0)));
                }) == errc::degenerate_plane);
    }
}
