#include <catch2/catch_amalgamated.hpp>

#include <complex>
#include <string>
#include <vector>

#include "heisgamma/metric.hpp"
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

BilinearForm diag_form(Scalar a, Scalar b, Scalar c) {
    return BilinearForm::diagonal(std::move(a), std::move(b), std::move(c));
}

Mat3 flat_matrix() {
    return m3(Scalar(1), Scalar(0), Scalar(0), Scalar(0), Scalar(-1), Scalar(1), Scalar(0),
              Scalar(1), Scalar(0));
}

// Form whose value on a pair of grading lines of the given four-group chart is
// read off from the coefficient matrix h.
BilinearForm form_in_chart(const Automorphism& chart, const Mat3& h) {
    const Mat3 inv = mat_inverse(chart.matrix());
    return BilinearForm::make(mat_mul(mat_transpose(inv), mat_mul(h, inv)));
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

Mat3 approx_copy(const Mat3& m) {
    Mat3 out;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) out.at(i, j) = Scalar::approx(m.at(i, j).to_double());
    return out;
}

}  // namespace

TEST_CASE("symmetric forms expose their inertia") {
    SECTION("signatures are fixed at construction") {
        REQUIRE(diag_form(Scalar(1), Scalar(1), Scalar(4)).signature ==
                Signature{3, 0, 0});
        REQUIRE(diag_form(Scalar(-1), Scalar(1), Scalar(4)).signature ==
                Signature{2, 1, 0});
        REQUIRE(BilinearForm::make(flat_matrix()).signature == Signature{2, 1, 0});
        REQUIRE(diag_form(Scalar(1), Scalar(1), Scalar(0)).signature ==
                Signature{2, 0, 1});
    }
    SECTION("pairing evaluates the matrix bilinearly") {
        const BilinearForm g = BilinearForm::make(flat_matrix());
        REQUIRE(g.pair(v3(Scalar(0), Scalar(1), Scalar(0)), v3(Scalar(0), Scalar(0), Scalar(1))) ==
                Scalar(1));
        REQUIRE(g.pair(v3(Scalar(0), Scalar(0), Scalar(1)), v3(Scalar(0), Scalar(0), Scalar(1))) ==
                Scalar(0));
        REQUIRE(g.pair(v3(Scalar(1), Scalar(2), Scalar(0)), v3(Scalar(1), Scalar(2), Scalar(0))) ==
                Scalar(-3));
    }
    SECTION("asymmetric or complex matrices are rejected") {
        REQUIRE(code_of([] {
                    BilinearForm::make(m3(Scalar(1), Scalar(2), Scalar(0), Scalar(0), Scalar(1),
                                          Scalar(0), Scalar(0), Scalar(0), Scalar(1)));
                }) == errc::malformed_input);
        REQUIRE(code_of([] {
                    BilinearForm::make(Mat3::diagonal(Scalar::complex(1.0, 1.0), Scalar(1),
                                                      Scalar(1)));
                }) == errc::malformed_input);
    }
}

TEST_CASE("adaptation sorts forms into the three compatible shapes") {
    const Grading canonical =
        grading_from_subgroup(build_gamma7(Scalar(0), Scalar(0), Scalar(0)));

    SECTION("orthogonal positive lines give the definite class") {
        const AdaptationReport r =
            check_adaptation(diag_form(Scalar(1), Scalar(1), Scalar(4)), canonical);
        REQUIRE(r.classification == MetricClass::riemannian_adapted);
        REQUIRE(r.component_labels == std::vector<std::string>{"+-", "-+", "--"});
        REQUIRE(r.component_norms[0] == Scalar(1));
        REQUIRE(r.component_norms[2] == Scalar(4));
        REQUIRE(r.degenerate_label.empty());
        REQUIRE(std::string(metric_class_name(r.classification)) == "RiemannianAdapted");
    }
    SECTION("an indefinite orthogonal split lands in the first indefinite class") {
        REQUIRE(check_adaptation(diag_form(Scalar(-1), Scalar(1), Scalar(4)), canonical)
                    .classification == MetricClass::lorentz_case_i);
        REQUIRE(check_adaptation(diag_form(Scalar(1), Scalar(1), Scalar(-4)), canonical)
                    .classification == MetricClass::lorentz_case_i);
        REQUIRE(check_adaptation(diag_form(Scalar(-1), Scalar(-1), Scalar(4)), canonical)
                    .classification == MetricClass::not_adapted);
    }
    SECTION("one degenerate line paired hyperbolically gives the second class") {
        const AdaptationReport r =
            check_adaptation(BilinearForm::make(flat_matrix()), canonical);
        REQUIRE(r.classification == MetricClass::lorentz_case_ii);
        REQUIRE(r.degenerate_label == "--");
        REQUIRE(r.lorentz_pairs == std::vector<std::string>{"+-"});
    }
    SECTION("the degenerate line may be transversal to the center") {
        const AdaptationReport r = check_adaptation(
            BilinearForm::make(m3(Scalar(1), Scalar(1), Scalar(0), Scalar(1), Scalar(0),
                                  Scalar(0), Scalar(0), Scalar(0), Scalar(4))),
            canonical);
        REQUIRE(r.classification == MetricClass::lorentz_case_ii);
        REQUIRE(r.degenerate_label == "+-");
        REQUIRE(r.lorentz_pairs == std::vector<std::string>{"-+"});
    }
    SECTION("spoiled orthogonality or missing pairings fall outside") {
        REQUIRE(check_adaptation(
                    BilinearForm::make(m3(Scalar(1), Scalar(1), Scalar(0), Scalar(1), Scalar(2),
                                          Scalar(0), Scalar(0), Scalar(0), Scalar(4))),
                    canonical)
                    .classification == MetricClass::not_adapted);
        REQUIRE(check_adaptation(diag_form(Scalar(1), Scalar(1), Scalar(0)), canonical)
                    .classification == MetricClass::not_adapted);
        REQUIRE(check_adaptation(diag_form(Scalar(0), Scalar(0), Scalar(1)), canonical)
                    .classification == MetricClass::not_adapted);
    }
    SECTION("gradings with a non-trivial label-zero component are rejected") {
        const Grading cyclic = grading_from_subgroup(
            build_gamma5(Scalar(1), Scalar(-3), Scalar(0), Scalar(0)));
        REQUIRE(code_of([&] {
                    check_adaptation(diag_form(Scalar(1), Scalar(1), Scalar(1)), cyclic);
                }) == errc::invalid_grading);
    }
    SECTION("general four-group charts classify through their component lines") {
        const Automorphism chart = normalize_gamma7(Scalar(2), Scalar(4), Scalar(6));
        const Grading g = grading_from_subgroup(build_gamma7(Scalar(2), Scalar(4), Scalar(6)));
        REQUIRE(check_adaptation(form_in_chart(chart, Mat3::diagonal(Scalar(1), Scalar(1),
                                                                     Scalar(4))),
                                 g)
                    .classification == MetricClass::riemannian_adapted);
        REQUIRE(check_adaptation(form_in_chart(chart, Mat3::diagonal(Scalar(1), Scalar(1),
                                                                     Scalar(-9))),
                                 g)
                    .classification == MetricClass::lorentz_case_i);
        const AdaptationReport r = check_adaptation(form_in_chart(chart, flat_matrix()), g);
        REQUIRE(r.classification == MetricClass::lorentz_case_ii);
        REQUIRE(r.degenerate_label == "--");
        REQUIRE(r.lorentz_pairs == std::vector<std::string>{"+-"});
    }
    SECTION("random off-line perturbations break adaptation") {
        Rng rng(41);
        for (int trial = 0; trial < 50; ++trial) {
            const Scalar a3 = Scalar(rng.rational(3, 2)), a5 = Scalar(rng.rational(3, 2)),
                         a6 = Scalar(rng.rational(3, 2));
            const Automorphism chart = normalize_gamma7(a3, a5, a6);
            const Grading g = grading_from_subgroup(build_gamma7(a3, a5, a6));
            Mat3 h = Mat3::diagonal(Scalar(1 + rng.range(0, 4)), Scalar(1 + rng.range(0, 4)),
                                    Scalar(1 + rng.range(0, 4)));
            REQUIRE(check_adaptation(form_in_chart(chart, h), g).classification ==
                    MetricClass::riemannian_adapted);
            h.at(0, 1) = h.at(1, 0) = Scalar(rng.range(1, 5));
            REQUIRE(check_adaptation(form_in_chart(chart, h), g).classification ==
                    MetricClass::not_adapted);
        }
    }
}

TEST_CASE("frame changes transport forms contravariantly") {
    SECTION("consecutive pullbacks compose through the product frame") {
        Rng rng(42);
        for (int trial = 0; trial < 50; ++trial) {
            Mat3 m;
            for (int i = 0; i < 3; ++i)
                for (int j = i; j < 3; ++j) m.at(i, j) = m.at(j, i) = Scalar(rng.rational(5, 3));
            const BilinearForm g = BilinearForm::make(m);
            const Automorphism s1 = random_automorphism(rng);
            const Automorphism s2 = random_automorphism(rng);
            REQUIRE(pullback(pullback(g, s1), s2).matrix ==
                    pullback(g, compose(s1, s2)).matrix);
            REQUIRE(pullback(g, s1).signature == g.signature);
        }
    }
    SECTION("the four-group normal-form frame diagonalizes chart forms") {
        const Automorphism chart = normalize_gamma7(Scalar(2), Scalar(4), Scalar(6));
        const Mat3 h = Mat3::diagonal(Scalar(3), Scalar(5), Scalar(7));
        const BilinearForm g = form_in_chart(chart, h);
        REQUIRE(pullback(g, chart).matrix == h);
    }
}

TEST_CASE("adapted forms reduce to canonical representatives") {
    const Grading canonical =
        grading_from_subgroup(build_gamma7(Scalar(0), Scalar(0), Scalar(0)));

    SECTION("positive diagonal forms rescale onto the definite normal form") {
        const ReductionResult r =
            canonical_reduce(diag_form(Scalar(4), Scalar(9), Scalar(25)), canonical);
        REQUIRE(r.cls.kind == CanonicalKind::riemannian);
        REQUIRE(r.cls.lambda == q(5, 6));
        REQUIRE(r.transform.matrix() == Mat3::diagonal(q(1, 2), q(1, 3), q(1, 6)));
        REQUIRE(r.canonical.matrix == Mat3::diagonal(Scalar(1), Scalar(1), q(25, 36)));
        REQUIRE(std::string(canonical_kind_name(r.cls.kind)) == "Riem");
    }
    SECTION("reduction is idempotent on the normal forms") {
        const ReductionResult r =
            canonical_reduce(diag_form(Scalar(1), Scalar(1), q(25, 36)), canonical);
        REQUIRE(r.transform.matrix() == Mat3::identity());
        REQUIRE(r.cls.lambda == q(5, 6));
        const ReductionResult f =
            canonical_reduce(BilinearForm::make(flat_matrix()), canonical);
        REQUIRE(f.cls.kind == CanonicalKind::lorentz_flat);
        REQUIRE(f.cls.lambda == Scalar(0));
        REQUIRE(f.transform.matrix() == Mat3::identity());
    }
    SECTION("pure square roots stay exact") {
        const ReductionResult r =
            canonical_reduce(diag_form(Scalar(2), Scalar(8), Scalar(5)), canonical);
        REQUIRE(r.cls.kind == CanonicalKind::riemannian);
        REQUIRE(r.cls.lambda * r.cls.lambda == q(5, 16));
        REQUIRE(r.canonical.matrix == Mat3::diagonal(Scalar(1), Scalar(1), q(5, 16)));
        REQUIRE(pullback(diag_form(Scalar(2), Scalar(8), Scalar(5)), r.transform).matrix ==
                r.canonical.matrix);
        const ReductionResult r2 =
            canonical_reduce(diag_form(Scalar(2), Scalar(3), Scalar(5)), canonical);
        REQUIRE(r2.cls.lambda * r2.cls.lambda == q(5, 6));
        REQUIRE(pullback(diag_form(Scalar(2), Scalar(3), Scalar(5)), r2.transform).matrix ==
                r2.canonical.matrix);
    }
    SECTION("fourth roots are refused in exact arithmetic but pass approximately") {
        const Mat3 m = m3(Scalar(2), Scalar(0), Scalar(0), Scalar(0), Scalar(-1), Scalar(1),
                          Scalar(0), Scalar(1), Scalar(0));
        REQUIRE(check_adaptation(BilinearForm::make(m), canonical).classification ==
                MetricClass::lorentz_case_ii);
        REQUIRE(code_of([&] { canonical_reduce(BilinearForm::make(m), canonical); }) ==
                errc::mode_unavailable);
        const ReductionResult r =
            canonical_reduce(BilinearForm::make(approx_copy(m)), canonical);
        REQUIRE(r.cls.kind == CanonicalKind::lorentz_flat);
        REQUIRE(detail::same_matrix(pullback(BilinearForm::make(approx_copy(m)), r.transform)
                                        .matrix,
                                    flat_matrix(), 1e-9));
    }
    SECTION("a negative center rescales onto the center-negative form") {
        const ReductionResult r =
            canonical_reduce(diag_form(Scalar(1), Scalar(1), Scalar(-4)), canonical);
        REQUIRE(r.cls.kind == CanonicalKind::lorentz_center_negative);
        REQUIRE(r.cls.lambda == Scalar(2));
        REQUIRE(r.transform.matrix() == Mat3::identity());
        const ReductionResult r2 =
            canonical_reduce(diag_form(Scalar(4), Scalar(9), Scalar(-25)), canonical);
        REQUIRE(r2.cls.kind == CanonicalKind::lorentz_center_negative);
        REQUIRE(r2.cls.lambda == q(5, 6));
        REQUIRE(r2.canonical.matrix == Mat3::diagonal(Scalar(1), Scalar(1), q(-25, 36)));
    }
    SECTION("a negative transversal line rescales onto the center-positive form") {
        const ReductionResult r =
            canonical_reduce(diag_form(Scalar(-4), Scalar(1), Scalar(9)), canonical);
        REQUIRE(r.cls.kind == CanonicalKind::lorentz_center_positive);
        REQUIRE(r.cls.lambda == q(3, 2));
        REQUIRE(r.canonical.matrix == Mat3::diagonal(Scalar(-1), Scalar(1), q(9, 4)));
        const ReductionResult r2 =
            canonical_reduce(diag_form(Scalar(1), Scalar(-4), Scalar(9)), canonical);
        REQUIRE(r2.cls.kind == CanonicalKind::lorentz_center_positive);
        REQUIRE(r2.cls.lambda == q(3, 2));
        REQUIRE(pullback(diag_form(Scalar(1), Scalar(-4), Scalar(9)), r2.transform).matrix ==
                r2.canonical.matrix);
    }
    SECTION("degenerate transversal pairings reduce through the non-degenerate path") {
        const BilinearForm g = BilinearForm::make(m3(Scalar(1), Scalar(1), Scalar(0), Scalar(1),
                                                     Scalar(0), Scalar(0), Scalar(0), Scalar(0),
                                                     Scalar(4)));
        const ReductionResult r = canonical_reduce(g, canonical);
        REQUIRE(r.cls.kind == CanonicalKind::lorentz_center_positive);
        REQUIRE(r.cls.lambda == Scalar(2));
        REQUIRE(pullback(g, r.transform).matrix == r.canonical.matrix);
    }
    SECTION("degenerate central pairings land on the null normal form exactly") {
        Rng rng(43);
        for (int trial = 0; trial < 20; ++trial) {
            const Scalar a3 = Scalar(rng.rational(3, 2)), a5 = Scalar(rng.rational(3, 2)),
                         a6 = Scalar(rng.rational(3, 2));
            const Automorphism chart = normalize_gamma7(a3, a5, a6);
            const Grading grading = grading_from_subgroup(build_gamma7(a3, a5, a6));
            const long long s = rng.range(1, 3);
            Mat3 h;
            h.at(0, 0) = Scalar(s * s);
            h.at(1, 1) = Scalar(rng.nonzero_rational(4, 3));
            h.at(1, 2) = h.at(2, 1) = Scalar(rng.nonzero_rational(4, 3));
            const BilinearForm g = form_in_chart(chart, h);
            REQUIRE(check_adaptation(g, grading).classification ==
                    MetricClass::lorentz_case_ii);
            const ReductionResult r = canonical_reduce(g, grading);
            REQUIRE(r.cls.kind == CanonicalKind::lorentz_flat);
            REQUIRE(pullback(g, r.transform).matrix == flat_matrix());
        }
    }
    SECTION("random square-scaled positive diagonals recover their scale") {
        Rng rng(44);
        for (int trial = 0; trial < 25; ++trial) {
            const Scalar d1 = Scalar(rng.nonzero_rational(4, 3));
            const Scalar d2 = Scalar(rng.nonzero_rational(4, 3));
            Scalar d3 = Scalar(rng.nonzero_rational(4, 3));
            if (sign_of(d3) < 0) d3 = -d3;
            const BilinearForm g = diag_form(d1 * d1, d2 * d2, d3);
            const ReductionResult r = canonical_reduce(g, canonical);
            REQUIRE(r.cls.kind == CanonicalKind::riemannian);
            REQUIRE(r.cls.lambda * r.cls.lambda == d3 / (d1 * d1 * d2 * d2));
            REQUIRE(pullback(g, r.transform).matrix == r.canonical.matrix);
        }
    }
    SECTION("general charts reduce in approximate arithmetic") {
        Rng rng(45);
        for (int trial = 0; trial < 25; ++trial) {
            const Scalar a3 = Scalar(rng.rational(3, 2)), a5 = Scalar(rng.rational(3, 2)),
                         a6 = Scalar(rng.rational(3, 2));
            const Automorphism chart = normalize_gamma7(a3, a5, a6);
            const Grading grading = grading_from_subgroup(build_gamma7(a3, a5, a6));
            const Mat3 h = Mat3::diagonal(Scalar(1 + rng.range(0, 5)), Scalar(1 + rng.range(0, 5)),
                                          Scalar(rng.range(-6, -1)));
            const BilinearForm exact = form_in_chart(chart, h);
            const BilinearForm g = BilinearForm::make(approx_copy(exact.matrix));
            const Grading approx_grading = grading_from_subgroup(
                build_gamma7(Scalar::approx(a3.to_double()), Scalar::approx(a5.to_double()),
                             Scalar::approx(a6.to_double())));
            const ReductionResult r = canonical_reduce(g, approx_grading);
            REQUIRE(r.cls.kind == CanonicalKind::lorentz_center_negative);
            REQUIRE(detail::same_matrix(pullback(g, r.transform).matrix, r.canonical.matrix,
                                        1e-7));
        }
    }
    SECTION("forms outside the three shapes are refused") {
        REQUIRE(code_of([&] {
                    canonical_reduce(
                        BilinearForm::make(m3(Scalar(1), Scalar(1), Scalar(0), Scalar(1),
                                              Scalar(2), Scalar(0), Scalar(0), Scalar(0),
                                              Scalar(4))),
                        canonical);
                }) == errc::not_adapted);
    }
}
