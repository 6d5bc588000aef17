#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <variant>

#include "heisgamma/heisenberg.hpp"

namespace heisgamma {

// Parameter charts for the canonical finite-order families.  A tag stores the
// chart coordinates only; make_family materializes the matrix (and re-runs the
// automorphism shape validation, so a returned Automorphism is always sound).
struct Identity {};
struct Tau1 {
    Scalar a3, a6;
};
struct Tau2 {
    Scalar a3, a5;
};
struct Tau3 {
    Scalar a1, a2, a6;  // requires a2 != 0
};
struct Tau4 {
    Scalar a5, a6;
};
struct Tau5 {
    Scalar a2, a3, a5, a6;  // requires 4*a2*a3 < -3
};
struct Tau5Prime {
    Scalar a2, a3, a5, a6;  // requires 4*a2*a3 < -3
};
struct Tau6 {
    int k = 4;              // requires k >= 4
    Scalar a2, a3, a5, a6;  // requires a2*a3 <= cos^2(2*pi/k) - 1
};

using FamilyTag =
    std::variant<Identity, Tau1, Tau2, Tau3, Tau4, Tau5, Tau5Prime, Tau6>;

inline std::string family_name(const FamilyTag& tag) {
    struct Namer {
        std::string operator()(const Identity&) const { return "identity"; }
        std::string operator()(const Tau1&) const { return "tau1"; }
        std::string operator()(const Tau2&) const { return "tau2"; }
        std::string operator()(const Tau3&) const { return "tau3"; }
        std::string operator()(const Tau4&) const { return "tau4"; }
        std::string operator()(const Tau5&) const { return "tau5"; }
        std::string operator()(const Tau5Prime&) const { return "tau5prime"; }
        std::string operator()(const Tau6&) const { return "tau6"; }
    };
    return std::visit(Namer{}, tag);
}

namespace detail {

inline Mat3 rows(Scalar a, Scalar b, Scalar c, Scalar d, Scalar e, Scalar f, Scalar g,
                 Scalar h, Scalar i) {
    return Mat3::from_rows({{{std::move(a), std::move(b), std::move(c)},
                             {std::move(d), std::move(e), std::move(f)},
                             {std::move(g), std::move(h), std::move(i)}}});
}

// Discriminant of the period-three trace equation; positive sign required for
// the order-3 chart, nonnegative for the root solver.
inline Scalar order3_discriminant(const Scalar& a2, const Scalar& a3) {
    return Scalar(-3) - Scalar(4) * a2 * a3;
}

// Period-three matrix for either square-root branch (+1 or -1).
inline Mat3 order3_matrix(const Scalar& a2, const Scalar& a3, const Scalar& a5,
                          const Scalar& a6, int branch) {
    Scalar disc = order3_discriminant(a2, a3);
    if (sign_of(disc) <= 0)
        fail(errc::constraint_violated,
             "order-3 chart requires 4*a2*a3 < -3 strictly");
    Scalar s = sqrt_scalar(disc);
    if (branch < 0) s = -s;
    Scalar half = Scalar::rational(1, 2);
    return rows((Scalar(-1) - s) * half, a2, Scalar(0), a3, (Scalar(-1) + s) * half,
                Scalar(0), a5, a6, Scalar(1));
}

inline Scalar cos_two_pi_over(int k, bool exact) {
    if (!exact) return Scalar::approx(std::cos(2.0 * std::numbers::pi / k));
    if (k == 4) return Scalar(0);
    if (k == 6) return Scalar::rational(1, 2);
    fail(errc::mode_unavailable,
         "cos(2*pi/" + std::to_string(k) + ") is irrational; use approximate parameters");
}

}  // namespace detail

inline Automorphism make_family(const FamilyTag& tag, double tol = 1e-9) {
    struct Builder {
        double tol;

        Automorphism operator()(const Identity&) const { return Automorphism::identity(); }

        Automorphism operator()(const Tau1& t) const {
            Scalar half = Scalar::rational(1, 2);
            return make_automorphism(
                detail::rows(Scalar(-1), Scalar(0), Scalar(0), t.a3, Scalar(1), Scalar(0),
                             t.a3 * t.a6 * half, t.a6, Scalar(-1)),
                tol);
        }

        Automorphism operator()(const Tau2& t) const {
            return make_automorphism(
                detail::rows(Scalar(1), Scalar(0), Scalar(0), t.a3, Scalar(-1), Scalar(0),
                             t.a5, Scalar(0), Scalar(-1)),
                tol);
        }

        Automorphism operator()(const Tau3& t) const {
            if (t.a2.is_zero(tol))
                fail(errc::constraint_violated, "tau3 chart requires a2 != 0");
            Scalar one(1);
            return make_automorphism(
                detail::rows(t.a1, t.a2, Scalar(0), (one - t.a1 * t.a1) / t.a2,
                             Scalar(0) - t.a1, Scalar(0), (one + t.a1) * t.a6 / t.a2, t.a6,
                             Scalar(-1)),
                tol);
        }

        Automorphism operator()(const Tau4& t) const {
            return make_automorphism(
                detail::rows(Scalar(-1), Scalar(0), Scalar(0), Scalar(0), Scalar(-1),
                             Scalar(0), t.a5, t.a6, Scalar(1)),
                tol);
        }

        Automorphism operator()(const Tau5& t) const {
            return make_automorphism(detail::order3_matrix(t.a2, t.a3, t.a5, t.a6, +1),
                                     tol);
        }

        Automorphism operator()(const Tau5Prime& t) const {
            return make_automorphism(detail::order3_matrix(t.a2, t.a3, t.a5, t.a6, -1),
                                     tol);
        }

        Automorphism operator()(const Tau6& t) const {
            if (t.k < 4)
                fail(errc::constraint_violated, "period chart requires k >= 4");
            bool exact = t.a2.is_exact() && t.a3.is_exact() && t.a5.is_exact() &&
                         t.a6.is_exact();
            Scalar c = detail::cos_two_pi_over(t.k, exact);
            Scalar t2 = c * c - Scalar(1) - t.a2 * t.a3;
            if (sign_of(t2) < 0)
                fail(errc::constraint_violated,
                     "period-k chart requires a2*a3 <= cos^2(2*pi/k) - 1");
            Scalar s = sqrt_scalar(t2);
            return make_automorphism(detail::rows(c + s, t.a2, Scalar(0), t.a3, c - s,
                                                  Scalar(0), t.a5, t.a6, Scalar(1)),
                                     tol);
        }
    };
    return std::visit(Builder{tol}, tag);
}

/**
 * Recovers the chart of an order-two automorphism.  The decision order is
 * fixed — central reflection (top block -Id), then the two single-parameter
 * reflections, then the generic chart with a2 != 0 — so the answer is
 * deterministic where charts touch at degenerate parameters.  The recovered
 * tag always rebuilds to the input matrix; that round trip is re-checked here.
 */
inline FamilyTag classify_involution(const Automorphism& t, double tol = 1e-9) {
    const Mat3& m = t.matrix();
    const bool ap = m.has_approx_entry();
    const double ztol = ap ? tol : 0.0;
    auto same = [&](const Mat3& x, const Mat3& y) {
        return ap ? mat_close(x, y, tol) : x == y;
    };

    if (same(m, Mat3::identity())) return Identity{};
    if (!same(mat_mul(m, m), Mat3::identity()))
        fail(errc::not_involution, "square of the automorphism is not the identity");

    FamilyTag tag;
    if ((m.at(0, 0) + Scalar(1)).is_zero(ztol) && m.at(0, 1).is_zero(ztol) &&
        m.at(1, 0).is_zero(ztol) && (m.at(1, 1) + Scalar(1)).is_zero(ztol)) {
        tag = Tau4{m.at(2, 0), m.at(2, 1)};
    } else if ((m.at(0, 0) + Scalar(1)).is_zero(ztol) && m.at(0, 1).is_zero(ztol)) {
        tag = Tau1{m.at(1, 0), m.at(2, 1)};
    } else if ((m.at(0, 0) - Scalar(1)).is_zero(ztol) && m.at(0, 1).is_zero(ztol)) {
        tag = Tau2{m.at(1, 0), m.at(2, 0)};
    } else if (!m.at(0, 1).is_zero(ztol)) {
        tag = Tau3{m.at(0, 0), m.at(0, 1), m.at(2, 1)};
    } else {
        fail(errc::internal_error, "involution escapes the classification charts");
    }

    if (!same(make_family(tag, tol).matrix(), m))
        fail(errc::internal_error, "recovered chart does not rebuild the involution");
    return tag;
}

// Roots of x^2 + x + (a2*a3 + 1) = 0, the diagonal entries admissible for a
// period-three top block: ((-1 - s)/2, (-1 + s)/2) with s = sqrt(-3 - 4*a2*a3).
// Empty when the discriminant is negative; the boundary yields a double root.
inline std::optional<std::pair<Scalar, Scalar>> solve_order3_constraints(
    const Scalar& a2, const Scalar& a3) {
    Scalar disc = detail::order3_discriminant(a2, a3);
    if (sign_of(disc) < 0) return std::nullopt;
    Scalar s = sqrt_scalar(disc);
    Scalar half = Scalar::rational(1, 2);
    return std::make_pair((Scalar(-1) - s) * half, (Scalar(-1) + s) * half);
}

/**
 * Squaring swaps the two order-3 branches and transports the bottom-row
 * parameters.  Returns the predicted charts for tau5^2 (a Tau5Prime tag) and
 * tau5prime^2 (a Tau5 tag); both predictions are verified against direct
 * squaring before returning.
 */
inline std::pair<FamilyTag, FamilyTag> tau5_square_relation(const Scalar& a2,
                                                            const Scalar& a3,
                                                            const Scalar& a5,
                                                            const Scalar& a6,
                                                            double tol = 1e-9) {
    Scalar disc = detail::order3_discriminant(a2, a3);
    if (sign_of(disc) <= 0)
        fail(errc::constraint_violated, "squaring relation requires 4*a2*a3 < -3");
    Scalar s = sqrt_scalar(disc);
    Scalar half = Scalar::rational(1, 2);
    Scalar two(2);

    // Bottom rows are a^T (A + I) for the respective branch's top block A;
    // written out, the cross terms enter with positive sign.
    Tau5Prime square_of_plus{-a2, -a3, (a5 - s * a5 + two * a3 * a6) * half,
                             (a6 + s * a6 + two * a2 * a5) * half};
    Tau5 square_of_minus{-a2, -a3, (a5 + s * a5 + two * a3 * a6) * half,
                         (a6 - s * a6 + two * a2 * a5) * half};

    Automorphism plus = make_family(Tau5{a2, a3, a5, a6}, tol);
    Automorphism minus = make_family(Tau5Prime{a2, a3, a5, a6}, tol);
    auto same = [&](const Mat3& x, const Mat3& y) {
        return x.has_approx_entry() ? mat_close(x, y, tol) : x == y;
    };
    if (!same(mat_mul(plus.matrix(), plus.matrix()),
              make_family(FamilyTag(square_of_plus), tol).matrix()))
        fail(errc::internal_error, "parameter transport disagrees with direct squaring");
    if (!same(mat_mul(minus.matrix(), minus.matrix()),
              make_family(FamilyTag(square_of_minus), tol).matrix()))
        fail(errc::internal_error, "parameter transport disagrees with direct squaring");
    return {FamilyTag(square_of_plus), FamilyTag(square_of_minus)};
}

}  // namespace heisgamma
