#pragma once

// Joint eigenspace decompositions induced by finite abelian automorphism
// groups, the normal form for the parametrized four-group action, conjugators
// between the two standard four-group charts, and the solver enumerating
// involutions that commute with a rotation-type automorphism.

#include <array>
#include <complex>
#include <cstddef>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "heisgamma/subgroups.hpp"

namespace heisgamma {

// One homogeneous component: eigenvalue exponents with respect to the chosen
// generators, a printable label, and a basis (empty for a zero component).
struct GradingComponent {
    std::vector<int> exponents;
    std::string label;
    std::vector<LieVector> basis;
};

// Full decomposition. Components are listed for every exponent tuple in
// lexicographic order, including zero-dimensional ones; `identity_trivial`
// records whether the all-zero-exponent component is {0}.
struct Grading {
    std::vector<std::size_t> generator_indices;
    std::vector<int> generator_orders;
    std::vector<GradingComponent> components;
    bool identity_trivial = false;
    bool complex_mode = false;
};

namespace detail {

inline std::string render_component_label(const std::vector<int>& exps,
                                          const std::vector<int>& orders) {
    if (exps.empty()) return "e";
    bool all_two = true;
    for (int o : orders) all_two = all_two && o <= 2;
    std::string out;
    if (all_two) {
        for (int e : exps) out.push_back(e == 0 ? '+' : '-');
        return out;
    }
    if (exps.size() == 1) return std::to_string(exps[0]);
    for (std::size_t i = 0; i < exps.size(); ++i) {
        if (i) out.push_back(',');
        out += std::to_string(exps[i]);
    }
    return out;
}

// Greedy generating set: repeatedly take the highest-order element (lowest
// index on ties) outside the subgroup generated so far.
inline std::vector<std::size_t> pick_generators(const AutSubgroup& g) {
    const std::size_t n = g.elements.size();
    std::vector<char> span(n, 0);
    span[0] = 1;
    std::size_t covered = 1;
    std::vector<std::size_t> gens;
    while (covered < n) {
        std::size_t best = n;
        int best_order = -1;
        for (std::size_t i = 0; i < n; ++i) {
            if (!span[i] && g.orders[i] > best_order) {
                best = i;
                best_order = g.orders[i];
            }
        }
        gens.push_back(best);
        span[best] = 1;
        ++covered;
        bool grew = true;
        while (grew) {
            grew = false;
            for (std::size_t i = 0; i < n; ++i) {
                if (!span[i]) continue;
                for (std::size_t j = 0; j < n; ++j) {
                    if (!span[j]) continue;
                    const std::size_t k = g.table[i][j];
                    if (!span[k]) {
                        span[k] = 1;
                        ++covered;
                        grew = true;
                    }
                }
            }
        }
    }
    return gens;
}

inline bool in_span(const std::vector<LieVector>& basis, const LieVector& v, double tol) {
    if (v.is_zero(tol)) return true;
    if (basis.empty()) return false;
    SmallMatrix rows;
    for (const auto& b : basis) rows.push_back({b[0], b[1], b[2]});
    const int base_rank = rank(rows, tol);
    rows.push_back({v[0], v[1], v[2]});
    return rank(rows, tol) == base_rank;
}

inline bool same_matrix(const Mat3& a, const Mat3& b, double tol) {
    if (a.has_approx_entry() || b.has_approx_entry()) return mat_close(a, b, tol);
    return a == b;
}

}  // namespace detail

// Decompose the algebra into joint eigenspaces of a set of generators of an
// abelian subgroup. Generators of order at most two keep the computation
// exact; higher orders promote every entry to complex floating point.
inline Grading grading_from_subgroup(const AutSubgroup& g, double tol = 1e-9) {
    if (!g.abelian)
        fail(errc::not_abelian, "grading requires an abelian group of automorphisms");
    Grading out;
    out.generator_indices = detail::pick_generators(g);
    const std::size_t m = out.generator_indices.size();
    for (std::size_t gi : out.generator_indices)
        out.generator_orders.push_back(g.orders[gi]);
    for (int o : out.generator_orders) out.complex_mode = out.complex_mode || o > 2;

    if (m == 0) {
        GradingComponent whole;
        whole.label = "e";
        whole.basis = {LieVector{Scalar(1), Scalar(0), Scalar(0)},
                       LieVector{Scalar(0), Scalar(1), Scalar(0)},
                       LieVector{Scalar(0), Scalar(0), Scalar(1)}};
        out.components.push_back(std::move(whole));
        return out;
    }

    std::size_t total = 1;
    for (int o : out.generator_orders) total *= static_cast<std::size_t>(o);
    if (total > 4096)
        fail(errc::internal_error, "component grid is unreasonably large");

    std::vector<Mat3> mats;
    for (std::size_t gi : out.generator_indices) {
        Mat3 mat = g.elements[gi].matrix();
        if (out.complex_mode) {
            std::array<std::array<Scalar, 3>, 3> rows{};
            for (int r = 0; r < 3; ++r)
                for (int c = 0; c < 3; ++c) rows[r][c] = Scalar(mat.at(r, c).to_complex());
            mat = Mat3::from_rows(rows);
        }
        mats.push_back(mat);
    }

    std::vector<int> exps(m, 0);
    std::size_t dim_total = 0;
    SmallMatrix all_rows;
    for (std::size_t cell = 0; cell < total; ++cell) {
        SmallMatrix sys;
        for (std::size_t gidx = 0; gidx < m; ++gidx) {
            Scalar lambda(0);
            if (!out.complex_mode) {
                lambda = exps[gidx] == 0 ? Scalar(1) : Scalar(-1);
            } else {
                const double angle = 2.0 * std::numbers::pi * static_cast<double>(exps[gidx]) /
                                     static_cast<double>(out.generator_orders[gidx]);
                lambda = Scalar(std::polar(1.0, angle));
            }
            for (int r = 0; r < 3; ++r) {
                std::vector<Scalar> row;
                row.reserve(3);
                for (int c = 0; c < 3; ++c) {
                    Scalar entry = mats[gidx].at(r, c);
                    if (r == c) entry = entry - lambda;
                    row.push_back(std::move(entry));
                }
                sys.push_back(std::move(row));
            }
        }
        GradingComponent comp;
        comp.exponents = exps;
        comp.label = detail::render_component_label(exps, out.generator_orders);
        for (auto& vec : nullspace(std::move(sys), tol))
            comp.basis.push_back(LieVector{vec[0], vec[1], vec[2]});
        dim_total += comp.basis.size();
        for (const auto& b : comp.basis) all_rows.push_back({b[0], b[1], b[2]});
        out.components.push_back(std::move(comp));
        for (std::size_t gidx = m; gidx-- > 0;) {
            if (++exps[gidx] < out.generator_orders[gidx]) break;
            exps[gidx] = 0;
        }
    }

    if (dim_total != 3 || rank(all_rows, tol) != 3)
        fail(errc::not_simultaneously_diagonalizable,
             "joint eigenspaces do not decompose the algebra");

    for (const auto& ca : out.components) {
        if (ca.basis.empty()) continue;
        for (const auto& cb : out.components) {
            if (cb.basis.empty()) continue;
            std::size_t target = 0;
            for (std::size_t i = 0; i < m; ++i) {
                const int o = out.generator_orders[i];
                target = target * static_cast<std::size_t>(o) +
                         static_cast<std::size_t>((ca.exponents[i] + cb.exponents[i]) % o);
            }
            for (const auto& u : ca.basis) {
                for (const auto& v : cb.basis) {
                    const LieVector w = bracket(u, v);
                    if (w.is_zero(tol)) continue;
                    if (!detail::in_span(out.components[target].basis, w, tol))
                        fail(errc::grading_axiom_violated,
                             "bracket escapes the designated component");
                }
            }
        }
    }

    out.identity_trivial = out.components.front().basis.empty();
    return out;
}

// Lower-triangular change of basis taking the parametrized four-group to its
// canonical representative: sigma^-1 tau1(a3,a6) sigma = tau1(0,0) and
// sigma^-1 tau2(-a3,a5) sigma = tau2(0,0). Both identities are re-verified
// before returning.
inline Automorphism normalize_gamma7(const Scalar& a3, const Scalar& a5, const Scalar& a6,
                                     double tol = 1e-9) {
    const Scalar half = Scalar::rational(1, 2);
    const Mat3 sig = Mat3::from_rows({{{Scalar(1), Scalar(0), Scalar(0)},
                                       {-(a3 * half), Scalar(1), Scalar(0)},
                                       {a5 * half, a6 * half, Scalar(1)}}});
    const Automorphism sigma = Automorphism::make(sig, tol);
    const Mat3 inv = mat_inverse(sig, tol);
    const Mat3 c1 = mat_mul(mat_mul(inv, make_family(Tau1{a3, a6}, tol).matrix()), sig);
    const Mat3 c2 = mat_mul(mat_mul(inv, make_family(Tau2{-a3, a5}, tol).matrix()), sig);
    const Mat3 t1 = make_family(Tau1{Scalar(0), Scalar(0)}, tol).matrix();
    const Mat3 t2 = make_family(Tau2{Scalar(0), Scalar(0)}, tol).matrix();
    if (!detail::same_matrix(c1, t1, tol) || !detail::same_matrix(c2, t2, tol))
        fail(errc::internal_error, "normal-form conjugation identities failed");
    return sigma;
}

namespace detail {

struct GenPair {
    Mat3 a;  // source generator
    Mat3 b;  // target generator
};

// Does sigma^-1 (source) sigma = (target) hold as sets?
inline bool conjugates_onto(const Automorphism& sigma, const AutSubgroup& src,
                            const AutSubgroup& dst, double tol) {
    if (src.elements.size() != dst.elements.size()) return false;
    const Mat3 inv = mat_inverse(sigma.matrix(), tol);
    std::vector<char> used(dst.elements.size(), 0);
    for (const auto& e : src.elements) {
        const Mat3 c = mat_mul(mat_mul(inv, e.matrix()), sigma.matrix());
        bool found = false;
        for (std::size_t i = 0; i < dst.elements.size(); ++i) {
            if (used[i]) continue;
            if (same_matrix(c, dst.elements[i].matrix(), tol)) {
                used[i] = 1;
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

// Null space of the intertwining conditions T_a S = S T_b (both generator
// pairs), over the four entries of the planar block S.
inline std::vector<std::vector<Scalar>> top_block_solutions(const std::array<GenPair, 2>& pairs,
                                                            double tol) {
    SmallMatrix sys;
    for (const auto& pr : pairs) {
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                std::vector<Scalar> row(4, Scalar(0));
                for (int p = 0; p < 2; ++p) {
                    for (int q = 0; q < 2; ++q) {
                        Scalar coeff(0);
                        if (q == j) coeff = coeff + pr.a.at(i, p);
                        if (p == i) coeff = coeff - pr.b.at(q, j);
                        row[static_cast<std::size_t>(2 * p + q)] = std::move(coeff);
                    }
                }
                sys.push_back(std::move(row));
            }
        }
    }
    return nullspace(std::move(sys), tol);
}

// Given an invertible planar block, the bottom row of a conjugator solves
// (T_b - delta_a I)^T s = S^T t_a - det(S) t_b for both generator pairs; the
// assembled map is returned only after the full set equality checks out.
inline std::optional<Automorphism> extend_top_block(const std::array<Scalar, 4>& s,
                                                    const std::array<GenPair, 2>& pairs,
                                                    const AutSubgroup& src, const AutSubgroup& dst,
                                                    double tol) {
    const Scalar det = s[0] * s[3] - s[1] * s[2];
    if (det.is_zero(tol)) return std::nullopt;
    SmallMatrix sys;
    std::vector<Scalar> rhs;
    for (const auto& pr : pairs) {
        const Scalar da = pr.a.at(2, 2);
        const Scalar t0 = pr.a.at(2, 0), t1 = pr.a.at(2, 1);
        const Scalar u0 = pr.b.at(2, 0), u1 = pr.b.at(2, 1);
        sys.push_back({pr.b.at(0, 0) - da, pr.b.at(1, 0)});
        sys.push_back({pr.b.at(0, 1), pr.b.at(1, 1) - da});
        rhs.push_back(s[0] * t0 + s[2] * t1 - det * u0);
        rhs.push_back(s[1] * t0 + s[3] * t1 - det * u1);
    }
    const auto sol = solve_linear(std::move(sys), rhs, tol);
    if (!sol) return std::nullopt;
    const Mat3 mat = Mat3::from_rows({{{s[0], s[1], Scalar(0)},
                                       {s[2], s[3], Scalar(0)},
                                       {(*sol)[0], (*sol)[1], det}}});
    try {
        const Automorphism sigma = Automorphism::make(mat, tol);
        if (conjugates_onto(sigma, src, dst, tol)) return sigma;
    } catch (const error&) {
    }
    return std::nullopt;
}

// Closed-form conjugator charts, split on the leading parameter of the target
// group. The bottom rows are the unique solutions of the bottom-row linear
// system for the given planar block. Every candidate is re-verified; a failing
// candidate is discarded so the caller can fall through to the general solver.
inline std::optional<Automorphism> conjugator_closed_form(
    const Scalar& a3, const Scalar& a5, const Scalar& a6, const Scalar& a1, const Scalar& a2,
    const Scalar& a6p, const Scalar& a6pp, const AutSubgroup& src, const AutSubgroup& dst,
    double tol) {
    const Scalar one(1), zero(0), two(2), four(4);
    const Scalar quarter = Scalar::rational(1, 4);
    const std::array<GenPair, 2> pairs{
        GenPair{src.elements[1].matrix(), dst.elements[1].matrix()},
        GenPair{src.elements[2].matrix(), dst.elements[2].matrix()}};
    auto attempt_full = [&](const Mat3& mat) -> std::optional<Automorphism> {
        try {
            const Automorphism sigma = Automorphism::make(mat, tol);
            if (conjugates_onto(sigma, src, dst, tol)) return sigma;
        } catch (const error&) {
        }
        return std::nullopt;
    };
    const bool a1_one = (a1 - one).is_zero(tol);
    const bool a1_minus_one = (a1 + one).is_zero(tol);

    if (!a1_one && !a1_minus_one) {
        const Scalar denom = a1 * a1 - one;
        for (int dsel = 1; dsel <= 2; ++dsel) {
            const Scalar gm = one, dl = Scalar(dsel);
            const Scalar pivot = gm * a3 + two * dl;
            if (pivot.is_zero(tol)) continue;
            const std::array<Scalar, 4> s{gm, gm * a2 / (a1 - one), dl,
                                          -(a2 * (gm * a3 + dl - a1 * dl)) / denom};
            const Scalar corner = s[0] * s[3] - s[1] * s[2];
            const Scalar gcombo = two * gm * pivot;
            const Scalar rho =
                (two * gm * a5 + gm * a3 * a6 + two * a6 * dl) * quarter +
                gcombo * (a6p * (one + a1) + a6pp * (a1 - one)) / (four * denom);
            const Scalar mu = (two * gm * a2 * a5 * (one + a1) + a2 * a6 * pivot * (a1 - one) +
                               gcombo * a2 * (a6p + a6pp)) /
                              (four * denom);
            if (auto res = attempt_full(Mat3::from_rows(
                    {{{s[0], s[1], zero}, {s[2], s[3], zero}, {rho, mu, corner}}})))
                return res;
            if (auto res = extend_top_block(s, pairs, src, dst, tol)) return res;
        }
        return std::nullopt;
    }

    if (a1_one) {
        const Scalar bt = one, gm = one;
        const std::array<Scalar, 4> s{zero, bt, gm, (a2 * gm - bt * a3) * Scalar::rational(1, 2)};
        const Scalar bot0 = gm * (a6 * Scalar::rational(1, 2) + bt * a6p / a2);
        const Scalar bot1 = (a2 * gm * a6 + two * bt * (a5 + gm * a6p + gm * a6pp)) * quarter;
        const Scalar corner = s[0] * s[3] - s[1] * s[2];
        if (auto res = attempt_full(
                Mat3::from_rows({{{s[0], s[1], zero}, {s[2], s[3], zero}, {bot0, bot1, corner}}})))
            return res;
        if (auto res = extend_top_block(s, pairs, src, dst, tol)) return res;
        return std::nullopt;
    }

    for (int dsel = 1; dsel <= 2; ++dsel) {
        const Scalar bt = one, dl = Scalar(dsel);
        const Scalar pivot = bt * a3 + two * dl;
        if (pivot.is_zero(tol)) continue;
        const std::array<Scalar, 4> s{Scalar(-2) * bt / a2, bt, bt * a3 / a2, dl};
        const Scalar bot0 = (-(a2 * bt * a5) - pivot * bt * a6pp) / (a2 * a2);
        const Scalar bot1 =
            (a2 * bt * (two * a5 + a3 * a6) + two * bt * pivot * (a6p + a6pp) + two * a2 * dl * a6) /
            (four * a2);
        const Scalar corner = s[0] * s[3] - s[1] * s[2];
        if (auto res = attempt_full(
                Mat3::from_rows({{{s[0], s[1], zero}, {s[2], s[3], zero}, {bot0, bot1, corner}}})))
            return res;
        if (auto res = extend_top_block(s, pairs, src, dst, tol)) return res;
    }
    return std::nullopt;
}

}  // namespace detail

// Conjugator between the two parametrized four-group charts: returns sigma
// with sigma^-1 Gamma7(a3,a5,a6) sigma = Gamma8(a1,a2,a6p,a6pp) as sets.
// A verified closed-form chart is tried first; otherwise the intertwining
// equations are solved blockwise for each admissible generator pairing.
inline Automorphism conjugator_gamma7_to_gamma8(const Scalar& a3, const Scalar& a5,
                                                const Scalar& a6, const Scalar& a1,
                                                const Scalar& a2, const Scalar& a6p,
                                                const Scalar& a6pp, double tol = 1e-9) {
    const AutSubgroup src = build_gamma7(a3, a5, a6, tol);
    const AutSubgroup dst = build_gamma8(a1, a2, a6p, a6pp, tol);
    if (auto fast =
            detail::conjugator_closed_form(a3, a5, a6, a1, a2, a6p, a6pp, src, dst, tol))
        return *fast;
    const std::array<std::array<std::size_t, 2>, 2> pairings{{{1, 2}, {2, 1}}};
    for (const auto& choice : pairings) {
        const std::array<detail::GenPair, 2> pairs{
            detail::GenPair{src.elements[1].matrix(), dst.elements[choice[0]].matrix()},
            detail::GenPair{src.elements[2].matrix(), dst.elements[choice[1]].matrix()}};
        const auto basis = detail::top_block_solutions(pairs, tol);
        if (basis.empty()) continue;
        const std::size_t d = basis.size();
        const int lo = -2, hi = 2;
        const std::size_t radix = static_cast<std::size_t>(hi - lo + 1);
        std::size_t combos = 1;
        for (std::size_t i = 0; i < d; ++i) combos *= radix;
        for (std::size_t it = 0; it < combos; ++it) {
            std::size_t rest = it;
            bool nonzero = false;
            std::vector<int> coeff(d, 0);
            for (std::size_t i = 0; i < d; ++i) {
                coeff[i] = lo + static_cast<int>(rest % radix);
                rest /= radix;
                nonzero = nonzero || coeff[i] != 0;
            }
            if (!nonzero) continue;
            std::array<Scalar, 4> s{Scalar(0), Scalar(0), Scalar(0), Scalar(0)};
            for (std::size_t i = 0; i < d; ++i)
                for (int e = 0; e < 4; ++e)
                    s[static_cast<std::size_t>(e)] =
                        s[static_cast<std::size_t>(e)] + Scalar(coeff[i]) * basis[i][static_cast<std::size_t>(e)];
            if (auto res = detail::extend_top_block(s, pairs, src, dst, tol)) return *res;
        }
    }
    fail(errc::no_conjugator_found,
         "no invertible conjugator solves the intertwining equations");
}

// Non-identity involutions commuting with an automorphism whose planar block
// has non-real eigenvalues. The commutant argument pins the planar part to
// minus the identity, leaving a uniquely solvable 2x2 system for the bottom
// row; the result is always a single involution.
inline std::vector<Automorphism> commuting_involutions(const Automorphism& t, double tol = 1e-9) {
    const Mat3& m = t.matrix();
    const Scalar tr = m.at(0, 0) + m.at(1, 1);
    const Scalar det2 = m.at(0, 0) * m.at(1, 1) - m.at(0, 1) * m.at(1, 0);
    const Scalar disc = tr * tr - Scalar(4) * det2;
    bool negative = false;
    if (disc.is_approx_real())
        negative = disc.to_double() < -tol;
    else
        negative = sign_of(disc) < 0;
    if (!negative)
        fail(errc::constraint_violated,
             "commutant solver requires a planar block with non-real eigenvalues");
    const Scalar delta = m.at(2, 2);
    const Scalar n00 = m.at(0, 0) - delta, n01 = m.at(1, 0);
    const Scalar n10 = m.at(0, 1), n11 = m.at(1, 1) - delta;
    const Scalar dn = n00 * n11 - n01 * n10;
    const Scalar r0 = Scalar(-2) * m.at(2, 0), r1 = Scalar(-2) * m.at(2, 1);
    const Scalar s0 = (r0 * n11 - n01 * r1) / dn;
    const Scalar s1 = (n00 * r1 - r0 * n10) / dn;
    const Mat3 nm = Mat3::from_rows({{{Scalar(-1), Scalar(0), Scalar(0)},
                                      {Scalar(0), Scalar(-1), Scalar(0)},
                                      {s0, s1, Scalar(1)}}});
    const Automorphism inv = Automorphism::make(nm, tol);
    if (!commutes(inv, t, tol) || order_of(inv, 2, tol) != 2)
        fail(errc::internal_error, "commutant solution failed verification");
    return {inv};
}

}  // namespace heisgamma
