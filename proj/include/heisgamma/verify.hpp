#pragma once

// Named, seeded verification suites.  Each check settles one documented
// identity of the classification (family orders, commutation criteria,
// subgroup closures, grading shapes, conjugacy, metric reductions, curvature)
// with deterministic sampling, and reports a plain pass/fail verdict.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "heisgamma/curvature.hpp"
#include "heisgamma/random.hpp"

namespace heisgamma {

struct CheckResult {
    std::string name;
    bool passed = false;
};

struct VerifyConfig {
    std::uint64_t seed = 0;
    int samples = 100;
    double tol = 1e-9;
};

namespace detail {

inline std::uint64_t check_salt(const std::string& name, std::uint64_t seed) {
    std::uint64_t h = 1469598103934665603ull;
    for (char c : name) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    return h ^ (seed + 0x9e3779b97f4a7c15ull);
}

inline bool mats_same(const Mat3& a, const Mat3& b, double tol) {
    return (a.has_approx_entry() || b.has_approx_entry()) ? mat_close(a, b, tol) : a == b;
}

inline double max_abs_entry(const Mat3& m) {
    double best = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) best = std::max(best, abs_approx(m.at(i, j)));
    return best;
}

// ---- family order checks ---------------------------------------------------

inline bool check_involution_squares(const VerifyConfig& cfg, Rng& rng) {
    for (int trial = 0; trial < cfg.samples; ++trial) {
        const Scalar a3 = Scalar(rng.rational()), a5 = Scalar(rng.rational()),
                     a6 = Scalar(rng.rational());
        const Scalar a1 = Scalar(rng.rational()), a2 = Scalar(rng.nonzero_rational());
        const std::vector<FamilyTag> tags{Tau1{a3, a6}, Tau2{a3, a5}, Tau3{a1, a2, a6},
                                          Tau4{a5, a6}};
        for (const FamilyTag& tag : tags) {
            const Mat3 m = make_family(tag, cfg.tol).matrix();
            if (!(mat_mul(m, m) == Mat3::identity())) return false;
        }
    }
    return true;
}

inline bool check_involution_round_trip(const VerifyConfig& cfg, Rng& rng) {
    for (int trial = 0; trial < cfg.samples; ++trial) {
        const Scalar a3 = Scalar(rng.rational()), a5 = Scalar(rng.rational()),
                     a6 = Scalar(rng.rational());
        const Scalar a1 = Scalar(rng.rational()), a2 = Scalar(rng.nonzero_rational());
        const std::vector<FamilyTag> tags{Tau1{a3, a6}, Tau2{a3, a5}, Tau3{a1, a2, a6},
                                          Tau4{a5, a6}};
        for (const FamilyTag& tag : tags) {
            const Automorphism t = make_family(tag, cfg.tol);
            const FamilyTag back = classify_involution(t, cfg.tol);
            if (family_name(back) != family_name(tag)) return false;
            if (!(make_family(back, cfg.tol).matrix() == t.matrix())) return false;
        }
    }
    return true;
}

inline bool check_order3_cube(const VerifyConfig& cfg, Rng& rng) {
    const Mat3 base = make_family(Tau5{Scalar(1), Scalar(-3), Scalar(0), Scalar(0)}).matrix();
    if (!(mat_pow(base, 3) == Mat3::identity())) return false;
    if (mat_pow(base, 1) == Mat3::identity() || mat_pow(base, 2) == Mat3::identity())
        return false;
    for (int trial = 0; trial < cfg.samples / 4 + 5; ++trial) {
        const Scalar a2 = Scalar(rng.nonzero_rational());
        const Scalar a3 = Scalar(-Rational(rng.range(1, 5))) / a2;
        const Scalar a5 = Scalar(rng.rational()), a6 = Scalar(rng.rational());
        for (bool plus : {true, false}) {
            const FamilyTag tag = plus ? FamilyTag(Tau5{a2, a3, a5, a6})
                                       : FamilyTag(Tau5Prime{a2, a3, a5, a6});
            const Mat3 m = make_family(tag, cfg.tol).matrix();
            if (!(mat_pow(m, 3) == Mat3::identity())) return false;
        }
    }
    return true;
}

inline bool check_order3_rejection(const VerifyConfig& cfg, Rng& rng) {
    for (int trial = 0; trial < cfg.samples; ++trial) {
        Scalar a2 = Scalar(rng.rational()), a3 = Scalar(rng.rational());
        const Scalar bound = Scalar::rational(-3, 4);
        if (sign_of(a2 * a3 - bound) <= 0) {
            a2 = Scalar(1);
            a3 = bound + Scalar(Rational(rng.range(1, 9), 4));
        }
        if (solve_order3_constraints(a2, a3).has_value()) return false;
    }
    return true;
}

inline bool check_order3_transport(const VerifyConfig& cfg, Rng& rng) {
    for (int trial = 0; trial < 50; ++trial) {
        const long long s = rng.range(1, 6);
        const Scalar a2 = Scalar(rng.nonzero_rational());
        const Scalar a3 = Scalar(Rational(-(3 + s * s), 4)) / a2;
        const Scalar a5 = Scalar(rng.rational()), a6 = Scalar(rng.rational());
        const auto [sq_plus, sq_minus] = tau5_square_relation(a2, a3, a5, a6, cfg.tol);
        const Mat3 plus = make_family(Tau5{a2, a3, a5, a6}, cfg.tol).matrix();
        const Mat3 minus = make_family(Tau5Prime{a2, a3, a5, a6}, cfg.tol).matrix();
        if (!(mat_mul(plus, plus) == make_family(sq_plus, cfg.tol).matrix())) return false;
        if (!(mat_mul(minus, minus) == make_family(sq_minus, cfg.tol).matrix())) return false;
    }
    return true;
}

inline bool check_order_exact(int k, const VerifyConfig& cfg, Rng& rng) {
    for (int trial = 0; trial < cfg.samples / 4 + 5; ++trial) {
        const Scalar a2 = Scalar(rng.nonzero_rational());
        // Keep a2*a3 under the admissible bound for the chosen order.
        const Scalar a3 = (k == 4 ? Scalar(-Rational(rng.range(1, 4)))
                                  : Scalar(-Rational(3 + rng.range(1, 4) * rng.range(1, 4), 4))) /
                          a2;
        const Scalar a5 = Scalar(rng.rational()), a6 = Scalar(rng.rational());
        const Mat3 m = make_family(Tau6{k, a2, a3, a5, a6}, cfg.tol).matrix();
        if (!(mat_pow(m, k) == Mat3::identity())) return false;
        for (int p = 1; p < k; ++p)
            if (mat_pow(m, p) == Mat3::identity()) return false;
    }
    return true;
}

inline bool check_order_k_approx(const VerifyConfig& cfg, Rng&) {
    for (int k : {5, 7, 8, 12}) {
        const Automorphism t = make_family(
            Tau6{k, Scalar::approx(1.0), Scalar::approx(-1.0), Scalar::approx(0.25),
                 Scalar::approx(-0.5)},
            cfg.tol);
        const Mat3 full = mat_pow(t.matrix(), k);
        if (max_abs_entry(mat_sub(full, Mat3::identity())) > 1e-9) return false;
        for (int p = 1; p < k; ++p)
            if (max_abs_entry(mat_sub(mat_pow(t.matrix(), p), Mat3::identity())) <= 1e-3)
                return false;
    }
    return true;
}

// ---- commutation criteria --------------------------------------------------

inline bool check_tau1_tau2(const VerifyConfig& cfg, Rng& rng) {
    for (int trial = 0; trial < cfg.samples; ++trial) {
        const Scalar a3 = Scalar(rng.rational()), a5 = Scalar(rng.rational()),
                     a6 = Scalar(rng.rational());
        const Automorphism t1 = make_family(Tau1{a3, a6}, cfg.tol);
        if (!commutes(t1, make_family(Tau2{-a3, a5}, cfg.tol), cfg.tol)) return false;
        const Scalar off = Scalar(rng.nonzero_rational());
        if (commutes(t1, make_family(Tau2{-a3 + off, a5}, cfg.tol), cfg.tol)) return false;
    }
    return true;
}

inline bool check_tau1_tau3(const VerifyConfig& cfg, Rng& rng) {
    for (int trial = 0; trial < cfg.samples; ++trial) {
        const Automorphism t1 =
            make_family(Tau1{Scalar(rng.rational()), Scalar(rng.rational())}, cfg.tol);
        const Automorphism t3 = make_family(
            Tau3{Scalar(rng.rational()), Scalar(rng.nonzero_rational()), Scalar(rng.rational())},
            cfg.tol);
        if (commutes(t1, t3, cfg.tol)) return false;
    }
    return true;
}

inline bool check_tau1_tau4(const VerifyConfig& cfg, Rng& rng) {
    for (int trial = 0; trial < cfg.samples; ++trial) {
        const Scalar a3 = Scalar(rng.rational()), a5 = Scalar(rng.rational()),
                     a6 = Scalar(rng.rational());
        const Automorphism t1 = make_family(Tau1{a3, a6}, cfg.tol);
        if (!commutes(t1, make_family(Tau4{a5, -a6}, cfg.tol), cfg.tol)) return false;
        const Scalar off = Scalar(rng.nonzero_rational());
        if (commutes(t1, make_family(Tau4{a5, -a6 + off}, cfg.tol), cfg.tol)) return false;
    }
    return true;
}

inline bool check_tau2_tau4(const VerifyConfig& cfg, Rng& rng) {
    const Scalar half = Scalar::rational(1, 2);
    for (int trial = 0; trial < cfg.samples; ++trial) {
        const Scalar a3 = Scalar(rng.rational()), a5 = Scalar(rng.rational()),
                     a6 = Scalar(rng.rational());
        const Automorphism t2 = make_family(Tau2{a3, a5}, cfg.tol);
        const Scalar good = -a5 - a3 * a6 * half;
        if (!commutes(t2, make_family(Tau4{good, a6}, cfg.tol), cfg.tol)) return false;
        const Scalar off = Scalar(rng.nonzero_rational());
        if (commutes(t2, make_family(Tau4{good + off, a6}, cfg.tol), cfg.tol)) return false;
    }
    return true;
}

inline bool check_tau3_tau3(const VerifyConfig& cfg, Rng& rng) {
    for (int trial = 0; trial < cfg.samples; ++trial) {
        const Scalar a1 = Scalar(rng.rational()), a2 = Scalar(rng.nonzero_rational());
        const Scalar a6 = Scalar(rng.rational()), a6p = Scalar(rng.rational());
        const Automorphism t = make_family(Tau3{a1, a2, a6}, cfg.tol);
        if (!commutes(t, make_family(Tau3{-a1, -a2, a6p}, cfg.tol), cfg.tol)) return false;
        const Scalar b1 = Scalar(rng.rational()), b2 = Scalar(rng.nonzero_rational());
        if ((b1 == -a1 && b2 == -a2) || (b1 == a1 && b2 == a2)) continue;
        if (commutes(t, make_family(Tau3{b1, b2, a6p}, cfg.tol), cfg.tol)) return false;
    }
    return true;
}

inline bool check_tau3_tau4(const VerifyConfig& cfg, Rng& rng) {
    for (int trial = 0; trial < cfg.samples; ++trial) {
        Scalar a1 = Scalar(rng.rational());
        if (a1 == Scalar(1)) a1 = Scalar(2);
        const Scalar a2 = Scalar(rng.nonzero_rational()), a6 = Scalar(rng.rational());
        const Scalar a5 = Scalar(rng.rational());
        const Automorphism t3 = make_family(Tau3{a1, a2, a6}, cfg.tol);
        const Scalar good = (a2 * a5 + Scalar(2) * a6) / (a1 - Scalar(1));
        if (!commutes(t3, make_family(Tau4{a5, good}, cfg.tol), cfg.tol)) return false;
        const Scalar off = Scalar(rng.nonzero_rational());
        if (commutes(t3, make_family(Tau4{a5, good + off}, cfg.tol), cfg.tol)) return false;
    }
    return true;
}

// ---- subgroup closures -----------------------------------------------------

inline bool check_four_group_closure(const VerifyConfig& cfg, Rng& rng) {
    for (int trial = 0; trial < cfg.samples / 4 + 5; ++trial) {
        const AutSubgroup g7 = build_gamma7(Scalar(rng.rational()), Scalar(rng.rational()),
                                            Scalar(rng.rational()), cfg.tol);
        if (g7.elements.size() != 4 || !g7.abelian || g7.label != "Z2xZ2") return false;
        if (g7.invariant_factors != std::vector<int>{2, 2}) return false;
        const AutSubgroup g8 =
            build_gamma8(Scalar(rng.rational()), Scalar(rng.nonzero_rational()),
                         Scalar(rng.rational()), Scalar(rng.rational()), cfg.tol);
        if (g8.elements.size() != 4 || !g8.abelian || g8.label != "Z2xZ2") return false;
        if (g8.invariant_factors != std::vector<int>{2, 2}) return false;
    }
    return true;
}

inline bool check_three_cycle_closure(const VerifyConfig& cfg, Rng& rng) {
    for (int trial = 0; trial < cfg.samples / 4 + 5; ++trial) {
        const Scalar a2 = Scalar(rng.nonzero_rational());
        const Scalar a3 = Scalar(-Rational(rng.range(1, 5))) / a2;
        const AutSubgroup g = build_gamma5(a2, a3, Scalar(rng.rational()),
                                           Scalar(rng.rational()), cfg.tol);
        if (g.elements.size() != 3 || !g.abelian || g.label != "Z3") return false;
        if (g.invariant_factors != std::vector<int>{3}) return false;
    }
    return true;
}

inline bool check_symmetric_group(const VerifyConfig& cfg, Rng&) {
    const Automorphism s1 = make_family(Tau1{Scalar(0), Scalar(0)}, cfg.tol);
    const Automorphism s2 = Automorphism::make(
        Mat3::from_rows({{{Scalar::rational(-1, 2), Scalar(1), Scalar(0)},
                          {Scalar::rational(-3, 4), Scalar::rational(-1, 2), Scalar(0)},
                          {Scalar(0), Scalar(0), Scalar(1)}}}),
        cfg.tol);
    const AutSubgroup g = build_subgroup(std::vector<Automorphism>{s1, s2}, 48, cfg.tol);
    if (g.elements.size() != 6 || g.abelian || g.label != "S3") return false;
    const Mat3 m1 = s1.matrix(), m2 = s2.matrix();
    if (!(mat_mul(m1, m1) == Mat3::identity())) return false;
    if (!(mat_pow(m2, 3) == Mat3::identity())) return false;
    return mat_mul(mat_mul(m1, m2), m1) == mat_mul(m2, m2);
}

// ---- gradings --------------------------------------------------------------

inline bool vec_colinear(const LieVector& u, const LieVector& v, double tol) {
    return (u[0] * v[1] - u[1] * v[0]).is_zero(tol) &&
           (u[0] * v[2] - u[2] * v[0]).is_zero(tol) &&
           (u[1] * v[2] - u[2] * v[1]).is_zero(tol);
}

inline const GradingComponent* find_component(const Grading& g, const std::string& label) {
    for (const auto& c : g.components)
        if (c.label == label) return &c;
    return nullptr;
}

inline bool check_four_group_grading_lines(const VerifyConfig& cfg, Rng& rng) {
    const Scalar half = Scalar::rational(1, 2);
    for (int trial = 0; trial < 50; ++trial) {
        const Scalar a3 = Scalar(rng.rational()), a5 = Scalar(rng.rational()),
                     a6 = Scalar(rng.rational());
        const Grading g = grading_from_subgroup(build_gamma7(a3, a5, a6, cfg.tol), cfg.tol);
        if (!g.identity_trivial) return false;
        const GradingComponent* pm = find_component(g, "+-");
        const GradingComponent* mp = find_component(g, "-+");
        const GradingComponent* mm = find_component(g, "--");
        if (!pm || !mp || !mm) return false;
        if (pm->basis.size() != 1 || mp->basis.size() != 1 || mm->basis.size() != 1)
            return false;
        if (!vec_colinear(pm->basis[0], LieVector{Scalar(0), Scalar(1), a6 * half}, cfg.tol))
            return false;
        if (!vec_colinear(mp->basis[0], LieVector{Scalar(1), -a3 * half, a5 * half}, cfg.tol))
            return false;
        if (!vec_colinear(mm->basis[0], LieVector{Scalar(0), Scalar(0), Scalar(1)}, cfg.tol))
            return false;
    }
    return true;
}

inline bool check_grading_axioms(const VerifyConfig& cfg, Rng& rng) {
    for (int trial = 0; trial < cfg.samples / 4 + 5; ++trial) {
        const Grading g = grading_from_subgroup(
            build_gamma7(Scalar(rng.rational()), Scalar(rng.rational()),
                         Scalar(rng.rational()), cfg.tol),
            cfg.tol);
        std::size_t total = 0;
        for (const auto& c : g.components) total += c.basis.size();
        if (total != 3) return false;
        // Every bracket of component lines must land in the product-label cell.
        for (const auto& ca : g.components)
            for (const auto& cb : g.components) {
                if (ca.basis.empty() || cb.basis.empty()) continue;
                const LieVector br = bracket(ca.basis[0], cb.basis[0]);
                if (br.is_zero(cfg.tol)) continue;
                std::vector<int> target;
                for (std::size_t t = 0; t < ca.exponents.size(); ++t)
                    target.push_back((ca.exponents[t] + cb.exponents[t]) % 2);
                bool placed = false;
                for (const auto& cc : g.components)
                    if (cc.exponents == target)
                        placed = !cc.basis.empty() && in_span(cc.basis, br, cfg.tol);
                if (!placed) return false;
            }
    }
    return true;
}

inline bool check_identity_component(const VerifyConfig& cfg, Rng& rng) {
    for (int trial = 0; trial < 10; ++trial) {
        const Grading g = grading_from_subgroup(
            build_gamma7(Scalar(rng.rational()), Scalar(rng.rational()),
                         Scalar(rng.rational()), cfg.tol),
            cfg.tol);
        if (!g.identity_trivial || !g.components.front().basis.empty()) return false;
    }
    const Grading cyc = grading_from_subgroup(
        build_gamma5(Scalar(1), Scalar(-3), Scalar(0), Scalar(0), cfg.tol), cfg.tol);
    return !cyc.identity_trivial;
}

// ---- conjugation -----------------------------------------------------------

inline bool check_normal_form(const VerifyConfig& cfg, Rng& rng) {
    for (int trial = 0; trial < cfg.samples; ++trial) {
        const Scalar a3 = Scalar(rng.rational()), a5 = Scalar(rng.rational()),
                     a6 = Scalar(rng.rational());
        const Automorphism s = normalize_gamma7(a3, a5, a6, cfg.tol);
        const Mat3 si = mat_inverse(s.matrix(), cfg.tol);
        const Mat3 lhs1 = mat_mul(si, mat_mul(make_family(Tau1{a3, a6}, cfg.tol).matrix(),
                                              s.matrix()));
        if (!(lhs1 == make_family(Tau1{Scalar(0), Scalar(0)}, cfg.tol).matrix())) return false;
        const Mat3 lhs2 = mat_mul(si, mat_mul(make_family(Tau2{-a3, a5}, cfg.tol).matrix(),
                                              s.matrix()));
        if (!(lhs2 == make_family(Tau2{Scalar(0), Scalar(0)}, cfg.tol).matrix())) return false;
    }
    return true;
}

inline bool check_conjugacy(const VerifyConfig& cfg, Rng& rng) {
    for (int trial = 0; trial < 25; ++trial) {
        const Scalar a3 = Scalar(rng.rational(3, 2)), a5 = Scalar(rng.rational(3, 2)),
                     a6 = Scalar(rng.rational(3, 2));
        Scalar a1(0);
        switch (trial % 3) {
            case 0: a1 = Scalar(rng.rational(3, 2)); break;
            case 1: a1 = Scalar(1); break;
            default: a1 = Scalar(-1); break;
        }
        const Scalar a2 = Scalar(rng.nonzero_rational(3, 2));
        const Scalar a6p = Scalar(rng.rational(3, 2)), a6pp = Scalar(rng.rational(3, 2));
        const Automorphism sigma =
            conjugator_gamma7_to_gamma8(a3, a5, a6, a1, a2, a6p, a6pp, cfg.tol);
        const AutSubgroup src = build_gamma7(a3, a5, a6, cfg.tol);
        const AutSubgroup dst = build_gamma8(a1, a2, a6p, a6pp, cfg.tol);
        const Mat3 si = mat_inverse(sigma.matrix(), cfg.tol);
        // sigma^-1 carries the first chart onto the second, element by element.
        std::vector<bool> used(dst.elements.size(), false);
        for (const Automorphism& a : src.elements) {
            const Mat3 image = mat_mul(si, mat_mul(a.matrix(), sigma.matrix()));
            bool found = false;
            for (std::size_t i = 0; i < dst.elements.size(); ++i) {
                if (!used[i] && image == dst.elements[i].matrix()) {
                    used[i] = found = true;
                    break;
                }
            }
            if (!found) return false;
        }
    }
    return true;
}

inline bool check_rotation_commutant(const VerifyConfig& cfg, Rng& rng) {
    for (int trial = 0; trial < 20; ++trial) {
        const Scalar a2 = Scalar(rng.nonzero_rational());
        const Scalar a3 = Scalar(-Rational(rng.range(1, 5))) / a2;
        const Automorphism t = make_family(
            Tau5{a2, a3, Scalar(rng.rational()), Scalar(rng.rational())}, cfg.tol);
        const auto sols = commuting_involutions(t, cfg.tol);
        if (sols.size() != 1) return false;
        const Automorphism& s = sols.front();
        if (s.matrix() == Mat3::identity()) return false;
        if (!(mat_mul(s.matrix(), s.matrix()) == Mat3::identity())) return false;
        if (!commutes(s, t, cfg.tol)) return false;
    }
    return true;
}

// ---- metric geometry -------------------------------------------------------

inline bool check_riemannian_reduction(const VerifyConfig& cfg, Rng& rng) {
    const Grading canonical = grading_from_subgroup(
        build_gamma7(Scalar(0), Scalar(0), Scalar(0), cfg.tol), cfg.tol);
    for (int trial = 0; trial < cfg.samples / 4 + 5; ++trial) {
        const Scalar d1 = Scalar(rng.nonzero_rational(4, 3));
        const Scalar d2 = Scalar(rng.nonzero_rational(4, 3));
        Scalar d3 = Scalar(rng.nonzero_rational(4, 3));
        if (sign_of(d3) < 0) d3 = -d3;
        const BilinearForm g = BilinearForm::diagonal(d1 * d1, d2 * d2, d3, cfg.tol);
        const ReductionResult r = canonical_reduce(g, canonical, cfg.tol);
        if (r.cls.kind != CanonicalKind::riemannian) return false;
        if (!(r.cls.lambda * r.cls.lambda == d3 / (d1 * d1 * d2 * d2))) return false;
        if (!(r.canonical.matrix ==
              Mat3::diagonal(Scalar(1), Scalar(1), r.cls.lambda * r.cls.lambda)))
            return false;
        if (!(pullback(g, r.transform, cfg.tol).matrix == r.canonical.matrix)) return false;
    }
    return true;
}

inline bool check_adaptation_classification(const VerifyConfig& cfg, Rng& rng) {
    for (int trial = 0; trial < cfg.samples; ++trial) {
        const Scalar a3 = Scalar(rng.rational(3, 2)), a5 = Scalar(rng.rational(3, 2)),
                     a6 = Scalar(rng.rational(3, 2));
        const Automorphism chart = normalize_gamma7(a3, a5, a6, cfg.tol);
        const Grading g = grading_from_subgroup(build_gamma7(a3, a5, a6, cfg.tol), cfg.tol);
        const Mat3 inv = mat_inverse(chart.matrix(), cfg.tol);
        Mat3 h = Mat3::diagonal(Scalar(1 + rng.range(0, 4)), Scalar(1 + rng.range(0, 4)),
                                Scalar(1 + rng.range(0, 4)));
        auto in_chart = [&](const Mat3& coeffs) {
            return BilinearForm::make(mat_mul(mat_transpose(inv), mat_mul(coeffs, inv)),
                                      cfg.tol);
        };
        if (check_adaptation(in_chart(h), g, cfg.tol).classification !=
            MetricClass::riemannian_adapted)
            return false;
        h.at(2, 2) = Scalar(-rng.range(1, 4));
        if (check_adaptation(in_chart(h), g, cfg.tol).classification !=
            MetricClass::lorentz_case_i)
            return false;
        h.at(0, 1) = h.at(1, 0) = Scalar(rng.range(1, 5));
        if (check_adaptation(in_chart(h), g, cfg.tol).classification !=
            MetricClass::not_adapted)
            return false;
    }
    return true;
}

inline bool check_lorentz_case_i_reduction(const VerifyConfig& cfg, Rng& rng) {
    const Grading canonical = grading_from_subgroup(
        build_gamma7(Scalar(0), Scalar(0), Scalar(0), cfg.tol), cfg.tol);
    const Signature lorentz{2, 1, 0};
    for (int trial = 0; trial < cfg.samples / 4 + 5; ++trial) {
        const Scalar d1 = Scalar(rng.nonzero_rational(4, 3));
        const Scalar d2 = Scalar(rng.nonzero_rational(4, 3));
        Scalar d3 = Scalar(rng.nonzero_rational(4, 3));
        if (sign_of(d3) < 0) d3 = -d3;
        const BilinearForm center_neg =
            BilinearForm::diagonal(d1 * d1, d2 * d2, -d3, cfg.tol);
        const ReductionResult rn = canonical_reduce(center_neg, canonical, cfg.tol);
        if (rn.cls.kind != CanonicalKind::lorentz_center_negative) return false;
        if (!(rn.canonical.signature == lorentz)) return false;
        if (!(pullback(center_neg, rn.transform, cfg.tol).matrix == rn.canonical.matrix))
            return false;
        const BilinearForm center_pos =
            BilinearForm::diagonal(-(d1 * d1), d2 * d2, d3, cfg.tol);
        const ReductionResult rp = canonical_reduce(center_pos, canonical, cfg.tol);
        if (rp.cls.kind != CanonicalKind::lorentz_center_positive) return false;
        if (!(rp.canonical.signature == lorentz)) return false;
        if (!(pullback(center_pos, rp.transform, cfg.tol).matrix == rp.canonical.matrix))
            return false;
    }
    return true;
}

inline bool check_lorentz_case_ii_reduction(const VerifyConfig& cfg, Rng& rng) {
    const Mat3 target = Mat3::from_rows({{{Scalar(1), Scalar(0), Scalar(0)},
                                          {Scalar(0), Scalar(-1), Scalar(1)},
                                          {Scalar(0), Scalar(1), Scalar(0)}}});
    for (int trial = 0; trial < cfg.samples / 4 + 5; ++trial) {
        const Scalar a3 = Scalar(rng.rational(3, 2)), a5 = Scalar(rng.rational(3, 2)),
                     a6 = Scalar(rng.rational(3, 2));
        const Automorphism chart = normalize_gamma7(a3, a5, a6, cfg.tol);
        const Grading g = grading_from_subgroup(build_gamma7(a3, a5, a6, cfg.tol), cfg.tol);
        const long long s = rng.range(1, 3);
        Mat3 h;
        h.at(0, 0) = Scalar(s * s);
        h.at(1, 1) = Scalar(rng.nonzero_rational(4, 3));
        h.at(1, 2) = h.at(2, 1) = Scalar(rng.nonzero_rational(4, 3));
        const Mat3 inv = mat_inverse(chart.matrix(), cfg.tol);
        const BilinearForm form = BilinearForm::make(
            mat_mul(mat_transpose(inv), mat_mul(h, inv)), cfg.tol);
        if (check_adaptation(form, g, cfg.tol).classification != MetricClass::lorentz_case_ii)
            return false;
        const ReductionResult r = canonical_reduce(form, g, cfg.tol);
        if (r.cls.kind != CanonicalKind::lorentz_flat) return false;
        if (!(pullback(form, r.transform, cfg.tol).matrix == target)) return false;
    }
    return true;
}

inline bool check_flatness_certificate(const VerifyConfig& cfg, Rng& rng) {
    const BilinearForm flat = BilinearForm::make(
        Mat3::from_rows({{{Scalar(1), Scalar(0), Scalar(0)},
                          {Scalar(0), Scalar(-1), Scalar(1)},
                          {Scalar(0), Scalar(1), Scalar(0)}}}),
        cfg.tol);
    const CurvatureTable table = curvature(flat, cfg.tol);
    for (const auto& plane : table.r)
        for (const auto& row : plane)
            for (const LieVector& v : row)
                if (!v.is_zero()) return false;
    if (!is_flat(flat, cfg.tol)) return false;
    if (is_flat(BilinearForm::diagonal(Scalar(1), Scalar(1), Scalar(1), cfg.tol), cfg.tol))
        return false;
    for (int trial = 0; trial < 10; ++trial) {
        const Scalar a1 = Scalar(rng.nonzero_rational(3, 2));
        const Scalar a6 = Scalar(rng.rational(3, 2)), a5 = Scalar(rng.rational(3, 2));
        const Automorphism s = Automorphism::make(
            Mat3::from_rows({{{a1, Scalar(0), Scalar(0)},
                              {Scalar(0), Scalar(1), Scalar(0)},
                              {a5, a6, a1}}}),
            cfg.tol);
        if (!is_flat(pullback(flat, s, cfg.tol), cfg.tol)) return false;
    }
    return true;
}

inline bool check_sectional_values(const VerifyConfig& cfg, Rng&) {
    const LieVector x1{Scalar(1), Scalar(0), Scalar(0)};
    const LieVector x2{Scalar(0), Scalar(1), Scalar(0)};
    const LieVector x3{Scalar(0), Scalar(0), Scalar(1)};
    for (const Scalar& lam :
         {Scalar(1), Scalar(2), Scalar(Scalar::rational(1, 2))}) {
        const Scalar l2 = lam * lam;
        const BilinearForm g = BilinearForm::diagonal(Scalar(1), Scalar(1), l2, cfg.tol);
        const Scalar quarter = Scalar::rational(1, 4);
        if (!(sectional(g, x1, x2, cfg.tol) == -(Scalar(3) * quarter * l2))) return false;
        if (!(sectional(g, x1, x3, cfg.tol) == quarter * l2)) return false;
        if (!(sectional(g, x2, x3, cfg.tol) == quarter * l2)) return false;
    }
    return true;
}

inline bool check_curvature_symmetries(const VerifyConfig& cfg, Rng& rng) {
    const std::array<LieVector, 3> frame{LieVector{Scalar(1), Scalar(0), Scalar(0)},
                                         LieVector{Scalar(0), Scalar(1), Scalar(0)},
                                         LieVector{Scalar(0), Scalar(0), Scalar(1)}};
    for (int trial = 0; trial < 10; ++trial) {
        Mat3 m;
        for (int i = 0; i < 3; ++i)
            for (int j = i; j < 3; ++j) m.at(i, j) = m.at(j, i) = Scalar(rng.rational(4, 3));
        const BilinearForm g = BilinearForm::make(m, cfg.tol);
        if (g.signature.zero != 0) continue;
        const CurvatureTable r = curvature(g, cfg.tol);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k) {
                    if (!(r.r[i][j][k] + r.r[j][k][i] + r.r[k][i][j]).is_zero()) return false;
                    if (!(r.r[i][j][k] + r.r[j][i][k]).is_zero()) return false;
                    for (int l = 0; l < 3; ++l)
                        if (!(g.pair(r.r[i][j][k], frame[l]) + g.pair(r.r[i][j][l], frame[k]))
                                 .is_zero())
                            return false;
                }
    }
    return true;
}

struct CheckEntry {
    const char* name;
    const char* suite;
    bool (*fn)(const VerifyConfig&, Rng&);
};

inline const std::vector<CheckEntry>& check_registry() {
    static const std::vector<CheckEntry> entries{
        {"involution-squares", "involutions", &check_involution_squares},
        {"involution-classification-round-trip", "involutions", &check_involution_round_trip},
        {"order3-cube-identity", "order3", &check_order3_cube},
        {"order3-constraint-rejection", "order3", &check_order3_rejection},
        {"order3-square-transport", "order3", &check_order3_transport},
        {"order-four-exact", "orderk",
         [](const VerifyConfig& c, Rng& r) { return check_order_exact(4, c, r); }},
        {"order-six-exact", "orderk",
         [](const VerifyConfig& c, Rng& r) { return check_order_exact(6, c, r); }},
        {"order-k-approx", "orderk", &check_order_k_approx},
        {"tau1-tau2-commutation", "commutation", &check_tau1_tau2},
        {"tau1-tau3-no-commutation", "commutation", &check_tau1_tau3},
        {"tau1-tau4-commutation", "commutation", &check_tau1_tau4},
        {"tau2-tau4-commutation", "commutation", &check_tau2_tau4},
        {"tau3-tau3-commutation", "commutation", &check_tau3_tau3},
        {"tau3-tau4-commutation", "commutation", &check_tau3_tau4},
        {"four-group-closure", "subgroups", &check_four_group_closure},
        {"three-cycle-closure", "subgroups", &check_three_cycle_closure},
        {"symmetric-group-relations", "subgroups", &check_symmetric_group},
        {"four-group-grading-lines", "grading", &check_four_group_grading_lines},
        {"grading-direct-sum-and-bracket", "grading", &check_grading_axioms},
        {"grading-identity-component", "grading", &check_identity_component},
        {"four-group-normal-form", "conjugation", &check_normal_form},
        {"four-group-conjugacy", "conjugation", &check_conjugacy},
        {"rotation-commutant-involutions", "mixed-order", &check_rotation_commutant},
        {"riemannian-reduction", "riemannian", &check_riemannian_reduction},
        {"adaptation-classification", "riemannian", &check_adaptation_classification},
        {"lorentz-case-i-reduction", "lorentzian", &check_lorentz_case_i_reduction},
        {"lorentz-case-ii-reduction", "lorentzian", &check_lorentz_case_ii_reduction},
        {"flatness-certificate", "curvature", &check_flatness_certificate},
        {"sectional-values", "curvature", &check_sectional_values},
        {"curvature-symmetries", "curvature", &check_curvature_symmetries},
    };
    return entries;
}

// The cross-cutting bundle: classification round trip, closures, both
// normal-form lemmas, and the metric reductions down to flatness.
inline const std::vector<std::string>& z22_suite_names() {
    static const std::vector<std::string> names{
        "involution-classification-round-trip",
        "four-group-closure",
        "four-group-normal-form",
        "four-group-conjugacy",
        "riemannian-reduction",
        "lorentz-case-i-reduction",
        "lorentz-case-ii-reduction",
        "flatness-certificate",
    };
    return names;
}

}  // namespace detail

inline std::vector<std::string> suite_names() {
    std::vector<std::string> out{"all", "z22"};
    for (const auto& e : detail::check_registry()) {
        const std::string s = e.suite;
        bool seen = false;
        for (const auto& have : out) seen = seen || have == s;
        if (!seen) out.push_back(s);
    }
    return out;
}

inline std::vector<CheckResult> run_suite(const std::string& suite, const VerifyConfig& cfg) {
    std::vector<const detail::CheckEntry*> selected;
    if (suite == "z22") {
        for (const std::string& name : detail::z22_suite_names())
            for (const auto& e : detail::check_registry())
                if (name == e.name) selected.push_back(&e);
    } else {
        for (const auto& e : detail::check_registry())
            if (suite == "all" || suite == e.suite) selected.push_back(&e);
    }
    if (selected.empty()) fail(errc::malformed_input, "unknown suite \"" + suite + "\"");
    std::vector<CheckResult> results;
    for (const auto* e : selected) {
        Rng rng(detail::check_salt(e->name, cfg.seed));
        bool ok = false;
        try {
            ok = e->fn(cfg, rng);
        } catch (const error&) {
            ok = false;
        }
        results.push_back(CheckResult{e->name, ok});
    }
    return results;
}

}  // namespace heisgamma
