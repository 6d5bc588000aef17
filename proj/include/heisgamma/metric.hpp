#pragma once

// Symmetric bilinear forms on the algebra, their compatibility with a given
// grading (orthogonality, definiteness, degenerate-component analysis), frame
// changes, and reduction to canonical representatives by automorphisms.

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "heisgamma/grading.hpp"

namespace heisgamma {

struct BilinearForm {
    Mat3 matrix;
    Signature signature;

    // Validates symmetry and real entries, and fixes the inertia up front.
    static BilinearForm make(const Mat3& m, double tol = 1e-9) {
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                if (m.at(i, j).is_approx_complex())
                    fail(errc::malformed_input, "bilinear forms take real entries");
                const Scalar diff = m.at(i, j) - m.at(j, i);
                if (!diff.is_zero(m.has_approx_entry() ? tol : 0.0))
                    fail(errc::malformed_input, "bilinear form matrix must be symmetric");
            }
        }
        return BilinearForm{m, signature_of(m, tol)};
    }

    static BilinearForm diagonal(const Scalar& a, const Scalar& b, const Scalar& c,
                                 double tol = 1e-9) {
        return make(Mat3::diagonal(a, b, c), tol);
    }

    Scalar pair(const LieVector& u, const LieVector& v) const {
        const LieVector gv = mat_apply(matrix, v);
        return u[0] * gv[0] + u[1] * gv[1] + u[2] * gv[2];
    }
};

enum class MetricClass {
    riemannian_adapted,
    lorentz_case_i,
    lorentz_case_ii,
    not_adapted,
};

inline const char* metric_class_name(MetricClass c) {
    switch (c) {
        case MetricClass::riemannian_adapted: return "RiemannianAdapted";
        case MetricClass::lorentz_case_i: return "LorentzCaseI";
        case MetricClass::lorentz_case_ii: return "LorentzCaseII";
        default: return "NotAdapted";
    }
}

// Restrictions of a form to the one-dimensional components of a grading plus
// the derived classification. `lorentz_pairs` lists every component whose
// two-dimensional block with the degenerate component has signature (1,1).
struct AdaptationReport {
    std::vector<std::string> component_labels;
    std::vector<Scalar> component_norms;
    std::vector<std::vector<Scalar>> cross_terms;
    MetricClass classification = MetricClass::not_adapted;
    std::string degenerate_label;
    std::vector<std::string> lorentz_pairs;
};

namespace detail {

inline int sign_with_tol(const Scalar& x, double tol) {
    if (x.is_approx_real()) {
        const double v = x.to_double();
        if (v > tol) return 1;
        if (v < -tol) return -1;
        return 0;
    }
    return sign_of(x);
}

}  // namespace detail

inline AdaptationReport check_adaptation(const BilinearForm& g, const Grading& grading,
                                         double tol = 1e-9) {
    if (!grading.identity_trivial)
        fail(errc::invalid_grading, "adaptation analysis requires a trivial label-zero component");
    std::vector<const GradingComponent*> comps;
    for (const auto& c : grading.components) {
        if (c.basis.empty()) continue;
        if (c.basis.size() != 1)
            fail(errc::invalid_grading, "adaptation analysis requires line components");
        for (const Scalar& entry : {c.basis[0][0], c.basis[0][1], c.basis[0][2]})
            if (entry.is_approx_complex())
                fail(errc::invalid_grading, "adaptation analysis requires a real grading");
        comps.push_back(&c);
    }
    if (comps.size() != 3)
        fail(errc::invalid_grading, "adaptation analysis requires three line components");

    AdaptationReport report;
    const std::size_t n = comps.size();
    report.cross_terms.assign(n, std::vector<Scalar>(n, Scalar(0)));
    for (std::size_t i = 0; i < n; ++i) {
        report.component_labels.push_back(comps[i]->label);
        report.component_norms.push_back(g.pair(comps[i]->basis[0], comps[i]->basis[0]));
        for (std::size_t j = 0; j < n; ++j)
            report.cross_terms[i][j] = g.pair(comps[i]->basis[0], comps[j]->basis[0]);
    }

    std::vector<std::size_t> degenerate;
    for (std::size_t i = 0; i < n; ++i)
        if (detail::sign_with_tol(report.component_norms[i], tol) == 0) degenerate.push_back(i);
    auto orthogonal_among = [&](const std::vector<std::size_t>& idx) {
        for (std::size_t a = 0; a < idx.size(); ++a)
            for (std::size_t b = a + 1; b < idx.size(); ++b)
                if (!report.cross_terms[idx[a]][idx[b]].is_zero(tol)) return false;
        return true;
    };
    std::vector<std::size_t> all_idx;
    for (std::size_t i = 0; i < n; ++i) all_idx.push_back(i);

    // A single degenerate line with non-degenerate mutually orthogonal partners
    // and at least one hyperbolic (1,1) pairing, inside an overall (2,1) form.
    if (degenerate.size() == 1) {
        std::vector<std::size_t> others;
        for (std::size_t i = 0; i < n; ++i)
            if (i != degenerate[0]) others.push_back(i);
        const bool partners_ok = orthogonal_among(others);
        std::vector<std::string> pairs;
        for (std::size_t i : others)
            if (!report.cross_terms[degenerate[0]][i].is_zero(tol))
                pairs.push_back(report.component_labels[i]);
        if (partners_ok && !pairs.empty() && g.signature.positive == 2 &&
            g.signature.negative == 1) {
            report.classification = MetricClass::lorentz_case_ii;
            report.degenerate_label = report.component_labels[degenerate[0]];
            report.lorentz_pairs = std::move(pairs);
            return report;
        }
        return report;
    }

    if (degenerate.empty() && orthogonal_among(all_idx)) {
        bool all_positive = true;
        for (std::size_t i = 0; i < n; ++i)
            all_positive = all_positive && detail::sign_with_tol(report.component_norms[i], tol) > 0;
        if (all_positive) {
            report.classification = MetricClass::riemannian_adapted;
            return report;
        }
        if (g.signature.positive == 2 && g.signature.negative == 1) {
            report.classification = MetricClass::lorentz_case_i;
            return report;
        }
    }
    return report;
}

// The form in the sigma-transformed frame.
inline BilinearForm pullback(const BilinearForm& g, const Automorphism& sigma,
                             double tol = 1e-9) {
    const Mat3& s = sigma.matrix();
    return BilinearForm::make(mat_mul(mat_transpose(s), mat_mul(g.matrix, s)), tol);
}

enum class CanonicalKind {
    riemannian,               // diag(1, 1, lambda^2)
    lorentz_center_negative,  // diag(1, 1, -lambda^2)
    lorentz_center_positive,  // diag(-1, 1, lambda^2)
    lorentz_flat,             // [[1,0,0],[0,-1,1],[0,1,0]]
};

inline const char* canonical_kind_name(CanonicalKind k) {
    switch (k) {
        case CanonicalKind::riemannian: return "Riem";
        case CanonicalKind::lorentz_center_negative: return "LorentzCenterNeg";
        case CanonicalKind::lorentz_center_positive: return "LorentzCenterPos";
        default: return "LorentzFlat";
    }
}

struct CanonicalClass {
    CanonicalKind kind;
    Scalar lambda;  // positive scale; zero for the flat class
};

struct ReductionResult {
    BilinearForm canonical;
    Automorphism transform;
    CanonicalClass cls;
};

namespace detail {

inline Mat3 from_columns(const LieVector& c0, const LieVector& c1, const LieVector& c2) {
    return Mat3::from_rows(
        {{{c0[0], c1[0], c2[0]}, {c0[1], c1[1], c2[1]}, {c0[2], c1[2], c2[2]}}});
}

// Basis of the g-orthogonal complement of a vector.
inline std::vector<LieVector> orthogonal_complement(const BilinearForm& g, const LieVector& v,
                                                    double tol) {
    const LieVector row = mat_apply(mat_transpose(g.matrix), v);
    SmallMatrix sys{{row[0], row[1], row[2]}};
    std::vector<LieVector> out;
    for (auto& k : nullspace(std::move(sys), tol)) out.push_back(LieVector{k[0], k[1], k[2]});
    return out;
}

[[noreturn]] inline void reduction_mode_failure() {
    fail(errc::mode_unavailable,
         "reduction requires square roots outside one quadratic extension");
}

}  // namespace detail

// Reduce an adapted form to its canonical representative. The returned
// automorphism sigma satisfies pullback(g, sigma) = canonical exactly (or
// within tolerance for approximate scalars).
inline ReductionResult canonical_reduce(const BilinearForm& g, const Grading& grading,
                                        double tol = 1e-9) {
    const AdaptationReport report = check_adaptation(g, grading, tol);
    if (report.classification == MetricClass::not_adapted)
        fail(errc::not_adapted, "form is not adapted to the grading");

    const LieVector x3{Scalar(0), Scalar(0), Scalar(1)};
    const Scalar center_norm = g.matrix.at(2, 2);
    const int center_sign = detail::sign_with_tol(center_norm, tol);

    try {
        if (center_sign != 0) {
            // Orthogonal complement of the central line, straightened into an
            // orthogonal pair whose bracket closes the new frame.
            const auto comp = detail::orthogonal_complement(g, x3, tol);
            if (comp.size() != 2) fail(errc::internal_error, "central complement is not a plane");
            const std::array<std::pair<LieVector, LieVector>, 4> candidates{
                std::pair<LieVector, LieVector>{comp[0], comp[1]},
                {comp[1], comp[0]},
                {comp[0] + comp[1], comp[1]},
                {comp[0] - comp[1], comp[1]}};
            std::optional<std::pair<LieVector, LieVector>> chosen;
            for (const auto& cand : candidates) {
                if (detail::sign_with_tol(g.pair(cand.first, cand.first), tol) != 0) {
                    chosen = cand;
                    break;
                }
            }
            if (!chosen) fail(errc::internal_error, "complement restriction is identically zero");
            const LieVector z1 = chosen->first;
            const LieVector z2 =
                chosen->second - (g.pair(z1, chosen->second) / g.pair(z1, z1)) * z1;
            const LieVector z3 = bracket(z1, z2);
            if (z3.is_zero(tol)) fail(errc::internal_error, "complement brackets collapse");
            const Automorphism straighten =
                Automorphism::make(detail::from_columns(z1, z2, z3), tol);
            const BilinearForm diag = pullback(g, straighten, tol);
            Scalar b1 = diag.matrix.at(0, 0), b2 = diag.matrix.at(1, 1),
                   b3 = diag.matrix.at(2, 2);
            Automorphism arranged = straighten;
            if (detail::sign_with_tol(b1, tol) > 0 && detail::sign_with_tol(b2, tol) < 0) {
                const Automorphism swap = Automorphism::make(
                    Mat3::from_rows({{{Scalar(0), Scalar(1), Scalar(0)},
                                      {Scalar(1), Scalar(0), Scalar(0)},
                                      {Scalar(0), Scalar(0), Scalar(-1)}}}),
                    tol);
                arranged = compose(straighten, swap, tol);
                std::swap(b1, b2);
            }
            const int s1 = detail::sign_with_tol(b1, tol), s2 = detail::sign_with_tol(b2, tol),
                      s3 = detail::sign_with_tol(b3, tol);
            CanonicalKind kind;
            Scalar lambda_sq(0);
            Scalar first_slot(1);
            if (s1 > 0 && s2 > 0 && s3 > 0) {
                kind = CanonicalKind::riemannian;
                lambda_sq = b3 / (b1 * b2);
            } else if (s1 > 0 && s2 > 0 && s3 < 0) {
                kind = CanonicalKind::lorentz_center_negative;
                lambda_sq = -(b3 / (b1 * b2));
            } else if (s1 < 0 && s2 > 0 && s3 > 0) {
                kind = CanonicalKind::lorentz_center_positive;
                lambda_sq = b3 / (-(b1)*b2);
                b1 = -b1;
                first_slot = Scalar(-1);
            } else {
                fail(errc::internal_error, "inertia pattern escapes the canonical families");
            }
            const Scalar s = Scalar(1) / sqrt_scalar(b1);
            const Scalar t = Scalar(1) / sqrt_scalar(b2);
            const Automorphism rescale =
                Automorphism::make(Mat3::diagonal(s, t, s * t), tol);
            const Automorphism total = compose(arranged, rescale, tol);
            const Mat3 canonical_matrix =
                Mat3::diagonal(first_slot, Scalar(1),
                               kind == CanonicalKind::lorentz_center_negative ? -lambda_sq
                                                                              : lambda_sq);
            const BilinearForm canonical = BilinearForm::make(canonical_matrix, tol);
            if (!detail::same_matrix(pullback(g, total, tol).matrix, canonical_matrix, tol))
                fail(errc::internal_error, "reduction failed its own verification");
            return ReductionResult{canonical, total,
                                   CanonicalClass{kind, sqrt_scalar(lambda_sq)}};
        }

        // Degenerate central line: build the null-frame normal form.
        const auto iso = detail::orthogonal_complement(g, x3, tol);
        if (iso.size() != 2) fail(errc::internal_error, "central complement is not a plane");
        std::optional<LieVector> z1_raw;
        for (const auto& k : iso)
            if (!(k[0].is_zero(tol) && k[1].is_zero(tol))) {
                z1_raw = k;
                break;
            }
        if (!z1_raw) fail(errc::internal_error, "no transversal direction orthogonal to center");
        const Scalar a1 = g.pair(*z1_raw, *z1_raw);
        if (detail::sign_with_tol(a1, tol) <= 0)
            fail(errc::internal_error, "transversal norm is not positive");
        LieVector z1 = (Scalar(1) / sqrt_scalar(a1)) * (*z1_raw);
        const auto perp = detail::orthogonal_complement(g, z1, tol);
        std::optional<LieVector> b_vec;
        for (const auto& cand : {perp[0], perp[1], perp[0] + perp[1]})
            if (!g.pair(cand, x3).is_zero(tol)) {
                b_vec = cand;
                break;
            }
        if (!b_vec) fail(errc::internal_error, "central pairing vanished unexpectedly");
        const Scalar b = g.pair(*b_vec, x3);
        Scalar c = z1[0] * (*b_vec)[1] - z1[1] * (*b_vec)[0];
        if (detail::sign_with_tol(b * c, tol) < 0) {
            z1 = Scalar(-1) * z1;
            c = -c;
        }
        if ((b * c).is_zero(tol)) fail(errc::internal_error, "null-frame pairing is degenerate");
        const Scalar p = Scalar(1) / sqrt_scalar(b * c);
        const Scalar q = (Scalar(-1) - p * p * g.pair(*b_vec, *b_vec)) / (Scalar(2) * p * b);
        const LieVector z2 = p * (*b_vec) + q * x3;
        const LieVector z3 = bracket(z1, z2);
        const Automorphism total = Automorphism::make(detail::from_columns(z1, z2, z3), tol);
        const Mat3 canonical_matrix = Mat3::from_rows({{{Scalar(1), Scalar(0), Scalar(0)},
                                                        {Scalar(0), Scalar(-1), Scalar(1)},
                                                        {Scalar(0), Scalar(1), Scalar(0)}}});
        if (!detail::same_matrix(pullback(g, total, tol).matrix, canonical_matrix, tol))
            fail(errc::internal_error, "reduction failed its own verification");
        return ReductionResult{BilinearForm::make(canonical_matrix, tol), total,
                               CanonicalClass{CanonicalKind::lorentz_flat, Scalar(0)}};
    } catch (const error& e) {
        if (e.code() == errc::incompatible_radicands || e.code() == errc::mode_unavailable)
            detail::reduction_mode_failure();
        throw;
    }
}

}  // namespace heisgamma
