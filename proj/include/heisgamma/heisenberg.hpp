#pragma once

#include <optional>

#include "heisgamma/linalg.hpp"

namespace heisgamma {

// Coordinates are always over the fixed basis X1, X2, X3 with [X1, X2] = X3
// and X3 central, so the bracket needs no structure-constant plumbing.
using LieVector = Vec3;

inline LieVector bracket(const LieVector& x, const LieVector& y) {
    return {Scalar(0), Scalar(0), x[0] * y[1] - x[1] * y[0]};
}

/**
 * A linear form in the basis dual to X1, X2, X3.
 */
struct DualForm {
    Vec3 coeff;

    Scalar pair(const LieVector& v) const {
        return coeff[0] * v[0] + coeff[1] * v[1] + coeff[2] * v[2];
    }
};

/**
 * An automorphism of the algebra.  Every automorphism fixes the shape
 *
 *     [ a1  a2  0 ]
 *     [ a3  a4  0 ]           D = a1*a4 - a2*a3 != 0
 *     [ a5  a6  D ]
 *
 * and the constructor re-derives and enforces it, so carrying a validated
 * Automorphism is proof of the shape.  In approximate mode the near-zero
 * corner entries are snapped to exact zeros to keep compositions stable.
 */
class Automorphism {
  public:
    static Automorphism make(const Mat3& m, double tol = 1e-9) {
        Mat3 a = m;
        const bool approx = a.has_approx_entry();
        const double ztol = approx ? tol : 0.0;
        if (!a.at(0, 2).is_zero(ztol) || !a.at(1, 2).is_zero(ztol))
            fail(errc::not_automorphism, "central column entries must vanish");
        Scalar delta = a.at(0, 0) * a.at(1, 1) - a.at(0, 1) * a.at(1, 0);
        if (!(a.at(2, 2) - delta).is_zero(ztol))
            fail(errc::not_automorphism, "corner entry must equal the top-block determinant");
        if (delta.is_zero(ztol)) fail(errc::singular_matrix, "top-block determinant vanishes");
        if (approx) {
            a.at(0, 2) = Scalar(0);
            a.at(1, 2) = Scalar(0);
            a.at(2, 2) = delta;
        }
        Automorphism out(a, delta);
        // The shape already forces bracket preservation; keep the check as a
        // safety net against representation bugs.
        LieVector lhs = bracket(out.apply({Scalar(1), Scalar(0), Scalar(0)}),
                                out.apply({Scalar(0), Scalar(1), Scalar(0)}));
        LieVector rhs = out.apply({Scalar(0), Scalar(0), Scalar(1)});
        if (!(lhs - rhs).is_zero(approx ? tol : 0.0))
            fail(errc::internal_error, "automorphism fails to preserve the bracket");
        return out;
    }

    static Automorphism identity() { return Automorphism(Mat3::identity(), Scalar(1)); }

    const Mat3& matrix() const { return m_; }
    const Scalar& delta() const { return delta_; }

    LieVector apply(const LieVector& v) const { return mat_apply(m_, v); }

    friend bool operator==(const Automorphism& a, const Automorphism& b) {
        return a.m_ == b.m_;
    }

  private:
    Automorphism(Mat3 m, Scalar delta) : m_(std::move(m)), delta_(std::move(delta)) {}

    Mat3 m_;
    Scalar delta_;
};

inline Automorphism make_automorphism(const Mat3& m, double tol = 1e-9) {
    return Automorphism::make(m, tol);
}

inline Automorphism compose(const Automorphism& a, const Automorphism& b, double tol = 1e-9) {
    return Automorphism::make(mat_mul(a.matrix(), b.matrix()), tol);
}

inline Automorphism inverse(const Automorphism& a, double tol = 1e-9) {
    return Automorphism::make(mat_inverse(a.matrix(), tol), tol);
}

inline bool commutes(const Automorphism& a, const Automorphism& b, double tol = 1e-9) {
    Mat3 ab = mat_mul(a.matrix(), b.matrix());
    Mat3 ba = mat_mul(b.matrix(), a.matrix());
    if (ab.has_approx_entry()) return mat_close(ab, ba, tol);
    return ab == ba;
}

inline bool is_identity(const Automorphism& a, double tol = 1e-9) {
    if (a.matrix().has_approx_entry()) return mat_close(a.matrix(), Mat3::identity(), tol);
    return a.matrix() == Mat3::identity();
}

// Smallest k in [1, bound] with a^k = id, or nullopt if none exists there.
inline std::optional<int> order_of(const Automorphism& a, int bound = 24, double tol = 1e-9) {
    Mat3 p = a.matrix();
    for (int k = 1; k <= bound; ++k) {
        if (p.has_approx_entry() ? mat_close(p, Mat3::identity(), tol)
                                 : p == Mat3::identity())
            return k;
        p = mat_mul(p, a.matrix());
    }
    return std::nullopt;
}

}  // namespace heisgamma
