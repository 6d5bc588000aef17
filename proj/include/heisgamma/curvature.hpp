#pragma once

// Levi-Civita connection of a left-invariant metric in the standard frame,
// the associated curvature tensor, flatness detection, and sectional
// curvature of non-degenerate planes.

#include <array>

#include "heisgamma/metric.hpp"

namespace heisgamma {

// br[i][j] = bracket of the i-th and j-th frame fields.
using BracketTable = std::array<std::array<LieVector, 3>, 3>;

inline BracketTable standard_bracket_table() {
    BracketTable t{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            LieVector ei{Scalar(i == 0 ? 1 : 0), Scalar(i == 1 ? 1 : 0), Scalar(i == 2 ? 1 : 0)};
            LieVector ej{Scalar(j == 0 ? 1 : 0), Scalar(j == 1 ? 1 : 0), Scalar(j == 2 ? 1 : 0)};
            t[i][j] = bracket(ei, ej);
        }
    return t;
}

inline BracketTable zero_bracket_table() {
    BracketTable t{};
    for (auto& row : t)
        for (auto& v : row) v = LieVector{Scalar(0), Scalar(0), Scalar(0)};
    return t;
}

// nabla[i][j] = covariant derivative of the j-th frame field along the i-th,
// expanded in the frame.  Extends bilinearly to constant-coefficient fields.
struct ConnectionTable {
    std::array<std::array<LieVector, 3>, 3> nabla;

    LieVector derivative(const LieVector& u, const LieVector& v) const {
        LieVector out{Scalar(0), Scalar(0), Scalar(0)};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) out = out + (u[i] * v[j]) * nabla[i][j];
        return out;
    }
};

// Solve the Koszul identities for the metric connection of the given frame
// brackets: 2<nabla_i X_j, X_k> = <[X_i,X_j],X_k> - <[X_j,X_k],X_i>
// + <[X_k,X_i],X_j>.  Torsion-freeness and metric compatibility are verified
// before returning.
inline ConnectionTable koszul_connection(const BilinearForm& g, const BracketTable& br,
                                         double tol = 1e-9) {
    Mat3 ginv;
    try {
        ginv = mat_inverse(g.matrix, tol);
    } catch (const error& e) {
        if (e.code() == errc::singular_matrix)
            fail(errc::degenerate_metric, "connection requires a non-degenerate form");
        throw;
    }
    const std::array<LieVector, 3> frame{LieVector{Scalar(1), Scalar(0), Scalar(0)},
                                         LieVector{Scalar(0), Scalar(1), Scalar(0)},
                                         LieVector{Scalar(0), Scalar(0), Scalar(1)}};
    ConnectionTable table;
    const Scalar half = Scalar(1) / Scalar(2);
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            LieVector rhs;
            for (int k = 0; k < 3; ++k)
                rhs[k] = half * (g.pair(br[i][j], frame[k]) - g.pair(br[j][k], frame[i]) +
                                 g.pair(br[k][i], frame[j]));
            table.nabla[i][j] = mat_apply(ginv, rhs);
        }
    }
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            if (!(table.nabla[i][j] - table.nabla[j][i] - br[i][j]).is_zero(tol))
                fail(errc::internal_error, "connection has torsion");
            for (int k = 0; k < 3; ++k) {
                const Scalar drift =
                    g.pair(table.nabla[i][j], frame[k]) + g.pair(frame[j], table.nabla[i][k]);
                if (!drift.is_zero(tol))
                    fail(errc::internal_error, "connection drifts the form");
            }
        }
    }
    return table;
}

inline ConnectionTable koszul_connection(const BilinearForm& g, double tol = 1e-9) {
    return koszul_connection(g, standard_bracket_table(), tol);
}

// r[i][j][k][l] = frame component l of R(X_i, X_j) X_k where
// R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z.
struct CurvatureTable {
    std::array<std::array<std::array<LieVector, 3>, 3>, 3> r;

    LieVector apply(const LieVector& u, const LieVector& v, const LieVector& w) const {
        LieVector out{Scalar(0), Scalar(0), Scalar(0)};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k) out = out + (u[i] * v[j] * w[k]) * r[i][j][k];
        return out;
    }
};

inline CurvatureTable curvature(const BilinearForm& g, double tol = 1e-9) {
    const BracketTable br = standard_bracket_table();
    const ConnectionTable conn = koszul_connection(g, br, tol);
    const std::array<LieVector, 3> frame{LieVector{Scalar(1), Scalar(0), Scalar(0)},
                                         LieVector{Scalar(0), Scalar(1), Scalar(0)},
                                         LieVector{Scalar(0), Scalar(0), Scalar(1)}};
    CurvatureTable table;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                table.r[i][j][k] = conn.derivative(frame[i], conn.nabla[j][k]) -
                                   conn.derivative(frame[j], conn.nabla[i][k]) -
                                   conn.derivative(br[i][j], frame[k]);
    return table;
}

inline bool is_flat(const BilinearForm& g, double tol = 1e-9) {
    const CurvatureTable table = curvature(g, tol);
    for (const auto& plane : table.r)
        for (const auto& row : plane)
            for (const LieVector& v : row)
                if (!v.is_zero(tol)) return false;
    return true;
}

// K(u, v) = <R(u,v)v, u> / (<u,u><v,v> - <u,v>^2) on a non-degenerate plane.
inline Scalar sectional(const BilinearForm& g, const LieVector& u, const LieVector& v,
                        double tol = 1e-9) {
    const Scalar denom = g.pair(u, u) * g.pair(v, v) - g.pair(u, v) * g.pair(u, v);
    if (denom.is_zero(tol))
        fail(errc::degenerate_plane, "sectional curvature needs a non-degenerate plane");
    const CurvatureTable table = curvature(g, tol);
    return g.pair(table.apply(u, v, v), u) / denom;
}

}  // namespace heisgamma
