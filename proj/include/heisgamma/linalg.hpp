#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "heisgamma/scalar.hpp"

namespace heisgamma {

struct Vec3 {
    std::array<Scalar, 3> c{Scalar(0), Scalar(0), Scalar(0)};

    Vec3() = default;
    Vec3(Scalar x, Scalar y, Scalar z) : c{std::move(x), std::move(y), std::move(z)} {}

    Scalar& operator[](int i) { return c[i]; }
    const Scalar& operator[](int i) const { return c[i]; }

    bool is_zero(double tol = 0.0) const {
        return c[0].is_zero(tol) && c[1].is_zero(tol) && c[2].is_zero(tol);
    }

    friend Vec3 operator+(const Vec3& u, const Vec3& v) {
        return {u[0] + v[0], u[1] + v[1], u[2] + v[2]};
    }
    friend Vec3 operator-(const Vec3& u, const Vec3& v) {
        return {u[0] - v[0], u[1] - v[1], u[2] - v[2]};
    }
    friend Vec3 operator*(const Scalar& s, const Vec3& v) {
        return {s * v[0], s * v[1], s * v[2]};
    }
    friend bool operator==(const Vec3& u, const Vec3& v) {
        return u[0] == v[0] && u[1] == v[1] && u[2] == v[2];
    }
};

struct Mat3 {
    std::array<Scalar, 9> e;

    Mat3() : e{Scalar(0), Scalar(0), Scalar(0), Scalar(0), Scalar(0),
               Scalar(0), Scalar(0), Scalar(0), Scalar(0)} {}

    static Mat3 from_rows(std::array<std::array<Scalar, 3>, 3> rows) {
        Mat3 m;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) m.at(i, j) = rows[i][j];
        return m;
    }
    static Mat3 identity() {
        Mat3 m;
        m.at(0, 0) = m.at(1, 1) = m.at(2, 2) = Scalar(1);
        return m;
    }
    static Mat3 diagonal(const Scalar& a, const Scalar& b, const Scalar& c) {
        Mat3 m;
        m.at(0, 0) = a;
        m.at(1, 1) = b;
        m.at(2, 2) = c;
        return m;
    }

    Scalar& at(int i, int j) { return e[3 * i + j]; }
    const Scalar& at(int i, int j) const { return e[3 * i + j]; }

    Vec3 row(int i) const { return {at(i, 0), at(i, 1), at(i, 2)}; }
    Vec3 col(int j) const { return {at(0, j), at(1, j), at(2, j)}; }

    bool has_approx_entry() const {
        for (const Scalar& s : e)
            if (!s.is_exact()) return true;
        return false;
    }

    friend bool operator==(const Mat3& a, const Mat3& b) { return a.e == b.e; }
};

inline Mat3 mat_add(const Mat3& a, const Mat3& b) {
    Mat3 r;
    for (int i = 0; i < 9; ++i) r.e[i] = a.e[i] + b.e[i];
    return r;
}

inline Mat3 mat_sub(const Mat3& a, const Mat3& b) {
    Mat3 r;
    for (int i = 0; i < 9; ++i) r.e[i] = a.e[i] - b.e[i];
    return r;
}

inline Mat3 mat_scale(const Scalar& s, const Mat3& a) {
    Mat3 r;
    for (int i = 0; i < 9; ++i) r.e[i] = s * a.e[i];
    return r;
}

inline Mat3 mat_mul(const Mat3& a, const Mat3& b) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Scalar acc = a.at(i, 0) * b.at(0, j);
            acc += a.at(i, 1) * b.at(1, j);
            acc += a.at(i, 2) * b.at(2, j);
            r.at(i, j) = acc;
        }
    return r;
}

inline Vec3 mat_apply(const Mat3& a, const Vec3& v) {
    Vec3 r;
    for (int i = 0; i < 3; ++i)
        r[i] = a.at(i, 0) * v[0] + a.at(i, 1) * v[1] + a.at(i, 2) * v[2];
    return r;
}

inline Mat3 mat_transpose(const Mat3& a) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r.at(i, j) = a.at(j, i);
    return r;
}

inline Scalar mat_trace(const Mat3& a) { return a.at(0, 0) + a.at(1, 1) + a.at(2, 2); }

inline Scalar mat_det(const Mat3& a) {
    return a.at(0, 0) * (a.at(1, 1) * a.at(2, 2) - a.at(1, 2) * a.at(2, 1)) -
           a.at(0, 1) * (a.at(1, 0) * a.at(2, 2) - a.at(1, 2) * a.at(2, 0)) +
           a.at(0, 2) * (a.at(1, 0) * a.at(2, 1) - a.at(1, 1) * a.at(2, 0));
}

inline Mat3 mat_inverse(const Mat3& a, double tol = 1e-9) {
    Scalar d = mat_det(a);
    if (d.is_zero(tol)) fail(errc::singular_matrix, "matrix is not invertible");
    Mat3 adj;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            int r0 = (i + 1) % 3, r1 = (i + 2) % 3;
            int c0 = (j + 1) % 3, c1 = (j + 2) % 3;
            // adj(j,i) = cofactor(i,j); the cyclic index choice absorbs the sign.
            adj.at(j, i) = a.at(r0, c0) * a.at(r1, c1) - a.at(r0, c1) * a.at(r1, c0);
        }
    for (int i = 0; i < 9; ++i) adj.e[i] = adj.e[i] / d;
    return adj;
}

// k-th power by repeated squaring; k = 0 gives the identity.
inline Mat3 mat_pow(const Mat3& a, long long k) {
    if (k < 0) fail(errc::malformed_input, "negative matrix power");
    Mat3 result = Mat3::identity();
    Mat3 base = a;
    while (k > 0) {
        if (k & 1) result = mat_mul(result, base);
        base = mat_mul(base, base);
        k >>= 1;
    }
    return result;
}

inline double mat_approx_norm(const Mat3& a) {
    double m = 0.0;
    for (const Scalar& s : a.e) m = std::max(m, abs_approx(s));
    return m;
}

inline bool mat_close(const Mat3& a, const Mat3& b, double tol) {
    return mat_approx_norm(mat_sub(a, b)) <= tol;
}

// ---- row reduction on small dense systems ---------------------------------

using SmallMatrix = std::vector<std::vector<Scalar>>;

namespace detail {

inline bool any_approx(const SmallMatrix& m) {
    for (const auto& row : m)
        for (const Scalar& s : row)
            if (!s.is_exact()) return true;
    return false;
}

}  // namespace detail

// In-place reduced row echelon form.  Exact entries pivot on the first
// non-zero; approximate systems use partial pivoting with the tolerance as
// the zero cutoff.  Returns the pivot column list.
inline std::vector<int> rref(SmallMatrix& m, double tol = 1e-9) {
    if (m.empty()) return {};
    const int rows = static_cast<int>(m.size());
    const int cols = static_cast<int>(m[0].size());
    const bool approx = detail::any_approx(m);
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int pivot = -1;
        if (approx) {
            double best = tol;
            for (int i = r; i < rows; ++i) {
                double mag = abs_approx(m[i][c]);
                if (mag > best) {
                    best = mag;
                    pivot = i;
                }
            }
        } else {
            for (int i = r; i < rows; ++i)
                if (!m[i][c].is_zero()) {
                    pivot = i;
                    break;
                }
        }
        if (pivot < 0) continue;
        std::swap(m[r], m[pivot]);
        Scalar inv = Scalar(1) / m[r][c];
        for (int j = c; j < cols; ++j) m[r][j] = inv * m[r][j];
        for (int i = 0; i < rows; ++i) {
            if (i == r || m[i][c].is_zero(approx ? tol : 0.0)) continue;
            Scalar f = m[i][c];
            for (int j = c; j < cols; ++j) m[i][j] = m[i][j] - f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

// Canonical null-space basis of an m x n system (free variable set to one,
// pivot variables back-substituted from the reduced form).
inline std::vector<std::vector<Scalar>> nullspace(SmallMatrix m, double tol = 1e-9) {
    if (m.empty()) return {};
    const int cols = static_cast<int>(m[0].size());
    std::vector<int> pivots = rref(m, tol);
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<std::vector<Scalar>> basis;
    for (int f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Scalar> v(cols, Scalar(0));
        v[f] = Scalar(1);
        for (size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m[i][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

inline int rank(SmallMatrix m, double tol = 1e-9) {
    return static_cast<int>(rref(m, tol).size());
}

// Particular solution of A x = b (free variables zero), or nullopt when the
// system is inconsistent.
inline std::optional<std::vector<Scalar>> solve_linear(SmallMatrix a,
                                                       const std::vector<Scalar>& b,
                                                       double tol = 1e-9) {
    const int rows = static_cast<int>(a.size());
    const int cols = rows ? static_cast<int>(a[0].size()) : 0;
    for (int i = 0; i < rows; ++i) a[i].push_back(b[i]);
    std::vector<int> pivots = rref(a, tol);
    // A pivot in the augmented column marks an inconsistent system.
    if (!pivots.empty() && pivots.back() == cols) return std::nullopt;
    std::vector<Scalar> x(cols, Scalar(0));
    for (size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = a[i][cols];
    return x;
}

// Basis of the null space of a 3x3 matrix, as column vectors.
inline std::vector<Vec3> kernel(const Mat3& a, double tol = 1e-9) {
    SmallMatrix m(3, std::vector<Scalar>(3));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m[i][j] = a.at(i, j);
    std::vector<Vec3> basis;
    for (auto& v : nullspace(std::move(m), tol)) basis.push_back(Vec3{v[0], v[1], v[2]});
    return basis;
}

// ---- congruence ------------------------------------------------------------

struct CongruenceResult {
    Mat3 diagonal;   // D = P^T G P
    Mat3 transform;  // P, invertible
};

struct Signature {
    int positive = 0;
    int negative = 0;
    int zero = 0;

    friend bool operator==(const Signature& a, const Signature& b) {
        return a.positive == b.positive && a.negative == b.negative && a.zero == b.zero;
    }
};

// Lagrange diagonalization of a symmetric bilinear form by congruence.
// Exact over the scalar tower; tolerance only matters for approximate input.
inline CongruenceResult congruent_diagonalize(const Mat3& g, double tol = 1e-9) {
    const double ztol = g.has_approx_entry() ? tol : 0.0;
    Mat3 d = g;
    Mat3 p = Mat3::identity();

    auto add_col_multiple = [&](Mat3& m, int dst, int src, const Scalar& f) {
        for (int i = 0; i < 3; ++i) m.at(i, dst) = m.at(i, dst) + f * m.at(i, src);
    };
    auto add_row_multiple = [&](Mat3& m, int dst, int src, const Scalar& f) {
        for (int j = 0; j < 3; ++j) m.at(dst, j) = m.at(dst, j) + f * m.at(src, j);
    };
    auto swap_basis = [&](int i, int j) {
        for (int k = 0; k < 3; ++k) std::swap(d.at(i, k), d.at(j, k));
        for (int k = 0; k < 3; ++k) std::swap(d.at(k, i), d.at(k, j));
        for (int k = 0; k < 3; ++k) std::swap(p.at(k, i), p.at(k, j));
    };

    for (int i = 0; i < 3; ++i) {
        if (d.at(i, i).is_zero(ztol)) {
            int j = -1;
            for (int k = i + 1; k < 3; ++k)
                if (!d.at(k, k).is_zero(ztol)) {
                    j = k;
                    break;
                }
            if (j >= 0) {
                swap_basis(i, j);
            } else {
                for (int k = i + 1; k < 3; ++k)
                    if (!d.at(i, k).is_zero(ztol)) {
                        j = k;
                        break;
                    }
                if (j < 0) continue;  // fully decoupled null direction
                // e_i += e_j turns the off-diagonal coupling into a diagonal
                // entry (2 d_ij != 0 since the characteristic is zero).
                add_col_multiple(d, i, j, Scalar(1));
                add_row_multiple(d, i, j, Scalar(1));
                add_col_multiple(p, i, j, Scalar(1));
            }
        }
        for (int j = i + 1; j < 3; ++j) {
            if (d.at(i, j).is_zero(ztol)) continue;
            Scalar f = -(d.at(i, j) / d.at(i, i));
            add_col_multiple(d, j, i, f);
            add_row_multiple(d, j, i, f);
            add_col_multiple(p, j, i, f);
        }
    }
    // Scrub numerical crumbs off the diagonalized form.
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (i != j) d.at(i, j) = Scalar(0);
    return {d, p};
}

inline Signature signature_of(const Mat3& g, double tol = 1e-9) {
    Mat3 d = congruent_diagonalize(g, tol).diagonal;
    const double ztol = g.has_approx_entry() ? tol : 0.0;
    Signature s;
    for (int i = 0; i < 3; ++i) {
        const Scalar& x = d.at(i, i);
        if (x.is_zero(ztol))
            ++s.zero;
        else if (sign_of(x) > 0)
            ++s.positive;
        else
            ++s.negative;
    }
    return s;
}

}  // namespace heisgamma
