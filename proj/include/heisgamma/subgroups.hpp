#pragma once

#include <cstddef>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "heisgamma/families.hpp"

namespace heisgamma {

/**
 * A finite subgroup of the automorphism group, stored extensionally: the full
 * element list (identity first), the index-based multiplication table, and the
 * abstract-type data read off that table.  Immutable once built.
 */
struct AutSubgroup {
    std::vector<Automorphism> elements;   // elements[0] is the identity
    std::vector<std::vector<int>> table;  // table[i][j] = index of elements[i] * elements[j]
    std::vector<int> orders;              // orders[i] = period of elements[i]
    bool abelian = false;
    std::vector<int> invariant_factors;   // cyclic decomposition; abelian groups only
    std::string label;                    // "Z2xZ2", "Z3", "Z6", "S3", ...
};

namespace detail {

inline bool mats_equal(const Mat3& a, const Mat3& b, bool approx, double tol) {
    return approx ? mat_close(a, b, tol) : a == b;
}

inline int find_element(const std::vector<Automorphism>& els, const Mat3& m, bool approx,
                        double tol) {
    for (std::size_t i = 0; i < els.size(); ++i)
        if (mats_equal(els[i].matrix(), m, approx, tol)) return static_cast<int>(i);
    return -1;
}

inline int order_from_table(const std::vector<std::vector<int>>& table, int i) {
    int j = i, k = 1;
    const int n = static_cast<int>(table.size());
    while (j != 0) {
        j = table[j][i];
        if (++k > n) fail(errc::internal_error, "element order exceeds the group order");
    }
    return k;
}

// The cyclic decomposition d1 | d2 | ... | dm of an abelian group, recovered
// from the element-order profile: the candidate chain is correct exactly when
// #{g : g^d = e} = prod_i gcd(d_i, d) for every d.  Group orders here are at
// most 48, so the chain search is a trivial enumeration.
inline std::vector<int> invariant_factors_of(const std::vector<int>& orders) {
    const int n = static_cast<int>(orders.size());
    if (n == 1) return {};
    int exponent = 1;
    for (int o : orders) exponent = std::lcm(exponent, o);
    if (n % exponent != 0)
        fail(errc::internal_error, "group exponent does not divide the group order");

    auto killed_by = [&orders](int d) {
        int c = 0;
        for (int o : orders)
            if (d % o == 0) ++c;
        return c;
    };

    std::vector<std::vector<int>> matches;
    std::vector<int> chain{exponent};
    auto extend = [&](auto&& self, int remaining, int cap) -> void {
        if (remaining == 1) {
            std::vector<int> candidate(chain.rbegin(), chain.rend());
            bool ok = true;
            for (int d = 1; d <= n && ok; ++d) {
                long long predicted = 1;
                for (int di : candidate) predicted *= std::gcd(di, d);
                ok = predicted == killed_by(d);
            }
            if (ok) matches.push_back(std::move(candidate));
            return;
        }
        for (int d = 2; d <= remaining; ++d) {
            if (remaining % d != 0 || cap % d != 0) continue;
            chain.push_back(d);
            self(self, remaining / d, d);
            chain.pop_back();
        }
    };
    if (n % exponent == 0) extend(extend, n / exponent, exponent);

    if (matches.size() != 1)
        fail(errc::internal_error,
             "element-order profile does not determine a unique cyclic decomposition");
    return matches.front();
}

inline std::string type_label(bool abelian, const std::vector<int>& factors, int n) {
    if (abelian) {
        if (factors.empty()) return "Z1";
        std::string s;
        for (int d : factors) {
            if (!s.empty()) s += "x";
            s += "Z" + std::to_string(d);
        }
        return s;
    }
    if (n == 6) return "S3";  // the unique non-abelian group of order 6
    return "nonabelian-order-" + std::to_string(n);
}

// Builds the table and abstract-type data for an explicit element list, and
// verifies the group laws on the way (closure, identity slot, cancellation).
inline AutSubgroup finalize_subgroup(std::vector<Automorphism> els, double tol) {
    const int n = static_cast<int>(els.size());
    bool approx = false;
    for (const Automorphism& a : els) approx = approx || a.matrix().has_approx_entry();

    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (mats_equal(els[i].matrix(), els[j].matrix(), approx, tol))
                fail(errc::internal_error, "duplicate elements in subgroup list");

    AutSubgroup g;
    g.elements = std::move(els);
    g.table.assign(n, std::vector<int>(n, -1));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Mat3 prod = mat_mul(g.elements[i].matrix(), g.elements[j].matrix());
            int k = find_element(g.elements, prod, approx, tol);
            if (k < 0)
                fail(errc::internal_error, "element list is not closed under composition");
            g.table[i][j] = k;
        }

    for (int j = 0; j < n; ++j)
        if (g.table[0][j] != j || g.table[j][0] != j)
            fail(errc::internal_error, "identity element misplaced in subgroup list");
    for (int i = 0; i < n; ++i) {
        std::vector<bool> in_row(n, false), in_col(n, false);
        for (int j = 0; j < n; ++j) {
            in_row[g.table[i][j]] = true;
            in_col[g.table[j][i]] = true;
        }
        for (int j = 0; j < n; ++j)
            if (!in_row[j] || !in_col[j])
                fail(errc::internal_error, "multiplication table violates cancellation");
    }

    g.orders.resize(n);
    for (int i = 0; i < n; ++i) g.orders[i] = order_from_table(g.table, i);
    g.abelian = true;
    for (int i = 0; i < n && g.abelian; ++i)
        for (int j = 0; j < n && g.abelian; ++j) g.abelian = g.table[i][j] == g.table[j][i];
    if (g.abelian) g.invariant_factors = invariant_factors_of(g.orders);
    g.label = type_label(g.abelian, g.invariant_factors, n);
    return g;
}

}  // namespace detail

/**
 * Closes a generating set under composition.  A finite set of automorphisms
 * closed under products is automatically closed under inverses, so plain
 * product saturation suffices; generators of infinite order blow through the
 * element bound and are reported as such.
 */
inline AutSubgroup build_subgroup(const std::vector<Automorphism>& generators,
                                  int bound = 48, double tol = 1e-9) {
    bool approx = false;
    for (const Automorphism& a : generators) approx = approx || a.matrix().has_approx_entry();

    std::vector<Automorphism> els{Automorphism::identity()};
    auto add = [&](const Automorphism& a) {
        if (detail::find_element(els, a.matrix(), approx, tol) >= 0) return false;
        els.push_back(a);
        if (static_cast<int>(els.size()) > bound)
            fail(errc::closure_bound_exceeded,
                 "closure exceeds " + std::to_string(bound) + " elements");
        return true;
    };
    for (const Automorphism& a : generators) add(a);

    bool grew = true;
    while (grew) {
        grew = false;
        for (std::size_t i = 0; i < els.size(); ++i)
            for (std::size_t j = 0; j < els.size(); ++j)
                if (add(compose(els[i], els[j], tol))) grew = true;
    }
    return detail::finalize_subgroup(std::move(els), tol);
}

inline AutSubgroup build_subgroup(const std::vector<FamilyTag>& generators, int bound = 48,
                                  double tol = 1e-9) {
    std::vector<Automorphism> els;
    els.reserve(generators.size());
    for (const FamilyTag& tag : generators) els.push_back(make_family(tag, tol));
    return build_subgroup(els, bound, tol);
}

// The four-element group {Id, tau1(a3,a6), tau2(-a3,a5), tau4(-a3*a6/2 - a5, -a6)}.
inline AutSubgroup build_gamma7(const Scalar& a3, const Scalar& a5, const Scalar& a6,
                                double tol = 1e-9) {
    Scalar half = Scalar::rational(1, 2);
    std::vector<Automorphism> els{
        Automorphism::identity(),
        make_family(Tau1{a3, a6}, tol),
        make_family(Tau2{-a3, a5}, tol),
        make_family(Tau4{-a3 * a6 * half - a5, -a6}, tol),
    };
    return detail::finalize_subgroup(std::move(els), tol);
}

// The four-element group {Id, tau3(a1,a2,a6), tau3(-a1,-a2,a6p), tau4(...)} whose
// last slot is the composition of the two tau3 elements.
inline AutSubgroup build_gamma8(const Scalar& a1, const Scalar& a2, const Scalar& a6,
                                const Scalar& a6p, double tol = 1e-9) {
    Scalar one(1);
    std::vector<Automorphism> els{
        Automorphism::identity(),
        make_family(Tau3{a1, a2, a6}, tol),
        make_family(Tau3{-a1, -a2, a6p}, tol),
        make_family(Tau4{(a6p * (one - a1) - a6 * (one + a1)) / a2, -a6 - a6p}, tol),
    };
    return detail::finalize_subgroup(std::move(els), tol);
}

// The cyclic group {Id, tau5, tau5^2} of an order-3 chart instance.
inline AutSubgroup build_gamma5(const Scalar& a2, const Scalar& a3, const Scalar& a5,
                                const Scalar& a6, double tol = 1e-9) {
    Automorphism t = make_family(Tau5{a2, a3, a5, a6}, tol);
    std::vector<Automorphism> els{Automorphism::identity(), t, compose(t, t, tol)};
    return detail::finalize_subgroup(std::move(els), tol);
}

// The cyclic group {Id, tau6, ..., tau6^(k-1)} of a period-k chart instance.
inline AutSubgroup build_gamma6k(int k, const Scalar& a2, const Scalar& a3,
                                 const Scalar& a5, const Scalar& a6, double tol = 1e-9) {
    Automorphism t = make_family(Tau6{k, a2, a3, a5, a6}, tol);
    std::vector<Automorphism> els{Automorphism::identity()};
    Automorphism p = t;
    for (int j = 1; j < k; ++j) {
        els.push_back(p);
        p = compose(p, t, tol);
    }
    return detail::finalize_subgroup(std::move(els), tol);
}

inline std::vector<int> abelian_type(const AutSubgroup& g) {
    if (!g.abelian) fail(errc::not_abelian, "group has non-commuting elements");
    return g.invariant_factors;
}

}  // namespace heisgamma
