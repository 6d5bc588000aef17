#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <charconv>
#include <complex>
#include <cstdint>
#include <string>
#include <variant>

#include "heisgamma/error.hpp"

namespace heisgamma {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using Complex = std::complex<double>;

inline Int numerator_of(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Int denominator_of(const Rational& q) { return boost::multiprecision::denominator(q); }

// Removes the largest square factor found by trial division (plus a final
// perfect-square probe) from n, returning its square root.  n must be > 0.
// Radicands produced by the library are small, so the trial bound is generous.
inline Int extract_square_part(Int& n) {
    Int s = 1;
    for (Int p = 2; p <= 4096 && p * p <= n; ++p) {
        Int pp = p * p;
        while (n % pp == 0) {
            n /= pp;
            s *= p;
        }
    }
    Int root = boost::multiprecision::sqrt(n);
    if (root * root == n) {
        s *= root;
        n = 1;
    }
    return s;
}

/**
 * One quadratic layer over the rationals: a + b*sqrt(r).
 *
 * Invariants (enforced by make_quadext, never by hand):
 *   - b != 0 (degenerate values collapse to Rational)
 *   - r is an integer >= 2 with no square factor discoverable by
 *     extract_square_part, so equality is structural.
 */
struct QuadExt {
    Rational a;
    Rational b;
    Int r;

    friend bool operator==(const QuadExt& x, const QuadExt& y) {
        return x.a == y.a && x.b == y.b && x.r == y.r;
    }
};

enum class Mode { rational, quadext, approx_real, approx_complex };

class Scalar;
inline Scalar make_quadext(const Rational& a, const Rational& b, const Rational& radicand);

class Scalar {
  public:
    Scalar() : v_(Rational(0)) {}
    Scalar(int n) : v_(Rational(n)) {}
    Scalar(long long n) : v_(Rational(n)) {}
    Scalar(const Int& n) : v_(Rational(n)) {}
    Scalar(const Rational& q) : v_(q) {}
    Scalar(const QuadExt& q) : v_(q) {}
    explicit Scalar(double x) : v_(x) {}
    explicit Scalar(const Complex& z) : v_(z) {}

    static Scalar rational(const Int& num, const Int& den) {
        if (den == 0) fail(errc::division_by_zero, "rational with zero denominator");
        return Scalar(Rational(num, den));
    }
    static Scalar approx(double x) { return Scalar(x); }
    static Scalar complex(double re, double im) { return Scalar(Complex(re, im)); }

    Mode mode() const {
        switch (v_.index()) {
            case 0: return Mode::rational;
            case 1: return Mode::quadext;
            case 2: return Mode::approx_real;
            default: return Mode::approx_complex;
        }
    }
    bool is_exact() const { return v_.index() <= 1; }
    bool is_rational() const { return v_.index() == 0; }
    bool is_quadext() const { return v_.index() == 1; }
    bool is_approx_real() const { return v_.index() == 2; }
    bool is_approx_complex() const { return v_.index() == 3; }

    const Rational& as_rational() const { return std::get<Rational>(v_); }
    const QuadExt& as_quadext() const { return std::get<QuadExt>(v_); }

    double to_double() const {
        switch (v_.index()) {
            case 0: return as_rational().convert_to<double>();
            case 1: {
                const QuadExt& q = as_quadext();
                return q.a.convert_to<double>() +
                       q.b.convert_to<double>() * std::sqrt(q.r.convert_to<double>());
            }
            case 2: return std::get<double>(v_);
            default: fail(errc::mode_unavailable, "complex scalar has no real value");
        }
    }
    Complex to_complex() const {
        if (v_.index() == 3) return std::get<Complex>(v_);
        return Complex(to_double(), 0.0);
    }

    // Structural zero test for exact modes; |.| <= tol for approximate modes.
    bool is_zero(double tol = 0.0) const {
        switch (v_.index()) {
            case 0: return as_rational() == 0;
            case 1: return false;  // normalized QuadExt is never zero
            case 2: return std::abs(std::get<double>(v_)) <= tol;
            default: return std::abs(std::get<Complex>(v_)) <= tol;
        }
    }

    friend Scalar operator+(const Scalar& x, const Scalar& y);
    friend Scalar operator-(const Scalar& x, const Scalar& y);
    friend Scalar operator*(const Scalar& x, const Scalar& y);
    friend Scalar operator/(const Scalar& x, const Scalar& y);
    friend Scalar operator-(const Scalar& x);
    friend bool operator==(const Scalar& x, const Scalar& y);
    friend bool operator!=(const Scalar& x, const Scalar& y) { return !(x == y); }

    Scalar& operator+=(const Scalar& y) { return *this = *this + y; }
    Scalar& operator-=(const Scalar& y) { return *this = *this - y; }
    Scalar& operator*=(const Scalar& y) { return *this = *this * y; }
    Scalar& operator/=(const Scalar& y) { return *this = *this / y; }

  private:
    std::variant<Rational, QuadExt, double, Complex> v_;
};

inline Scalar make_quadext(const Rational& a, const Rational& b, const Rational& radicand) {
    if (radicand < 0) fail(errc::mode_unavailable, "negative radicand in exact mode");
    if (b == 0 || radicand == 0) return Scalar(a);
    // a + b*sqrt(p/q) = a + (b/q)*sqrt(p*q); then strip square factors.
    Int n = numerator_of(radicand) * denominator_of(radicand);
    Rational bb = b / Rational(denominator_of(radicand));
    Int s = extract_square_part(n);
    bb *= Rational(s);
    if (n == 1) return Scalar(a + bb);
    return Scalar(QuadExt{a, bb, n});
}

namespace detail {

inline QuadExt promote_to_quadext(const Scalar& x, const Int& r) {
    if (x.is_rational()) return QuadExt{x.as_rational(), Rational(0), r};
    return x.as_quadext();
}

inline Scalar quad_add(const QuadExt& x, const QuadExt& y, int sign) {
    if (x.b != 0 && y.b != 0 && x.r != y.r)
        fail(errc::incompatible_radicands,
             "cannot add sqrt(" + x.r.str() + ") and sqrt(" + y.r.str() + ") terms");
    Int r = (x.b != 0) ? x.r : y.r;
    Rational a = (sign > 0) ? Rational(x.a + y.a) : Rational(x.a - y.a);
    Rational b = (sign > 0) ? Rational(x.b + y.b) : Rational(x.b - y.b);
    if (b == 0) return Scalar(a);
    return Scalar(QuadExt{a, b, r});
}

inline Scalar quad_mul(const QuadExt& x, const QuadExt& y) {
    if (x.b == 0 || y.b == 0 || x.r == y.r) {
        Int r = (x.b != 0) ? x.r : y.r;
        Rational a = x.a * y.a + x.b * y.b * Rational(r);
        Rational b = x.a * y.b + x.b * y.a;
        if (b == 0) return Scalar(a);
        return Scalar(QuadExt{a, b, r});
    }
    // Distinct radicands multiply only when both factors are pure radicals:
    // (b1*sqrt(r1)) * (b2*sqrt(r2)) = b1*b2*sqrt(r1*r2).
    if (x.a == 0 && y.a == 0) return make_quadext(Rational(0), x.b * y.b, Rational(x.r * y.r));
    fail(errc::incompatible_radicands,
         "cannot multiply mixed terms over sqrt(" + x.r.str() + ") and sqrt(" + y.r.str() + ")");
}

inline Scalar quad_invert(const QuadExt& x) {
    Rational norm = x.a * x.a - x.b * x.b * Rational(x.r);
    // norm == 0 would force sqrt(r) rational, which normalization excludes.
    if (norm == 0) fail(errc::internal_error, "quadratic extension with rational sqrt");
    return Scalar(QuadExt{x.a / norm, -x.b / norm, x.r});
}

}  // namespace detail

inline Scalar operator+(const Scalar& x, const Scalar& y) {
    if (x.is_approx_complex() || y.is_approx_complex())
        return Scalar(x.to_complex() + y.to_complex());
    if (x.is_approx_real() || y.is_approx_real()) return Scalar(x.to_double() + y.to_double());
    if (x.is_rational() && y.is_rational()) return Scalar(x.as_rational() + y.as_rational());
    Int r = x.is_quadext() ? x.as_quadext().r : y.as_quadext().r;
    return detail::quad_add(detail::promote_to_quadext(x, r), detail::promote_to_quadext(y, r), +1);
}

inline Scalar operator-(const Scalar& x, const Scalar& y) {
    if (x.is_approx_complex() || y.is_approx_complex())
        return Scalar(x.to_complex() - y.to_complex());
    if (x.is_approx_real() || y.is_approx_real()) return Scalar(x.to_double() - y.to_double());
    if (x.is_rational() && y.is_rational()) return Scalar(x.as_rational() - y.as_rational());
    Int r = x.is_quadext() ? x.as_quadext().r : y.as_quadext().r;
    return detail::quad_add(detail::promote_to_quadext(x, r), detail::promote_to_quadext(y, r), -1);
}

inline Scalar operator*(const Scalar& x, const Scalar& y) {
    if (x.is_approx_complex() || y.is_approx_complex())
        return Scalar(x.to_complex() * y.to_complex());
    if (x.is_approx_real() || y.is_approx_real()) return Scalar(x.to_double() * y.to_double());
    if (x.is_rational() && y.is_rational()) return Scalar(x.as_rational() * y.as_rational());
    if (x.is_rational()) return detail::quad_mul(detail::promote_to_quadext(x, y.as_quadext().r),
                                                 y.as_quadext());
    if (y.is_rational()) return detail::quad_mul(x.as_quadext(),
                                                 detail::promote_to_quadext(y, x.as_quadext().r));
    return detail::quad_mul(x.as_quadext(), y.as_quadext());
}

inline Scalar operator/(const Scalar& x, const Scalar& y) {
    if (x.is_approx_complex() || y.is_approx_complex())
        return Scalar(x.to_complex() / y.to_complex());
    if (x.is_approx_real() || y.is_approx_real()) return Scalar(x.to_double() / y.to_double());
    if (y.is_rational()) {
        if (y.as_rational() == 0) fail(errc::division_by_zero, "exact division by zero");
        if (x.is_rational()) return Scalar(x.as_rational() / y.as_rational());
        const QuadExt& q = x.as_quadext();
        return Scalar(QuadExt{q.a / y.as_rational(), q.b / y.as_rational(), q.r});
    }
    return x * detail::quad_invert(y.as_quadext());
}

inline Scalar operator-(const Scalar& x) { return Scalar(0) - x; }

inline bool operator==(const Scalar& x, const Scalar& y) {
    if (x.is_approx_complex() || y.is_approx_complex()) return x.to_complex() == y.to_complex();
    if (x.is_approx_real() || y.is_approx_real()) return x.to_double() == y.to_double();
    if (x.is_rational() && y.is_rational()) return x.as_rational() == y.as_rational();
    if (x.is_quadext() && y.is_quadext()) return x.as_quadext() == y.as_quadext();
    return false;  // normalized QuadExt is never rational
}

// Exact sign for the real modes (-1, 0, +1); rejects complex scalars.
inline int sign_of(const Scalar& x) {
    switch (x.mode()) {
        case Mode::rational: {
            const Rational& q = x.as_rational();
            return q > 0 ? 1 : (q < 0 ? -1 : 0);
        }
        case Mode::quadext: {
            const QuadExt& q = x.as_quadext();
            int sa = q.a > 0 ? 1 : (q.a < 0 ? -1 : 0);
            int sb = q.b > 0 ? 1 : -1;
            if (sa == 0) return sb;
            if (sa == sb) return sa;
            // Opposite signs: compare a^2 against b^2 * r.
            Rational lhs = q.a * q.a, rhs = q.b * q.b * Rational(q.r);
            if (lhs == rhs) fail(errc::internal_error, "quadratic extension with rational sqrt");
            return (lhs > rhs) ? sa : sb;
        }
        case Mode::approx_real: {
            double d = x.to_double();
            return d > 0 ? 1 : (d < 0 ? -1 : 0);
        }
        default: fail(errc::mode_unavailable, "sign of complex scalar");
    }
}

inline int compare(const Scalar& x, const Scalar& y) { return sign_of(x - y); }
inline bool operator<(const Scalar& x, const Scalar& y) { return compare(x, y) < 0; }
inline bool operator>(const Scalar& x, const Scalar& y) { return compare(x, y) > 0; }
inline bool operator<=(const Scalar& x, const Scalar& y) { return compare(x, y) <= 0; }
inline bool operator>=(const Scalar& x, const Scalar& y) { return compare(x, y) >= 0; }

inline double abs_approx(const Scalar& x) {
    if (x.is_approx_complex()) return std::abs(x.to_complex());
    return std::abs(x.to_double());
}

inline bool approx_equal(const Scalar& x, const Scalar& y, double tol) {
    if (x.is_approx_complex() || y.is_approx_complex())
        return std::abs(x.to_complex() - y.to_complex()) <= tol;
    return std::abs(x.to_double() - y.to_double()) <= tol;
}

// Square root within the tower.  Rational arguments stay exact (Rational or
// QuadExt); approximate arguments stay approximate.  Nested radicals and
// negative reals are outside the tower and rejected.
inline Scalar sqrt_scalar(const Scalar& x) {
    switch (x.mode()) {
        case Mode::rational: {
            const Rational& q = x.as_rational();
            if (q < 0) fail(errc::mode_unavailable, "square root of negative rational");
            if (q == 0) return Scalar(0);
            Int n = numerator_of(q) * denominator_of(q);
            Int s = extract_square_part(n);
            Rational coeff(s, denominator_of(q));
            if (n == 1) return Scalar(coeff);
            return Scalar(QuadExt{Rational(0), coeff, n});
        }
        case Mode::quadext:
            fail(errc::mode_unavailable, "nested radical: square root of a quadratic extension");
        case Mode::approx_real: {
            double d = x.to_double();
            if (d < 0) fail(errc::mode_unavailable, "square root of negative real");
            return Scalar(std::sqrt(d));
        }
        default: return Scalar(std::sqrt(x.to_complex()));
    }
}

// ---- text grammar ----------------------------------------------------------
//
// rational:       p or p/q          (canonical: reduced, q > 0, q omitted if 1)
// quadratic:      a+b*sqrt(r) or a-b*sqrt(r), with a, b, r rationals
// approx real:    decimal literal (shortest round-trip form)
// approx complex: re+imi / re-imi, both parts decimal literals

namespace detail {

inline std::string int_to_string(const Int& n) { return n.str(); }

inline std::string rational_to_string(const Rational& q) {
    if (denominator_of(q) == 1) return numerator_of(q).str();
    return numerator_of(q).str() + "/" + denominator_of(q).str();
}

inline std::string double_to_string(double d) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), d);
    return std::string(buf, res.ptr);
}

inline bool parse_int(std::string_view s, Int& out) {
    if (!s.empty() && s[0] == '+') s.remove_prefix(1);
    if (s.empty()) return false;
    size_t i = (s[0] == '-') ? 1 : 0;
    if (i == s.size()) return false;
    for (size_t j = i; j < s.size(); ++j)
        if (s[j] < '0' || s[j] > '9') return false;
    out = Int(std::string(s));
    return true;
}

inline bool parse_rational(std::string_view s, Rational& out) {
    size_t slash = s.find('/');
    Int num, den = 1;
    if (slash == std::string_view::npos) {
        if (!parse_int(s, num)) return false;
    } else {
        if (!parse_int(s.substr(0, slash), num)) return false;
        if (!parse_int(s.substr(slash + 1), den)) return false;
        if (den == 0) return false;
    }
    out = Rational(num, den);
    return true;
}

inline bool parse_double(std::string_view s, double& out) {
    auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

// Position of the sign that splits "A<sign>B..." after a leading term, or npos.
inline size_t split_sign(std::string_view s) {
    for (size_t i = 1; i < s.size(); ++i) {
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') return i;
    }
    return std::string_view::npos;
}

}  // namespace detail

inline std::string to_string(const Scalar& x) {
    switch (x.mode()) {
        case Mode::rational: return detail::rational_to_string(x.as_rational());
        case Mode::quadext: {
            const QuadExt& q = x.as_quadext();
            std::string out = detail::rational_to_string(q.a);
            out += (q.b < 0) ? '-' : '+';
            out += detail::rational_to_string(q.b < 0 ? Rational(-q.b) : q.b);
            out += "*sqrt(" + q.r.str() + ")";
            return out;
        }
        case Mode::approx_real: return detail::double_to_string(x.to_double());
        default: {
            Complex z = x.to_complex();
            std::string out = detail::double_to_string(z.real());
            out += (z.imag() < 0 || (z.imag() == 0 && std::signbit(z.imag()))) ? '-' : '+';
            out += detail::double_to_string(std::abs(z.imag()));
            out += 'i';
            return out;
        }
    }
}

inline Scalar parse_scalar(std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    if (s.empty()) fail(errc::malformed_input, "empty scalar literal");

    size_t sq = s.find("*sqrt(");
    if (sq != std::string_view::npos || s.substr(0, 5) == "sqrt(") {
        if (s.back() != ')') fail(errc::malformed_input, "unterminated sqrt()");
        Rational a(0), b(1), r;
        std::string_view inner;
        if (sq == std::string_view::npos) {
            inner = s.substr(5, s.size() - 6);
        } else {
            inner = s.substr(sq + 6, s.size() - sq - 7);
            std::string_view head = s.substr(0, sq);
            size_t sep = detail::split_sign(head);
            std::string_view bpart = head;
            if (sep != std::string_view::npos) {
                if (!detail::parse_rational(head.substr(0, sep), a))
                    fail(errc::malformed_input, "bad rational part: " + std::string(head));
                bpart = head.substr(sep);  // keeps the sign
            }
            if (!detail::parse_rational(bpart, b))
                fail(errc::malformed_input, "bad radical coefficient: " + std::string(bpart));
        }
        if (!detail::parse_rational(inner, r) || r < 0)
            fail(errc::malformed_input, "bad radicand: " + std::string(inner));
        return make_quadext(a, b, r);
    }

    if (!s.empty() && s.back() == 'i') {
        std::string_view body = s.substr(0, s.size() - 1);
        size_t sep = detail::split_sign(body);
        if (sep == std::string_view::npos) fail(errc::malformed_input, "bad complex literal");
        double re, im;
        if (!detail::parse_double(body.substr(0, sep), re) ||
            !detail::parse_double(body.substr(sep), im))
            fail(errc::malformed_input, "bad complex literal: " + std::string(s));
        return Scalar::complex(re, im);
    }

    if (s.find('.') != std::string_view::npos || s.find('e') != std::string_view::npos ||
        s.find('E') != std::string_view::npos || s == "inf" || s == "-inf") {
        double d;
        if (!detail::parse_double(s, d))
            fail(errc::malformed_input, "bad decimal literal: " + std::string(s));
        return Scalar::approx(d);
    }

    Rational q;
    if (!detail::parse_rational(s, q))
        fail(errc::malformed_input, "bad rational literal: " + std::string(s));
    return Scalar(q);
}

}  // namespace heisgamma
