#pragma once

// Exact arithmetic backends shared by the counting and solving layers:
// arbitrary-precision integers/rationals, a fraction-free determinant,
// and a rational linear solver. Nothing in here ever touches floating
// point except the human-readable log helpers.

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace treekit {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using IntMatrix = std::vector<std::vector<BigInt>>;

/// Exact integer determinant via Bareiss one-step fraction-free elimination.
/// Every division is exact; the 0x0 determinant is 1.
inline BigInt det_bareiss(IntMatrix a) {
    const std::size_t n = a.size();
    for (const auto& row : a)
        if (row.size() != n) throw std::invalid_argument("det_bareiss: matrix not square");
    if (n == 0) return 1;

    BigInt prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        std::size_t piv = k;
        while (piv < n && a[piv][k] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != k) {
            std::swap(a[piv], a[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    return sign > 0 ? a[n - 1][n - 1] : BigInt(-a[n - 1][n - 1]);
}

/// Solves a*x = rhs exactly over the rationals. Returns nullopt when the
/// matrix is singular.
inline std::optional<std::vector<Rational>> solve_linear(const IntMatrix& a,
                                                         const std::vector<BigInt>& rhs) {
    const std::size_t n = a.size();
    if (rhs.size() != n) throw std::invalid_argument("solve_linear: size mismatch");
    std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n + 1));
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i].size() != n) throw std::invalid_argument("solve_linear: matrix not square");
        for (std::size_t j = 0; j < n; ++j) m[i][j] = Rational(a[i][j]);
        m[i][n] = Rational(rhs[i]);
    }
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        while (piv < n && m[piv][k] == 0) ++piv;
        if (piv == n) return std::nullopt;
        std::swap(m[piv], m[k]);
        const Rational inv = m[k][k];
        for (std::size_t j = k; j <= n; ++j) m[k][j] /= inv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || m[i][k] == 0) continue;
            const Rational f = m[i][k];
            for (std::size_t j = k; j <= n; ++j) m[i][j] -= f * m[k][j];
        }
    }
    std::vector<Rational> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = m[i][n];
    return x;
}

/// base^exp by repeated squaring.
inline Rational rational_pow(Rational base, unsigned long exp) {
    Rational result(1);
    while (exp > 0) {
        if (exp & 1u) result *= base;
        exp >>= 1u;
        if (exp) base *= base;
    }
    return result;
}

inline BigInt bigint_pow(BigInt base, unsigned long exp) {
    BigInt result(1);
    while (exp > 0) {
        if (exp & 1u) result *= base;
        exp >>= 1u;
        if (exp) base *= base;
    }
    return result;
}

/// Natural log of a positive big integer; stays accurate past the double
/// range by splitting off the exponent.
inline double log_bigint(const BigInt& v) {
    if (v <= 0) throw std::domain_error("log_bigint: nonpositive argument");
    if (v == 1) return 0.0;
    const unsigned bits = boost::multiprecision::msb(v);
    if (bits <= 900) return std::log(v.convert_to<double>());
    const unsigned shift = bits - 512;
    const BigInt top = v >> shift;
    return std::log(top.convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
}

inline double to_double(const Rational& r) {
    return r.convert_to<double>();
}

/// Accepts "p/q", plain integers, and decimal forms like "0.001" or "2.5e-3".
inline Rational parse_rational(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("parse_rational: empty string");
    const auto bad = [&]() -> Rational {
        throw std::invalid_argument("parse_rational: cannot parse '" + text + "'");
    };

    const auto slash = text.find('/');
    if (slash != std::string::npos) {
        try {
            BigInt num(text.substr(0, slash));
            BigInt den(text.substr(slash + 1));
            if (den == 0) throw std::invalid_argument("parse_rational: zero denominator");
            return Rational(num, den);
        } catch (const std::runtime_error&) {
            return bad();
        }
    }

    std::size_t pos = 0;
    bool negative = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
        negative = text[pos] == '-';
        ++pos;
    }
    std::string digits;
    long frac_digits = 0;
    bool seen_dot = false, seen_digit = false;
    for (; pos < text.size(); ++pos) {
        const char c = text[pos];
        if (c >= '0' && c <= '9') {
            digits.push_back(c);
            seen_digit = true;
            if (seen_dot) ++frac_digits;
        } else if (c == '.' && !seen_dot) {
            seen_dot = true;
        } else {
            break;
        }
    }
    if (!seen_digit) return bad();
    long exponent = 0;
    if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
        ++pos;
        bool exp_neg = false;
        if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
            exp_neg = text[pos] == '-';
            ++pos;
        }
        if (pos == text.size()) return bad();
        long e = 0;
        for (; pos < text.size(); ++pos) {
            if (text[pos] < '0' || text[pos] > '9') return bad();
            e = e * 10 + (text[pos] - '0');
            if (e > 100000) return bad();
        }
        exponent = exp_neg ? -e : e;
    }
    if (pos != text.size()) return bad();

    BigInt num(digits.empty() ? "0" : digits);
    if (negative) num = -num;
    const long net = exponent - frac_digits;
    if (net >= 0) return Rational(num * bigint_pow(10, static_cast<unsigned long>(net)));
    return Rational(num, bigint_pow(10, static_cast<unsigned long>(-net)));
}

}  // namespace treekit
