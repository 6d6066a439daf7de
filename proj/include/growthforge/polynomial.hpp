#pragma once

#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "growthforge/errors.hpp"
#include "growthforge/numeric.hpp"

namespace growthforge {

/// Integer polynomial in one variable. Stored low-degree-first and kept
/// canonical: no trailing zero coefficients, the zero polynomial is empty.
/// The textual/serialized convention everywhere else is highest-degree-first.
class IntPolynomial {
public:
    IntPolynomial() = default;

    static IntPolynomial zero() { return IntPolynomial(); }
    static IntPolynomial one() { return constant(1); }

    static IntPolynomial constant(Int c) {
        IntPolynomial p;
        if (c != 0) p.coeffs_.push_back(std::move(c));
        return p;
    }

    /// x^degree.
    static IntPolynomial monomial(std::size_t degree, Int lead = Int(1)) {
        IntPolynomial p;
        if (lead == 0) return p;
        p.coeffs_.assign(degree + 1, Int(0));
        p.coeffs_[degree] = std::move(lead);
        return p;
    }

    /// Build from coefficients listed highest degree first (the external
    /// convention: {1, -3, 1} is x^2 - 3x + 1).
    static IntPolynomial from_coeffs_desc(std::vector<Int> desc) {
        IntPolynomial p;
        p.coeffs_.assign(desc.rbegin(), desc.rend());
        p.trim();
        return p;
    }

    static IntPolynomial from_coeffs_desc(std::initializer_list<long> desc) {
        std::vector<Int> v;
        v.reserve(desc.size());
        for (long c : desc) v.emplace_back(c);
        return from_coeffs_desc(std::move(v));
    }

    static IntPolynomial from_coeffs_asc(std::vector<Int> asc) {
        IntPolynomial p;
        p.coeffs_ = std::move(asc);
        p.trim();
        return p;
    }

    bool is_zero() const { return coeffs_.empty(); }
    bool is_one() const { return coeffs_.size() == 1 && coeffs_[0] == 1; }

    /// Degree; -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

    const Int& leading() const {
        static const Int zero_(0);
        return coeffs_.empty() ? zero_ : coeffs_.back();
    }

    Int constant_term() const { return coeffs_.empty() ? Int(0) : coeffs_.front(); }

    bool is_monic() const { return !coeffs_.empty() && coeffs_.back() == 1; }

    /// Coefficient of x^k (zero beyond the degree).
    const Int& coeff(std::size_t k) const {
        static const Int zero_(0);
        return k < coeffs_.size() ? coeffs_[k] : zero_;
    }

    std::vector<Int> coeffs_desc() const {
        return std::vector<Int>(coeffs_.rbegin(), coeffs_.rend());
    }

    bool operator==(const IntPolynomial& o) const { return coeffs_ == o.coeffs_; }
    bool operator!=(const IntPolynomial& o) const { return !(*this == o); }

    IntPolynomial operator-() const {
        IntPolynomial r = *this;
        for (Int& c : r.coeffs_) c = -c;
        return r;
    }

    friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
        IntPolynomial r;
        r.coeffs_.resize(std::max(a.coeffs_.size(), b.coeffs_.size()), Int(0));
        for (std::size_t i = 0; i < r.coeffs_.size(); ++i)
            r.coeffs_[i] = a.coeff(i) + b.coeff(i);
        r.trim();
        return r;
    }

    friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) {
        IntPolynomial r;
        r.coeffs_.resize(std::max(a.coeffs_.size(), b.coeffs_.size()), Int(0));
        for (std::size_t i = 0; i < r.coeffs_.size(); ++i)
            r.coeffs_[i] = a.coeff(i) - b.coeff(i);
        r.trim();
        return r;
    }

    friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
        if (a.is_zero() || b.is_zero()) return zero();
        IntPolynomial r;
        r.coeffs_.assign(a.coeffs_.size() + b.coeffs_.size() - 1, Int(0));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (a.coeffs_[i] == 0) continue;
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
                r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
        return r;
    }

    friend IntPolynomial operator*(const Int& c, const IntPolynomial& a) {
        IntPolynomial r;
        if (c == 0) return r;
        r.coeffs_.reserve(a.coeffs_.size());
        for (const Int& x : a.coeffs_) r.coeffs_.push_back(c * x);
        return r;
    }

    /// Coefficient reversal: x^deg * p(1/x).
    IntPolynomial reversed() const {
        IntPolynomial r;
        r.coeffs_.assign(coeffs_.rbegin(), coeffs_.rend());
        r.trim();
        return r;
    }

    IntPolynomial derivative() const {
        IntPolynomial r;
        if (coeffs_.size() <= 1) return r;
        r.coeffs_.reserve(coeffs_.size() - 1);
        for (std::size_t k = 1; k < coeffs_.size(); ++k)
            r.coeffs_.push_back(Int(static_cast<long>(k)) * coeffs_[k]);
        r.trim();
        return r;
    }

    Int eval(const Int& x) const {
        Int acc = 0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    Rat eval(const Rat& x) const {
        Rat acc = 0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    /// The polynomial w^deg * p((u/w) x), integral by construction. Used to
    /// reduce disk-radius questions to the unit circle.
    IntPolynomial scaled_argument(const Int& u, const Int& w) const {
        IntPolynomial r;
        if (is_zero()) return r;
        const std::size_t n = coeffs_.size() - 1;
        r.coeffs_.resize(coeffs_.size());
        for (std::size_t k = 0; k <= n; ++k)
            r.coeffs_[k] = coeffs_[k] * int_pow(u, k) * int_pow(w, n - k);
        r.trim();
        return r;
    }

    /// gcd of all coefficients (positive; 0 for the zero polynomial).
    Int content() const {
        Int g = 0;
        for (const Int& c : coeffs_) {
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
            if (g == 1) break;
        }
        return g;
    }

    IntPolynomial divided_by_content() const {
        Int g = content();
        if (g == 0 || g == 1) return *this;
        IntPolynomial r;
        r.coeffs_.reserve(coeffs_.size());
        for (const Int& c : coeffs_) r.coeffs_.push_back(exact_div(c, g));
        return r;
    }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::string s;
        for (int k = degree(); k >= 0; --k) {
            const Int& c = coeff(static_cast<std::size_t>(k));
            if (c == 0) continue;
            if (!s.empty()) s += c > 0 ? " + " : " - ";
            else if (c < 0) s += "-";
            Int a = abs(c);
            bool show_coeff = a != 1 || k == 0;
            if (show_coeff) s += a.get_str();
            if (k > 0) {
                s += "x";
                if (k > 1) s += "^" + std::to_string(k);
            }
        }
        return s;
    }

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }

    std::vector<Int> coeffs_;
};

inline std::ostream& operator<<(std::ostream& os, const IntPolynomial& p) {
    return os << p.to_string();
}

struct PolyDivision {
    IntPolynomial quotient;
    IntPolynomial remainder;
};

/// Exact division with remainder by a monic divisor: p = q*quotient + remainder
/// with deg(remainder) < deg(q).
inline PolyDivision poly_divide(const IntPolynomial& p, const IntPolynomial& q) {
    if (q.is_zero()) throw DivisorZero("polynomial division by zero");
    if (!q.is_monic())
        throw DivisorNotMonic("divisor must be monic, got leading coefficient " +
                              q.leading().get_str());
    const int dq = q.degree();
    if (p.degree() < dq) return {IntPolynomial::zero(), p};
    std::vector<Int> rem;
    rem.reserve(static_cast<std::size_t>(p.degree()) + 1);
    for (int k = 0; k <= p.degree(); ++k) rem.push_back(p.coeff(static_cast<std::size_t>(k)));
    std::vector<Int> quot(static_cast<std::size_t>(p.degree() - dq) + 1, Int(0));
    for (int k = p.degree() - dq; k >= 0; --k) {
        Int c = rem[static_cast<std::size_t>(k + dq)];
        if (c == 0) continue;
        quot[static_cast<std::size_t>(k)] = c;
        for (int j = 0; j <= dq; ++j)
            rem[static_cast<std::size_t>(k + j)] -= c * q.coeff(static_cast<std::size_t>(j));
    }
    return {IntPolynomial::from_coeffs_asc(std::move(quot)),
            IntPolynomial::from_coeffs_asc(std::move(rem))};
}

inline bool divides(const IntPolynomial& q, const IntPolynomial& p) {
    return poly_divide(p, q).remainder.is_zero();
}

} // namespace growthforge
