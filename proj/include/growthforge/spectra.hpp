#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "growthforge/errors.hpp"
#include "growthforge/matrix.hpp"
#include "growthforge/numeric.hpp"
#include "growthforge/polynomial.hpp"

namespace growthforge {

/// Characteristic polynomial det(xI - A), computed exactly by the
/// Faddeev-LeVerrier recurrence (all divisions are by step indices and exact).
inline IntPolynomial char_poly(const IntMatrix& a) {
    if (!a.is_square()) throw NotSquare("characteristic polynomial of a non-square matrix");
    const std::size_t n = a.rows();
    std::vector<Int> c(n + 1, Int(0)); // c[k] multiplies x^(n-k), c[0] = 1
    c[0] = 1;
    IntMatrix m = IntMatrix::identity(n);
    for (std::size_t k = 1; k <= n; ++k) {
        if (k > 1) {
            for (std::size_t i = 0; i < n; ++i) m.at(i, i) += c[k - 1];
            m = a * m;
        } else {
            m = a;
        }
        c[k] = exact_div(-m.trace(), Int(static_cast<long>(k)));
    }
    std::vector<Int> desc(c.begin(), c.end());
    return IntPolynomial::from_coeffs_desc(std::move(desc));
}

/// Monic generator of {g : g(A) v = 0}, the annihilator of v in the cyclic
/// Z[A]-module it spans. It divides char_poly(A), so by Gauss it has integer
/// coefficients. The zero vector yields the unit polynomial 1 (annihilated by
/// everything); callers treat that as "no usable cyclic support".
inline IntPolynomial annihilator_poly(const IntMatrix& a, const std::vector<Int>& v) {
    if (!a.is_square()) throw NotSquare("annihilator under a non-square matrix");
    const std::size_t n = a.rows();
    if (v.size() != n)
        throw DimensionMismatch("annihilator vector length " + std::to_string(v.size()) +
                                " vs matrix dimension " + std::to_string(n));

    struct EchelonRow {
        std::vector<Rat> vec;
        std::vector<Rat> combo; // expression in Krylov vectors v, Av, ...
        std::size_t pivot;
    };
    std::vector<EchelonRow> rows;

    std::vector<Int> krylov = v;
    for (std::size_t j = 0; j <= n; ++j) {
        std::vector<Rat> w(n);
        for (std::size_t i = 0; i < n; ++i) w[i] = Rat(krylov[i]);
        std::vector<Rat> combo(j + 1, Rat(0));
        combo[j] = 1;
        for (const EchelonRow& row : rows) {
            if (w[row.pivot] == 0) continue;
            Rat f = w[row.pivot] / row.vec[row.pivot];
            for (std::size_t i = 0; i < n; ++i) w[i] -= f * row.vec[i];
            for (std::size_t i = 0; i < row.combo.size(); ++i) combo[i] -= f * row.combo[i];
        }
        std::size_t pivot = n;
        for (std::size_t i = 0; i < n; ++i)
            if (w[i] != 0) { pivot = i; break; }
        if (pivot == n) {
            // Dependency: 0 = sum combo_i A^i v with combo_j = 1.
            std::vector<Int> coeffs(j + 1);
            for (std::size_t i = 0; i <= j; ++i) {
                Rat q = combo[i];
                q.canonicalize();
                if (q.get_den() != 1)
                    throw std::logic_error("annihilator coefficients not integral");
                coeffs[i] = q.get_num();
            }
            return IntPolynomial::from_coeffs_asc(std::move(coeffs));
        }
        rows.push_back(EchelonRow{std::move(w), std::move(combo), pivot});
        krylov = a.apply(krylov);
    }
    throw std::logic_error("annihilator search exceeded the matrix dimension");
}

inline unsigned long euler_phi(unsigned long d) {
    unsigned long result = d, m = d;
    for (unsigned long p = 2; p * p <= m; ++p) {
        if (m % p != 0) continue;
        while (m % p == 0) m /= p;
        result -= result / p;
    }
    if (m > 1) result -= result / m;
    return result;
}

/// Cyclotomic polynomials computed by exact division:
/// Phi_d = (x^d - 1) / prod_{e | d, e < d} Phi_e.
class CyclotomicTable {
public:
    const IntPolynomial& get(unsigned long d) {
        auto it = memo_.find(d);
        if (it != memo_.end()) return it->second;
        IntPolynomial xd1 = IntPolynomial::monomial(d) - IntPolynomial::one();
        IntPolynomial q = xd1;
        for (unsigned long e = 1; e < d; ++e) {
            if (d % e != 0) continue;
            auto division = poly_divide(q, get(e));
            if (!division.remainder.is_zero())
                throw std::logic_error("cyclotomic division left a remainder");
            q = division.quotient;
        }
        return memo_.emplace(d, std::move(q)).first->second;
    }

private:
    std::map<unsigned long, IntPolynomial> memo_;
};

/// Kronecker's criterion, decided exactly: every root of p is a root of unity
/// iff p is a product of cyclotomics Phi_d with phi(d) <= deg p. Any such d
/// satisfies d <= 2 deg^2 because phi(d) >= sqrt(d/2). Repeated factors are
/// handled by dividing each Phi_d out as often as it divides.
inline bool kronecker_all_roots_of_unity(const IntPolynomial& p) {
    if (!p.is_monic()) throw NotMonic("Kronecker test requires a monic polynomial");
    if (p.constant_term() == 0)
        throw ZeroConstantTerm("Kronecker test requires a nonzero constant term");
    const int n = p.degree();
    if (n == 0) return true;
    if (abs(p.constant_term()) != 1) return false; // |product of roots| must be 1

    const unsigned long dmax = 2UL * static_cast<unsigned long>(n) *
                               static_cast<unsigned long>(n);
    CyclotomicTable table;
    IntPolynomial g = p;
    for (unsigned long d = 1; d <= dmax && !g.is_one(); ++d) {
        if (euler_phi(d) > static_cast<unsigned long>(n)) continue;
        const IntPolynomial& phi = table.get(d);
        while (g.degree() >= phi.degree()) {
            auto division = poly_divide(g, phi);
            if (!division.remainder.is_zero()) break;
            g = division.quotient;
        }
    }
    return g.is_one();
}

/// Exact count of roots in an open disk, with certification data.
struct DiskCount {
    Rat radius;
    int roots_strictly_inside = 0;
    int degree = 0;
    bool boundary_certified_clear = false;
};

namespace detail {

/// Schur-Cohn recursion on an integer polynomial, counting roots in |z| < 1.
/// Returns nullopt on a degenerate (zero-gamma) step.
inline std::optional<int> unit_disk_count(IntPolynomial f) {
    long long acc = 0, mult = 1;
    while (true) {
        f = f.divided_by_content();
        const int n = f.degree();
        if (n <= 0) break; // nonzero constant: no roots left
        const Int& a0 = f.coeff(0);
        const Int& an = f.leading();
        Int gamma = a0 * a0 - an * an;
        if (gamma == 0) return std::nullopt;
        IntPolynomial t = a0 * f - an * f.reversed();
        if (gamma < 0) {
            acc += mult * n;
            mult = -mult;
        }
        f = std::move(t);
    }
    return static_cast<int>(acc);
}

} // namespace detail

/// Count roots of p with |z| < radius by the Schur-Cohn recursion applied to
/// p(radius * z) after clearing denominators, in exact integer arithmetic.
/// A completed recursion certifies there is no root on |z| = radius; a
/// zero-reflection step raises DegenerateRecursion and the caller must fall
/// back (see has_modulus_ge).
inline DiskCount roots_in_open_disk(const IntPolynomial& p, const Rat& radius) {
    if (!p.is_monic()) throw NotMonic("disk counting requires a monic polynomial");
    if (radius <= 0) throw ValidationError("disk radius must be positive");
    Rat r = radius;
    r.canonicalize();
    IntPolynomial f = p.scaled_argument(r.get_num(), r.get_den());
    auto count = detail::unit_disk_count(f);
    if (!count)
        throw DegenerateRecursion(
            "zero reflection coefficient at radius " + r.get_str() +
            " (a root may lie on the circle, or a mirror pair straddles it)");
    return DiskCount{r, *count, p.degree(), true};
}

namespace detail {

/// Power sums of the roots of a monic polynomial via Newton's identities,
/// for k = 0..kmax. Integer arithmetic throughout.
inline std::vector<Int> root_power_sums(const IntPolynomial& p, std::size_t kmax) {
    const int n = p.degree();
    std::vector<Int> c(static_cast<std::size_t>(n) + 1); // p = x^n + c1 x^(n-1) + ...
    for (int i = 0; i <= n; ++i) c[static_cast<std::size_t>(i)] = p.coeff(static_cast<std::size_t>(n - i));
    std::vector<Int> s(kmax + 1, Int(0));
    s[0] = n;
    for (std::size_t k = 1; k <= kmax; ++k) {
        Int acc = 0;
        if (k <= static_cast<std::size_t>(n)) acc = Int(static_cast<long>(k)) * c[k];
        for (std::size_t i = 1; i < k && i <= static_cast<std::size_t>(n); ++i)
            acc += c[i] * s[k - i];
        s[k] = -acc;
    }
    return s;
}

/// Monic polynomial from power sums of its roots (inverse Newton). All
/// divisions are exact for our inputs (coefficients are symmetric functions
/// of algebraic integers).
inline IntPolynomial poly_from_power_sums(const std::vector<Int>& s, std::size_t degree) {
    std::vector<Int> e(degree + 1, Int(0));
    e[0] = 1;
    for (std::size_t k = 1; k <= degree; ++k) {
        Int acc = 0;
        int sign = 1;
        for (std::size_t i = 1; i <= k; ++i) {
            if (sign > 0) acc += e[k - i] * s[i];
            else acc -= e[k - i] * s[i];
            sign = -sign;
        }
        e[k] = exact_div(acc, Int(static_cast<long>(k)));
    }
    std::vector<Int> desc(degree + 1);
    int sign = 1;
    for (std::size_t k = 0; k <= degree; ++k) {
        desc[k] = sign > 0 ? e[k] : Int(-e[k]);
        sign = -sign;
    }
    return IntPolynomial::from_coeffs_desc(std::move(desc));
}

/// The degree n^2 monic integer polynomial whose roots are all pairwise
/// products of roots of p. Its power sums are the squares of p's power sums.
/// For real-coefficient p the squared moduli |lambda|^2 = lambda * conj(lambda)
/// appear among its real roots, which reduces modulus comparisons to real
/// root counting.
inline IntPolynomial pairwise_root_products(const IntPolynomial& p) {
    const std::size_t n = static_cast<std::size_t>(p.degree());
    const std::size_t big = n * n;
    std::vector<Int> s = root_power_sums(p, big);
    std::vector<Int> sq(big + 1);
    for (std::size_t k = 0; k <= big; ++k) sq[k] = s[k] * s[k];
    return poly_from_power_sums(sq, big);
}

/// Sturm chain over Z with positive-scaling pseudo-remainders; valid for
/// counting distinct real roots in a half-open interval (a, b].
inline std::vector<IntPolynomial> sturm_chain(const IntPolynomial& p) {
    std::vector<IntPolynomial> chain;
    chain.push_back(p.divided_by_content());
    IntPolynomial d = p.derivative().divided_by_content();
    if (!d.is_zero()) chain.push_back(d);
    while (chain.back().degree() > 0) {
        const IntPolynomial& f = chain[chain.size() - 2];
        const IntPolynomial& g = chain.back();
        // Pseudo-remainder: scale f by lc(g) each reduction step and record
        // the sign so the net scaling is positive.
        IntPolynomial r = f;
        const Int& lg = g.leading();
        int scale_sign = 1;
        while (!r.is_zero() && r.degree() >= g.degree()) {
            Int lr = r.leading();
            std::size_t shift = static_cast<std::size_t>(r.degree() - g.degree());
            r = lg * r - lr * (IntPolynomial::monomial(shift) * g);
            if (lg < 0) scale_sign = -scale_sign;
        }
        if (scale_sign < 0) r = -r;
        if (r.is_zero()) break; // gcd reached (repeated roots); chain still valid
        chain.push_back((-r).divided_by_content());
    }
    return chain;
}

inline int sign_of_rat(const Rat& q) { return sgn(q); }

inline int sturm_variations(const std::vector<IntPolynomial>& chain, const Rat& x) {
    int variations = 0, last = 0;
    for (const IntPolynomial& f : chain) {
        int s = sign_of_rat(f.eval(x));
        if (s == 0) continue;
        if (last != 0 && s != last) ++variations;
        last = s;
    }
    return variations;
}

/// Distinct real roots of p in (a, b].
inline int count_real_roots(const std::vector<IntPolynomial>& chain, const Rat& a,
                            const Rat& b) {
    return sturm_variations(chain, a) - sturm_variations(chain, b);
}

/// Complete exact decision for "some root has modulus >= tau", used when the
/// Schur-Cohn recursion degenerates. Soundness: a real root x of the pairwise
/// product polynomial with |x| >= tau^2 forces a pair |lambda_i||lambda_j| >=
/// tau^2, hence max >= tau; conversely |lambda|^2 is such a root.
inline bool has_modulus_ge_by_products(const IntPolynomial& p, const Rat& tau) {
    IntPolynomial m = pairwise_root_products(p);
    Rat tau2 = tau * tau;
    tau2.canonicalize();
    if (m.eval(tau2) == 0 || m.eval(Rat(-tau2)) == 0) return true;
    Int bound = 2;
    for (int k = 0; k < m.degree(); ++k) bound += abs(m.coeff(static_cast<std::size_t>(k)));
    auto chain = sturm_chain(m);
    Rat b(bound);
    if (count_real_roots(chain, tau2, b) > 0) return true;
    if (count_real_roots(chain, Rat(-b), Rat(-tau2)) > 0) return true;
    return false;
}

} // namespace detail

/// True iff some root of p has |z| >= threshold. Primary path: the open-disk
/// count (count < degree means a root lies on or outside the circle, with the
/// boundary certified clear). On DegenerateRecursion the answer is decided by
/// the pairwise-root-product fallback, which is exact in all cases including
/// roots exactly on the circle.
inline bool has_modulus_ge(const IntPolynomial& p, const Rat& threshold) {
    if (!p.is_monic()) throw NotMonic("modulus threshold test requires a monic polynomial");
    if (p.degree() <= 0) return false;
    try {
        DiskCount count = roots_in_open_disk(p, threshold);
        return count.roots_strictly_inside < count.degree;
    } catch (const DegenerateRecursion&) {
        return detail::has_modulus_ge_by_products(p, threshold);
    }
}

/// Smallest n <= n_max such that char_poly(A^n) has a root of modulus >=
/// threshold. Requires char_poly(A) to have a non-root-of-unity root, which
/// guarantees such n exists (spectral radius exceeds 1).
inline int power_for_threshold(const IntMatrix& a, const Rat& threshold, int n_max = 64) {
    if (!a.is_square()) throw NotSquare("power selection on a non-square matrix");
    if (n_max < 1) throw ValidationError("power budget must be at least 1");
    if (kronecker_all_roots_of_unity(char_poly(a)))
        throw AllRootsOfUnity("every eigenvalue is a root of unity; no power reaches " +
                              threshold.get_str());
    IntMatrix power = a;
    for (int n = 1; n <= n_max; ++n) {
        if (n > 1) power = power * a;
        if (has_modulus_ge(char_poly(power), threshold)) return n;
    }
    throw PowerBudgetExceeded("no eigenvalue of modulus >= " + threshold.get_str() +
                              " up to power " + std::to_string(n_max));
}

/// Advisory per-element test: does this one matrix act with all eigenvalues
/// roots of unity? For general polycyclic inputs this inspects a single
/// element's action, not the action on a full lower-central series, so a
/// "true" here is necessary but not sufficient for polynomial growth.
inline bool spectrum_all_roots_of_unity(const IntMatrix& m) {
    if (!m.is_square()) throw NotSquare("spectrum test on a non-square matrix");
    if (!is_unimodular(m))
        throw NotUnimodular("spectrum test requires det = +-1, got det = " +
                            det(m).get_str());
    return kronecker_all_roots_of_unity(char_poly(m));
}

/// The spectral trichotomy that drives classification.
struct SpectralVerdict {
    bool all_roots_of_unity = false;
    bool exists_modulus_ge_two = false;
    std::optional<int> witness_power; // smallest n with |eigenvalue(A^n)| >= 2
};

inline SpectralVerdict spectral_verdict(const IntMatrix& a, int n_max = 64) {
    SpectralVerdict v;
    IntPolynomial p = char_poly(a);
    v.all_roots_of_unity = kronecker_all_roots_of_unity(p);
    if (v.all_roots_of_unity) return v;
    v.exists_modulus_ge_two = has_modulus_ge(p, Rat(2));
    v.witness_power = power_for_threshold(a, Rat(2), n_max);
    return v;
}

} // namespace growthforge
