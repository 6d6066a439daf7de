#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "growthforge/errors.hpp"
#include "growthforge/matrix.hpp"
#include "growthforge/numeric.hpp"

namespace growthforge {

/// Row Hermite normal form U*A = H with U unimodular. Convention: pivots
/// positive, entries above a pivot reduced into [0, pivot), zero rows last.
/// This makes H unique, so lattices compare by basis equality.
struct RowHnf {
    IntMatrix h;
    IntMatrix u;
    std::vector<std::size_t> pivot_cols; // one per nonzero row of h
    std::size_t rank() const { return pivot_cols.size(); }
};

inline RowHnf row_hnf(const IntMatrix& a) {
    const std::size_t m = a.rows(), n = a.cols();
    RowHnf out{a, IntMatrix::identity(m), {}};
    IntMatrix& h = out.h;
    IntMatrix& u = out.u;

    auto swap_rows = [&](std::size_t r1, std::size_t r2) {
        if (r1 == r2) return;
        for (std::size_t j = 0; j < n; ++j) std::swap(h.at(r1, j), h.at(r2, j));
        for (std::size_t j = 0; j < m; ++j) std::swap(u.at(r1, j), u.at(r2, j));
    };
    auto negate_row = [&](std::size_t r) {
        for (std::size_t j = 0; j < n; ++j) h.at(r, j) = -h.at(r, j);
        for (std::size_t j = 0; j < m; ++j) u.at(r, j) = -u.at(r, j);
    };
    // row r1 -= q * row r2
    auto submul_row = [&](std::size_t r1, std::size_t r2, const Int& q) {
        if (q == 0) return;
        for (std::size_t j = 0; j < n; ++j) h.at(r1, j) -= q * h.at(r2, j);
        for (std::size_t j = 0; j < m; ++j) u.at(r1, j) -= q * u.at(r2, j);
    };

    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < m; ++col) {
        // Euclidean elimination in this column below `row`.
        while (true) {
            std::size_t best = m;
            for (std::size_t i = row; i < m; ++i) {
                if (h.at(i, col) == 0) continue;
                if (best == m || cmp(abs(h.at(i, col)), abs(h.at(best, col))) < 0)
                    best = i;
            }
            if (best == m) break; // column clear below row
            swap_rows(row, best);
            bool reduced_all = true;
            for (std::size_t i = row + 1; i < m; ++i) {
                if (h.at(i, col) == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), h.at(i, col).get_mpz_t(),
                           h.at(row, col).get_mpz_t());
                submul_row(i, row, q);
                if (h.at(i, col) != 0) reduced_all = false;
            }
            if (reduced_all) break;
        }
        if (h.at(row, col) == 0) continue;
        if (h.at(row, col) < 0) negate_row(row);
        // Reduce entries above the pivot into [0, pivot).
        for (std::size_t i = 0; i < row; ++i) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), h.at(i, col).get_mpz_t(),
                       h.at(row, col).get_mpz_t());
            submul_row(i, row, q);
        }
        out.pivot_cols.push_back(col);
        ++row;
    }
    return out;
}

/// Basis (as rows) of {x in Z^n : M x = 0}. Kernels of integer matrices are
/// saturated by construction.
inline std::vector<std::vector<Int>> integer_kernel(const IntMatrix& m) {
    RowHnf hnf = row_hnf(m.transposed());
    std::vector<std::vector<Int>> basis;
    for (std::size_t i = hnf.rank(); i < hnf.u.rows(); ++i) {
        std::vector<Int> v(hnf.u.cols());
        for (std::size_t j = 0; j < hnf.u.cols(); ++j) v[j] = hnf.u.at(i, j);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Integer sublattice of Z^ambient_rank given by a canonical HNF row basis.
struct Lattice {
    std::size_t ambient_rank = 0;
    IntMatrix basis; // rank x ambient_rank, rows in HNF
    std::vector<std::size_t> pivot_cols;

    std::size_t rank() const { return basis.rows(); }

    bool operator==(const Lattice& o) const {
        return ambient_rank == o.ambient_rank && basis == o.basis;
    }
};

inline IntMatrix stack_rows(const std::vector<std::vector<Int>>& rows, std::size_t n) {
    IntMatrix m(rows.size(), n);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != n)
            throw DimensionMismatch("vector of length " + std::to_string(rows[i].size()) +
                                    " in ambient rank " + std::to_string(n));
        for (std::size_t j = 0; j < n; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

inline Lattice lattice_from_rows(const IntMatrix& rows, std::size_t ambient) {
    RowHnf hnf = row_hnf(rows);
    IntMatrix basis(hnf.rank(), ambient);
    for (std::size_t i = 0; i < hnf.rank(); ++i)
        for (std::size_t j = 0; j < ambient; ++j) basis.at(i, j) = hnf.h.at(i, j);
    return Lattice{ambient, basis, hnf.pivot_cols};
}

/// Smallest primitive sublattice containing the span of the input vectors
/// (if k*v lies in the lattice for k != 0, then v does). Computed as the
/// double integer kernel: saturation = ker(ker(span)^T), which is exact and
/// needs no Smith form. Empty input yields the rank-0 lattice.
inline Lattice hnf_saturate(const std::vector<std::vector<Int>>& vectors,
                            std::size_t ambient_rank) {
    IntMatrix m = stack_rows(vectors, ambient_rank);
    auto orth = integer_kernel(m);
    IntMatrix n = stack_rows(orth, ambient_rank);
    auto sat = integer_kernel(n);
    return lattice_from_rows(stack_rows(sat, ambient_rank), ambient_rank);
}

/// Coordinates of v in the lattice basis, or nullopt if v is not a member.
/// HNF back-substitution down the pivot columns.
inline std::optional<std::vector<Int>> coordinates_in(const Lattice& l,
                                                      const std::vector<Int>& v) {
    if (v.size() != l.ambient_rank)
        throw DimensionMismatch("membership query in wrong ambient rank");
    std::vector<Int> rem = v;
    std::vector<Int> coords(l.rank(), Int(0));
    for (std::size_t i = 0; i < l.rank(); ++i) {
        const std::size_t p = l.pivot_cols[i];
        const Int& pivot = l.basis.at(i, p);
        if (!mpz_divisible_p(rem[p].get_mpz_t(), pivot.get_mpz_t()))
            return std::nullopt;
        Int c = exact_div(rem[p], pivot);
        coords[i] = c;
        if (c != 0)
            for (std::size_t j = 0; j < l.ambient_rank; ++j)
                rem[j] -= c * l.basis.at(i, j);
    }
    for (const Int& x : rem)
        if (x != 0) return std::nullopt;
    return coords;
}

inline bool lattice_contains(const Lattice& l, const std::vector<Int>& v) {
    return coordinates_in(l, v).has_value();
}

/// Integer solution x of M x = b, or nullopt. Via row HNF of M^T:
/// U M^T = H gives M = H^T U^{-T}; solve H^T y = b along pivots, x = U^T y.
inline std::optional<std::vector<Int>> solve_integer(const IntMatrix& m,
                                                     const std::vector<Int>& b) {
    if (b.size() != m.rows())
        throw DimensionMismatch("solve_integer rhs length mismatch");
    RowHnf hnf = row_hnf(m.transposed());
    // H is (cols x rows) of m; H^T y = b with y free on zero rows of H.
    std::vector<Int> rem = b;
    std::vector<Int> y(m.cols(), Int(0));
    for (std::size_t i = 0; i < hnf.rank(); ++i) {
        const std::size_t p = hnf.pivot_cols[i];
        const Int& pivot = hnf.h.at(i, p);
        if (!mpz_divisible_p(rem[p].get_mpz_t(), pivot.get_mpz_t()))
            return std::nullopt;
        Int c = exact_div(rem[p], pivot);
        y[i] = c;
        if (c != 0)
            for (std::size_t j = 0; j < m.rows(); ++j) rem[j] -= c * hnf.h.at(i, j);
    }
    for (const Int& x : rem)
        if (x != 0) return std::nullopt;
    // x = U^T y
    std::vector<Int> x(m.cols(), Int(0));
    for (std::size_t j = 0; j < m.cols(); ++j)
        for (std::size_t i = 0; i < m.cols(); ++i) x[j] += hnf.u.at(i, j) * y[i];
    return x;
}

/// Matrix of A restricted to an A-invariant lattice, in the lattice basis:
/// column i holds the coordinates of A * basis_i. logic_error if not invariant.
inline IntMatrix restricted_action(const IntMatrix& a, const Lattice& l) {
    IntMatrix r(l.rank(), l.rank());
    for (std::size_t i = 0; i < l.rank(); ++i) {
        std::vector<Int> bi(l.ambient_rank);
        for (std::size_t j = 0; j < l.ambient_rank; ++j) bi[j] = l.basis.at(i, j);
        auto coords = coordinates_in(l, a.apply(bi));
        if (!coords)
            throw std::logic_error("restricted_action: lattice is not invariant");
        for (std::size_t j = 0; j < l.rank(); ++j) r.at(j, i) = (*coords)[j];
    }
    return r;
}

/// Surjection Z^r -> Z^(r-s) with kernel exactly the (saturated) lattice:
/// rows are a basis of the orthogonal-complement kernel. Requires l saturated.
inline IntMatrix quotient_projection(const Lattice& l) {
    auto comp = integer_kernel(l.basis.rows() == 0 ? IntMatrix(0, l.ambient_rank)
                                                   : l.basis);
    return stack_rows(comp, l.ambient_rank);
}

/// Action induced by A on the quotient Z^r / L for a saturated A-invariant L.
/// With P = quotient_projection(L) and W an integer right-inverse of P
/// (exists: P is surjective because kernels are saturated), this is P * A * W.
inline IntMatrix induced_quotient_action(const IntMatrix& a,
                                         const IntMatrix& projection) {
    const std::size_t q = projection.rows();
    IntMatrix w(projection.cols(), q);
    for (std::size_t i = 0; i < q; ++i) {
        std::vector<Int> e(q, Int(0));
        e[i] = 1;
        auto x = solve_integer(projection, e);
        if (!x) throw std::logic_error("quotient projection not surjective");
        for (std::size_t j = 0; j < projection.cols(); ++j) w.at(j, i) = (*x)[j];
    }
    return projection * a * w;
}

} // namespace growthforge
