#ifndef CENTROMIX_NORMAL_FORM_HPP
#define CENTROMIX_NORMAL_FORM_HPP

// Hermite and Smith normal forms over the integers, with unimodular
// transformations, plus the lattice utilities built on them (integer kernels,
// cokernel enumeration, lattice equality).
//
// Pivot selection everywhere: smallest nonzero absolute value, ties broken by
// (row, col) order, so outputs are reproducible across platforms.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "centromix/matrix.hpp"
#include "centromix/rational.hpp"

namespace centromix {

struct HermiteResult {
    IntMat h;  // row-style HNF: pivots positive, entries above pivots in [0, pivot)
    IntMat u;  // unimodular, u * input = h
    std::size_t rank = 0;
};

struct SmithResult {
    IntMat s;  // diagonal, d_i >= 0, d_i | d_{i+1}
    IntMat u;  // unimodular, u * input * v = s
    IntMat v;
};

inline HermiteResult hermite_normal_form(const IntMat& m) {
    HermiteResult res;
    res.h = m;
    res.u = IntMat::identity(m.rows());
    IntMat& h = res.h;
    IntMat& u = res.u;
    const std::size_t rows = m.rows(), cols = m.cols();

    std::size_t r = 0;
    std::vector<std::size_t> pivot_cols;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        // Euclidean reduction within the column until one nonzero entry remains.
        for (;;) {
            std::size_t best = rows;
            for (std::size_t i = r; i < rows; ++i) {
                if (h(i, c) == 0) continue;
                if (best == rows || cmp(abs(h(i, c)), abs(h(best, c))) < 0) best = i;
            }
            if (best == rows) break;  // column is zero below r
            h.swap_rows(r, best);
            u.swap_rows(r, best);
            bool cleared = true;
            for (std::size_t i = r + 1; i < rows; ++i) {
                if (h(i, c) == 0) continue;
                Int q = fdiv_q(h(i, c), h(r, c));
                h.add_row_multiple(i, r, -q);
                u.add_row_multiple(i, r, -q);
                if (h(i, c) != 0) cleared = false;
            }
            if (cleared) break;
        }
        if (h(r, c) == 0) continue;
        if (h(r, c) < 0) {
            h.scale_row(r, Int(-1));
            u.scale_row(r, Int(-1));
        }
        pivot_cols.push_back(c);
        ++r;
    }
    res.rank = r;

    // Reduce entries above each pivot into [0, pivot).
    for (std::size_t k = 0; k < pivot_cols.size(); ++k) {
        std::size_t c = pivot_cols[k];
        for (std::size_t i = 0; i < k; ++i) {
            Int q = fdiv_q(h(i, c), h(k, c));
            if (q != 0) {
                h.add_row_multiple(i, k, -q);
                u.add_row_multiple(i, k, -q);
            }
        }
    }
    return res;
}

inline SmithResult smith_normal_form(const IntMat& m) {
    SmithResult res;
    res.s = m;
    res.u = IntMat::identity(m.rows());
    res.v = IntMat::identity(m.cols());
    IntMat& s = res.s;
    IntMat& u = res.u;
    IntMat& v = res.v;
    const std::size_t rows = m.rows(), cols = m.cols();
    const std::size_t t_max = rows < cols ? rows : cols;

    for (std::size_t t = 0; t < t_max; ++t) {
        for (;;) {
            // smallest |entry| in the remaining block
            std::size_t pi = rows, pj = cols;
            for (std::size_t i = t; i < rows; ++i)
                for (std::size_t j = t; j < cols; ++j) {
                    if (s(i, j) == 0) continue;
                    if (pi == rows || cmp(abs(s(i, j)), abs(s(pi, pj))) < 0) {
                        pi = i;
                        pj = j;
                    }
                }
            if (pi == rows) goto done;  // remaining block is zero
            s.swap_rows(t, pi);
            u.swap_rows(t, pi);
            s.swap_cols(t, pj);
            v.swap_cols(t, pj);

            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (s(i, t) == 0) continue;
                Int q = fdiv_q(s(i, t), s(t, t));
                s.add_row_multiple(i, t, -q);
                u.add_row_multiple(i, t, -q);
                if (s(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (s(t, j) == 0) continue;
                Int q = fdiv_q(s(t, j), s(t, t));
                s.add_col_multiple(j, t, -q);
                v.add_col_multiple(j, t, -q);
                if (s(t, j) != 0) clean = false;
            }
            if (!clean) continue;

            // divisibility: fold in any entry the pivot does not divide
            bool divides = true;
            for (std::size_t i = t + 1; i < rows && divides; ++i)
                for (std::size_t j = t + 1; j < cols && divides; ++j)
                    if (fdiv_r(s(i, j), s(t, t)) != 0) {
                        s.add_row_multiple(t, i, Int(1));
                        u.add_row_multiple(t, i, Int(1));
                        divides = false;
                    }
            if (divides) break;
        }
        if (s(t, t) < 0) {
            s.scale_row(t, Int(-1));
            u.scale_row(t, Int(-1));
        }
    }
done:
    return res;
}

inline std::vector<Int> smith_diagonal(const SmithResult& r) {
    const std::size_t n = r.s.rows() < r.s.cols() ? r.s.rows() : r.s.cols();
    std::vector<Int> d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = r.s(i, i);
    return d;
}

// Z-basis of { l : l * m = 0 }, returned HNF-reduced. The rows of U matching
// the zero rows of H = U*m span the left kernel lattice.
inline IntMat integer_left_kernel(const IntMat& m) {
    HermiteResult hr = hermite_normal_form(m);
    const std::size_t k = m.rows() - hr.rank;
    IntMat basis(k, m.rows());
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < m.rows(); ++j) basis(i, j) = hr.u(hr.rank + i, j);
    HermiteResult canon = hermite_normal_form(basis);
    IntMat out(k, m.rows());
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < m.rows(); ++j) out(i, j) = canon.h(i, j);
    return out;
}

// Z-basis of { v : m * v = 0 }, as rows.
inline IntMat integer_right_kernel(const IntMat& m) {
    return integer_left_kernel(m.transpose());
}

// Lattice equality of row spans, decided on canonical HNFs.
inline bool same_row_lattice(const IntMat& a, const IntMat& b) {
    if (a.cols() != b.cols()) return false;
    HermiteResult ha = hermite_normal_form(a);
    HermiteResult hb = hermite_normal_form(b);
    if (ha.rank != hb.rank) return false;
    for (std::size_t i = 0; i < ha.rank; ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (ha.h(i, j) != hb.h(i, j)) return false;
    return true;
}

// Order of Z^n / (row lattice of m); nullopt when the quotient is infinite.
inline std::optional<Int> cokernel_order(const IntMat& m) {
    if (m.rows() < m.cols()) return std::nullopt;
    SmithResult sr = smith_normal_form(m);
    Int order(1);
    for (std::size_t i = 0; i < m.cols(); ++i) {
        if (sr.s(i, i) == 0) return std::nullopt;
        order *= sr.s(i, i);
    }
    return order;
}

// Representatives of Z^n / (m * Z^n) for nonsingular m, in lexicographic order
// of the Smith coordinates mapped back through the unimodular transform.
inline std::vector<std::vector<Int>> cokernel_representatives(const IntMat& m) {
    if (!m.is_square()) throw std::invalid_argument("cokernel of non-square matrix");
    const std::size_t n = m.rows();
    SmithResult sr = smith_normal_form(m);
    std::vector<Int> d = smith_diagonal(sr);
    for (const Int& di : d)
        if (di == 0) throw std::invalid_argument("cokernel is infinite");

    // m Z^n = U^{-1} S Z^n, so coset reps are U^{-1} x with x_i in [0, d_i).
    IntMat uinv = matrix_power(sr.u, -1);
    std::vector<std::vector<Int>> reps;
    std::vector<Int> x(n, Int(0));
    for (;;) {
        reps.push_back(uinv.apply(x));
        std::size_t i = n;
        while (i > 0) {
            --i;
            x[i] += 1;
            if (x[i] < d[i]) break;
            x[i] = 0;
            if (i == 0) return reps;
        }
        if (n == 0) return reps;
    }
}

// Decides m * z = b over the integers; returns a witness solution or nullopt.
inline std::optional<std::vector<Int>> solve_integer_system(const IntMat& m,
                                                            const std::vector<Int>& b) {
    if (b.size() != m.rows()) throw std::invalid_argument("rhs length mismatch");
    SmithResult sr = smith_normal_form(m);
    std::vector<Int> c = sr.u.apply(b);
    std::vector<Int> y(m.cols(), Int(0));
    const std::size_t t_max = m.rows() < m.cols() ? m.rows() : m.cols();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Int di = (i < t_max) ? sr.s(i, i) : Int(0);
        if (di == 0) {
            if (c[i] != 0) return std::nullopt;
        } else {
            if (fdiv_r(c[i], di) != 0) return std::nullopt;
            y[i] = c[i] / di;
        }
    }
    return sr.v.apply(y);
}

}  // namespace centromix

#endif
