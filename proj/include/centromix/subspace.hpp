#ifndef CENTROMIX_SUBSPACE_HPP
#define CENTROMIX_SUBSPACE_HPP

// Rational subspaces stored as canonical reduced row echelon bases, so
// subspace equality is structural equality of the basis matrices.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "centromix/matrix.hpp"
#include "centromix/rational.hpp"

namespace centromix {

// In-place reduced row echelon form; returns the pivot columns.
inline std::vector<std::size_t> rref(RatMat& m) {
    std::vector<std::size_t> pivots;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
        std::size_t sel = rank;
        while (sel < m.rows() && m(sel, c) == 0) ++sel;
        if (sel == m.rows()) continue;
        m.swap_rows(rank, sel);
        Rat inv = Rat(1) / m(rank, c);
        m.scale_row(rank, inv);
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == rank || m(i, c) == 0) continue;
            m.add_row_multiple(i, rank, -m(i, c));
        }
        pivots.push_back(c);
        ++rank;
    }
    return pivots;
}

inline std::size_t rank(RatMat m) { return rref(m).size(); }

// Basis rows of { v : m v = 0 }.
inline RatMat rational_right_kernel(const RatMat& m) {
    RatMat a = m;
    std::vector<std::size_t> pivots = rref(a);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : pivots) is_pivot[c] = true;
    std::size_t k = m.cols() - pivots.size();
    RatMat basis(k, m.cols());
    std::size_t row = 0;
    for (std::size_t c = 0; c < m.cols(); ++c) {
        if (is_pivot[c]) continue;
        basis(row, c) = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) basis(row, pivots[r]) = -a(r, c);
        ++row;
    }
    return basis;
}

inline std::optional<RatMat> try_inverse(const RatMat& m) {
    if (!m.is_square()) throw std::invalid_argument("inverse of non-square matrix");
    const std::size_t n = m.rows();
    RatMat aug(n, 2 * n);
    aug.paste(0, 0, m);
    aug.paste(0, n, RatMat::identity(n));
    auto pivots = rref(aug);
    if (pivots.size() != n || pivots.back() >= n) return std::nullopt;
    return aug.submatrix(0, n, n, n);
}

inline RatMat inverse(const RatMat& m) {
    auto inv = try_inverse(m);
    if (!inv) throw std::invalid_argument("matrix is singular");
    return *inv;
}

class Subspace {
public:
    Subspace() = default;

    static Subspace from_rows(std::size_t ambient, const RatMat& rows) {
        if (rows.rows() > 0 && rows.cols() != ambient)
            throw std::invalid_argument("subspace row length mismatch");
        RatMat a = rows;
        std::vector<std::size_t> pivots = rref(a);
        Subspace s;
        s.ambient_ = ambient;
        s.pivots_ = std::move(pivots);
        s.basis_ = RatMat(s.pivots_.size(), ambient);
        for (std::size_t i = 0; i < s.pivots_.size(); ++i)
            for (std::size_t j = 0; j < ambient; ++j) s.basis_(i, j) = a(i, j);
        return s;
    }

    static Subspace full(std::size_t ambient) {
        return from_rows(ambient, RatMat::identity(ambient));
    }

    static Subspace zero(std::size_t ambient) { return from_rows(ambient, RatMat(0, ambient)); }

    std::size_t ambient() const { return ambient_; }
    std::size_t dim() const { return basis_.rows(); }
    const RatMat& basis() const { return basis_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }

    bool operator==(const Subspace& o) const {
        return ambient_ == o.ambient_ && basis_ == o.basis_;
    }
    bool operator!=(const Subspace& o) const { return !(*this == o); }

    bool contains(const std::vector<Rat>& v) const {
        std::vector<Rat> r = reduce(v);
        for (const Rat& x : r)
            if (x != 0) return false;
        return true;
    }

    bool contains(const Subspace& o) const {
        for (std::size_t i = 0; i < o.dim(); ++i)
            if (!contains(o.basis_.row(i))) return false;
        return true;
    }

    // Residual of v after subtracting its projection along the pivot columns;
    // zero exactly when v lies in the subspace.
    std::vector<Rat> reduce(const std::vector<Rat>& v) const {
        if (v.size() != ambient_) throw std::invalid_argument("vector length mismatch");
        std::vector<Rat> r = v;
        for (std::size_t i = 0; i < basis_.rows(); ++i) {
            Rat c = r[pivots_[i]];
            if (c == 0) continue;
            for (std::size_t j = 0; j < ambient_; ++j) r[j] -= c * basis_(i, j);
        }
        return r;
    }

    // Coordinates of v in the RREF basis; nullopt when v is outside.
    std::optional<std::vector<Rat>> coordinates(const std::vector<Rat>& v) const {
        if (!contains(v)) return std::nullopt;
        std::vector<Rat> c(basis_.rows());
        for (std::size_t i = 0; i < basis_.rows(); ++i) c[i] = v[pivots_[i]];
        return c;
    }

    Subspace sum(const Subspace& o) const {
        RatMat stacked(dim() + o.dim(), ambient_);
        stacked.paste(0, 0, basis_);
        stacked.paste(dim(), 0, o.basis_);
        return from_rows(ambient_, stacked);
    }

    Subspace intersect(const Subspace& o) const {
        // pairs (x, y) with x*basis = y*o.basis, i.e. left kernel of the stack
        RatMat stacked(dim() + o.dim(), ambient_);
        stacked.paste(0, 0, basis_);
        for (std::size_t i = 0; i < o.dim(); ++i)
            for (std::size_t j = 0; j < ambient_; ++j) stacked(dim() + i, j) = -o.basis_(i, j);
        RatMat combos = rational_right_kernel(stacked.transpose());
        RatMat vectors(combos.rows(), ambient_);
        for (std::size_t k = 0; k < combos.rows(); ++k)
            for (std::size_t j = 0; j < ambient_; ++j) {
                Rat v(0);
                for (std::size_t i = 0; i < dim(); ++i) v += combos(k, i) * basis_(i, j);
                vectors(k, j) = v;
            }
        return from_rows(ambient_, vectors);
    }

    // Image under a linear map given by an (m x ambient) matrix.
    Subspace apply(const RatMat& map) const {
        RatMat rows(dim(), map.rows());
        for (std::size_t i = 0; i < dim(); ++i) {
            auto v = map.apply(basis_.row(i));
            for (std::size_t j = 0; j < map.rows(); ++j) rows(i, j) = v[j];
        }
        return from_rows(map.rows(), rows);
    }

    // Canonical total order: dimension, then pivot columns, then entries.
    bool before(const Subspace& o) const {
        if (dim() != o.dim()) return dim() < o.dim();
        if (pivots_ != o.pivots_) return pivots_ < o.pivots_;
        for (std::size_t i = 0; i < basis_.rows(); ++i)
            for (std::size_t j = 0; j < basis_.cols(); ++j)
                if (basis_(i, j) != o.basis_(i, j)) return basis_(i, j) < o.basis_(i, j);
        return false;
    }

private:
    std::size_t ambient_ = 0;
    std::vector<std::size_t> pivots_;
    RatMat basis_;
};

}  // namespace centromix

#endif
