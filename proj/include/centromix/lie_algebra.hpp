#ifndef CENTROMIX_LIE_ALGEBRA_HPP
#define CENTROMIX_LIE_ALGEBRA_HPP

// Finite-dimensional Lie algebras over the rationals, presented by structure
// constants. Construction validates antisymmetry and the Jacobi identity.

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "centromix/matrix.hpp"
#include "centromix/rational.hpp"
#include "centromix/subspace.hpp"

namespace centromix {

class LieAlgebra {
public:
    LieAlgebra() = default;

    // structure[i][j][k] is the e_k coefficient of [e_i, e_j]
    explicit LieAlgebra(std::size_t dim, std::vector<Rat> structure)
        : dim_(dim), c_(std::move(structure)) {
        if (c_.size() != dim * dim * dim)
            throw std::invalid_argument("structure constant count mismatch");
        validate();
    }

    static LieAlgebra abelian(std::size_t n) {
        return LieAlgebra(n, std::vector<Rat>(n * n * n, Rat(0)));
    }

    // [e1, e2] = e3
    static LieAlgebra heisenberg() {
        LieAlgebra l = abelian(3);
        l.set(0, 1, 2, Rat(1));
        l.set(1, 0, 2, Rat(-1));
        l.validate();
        return l;
    }

    // basis (h, e, f): [h,e] = 2e, [h,f] = -2f, [e,f] = h
    static LieAlgebra sl2() {
        LieAlgebra l = abelian(3);
        l.set(0, 1, 1, Rat(2));
        l.set(1, 0, 1, Rat(-2));
        l.set(0, 2, 2, Rat(-2));
        l.set(2, 0, 2, Rat(2));
        l.set(1, 2, 0, Rat(1));
        l.set(2, 1, 0, Rat(-1));
        l.validate();
        return l;
    }

    static LieAlgebra direct_sum(const LieAlgebra& a, const LieAlgebra& b) {
        const std::size_t n = a.dim_ + b.dim_;
        LieAlgebra l = abelian(n);
        for (std::size_t i = 0; i < a.dim_; ++i)
            for (std::size_t j = 0; j < a.dim_; ++j)
                for (std::size_t k = 0; k < a.dim_; ++k) l.set(i, j, k, a.c(i, j, k));
        for (std::size_t i = 0; i < b.dim_; ++i)
            for (std::size_t j = 0; j < b.dim_; ++j)
                for (std::size_t k = 0; k < b.dim_; ++k)
                    l.set(a.dim_ + i, a.dim_ + j, a.dim_ + k, b.c(i, j, k));
        l.validate();
        return l;
    }

    // New basis vectors are the columns of p.
    LieAlgebra change_basis(const RatMat& p) const {
        if (p.rows() != dim_ || p.cols() != dim_)
            throw std::invalid_argument("basis change shape mismatch");
        RatMat pinv = inverse(p);
        LieAlgebra l = abelian(dim_);
        for (std::size_t a = 0; a < dim_; ++a)
            for (std::size_t b = 0; b < dim_; ++b) {
                std::vector<Rat> br = bracket(p.col(a), p.col(b));
                std::vector<Rat> coords = pinv.apply(br);
                for (std::size_t m = 0; m < dim_; ++m) l.set(a, b, m, coords[m]);
            }
        l.validate();
        return l;
    }

    std::size_t dim() const { return dim_; }

    const Rat& c(std::size_t i, std::size_t j, std::size_t k) const {
        return c_[(i * dim_ + j) * dim_ + k];
    }

    std::vector<Rat> bracket(const std::vector<Rat>& x, const std::vector<Rat>& y) const {
        if (x.size() != dim_ || y.size() != dim_)
            throw std::invalid_argument("bracket operand length mismatch");
        std::vector<Rat> r(dim_, Rat(0));
        for (std::size_t i = 0; i < dim_; ++i) {
            if (x[i] == 0) continue;
            for (std::size_t j = 0; j < dim_; ++j) {
                if (y[j] == 0) continue;
                Rat f = x[i] * y[j];
                for (std::size_t k = 0; k < dim_; ++k) {
                    const Rat& s = c(i, j, k);
                    if (s != 0) r[k] += f * s;
                }
            }
        }
        return r;
    }

    std::vector<Rat> basis_vector(std::size_t i) const {
        std::vector<Rat> v(dim_, Rat(0));
        v[i] = 1;
        return v;
    }

private:
    friend class LieAlgebraBuilder;

    void set(std::size_t i, std::size_t j, std::size_t k, const Rat& v) {
        c_[(i * dim_ + j) * dim_ + k] = v;
    }

    void validate() const {
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t j = 0; j < dim_; ++j)
                for (std::size_t k = 0; k < dim_; ++k)
                    if (c(i, j, k) != -c(j, i, k))
                        throw std::invalid_argument("structure constants are not antisymmetric");
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t j = i + 1; j < dim_; ++j)
                for (std::size_t k = j + 1; k < dim_; ++k) {
                    std::vector<Rat> s(dim_, Rat(0));
                    accumulate_jacobi(i, j, k, s);
                    accumulate_jacobi(j, k, i, s);
                    accumulate_jacobi(k, i, j, s);
                    for (const Rat& v : s)
                        if (v != 0) throw std::invalid_argument("Jacobi identity fails");
                }
    }

    // s += [e_i, [e_j, e_k]]
    void accumulate_jacobi(std::size_t i, std::size_t j, std::size_t k,
                           std::vector<Rat>& s) const {
        for (std::size_t m = 0; m < dim_; ++m) {
            const Rat& inner = c(j, k, m);
            if (inner == 0) continue;
            for (std::size_t t = 0; t < dim_; ++t) s[t] += inner * c(i, m, t);
        }
    }

    std::size_t dim_ = 0;
    std::vector<Rat> c_;
};

// Convenience for building algebras bracket by bracket; symmetrizes and
// validates on finish().
class LieAlgebraBuilder {
public:
    explicit LieAlgebraBuilder(std::size_t dim) : l_(LieAlgebra::abelian(dim)) {}

    LieAlgebraBuilder& bracket(std::size_t i, std::size_t j, std::vector<Rat> coeffs) {
        for (std::size_t k = 0; k < coeffs.size(); ++k) {
            l_.set(i, j, k, coeffs[k]);
            l_.set(j, i, k, -coeffs[k]);
        }
        return *this;
    }

    LieAlgebra finish() {
        l_.validate();
        return l_;
    }

private:
    LieAlgebra l_;
};

inline Subspace center(const LieAlgebra& l) {
    const std::size_t n = l.dim();
    // rows indexed by (j, k): sum_i x_i c[i][j][k] = 0
    RatMat sys(n * n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t i = 0; i < n; ++i) sys(j * n + k, i) = l.c(i, j, k);
    return Subspace::from_rows(n, rational_right_kernel(sys));
}

inline Subspace derived(const LieAlgebra& l) {
    const std::size_t n = l.dim();
    RatMat rows(n * (n - 1) / 2, n);
    std::size_t r = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j, ++r)
            for (std::size_t k = 0; k < n; ++k) rows(r, k) = l.c(i, j, k);
    return Subspace::from_rows(n, rows);
}

inline bool is_ideal(const LieAlgebra& l, const Subspace& s) {
    for (std::size_t i = 0; i < s.dim(); ++i)
        for (std::size_t j = 0; j < l.dim(); ++j)
            if (!s.contains(l.bracket(s.basis().row(i), l.basis_vector(j)))) return false;
    return true;
}

// f([x,y]) = [f(x), y] on all ordered basis pairs. The identity is not
// symmetric in (x, y), so both orders matter; once it holds for all pairs,
// [x, f(y)] = f([x,y]) follows by antisymmetry. Raw matrices qualify;
// bracket-compatibility of f is not required (projections onto ideals are
// the motivating example).
inline bool is_normal_endo(const LieAlgebra& l, const RatMat& f) {
    const std::size_t n = l.dim();
    if (f.rows() != n || f.cols() != n) return false;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<Rat> lhs(n, Rat(0));
            for (std::size_t k = 0; k < n; ++k) {
                const Rat& s = l.c(i, j, k);
                if (s == 0) continue;
                for (std::size_t t = 0; t < n; ++t) lhs[t] += s * f(t, k);
            }
            std::vector<Rat> rhs = l.bracket(f.col(i), l.basis_vector(j));
            if (lhs != rhs) return false;
        }
    return true;
}

// Basis of { f : f[x,y] = [f(x), y] = [x, f(y)] for all x, y }, solved as a
// linear system over the n^2 matrix entries. RREF kernel order, so the basis
// is deterministic.
inline std::vector<RatMat> centroid(const LieAlgebra& l) {
    const std::size_t n = l.dim();
    // unknown f_(r,c) at index r*n + c; all ordered pairs (i, j), since the
    // defining identity is not symmetric in the arguments
    // constraint (i, j, k): sum_a c[i][j][a] f_(k,a) - sum_a f_(a,i) c[a][j][k] = 0
    RatMat sys(n * n * n, n * n);
    std::size_t row = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k, ++row) {
                for (std::size_t a = 0; a < n; ++a) {
                    sys(row, k * n + a) += l.c(i, j, a);
                    sys(row, a * n + i) -= l.c(a, j, k);
                }
            }
    RatMat kernel = rational_right_kernel(sys);
    std::vector<RatMat> basis;
    for (std::size_t b = 0; b < kernel.rows(); ++b) {
        RatMat f(n, n);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) f(r, c) = kernel(b, r * n + c);
        basis.push_back(std::move(f));
    }
    return basis;
}

struct FittingSplit {
    Subspace kernel;
    Subspace image;
    std::size_t exponent = 0;  // smallest N with rank(f^N) = rank(f^(N+1))
};

inline FittingSplit fitting_split(const LieAlgebra& l, const RatMat& f) {
    if (!is_normal_endo(l, f))
        throw std::invalid_argument("fitting_split requires a normal endomorphism");
    const std::size_t n = l.dim();
    std::size_t exponent = 1;
    RatMat power = f;
    std::size_t r = rank(power);
    for (;;) {
        RatMat next = power * f;
        std::size_t rn = rank(next);
        if (rn == r) break;
        power = std::move(next);
        r = rn;
        ++exponent;
    }
    FittingSplit out;
    out.exponent = exponent;
    out.kernel = Subspace::from_rows(n, rational_right_kernel(power));
    out.image = Subspace::from_rows(n, power.transpose());
    if (out.kernel.dim() + out.image.dim() != n ||
        out.kernel.intersect(out.image).dim() != 0)
        throw std::logic_error("fitting split is not a direct sum");
    return out;
}

inline bool has_abelian_summand(const LieAlgebra& l) {
    return !derived(l).contains(center(l));
}

// Lie algebra endomorphism: a matrix verified to be bracket-compatible.
class LieEndo {
public:
    LieEndo(const LieAlgebra& l, RatMat m) : matrix_(std::move(m)) {
        const std::size_t n = l.dim();
        if (matrix_.rows() != n || matrix_.cols() != n)
            throw std::invalid_argument("endomorphism shape mismatch");
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                std::vector<Rat> lhs(n, Rat(0));
                for (std::size_t k = 0; k < n; ++k) {
                    const Rat& s = l.c(i, j, k);
                    if (s == 0) continue;
                    for (std::size_t t = 0; t < n; ++t) lhs[t] += s * matrix_(t, k);
                }
                if (lhs != l.bracket(matrix_.col(i), matrix_.col(j)))
                    throw std::invalid_argument("map is not bracket-compatible");
            }
    }

    const RatMat& matrix() const { return matrix_; }

private:
    RatMat matrix_;
};

inline Rat det_endo(const LieEndo& f) { return det(f.matrix()); }

// The structure constants of an ideal in its own RREF basis.
struct RestrictedAlgebra {
    LieAlgebra algebra;
    RatMat basis;  // rows: the ideal's basis vectors in ambient coordinates
};

inline RestrictedAlgebra restrict_to_ideal(const LieAlgebra& l, const Subspace& s) {
    const std::size_t d = s.dim();
    std::vector<Rat> structure(d * d * d, Rat(0));
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) {
            std::vector<Rat> br = l.bracket(s.basis().row(a), s.basis().row(b));
            auto coords = s.coordinates(br);
            if (!coords) throw std::invalid_argument("subspace is not a subalgebra");
            for (std::size_t k = 0; k < d; ++k) structure[(a * d + b) * d + k] = (*coords)[k];
        }
    return {LieAlgebra(d, std::move(structure)), s.basis()};
}

}  // namespace centromix

#endif
