#ifndef CENTROMIX_PC_ENDO_HPP
#define CENTROMIX_PC_ENDO_HPP

// Endomorphisms of products of Z^n x|_A Z groups as grids of block
// homomorphisms, their validation, and the factorization into a
// factor-permuting part and a central part.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "centromix/matrix.hpp"
#include "centromix/normal_form.hpp"
#include "centromix/pc_group.hpp"
#include "centromix/subspace.hpp"

namespace centromix {

// Homomorphism from factor src to factor dst:
//   (v, k) |-> (M v + S_k w, q k),  S_k = sum_{m=0}^{k-1} A_dst^(m q)
// subject to the intertwining law M A_src = A_dst^q M.
struct BlockHom {
    std::size_t src = 0;
    std::size_t dst = 0;
    IntMat m;
    std::vector<Int> w;
    long q = 0;

    bool is_trivial() const {
        if (q != 0 || !m.is_zero()) return false;
        for (const Int& x : w)
            if (x != 0) return false;
        return true;
    }
};

inline BlockHom trivial_block(const PcProduct& g, std::size_t src, std::size_t dst) {
    BlockHom b;
    b.src = src;
    b.dst = dst;
    b.m = IntMat(g.factor(dst).rank(), g.factor(src).rank());
    b.w.assign(g.factor(dst).rank(), Int(0));
    return b;
}

inline bool block_law_holds(const PcProduct& g, const BlockHom& b) {
    const IntMat& a_src = g.factor(b.src).action();
    IntMat adst_q = matrix_power(g.factor(b.dst).action(), b.q);
    return b.m * a_src == adst_q * b.m;
}

// telescoped sum S_k = sum_{m=0}^{k-1} A^(m q); S_{-k} = -A^(-k q) S_k
inline IntMat telescoped_sum(const PcGroup& dst, long q, const Int& k) {
    const std::size_t n = dst.rank();
    IntMat aq = matrix_power(dst.action(), q);
    IntMat s = IntMat(n, n);
    bool negative = k < 0;
    Int count = negative ? Int(-k) : k;
    IntMat power = IntMat::identity(n);
    for (Int i(0); i < count; ++i) {
        s = s + power;
        power = power * aq;
    }
    if (negative) {
        if (!count.fits_slong_p()) throw std::invalid_argument("exponent out of range");
        IntMat back = matrix_power(dst.action(), -q * count.get_si());
        s = -(back * s);
    }
    return s;
}

// image of the single-factor element (v, k) under the block
inline std::pair<std::vector<Int>, Int> apply_block(const PcProduct& g, const BlockHom& b,
                                                    const std::vector<Int>& v, const Int& k) {
    std::vector<Int> mv = b.m.apply(v);
    IntMat sk = telescoped_sum(g.factor(b.dst), b.q, k);
    std::vector<Int> skw = sk.apply(b.w);
    for (std::size_t i = 0; i < mv.size(); ++i) mv[i] += skw[i];
    return {mv, Int(b.q) * k};
}

class PcEndo {
public:
    PcEndo(const PcProduct& g, std::vector<BlockHom> blocks) {
        r_ = g.size();
        grid_.reserve(r_ * r_);
        for (std::size_t j = 0; j < r_; ++j)
            for (std::size_t i = 0; i < r_; ++i) grid_.push_back(trivial_block(g, i, j));
        for (BlockHom& b : blocks) {
            if (b.src >= r_ || b.dst >= r_) throw std::invalid_argument("block index out of range");
            if (b.m.rows() != g.factor(b.dst).rank() || b.m.cols() != g.factor(b.src).rank() ||
                b.w.size() != g.factor(b.dst).rank())
                throw std::invalid_argument("block shape mismatch");
            grid_[b.dst * r_ + b.src] = std::move(b);
        }
    }

    std::size_t factors() const { return r_; }
    const BlockHom& block(std::size_t dst, std::size_t src) const {
        return grid_[dst * r_ + src];
    }
    BlockHom& block(std::size_t dst, std::size_t src) { return grid_[dst * r_ + src]; }

    PcElement apply(const PcProduct& g, const PcElement& x) const {
        PcElement out = PcElement::identity(g);
        for (std::size_t j = 0; j < r_; ++j) {
            // product over sources; validation guarantees the images commute
            std::vector<Int> acc_v(g.factor(j).rank(), Int(0));
            Int acc_k(0);
            for (std::size_t i = 0; i < r_; ++i) {
                auto [bv, bk] = apply_block(g, block(j, i), x.v[i], x.k[i]);
                IntMat shift = g.factor(j).action_power(acc_k);
                std::vector<Int> shifted = shift.apply(bv);
                for (std::size_t s = 0; s < acc_v.size(); ++s) acc_v[s] += shifted[s];
                acc_k += bk;
            }
            out.v[j] = std::move(acc_v);
            out.k[j] = acc_k;
        }
        return out;
    }

    // the N x N integer matrix giving the action on the full lattice
    IntMat lattice_matrix(const PcProduct& g) const {
        const std::size_t n = g.lattice_rank();
        IntMat out(n, n);
        std::size_t row = 0;
        for (std::size_t j = 0; j < r_; ++j) {
            std::size_t col = 0;
            for (std::size_t i = 0; i < r_; ++i) {
                out.paste(row, col, block(j, i).m);
                col += g.factor(i).rank();
            }
            row += g.factor(j).rank();
        }
        return out;
    }

    // the r x r matrix induced on the quotient Z^r of t-exponents
    IntMat quotient_matrix() const {
        IntMat out(r_, r_);
        for (std::size_t j = 0; j < r_; ++j)
            for (std::size_t i = 0; i < r_; ++i) out(j, i) = block(j, i).q;
        return out;
    }

private:
    std::size_t r_ = 0;
    std::vector<BlockHom> grid_;
};

struct Violation {
    std::string kind;
    std::size_t dst = 0;
    std::size_t src = 0;
    std::string detail;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

// generator images of a block inside the target factor, as (v, k) pairs
inline std::vector<std::pair<std::vector<Int>, Int>> block_generator_images(
    const PcProduct& g, const BlockHom& b) {
    std::vector<std::pair<std::vector<Int>, Int>> images;
    for (std::size_t s = 0; s < g.factor(b.src).rank(); ++s)
        images.push_back({b.m.col(s), Int(0)});
    images.push_back({b.w, Int(b.q)});
    return images;
}

inline ValidationReport validate_endo(const PcProduct& g, const PcEndo& e) {
    ValidationReport report;
    const std::size_t r = g.size();
    for (std::size_t j = 0; j < r; ++j)
        for (std::size_t i = 0; i < r; ++i) {
            const BlockHom& b = e.block(j, i);
            if (!block_law_holds(g, b))
                report.violations.push_back(
                    {"block-law", j, i, "M A_src != A_dst^q M"});
        }
    // in each target factor, images of distinct blocks must commute pairwise
    for (std::size_t j = 0; j < r; ++j)
        for (std::size_t i1 = 0; i1 < r; ++i1)
            for (std::size_t i2 = i1 + 1; i2 < r; ++i2) {
                const BlockHom& b1 = e.block(j, i1);
                const BlockHom& b2 = e.block(j, i2);
                if (b1.is_trivial() || b2.is_trivial()) continue;
                const PcGroup& target = g.factor(j);
                auto commutes = [&](const std::pair<std::vector<Int>, Int>& x,
                                    const std::pair<std::vector<Int>, Int>& y) {
                    // (v,k)(w,l) = (w,l)(v,k) in the target factor
                    IntMat ak = target.action_power(x.second);
                    IntMat al = target.action_power(y.second);
                    std::vector<Int> lhs = ak.apply(y.first);
                    std::vector<Int> rhs = al.apply(x.first);
                    for (std::size_t s = 0; s < lhs.size(); ++s)
                        if (x.first[s] + lhs[s] != y.first[s] + rhs[s]) return false;
                    return true;
                };
                for (const auto& x : block_generator_images(g, b1))
                    for (const auto& y : block_generator_images(g, b2))
                        if (!commutes(x, y)) {
                            report.violations.push_back(
                                {"non-commuting-images", j, i1,
                                 "images of blocks from factors " + std::to_string(i1) +
                                     " and " + std::to_string(i2) + " do not commute"});
                            goto next_pair;
                        }
            next_pair:;
            }
    return report;
}

inline bool is_central_block(const PcProduct& g, const BlockHom& b) {
    const PcGroup& target = g.factor(b.dst);
    CenterDescription z = center(target);
    Subspace fix = Subspace::from_rows(target.rank(), to_rational(z.fixed_lattice));
    for (std::size_t s = 0; s < b.m.cols(); ++s) {
        std::vector<Rat> col(target.rank());
        for (std::size_t t = 0; t < target.rank(); ++t) col[t] = Rat(b.m(t, s));
        if (!fix.contains(col)) return false;
    }
    std::vector<Rat> wq(target.rank());
    for (std::size_t t = 0; t < target.rank(); ++t) wq[t] = Rat(b.w[t]);
    if (!fix.contains(wq)) return false;
    if (b.q != 0) {
        if (!z.t_stride) return false;
        if (b.q % static_cast<long>(*z.t_stride) != 0) return false;
    }
    return true;
}

// theta candidate: the block does not kill commutators, or its t-image acts
// nontrivially on the target lattice
inline bool is_theta_candidate(const PcProduct& g, const BlockHom& b) {
    const PcGroup& src = g.factor(b.src);
    IntMat commutator_action = b.m * (src.action() - IntMat::identity(src.rank()));
    if (!commutator_action.is_zero()) return true;
    IntMat aq = matrix_power(g.factor(b.dst).action(), b.q);
    return aq != IntMat::identity(g.factor(b.dst).rank());
}

struct MixingError : std::runtime_error {
    explicit MixingError(const std::string& what) : std::runtime_error(what) {}
};

struct ThetaZeta {
    std::vector<std::size_t> sigma;  // theta sends factor i into factor sigma[i]
    PcEndo theta;
    PcEndo zeta;
};

inline ThetaZeta decompose_theta_zeta(const PcProduct& g, const PcEndo& phi) {
    const std::size_t r = g.size();
    ValidationReport rep = validate_endo(g, phi);
    if (!rep.ok()) throw std::invalid_argument("endomorphism fails validation");
    for (std::size_t i = 0; i < r; ++i)
        if (g.factor(i).action() == IntMat::identity(g.factor(i).rank()))
            throw std::invalid_argument("factors must be non-abelian (action != identity)");

    std::vector<std::size_t> sigma(r, r);
    std::vector<bool> used(r, false);
    for (std::size_t i = 0; i < r; ++i) {
        std::size_t found = r;
        for (std::size_t j = 0; j < r; ++j) {
            if (!is_theta_candidate(g, phi.block(j, i))) continue;
            if (found != r)
                throw MixingError("central-mixing hypothesis violated: no unique sigma for factor " +
                                  std::to_string(i));
            found = j;
        }
        if (found == r)
            throw MixingError("central-mixing hypothesis violated: no sigma for factor " +
                              std::to_string(i));
        if (used[found])
            throw MixingError("central-mixing hypothesis violated: sigma is not a permutation");
        used[found] = true;
        sigma[i] = found;
    }

    std::vector<BlockHom> theta_blocks, zeta_blocks;
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) {
            const BlockHom& b = phi.block(j, i);
            if (j == sigma[i]) {
                theta_blocks.push_back(b);
            } else if (!b.is_trivial()) {
                zeta_blocks.push_back(b);
            }
        }

    for (const BlockHom& b : zeta_blocks)
        if (!is_central_block(g, b))
            throw MixingError("block (" + std::to_string(b.dst) + "," + std::to_string(b.src) +
                              ") is neither the permuting block nor central");
    for (const BlockHom& b : theta_blocks) {
        if (det(b.m) == 0)
            throw MixingError("permuting block (" + std::to_string(b.dst) + "," +
                              std::to_string(b.src) + ") has singular lattice part");
        if (b.q != 1 && b.q != -1)
            throw MixingError("permuting block (" + std::to_string(b.dst) + "," +
                              std::to_string(b.src) + ") has |q| != 1");
    }

    ThetaZeta out{std::move(sigma), PcEndo(g, std::move(theta_blocks)),
                  PcEndo(g, std::move(zeta_blocks))};

    // phi = theta * zeta pointwise on all generators
    for (std::size_t i = 0; i < r; ++i) {
        std::vector<PcElement> gens;
        for (std::size_t s = 0; s < g.factor(i).rank(); ++s)
            gens.push_back(PcElement::lattice_generator(g, i, s));
        gens.push_back(PcElement::t_generator(g, i));
        for (const PcElement& x : gens) {
            PcElement lhs = phi.apply(g, x);
            PcElement rhs = multiply(g, out.theta.apply(g, x), out.zeta.apply(g, x));
            if (lhs != rhs) throw MixingError("theta * zeta does not recompose to phi");
        }
    }
    return out;
}

inline bool is_injective(const PcProduct& g, const PcEndo& phi) {
    if (!validate_endo(g, phi).ok()) throw std::invalid_argument("endomorphism fails validation");
    if (det(phi.lattice_matrix(g)) == 0) return false;
    return det(phi.quotient_matrix()) != 0;
}

struct UnsupportedError : std::runtime_error {
    explicit UnsupportedError(const std::string& what) : std::runtime_error(what) {}
};

// [Gamma : phi(Gamma)] = |det of the lattice block matrix|, certified when the
// induced map on the t-quotient is bijective.
inline Int index(const PcProduct& g, const PcEndo& phi) {
    if (!is_injective(g, phi)) throw std::invalid_argument("index requires an injective map");
    Int dq = det(phi.quotient_matrix());
    if (dq != 1 && dq != -1)
        throw UnsupportedError("index is certified only for |det Q| = 1");
    Int d = det(phi.lattice_matrix(g));
    return abs(d);
}

}  // namespace centromix

#endif
