#ifndef CENTROMIX_REIDEMEISTER_HPP
#define CENTROMIX_REIDEMEISTER_HPP

// Reidemeister numbers of injective endomorphisms of products of
// Z^n x|_A Z groups, computed through the extension
//   1 -> Z^N -> Gamma -> Z^r -> 1
// by the addition formula: a sum of twisted lattice counts over the cosets of
// Z^r / (I - Q) Z^r, exact because det(I - Q) != 0 forces trivial twisted
// stabilizers on the quotient. det(I - Q) = 0 yields an infinite quotient
// count, hence an infinite total.

#include <cstddef>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "centromix/matrix.hpp"
#include "centromix/normal_form.hpp"
#include "centromix/pc_endo.hpp"
#include "centromix/pc_group.hpp"

namespace centromix {

struct ReidCount {
    bool finite = false;
    Int value;  // meaningful only when finite; always >= 1

    static ReidCount infinity() { return {false, Int(0)}; }
    static ReidCount of(Int v) { return {true, std::move(v)}; }

    bool operator==(const ReidCount& o) const {
        return finite == o.finite && (!finite || value == o.value);
    }

    std::string str() const { return finite ? to_string(value) : "infinity"; }
};

inline ReidCount reidemeister_abelian(const IntMat& m) {
    if (!m.is_square()) throw std::invalid_argument("abelian count needs a square matrix");
    Int d = det(IntMat::identity(m.rows()) - m);
    if (d == 0) return ReidCount::infinity();
    return ReidCount::of(abs(d));
}

struct ReidemeisterResult {
    ReidCount count;
    // per-coset data, empty when the quotient count is already infinite
    std::vector<std::vector<Int>> coset_representatives;
    std::vector<Int> terms;
    bool quotient_infinite = false;
};

inline ReidemeisterResult reidemeister_full(const PcProduct& g, const PcEndo& phi) {
    if (!is_injective(g, phi))
        throw std::invalid_argument("reidemeister number requires a valid injective map");
    const std::size_t r = g.size();
    IntMat q = phi.quotient_matrix();
    IntMat iq = IntMat::identity(r) - q;
    ReidemeisterResult out;
    if (det(iq) == 0) {
        // infinitely many classes already on the t-quotient
        out.count = ReidCount::infinity();
        out.quotient_infinite = true;
        return out;
    }
    IntMat lattice = phi.lattice_matrix(g);
    const std::size_t n = g.lattice_rank();
    out.coset_representatives = cokernel_representatives(iq);
    Int total(0);
    bool infinite = false;
    for (const auto& rep : out.coset_representatives) {
        IntMat twist(n, n);
        std::size_t offset = 0;
        for (std::size_t i = 0; i < r; ++i) {
            twist.paste(offset, offset, g.factor(i).action_power(rep[i]));
            offset += g.factor(i).rank();
        }
        Int term = abs(det(IntMat::identity(n) - twist * lattice));
        out.terms.push_back(term);
        if (term == 0) infinite = true;
        total += term;
    }
    out.count = infinite ? ReidCount::infinity() : ReidCount::of(total);
    return out;
}

inline ReidCount reidemeister(const PcProduct& g, const PcEndo& phi) {
    return reidemeister_full(g, phi).count;
}

// Reidemeister number of the restriction to the center of a single factor.
// The center is Fix(A) plus, for finite-order A, the stride subgroup <t^d>;
// the restriction is a matrix on that free abelian group.
inline ReidCount reidemeister_center_restriction(const PcGroup& g, const BlockHom& b) {
    PcProduct single({g});
    if (!block_law_holds(single, b))
        throw std::invalid_argument("block fails the homomorphism law");
    CenterDescription z = center(g);
    const std::size_t f = z.fixed_lattice.rows();
    const std::size_t dim = f + (z.t_stride ? 1 : 0);
    if (dim == 0) return ReidCount::of(Int(1));  // trivial center, one class

    IntMat basis_t = z.fixed_lattice.transpose();
    IntMat restricted(dim, dim);
    for (std::size_t s = 0; s < f; ++s) {
        std::vector<Int> image = b.m.apply(z.fixed_lattice.row(s));
        auto coords = solve_integer_system(basis_t, image);
        if (!coords) throw std::invalid_argument("center is not preserved");
        for (std::size_t t = 0; t < f; ++t) restricted(t, s) = (*coords)[t];
    }
    if (z.t_stride) {
        long d = static_cast<long>(*z.t_stride);
        // image of t^d is (S_d w, q d)
        auto [v, k] = apply_block(single, b, std::vector<Int>(g.rank(), Int(0)), Int(d));
        if (fdiv_r(k, Int(d)) != 0) throw std::invalid_argument("center is not preserved");
        auto coords = solve_integer_system(basis_t, v);
        if (!coords) throw std::invalid_argument("center is not preserved");
        for (std::size_t t = 0; t < f; ++t) restricted(t, f) = (*coords)[t];
        restricted(f, f) = k / Int(d);
    }
    return reidemeister_abelian(restricted);
}

// ---------------------------------------------------------------------------
// Product formula for permutation-shaped endomorphisms.
// ---------------------------------------------------------------------------

// composition dst <- mid <- src of two blocks, as a block src -> dst
inline BlockHom compose_blocks(const PcProduct& g, const BlockHom& outer,
                               const BlockHom& inner) {
    if (outer.src != inner.dst) throw std::invalid_argument("blocks do not compose");
    BlockHom out;
    out.src = inner.src;
    out.dst = outer.dst;
    out.m = outer.m * inner.m;
    out.q = outer.q * inner.q;
    // image of t: inner sends it to (w_in, q_in), outer maps that element
    auto [v, k] = apply_block(g, outer, inner.w, Int(inner.q));
    out.w = v;
    (void)k;
    return out;
}

struct CycleContribution {
    std::vector<std::size_t> cycle;  // factor indices, smallest first
    ReidCount count;
};

struct ProductFormulaResult {
    ReidCount count;
    std::vector<CycleContribution> cycles;
};

inline ProductFormulaResult reidemeister_product_formula(const PcProduct& g, const PcEndo& phi) {
    const std::size_t r = g.size();
    if (!validate_endo(g, phi).ok())
        throw std::invalid_argument("endomorphism fails validation");

    // permutation shape: exactly one nontrivial block per source and target
    std::vector<std::size_t> sigma(r, r);
    std::vector<bool> hit(r, false);
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) {
            if (phi.block(j, i).is_trivial()) continue;
            if (sigma[i] != r)
                throw std::invalid_argument("endomorphism is not permutation-shaped");
            sigma[i] = j;
        }
        if (sigma[i] == r) throw std::invalid_argument("endomorphism is not permutation-shaped");
        if (hit[sigma[i]]) throw std::invalid_argument("endomorphism is not permutation-shaped");
        hit[sigma[i]] = true;
    }

    ProductFormulaResult out;
    out.count = ReidCount::of(Int(1));
    std::vector<bool> seen(r, false);
    for (std::size_t start = 0; start < r; ++start) {
        if (seen[start]) continue;
        CycleContribution contrib;
        std::size_t i = start;
        do {
            seen[i] = true;
            contrib.cycle.push_back(i);
            i = sigma[i];
        } while (i != start);

        // compose blocks around the cycle back into the starting factor
        BlockHom composite = phi.block(sigma[contrib.cycle.back()], contrib.cycle.back());
        for (std::size_t t = contrib.cycle.size() - 1; t > 0; --t) {
            const std::size_t src = contrib.cycle[t - 1];
            composite = compose_blocks(g, composite, phi.block(sigma[src], src));
        }
        // composite: start -> start
        PcProduct single({g.factor(start)});
        BlockHom local = composite;
        local.src = 0;
        local.dst = 0;
        PcEndo cycle_endo(single, {local});
        if (!validate_endo(single, cycle_endo).ok())
            throw std::logic_error("cycle composite fails the block law");
        ReidemeisterResult rr;
        {
            // addition formula on the single factor, without the injectivity
            // requirement: the product formula applies to all homomorphisms
            IntMat q = cycle_endo.quotient_matrix();
            IntMat iq = IntMat::identity(1) - q;
            if (det(iq) == 0) {
                rr.count = ReidCount::infinity();
                rr.quotient_infinite = true;
            } else {
                IntMat lattice = cycle_endo.lattice_matrix(single);
                const std::size_t n = single.lattice_rank();
                rr.coset_representatives = cokernel_representatives(iq);
                Int total(0);
                bool infinite = false;
                for (const auto& rep : rr.coset_representatives) {
                    IntMat twist = single.factor(0).action_power(rep[0]);
                    Int term = abs(det(IntMat::identity(n) - twist * lattice));
                    rr.terms.push_back(term);
                    if (term == 0) infinite = true;
                    total += term;
                }
                rr.count = infinite ? ReidCount::infinity() : ReidCount::of(total);
            }
        }
        contrib.count = rr.count;
        if (!contrib.count.finite) out.count = ReidCount::infinity();
        else if (out.count.finite) out.count.value *= contrib.count.value;
        out.cycles.push_back(std::move(contrib));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Spectrum combination and the central-noise invariance check.
// ---------------------------------------------------------------------------

struct SpectrumSet {
    std::set<Int> finite;
    bool has_infinity = false;

    bool operator==(const SpectrumSet& o) const {
        return finite == o.finite && has_infinity == o.has_infinity;
    }
};

inline SpectrumSet spectrum_product(const SpectrumSet& a, const SpectrumSet& b) {
    SpectrumSet out;
    const bool a_nonempty = a.has_infinity || !a.finite.empty();
    const bool b_nonempty = b.has_infinity || !b.finite.empty();
    // infinity absorbs any partner
    out.has_infinity = (a.has_infinity && b_nonempty) || (b.has_infinity && a_nonempty);
    for (const Int& x : a.finite)
        for (const Int& y : b.finite) out.finite.insert(x * y);
    return out;
}

// product over components of (union of j-fold set powers, j = 1..multiplicity)
inline SpectrumSet spectrum_combine(const std::vector<SpectrumSet>& specs,
                                    const std::vector<std::size_t>& multiplicities) {
    if (specs.size() != multiplicities.size())
        throw std::invalid_argument("one multiplicity per spectrum required");
    SpectrumSet total;
    total.finite.insert(Int(1));
    for (std::size_t c = 0; c < specs.size(); ++c) {
        if (multiplicities[c] == 0) throw std::invalid_argument("multiplicities must be positive");
        SpectrumSet unioned;
        SpectrumSet power = specs[c];
        for (std::size_t j = 1; j <= multiplicities[c]; ++j) {
            unioned.has_infinity = unioned.has_infinity || power.has_infinity;
            unioned.finite.insert(power.finite.begin(), power.finite.end());
            if (j < multiplicities[c]) power = spectrum_product(power, specs[c]);
        }
        total = spectrum_product(total, unioned);
    }
    return total;
}

struct CentralNoiseCheck {
    ReidCount r_phi;
    ReidCount r_theta;
    bool equal = false;
    std::vector<std::size_t> sigma;
};

// Compares R(phi) and R(theta) computed independently via the addition
// formula. Inequality is the witness that the factorization hypotheses fail.
inline CentralNoiseCheck theorem_e_check(const PcProduct& g, const PcEndo& phi) {
    ThetaZeta tz = decompose_theta_zeta(g, phi);
    CentralNoiseCheck out;
    out.sigma = tz.sigma;
    out.r_phi = reidemeister(g, phi);
    out.r_theta = reidemeister(g, tz.theta);
    out.equal = (out.r_phi == out.r_theta);
    return out;
}

}  // namespace centromix

#endif
