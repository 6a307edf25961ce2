#ifndef CENTROMIX_PC_GROUP_HPP
#define CENTROMIX_PC_GROUP_HPP

// The group family Z^n x|_A Z (A unimodular) and finite direct products.
// Elements are per-factor pairs (v, k) with (v,k)(w,l) = (v + A^k w, k+l).

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "centromix/matrix.hpp"
#include "centromix/normal_form.hpp"
#include "centromix/poly_factor.hpp"
#include "centromix/rational.hpp"

namespace centromix {

class PcGroup {
public:
    explicit PcGroup(IntMat a) : a_(std::move(a)) {
        if (!a_.is_square()) throw std::invalid_argument("action matrix must be square");
        Int d = det(a_);
        if (d != 1 && d != -1)
            throw std::invalid_argument("action matrix must be unimodular");
        quasi_unipotent_ = is_quasi_unipotent(a_);
        order_ = compute_order();
    }

    std::size_t rank() const { return a_.rows(); }
    const IntMat& action() const { return a_; }
    bool quasi_unipotent() const { return quasi_unipotent_; }

    // order of the action matrix, empty when infinite
    std::optional<unsigned long> action_order() const { return order_; }

    IntMat action_power(const Int& k) const {
        if (!k.fits_slong_p()) throw std::invalid_argument("exponent out of range");
        return matrix_power(a_, k.get_si());
    }

    bool operator==(const PcGroup& o) const { return a_ == o.a_; }

private:
    std::optional<unsigned long> compute_order() const {
        if (!quasi_unipotent_) return std::nullopt;
        const std::size_t n = rank();
        if (n == 0) return 1;
        // eigenvalue orders m all satisfy phi(m) <= n, so any finite order
        // divides lcm of those m
        Int k(1);
        for (unsigned long m = 1; m <= 2 * n * n + 1; ++m)
            if (euler_phi(m) <= n) k = lcm(k, Int(static_cast<long>(m)));
        IntMat id = IntMat::identity(n);
        IntMat power = a_;
        for (unsigned long d = 1; Int(static_cast<long>(d)) <= k; ++d) {
            if (power == id) return d;
            power = power * a_;
        }
        return std::nullopt;
    }

    IntMat a_;
    bool quasi_unipotent_ = false;
    std::optional<unsigned long> order_;
};

class PcProduct {
public:
    explicit PcProduct(std::vector<PcGroup> factors) : factors_(std::move(factors)) {
        if (factors_.empty()) throw std::invalid_argument("product needs at least one factor");
    }

    std::size_t size() const { return factors_.size(); }
    const PcGroup& factor(std::size_t i) const { return factors_[i]; }

    std::size_t lattice_rank() const {
        std::size_t n = 0;
        for (const auto& f : factors_) n += f.rank();
        return n;
    }

private:
    std::vector<PcGroup> factors_;
};

struct PcElement {
    // one (v, k) pair per factor
    std::vector<std::vector<Int>> v;
    std::vector<Int> k;

    static PcElement identity(const PcProduct& g) {
        PcElement e;
        for (std::size_t i = 0; i < g.size(); ++i) {
            e.v.emplace_back(g.factor(i).rank(), Int(0));
            e.k.emplace_back(0);
        }
        return e;
    }

    // (e_s, 0) in factor i
    static PcElement lattice_generator(const PcProduct& g, std::size_t i, std::size_t s) {
        PcElement e = identity(g);
        e.v[i][s] = 1;
        return e;
    }

    // (0, 1) in factor i
    static PcElement t_generator(const PcProduct& g, std::size_t i) {
        PcElement e = identity(g);
        e.k[i] = 1;
        return e;
    }

    bool operator==(const PcElement& o) const { return v == o.v && k == o.k; }
    bool operator!=(const PcElement& o) const { return !(*this == o); }

    bool is_identity() const {
        for (const auto& vi : v)
            for (const auto& x : vi)
                if (x != 0) return false;
        for (const auto& ki : k)
            if (ki != 0) return false;
        return true;
    }
};

inline PcElement multiply(const PcProduct& g, const PcElement& x, const PcElement& y) {
    if (x.v.size() != g.size() || y.v.size() != g.size())
        throw std::invalid_argument("element does not match the group");
    PcElement r = PcElement::identity(g);
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (x.v[i].size() != g.factor(i).rank() || y.v[i].size() != g.factor(i).rank())
            throw std::invalid_argument("lattice coordinate length mismatch");
        IntMat ak = g.factor(i).action_power(x.k[i]);
        std::vector<Int> shifted = ak.apply(y.v[i]);
        for (std::size_t s = 0; s < shifted.size(); ++s) r.v[i][s] = x.v[i][s] + shifted[s];
        r.k[i] = x.k[i] + y.k[i];
    }
    return r;
}

inline PcElement inverse(const PcProduct& g, const PcElement& x) {
    PcElement r = PcElement::identity(g);
    for (std::size_t i = 0; i < g.size(); ++i) {
        IntMat ainv = g.factor(i).action_power(-x.k[i]);
        std::vector<Int> w = ainv.apply(x.v[i]);
        for (std::size_t s = 0; s < w.size(); ++s) r.v[i][s] = -w[s];
        r.k[i] = -x.k[i];
    }
    return r;
}

inline PcElement commutator(const PcProduct& g, const PcElement& x, const PcElement& y) {
    return multiply(g, multiply(g, x, y), multiply(g, inverse(g, x), inverse(g, y)));
}

// Fitting subgroup description: always contains the lattice; the t-direction
// enters with stride d exactly when some power A^d is unipotent.
struct FittingDescription {
    std::size_t lattice_rank = 0;
    unsigned long t_stride = 0;  // 0 means the Fitting subgroup is the lattice alone
};

inline FittingDescription fitting(const PcGroup& g) {
    FittingDescription out;
    out.lattice_rank = g.rank();
    if (!g.quasi_unipotent()) return out;
    const std::size_t n = g.rank();
    if (n == 0) {
        out.t_stride = 1;
        return out;
    }
    IntMat id = IntMat::identity(n);
    for (unsigned long d = 1;; ++d) {
        IntMat p = matrix_power(g.action(), static_cast<long>(d)) - id;
        IntMat acc = id;
        for (std::size_t i = 0; i < n; ++i) acc = acc * p;
        if (acc.is_zero()) {
            out.t_stride = d;
            return out;
        }
    }
}

// Center description: the fixed lattice Fix(A), plus <t^d> when A has finite
// order d.
struct CenterDescription {
    IntMat fixed_lattice;  // HNF basis rows of { v : A v = v }
    std::optional<unsigned long> t_stride;

    std::size_t rank() const {
        return fixed_lattice.rows() + (t_stride.has_value() ? 1 : 0);
    }
};

inline CenterDescription center(const PcGroup& g) {
    CenterDescription out;
    out.fixed_lattice = integer_right_kernel(g.action() - IntMat::identity(g.rank()));
    out.t_stride = g.action_order();
    return out;
}

}  // namespace centromix

#endif
