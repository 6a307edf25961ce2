#ifndef CENTROMIX_MALCEV_HPP
#define CENTROMIX_MALCEV_HPP

// Exact normal-form arithmetic for two fixed nilpotent presentations: the
// class-3 group K on the basis (t, a, b, c, f), and its index-p extension
// G(p) on the basis (t, a, s, c^(1/p), f). The multiplication polynomials are
// hard-coded closed forms; this is a fixture, not a general collection engine.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "centromix/normal_form.hpp"
#include "centromix/rational.hpp"

namespace centromix {

inline Int binom2(const Int& n) { return n * (n - 1) / 2; }

// exponents on the basis (t, a, b, c, f)
struct MalcevElementK {
    Int tau, alpha, beta, gamma, phi;

    bool operator==(const MalcevElementK& o) const {
        return tau == o.tau && alpha == o.alpha && beta == o.beta && gamma == o.gamma &&
               phi == o.phi;
    }

    static MalcevElementK identity() { return {Int(0), Int(0), Int(0), Int(0), Int(0)}; }
};

inline MalcevElementK multiply_k(const MalcevElementK& x, const MalcevElementK& y) {
    MalcevElementK r;
    r.tau = x.tau + y.tau;
    r.alpha = x.alpha + y.alpha;
    r.beta = x.beta + y.beta + y.tau * x.alpha;
    r.gamma = x.gamma + y.gamma + y.tau * x.beta + binom2(y.tau) * x.alpha;
    r.phi = x.phi + y.phi;
    return r;
}

inline MalcevElementK inverse_k(const MalcevElementK& x) {
    // solve x * y = identity coordinate by coordinate
    MalcevElementK y;
    y.tau = -x.tau;
    y.alpha = -x.alpha;
    y.beta = -x.beta + x.tau * x.alpha;
    y.gamma = -x.gamma - y.tau * x.beta - binom2(y.tau) * x.alpha;
    y.phi = -x.phi;
    MalcevElementK check = multiply_k(x, y);
    if (!(check == MalcevElementK::identity())) throw std::logic_error("inverse_k failed");
    return y;
}

// exponents on the basis (t, a, s, c^(1/p), f); gamma counts powers of c^(1/p)
struct MalcevElementG {
    Int tau, alpha, sigma, gamma, phi;

    bool operator==(const MalcevElementG& o) const {
        return tau == o.tau && alpha == o.alpha && sigma == o.sigma && gamma == o.gamma &&
               phi == o.phi;
    }

    static MalcevElementG identity() { return {Int(0), Int(0), Int(0), Int(0), Int(0)}; }
};

class MalcevGroupG {
public:
    explicit MalcevGroupG(long p) : p_(p) {
        if (p < 2) throw std::invalid_argument("parameter p must be at least 2");
    }

    long p() const { return p_; }

    MalcevElementG multiply(const MalcevElementG& x, const MalcevElementG& y) const {
        Int p(p_);
        MalcevElementG r;
        r.tau = x.tau + y.tau;
        r.alpha = x.alpha + y.alpha;
        r.sigma = x.sigma + y.sigma + p * y.tau * x.alpha;
        // the c-exponent is gamma/p with integral gamma throughout
        r.gamma = x.gamma + y.gamma + y.tau * x.sigma + p * binom2(y.tau) * x.alpha;
        r.phi = x.phi + y.phi - y.tau * x.alpha;
        return r;
    }

    MalcevElementG inverse(const MalcevElementG& x) const {
        Int p(p_);
        MalcevElementG y;
        y.tau = -x.tau;
        y.alpha = -x.alpha;
        y.sigma = -x.sigma + p * x.tau * x.alpha;
        y.gamma = -x.gamma - y.tau * x.sigma - p * binom2(y.tau) * x.alpha;
        y.phi = -x.phi + y.tau * x.alpha;
        MalcevElementG check = multiply(x, y);
        if (!(check == MalcevElementG::identity())) throw std::logic_error("inverse failed");
        return y;
    }

    MalcevElementG commutator(const MalcevElementG& x, const MalcevElementG& y) const {
        return multiply(multiply(x, y), multiply(inverse(x), inverse(y)));
    }

    // the central map  t^tau a^alpha s^sigma c^(gamma/p) f^phi  |->  f^(p phi + sigma)
    MalcevElementG zeta(const MalcevElementG& x) const {
        MalcevElementG r = MalcevElementG::identity();
        r.phi = Int(p_) * x.phi + x.sigma;
        return r;
    }

private:
    long p_;
};

struct SurjectivityReport {
    bool solvable = false;
    // the reduced 2x2 system on the free exponents (phi_x, phi_y)
    IntMat system;
    std::vector<Int> rhs;
    std::string detail;
    std::optional<std::pair<MalcevElementG, MalcevElementG>> witness;
};

// Does (x zeta(y), zeta(x) y) = target have a solution?  The component
// equations force every exponent except phi_x and phi_y, which satisfy an
// integer 2x2 system; solvability is decided exactly via the Smith form.
inline SurjectivityReport psi_reaches(const MalcevGroupG& g, const MalcevElementG& t1,
                                      const MalcevElementG& t2) {
    Int p(g.p());
    SurjectivityReport out;
    // zeta lands in <f>, so multiplying by it only shifts the f-exponent:
    //   x zeta(y) = t1  forces (tau, alpha, sigma, gamma) of x to match t1
    //   zeta(x) y = t2  forces the same for y
    // leaving  phi_x + p phi_y = t1.phi - t2.sigma - p ...; spelled out:
    //   phi_x + (p phi_y + sigma_y) = t1.phi
    //   phi_y + (p phi_x + sigma_x) = t2.phi
    Int sigma_x = t1.sigma, sigma_y = t2.sigma;
    out.system = IntMat{{Int(1), p}, {p, Int(1)}};
    out.rhs = {t1.phi - sigma_y, t2.phi - sigma_x};
    auto sol = solve_integer_system(out.system, out.rhs);
    out.solvable = sol.has_value();
    if (sol) {
        MalcevElementG x{t1.tau, t1.alpha, t1.sigma, t1.gamma, (*sol)[0]};
        MalcevElementG y{t2.tau, t2.alpha, t2.sigma, t2.gamma, (*sol)[1]};
        // confirm by direct evaluation
        MalcevElementG first = g.multiply(x, g.zeta(y));
        MalcevElementG second = g.multiply(g.zeta(x), y);
        if (!(first == t1) || !(second == t2))
            throw std::logic_error("claimed solution does not evaluate to the target");
        out.witness = {x, y};
        out.detail = "solvable";
    } else {
        out.detail = "the exponent system  phi_x + p*phi_y = " + to_string(out.rhs[0]) +
                     ",  p*phi_x + phi_y = " + to_string(out.rhs[1]) +
                     "  has no integer solution (determinant 1 - p^2 = " +
                     to_string(Int(1) - p * p) + ")";
    }
    return out;
}

// the target (f, 1): f in the first component, identity in the second
inline SurjectivityReport psi_surjectivity_check(long p) {
    MalcevGroupG g(p);
    MalcevElementG f_elem = MalcevElementG::identity();
    f_elem.phi = 1;
    return psi_reaches(g, f_elem, MalcevElementG::identity());
}

}  // namespace centromix

#endif
