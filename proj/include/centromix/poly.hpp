#ifndef CENTROMIX_POLY_HPP
#define CENTROMIX_POLY_HPP

// Univariate polynomials over the rationals, coefficients lowest degree first.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "centromix/matrix.hpp"
#include "centromix/rational.hpp"

namespace centromix {

class RatPoly {
public:
    RatPoly() = default;
    explicit RatPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }
    RatPoly(std::initializer_list<Rat> coeffs) : c_(coeffs) { trim(); }

    static RatPoly zero() { return RatPoly(); }
    static RatPoly constant(const Rat& v) { return RatPoly({v}); }
    static RatPoly x() { return RatPoly({Rat(0), Rat(1)}); }

    bool is_zero() const { return c_.empty(); }
    // degree of the zero polynomial is reported as -1
    long degree() const { return static_cast<long>(c_.size()) - 1; }

    const std::vector<Rat>& coeffs() const { return c_; }
    Rat coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rat(0); }
    Rat leading() const { return c_.empty() ? Rat(0) : c_.back(); }

    bool operator==(const RatPoly& o) const { return c_ == o.c_; }
    bool operator!=(const RatPoly& o) const { return !(*this == o); }

    RatPoly operator+(const RatPoly& o) const {
        std::vector<Rat> r(std::max(c_.size(), o.c_.size()), Rat(0));
        for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
        for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
        return RatPoly(std::move(r));
    }

    RatPoly operator-(const RatPoly& o) const {
        std::vector<Rat> r(std::max(c_.size(), o.c_.size()), Rat(0));
        for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
        for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
        return RatPoly(std::move(r));
    }

    RatPoly operator-() const {
        std::vector<Rat> r = c_;
        for (auto& v : r) v = -v;
        return RatPoly(std::move(r));
    }

    RatPoly operator*(const RatPoly& o) const {
        if (is_zero() || o.is_zero()) return RatPoly();
        std::vector<Rat> r(c_.size() + o.c_.size() - 1, Rat(0));
        for (std::size_t i = 0; i < c_.size(); ++i)
            for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
        return RatPoly(std::move(r));
    }

    RatPoly operator*(const Rat& s) const {
        std::vector<Rat> r = c_;
        for (auto& v : r) v *= s;
        return RatPoly(std::move(r));
    }

    // Euclidean division: *this = q * d + r with deg r < deg d.
    std::pair<RatPoly, RatPoly> divmod(const RatPoly& d) const {
        if (d.is_zero()) throw std::invalid_argument("polynomial division by zero");
        std::vector<Rat> rem = c_;
        std::vector<Rat> quot;
        long dd = d.degree();
        if (degree() >= dd) quot.assign(static_cast<std::size_t>(degree() - dd) + 1, Rat(0));
        while (static_cast<long>(rem.size()) - 1 >= dd) {
            Rat lead = rem.back() / d.c_.back();
            std::size_t shift = rem.size() - 1 - static_cast<std::size_t>(dd);
            quot[shift] = lead;
            for (std::size_t i = 0; i < d.c_.size(); ++i) rem[shift + i] -= lead * d.c_[i];
            while (!rem.empty() && rem.back() == 0) rem.pop_back();
        }
        return {RatPoly(std::move(quot)), RatPoly(std::move(rem))};
    }

    RatPoly operator/(const RatPoly& d) const { return divmod(d).first; }
    RatPoly operator%(const RatPoly& d) const { return divmod(d).second; }

    RatPoly derivative() const {
        if (c_.size() <= 1) return RatPoly();
        std::vector<Rat> r(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * Rat(static_cast<long>(i));
        return RatPoly(std::move(r));
    }

    Rat eval(const Rat& x) const {
        Rat v(0);
        for (std::size_t i = c_.size(); i > 0; --i) v = v * x + c_[i - 1];
        return v;
    }

    RatMat eval(const RatMat& m) const {
        RatMat v = RatMat::zero(m.rows(), m.cols());
        for (std::size_t i = c_.size(); i > 0; --i) {
            v = v * m;
            for (std::size_t d = 0; d < m.rows(); ++d) v(d, d) += c_[i - 1];
        }
        return v;
    }

    RatPoly monic() const {
        if (is_zero()) return *this;
        return *this * (Rat(1) / leading());
    }

    std::string str() const {
        if (is_zero()) return "0";
        std::string out;
        for (std::size_t i = c_.size(); i > 0; --i) {
            std::size_t d = i - 1;
            Rat v = c_[d];
            if (v == 0) continue;
            if (out.empty()) {
                if (v < 0) out += "-";
            } else {
                out += (v < 0) ? " - " : " + ";
            }
            Rat a = abs(v);
            if (d == 0) {
                out += centromix::to_string(a);
            } else {
                if (a != 1) out += centromix::to_string(a) + "*";
                out += "x";
                if (d > 1) out += "^" + std::to_string(d);
            }
        }
        return out;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<Rat> c_;
};

inline RatPoly poly_gcd(RatPoly a, RatPoly b) {
    while (!b.is_zero()) {
        RatPoly r = a % b;
        a = b;
        b = r;
    }
    return a.monic();
}

// monic g = gcd(a, b) with s*a + t*b = g
inline RatPoly poly_gcdext(const RatPoly& a, const RatPoly& b, RatPoly& s, RatPoly& t) {
    RatPoly r0 = a, r1 = b;
    RatPoly s0 = RatPoly::constant(Rat(1)), s1 = RatPoly::zero();
    RatPoly t0 = RatPoly::zero(), t1 = RatPoly::constant(Rat(1));
    while (!r1.is_zero()) {
        auto [q, r2] = r0.divmod(r1);
        RatPoly s2 = s0 - q * s1;
        RatPoly t2 = t0 - q * t1;
        r0 = r1;
        r1 = r2;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    if (!r0.is_zero()) {
        Rat inv = Rat(1) / r0.leading();
        r0 = r0 * inv;
        s0 = s0 * inv;
        t0 = t0 * inv;
    }
    s = s0;
    t = t0;
    return r0;
}

// Monic characteristic polynomial via the Faddeev-LeVerrier recursion.
inline RatPoly char_poly(const RatMat& m) {
    if (!m.is_square()) throw std::invalid_argument("char_poly of non-square matrix");
    const std::size_t n = m.rows();
    std::vector<Rat> c(n + 1, Rat(0));
    c[n] = 1;
    RatMat mk = RatMat::zero(n, n);
    for (std::size_t k = 1; k <= n; ++k) {
        // M_k = A (M_{k-1} + c_{n-k+1} I)
        for (std::size_t d = 0; d < n; ++d) mk(d, d) += c[n - k + 1];
        mk = m * mk;
        Rat tr(0);
        for (std::size_t d = 0; d < n; ++d) tr += mk(d, d);
        c[n - k] = -tr / Rat(static_cast<long>(k));
    }
    return RatPoly(std::move(c));
}

inline RatPoly char_poly(const IntMat& m) { return char_poly(to_rational(m)); }

// Monic minimal polynomial: first linear dependence among I, m, m^2, ...
// found by incremental elimination on the vectorized powers.
inline RatPoly min_poly(const RatMat& m) {
    if (!m.is_square()) throw std::invalid_argument("min_poly of non-square matrix");
    const std::size_t n = m.rows();
    const std::size_t dim = n * n;
    if (n == 0) return RatPoly({Rat(1)});

    // reduced rows of previously seen powers, with bookkeeping of combinations
    std::vector<std::vector<Rat>> rows;     // echelon rows over Q^dim
    std::vector<std::size_t> pivots;        // pivot index of rows[k]
    std::vector<std::vector<Rat>> combos;   // expression of rows[k] in powers

    RatMat power = RatMat::identity(n);
    for (std::size_t k = 0;; ++k) {
        std::vector<Rat> vec(dim);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) vec[i * n + j] = power(i, j);
        std::vector<Rat> combo(k + 1, Rat(0));
        combo[k] = 1;

        for (std::size_t r = 0; r < rows.size(); ++r) {
            const Rat& v = vec[pivots[r]];
            if (v == 0) continue;
            Rat f = v;
            for (std::size_t j = 0; j < dim; ++j) vec[j] -= f * rows[r][j];
            for (std::size_t j = 0; j < combos[r].size(); ++j) combo[j] -= f * combos[r][j];
        }
        std::size_t p = 0;
        while (p < dim && vec[p] == 0) ++p;
        if (p == dim) {
            // m^k = -sum combo[j<k] m^j, up to the sign of combo[k]
            std::vector<Rat> coeffs(k + 1);
            for (std::size_t j = 0; j <= k; ++j) coeffs[j] = combo[j];
            return RatPoly(std::move(coeffs)).monic();
        }
        Rat lead = vec[p];
        for (auto& v : vec) v /= lead;
        for (auto& v : combo) v /= lead;
        rows.push_back(std::move(vec));
        pivots.push_back(p);
        combos.push_back(std::move(combo));
        power = power * m;
    }
}

inline RatPoly min_poly(const IntMat& m) { return min_poly(to_rational(m)); }

inline unsigned long euler_phi(unsigned long n) {
    unsigned long result = n;
    for (unsigned long p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        while (n % p == 0) n /= p;
        result -= result / p;
    }
    if (n > 1) result -= result / n;
    return result;
}

// Cyclotomic polynomials Phi_m for every m with phi(m) <= max_degree.
// Computed by dividing x^m - 1 by the proper-divisor cyclotomics.
inline std::vector<std::pair<unsigned long, RatPoly>> cyclotomics_up_to_degree(
    unsigned long max_degree) {
    // phi(m) >= sqrt(m/2) for all m, so phi(m) <= d forces m <= 2 d^2.
    unsigned long m_bound = 2 * max_degree * max_degree + 1;
    std::vector<RatPoly> all(m_bound + 1);
    std::vector<std::pair<unsigned long, RatPoly>> out;
    for (unsigned long m = 1; m <= m_bound; ++m) {
        std::vector<Rat> xm(m + 1, Rat(0));
        xm[0] = -1;
        xm[m] = 1;
        RatPoly p{std::move(xm)};
        for (unsigned long d = 1; d < m; ++d)
            if (m % d == 0) p = p / all[d];
        all[m] = p;
        if (euler_phi(m) <= max_degree) out.emplace_back(m, p);
    }
    return out;
}

}  // namespace centromix

#endif
