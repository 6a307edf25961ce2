#ifndef CENTROMIX_POLY_FACTOR_HPP
#define CENTROMIX_POLY_FACTOR_HPP

// Factorization of univariate rational polynomials: Yun squarefree
// decomposition, Berlekamp factorization modulo a small prime, quadratic
// Hensel lifting, Zassenhaus subset recombination. Degrees stay small in this
// project, so recombination cost is irrelevant.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "centromix/poly.hpp"
#include "centromix/rational.hpp"

namespace centromix {

namespace polyfactor_detail {

// ---- arithmetic in F_p[x], p a small prime, coefficients in [0, p) ----

using ZpPoly = std::vector<long long>;

inline void zp_trim(ZpPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline ZpPoly zp_mul(const ZpPoly& a, const ZpPoly& b, long long p) {
    if (a.empty() || b.empty()) return {};
    ZpPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
    zp_trim(r);
    return r;
}

inline long long zp_inv(long long a, long long p) {
    long long t = 0, nt = 1, r = p, nr = a % p;
    while (nr) {
        long long q = r / nr;
        t -= q * nt;
        std::swap(t, nt);
        r -= q * nr;
        std::swap(r, nr);
    }
    return ((t % p) + p) % p;
}

inline std::pair<ZpPoly, ZpPoly> zp_divmod(const ZpPoly& a, const ZpPoly& b, long long p) {
    ZpPoly rem = a, quot;
    if (b.empty()) throw std::invalid_argument("zp division by zero");
    long long binv = zp_inv(b.back(), p);
    if (rem.size() >= b.size()) quot.assign(rem.size() - b.size() + 1, 0);
    while (rem.size() >= b.size()) {
        long long c = rem.back() * binv % p;
        std::size_t shift = rem.size() - b.size();
        quot[shift] = c;
        for (std::size_t i = 0; i < b.size(); ++i)
            rem[shift + i] = ((rem[shift + i] - c * b[i]) % p + p) % p;
        zp_trim(rem);
    }
    zp_trim(quot);
    return {quot, rem};
}

inline ZpPoly zp_gcd(ZpPoly a, ZpPoly b, long long p) {
    while (!b.empty()) {
        ZpPoly r = zp_divmod(a, b, p).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty() && a.back() != 1) {
        long long inv = zp_inv(a.back(), p);
        for (auto& c : a) c = c * inv % p;
    }
    return a;
}

// extended gcd: returns g and sets s,t with s*a + t*b = g (g monic)
inline ZpPoly zp_gcdext(const ZpPoly& a, const ZpPoly& b, long long p, ZpPoly& s, ZpPoly& t) {
    ZpPoly r0 = a, r1 = b, s0 = {1}, s1 = {}, t0 = {}, t1 = {1};
    zp_trim(r0);
    zp_trim(r1);
    while (!r1.empty()) {
        auto [q, r2] = zp_divmod(r0, r1, p);
        ZpPoly s2 = s0, t2 = t0;
        ZpPoly qs = zp_mul(q, s1, p), qt = zp_mul(q, t1, p);
        s2.resize(std::max(s2.size(), qs.size()), 0);
        t2.resize(std::max(t2.size(), qt.size()), 0);
        for (std::size_t i = 0; i < qs.size(); ++i) s2[i] = ((s2[i] - qs[i]) % p + p) % p;
        for (std::size_t i = 0; i < qt.size(); ++i) t2[i] = ((t2[i] - qt[i]) % p + p) % p;
        zp_trim(s2);
        zp_trim(t2);
        r0 = std::move(r1);
        r1 = std::move(r2);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (!r0.empty() && r0.back() != 1) {
        long long inv = zp_inv(r0.back(), p);
        for (auto& c : r0) c = c * inv % p;
        for (auto& c : s0) c = c * inv % p;
        for (auto& c : t0) c = c * inv % p;
    }
    s = std::move(s0);
    t = std::move(t0);
    return r0;
}

inline ZpPoly zp_powmod_x(unsigned long e, const ZpPoly& f, long long p) {
    // x^e mod f by square and multiply
    ZpPoly result = {1}, base = {0, 1};
    base = zp_divmod(base, f, p).second;
    while (e) {
        if (e & 1) result = zp_divmod(zp_mul(result, base, p), f, p).second;
        base = zp_divmod(zp_mul(base, base, p), f, p).second;
        e >>= 1;
    }
    return result;
}

// Berlekamp factorization of a monic squarefree polynomial mod p.
inline std::vector<ZpPoly> berlekamp(const ZpPoly& f, long long p) {
    const std::size_t n = f.size() - 1;
    if (n == 1) return {f};

    // rows of R: coefficients of x^{p*i} mod f
    std::vector<ZpPoly> rows(n);
    ZpPoly xp = zp_powmod_x(static_cast<unsigned long>(p), f, p);
    ZpPoly cur = {1};
    for (std::size_t i = 0; i < n; ++i) {
        rows[i] = cur;
        rows[i].resize(n, 0);
        cur = zp_divmod(zp_mul(cur, xp, p), f, p).second;
    }

    // kernel of (R - I)^T over F_p
    std::vector<std::vector<long long>> mat(n, std::vector<long long>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            long long v = rows[i][j] % p;
            if (i == j) v = (v - 1 + p) % p;
            mat[j][i] = v;  // transpose
        }
    // Gauss-Jordan, tracking pivot columns
    std::vector<std::size_t> pivot_col;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < n && rank < n; ++c) {
        std::size_t sel = rank;
        while (sel < n && mat[sel][c] == 0) ++sel;
        if (sel == n) continue;
        std::swap(mat[rank], mat[sel]);
        long long inv = zp_inv(mat[rank][c], p);
        for (auto& v : mat[rank]) v = v * inv % p;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == rank || mat[r][c] == 0) continue;
            long long factor = mat[r][c];
            for (std::size_t j = 0; j < n; ++j)
                mat[r][j] = ((mat[r][j] - factor * mat[rank][j]) % p + p) % p;
        }
        pivot_col.push_back(c);
        ++rank;
    }
    std::vector<ZpPoly> basis;
    std::vector<bool> is_pivot(n, false);
    for (auto c : pivot_col) is_pivot[c] = true;
    for (std::size_t c = 0; c < n; ++c) {
        if (is_pivot[c]) continue;
        ZpPoly v(n, 0);
        v[c] = 1;
        for (std::size_t r = 0; r < rank; ++r)
            v[pivot_col[r]] = (p - mat[r][c]) % p;
        zp_trim(v);
        basis.push_back(std::move(v));
    }
    const std::size_t factor_count = basis.size();  // kernel includes the constants
    std::vector<ZpPoly> factors = {f};
    if (factor_count == 1) return factors;

    for (const ZpPoly& v : basis) {
        for (long long s = 0; s < p && factors.size() < factor_count; ++s) {
            ZpPoly vs = v;
            vs.resize(std::max<std::size_t>(vs.size(), 1), 0);
            vs[0] = ((vs[0] - s) % p + p) % p;
            zp_trim(vs);
            std::vector<ZpPoly> next;
            for (const ZpPoly& u : factors) {
                if (u.size() <= 2) {
                    next.push_back(u);
                    continue;
                }
                ZpPoly g = zp_gcd(u, vs, p);
                if (g.size() <= 1 || g.size() == u.size()) {
                    next.push_back(u);
                } else {
                    next.push_back(g);
                    next.push_back(zp_divmod(u, g, p).first);
                }
            }
            factors = std::move(next);
        }
        if (factors.size() == factor_count) break;
    }
    return factors;
}

// ---- arithmetic on integer polynomials with coefficients mod m ----

using ModPoly = std::vector<Int>;

inline void mod_trim(ModPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline ModPoly mod_reduce(const ModPoly& a, const Int& m) {
    ModPoly r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = fdiv_r(a[i], m);
    mod_trim(r);
    return r;
}

inline ModPoly mod_mul(const ModPoly& a, const ModPoly& b, const Int& m) {
    if (a.empty() || b.empty()) return {};
    ModPoly r(a.size() + b.size() - 1, Int(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    return mod_reduce(r, m);
}

inline ModPoly mod_add(const ModPoly& a, const ModPoly& b, const Int& m) {
    ModPoly r(std::max(a.size(), b.size()), Int(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return mod_reduce(r, m);
}

inline ModPoly mod_sub(const ModPoly& a, const ModPoly& b, const Int& m) {
    ModPoly r(std::max(a.size(), b.size()), Int(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    return mod_reduce(r, m);
}

// division by a monic divisor, everything mod m
inline std::pair<ModPoly, ModPoly> mod_divmod_monic(const ModPoly& a, const ModPoly& b,
                                                    const Int& m) {
    ModPoly rem = a, quot;
    if (rem.size() >= b.size()) quot.assign(rem.size() - b.size() + 1, Int(0));
    while (rem.size() >= b.size()) {
        Int c = rem.back();
        std::size_t shift = rem.size() - b.size();
        quot[shift] = c;
        for (std::size_t i = 0; i < b.size(); ++i)
            rem[shift + i] = fdiv_r(rem[shift + i] - c * b[i], m);
        rem[shift + b.size() - 1] = 0;
        mod_trim(rem);
    }
    mod_trim(quot);
    return {quot, rem};
}

struct HenselPair {
    ModPoly g, h, s, t;  // f = g*h, s*g + t*h = 1, all mod current modulus
};

// One quadratic step: congruences mod m become congruences mod m^2.
// Both factors monic; f monic. (von zur Gathen & Gerhard, Hensel step.)
inline HenselPair hensel_step(const ModPoly& f, const HenselPair& in, const Int& m) {
    Int m2 = m * m;
    ModPoly e = mod_sub(f, mod_mul(in.g, in.h, m2), m2);
    auto [q, r] = mod_divmod_monic(mod_mul(in.s, e, m2), in.h, m2);
    HenselPair out;
    out.g = mod_add(in.g, mod_add(mod_mul(in.t, e, m2), mod_mul(q, in.g, m2), m2), m2);
    out.h = mod_add(in.h, r, m2);

    ModPoly one = {Int(1)};
    ModPoly b = mod_sub(mod_add(mod_mul(in.s, out.g, m2), mod_mul(in.t, out.h, m2), m2), one, m2);
    auto [c, d] = mod_divmod_monic(mod_mul(in.s, b, m2), out.h, m2);
    out.s = mod_sub(in.s, d, m2);
    out.t = mod_sub(in.t, mod_add(mod_mul(in.t, b, m2), mod_mul(c, out.g, m2), m2), m2);
    return out;
}

inline ModPoly from_zp(const ZpPoly& a) {
    ModPoly r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = Int(static_cast<long>(a[i]));
    return r;
}

// Lift the mod-p factorization of monic f to mod p^(2^steps) >= p^k,
// recursing on a balanced split of the factor list.
inline void hensel_lift_tree(const ModPoly& f, const std::vector<ZpPoly>& factors,
                             std::size_t lo, std::size_t hi, long long p, const Int& modulus,
                             unsigned steps, std::vector<ModPoly>& out) {
    if (hi - lo == 1) {
        out.push_back(mod_reduce(f, modulus));
        return;
    }
    std::size_t mid = lo + (hi - lo) / 2;
    ZpPoly gl = {1}, gr = {1};
    for (std::size_t i = lo; i < mid; ++i) gl = zp_mul(gl, factors[i], p);
    for (std::size_t i = mid; i < hi; ++i) gr = zp_mul(gr, factors[i], p);
    ZpPoly s, t;
    zp_gcdext(gl, gr, p, s, t);

    HenselPair pair{from_zp(gl), from_zp(gr), from_zp(s), from_zp(t)};
    Int m(static_cast<long>(p));
    for (unsigned i = 0; i < steps; ++i) {
        pair = hensel_step(mod_reduce(f, m * m), pair, m);
        m = m * m;
    }
    hensel_lift_tree(mod_reduce(pair.g, modulus), factors, lo, mid, p, modulus, steps, out);
    hensel_lift_tree(mod_reduce(pair.h, modulus), factors, mid, hi, p, modulus, steps, out);
}

inline Int symmetric(const Int& a, const Int& m) {
    Int r = fdiv_r(a, m);
    if (2 * r > m) r -= m;
    return r;
}

// integer polynomial helpers (coefficients lowest first)

inline std::vector<Int> int_poly_mul(const std::vector<Int>& a, const std::vector<Int>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<Int> r(a.size() + b.size() - 1, Int(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

// exact division test for monic divisor over Z
inline bool int_poly_divides_monic(const std::vector<Int>& f, const std::vector<Int>& g,
                                   std::vector<Int>& quotient) {
    std::vector<Int> rem = f;
    std::vector<Int> quot;
    if (rem.size() < g.size()) return false;
    quot.assign(rem.size() - g.size() + 1, Int(0));
    while (rem.size() >= g.size()) {
        Int c = rem.back();
        std::size_t shift = rem.size() - g.size();
        quot[shift] = c;
        for (std::size_t i = 0; i < g.size(); ++i) rem[shift + i] -= c * g[i];
        while (!rem.empty() && rem.back() == 0) rem.pop_back();
    }
    if (!rem.empty()) return false;
    quotient = std::move(quot);
    return true;
}

// Factor a monic squarefree integer polynomial into monic irreducibles over Z.
inline std::vector<std::vector<Int>> factor_monic_squarefree(const std::vector<Int>& f) {
    const std::size_t n = f.size() - 1;
    if (n <= 1) return {f};

    // first prime keeping f squarefree
    long long p = 0;
    ZpPoly fbar;
    for (long long cand = 3;; cand += 2) {
        bool prime = cand > 2;
        for (long long d = 3; d * d <= cand; d += 2)
            if (cand % d == 0) {
                prime = false;
                break;
            }
        if (!prime) continue;
        ZpPoly fb(f.size());
        for (std::size_t i = 0; i < f.size(); ++i)
            fb[i] = mpz_fdiv_ui(f[i].get_mpz_t(), static_cast<unsigned long>(cand));
        zp_trim(fb);
        if (fb.size() != f.size()) continue;  // p divides the leading coefficient
        ZpPoly deriv(fb.size() - 1);
        for (std::size_t i = 1; i < fb.size(); ++i)
            deriv[i - 1] = fb[i] * (i % cand) % cand;
        zp_trim(deriv);
        if (deriv.empty()) continue;
        if (zp_gcd(fb, deriv, cand).size() == 1) {
            p = cand;
            fbar = fb;
            break;
        }
    }

    std::vector<ZpPoly> mod_factors = berlekamp(fbar, p);
    if (mod_factors.size() == 1) return {f};
    std::sort(mod_factors.begin(), mod_factors.end());

    // Landau-Mignotte: factor coefficients bounded by 2^n * ||f||_2
    Int norm_sq(0);
    for (const Int& c : f) norm_sq += c * c;
    Int bound = (isqrt(norm_sq) + 1) << static_cast<unsigned>(n);
    Int modulus(static_cast<long>(p));
    unsigned steps = 0;
    while (modulus <= 2 * bound) {
        modulus = modulus * modulus;
        ++steps;
    }

    std::vector<ModPoly> lifted;
    hensel_lift_tree(mod_reduce(f, modulus), mod_factors, 0, mod_factors.size(), p, modulus,
                     steps, lifted);

    // Zassenhaus recombination over subsets of increasing cardinality
    std::vector<std::vector<Int>> result;
    std::vector<Int> remaining = f;
    std::vector<ModPoly> pool = lifted;
    std::size_t card = 1;
    while (!pool.empty() && 2 * card <= pool.size()) {
        bool found = false;
        std::vector<std::size_t> idx(card);
        for (std::size_t i = 0; i < card; ++i) idx[i] = i;
        for (;;) {
            ModPoly prod = {Int(1)};
            for (std::size_t i : idx) prod = mod_mul(prod, pool[i], modulus);
            std::vector<Int> cand(prod.size());
            for (std::size_t i = 0; i < prod.size(); ++i) cand[i] = symmetric(prod[i], modulus);
            std::vector<Int> quot;
            if (cand.back() == 1 && int_poly_divides_monic(remaining, cand, quot)) {
                result.push_back(cand);
                remaining = quot;
                std::vector<ModPoly> next_pool;
                for (std::size_t i = 0, k = 0; i < pool.size(); ++i) {
                    if (k < idx.size() && idx[k] == i) {
                        ++k;
                        continue;
                    }
                    next_pool.push_back(pool[i]);
                }
                pool = std::move(next_pool);
                found = true;
                break;
            }
            // next subset
            std::size_t i = card;
            while (i > 0) {
                --i;
                if (idx[i] != i + pool.size() - card) {
                    ++idx[i];
                    for (std::size_t j = i + 1; j < card; ++j) idx[j] = idx[j - 1] + 1;
                    break;
                }
                if (i == 0) goto next_card;
            }
            if (card == 0) break;
        }
        if (found) continue;
    next_card:
        ++card;
    }
    if (remaining.size() > 1) result.push_back(remaining);
    return result;
}

}  // namespace polyfactor_detail

// Monic irreducible factors over Q with multiplicities. The product of the
// factors times the leading coefficient of the input reproduces the input.
// Ordering: ascending degree, then lexicographic on the coefficient vector
// (constant term first).
inline std::vector<std::pair<RatPoly, unsigned>> factor_poly_q(const RatPoly& p) {
    using namespace polyfactor_detail;
    if (p.is_zero()) throw std::invalid_argument("factor_poly_q of the zero polynomial");
    if (p.degree() == 0) return {};

    RatPoly f = p.monic();
    std::vector<std::pair<RatPoly, unsigned>> result;

    // Yun squarefree decomposition
    std::vector<std::pair<RatPoly, unsigned>> squarefree;
    {
        RatPoly fp = f.derivative();
        RatPoly a = poly_gcd(f, fp);
        RatPoly b = f / a;
        RatPoly d = fp / a - b.derivative();
        unsigned i = 1;
        while (b.degree() > 0) {
            RatPoly ai = poly_gcd(b, d);
            if (ai.degree() > 0) squarefree.emplace_back(ai, i);
            RatPoly bn = b / ai;
            d = d / ai - bn.derivative();
            b = bn;
            ++i;
        }
    }

    for (const auto& [part, mult] : squarefree) {
        // clear denominators to a primitive integer polynomial
        Int den(1);
        for (const Rat& c : part.coeffs()) den = lcm(den, denominator(c));
        std::vector<Int> g(part.coeffs().size());
        for (std::size_t i = 0; i < g.size(); ++i)
            g[i] = numerator(part.coeffs()[i] * Rat(den));
        Int content(0);
        for (const Int& c : g) content = gcd(content, c);
        if (g.back() < 0) content = -content;
        for (Int& c : g) c /= content;

        // substitute x -> y/L to reduce to the monic case:
        // coefficient of y^(deg-i) becomes a_(deg-i) * L^(i-1)
        Int lead = g.back();
        const std::size_t deg = g.size() - 1;
        std::vector<Int> monic_g(g.size());
        monic_g[deg] = 1;
        Int power(1);
        for (std::size_t i = 1; i <= deg; ++i) {
            monic_g[deg - i] = g[deg - i] * power;
            power *= lead;
        }

        for (const auto& h : factor_monic_squarefree(monic_g)) {
            // map back through y = L*x and renormalize monic over Q
            std::vector<Rat> coeffs(h.size());
            Int lp(1);
            for (std::size_t i = 0; i < h.size(); ++i) {
                coeffs[i] = Rat(h[i] * lp);
                lp *= lead;
            }
            result.emplace_back(RatPoly(std::move(coeffs)).monic(), mult);
        }
    }

    std::sort(result.begin(), result.end(), [](const auto& a, const auto& b) {
        if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
        const auto& ca = a.first.coeffs();
        const auto& cb = b.first.coeffs();
        for (std::size_t i = 0; i < ca.size(); ++i)
            if (ca[i] != cb[i]) return ca[i] < cb[i];
        return false;
    });
    return result;
}

// True when some positive power of the matrix is unipotent: every irreducible
// factor of the characteristic polynomial must be cyclotomic.
inline bool is_quasi_unipotent(const IntMat& a) {
    if (!a.is_square()) throw std::invalid_argument("is_quasi_unipotent of non-square matrix");
    Int d = det(a);
    if (d != 1 && d != -1)
        throw std::invalid_argument("is_quasi_unipotent requires |det| = 1");
    const unsigned long n = a.rows();
    if (n == 0) return true;
    auto cyclo = cyclotomics_up_to_degree(n);
    for (const auto& [factor, mult] : factor_poly_q(char_poly(a))) {
        (void)mult;
        bool matched = false;
        for (const auto& [m, phi] : cyclo) {
            (void)m;
            if (factor == phi) {
                matched = true;
                break;
            }
        }
        if (!matched) return false;
    }
    return true;
}

}  // namespace centromix

#endif
