#ifndef CENTROMIX_RATIONAL_HPP
#define CENTROMIX_RATIONAL_HPP

// Exact arithmetic scalars. Everything downstream works over Int (arbitrary
// precision integers) and Rat (canonical rationals: reduced, denominator > 0).

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>

namespace centromix {

using Int = mpz_class;
using Rat = mpq_class;

inline Int int_from_string(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty integer literal");
    Int v;
    if (v.set_str(s, 10) != 0) throw std::invalid_argument("bad integer literal: " + s);
    return v;
}

inline Rat rat_from_string(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    Rat v;
    if (v.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
    v.canonicalize();
    if (sgn(v.get_den()) == 0) throw std::invalid_argument("zero denominator: " + s);
    return v;
}

inline std::string to_string(const Int& v) { return v.get_str(); }
inline std::string to_string(const Rat& v) { return v.get_str(); }

inline Int numerator(const Rat& v) { return v.get_num(); }
inline Int denominator(const Rat& v) { return v.get_den(); }

inline bool is_integral(const Rat& v) { return v.get_den() == 1; }

// Floor division quotient, used by normal-form reduction steps.
inline Int fdiv_q(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline Int fdiv_r(const Int& a, const Int& b) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Int gcd(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Int lcm(const Int& a, const Int& b) {
    Int l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

// g = gcd(a,b) together with u,v such that u*a + v*b = g.
inline Int gcdext(const Int& a, const Int& b, Int& u, Int& v) {
    Int g;
    mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Int pow_int(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

// Integer square root (floor).
inline Int isqrt(const Int& a) {
    Int r;
    mpz_sqrt(r.get_mpz_t(), a.get_mpz_t());
    return r;
}

}  // namespace centromix

#endif
