#ifndef CENTROMIX_DECOMPOSITION_HPP
#define CENTROMIX_DECOMPOSITION_HPP

// Direct-sum decompositions of Lie algebras into indecomposable ideals, the
// matching of two such decompositions (projection isomorphisms, commutator
// equality, central residuals), and the factorization of an automorphism into
// a summand-permuting part plus a central part.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "centromix/lie_algebra.hpp"
#include "centromix/poly.hpp"
#include "centromix/poly_factor.hpp"
#include "centromix/subspace.hpp"

namespace centromix {

class Decomposition {
public:
    Decomposition() = default;
    Decomposition(const LieAlgebra& l, std::vector<Subspace> summands)
        : summands_(std::move(summands)) {
        std::size_t total = 0;
        Subspace joined = Subspace::zero(l.dim());
        for (const Subspace& s : summands_) {
            if (!is_ideal(l, s)) throw std::invalid_argument("summand is not an ideal");
            total += s.dim();
            joined = joined.sum(s);
        }
        if (total != l.dim() || joined.dim() != l.dim())
            throw std::invalid_argument("summands do not form a direct sum");
    }

    std::size_t size() const { return summands_.size(); }
    const Subspace& operator[](std::size_t i) const { return summands_[i]; }
    const std::vector<Subspace>& summands() const { return summands_; }

    // Projections onto each summand along the others.
    std::vector<RatMat> projections(std::size_t ambient) const {
        RatMat columns(ambient, ambient);
        std::size_t col = 0;
        std::vector<std::pair<std::size_t, std::size_t>> ranges;
        for (const Subspace& s : summands_) {
            std::size_t first = col;
            for (std::size_t i = 0; i < s.dim(); ++i, ++col)
                for (std::size_t r = 0; r < ambient; ++r) columns(r, col) = s.basis()(i, r);
            ranges.emplace_back(first, col);
        }
        RatMat cinv = inverse(columns);
        std::vector<RatMat> result;
        for (auto [lo, hi] : ranges) {
            RatMat sel(ambient, ambient);
            for (std::size_t i = lo; i < hi; ++i) sel(i, i) = 1;
            result.push_back(columns * sel * cinv);
        }
        return result;
    }

private:
    std::vector<Subspace> summands_;
};

// ---------------------------------------------------------------------------
// Splitting into indecomposable ideals via idempotents of the centroid.
// ---------------------------------------------------------------------------

struct SplitTrace {
    std::size_t polynomial_splits = 0;  // splits from min-poly factorization
    std::size_t radical_lifts = 0;      // splits found through the semisimple quotient
};

namespace split_detail {

// CRT idempotents of Q[x]/(m) for the coprime parts of m, evaluated at a
// matrix root of m. Parts are the distinct-irreducible power factors.
inline std::vector<RatMat> crt_idempotents(const RatPoly& m,
                                           const std::vector<RatPoly>& parts,
                                           const RatMat& at) {
    std::vector<RatMat> result;
    for (const RatPoly& part : parts) {
        RatPoly rest = m / part;
        RatPoly s, t;
        RatPoly g = poly_gcdext(rest, part, s, t);
        if (g.degree() != 0) throw std::logic_error("parts are not coprime");
        // s*rest = 1 mod part, so (s*rest)(at) is the idempotent for this part
        result.push_back((s * rest).eval(at));
    }
    return result;
}

inline std::vector<RatPoly> coprime_parts(const RatPoly& m) {
    std::vector<RatPoly> parts;
    for (const auto& [factor, mult] : factor_poly_q(m)) {
        RatPoly power = RatPoly::constant(Rat(1));
        for (unsigned k = 0; k < mult; ++k) power = power * factor;
        parts.push_back(power);
    }
    return parts;
}

// Candidate centroid elements in a fixed order: basis elements, then integer
// combinations of pairs with coefficients in [-3, 3].
inline std::vector<RatMat> candidate_elements(const std::vector<RatMat>& basis) {
    std::vector<RatMat> out = basis;
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i + 1; j < basis.size(); ++j)
            for (long a = -3; a <= 3; ++a)
                for (long b = -3; b <= 3; ++b) {
                    if (a == 0 && b == 0) continue;
                    out.push_back(basis[i] * Rat(a) + basis[j] * Rat(b));
                }
    return out;
}

struct QuotientAlgebra {
    std::vector<RatMat> full_basis;       // centroid basis
    std::vector<std::size_t> rep_index;   // indices of basis elements spanning a complement
    RatMat radical_rows;                  // RREF rows of the radical in centroid coordinates
    std::vector<std::size_t> radical_pivots;
    // multiplication table of the quotient: product of representative i and j
    // expressed in quotient coordinates
    std::vector<std::vector<Rat>> table;

    std::size_t dim() const { return rep_index.size(); }
};

// Coordinates of a matrix in the span of the centroid basis.
inline std::optional<std::vector<Rat>> coordinates_in(const std::vector<RatMat>& basis,
                                                      const RatMat& m) {
    const std::size_t n = m.rows();
    RatMat sys(n * n, basis.size());
    for (std::size_t b = 0; b < basis.size(); ++b)
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) sys(r * n + c, b) = basis[b](r, c);
    RatMat aug(n * n, basis.size() + 1);
    aug.paste(0, 0, sys);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) aug(r * n + c, basis.size()) = m(r, c);
    auto pivots = rref(aug);
    std::vector<Rat> coords(basis.size(), Rat(0));
    for (std::size_t k = 0; k < pivots.size(); ++k) {
        if (pivots[k] == basis.size()) return std::nullopt;  // inconsistent
        coords[pivots[k]] = aug(k, basis.size());
    }
    return coords;
}

// Radical of the centroid as the kernel of the trace form tr(a b); valid in
// characteristic zero for a faithful matrix algebra.
inline QuotientAlgebra semisimple_quotient(const std::vector<RatMat>& basis) {
    const std::size_t d = basis.size();
    RatMat gram(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            RatMat prod = basis[i] * basis[j];
            Rat tr(0);
            for (std::size_t k = 0; k < prod.rows(); ++k) tr += prod(k, k);
            gram(i, j) = tr;
        }
    QuotientAlgebra q;
    q.full_basis = basis;
    RatMat rad = rational_right_kernel(gram);
    auto rad_sub = Subspace::from_rows(d, rad);
    q.radical_rows = rad_sub.basis();
    q.radical_pivots = rad_sub.pivots();

    std::vector<bool> in_rad(d, false);
    for (auto p : q.radical_pivots) in_rad[p] = true;
    for (std::size_t i = 0; i < d; ++i)
        if (!in_rad[i]) q.rep_index.push_back(i);

    auto reduce_mod_radical = [&](std::vector<Rat> coords) {
        for (std::size_t r = 0; r < q.radical_rows.rows(); ++r) {
            Rat c = coords[q.radical_pivots[r]];
            if (c == 0) continue;
            for (std::size_t k = 0; k < d; ++k) coords[k] -= c * q.radical_rows(r, k);
        }
        std::vector<Rat> out(q.rep_index.size());
        for (std::size_t k = 0; k < q.rep_index.size(); ++k) out[k] = coords[q.rep_index[k]];
        return out;
    };

    const std::size_t qd = q.rep_index.size();
    q.table.assign(qd * qd, {});
    for (std::size_t i = 0; i < qd; ++i)
        for (std::size_t j = 0; j < qd; ++j) {
            RatMat prod = basis[q.rep_index[i]] * basis[q.rep_index[j]];
            auto coords = coordinates_in(basis, prod);
            if (!coords) throw std::logic_error("centroid is not multiplicatively closed");
            q.table[i * qd + j] = reduce_mod_radical(*coords);
        }
    return q;
}

inline std::vector<Rat> quotient_multiply(const QuotientAlgebra& q, const std::vector<Rat>& a,
                                          const std::vector<Rat>& b) {
    const std::size_t d = q.dim();
    std::vector<Rat> r(d, Rat(0));
    for (std::size_t i = 0; i < d; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < d; ++j) {
            if (b[j] == 0) continue;
            Rat f = a[i] * b[j];
            for (std::size_t k = 0; k < d; ++k) r[k] += f * q.table[i * d + j][k];
        }
    }
    return r;
}

// Matrix of left multiplication by a on the quotient algebra.
inline RatMat quotient_left_mult(const QuotientAlgebra& q, const std::vector<Rat>& a) {
    const std::size_t d = q.dim();
    RatMat m(d, d);
    for (std::size_t j = 0; j < d; ++j) {
        std::vector<Rat> ej(d, Rat(0));
        ej[j] = 1;
        std::vector<Rat> col = quotient_multiply(q, a, ej);
        for (std::size_t i = 0; i < d; ++i) m(i, j) = col[i];
    }
    return m;
}

// Basis of the center of the quotient algebra.
inline std::vector<std::vector<Rat>> quotient_center(const QuotientAlgebra& q) {
    const std::size_t d = q.dim();
    // z*e_j - e_j*z = 0 for all j
    RatMat sys(d * d, d);
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t k = 0; k < d; ++k)
            for (std::size_t i = 0; i < d; ++i)
                sys(j * d + k, i) = q.table[i * d + j][k] - q.table[j * d + i][k];
    RatMat kernel = rational_right_kernel(sys);
    std::vector<std::vector<Rat>> out;
    for (std::size_t r = 0; r < kernel.rows(); ++r) out.push_back(kernel.row(r));
    return out;
}

inline std::vector<Rat> quotient_poly_eval(const QuotientAlgebra& q, const RatPoly& p,
                                           const std::vector<Rat>& z,
                                           const std::vector<Rat>& one) {
    std::vector<Rat> acc(q.dim(), Rat(0));
    const auto& coeffs = p.coeffs();
    for (std::size_t i = coeffs.size(); i > 0; --i) {
        acc = quotient_multiply(q, acc, z);
        for (std::size_t k = 0; k < q.dim(); ++k) acc[k] += coeffs[i - 1] * one[k];
    }
    return acc;
}

}  // namespace split_detail

// A nontrivial centroid idempotent, or nullopt when the algebra is
// indecomposable. Search order: min-poly splitting over an enumeration of
// centroid elements, then idempotent lifting through the radical of the
// centroid.
inline std::optional<RatMat> find_splitting_idempotent(const LieAlgebra& l, SplitTrace* trace) {
    using namespace split_detail;
    const std::size_t n = l.dim();
    std::vector<RatMat> basis = centroid(l);
    if (basis.size() <= 1) return std::nullopt;  // scalars only

    for (const RatMat& cand : candidate_elements(basis)) {
        RatPoly m = min_poly(cand);
        auto parts = coprime_parts(m);
        if (parts.size() < 2) continue;
        RatMat e = crt_idempotents(m, parts, cand)[0];
        if (e.is_zero() || e == RatMat::identity(n)) continue;
        if (trace) ++trace->polynomial_splits;
        return e;
    }

    // Semisimple quotient of the centroid; central idempotents there lift to
    // centroid idempotents through the nilpotent radical.
    QuotientAlgebra q = semisimple_quotient(basis);
    auto identity_coords = coordinates_in(basis, RatMat::identity(n));
    if (!identity_coords) throw std::logic_error("identity is missing from the centroid");
    std::vector<Rat> one(q.dim());
    {
        // identity may have radical components; reduce like any element
        std::vector<Rat> c = *identity_coords;
        for (std::size_t r = 0; r < q.radical_rows.rows(); ++r) {
            Rat f = c[q.radical_pivots[r]];
            if (f == 0) continue;
            for (std::size_t k = 0; k < basis.size(); ++k) c[k] -= f * q.radical_rows(r, k);
        }
        for (std::size_t k = 0; k < q.dim(); ++k) one[k] = c[q.rep_index[k]];
    }

    std::vector<std::vector<Rat>> zbasis = quotient_center(q);
    std::vector<std::vector<Rat>> candidates = zbasis;
    for (std::size_t i = 0; i < zbasis.size(); ++i)
        for (std::size_t j = i + 1; j < zbasis.size(); ++j)
            for (long a = -3; a <= 3; ++a)
                for (long b = -3; b <= 3; ++b) {
                    if (a == 0 && b == 0) continue;
                    std::vector<Rat> z(q.dim());
                    for (std::size_t k = 0; k < q.dim(); ++k)
                        z[k] = Rat(a) * zbasis[i][k] + Rat(b) * zbasis[j][k];
                    candidates.push_back(std::move(z));
                }
    // moment-curve sweep: guaranteed to reach a separating element of the
    // center when one exists, since the non-separating elements lie in a
    // finite union of proper subspaces
    const std::size_t dz = zbasis.size();
    const std::size_t sweeps = dz <= 1 ? 0 : dz * dz * dz + 1;
    for (std::size_t t = 1; t <= sweeps; ++t) {
        std::vector<Rat> z(q.dim(), Rat(0));
        Rat power(1);
        for (std::size_t i = 0; i < dz; ++i) {
            for (std::size_t k = 0; k < q.dim(); ++k) z[k] += power * zbasis[i][k];
            power *= Rat(static_cast<long>(t));
        }
        candidates.push_back(std::move(z));
    }

    for (const auto& z : candidates) {
        RatPoly m = min_poly(quotient_left_mult(q, z));
        auto parts = coprime_parts(m);
        if (parts.size() < 2) continue;
        // quotient idempotent for the first part
        RatPoly rest = m / parts[0];
        RatPoly s, t2;
        poly_gcdext(rest, parts[0], s, t2);
        std::vector<Rat> ebar = quotient_poly_eval(q, s * rest, z, one);

        // lift to the centroid: e <- 3e^2 - 2e^3 until idempotent
        RatMat e(n, n);
        for (std::size_t k = 0; k < q.dim(); ++k) {
            if (ebar[k] == 0) continue;
            e = e + basis[q.rep_index[k]] * ebar[k];
        }
        for (int it = 0; it < 64 && e * e != e; ++it) {
            RatMat e2 = e * e;
            e = e2 * Rat(3) - e2 * e * Rat(2);
        }
        if (e * e != e) continue;
        if (e.is_zero() || e == RatMat::identity(n)) continue;
        if (trace) ++trace->radical_lifts;
        return e;
    }
    return std::nullopt;
}

namespace split_detail {

inline void split_recursive(const LieAlgebra& l, const RatMat& embedding, SplitTrace* trace,
                            std::vector<Subspace>& out, std::size_t ambient) {
    const std::size_t n = l.dim();
    if (n == 0) return;

    auto emit = [&](const Subspace& local) {
        // map a subspace of the restricted algebra up to ambient coordinates
        RatMat rows(local.dim(), ambient);
        for (std::size_t i = 0; i < local.dim(); ++i)
            for (std::size_t j = 0; j < ambient; ++j) {
                Rat v(0);
                for (std::size_t k = 0; k < n; ++k) v += local.basis()(i, k) * embedding(k, j);
                rows(i, j) = v;
            }
        out.push_back(Subspace::from_rows(ambient, rows));
    };

    if (n == 1) {
        emit(Subspace::full(1));
        return;
    }
    if (derived(l).dim() == 0) {
        // abelian: coordinate lines of the restricted basis
        for (std::size_t i = 0; i < n; ++i)
            emit(Subspace::from_rows(n, RatMat::identity(n).submatrix(i, 0, 1, n)));
        return;
    }

    auto idem = find_splitting_idempotent(l, trace);
    if (!idem) {
        emit(Subspace::full(n));
        return;
    }
    RatMat complement = RatMat::identity(n) - *idem;
    for (const RatMat& proj : {*idem, complement}) {
        Subspace part = Subspace::from_rows(n, proj.transpose());
        auto restricted = restrict_to_ideal(l, part);
        RatMat next_embedding(part.dim(), ambient);
        for (std::size_t i = 0; i < part.dim(); ++i)
            for (std::size_t j = 0; j < ambient; ++j) {
                Rat v(0);
                for (std::size_t k = 0; k < n; ++k) v += part.basis()(i, k) * embedding(k, j);
                next_embedding(i, j) = v;
            }
        split_recursive(restricted.algebra, next_embedding, trace, out, ambient);
    }
}

}  // namespace split_detail

// Decomposition into indecomposable ideals, deterministically ordered.
inline Decomposition indecomposable_split(const LieAlgebra& l, SplitTrace* trace = nullptr) {
    std::vector<Subspace> out;
    split_detail::split_recursive(l, RatMat::identity(l.dim()), trace, out, l.dim());
    std::sort(out.begin(), out.end(),
              [](const Subspace& a, const Subspace& b) { return a.before(b); });
    return Decomposition(l, std::move(out));
}

// ---------------------------------------------------------------------------
// Krull-Schmidt matching of two decompositions.
// ---------------------------------------------------------------------------

struct MatchCertificate {
    std::size_t i = 0, j = 0;          // j = sigma(i)
    RatMat projection;                 // pi_i restricted to h_j, in summand bases
    RatMat projection_inverse;
    bool commutators_equal = false;    // [g_i, g_i] == [h_j, h_j]
    bool central_residual_zero = false;  // h_j inside g_i + Z(rest)
    bool reverse_isomorphism = false;  // rho_j restricted to g_i invertible
};

struct KrullSchmidtMatch {
    std::vector<std::size_t> sigma;    // one-sided: pi_i | h_sigma(i) is an isomorphism
    bool two_sided_exists = false;     // some sigma works with both projections invertible
    std::vector<std::size_t> sigma_two_sided;
    bool unique = false;               // exactly one admissible sigma (one-sided)
    std::vector<MatchCertificate> certificates;
};

namespace match_detail {

inline bool find_matching(const std::vector<std::vector<bool>>& ok, std::size_t i,
                          std::vector<bool>& used, std::vector<std::size_t>& sigma) {
    const std::size_t r = ok.size();
    if (i == r) return true;
    for (std::size_t j = 0; j < r; ++j) {
        if (used[j] || !ok[i][j]) continue;
        used[j] = true;
        sigma[i] = j;
        if (find_matching(ok, i + 1, used, sigma)) return true;
        used[j] = false;
    }
    return false;
}

inline std::size_t count_matchings(const std::vector<std::vector<bool>>& ok, std::size_t i,
                                   std::vector<bool>& used, std::size_t cap) {
    const std::size_t r = ok.size();
    if (i == r) return 1;
    std::size_t total = 0;
    for (std::size_t j = 0; j < r && total < cap; ++j) {
        if (used[j] || !ok[i][j]) continue;
        used[j] = true;
        total += count_matchings(ok, i + 1, used, cap - total);
        used[j] = false;
    }
    return total;
}

}  // namespace match_detail

inline KrullSchmidtMatch krull_schmidt_match(const LieAlgebra& l, const Decomposition& dec1,
                                             const Decomposition& dec2) {
    const std::size_t r = dec1.size();
    if (dec2.size() != r)
        throw std::invalid_argument("decompositions have different summand counts");
    const std::size_t n = l.dim();

    std::vector<RatMat> pi = dec1.projections(n);
    std::vector<RatMat> rho = dec2.projections(n);

    std::vector<Subspace> derived1(r), derived2(r);
    auto derived_of = [&](const Subspace& s) {
        RatMat rows(s.dim() * s.dim(), n);
        std::size_t row = 0;
        for (std::size_t a = 0; a < s.dim(); ++a)
            for (std::size_t b = 0; b < s.dim(); ++b, ++row) {
                auto br = l.bracket(s.basis().row(a), s.basis().row(b));
                for (std::size_t k = 0; k < n; ++k) rows(row, k) = br[k];
            }
        return Subspace::from_rows(n, rows);
    };
    for (std::size_t i = 0; i < r; ++i) derived1[i] = derived_of(dec1[i]);
    for (std::size_t j = 0; j < r; ++j) derived2[j] = derived_of(dec2[j]);

    // Z(sum of all g_k except g_i): centralizer computed inside that ideal
    std::vector<Subspace> rest_center(r);
    for (std::size_t i = 0; i < r; ++i) {
        Subspace rest = Subspace::zero(n);
        for (std::size_t k = 0; k < r; ++k)
            if (k != i) rest = rest.sum(dec1[k]);
        RatMat sys(rest.dim() * rest.dim(), rest.dim());
        for (std::size_t b = 0; b < rest.dim(); ++b)
            for (std::size_t k = 0; k < rest.dim(); ++k) {
                // coefficient of x_a in component k of [x, b-th basis vector]
                for (std::size_t a = 0; a < rest.dim(); ++a) {
                    auto br = l.bracket(rest.basis().row(a), rest.basis().row(b));
                    auto coords = rest.coordinates(br);
                    sys(b * rest.dim() + k, a) = coords ? (*coords)[k] : Rat(0);
                }
            }
        RatMat kernel = rational_right_kernel(sys);
        RatMat rows(kernel.rows(), n);
        for (std::size_t v = 0; v < kernel.rows(); ++v)
            for (std::size_t j2 = 0; j2 < n; ++j2) {
                Rat val(0);
                for (std::size_t a = 0; a < rest.dim(); ++a)
                    val += kernel(v, a) * rest.basis()(a, j2);
                rows(v, j2) = val;
            }
        rest_center[i] = Subspace::from_rows(n, rows);
    }

    // restriction of pi_i to h_j as a dim(g_i) x dim(h_j) matrix in the bases
    auto restricted_projection = [&](std::size_t i, std::size_t j, const RatMat& proj,
                                     const Subspace& target,
                                     const Subspace& source) -> std::optional<RatMat> {
        if (target.dim() != source.dim()) return std::nullopt;
        RatMat m(target.dim(), source.dim());
        for (std::size_t b = 0; b < source.dim(); ++b) {
            auto image = proj.apply(source.basis().row(b));
            auto coords = target.coordinates(image);
            if (!coords) return std::nullopt;
            for (std::size_t a = 0; a < target.dim(); ++a) m(a, b) = (*coords)[a];
        }
        (void)i;
        (void)j;
        return m;
    };

    std::vector<std::vector<bool>> one_sided(r, std::vector<bool>(r, false));
    std::vector<std::vector<bool>> two_sided(r, std::vector<bool>(r, false));
    std::vector<std::vector<MatchCertificate>> certs(r, std::vector<MatchCertificate>(r));

    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) {
            MatchCertificate cert;
            cert.i = i;
            cert.j = j;
            auto pm = restricted_projection(i, j, pi[i], dec1[i], dec2[j]);
            bool iso = false;
            if (pm) {
                auto inv = try_inverse(*pm);
                if (inv) {
                    iso = true;
                    cert.projection = *pm;
                    cert.projection_inverse = *inv;
                }
            }
            cert.commutators_equal = (derived1[i] == derived2[j]);
            cert.central_residual_zero = dec1[i].sum(rest_center[i]).contains(dec2[j]);
            auto rm = restricted_projection(j, i, rho[j], dec2[j], dec1[i]);
            cert.reverse_isomorphism = rm && try_inverse(*rm).has_value();
            one_sided[i][j] = iso && cert.commutators_equal && cert.central_residual_zero;
            two_sided[i][j] = one_sided[i][j] && cert.reverse_isomorphism;
            certs[i][j] = std::move(cert);
        }

    KrullSchmidtMatch out;
    std::vector<bool> used(r, false);
    std::vector<std::size_t> sigma(r, 0);
    if (!match_detail::find_matching(one_sided, 0, used, sigma))
        throw std::invalid_argument(
            "no valid matching: decompositions are not both into indecomposables");
    out.sigma = sigma;

    std::vector<bool> used2(r, false);
    std::vector<std::size_t> sigma2(r, 0);
    if (match_detail::find_matching(two_sided, 0, used2, sigma2)) {
        out.two_sided_exists = true;
        out.sigma_two_sided = sigma2;
    }

    std::vector<bool> used3(r, false);
    out.unique = match_detail::count_matchings(one_sided, 0, used3, 2) == 1;

    for (std::size_t i = 0; i < r; ++i) out.certificates.push_back(certs[i][sigma[i]]);
    return out;
}

// ---------------------------------------------------------------------------
// Factorization of an automorphism as summand-permuting plus central.
// ---------------------------------------------------------------------------

struct MixFactorization {
    std::vector<std::size_t> sigma;  // theta maps summand i onto summand sigma(i)
    RatMat theta;
    RatMat psi;
    bool unique = false;
    KrullSchmidtMatch match;
};

inline MixFactorization central_mixing_factor(const LieAlgebra& l, const Decomposition& dec,
                                              const LieEndo& phi, bool require_unique = false) {
    const std::size_t n = l.dim();
    const std::size_t r = dec.size();
    const RatMat& m = phi.matrix();
    if (!try_inverse(m)) throw std::invalid_argument("map is not invertible");

    bool all_non_abelian = true;
    for (std::size_t i = 0; i < r; ++i) {
        auto restricted = restrict_to_ideal(l, dec[i]);
        if (derived(restricted.algebra).dim() == 0) all_non_abelian = false;
    }
    if (require_unique && !all_non_abelian)
        throw std::invalid_argument("uniqueness requires all summands non-abelian");

    std::vector<Subspace> images;
    for (std::size_t j = 0; j < r; ++j) images.push_back(dec[j].apply(m));
    Decomposition image_dec(l, images);

    KrullSchmidtMatch match = krull_schmidt_match(l, dec, image_dec);
    // match.sigma[i] = j means pi_i restricted to phi(g_j) is an isomorphism,
    // so theta sends g_j onto g_i: invert to get the summand map of theta.
    std::vector<std::size_t> sigma(r);
    for (std::size_t i = 0; i < r; ++i) sigma[match.sigma[i]] = i;

    std::vector<RatMat> proj = dec.projections(n);
    RatMat theta(n, n);
    for (std::size_t i = 0; i < r; ++i) theta = theta + proj[sigma[i]] * m * proj[i];
    RatMat psi = m - theta;

    // invariants of the factorization
    if (!try_inverse(theta)) throw std::logic_error("permuting part is singular");
    Subspace z = center(l);
    for (std::size_t i = 0; i < r; ++i) {
        if (dec[i].apply(theta) != dec[sigma[i]])
            throw std::logic_error("permuting part does not map summands onto summands");
        Subspace psi_image = dec[i].apply(psi);
        if (!z.contains(psi_image)) throw std::logic_error("central part is not central");
        if (psi_image.apply(proj[sigma[i]]).dim() != 0)
            throw std::logic_error("central part fails the vanishing condition");
    }
    LieEndo check_theta(l, theta);  // theta must itself be bracket-compatible
    (void)check_theta;

    MixFactorization out;
    out.sigma = std::move(sigma);
    out.theta = std::move(theta);
    out.psi = std::move(psi);
    out.unique = all_non_abelian && match.unique;
    out.match = std::move(match);
    return out;
}

}  // namespace centromix

#endif
