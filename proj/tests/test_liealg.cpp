#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "centromix/decomposition.hpp"
#include "centromix/lie_algebra.hpp"
#include "centromix/subspace.hpp"

using namespace centromix;

namespace {

Subspace span_of(std::size_t ambient, std::initializer_list<std::vector<Rat>> vecs) {
    RatMat rows(vecs.size(), ambient);
    std::size_t i = 0;
    for (const auto& v : vecs) {
        for (std::size_t j = 0; j < ambient; ++j) rows(i, j) = v[j];
        ++i;
    }
    return Subspace::from_rows(ambient, rows);
}

// automorphism of the 3-dim Heisenberg algebra from an invertible 2x2 block
RatMat heisenberg_automorphism(long a, long b, long c, long d, long r, long s) {
    RatMat m(3, 3);
    m(0, 0) = a;
    m(1, 0) = c;
    m(2, 0) = r;
    m(0, 1) = b;
    m(1, 1) = d;
    m(2, 1) = s;
    m(2, 2) = Rat(a * d - b * c);
    return m;
}

// Ad(g) on sl2 in the (h, e, f) basis, g an integer 2x2 with det +-1
RatMat sl2_automorphism(long a, long b, long c, long d) {
    Rat det(a * d - b * c);
    REQUIRE((det == 1 || det == -1));
    // conjugate the basis matrices h, e, f by g = [[a,b],[c,d]]
    auto conj = [&](long x11, long x12, long x21) {
        // X = [[x11, x12], [x21, -x11]], compute g X g^{-1} exactly
        Rat inv_det = Rat(1) / det;
        // g X = [[a x11 + b x21, a x12 - b x11], [c x11 + d x21, c x12 - d x11]]
        Rat gx11 = Rat(a * x11 + b * x21), gx12 = Rat(a * x12 - b * x11);
        Rat gx21 = Rat(c * x11 + d * x21), gx22 = Rat(c * x12 - d * x11);
        // (g X) g^{-1}, with g^{-1} = inv_det [[d, -b], [-c, a]]
        Rat y11 = (gx11 * Rat(d) - gx12 * Rat(c)) * inv_det;
        Rat y12 = (-gx11 * Rat(b) + gx12 * Rat(a)) * inv_det;
        Rat y21 = (gx21 * Rat(d) - gx22 * Rat(c)) * inv_det;
        return std::array<Rat, 3>{y11, y12, y21};  // coords in (h, e, f)
    };
    RatMat m(3, 3);
    auto ch = conj(1, 0, 0);
    auto ce = conj(0, 1, 0);
    auto cf = conj(0, 0, 1);
    for (std::size_t k = 0; k < 3; ++k) {
        m(k, 0) = ch[k];
        m(k, 1) = ce[k];
        m(k, 2) = cf[k];
    }
    return m;
}

}  // namespace

TEST_CASE("center and derived subalgebra") {
    SECTION("heisenberg: both equal the span of e3") {
        LieAlgebra h3 = LieAlgebra::heisenberg();
        Subspace e3 = span_of(3, {{Rat(0), Rat(0), Rat(1)}});
        CHECK(center(h3) == e3);
        CHECK(derived(h3) == e3);
    }
    SECTION("abelian: center everything, derived zero") {
        LieAlgebra a3 = LieAlgebra::abelian(3);
        CHECK(center(a3) == Subspace::full(3));
        CHECK(derived(a3).dim() == 0);
    }
    SECTION("sl2: center zero, derived everything") {
        LieAlgebra s = LieAlgebra::sl2();
        CHECK(center(s).dim() == 0);
        CHECK(derived(s) == Subspace::full(3));
    }
}

TEST_CASE("ideals and normal endomorphisms") {
    LieAlgebra sum = LieAlgebra::direct_sum(LieAlgebra::heisenberg(), LieAlgebra::sl2());
    SECTION("summand projection is normal") {
        RatMat p1(6, 6);
        for (std::size_t i = 0; i < 3; ++i) p1(i, i) = 1;
        CHECK(is_normal_endo(sum, p1));
        CHECK(is_normal_endo(sum, RatMat::identity(6)));
    }
    SECTION("swap on h3 + h3 is not normal") {
        LieAlgebra hh = LieAlgebra::direct_sum(LieAlgebra::heisenberg(),
                                               LieAlgebra::heisenberg());
        RatMat swap(6, 6);
        for (std::size_t i = 0; i < 3; ++i) {
            swap(i, i + 3) = 1;
            swap(i + 3, i) = 1;
        }
        CHECK_FALSE(is_normal_endo(hh, swap));
    }
    SECTION("summands are ideals") {
        Subspace h3_part = span_of(6, {{Rat(1), Rat(0), Rat(0), Rat(0), Rat(0), Rat(0)},
                                       {Rat(0), Rat(1), Rat(0), Rat(0), Rat(0), Rat(0)},
                                       {Rat(0), Rat(0), Rat(1), Rat(0), Rat(0), Rat(0)}});
        CHECK(is_ideal(sum, h3_part));
        Subspace diagonal = span_of(6, {{Rat(1), Rat(0), Rat(0), Rat(1), Rat(0), Rat(0)}});
        CHECK_FALSE(is_ideal(sum, diagonal));
    }
}

TEST_CASE("fitting splitting") {
    LieAlgebra sum = LieAlgebra::direct_sum(LieAlgebra::heisenberg(), LieAlgebra::sl2());
    SECTION("projection onto the first summand") {
        RatMat p1(6, 6);
        for (std::size_t i = 0; i < 3; ++i) p1(i, i) = 1;
        FittingSplit fs = fitting_split(sum, p1);
        CHECK(fs.exponent == 1);
        CHECK(fs.kernel == span_of(6, {{Rat(0), Rat(0), Rat(0), Rat(1), Rat(0), Rat(0)},
                                       {Rat(0), Rat(0), Rat(0), Rat(0), Rat(1), Rat(0)},
                                       {Rat(0), Rat(0), Rat(0), Rat(0), Rat(0), Rat(1)}}));
        CHECK(fs.image == span_of(6, {{Rat(1), Rat(0), Rat(0), Rat(0), Rat(0), Rat(0)},
                                      {Rat(0), Rat(1), Rat(0), Rat(0), Rat(0), Rat(0)},
                                      {Rat(0), Rat(0), Rat(1), Rat(0), Rat(0), Rat(0)}}));
    }
    SECTION("invertible map splits trivially") {
        FittingSplit fs = fitting_split(sum, RatMat::identity(6) * Rat(2));
        CHECK(fs.exponent == 1);
        CHECK(fs.kernel.dim() == 0);
        CHECK(fs.image == Subspace::full(6));
    }
    SECTION("non-normal input rejected") {
        RatMat bad(6, 6);
        bad(0, 1) = 1;
        CHECK_THROWS_AS(fitting_split(sum, bad), std::invalid_argument);
    }
}

TEST_CASE("fitting property on random normal endomorphisms") {
    std::mt19937_64 rng(4251);
    std::uniform_int_distribution<int> pick(0, 2);
    std::uniform_int_distribution<long> coeff(-3, 3);
    int done = 0;
    while (done < 100) {
        LieAlgebra l = LieAlgebra::abelian(1);
        switch (pick(rng)) {
            case 0: l = LieAlgebra::heisenberg(); break;
            case 1: l = LieAlgebra::sl2(); break;
            default: l = LieAlgebra::abelian(1); break;
        }
        while (l.dim() < 4 + static_cast<std::size_t>(done % 7)) {
            switch (pick(rng)) {
                case 0: l = LieAlgebra::direct_sum(l, LieAlgebra::heisenberg()); break;
                case 1: l = LieAlgebra::direct_sum(l, LieAlgebra::sl2()); break;
                default: l = LieAlgebra::direct_sum(l, LieAlgebra::abelian(1)); break;
            }
        }
        if (l.dim() > 10) continue;
        auto basis = centroid(l);
        RatMat f(l.dim(), l.dim());
        for (const auto& b : basis) f = f + b * Rat(coeff(rng));
        if (!is_normal_endo(l, f)) continue;
        FittingSplit fs = fitting_split(l, f);
        // rank stabilization double-checked by repeated multiplication
        RatMat power = RatMat::identity(l.dim());
        for (std::size_t k = 0; k < fs.exponent; ++k) power = power * f;
        CHECK(rank(power) == rank(power * f));
        CHECK(fs.kernel.dim() + fs.image.dim() == l.dim());
        CHECK(fs.kernel.intersect(fs.image).dim() == 0);
        CHECK(fs.kernel.sum(fs.image) == Subspace::full(l.dim()));
        CHECK(is_ideal(l, fs.kernel));
        CHECK(is_ideal(l, fs.image));
        ++done;
    }
}

TEST_CASE("centroid computations") {
    SECTION("sl2 is central simple: scalars only") {
        auto basis = centroid(LieAlgebra::sl2());
        REQUIRE(basis.size() == 1);
        CHECK(basis[0] * (Rat(1) / basis[0](0, 0)) == RatMat::identity(3));
    }
    SECTION("abelian: every map") {
        CHECK(centroid(LieAlgebra::abelian(3)).size() == 9);
    }
    SECTION("h3 + sl2 contains both summand projections") {
        LieAlgebra sum = LieAlgebra::direct_sum(LieAlgebra::heisenberg(), LieAlgebra::sl2());
        auto basis = centroid(sum);
        RatMat p1(6, 6), p2(6, 6);
        for (std::size_t i = 0; i < 3; ++i) {
            p1(i, i) = 1;
            p2(i + 3, i + 3) = 1;
        }
        CHECK(is_normal_endo(sum, p1));
        CHECK(is_normal_endo(sum, p2));
        CHECK(split_detail::coordinates_in(basis, p1).has_value());
        CHECK(split_detail::coordinates_in(basis, p2).has_value());
    }
}

TEST_CASE("indecomposable splitting") {
    SECTION("sl2 is indecomposable") {
        auto dec = indecomposable_split(LieAlgebra::sl2());
        REQUIRE(dec.size() == 1);
        CHECK(dec[0] == Subspace::full(3));
    }
    SECTION("h3 + sl2 gives two summands of dimension 3") {
        LieAlgebra sum = LieAlgebra::direct_sum(LieAlgebra::heisenberg(), LieAlgebra::sl2());
        auto dec = indecomposable_split(sum);
        REQUIRE(dec.size() == 2);
        CHECK(dec[0].dim() == 3);
        CHECK(dec[1].dim() == 3);
        for (std::size_t i = 0; i < 2; ++i) {
            CHECK(is_ideal(sum, dec[i]));
            auto restricted = restrict_to_ideal(sum, dec[i]);
            CHECK(indecomposable_split(restricted.algebra).size() == 1);
        }
    }
    SECTION("abelian splits into coordinate lines") {
        auto dec = indecomposable_split(LieAlgebra::abelian(3));
        REQUIRE(dec.size() == 3);
        for (std::size_t i = 0; i < 3; ++i) {
            CHECK(dec[i].dim() == 1);
            CHECK(dec[i].basis()(0, i) == 1);
        }
    }
    SECTION("splitting is stable under a basis change of h3 + h3 + line") {
        LieAlgebra base = LieAlgebra::direct_sum(
            LieAlgebra::direct_sum(LieAlgebra::heisenberg(), LieAlgebra::heisenberg()),
            LieAlgebra::abelian(1));
        RatMat p = RatMat::identity(7);
        p(0, 3) = 1;
        p(4, 1) = -1;
        p(6, 2) = 2;
        LieAlgebra twisted = base.change_basis(p);
        auto dec = indecomposable_split(twisted);
        REQUIRE(dec.size() == 3);
        std::multiset<std::size_t> dims;
        for (std::size_t i = 0; i < dec.size(); ++i) dims.insert(dec[i].dim());
        CHECK(dims == std::multiset<std::size_t>{1, 3, 3});
    }
}

TEST_CASE("krull-schmidt matching") {
    SECTION("identical decompositions match by the identity") {
        LieAlgebra sum = LieAlgebra::direct_sum(LieAlgebra::heisenberg(), LieAlgebra::sl2());
        auto dec = indecomposable_split(sum);
        auto match = krull_schmidt_match(sum, dec, dec);
        CHECK(match.sigma == std::vector<std::size_t>{0, 1});
        CHECK(match.two_sided_exists);
        CHECK(match.unique);
        for (const auto& cert : match.certificates) {
            CHECK(cert.projection == RatMat::identity(cert.projection.rows()));
            CHECK(cert.commutators_equal);
            CHECK(cert.central_residual_zero);
            CHECK(cert.reverse_isomorphism);
        }
    }
    SECTION("abelian counterexample: one-sided works, two-sided cannot") {
        LieAlgebra a3 = LieAlgebra::abelian(3);
        std::vector<Subspace> lines;
        for (std::size_t i = 0; i < 3; ++i) {
            RatMat row(1, 3);
            row(0, i) = 1;
            lines.push_back(Subspace::from_rows(3, row));
        }
        Decomposition dec1(a3, lines);
        // columns of the invertible mixing matrix
        RatMat a = {{Rat(1), Rat(1), Rat(1)}, {Rat(1), Rat(1), Rat(0)}, {Rat(1), Rat(0), Rat(1)}};
        std::vector<Subspace> mixed;
        for (std::size_t j = 0; j < 3; ++j) {
            RatMat row(1, 3);
            for (std::size_t i = 0; i < 3; ++i) row(0, i) = a(i, j);
            mixed.push_back(Subspace::from_rows(3, row));
        }
        Decomposition dec2(a3, mixed);
        auto match = krull_schmidt_match(a3, dec1, dec2);
        CHECK(match.sigma == std::vector<std::size_t>{0, 1, 2});
        CHECK_FALSE(match.two_sided_exists);
        CHECK_FALSE(match.unique);
    }
    SECTION("mismatched counts are rejected") {
        LieAlgebra a2 = LieAlgebra::abelian(2);
        Decomposition whole(a2, {Subspace::full(2)});
        std::vector<Subspace> lines;
        for (std::size_t i = 0; i < 2; ++i) {
            RatMat row(1, 2);
            row(0, i) = 1;
            lines.push_back(Subspace::from_rows(2, row));
        }
        Decomposition split(a2, lines);
        CHECK_THROWS_AS(krull_schmidt_match(a2, whole, split), std::invalid_argument);
    }
}

TEST_CASE("central mixing factorization") {
    LieAlgebra hh = LieAlgebra::direct_sum(LieAlgebra::heisenberg(), LieAlgebra::heisenberg());
    auto dec = indecomposable_split(hh);
    REQUIRE(dec.size() == 2);

    SECTION("block diagonal maps have no central part") {
        RatMat m(6, 6);
        m.paste(0, 0, heisenberg_automorphism(1, 1, 0, 1, 2, 0));
        m.paste(3, 3, heisenberg_automorphism(2, 1, 1, 1, 0, -1));
        auto fact = central_mixing_factor(hh, dec, LieEndo(hh, m), true);
        CHECK(fact.sigma == std::vector<std::size_t>{0, 1});
        CHECK(fact.psi.is_zero());
        CHECK(fact.theta == m);
        CHECK(fact.unique);
    }

    SECTION("roundtrip recovers a constructed factorization exactly") {
        std::mt19937_64 rng(86420);
        std::uniform_int_distribution<long> small(-2, 2);
        for (int trial = 0; trial < 50; ++trial) {
            RatMat theta(6, 6);
            bool swap_summands = trial % 2;
            long b = small(rng), c = small(rng);
            RatMat t1 = heisenberg_automorphism(1, b, c, 1 + b * c, small(rng), small(rng));
            RatMat t2 = heisenberg_automorphism(0, 1, -1, small(rng), small(rng), small(rng));
            if (!swap_summands) {
                theta.paste(0, 0, t1);
                theta.paste(3, 3, t2);
            } else {
                theta.paste(3, 0, t1);
                theta.paste(0, 3, t2);
            }
            // central block g_i -> Z(g_j) for j != sigma(i), vanishing on e3
            RatMat psi(6, 6);
            std::size_t target = swap_summands ? 0 : 3;
            psi(target + 2, 0) = small(rng);
            psi(target + 2, 1) = small(rng);
            std::size_t target2 = swap_summands ? 3 : 0;
            psi(target2 + 2, 3) = small(rng);
            psi(target2 + 2, 4) = small(rng);

            LieEndo phi(hh, theta + psi);
            auto fact = central_mixing_factor(hh, dec, phi, true);
            CHECK(fact.theta == theta);
            CHECK(fact.psi == psi);
            std::vector<std::size_t> expected =
                swap_summands ? std::vector<std::size_t>{1, 0} : std::vector<std::size_t>{0, 1};
            CHECK(fact.sigma == expected);
            CHECK(fact.unique);
            // determinant invariance under the central part
            CHECK(det(theta + psi) == det(theta));
        }
    }
}

TEST_CASE("determinant of endomorphisms") {
    LieAlgebra h3 = LieAlgebra::heisenberg();
    SECTION("identity") { CHECK(det_endo(LieEndo(h3, RatMat::identity(3))) == 1); }
    SECTION("central perturbation does not change the determinant") {
        std::mt19937_64 rng(1717);
        std::uniform_int_distribution<long> small(-3, 3);
        for (int trial = 0; trial < 25; ++trial) {
            RatMat g = heisenberg_automorphism(1, small(rng), small(rng), 1, small(rng),
                                               small(rng));
            RatMat h(3, 3);  // image in span(e3), vanishing on the derived part
            h(2, 0) = small(rng);
            h(2, 1) = small(rng);
            LieEndo f(h3, g + h);
            CHECK(det_endo(f) == det(g));
        }
    }
}

TEST_CASE("abelian summand detection") {
    CHECK_FALSE(has_abelian_summand(LieAlgebra::heisenberg()));
    CHECK_FALSE(has_abelian_summand(LieAlgebra::sl2()));
    CHECK(has_abelian_summand(
        LieAlgebra::direct_sum(LieAlgebra::heisenberg(), LieAlgebra::abelian(1))));
    CHECK(has_abelian_summand(LieAlgebra::abelian(2)));
}
