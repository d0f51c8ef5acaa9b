#include <catch2/catch_amalgamated.hpp>

#include "cohesive/hfp.hpp"
#include "helpers.hpp"

using namespace cohesive;
using cohesive::testutil::random_coords;
using cohesive::testutil::rank_one_with_correction;
using cohesive::testutil::Rng;
using cohesive::testutil::two_step;

namespace {

HfpCtxPtr square_context(const SquareFixture& fx) {
    return std::make_shared<HfpContext>(HfpContext{fx.square.g, fx.square.l});
}

/// (m, n, id) for a pair whose two pullbacks coincide on the nose.
HfpObjPtr matched_object(const HfpCtxPtr& ctx, GenModule m, GenModule n) {
    GenModule gm = pullback(ctx->gmap, m);
    return make_hfp_object(ctx, std::move(m), std::move(n), identity_morphism(gm));
}

HfpMorphism random_element(const HfpHom& h, int t, Rng& rng) {
    return h.element(t, random_coords(h.complex().field(), h.dim(t), rng));
}

/// A random cocycle in degree t, as a combination of kernel basis vectors.
HfpMorphism random_cocycle(const HfpHom& h, int t, Rng& rng) {
    MatrixK ker = h.complex().differential(t).kernel_basis();
    MatrixK coords = ker * random_coords(h.complex().field(), ker.cols(), rng);
    return h.element(t, coords);
}

}  // namespace

TEST_CASE("the all-trivial pair by hand") {
    Field kf = Field::rationals();
    AlgebraPtr k = ground_field_algebra(kf);
    auto ctx = std::make_shared<HfpContext>(HfpContext{identity_map(k), identity_map(k)});
    HfpObjPtr x = matched_object(ctx, free_module(k, 0, 1), free_module(k, 0, 1));
    REQUIRE(x->certificate.strict);

    HfpHom h(x, x);
    REQUIRE(h.dim(0) == 2);  // (μ, ν)
    REQUIRE(h.dim(1) == 1);  // the glue slot
    REQUIRE(h.dim(-1) == 0);

    // d(μ, ν) = ±(μ − ν): kernel is the diagonal
    Cohomology hh(h.complex());
    REQUIRE(hh.dim(0) == 1);
    REQUIRE(hh.dim(1) == 0);
    MatrixK d = h.complex().differential(0);
    REQUIRE(d.at(0, 0) == -d.at(0, 1));
    REQUIRE_FALSE(d.at(0, 0).is_zero());

    HfpMorphism id = hfp_identity(x);
    REQUIRE(h.is_closed(id));
    REQUIRE(hfp_compose(id, id) == id);
}

TEST_CASE("object acceptance and rejection") {
    auto fx = sq1_square(Field::rationals());
    auto ctx = square_context(fx);
    GenModule m = free_module(fx.B, 0, 1), n = free_module(fx.C, 0, 1);

    HfpObjPtr x = matched_object(ctx, m, n);
    REQUIRE(x->certificate.strict);
    REQUIRE(compose_hom(x->certificate.psi, x->phi) == identity_morphism(x->gm));

    // the zero comparison morphism is not invertible in H⁰
    GenMorphism zero;
    zero.degree = 0;
    REQUIRE_THROWS_AS(make_hfp_object(ctx, m, n, zero), std::invalid_argument);
}

TEST_CASE("curved fixture objects glue along the corrected line") {
    for (Field kf : {Field::rationals(), Field::prime(5)}) {
        auto fx = sq2_square(kf);
        auto ctx = square_context(fx);
        GenModule m = rank_one_with_correction(fx.B, basis_element(fx.B, 1, 0));
        GenModule n = rank_one_with_correction(fx.C, basis_element(fx.C, 1, 0));
        REQUIRE(check_cohesive(m).ok());
        REQUIRE(check_cohesive(n).ok());
        HfpObjPtr x = matched_object(ctx, m, n);
        REQUIRE(x->certificate.strict);
        HfpHom h(x, x);
        REQUIRE_FALSE(h.complex().square_check());
        REQUIRE(h.is_closed(hfp_identity(x)));
        Cohomology hh(h.complex());
        REQUIRE(hh.dim(0) >= 1);
    }
}

TEST_CASE("composition axioms fix the sign convention") {
    auto fx = sq1_square(Field::rationals());
    auto ctx = square_context(fx);
    HfpObjPtr x1 = matched_object(ctx, free_module(fx.B, 0, 1), free_module(fx.C, 0, 1));
    HfpObjPtr x2 = matched_object(ctx, two_step(fx.B, basis_element(fx.B, 0, 1)),
                                  two_step(fx.C, basis_element(fx.C, 0, 1)));
    HfpHom h12(x1, x2), h21(x2, x1), h11(x1, x1), h22(x2, x2);
    Rng rng{20260826};

    SECTION("units") {
        HfpMorphism id1 = hfp_identity(x1), id2 = hfp_identity(x2);
        for (int t = -1; t <= 1; ++t) {
            HfpMorphism f = random_element(h12, t, rng);
            REQUIRE(hfp_compose(id2, f) == f);
            REQUIRE(hfp_compose(f, id1) == f);
        }
    }

    SECTION("associativity") {
        for (int trial = 0; trial < 5; ++trial)
            for (int p : {0, 1})
                for (int q : {-1, 0, 1}) {
                    HfpMorphism f = random_element(h12, q, rng);
                    HfpMorphism g = random_element(h21, p, rng);
                    HfpMorphism e = random_element(h12, 1 - p, rng);
                    REQUIRE(hfp_compose(hfp_compose(e, g), f) ==
                            hfp_compose(e, hfp_compose(g, f)));
                }
    }

    SECTION("graded Leibniz rule for the composition") {
        const Field& kf = Field::rationals();
        for (int trial = 0; trial < 5; ++trial)
            for (int p : {-1, 0, 1})
                for (int q : {-1, 0, 1}) {
                    HfpMorphism f = random_element(h12, q, rng);
                    HfpMorphism g = random_element(h21, p, rng);
                    MatrixK lhs = h11.coordinates(h11.differential(hfp_compose(g, f)));
                    MatrixK r1 = h11.coordinates(hfp_compose(h21.differential(g), f));
                    MatrixK r2 = h11.coordinates(hfp_compose(g, h12.differential(f)));
                    Scalar sign(kf, p % 2 == 0 ? 1 : -1);
                    REQUIRE(lhs == r1 + sign * r2);
                }
    }

    SECTION("differential squares to zero on every pair") {
        for (const HfpHom* h : {&h12, &h21, &h11, &h22})
            REQUIRE_FALSE(h->complex().square_check());
    }
}

TEST_CASE("arrow membership") {
    auto fx = sq1_square(Field::rationals());
    auto ctx = square_context(fx);
    HfpObjPtr x1 = matched_object(ctx, free_module(fx.B, 0, 1), free_module(fx.C, 0, 1));
    HfpObjPtr x2 = matched_object(ctx, two_step(fx.B, basis_element(fx.B, 0, 1)),
                                  two_step(fx.C, basis_element(fx.C, 0, 1)));

    REQUIRE(check_arrow_membership(hfp_identity(x1)));
    REQUIRE(check_arrow_membership(hfp_identity(x2)));

    // drop ν: the strict commutation fails
    HfpMorphism lopsided = hfp_identity(x1);
    lopsided.nu = GenMorphism{};
    REQUIRE_FALSE(check_arrow_membership(lopsided));

    // any nonzero glue component disqualifies
    HfpHom h22(x2, x2);
    Rng rng{7};
    HfpMorphism with_glue = hfp_identity(x2);
    bool found = false;
    for (int trial = 0; trial < 20 && !found; ++trial) {
        HfpMorphism g = random_element(h22, 0, rng);
        if (g.gamma.is_zero()) continue;
        with_glue.gamma = g.gamma;
        found = true;
    }
    REQUIRE(found);
    REQUIRE_FALSE(check_arrow_membership(with_glue));
}

TEST_CASE("the three-complex long exact sequence") {
    for (Field kf : {Field::rationals(), Field::prime(5)}) {
        auto fx = sq1_square(kf);
        auto ctx = square_context(fx);
        HfpObjPtr x1 = matched_object(ctx, free_module(fx.B, 0, 1), free_module(fx.C, 0, 1));
        HfpObjPtr x2 = matched_object(ctx, two_step(fx.B, basis_element(fx.B, 0, 1)),
                                      two_step(fx.C, basis_element(fx.C, 0, 1)));
        for (const auto& [a, b] : {std::pair{x1, x1}, {x1, x2}, {x2, x1}, {x2, x2}}) {
            LesReport rep = les_check(a, b);
            INFO(rep.checks.str());
            REQUIRE(rep.checks.ok());
        }
    }
}

TEST_CASE("componentwise equivalence criterion agrees with the direct inverse search") {
    auto fx = sq1_square(Field::rationals());
    auto ctx = square_context(fx);
    HfpObjPtr x1 = matched_object(ctx, free_module(fx.B, 0, 1), free_module(fx.C, 0, 1));
    HfpObjPtr x2 = matched_object(ctx, two_step(fx.B, basis_element(fx.B, 0, 1)),
                                  two_step(fx.C, basis_element(fx.C, 0, 1)));

    SECTION("identity and zero") {
        REQUIRE(hfp_is_homotopy_equivalence(hfp_identity(x2)).equivalence);
        auto cert = find_hfp_h0_inverse(hfp_identity(x2));
        REQUIRE(cert.has_value());

        HfpHom h11(x1, x1);
        HfpMorphism zero = h11.element(0, MatrixK(Field::rationals(), h11.dim(0), 1));
        REQUIRE_FALSE(hfp_is_homotopy_equivalence(zero).equivalence);
        REQUIRE_FALSE(find_hfp_h0_inverse(zero).has_value());
    }

    SECTION("seeded closed morphisms, both verdict paths") {
        Rng rng{424242};
        HfpHom h22(x2, x2), h12(x1, x2);
        int agreements = 0;
        for (int trial = 0; trial < 30; ++trial) {
            const HfpHom& h = trial % 3 == 0 ? h12 : h22;
            HfpMorphism f = random_cocycle(h, 0, rng);
            bool componentwise = hfp_is_homotopy_equivalence(f).equivalence;
            bool direct = find_hfp_h0_inverse(f).has_value();
            REQUIRE(componentwise == direct);
            ++agreements;
        }
        REQUIRE(agreements == 30);
    }

    SECTION("an inverse certificate actually inverts up to homotopy") {
        Rng rng{11};
        HfpHom h22(x2, x2);
        HfpMorphism f = random_cocycle(h22, 0, rng);
        // nudge toward the identity so the sample is an equivalence
        MatrixK c = h22.coordinates(f) + h22.coordinates(hfp_identity(x2));
        f = h22.element(0, c);
        if (hfp_is_homotopy_equivalence(f).equivalence) {
            auto cert = find_hfp_h0_inverse(f);
            REQUIRE(cert.has_value());
            HfpMorphism pf = hfp_compose(cert->psi, f);
            HfpMorphism dh = h22.differential(cert->h_src);
            MatrixK lhs = h22.coordinates(pf);
            MatrixK rhs = h22.coordinates(hfp_identity(x2)) + h22.coordinates(dh);
            REQUIRE(lhs == rhs);
        }
    }
}
