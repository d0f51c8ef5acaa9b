/**
 * Acceptance gate: one pass/fail line per criterion, each with its time
 * budget, covering the glued-line example, the twist sweep, patching round
 * trips, full faithfulness, the adjunction, the long exact sequence, the
 * equivalence criterion, and the axiom suites.
 */

#include <chrono>
#include <iostream>

#include <catch2/catch_amalgamated.hpp>

#include "cohesive/scenario.hpp"

using namespace cohesive;

namespace {

struct Criterion {
    int number;
    std::string label;
    double budget_s;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    double finish(bool ok) const {
        double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                       .count();
        std::cout << "[criterion " << number << "] " << label << ": "
                  << (ok ? "PASS" : "FAIL") << " (" << s << " s, budget " << budget_s
                  << " s)\n";
        return s;
    }
};

/// Monomial-counting oracle: dimension of the kernel is the number of
/// exponents shared by the two monomial supports [0,N] and [t-N, t].
std::size_t oracle_h0(int t, int N) {
    std::size_t c = 0;
    for (int i = 0; i <= N; ++i)
        if (t - N <= i && i <= t) ++c;
    return c;
}

/// Monomial-counting oracle: cokernel generators are the window exponents
/// covered by neither image support.
std::size_t oracle_h1(int t, int N) {
    std::size_t c = 0;
    for (int e = t - N; e <= N; ++e)
        if (!(0 <= e && e <= N) && !(t - N <= e && e <= t)) ++c;
    return c;
}

/// The six-object set for an uncurved square: free modules, shifts and
/// two-step complexes.
std::vector<GenModule> flat_objects(const SquareFixture& fx) {
    GenModule f1 = free_module(fx.A, 0, 1);
    GenModule t1 = two_step_module(fx.A, basis_element(fx.A, 0, 1));
    return {f1,
            free_module(fx.A, 0, 2),
            shift(f1),
            t1,
            two_step_module(fx.A, basis_element(fx.A, 0, 2)),
            shift(t1)};
}

/// The six-object set for the curved square: connection-corrected lines
/// (whose corrections square to minus the curvature), shifts and a sum.
std::vector<GenModule> curved_objects(const SquareFixture& fx) {
    GenModule d1 = corrected_line(fx.A, basis_element(fx.A, 1, 0));
    GenModule d12 =
        corrected_line(fx.A, basis_element(fx.A, 1, 0) + basis_element(fx.A, 1, 3));
    return {d1, shift(d1), shift(d1, 2), d12, shift(d12), direct_sum(d1, d12)};
}

}  // namespace

TEST_CASE("criterion 1: glued-line cohomology of the (2,0) pair") {
    Criterion cr{1, "glued-line (2,0) pair, N = 4 and 6", 1.0};
    bool ok = true;
    for (int N : {4, 6}) {
        QCohomology h = q_cohomology(build_q_complex(2, 0, N, Field::rationals()));
        ok = ok && h.h0 == 0 && h.h1 == 1 && h.h1_exponents == std::vector<int>{-1};
    }
    double s = cr.finish(ok);
    REQUIRE(ok);
    REQUIRE(s < 1.0);
}

TEST_CASE("criterion 2: twist sweep against the monomial-counting oracle") {
    Criterion cr{2, "twist sweep j = 0..5", 2.0};
    bool ok = true;
    const Field kf = Field::rationals();
    const int N = 6;
    for (int j = 0; j <= 4; ++j) {
        QCohomology h = q_cohomology(build_q_complex(0, j, N, kf));
        ok = ok && h.h0 == static_cast<std::size_t>(j + 1) && h.h0 == oracle_h0(j, N);
    }
    for (int j = 2; j <= 5; ++j) {
        QCohomology h = q_cohomology(build_q_complex(j, 0, N, kf));
        ok = ok && h.h1 == static_cast<std::size_t>(j - 1) && h.h1 == oracle_h1(-j, N);
    }
    double s = cr.finish(ok);
    REQUIRE(ok);
    REQUIRE(s < 2.0);
}

TEST_CASE("criterion 3: patching round trips for seeded strict data") {
    Criterion cr{3, "25 seeded strict data over Q and F5, ranks <= 3", 10.0};
    bool ok = true;
    auto fxq = nodal_square(Field::rationals());
    auto fx5 = nodal_square(Field::prime(5));
    DescentContext ctxq = descent_context(fxq.square);
    DescentContext ctx5 = descent_context(fx5.square);
    SplitMix64 rng{11};
    for (std::size_t i = 0; i < 25 && ok; ++i) {
        const DescentContext& ctx = i % 2 == 0 ? ctxq : ctx5;
        SplitMix64 sub = rng.split(i + 1);
        std::size_t rank = 1 + sub.next() % 3;
        StrictDescentDatum d = seeded_strict_datum(ctx, rank, sub);
        GluedModule glued = glue_strict(ctx, d);
        ok = ok && check_cohesive(glued.module).ok();
        for (const auto& [deg, blk] : glued.blocks) ok = ok && blk.ok();
        HfpObjPtr rglued = restrict_module(ctx, glued.module);
        HfpObjPtr xd = to_hfp_object(ctx, d);
        HfpMorphism v = glue_round_trip(ctx, glued, rglued, xd, d);
        ok = ok && HfpHom(rglued, xd).is_closed(v);
        ok = ok && hfp_is_homotopy_equivalence(v).equivalence;
    }
    double s = cr.finish(ok);
    REQUIRE(ok);
    REQUIRE(s < 10.0);
}

TEST_CASE("criterion 4: full faithfulness on six-object sets") {
    Criterion cr{4, "restriction fully faithful on SQ1 and SQ2", 60.0};
    bool ok = true;
    {
        auto fx = sq1_square(Field::rationals());
        DescentContext ctx = descent_context(fx.square);
        FaithfulReport r = verify_fully_faithful(ctx, flat_objects(fx), -3, 3);
        ok = ok && r.ok && r.pairs.size() == 36;
    }
    {
        auto fx = sq2_square(Field::rationals());
        DescentContext ctx = descent_context(fx.square);
        FaithfulReport r = verify_fully_faithful(ctx, curved_objects(fx), -3, 3);
        ok = ok && r.ok && r.pairs.size() == 36;
    }
    double s = cr.finish(ok);
    REQUIRE(ok);
    REQUIRE(s < 60.0);
}

TEST_CASE("criterion 5: adjunction on seeded pairs") {
    Criterion cr{5, "10 seeded (s, x) adjunction checks over SQ1", 30.0};
    bool ok = true;
    auto fx = sq1_square(Field::rationals());
    DescentContext ctx = descent_context(fx.square);
    std::vector<GenModule> pool = flat_objects(fx);
    SplitMix64 rng{23};
    for (std::size_t i = 0; i < 10 && ok; ++i) {
        SplitMix64 sub = rng.split(i + 1);
        const GenModule& s = pool[sub.next() % pool.size()];
        HfpObjPtr x = restrict_module(ctx, pool[sub.next() % pool.size()]);
        AdjunctionReport r = adjunction_check(ctx, s, x, sub.next());
        ok = ok && r.checks.ok();
        for (const auto& [t, d] : r.dims) ok = ok && d.first == d.second;
    }
    double s = cr.finish(ok);
    REQUIRE(ok);
    REQUIRE(s < 30.0);
}

TEST_CASE("criterion 6: long exact sequence on seeded pairs and the glued line") {
    Criterion cr{6, "Mayer-Vietoris on 5 seeded pairs per fixture plus the line pair", 30.0};
    bool ok = true;
    auto run_fixture = [&ok](const SquareFixture& fx, const std::vector<GenModule>& pool,
                             std::uint64_t seed) {
        DescentContext ctx = descent_context(fx.square);
        std::vector<HfpObjPtr> restricted;
        for (const auto& m : pool) restricted.push_back(restrict_module(ctx, m));
        SplitMix64 rng{seed};
        for (std::size_t i = 0; i < 5 && ok; ++i) {
            const HfpObjPtr& a = restricted[rng.next() % restricted.size()];
            const HfpObjPtr& b = restricted[rng.next() % restricted.size()];
            ok = ok && les_check(a, b, -4, 4).checks.ok();
        }
    };
    {
        auto fx = nodal_square(Field::rationals());
        run_fixture(fx, flat_objects(fx), 31);
    }
    {
        auto fx = sq1_square(Field::rationals());
        run_fixture(fx, flat_objects(fx), 37);
    }
    {
        auto fx = sq2_square(Field::rationals());
        run_fixture(fx, curved_objects(fx), 41);
    }
    ok = ok && p1_les_check(2, 0, 4, Field::rationals(), -4, 4).ok();
    double s = cr.finish(ok);
    REQUIRE(ok);
    REQUIRE(s < 30.0);
}

TEST_CASE("criterion 7: componentwise equivalence criterion vs direct inverse search") {
    Criterion cr{7, "50 seeded closed degree-0 fiber-product morphisms", 30.0};
    bool ok = true;
    auto fx = sq1_square(Field::rationals());
    const Field& kf = fx.A->field();
    DescentContext ctx = descent_context(fx.square);
    std::vector<HfpObjPtr> pool;
    for (const auto& m : flat_objects(fx)) pool.push_back(restrict_module(ctx, m));
    SplitMix64 rng{43};
    std::size_t equivalences = 0;
    for (std::size_t i = 0; i < 50 && ok; ++i) {
        SplitMix64 sub = rng.split(i + 1);
        HfpHom h(pool[sub.next() % pool.size()], pool[sub.next() % pool.size()]);
        MatrixK ker = h.complex().differential(0).kernel_basis();
        MatrixK coords(kf, h.dim(0), 1);
        if (ker.cols() > 0) coords = ker * random_column(kf, ker.cols(), sub);
        HfpMorphism f = h.element(0, coords);
        bool componentwise = hfp_is_homotopy_equivalence(f).equivalence;
        bool direct = find_hfp_h0_inverse(f).has_value();
        ok = ok && componentwise == direct;
        if (componentwise) ++equivalences;
    }
    std::cout << "    (" << equivalences << " of 50 sampled morphisms were equivalences)\n";
    double s = cr.finish(ok);
    REQUIRE(ok);
    REQUIRE(s < 30.0);
}

TEST_CASE("criterion 8: axiom suites") {
    Criterion cr{8, "validator, hom-complex squares, acyclic identity cone", 20.0};
    bool ok = true;

    // The curved fixture satisfies the axioms; 20 seeded single-entry
    // perturbations of its structure constants do not.
    {
        auto fx = sq2_square(Field::rationals());
        ok = ok && validate_curved_dga(fx.A).ok() && validate_curved_dga(fx.B).ok() &&
             validate_curved_dga(fx.C).ok() && validate_curved_dga(fx.D).ok();
        Json plan = Json::array(
            {Json{{"check", "perturbation-rejection"}, {"count", 20}, {"square", "sq2"}}});
        ScenarioRuntime rt = instantiate_scenario(
            parse_scenario(Json{{"version", 1}, {"field", "Q"}, {"square", "sq2"}}));
        Report rep = run_plan(rt, plan, 47);
        ok = ok && rep.ok();
    }

    // Every hom complex constructed from the object sets, cohesive and
    // fiber-product alike, squares to zero.
    for (int which = 0; which < 2 && ok; ++which) {
        auto fx = which == 0 ? sq1_square(Field::rationals()) : sq2_square(Field::rationals());
        DescentContext ctx = descent_context(fx.square);
        std::vector<GenModule> pool = which == 0 ? flat_objects(fx) : curved_objects(fx);
        std::vector<HfpObjPtr> restricted;
        for (const auto& m : pool) restricted.push_back(restrict_module(ctx, m));
        for (std::size_t i = 0; i < pool.size() && ok; ++i)
            for (std::size_t j = 0; j < pool.size() && ok; ++j) {
                ok = ok && !HomComplex(pool[i], pool[j]).complex().square_check();
                ok = ok && !HfpHom(restricted[i], restricted[j]).complex().square_check();
            }
    }

    // cone(id) is acyclic against every probe in the SQ1 object set.
    {
        auto fx = sq1_square(Field::rationals());
        GenModule t1 = two_step_module(fx.A, basis_element(fx.A, 0, 1));
        GenModule c = cone(identity_morphism(t1), t1, t1);
        for (const GenModule& probe : flat_objects(fx)) {
            Cohomology h(HomComplex(probe, c).complex());
            for (int t = -4; t <= 4 && ok; ++t) ok = ok && h.dim(t) == 0;
        }
    }

    double s = cr.finish(ok);
    REQUIRE(ok);
    REQUIRE(s < 20.0);
}
