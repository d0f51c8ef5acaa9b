/**
 * Scenario ingestion and deterministic reporting.
 *
 * A scenario file is a small JSON document naming a fixture square, optional
 * structure-constant perturbations, a list of modules over its corner algebra,
 * and an ordered verification plan.  Running the plan produces a report with
 * one record per check — name, anchor tag for the statement being verified,
 * verdict, and a data payload with dimensions or certificates — serialized
 * with stable field ordering in text or JSON form.  Reports are byte-identical
 * for identical (scenario, seed) pairs; wall-clock timings are kept out of
 * the serialized output unless explicitly requested.
 */

#ifndef COHESIVE_SCENARIO_HPP
#define COHESIVE_SCENARIO_HPP

#include <chrono>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cohesive/cech_p1.hpp"
#include "cohesive/descent.hpp"
#include "cohesive/fixtures.hpp"
#include "cohesive/rng.hpp"
#include <json.hpp>

namespace cohesive {

using Json = nlohmann::json;

// ---------------------------------------------------------------------------
// Report
// ---------------------------------------------------------------------------

struct CheckRecord {
    std::string name;
    std::string anchor;  // stable tag of the statement this check verifies
    bool pass = false;
    Json data;  // dimensions, generators, certificates
    double elapsed_ms = 0.0;
};

struct Report {
    std::vector<CheckRecord> checks;

    bool ok() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    const CheckRecord* find(const std::string& name) const {
        for (const auto& c : checks)
            if (c.name == name) return &c;
        return nullptr;
    }
};

enum class ReportFormat { text, json };

inline Json report_to_json(const Report& r, bool timings = false) {
    Json out;
    out["checks"] = Json::array();
    for (const auto& c : r.checks) {
        Json rec;
        rec["name"] = c.name;
        rec["anchor"] = c.anchor;
        rec["pass"] = c.pass;
        rec["data"] = c.data;
        if (timings) rec["elapsed_ms"] = c.elapsed_ms;
        out["checks"].push_back(std::move(rec));
    }
    return out;
}

inline Report report_from_json(const Json& j) {
    Report r;
    for (const auto& rec : j.at("checks")) {
        CheckRecord c;
        c.name = rec.at("name").get<std::string>();
        c.anchor = rec.at("anchor").get<std::string>();
        c.pass = rec.at("pass").get<bool>();
        c.data = rec.value("data", Json::object());
        c.elapsed_ms = rec.value("elapsed_ms", 0.0);
        r.checks.push_back(std::move(c));
    }
    return r;
}

inline std::string report_emit(const Report& r, ReportFormat fmt, bool timings = false) {
    if (fmt == ReportFormat::json) return report_to_json(r, timings).dump(2) + "\n";
    std::ostringstream os;
    std::size_t failed = 0;
    for (const auto& c : r.checks) {
        if (!c.pass) ++failed;
        os << (c.pass ? "PASS" : "FAIL") << "  " << c.name << "  [" << c.anchor << "]";
        if (!c.data.is_null() && !(c.data.is_object() && c.data.empty()))
            os << "  " << c.data.dump();
        if (timings) os << "  (" << c.elapsed_ms << " ms)";
        os << "\n";
    }
    os << "checks: " << r.checks.size() << ", failed: " << failed << "\n";
    return os.str();
}

// ---------------------------------------------------------------------------
// Scenario
// ---------------------------------------------------------------------------

struct Scenario {
    int version = 1;
    Field field = Field::rationals();
    std::string square_name;  // "", "nodal", "sq1" or "sq2"
    Json perturbations = Json::array();
    Json objects = Json::array();
    Json plan = Json::array();
};

inline Field parse_field_tag(const std::string& tag) {
    if (tag == "Q") return Field::rationals();
    if (tag.size() > 1 && tag[0] == 'F') {
        long p = std::stol(tag.substr(1));
        if (p > 1) return Field::prime(static_cast<std::uint32_t>(p));
    }
    throw std::invalid_argument("scenario: unknown field tag '" + tag + "' (expected Q or Fp)");
}

inline Scenario parse_scenario(const Json& j) {
    Scenario sc;
    if (!j.is_object()) throw std::invalid_argument("scenario: top level must be an object");
    if (!j.contains("version")) throw std::invalid_argument("scenario: missing 'version' field");
    sc.version = j.at("version").get<int>();
    if (sc.version != 1)
        throw std::invalid_argument("scenario: unsupported version " +
                                    std::to_string(sc.version));
    sc.field = parse_field_tag(j.value("field", std::string("Q")));
    sc.square_name = j.value("square", std::string());
    sc.perturbations = j.value("perturbations", Json::array());
    sc.objects = j.value("objects", Json::array());
    sc.plan = j.value("plan", Json::array());
    return sc;
}

inline Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("scenario: cannot open '" + path + "'");
    Json j;
    try {
        j = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw std::invalid_argument("scenario '" + path + "': " + e.what());
    }
    try {
        return parse_scenario(j);
    } catch (const Json::exception& e) {
        throw std::invalid_argument("scenario '" + path + "': " + e.what());
    }
}

// ---------------------------------------------------------------------------
// Module builders shared by scenarios and property suites
// ---------------------------------------------------------------------------

/// Two-step complex R --(a·)--> R in module degrees 0 and 1.
inline GenModule two_step_module(const AlgebraPtr& base, const AlgebraElement& a) {
    GenModule m(base);
    m.add_atom(free_atom(base, 0, 1));
    m.add_atom(free_atom(base, 1, 1));
    AMat w(base, 1, 1);
    w.at(0, 0) = a;
    m.set_comp(1, 0, Component{w, identity_map(base)});
    return m;
}

/// Free rank-1 module in degree 0 with a single diagonal connection entry.
inline GenModule corrected_line(const AlgebraPtr& base, const AlgebraElement& u) {
    GenModule m = free_module(base, 0, 1);
    AMat w(base, 1, 1);
    w.at(0, 0) = u;
    m.set_comp(0, 0, Component{w, identity_map(base)});
    return m;
}

/// A seeded strict descent datum: free rank-r sides glued along a random
/// invertible degree-zero scalar matrix over the bottom corner.
inline StrictDescentDatum seeded_strict_datum(const DescentContext& ctx, std::size_t rank,
                                              SplitMix64& rng) {
    const DescentSquare& sq = ctx.square;
    const Field& kf = sq.A()->field();
    GenModule m = free_module(sq.B(), 0, rank);
    GenModule n = free_module(sq.C(), 0, rank);
    MatrixK coeffs(kf, rank, rank);
    do {
        for (std::size_t i = 0; i < rank; ++i)
            for (std::size_t j = 0; j < rank; ++j) coeffs.at(i, j) = Scalar(kf, rng.small());
    } while (coeffs.rank() != rank);
    AMat phi0(sq.D(), rank, rank);
    AlgebraElement one = unit_element(sq.D());
    for (std::size_t i = 0; i < rank; ++i)
        for (std::size_t j = 0; j < rank; ++j) phi0.at(i, j) = coeffs.at(i, j) * one;
    GenMorphism phi;
    phi.degree = 0;
    phi.add(0, 0, phi0, identity_map(sq.D()));
    return make_strict_datum(ctx, std::move(m), std::move(n), std::move(phi));
}

// ---------------------------------------------------------------------------
// Scenario runtime
// ---------------------------------------------------------------------------

namespace detail_scn {

inline AlgebraElement element_from_json(const AlgebraPtr& a, const Json& j) {
    int d = j.at("degree").get<int>();
    const auto& coords = j.at("coords");
    if (d < 0 || d > a->max_degree() || coords.size() != a->dim(d))
        throw std::invalid_argument("scenario: element coordinates do not match the algebra");
    AlgebraElement e(a);
    MatrixK c(a->field(), a->dim(d), 1);
    for (std::size_t i = 0; i < coords.size(); ++i)
        c.at(i, 0) = Scalar(a->field(), coords[i].get<long long>());
    e.set_comp(d, c);
    return e;
}

}  // namespace detail_scn

/// A loaded scenario: fixture square (with perturbations applied), resolved
/// module list, and the plan ready to run.
struct ScenarioRuntime {
    Scenario sc;
    std::optional<SquareFixture> fixture;
    std::optional<DescentContext> ctx;
    std::vector<std::string> names;
    std::vector<GenModule> modules;

    const GenModule& module(const std::string& name) const {
        for (std::size_t i = 0; i < names.size(); ++i)
            if (names[i] == name) return modules[i];
        throw std::invalid_argument("scenario: unresolved object name '" + name + "'");
    }
};

inline SquareFixture build_square(const std::string& name, const Field& f) {
    if (name == "nodal") return nodal_square(f);
    if (name == "sq1") return sq1_square(f);
    if (name == "sq2") return sq2_square(f);
    throw std::invalid_argument("scenario: unknown square '" + name + "'");
}

/// Overwrite one structure constant of the named corner algebra.  The result
/// deliberately need not satisfy the curved-dga axioms; that is the point of
/// the perturbation fixtures.
inline void apply_perturbation(SquareFixture& fx, const Json& p) {
    std::string corner = p.value("algebra", std::string("A"));
    AlgebraPtr a = corner == "A"   ? fx.A
                   : corner == "B" ? fx.B
                   : corner == "C" ? fx.C
                   : corner == "D" ? fx.D
                                   : nullptr;
    if (!a) throw std::invalid_argument("scenario: unknown corner '" + corner + "'");
    int d1 = p.at("left_degree").get<int>(), d2 = p.at("right_degree").get<int>();
    std::size_t i = p.at("left_index").get<std::size_t>();
    std::size_t j = p.at("right_index").get<std::size_t>();
    const auto& coords = p.at("coords");
    MatrixK c(a->field(), a->dim(d1 + d2), 1);
    if (coords.size() != c.rows())
        throw std::invalid_argument("scenario: perturbation coordinates of wrong size");
    for (std::size_t t = 0; t < coords.size(); ++t)
        c.at(t, 0) = Scalar(a->field(), coords[t].get<long long>());
    std::const_pointer_cast<GradedAlgebra>(a)->set_product(d1, i, d2, j, std::move(c));
}

inline ScenarioRuntime instantiate_scenario(Scenario sc) {
    ScenarioRuntime rt;
    rt.sc = std::move(sc);
    if (rt.sc.square_name.empty()) {
        if (!rt.sc.objects.empty())
            throw std::invalid_argument("scenario: objects require a 'square'");
        return rt;
    }
    rt.fixture = build_square(rt.sc.square_name, rt.sc.field);
    for (const auto& p : rt.sc.perturbations) apply_perturbation(*rt.fixture, p);
    rt.ctx = descent_context(rt.fixture->square);
    for (const auto& o : rt.sc.objects) {
        std::string name = o.at("name").get<std::string>();
        std::string kind = o.at("kind").get<std::string>();
        const AlgebraPtr& A = rt.fixture->A;
        if (kind == "free") {
            rt.modules.push_back(free_module(A, o.value("degree", 0), o.value("rank", 1)));
        } else if (kind == "shift") {
            rt.modules.push_back(shift(rt.module(o.at("of").get<std::string>()),
                                       o.value("times", 1)));
        } else if (kind == "sum") {
            rt.modules.push_back(direct_sum(rt.module(o.at("of").get<std::string>()),
                                            rt.module(o.at("with").get<std::string>())));
        } else if (kind == "two-step") {
            rt.modules.push_back(
                two_step_module(A, detail_scn::element_from_json(A, o.at("entry"))));
        } else if (kind == "corrected-line") {
            rt.modules.push_back(
                corrected_line(A, detail_scn::element_from_json(A, o.at("entry"))));
        } else {
            throw std::invalid_argument("scenario: unknown object kind '" + kind + "'");
        }
        rt.names.push_back(std::move(name));
    }
    return rt;
}

// ---------------------------------------------------------------------------
// Plan execution
// ---------------------------------------------------------------------------

namespace detail_scn {

inline Json summarize(const ValidationReport& rep) {
    Json failures = Json::array();
    for (const auto& c : rep.checks)
        if (!c.pass) failures.push_back(c.name + (c.witness.empty() ? "" : ": " + c.witness));
    Json out;
    out["checks"] = rep.checks.size();
    out["failures"] = std::move(failures);
    return out;
}

inline std::pair<int, int> window_of(const Json& c, int lo = -3, int hi = 3) {
    if (c.contains("window")) {
        lo = c["window"].at(0).get<int>();
        hi = c["window"].at(1).get<int>();
    }
    return {lo, hi};
}

/// Pool of objects named by a check item ("objects": [...]), default: all.
inline std::vector<std::size_t> object_pool(const ScenarioRuntime& rt, const Json& c) {
    std::vector<std::size_t> out;
    if (c.contains("objects")) {
        for (const auto& n : c["objects"]) {
            std::string name = n.get<std::string>();
            std::size_t i = 0;
            while (i < rt.names.size() && rt.names[i] != name) ++i;
            if (i == rt.names.size())
                throw std::invalid_argument("scenario: unresolved object name '" + name + "'");
            out.push_back(i);
        }
    } else {
        for (std::size_t i = 0; i < rt.names.size(); ++i) out.push_back(i);
    }
    return out;
}

struct Runner {
    const ScenarioRuntime& rt;
    std::uint64_t seed;
    Report& rep;

    void add(std::string name, std::string anchor, bool pass, Json data, double ms) {
        rep.checks.push_back({std::move(name), std::move(anchor), pass, std::move(data), ms});
    }

    const DescentContext& ctx() const {
        if (!rt.ctx) throw std::invalid_argument("scenario: this check requires a 'square'");
        return *rt.ctx;
    }

    void run_validate() {
        if (!rt.fixture)
            throw std::invalid_argument("scenario: this check requires a 'square'");
        const SquareFixture& fx = *rt.fixture;
        const char* corners = "ABCD";
        const AlgebraPtr* algs[4] = {&fx.A, &fx.B, &fx.C, &fx.D};
        for (int i = 0; i < 4; ++i) {
            ValidationReport r = validate_curved_dga(*algs[i]);
            add(std::string("curved-dga-axioms-") + corners[i], "curved-dga-definition", r.ok(),
                summarize(r), 0);
        }
        const char* names[4] = {"f", "k", "g", "l"};
        const CurvedDgaMap* maps[4] = {&fx.square.f, &fx.square.k, &fx.square.g, &fx.square.l};
        for (int i = 0; i < 4; ++i) {
            ValidationReport r = validate_cdga_map(*maps[i]);
            add(std::string("dga-map-axioms-") + names[i], "curved-map-definition", r.ok(),
                summarize(r), 0);
        }
        ValidationReport r = check_descent_assumptions(fx.square);
        add("descent-square-assumptions", "standing-assumptions", r.ok(), summarize(r), 0);
    }

    void run_cohom(const Json& c) {
        auto [lo, hi] = window_of(c);
        for (std::size_t i : object_pool(rt, c)) {
            DegreeZeroComplex z = degree_zero_complex(rt.modules[i]);
            Cohomology h(z.complex);
            Json dims = Json::object();
            for (int t = lo; t <= hi; ++t) dims[std::to_string(t)] = h.dim(t);
            Json data;
            data["dims"] = std::move(dims);
            add("cohomology-" + rt.names[i], "cohesive-module-cohomology", true, std::move(data),
                0);
        }
    }

    void run_restrict(const Json& c) {
        for (std::size_t i : object_pool(rt, c)) {
            HfpObjPtr x = restrict_module(ctx(), rt.modules[i]);
            bool mb = check_cohesive(x->m).ok(), nc = check_cohesive(x->n).ok();
            Json data;
            data["strict"] = x->certificate.strict;
            data["sides-cohesive"] = mb && nc;
            add("restriction-" + rt.names[i], "restriction-functor", x->certificate.strict && mb && nc,
                std::move(data), 0);
        }
    }

    void run_atilde(const Json& c) {
        auto [lo, hi] = window_of(c);
        for (std::size_t i : object_pool(rt, c)) {
            HfpObjPtr x = restrict_module(ctx(), rt.modules[i]);
            ATildeValue v = a_tilde(ctx(), x);
            bool cohesive_ok = check_cohesive(v.value).ok();
            DegreeZeroComplex z = degree_zero_complex(v.value);
            Cohomology h(z.complex);
            Json dims = Json::object();
            for (int t = lo; t <= hi; ++t) dims[std::to_string(t)] = h.dim(t);
            Json data;
            data["atoms"] = v.value.atom_count();
            data["dims"] = std::move(dims);
            add("adjoint-value-" + rt.names[i], "adjoint-functor", cohesive_ok, std::move(data),
                0);
        }
    }

    void run_unit(const Json& c) {
        for (std::size_t i : object_pool(rt, c)) {
            UnitEta u = unit_eta(ctx(), rt.modules[i]);
            Json data;
            data["closed"] = u.closed;
            data["quasi-isomorphism"] = u.degree_zero_quasi_iso;
            add("unit-map-" + rt.names[i], "unit-quasi-isomorphism",
                u.closed && u.degree_zero_quasi_iso, std::move(data), 0);
        }
    }

    void run_fully_faithful(const Json& c) {
        auto [lo, hi] = window_of(c, -2, 2);
        std::vector<GenModule> objs;
        for (std::size_t i : object_pool(rt, c)) objs.push_back(rt.modules[i]);
        FaithfulReport r = verify_fully_faithful(ctx(), objs, lo, hi);
        Json failures = Json::array();
        for (const auto& p : r.pairs)
            if (!p.chain_map || !p.quasi_iso)
                failures.push_back(std::to_string(p.src) + "->" + std::to_string(p.tgt));
        Json data;
        data["pairs"] = r.pairs.size();
        data["failures"] = std::move(failures);
        add("theorem-main-fully-faithful", "descent-theorem", r.ok, std::move(data), 0);
    }

    void run_adjunction(const Json& c) {
        Json pairs = c.value("pairs", Json::array());
        std::size_t idx = 0;
        for (const auto& pr : pairs) {
            const GenModule& s = rt.module(pr.at(0).get<std::string>());
            HfpObjPtr x = restrict_module(ctx(), rt.module(pr.at(1).get<std::string>()));
            AdjunctionReport r = adjunction_check(ctx(), s, x, seed + idx);
            Json dims = Json::object();
            for (const auto& [t, d] : r.dims)
                dims[std::to_string(t)] = Json::array({d.first, d.second});
            Json data;
            data["dims"] = std::move(dims);
            Json sub = summarize(r.checks);
            data["failures"] = sub["failures"];
            add("adjunction-" + pr.at(0).get<std::string>() + "-" + pr.at(1).get<std::string>(),
                "adjunction-isomorphism", r.checks.ok(), std::move(data), 0);
            ++idx;
        }
    }

    void run_milnor(const Json& c) {
        std::size_t count = c.value("count", 5);
        std::size_t max_rank = c.value("max_rank", 3);
        SplitMix64 rng{seed};
        Json ranks = Json::array();
        Json failures = Json::array();
        for (std::size_t i = 0; i < count; ++i) {
            SplitMix64 sub = rng.split(i + 1);
            std::size_t rank = 1 + sub.next() % max_rank;
            StrictDescentDatum d = seeded_strict_datum(ctx(), rank, sub);
            GluedModule glued = glue_strict(ctx(), d);
            bool ok = check_cohesive(glued.module).ok();
            for (const auto& [deg, blk] : glued.blocks) ok = ok && blk.ok();
            HfpObjPtr rglued = restrict_module(ctx(), glued.module);
            HfpObjPtr xd = to_hfp_object(ctx(), d);
            HfpMorphism v = glue_round_trip(ctx(), glued, rglued, xd, d);
            HfpHom h(rglued, xd);
            ok = ok && h.is_closed(v) && hfp_is_homotopy_equivalence(v).equivalence;
            ranks.push_back(rank);
            if (!ok) failures.push_back(i);
        }
        Json data;
        data["count"] = count;
        data["ranks"] = std::move(ranks);
        data["failures"] = failures;
        add("milnor-round-trip", "milnor-patching", failures.empty(), std::move(data), 0);
    }

    void run_mayer_vietoris(const Json& c) {
        auto [lo, hi] = window_of(c);
        std::size_t count = c.value("pairs", 5);
        std::vector<std::size_t> pool = object_pool(rt, c);
        if (pool.empty())
            throw std::invalid_argument("scenario: mayer-vietoris needs at least one object");
        std::vector<HfpObjPtr> restricted;
        for (std::size_t i : pool) restricted.push_back(restrict_module(ctx(), rt.modules[i]));
        SplitMix64 rng{seed};
        for (std::size_t i = 0; i < count; ++i) {
            std::size_t a = rng.next() % restricted.size();
            std::size_t b = rng.next() % restricted.size();
            LesReport r = les_check(restricted[a], restricted[b], lo, hi);
            Json data;
            data["pair"] = Json::array({rt.names[pool[a]], rt.names[pool[b]]});
            Json sub = summarize(r.checks);
            data["failures"] = sub["failures"];
            add("mayer-vietoris-" + std::to_string(i), "hom-long-exact-sequence", r.checks.ok(),
                std::move(data), 0);
        }
    }

    void run_getback(const Json& c) {
        std::size_t count = c.value("count", 10);
        std::vector<std::size_t> pool = object_pool(rt, c);
        if (pool.empty())
            throw std::invalid_argument("scenario: getback needs at least one object");
        std::vector<HfpObjPtr> restricted;
        for (std::size_t i : pool) restricted.push_back(restrict_module(ctx(), rt.modules[i]));
        const Field& kf = ctx().square.A()->field();
        SplitMix64 rng{seed};
        std::size_t equivalences = 0, disagreements = 0;
        for (std::size_t i = 0; i < count; ++i) {
            SplitMix64 sub = rng.split(i + 1);
            std::size_t a = sub.next() % restricted.size();
            std::size_t b = sub.next() % restricted.size();
            HfpHom h(restricted[a], restricted[b]);
            MatrixK ker = h.complex().differential(0).kernel_basis();
            MatrixK coords(kf, h.dim(0), 1);
            if (ker.cols() > 0) {
                MatrixK mix = random_column(kf, ker.cols(), sub);
                coords = ker * mix;
            }
            HfpMorphism f = h.element(0, coords);
            bool componentwise = hfp_is_homotopy_equivalence(f).equivalence;
            bool direct = find_hfp_h0_inverse(f).has_value();
            if (componentwise != direct) ++disagreements;
            if (componentwise) ++equivalences;
        }
        Json data;
        data["count"] = count;
        data["equivalences"] = equivalences;
        data["disagreements"] = disagreements;
        add("equivalence-criterion-agreement", "componentwise-equivalence-criterion",
            disagreements == 0, std::move(data), 0);
    }

    void run_p1(const Json& c) {
        int j1 = c.at("j1").get<int>(), j2 = c.at("j2").get<int>(), N = c.at("N").get<int>();
        const Field& f = rt.sc.field;
        TwistedCechComplex q = build_q_complex(j1, j2, N, f);
        QCohomology h = q_cohomology(q);
        Json gens0 = Json::array(), gens1 = Json::array();
        for (int e : h.h0_exponents) gens0.push_back(monomial_name(e));
        for (int e : h.h1_exponents) gens1.push_back(monomial_name(e));
        bool pass = true;
        if (c.contains("expect_h0")) pass = pass && h.h0 == c["expect_h0"].get<std::size_t>();
        if (c.contains("expect_h1")) pass = pass && h.h1 == c["expect_h1"].get<std::size_t>();
        Json data;
        data["H0"] = h.h0;
        data["H1"] = h.h1;
        data["H0-generators"] = std::move(gens0);
        data["H1-generators"] = std::move(gens1);
        std::string tag = "(" + std::to_string(j1) + "," + std::to_string(j2) + ")-N" +
                          std::to_string(N);
        add("p1-cohomology-" + tag, "projective-line-example", pass, std::move(data), 0);
        if (c.value("stabilize", false))
            add("p1-stabilization-" + tag, "truncation-stability",
                stabilization_check(j1, j2, N, f), Json::object(), 0);
        if (c.value("les", false)) {
            auto [lo, hi] = window_of(c);
            ValidationReport r = p1_les_check(j1, j2, N, f, lo, hi);
            add("p1-mayer-vietoris-" + tag, "hom-long-exact-sequence", r.ok(), summarize(r), 0);
        }
    }

    void run_perturbation_rejection(const Json& c) {
        std::size_t count = c.value("count", 20);
        std::string square = c.value("square", rt.sc.square_name);
        SplitMix64 rng{seed};
        std::size_t rejected = 0;
        Json survivors = Json::array();
        for (std::size_t i = 0; i < count; ++i) {
            SplitMix64 sub = rng.split(i + 1);
            SquareFixture fx = build_square(square, rt.sc.field);
            const AlgebraPtr& a = fx.A;
            int maxd = a->max_degree();
            int d1, d2;
            std::size_t bi, bj;
            do {
                d1 = static_cast<int>(sub.next() % (maxd + 1));
                d2 = static_cast<int>(sub.next() % (maxd + 1));
            } while (d1 + d2 > maxd || a->dim(d1) == 0 || a->dim(d2) == 0 ||
                     a->dim(d1 + d2) == 0);
            bi = sub.next() % a->dim(d1);
            bj = sub.next() % a->dim(d2);
            long long delta = 0;
            while (delta == 0) delta = sub.small();
            MatrixK coords = a->product_coords(d1, bi, d2, bj);
            std::size_t slot = sub.next() % coords.rows();
            coords.at(slot, 0) += Scalar(a->field(), delta);
            std::const_pointer_cast<GradedAlgebra>(a)->set_product(d1, bi, d2, bj,
                                                                   std::move(coords));
            if (!validate_curved_dga(a).ok())
                ++rejected;
            else
                survivors.push_back(Json::array({d1, bi, d2, bj, delta}));
        }
        Json data;
        data["count"] = count;
        data["rejected"] = rejected;
        data["accepted"] = std::move(survivors);
        add("perturbation-rejection", "curved-dga-definition", rejected == count,
            std::move(data), 0);
    }

    void dispatch(const Json& c) {
        std::string kind = c.at("check").get<std::string>();
        std::size_t first = rep.checks.size();
        auto start = std::chrono::steady_clock::now();
        if (kind == "validate")
            run_validate();
        else if (kind == "cohom")
            run_cohom(c);
        else if (kind == "restrict")
            run_restrict(c);
        else if (kind == "atilde")
            run_atilde(c);
        else if (kind == "unit")
            run_unit(c);
        else if (kind == "fully-faithful")
            run_fully_faithful(c);
        else if (kind == "adjunction")
            run_adjunction(c);
        else if (kind == "milnor")
            run_milnor(c);
        else if (kind == "mayer-vietoris")
            run_mayer_vietoris(c);
        else if (kind == "getback")
            run_getback(c);
        else if (kind == "p1")
            run_p1(c);
        else if (kind == "perturbation-rejection")
            run_perturbation_rejection(c);
        else
            throw std::invalid_argument("scenario: unknown check '" + kind + "'");
        auto stop = std::chrono::steady_clock::now();
        double ms = std::chrono::duration<double, std::milli>(stop - start).count() /
                    std::max<std::size_t>(1, rep.checks.size() - first);
        for (std::size_t i = first; i < rep.checks.size(); ++i) rep.checks[i].elapsed_ms = ms;
    }
};

}  // namespace detail_scn

/// Execute a plan (by default the scenario's own) in declaration order.
inline Report run_plan(const ScenarioRuntime& rt, const Json& plan, std::uint64_t seed) {
    Report rep;
    detail_scn::Runner runner{rt, seed, rep};
    for (const auto& c : plan) runner.dispatch(c);
    return rep;
}

inline Report run_scenario(const Scenario& sc, std::uint64_t seed) {
    ScenarioRuntime rt = instantiate_scenario(sc);
    return run_plan(rt, rt.sc.plan, seed);
}

inline Report run_scenario_file(const std::string& path, std::uint64_t seed) {
    return run_scenario(load_scenario(path), seed);
}

}  // namespace cohesive

#endif
