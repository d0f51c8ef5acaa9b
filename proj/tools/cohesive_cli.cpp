/**
 * Command-line surface: load a scenario file, dispatch one verification
 * family (or the scenario's own plan), and print a deterministic report.
 * Exit status is nonzero iff any check fails.
 */

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cohesive/scenario.hpp"

namespace {

using cohesive::Json;

struct CommonOpts {
    std::string scenario_path;
    std::uint64_t seed = 1;
    std::string format = "text";
    std::string window;
    bool timings = false;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool scenario_required) {
    auto* s = cmd->add_option("--scenario", o.scenario_path, "Scenario file (JSON)");
    if (scenario_required) s->required();
    cmd->add_option("--seed", o.seed, "Seed for all sampled checks");
    cmd->add_option("--format", o.format, "Report format: text or json")
        ->check(CLI::IsMember({"text", "json"}));
    cmd->add_option("--window", o.window, "Degree window, e.g. -3..3");
    cmd->add_flag("--timings", o.timings, "Include per-check wall-clock timings");
}

/// Parse "lo..hi" into a JSON [lo, hi] pair.
Json parse_window(const std::string& w) {
    auto sep = w.find("..", 1);
    if (sep == std::string::npos)
        throw CLI::ValidationError("--window", "expected lo..hi, got '" + w + "'");
    return Json::array({std::stoi(w.substr(0, sep)), std::stoi(w.substr(sep + 2))});
}

int run(const CommonOpts& o, const Json& plan_override) {
    cohesive::Scenario sc;
    if (!o.scenario_path.empty()) sc = cohesive::load_scenario(o.scenario_path);
    cohesive::ScenarioRuntime rt = cohesive::instantiate_scenario(std::move(sc));
    const Json& plan = plan_override.is_null() ? rt.sc.plan : plan_override;
    cohesive::Report rep = cohesive::run_plan(rt, plan, o.seed);
    cohesive::ReportFormat fmt =
        o.format == "json" ? cohesive::ReportFormat::json : cohesive::ReportFormat::text;
    std::cout << cohesive::report_emit(rep, fmt, o.timings);
    return rep.ok() ? 0 : 1;
}

Json one_check(Json c, const CommonOpts& o) {
    if (!o.window.empty()) c["window"] = parse_window(o.window);
    return Json::array({std::move(c)});
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact verification of descent for cohesive modules on algebraic models"};
    app.require_subcommand(1);

    CommonOpts o;
    Json plan;  // null → use the scenario's own plan

    auto* validate = app.add_subcommand("validate", "Check the curved-dga and square axioms");
    add_common(validate, o, true);
    validate->callback([&] { plan = one_check({{"check", "validate"}}, o); });

    auto* cohom = app.add_subcommand("cohom", "Cohomology of each object's flat complex");
    add_common(cohom, o, true);
    cohom->callback([&] { plan = one_check({{"check", "cohom"}}, o); });

    auto* restr = app.add_subcommand("restrict", "Restrict objects to the fiber product");
    add_common(restr, o, true);
    restr->callback([&] { plan = one_check({{"check", "restrict"}}, o); });

    auto* patch = app.add_subcommand("patch", "Seeded strict-data patching round trips");
    add_common(patch, o, true);
    std::size_t patch_count = 5;
    patch->add_option("--count", patch_count, "Number of seeded strict data");
    patch->callback(
        [&] { plan = one_check({{"check", "milnor"}, {"count", patch_count}}, o); });

    auto* atilde = app.add_subcommand("atilde", "Right adjoint values of restricted objects");
    add_common(atilde, o, true);
    atilde->callback([&] { plan = one_check({{"check", "atilde"}}, o); });

    auto* verify = app.add_subcommand("verify-descent", "Run the scenario's verification plan");
    add_common(verify, o, true);
    verify->callback([&] { plan = Json(); });

    auto* mv = app.add_subcommand("mayer-vietoris", "Long exact sequence on seeded pairs");
    add_common(mv, o, true);
    std::size_t mv_pairs = 5;
    mv->add_option("--pairs", mv_pairs, "Number of seeded object pairs");
    mv->callback(
        [&] { plan = one_check({{"check", "mayer-vietoris"}, {"pairs", mv_pairs}}, o); });

    auto* p1 = app.add_subcommand("p1", "Twisted-pair cohomology on the glued line");
    add_common(p1, o, false);
    int j1 = 0, j2 = 0, N = 4;
    bool les = false, stabilize = false;
    p1->add_option("--j1", j1, "First twist")->required();
    p1->add_option("--j2", j2, "Second twist")->required();
    p1->add_option("--N", N, "Truncation order")->required();
    p1->add_flag("--les", les, "Also check the long exact sequence");
    p1->add_flag("--stabilize", stabilize, "Also compare truncations N and N+1");
    p1->callback([&] {
        plan = one_check({{"check", "p1"},
                          {"j1", j1},
                          {"j2", j2},
                          {"N", N},
                          {"les", les},
                          {"stabilize", stabilize}},
                         o);
    });

    CLI11_PARSE(app, argc, argv);

    try {
        return run(o, plan);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
