#include "bfp/runner.hpp"

#include <cstdio>
#include <json.hpp>
#include <sstream>

namespace bfp {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "?";
}

Report execute(const RunConfig& config, Stage stage) {
    Report report;
    report.config = config;
    const MarginPolicy margin = config.margin();
    BMetricSpace space = config.build_space();
    SelfMap map = config.build_map();
    ComparisonFunction phi = config.build_phi();

    auto finish_fail = [&](const char* stage_name) -> Report& {
        report.verdict = Verdict::fail;
        report.failed_stage = stage_name;
        return report;
    };

    bool only = stage != Stage::full;
    try {
        if (stage == Stage::full || stage == Stage::check_space) {
            report.axioms = check_axioms(space, config.samples, config.seed,
                                         margin);
            if (!report.axioms->passed()) return finish_fail("check_space");
            if (only) { report.verdict = Verdict::pass; return report; }
        }
        if (stage == Stage::full || stage == Stage::check_phi) {
            report.phi = check_phi_properties(phi, default_phi_grid(), 1e-8,
                                              2000, margin);
            if (!report.phi->passed()) return finish_fail("check_phi");
            if (only) { report.verdict = Verdict::pass; return report; }
        }
        if (stage == Stage::full || stage == Stage::check_map) {
            report.contraction = check_contraction(map, phi, space,
                                                   config.samples, config.seed,
                                                   margin);
            if (!report.contraction->passed()) return finish_fail("check_map");
            if (only) { report.verdict = Verdict::pass; return report; }
        }
        if (stage == Stage::full || stage == Stage::solve ||
            stage == Stage::witness) {
            report.fixed_point = solve_fixed_point(map, space, Point{config.x0},
                                                   config.tol, config.max_iter);
            if (!report.fixed_point->converged) {
                report.verdict = Verdict::inconclusive;
                report.failed_stage = "solve";
                return report;
            }
            if (stage == Stage::solve) {
                report.verdict = Verdict::pass;
                return report;
            }
        }
        if (stage == Stage::full) {
            std::vector<Point> starts = {Point{config.x0}};
            Point shifted = Point{config.x0};
            for (double& c : shifted.coords) c += config.box;
            starts.push_back(shifted);
            for (double& c : shifted.coords) c -= 1.5 * config.box;
            starts.push_back(shifted);
            report.uniqueness = check_uniqueness(map, space, starts, config.tol,
                                                 config.max_iter);
            if (report.uniqueness->inconclusive) {
                report.verdict = Verdict::inconclusive;
                report.failed_stage = "uniqueness";
                return report;
            }
            if (!report.uniqueness->passed()) return finish_fail("uniqueness");
        }
        {
            PipelineBudgets budgets;
            budgets.horizon = config.horizon;
            budgets.tol = config.tol;
            budgets.max_iter = config.max_iter;
            budgets.seed = config.seed;
            PipelineResult pipeline = run_pipeline(
                map, space, phi, Point{config.x0}, config.epsilons, budgets,
                margin);
            report.orbit = pipeline.orbit;
            report.witnesses = pipeline.reports;
            if (!report.fixed_point) report.fixed_point = pipeline.fixed_point;
            for (const WitnessReport& w : report.witnesses)
                if (!w.passed(margin)) return finish_fail("witness");
        }
    } catch (const std::exception& e) {
        report.error = e.what();
        if (report.failed_stage.empty()) report.failed_stage = "error";
        report.verdict = Verdict::fail;
        return report;
    }
    report.verdict = Verdict::pass;
    return report;
}

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json config_json(const RunConfig& c) {
    ordered_json j;
    j["space"] = {{"kind", c.space_kind}, {"dim", c.dim}, {"box", c.box}};
    if (c.space_kind == "snowflake") j["space"]["q"] = c.q;
    if (c.space_kind == "lp_quasi") j["space"]["p"] = c.p;
    if (c.s_override) j["space"]["s_override"] = *c.s_override;
    j["map"] = {{"kind", c.map_kind}};
    if (c.map_kind == "constant") j["map"]["c"] = c.map_c;
    else {
        j["map"]["a"] = c.map_a;
        j["map"]["b"] = c.map_b;
    }
    j["phi"] = {{"kind", c.phi_kind}};
    if (c.phi_kind != "rational") {
        j["phi"]["c"] = c.phi_c;
        if (c.phi_kind == "power_linear") j["phi"]["q"] = c.phi_q;
        if (c.phi_unchecked) j["phi"]["unchecked"] = true;
    }
    j["run"] = {{"x0", c.x0},         {"epsilons", c.epsilons},
                {"tol", c.tol},       {"max_iter", c.max_iter},
                {"horizon", c.horizon}, {"seed", c.seed},
                {"samples", c.samples}, {"margin", c.margin_scale}};
    return j;
}

ordered_json witness_json(const WitnessReport& w) {
    ordered_json j;
    j["epsilon"] = w.witness.epsilon;
    j["n_tilde"] = w.witness.n_tilde;
    j["m_tilde"] = w.witness.m_tilde;
    j["k0"] = w.witness.k0;
    j["m0"] = w.witness.m0;
    j["m_bar"] = w.witness.m_bar;
    j["horizon"] = w.witness.horizon;
    j["s"] = w.witness.s;
    j["ball_samples_checked"] = w.ball_samples_checked;
    j["ball_violations"] = w.ball_violations;
    j["segment_checks"] = w.segment_checks;
    j["segment_violations"] = w.segment_violations;
    j["telescope_violations"] = w.telescope_violations;
    j["cauchy_pairs_checked"] = w.cauchy_pairs_checked;
    j["cauchy_violations"] = w.cauchy_violations;
    j["worst_cauchy_ratio"] = w.worst_cauchy_ratio;
    j["limit_check_passed"] = w.limit_check_passed;
    j["uniqueness_decay_passed"] = w.uniqueness_decay_passed;
    j["passed"] = w.passed();
    return j;
}

}  // namespace

std::string report_to_json(const Report& r) {
    ordered_json j;
    j["schema_version"] = 1;
    j["config"] = config_json(r.config);
    if (r.axioms) {
        const AxiomReport& a = *r.axioms;
        j["axioms"] = {{"samples_checked", a.samples_checked},
                       {"identity_violations", a.identity_violations},
                       {"symmetry_violations", a.symmetry_violations},
                       {"triangle_violations", a.triangle_violations},
                       {"near_boundary_events", a.near_boundary_events},
                       {"worst_triangle_ratio", a.worst_triangle_ratio},
                       {"margin_used", a.margin_used},
                       {"passed", a.passed()}};
    }
    if (r.phi) {
        const PhiReport& p = *r.phi;
        j["phi"] = {{"grid_size", p.grid_size},
                    {"monotone_violations", p.monotone_violations},
                    {"below_identity_violations", p.below_identity_violations},
                    {"decay_failures", p.decay_failures},
                    {"n_max", p.n_max},
                    {"tol", p.tol},
                    {"passed", p.passed()}};
    }
    if (r.contraction) {
        const ContractionReport& c = *r.contraction;
        j["contraction"] = {{"pairs_checked", c.pairs_checked},
                            {"violations", c.violations},
                            {"worst_slack", c.worst_slack},
                            {"witness_x", c.witness_x.coords},
                            {"witness_y", c.witness_y.coords},
                            {"passed", c.passed()}};
    }
    if (r.fixed_point) {
        const FixedPointResult& f = *r.fixed_point;
        j["fixed_point"] = {{"x_star", f.x_star.coords},
                            {"residual", f.residual},
                            {"iterations", f.iterations},
                            {"converged", f.converged}};
    }
    if (r.uniqueness) {
        const UniquenessReport& u = *r.uniqueness;
        j["uniqueness"] = {{"starts", u.results.size()},
                           {"max_pairwise_distance", u.max_pairwise_distance},
                           {"agreement_tol", u.agreement_tol},
                           {"inconclusive", u.inconclusive},
                           {"passed", u.passed()}};
    }
    ordered_json ws = ordered_json::array();
    for (const WitnessReport& w : r.witnesses) ws.push_back(witness_json(w));
    j["witnesses"] = ws;
    j["verdict"] = to_string(r.verdict);
    if (!r.failed_stage.empty()) j["failed_stage"] = r.failed_stage;
    if (!r.error.empty()) j["error"] = r.error;
    return j.dump(2) + "\n";
}

std::string report_to_text(const Report& r) {
    std::ostringstream out;
    out << "verdict: " << to_string(r.verdict) << "\n";
    if (!r.failed_stage.empty())
        out << "first failure at stage: " << r.failed_stage << "\n";
    if (!r.error.empty()) out << "error: " << r.error << "\n";
    if (r.axioms)
        out << "axioms: " << (r.axioms->passed() ? "pass" : "FAIL")
            << " (triangle violations " << r.axioms->triangle_violations
            << ", worst ratio " << r.axioms->worst_triangle_ratio << ")\n";
    if (r.phi)
        out << "phi: " << (r.phi->passed() ? "pass" : "FAIL")
            << " (below-identity " << r.phi->below_identity_violations
            << ", decay failures " << r.phi->decay_failures << ")\n";
    if (r.contraction)
        out << "contraction: " << (r.contraction->passed() ? "pass" : "FAIL")
            << " (violations " << r.contraction->violations << ", worst slack "
            << r.contraction->worst_slack << ")\n";
    if (r.fixed_point)
        out << "fixed point: "
            << (r.fixed_point->converged ? "converged" : "NOT converged")
            << " after " << r.fixed_point->iterations
            << " iterations, residual " << r.fixed_point->residual << "\n";
    if (r.uniqueness)
        out << "uniqueness: " << (r.uniqueness->passed() ? "pass" : "FAIL")
            << " (max pairwise " << r.uniqueness->max_pairwise_distance
            << " vs " << r.uniqueness->agreement_tol << ")\n";
    for (const WitnessReport& w : r.witnesses)
        out << "witness eps=" << w.witness.epsilon << ": "
            << (w.passed() ? "pass" : "FAIL") << " (n~=" << w.witness.n_tilde
            << " m~=" << w.witness.m_tilde << " k0=" << w.witness.k0
            << " m0=" << w.witness.m0 << " m-=" << w.witness.m_bar
            << ", worst cauchy ratio " << w.worst_cauchy_ratio << ")\n";
    return out.str();
}

std::string trace_to_csv(const Report& r) {
    std::string out = "k,succ_dist,dist_to_xstar\n";
    if (!r.orbit) return out;
    char buf[96];
    for (std::size_t k = 0; k < r.orbit->succ_dists.size(); ++k) {
        double to_star =
            r.fixed_point
                ? r.orbit->space.distance(r.orbit->points[k],
                                          r.fixed_point->x_star)
                : 0.0;
        std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g\n", k,
                      r.orbit->succ_dists[k], to_star);
        out += buf;
    }
    return out;
}

int exit_code(const Report& r) {
    switch (r.verdict) {
        case Verdict::pass: return 0;
        case Verdict::fail: return 1;
        case Verdict::inconclusive: return 3;
    }
    return 1;
}

}  // namespace bfp
