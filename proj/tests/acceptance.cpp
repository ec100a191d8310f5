// Acceptance suite: one test case per criterion, each printing a
// single PASS/FAIL line.  Expected values come from closed forms and
// grid oracles, never from the implementation under test.

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "bfp/runner.hpp"
#include "oracles.hpp"

using namespace bfp;
namespace fs = std::filesystem;

namespace {

struct Criterion {
    int number;
    const char* title;
    bool ok = true;

    Criterion(int n, const char* t) : number(n), title(t) {}
    ~Criterion() {
        std::printf("criterion %d (%s): %s\n", number, title,
                    ok ? "PASS" : "FAIL");
        std::fflush(stdout);
    }
    bool track(bool c) {
        ok = ok && c;
        return c;
    }
};

const char* kPinnedConfig = R"([space]
kind = euclidean
dim = 1

[map]
kind = scalar_affine
a = 0.5
b = 1.0

[phi]
kind = linear
c = 0.5

[run]
x0 = [0]
epsilons = [0.1]
)";

std::string snowflake_variant() {
    std::string text = kPinnedConfig;
    text.replace(text.find("kind = euclidean"), 16, "kind = snowflake\nq = 2");
    text.replace(text.find("c = 0.5"), 7, "c = 0.25");
    return text;
}

fs::path scratch_dir() {
    fs::path dir = fs::temp_directory_path() / "bfp_acceptance";
    fs::create_directories(dir);
    return dir;
}

fs::path write_scratch(const std::string& name, const std::string& content) {
    fs::path p = scratch_dir() / name;
    std::ofstream(p, std::ios::binary) << content;
    return p;
}

int run_cli(const std::string& args) {
    std::string cmd = std::string(BFP_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
    std::ostringstream ss;
    ss << std::ifstream(p, std::ios::binary).rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("criterion 1: axiom suite") {
    Criterion c(1, "axiom suite");
    struct Case { BMetricSpace space; double s; };
    std::vector<Case> cases;
    for (double q : {1.5, 2.0, 3.0}) {
        cases.push_back({BMetricSpace::snowflake(q, 1), std::exp2(q - 1)});
        cases.push_back({BMetricSpace::snowflake(q, 2), std::exp2(q - 1)});
    }
    for (double p : {0.5, 0.75})
        cases.push_back({BMetricSpace::lp_quasi(p, 2), std::exp2(1 / p - 1)});
    for (const Case& it : cases) {
        CHECK(it.space.s_declared() == doctest::Approx(it.s).epsilon(1e-14));
        AxiomReport rep = check_axioms(it.space, 100000, 42);
        c.track(rep.samples_checked == 100000);
        CHECK(c.track(rep.identity_violations == 0));
        CHECK(c.track(rep.symmetry_violations == 0));
        CHECK(c.track(rep.triangle_violations == 0));
        CHECK(c.track(rep.worst_triangle_ratio <= it.s + 1e-12));
    }
    for (double q : {1.5, 2.0, 3.0}) {
        double est = estimate_min_s_grid(BMetricSpace::snowflake(q, 1), 61);
        CHECK(c.track(est >= 0.95 * std::exp2(q - 1)));
        // independent grid oracle agrees
        CHECK(est == doctest::Approx(
                         oracles::snowflake_grid_sup_ratio(q, -10, 10, 61)));
    }
}

TEST_CASE("criterion 2: solver oracle") {
    Criterion c(2, "solver oracle");
    auto map = SelfMap::scalar_affine(0.5, 1.0, 1);
    double x_star = oracles::scalar_affine_fixed_point(0.5, 1.0);

    auto res = solve_fixed_point(map, BMetricSpace::euclidean(1), Point{0},
                                 1e-10, 10000);
    CHECK(c.track(res.converged));
    CHECK(c.track(res.iterations <= 40));
    CHECK(c.track(res.residual <= 1e-10));
    CHECK(c.track(std::abs(res.x_star.coords[0] - x_star) <= 1e-9));

    auto snow = solve_fixed_point(map, BMetricSpace::snowflake(2, 1), Point{0},
                                  1e-10, 10000);
    CHECK(c.track(snow.converged));
    CHECK(c.track(snow.iterations <= 25));
    CHECK(c.track(snow.residual <= 1e-10));
    // the snowflake residual is the square of the euclidean gap to Tx
    double gap = std::abs(snow.x_star.coords[0] - x_star);
    CHECK(c.track(snow.residual ==
                  doctest::Approx(0.25 * gap * gap).epsilon(1e-6)));
}

TEST_CASE("criterion 3: witness pinning") {
    Criterion c(3, "witness pinning");
    auto map = SelfMap::scalar_affine(0.5, 1.0, 1);
    auto space = BMetricSpace::euclidean(1);
    auto phi = ComparisonFunction::linear(0.5);
    PipelineBudgets budgets;
    auto out = run_pipeline(map, space, phi, Point{0}, {0.1}, budgets);
    REQUIRE(out.reports.size() == 1);
    const WitnessSet& w = out.reports[0].witness;
    CHECK(c.track(w.n_tilde == 2));
    CHECK(c.track(w.m_tilde == 3));
    CHECK(c.track(w.k0 == 5));
    CHECK(c.track(w.m0 == 3));

    // independent oracle: x_k = 2 - 2^{1-k}
    const Orbit& orbit = *out.orbit;
    for (std::uint64_t k = 0; k < 20; ++k)
        CHECK(c.track(orbit.points[k].coords[0] ==
                      doctest::Approx(2.0 - std::exp2(1.0 - double(k)))
                          .epsilon(1e-14)));

    // minimality: each witness index minus one fails its condition
    MarginPolicy margin;
    CHECK(c.track(!margin.lt_strict(phi.iterate(0.1, w.n_tilde - 1), 0.05)));
    double d_prev = space.distance(
        orbit.points[(w.m_tilde - 1) * w.n_tilde + w.n_tilde],
        orbit.points[(w.m_tilde - 1) * w.n_tilde]);
    CHECK(c.track(!margin.lt_strict(d_prev, 0.05)));
    CHECK(c.track(!margin.lt_strict(orbit.succ_dists[w.k0 - 1],
                                    0.1 / (2.0 * 1.0))));
    CHECK(c.track(w.m0 * w.n_tilde > w.k0));
    CHECK(c.track(!((w.m0 - 1) * w.n_tilde > w.k0)));
}

TEST_CASE("criterion 4: proof-inequality suite") {
    Criterion c(4, "proof-inequality suite");
    struct Setup {
        BMetricSpace space;
        ComparisonFunction phi;
    };
    Setup setups[] = {
        {BMetricSpace::euclidean(1), ComparisonFunction::linear(0.5)},
        {BMetricSpace::snowflake(2, 1), ComparisonFunction::linear(0.25)},
    };
    auto map = SelfMap::scalar_affine(0.5, 1.0, 1);
    for (const Setup& setup : setups) {
        PipelineBudgets budgets;
        auto out = run_pipeline(map, setup.space, setup.phi, Point{0},
                                {1.0, 0.1, 0.01}, budgets);
        REQUIRE(out.reports.size() == 3);
        for (const WitnessReport& rep : out.reports) {
            CHECK(c.track(rep.ball_samples_checked == 10000));
            CHECK(c.track(rep.ball_violations == 0));
            CHECK(c.track(rep.segment_violations == 0));
            CHECK(c.track(rep.telescope_violations == 0));
            CHECK(c.track(rep.cauchy_violations == 0));
            CHECK(c.track(rep.worst_cauchy_ratio <= 1.0));
        }
    }
}

TEST_CASE("criterion 5: epsilon-independence of the orbit") {
    Criterion c(5, "epsilon-independence of the orbit");
    auto map = SelfMap::scalar_affine(0.5, 1.0, 1);
    auto space = BMetricSpace::euclidean(1);
    auto phi = ComparisonFunction::linear(0.5);
    PipelineBudgets budgets;
    auto joint = run_pipeline(map, space, phi, Point{0}, {1.0, 0.1, 0.01},
                              budgets);
    REQUIRE(joint.reports.size() == 3);
    // one orbit object serves every epsilon
    CHECK(c.track(joint.orbit != nullptr));
    // and its points are bit-identical to each single-epsilon run
    for (double eps : {1.0, 0.1, 0.01}) {
        auto single = run_pipeline(map, space, phi, Point{0}, {eps}, budgets);
        REQUIRE(single.orbit != nullptr);
        for (std::size_t k = 0; k < single.orbit->length(); ++k)
            c.ok = c.ok && single.orbit->points[k] == joint.orbit->points[k];
    }
    CHECK(c.ok);
}

TEST_CASE("criterion 6: negative controls") {
    Criterion c(6, "negative controls");

    std::string expansion = kPinnedConfig;
    expansion.replace(expansion.find("a = 0.5"), 7, "a = 2");
    expansion.replace(expansion.find("b = 1.0"), 7, "b = 0");
    auto expansion_path = write_scratch("expansion.cfg", expansion);
    RunConfig cfg = parse_config(expansion);
    cfg.samples = 10000;
    Report rep = execute(cfg);
    CHECK(c.track(rep.contraction && rep.contraction->violations >= 1));
    CHECK(c.track(rep.contraction &&
                  rep.contraction->witness_x.dim() == 1));
    CHECK(c.track(run_cli("full --config " + expansion_path.string() +
                          " --samples 10000") == 1));

    std::string forced = snowflake_variant();
    forced.replace(forced.find("q = 2"), 5, "q = 2\ns_override = 1");
    auto forced_path = write_scratch("forced_s.cfg", forced);
    AxiomReport axioms =
        check_axioms(parse_config(forced).build_space(), 100000, 42);
    CHECK(c.track(axioms.triangle_violations > 0));
    CHECK(c.track(run_cli("check-space --config " + forced_path.string()) ==
                  1));

    std::string identity_phi = kPinnedConfig;
    identity_phi.replace(identity_phi.find("c = 0.5"), 7,
                         "c = 1.0\nunchecked = true");
    auto identity_path = write_scratch("identity_phi.cfg", identity_phi);
    PhiReport phi_rep = check_phi_properties(
        parse_config(identity_phi).build_phi(), default_phi_grid(), 1e-8, 500);
    CHECK(c.track(phi_rep.below_identity_violations > 0));
    CHECK(c.track(phi_rep.decay_failures > 0));
    CHECK(c.track(run_cli("check-phi --config " + identity_path.string()) ==
                  1));
}

TEST_CASE("criterion 7: uniqueness") {
    Criterion c(7, "uniqueness");
    auto map = SelfMap::scalar_affine(0.5, 1.0, 1);
    auto space = BMetricSpace::euclidean(1);
    auto rep = check_uniqueness(map, space, {Point{0}, Point{100}, Point{-50}},
                                1e-10, 10000);
    CHECK(c.track(!rep.inconclusive));
    CHECK(c.track(rep.agreement_tol == 2.0 * 1e-10));
    CHECK(c.track(rep.max_pairwise_distance <= rep.agreement_tol));

    auto orbit = compute_orbit(map, space, Point{0}, 140);
    auto fp = solve_fixed_point(map, space, Point{0}, 1e-10, 10000);
    auto lu = verify_limit_and_uniqueness(map, space,
                                          ComparisonFunction::linear(0.5), fp,
                                          orbit, 1e-10, 10000, 500);
    CHECK(c.track(lu.uniqueness_ok));
}

TEST_CASE("criterion 8: determinism") {
    Criterion c(8, "determinism");
    auto cfg_path = write_scratch("pinned.cfg", kPinnedConfig);
    fs::path dir = scratch_dir();
    auto j1 = dir / "r1.json", j2 = dir / "r2.json";
    auto t1 = dir / "t1.csv", t2 = dir / "t2.csv";
    std::string base = "full --config " + cfg_path.string() +
                       " --samples 20000 --format json";
    CHECK(c.track(run_cli(base + " --out " + j1.string() + " --trace " +
                          t1.string()) == 0));
    CHECK(c.track(run_cli(base + " --out " + j2.string() + " --trace " +
                          t2.string()) == 0));
    std::string a = slurp(j1), b = slurp(j2);
    CHECK(c.track(!a.empty()));
    CHECK(c.track(a == b));
    std::string ta = slurp(t1), tb = slurp(t2);
    CHECK(c.track(!ta.empty()));
    CHECK(c.track(ta == tb));
}
