#pragma once

#include <optional>
#include <string>

#include "bfp/config.hpp"
#include "bfp/witness.hpp"

namespace bfp {

enum class Verdict { pass, fail, inconclusive };

std::string to_string(Verdict v);

/// Aggregated result of one full run: hypothesis checks, the solve,
/// uniqueness, and the per-epsilon witness reports.  Stages after the
/// first hypothesis failure are skipped and left unset.
struct Report {
    RunConfig config;
    std::optional<AxiomReport> axioms;
    std::optional<PhiReport> phi;
    std::optional<ContractionReport> contraction;
    std::optional<FixedPointResult> fixed_point;
    std::optional<UniquenessReport> uniqueness;
    std::vector<WitnessReport> witnesses;
    std::shared_ptr<const Orbit> orbit;
    Verdict verdict = Verdict::fail;
    std::string failed_stage;  // empty when no stage failed or errored
    std::string error;         // component error message, if any
};

/// Which stages to run; `full` runs all of them.
enum class Stage { check_space, check_phi, check_map, solve, witness, full };

/// Runs the stage chain check_axioms -> check_phi_properties ->
/// check_contraction -> solve_fixed_point -> check_uniqueness ->
/// run_pipeline, short-circuiting on hypothesis failure.  Deterministic
/// given the config.
Report execute(const RunConfig& config, Stage stage = Stage::full);

/// JSON document with stable key order and a schema version.
std::string report_to_json(const Report& report);

/// Human-readable summary naming the first failing stage, if any.
std::string report_to_text(const Report& report);

/// CSV trace `k,succ_dist,dist_to_xstar`, one row per orbit step.
std::string trace_to_csv(const Report& report);

/// Process exit code for a report: 0 pass, 1 fail, 3 inconclusive.
int exit_code(const Report& report);

}  // namespace bfp
