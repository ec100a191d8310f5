#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "bfp/runner.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw bfp::ConfigError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write to " + path);
    out << content;
}

struct Options {
    std::string config_path;
    std::string format = "text";
    std::string trace_path;
    std::string out_path;
    std::vector<double> epsilons;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> samples;
    std::optional<std::uint64_t> horizon;
};

void add_common_flags(CLI::App* cmd, Options& opt) {
    cmd->add_option("--config", opt.config_path, "run configuration file")
        ->required();
    cmd->add_option("--seed", opt.seed, "override run.seed");
    cmd->add_option("--samples", opt.samples, "override run.samples");
    cmd->add_option("--epsilon", opt.epsilons,
                    "override run.epsilons (repeatable)");
    cmd->add_option("--horizon", opt.horizon, "override run.horizon");
    cmd->add_option("--format", opt.format, "report format: json or text")
        ->check(CLI::IsMember({"json", "text"}));
    cmd->add_option("--trace", opt.trace_path, "write CSV convergence trace");
    cmd->add_option("--out", opt.out_path, "write report to file");
}

int run_stage(const Options& opt, bfp::Stage stage) {
    bfp::RunConfig cfg = bfp::parse_config(read_file(opt.config_path));
    if (opt.seed) cfg.seed = *opt.seed;
    if (opt.samples) cfg.samples = *opt.samples;
    if (opt.horizon) cfg.horizon = *opt.horizon;
    if (!opt.epsilons.empty()) cfg.epsilons = opt.epsilons;

    bfp::Report report = bfp::execute(cfg, stage);
    std::string rendered = opt.format == "json" ? bfp::report_to_json(report)
                                                : bfp::report_to_text(report);
    if (opt.out_path.empty())
        std::cout << rendered;
    else
        write_file(opt.out_path, rendered);
    if (!opt.trace_path.empty())
        write_file(opt.trace_path, bfp::trace_to_csv(report));
    return bfp::exit_code(report);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "b-metric fixed-point solver and proof-witness verifier"};
    app.require_subcommand(1);

    struct Sub {
        const char* name;
        const char* desc;
        bfp::Stage stage;
    };
    const Sub subs[] = {
        {"check-space", "verify the b-metric axioms by sampling",
         bfp::Stage::check_space},
        {"check-phi", "verify the comparison-function hypotheses",
         bfp::Stage::check_phi},
        {"check-map", "verify the contraction inequality by sampling",
         bfp::Stage::check_map},
        {"solve", "run the Picard iteration to a residual certificate",
         bfp::Stage::solve},
        {"witness", "construct and verify the proof witnesses per epsilon",
         bfp::Stage::witness},
        {"full", "run every stage and emit the combined report",
         bfp::Stage::full},
    };

    Options opt;
    bfp::Stage selected = bfp::Stage::full;
    for (const Sub& s : subs) {
        CLI::App* cmd = app.add_subcommand(s.name, s.desc);
        add_common_flags(cmd, opt);
        bfp::Stage stage = s.stage;
        cmd->callback([&selected, stage] { selected = stage; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        return run_stage(opt, selected);
    } catch (const bfp::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
