#include <CLI11.hpp>
#include <iostream>

#include "commands.hpp"
#include "ctw/error.hpp"

#ifndef CTW_DATA_DIR
#define CTW_DATA_DIR "data"
#endif

using namespace ctw;

namespace {

int exit_code(ErrorKind k) {
    switch (k) {
        case ErrorKind::Validation: return 2;
        case ErrorKind::Infeasible: return 3;
        default: return 4;
    }
}

const char* kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::Validation: return "validation";
        case ErrorKind::Infeasible: return "infeasible";
        default: return "internal-consistency";
    }
}

void report_error(const std::string& kind, const std::string& msg) {
    io::Json e;
    e["error"] = {{"kind", kind}, {"message", msg}};
    std::cerr << e.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cluster-twist: exact mutations, variation maps and twist automorphisms"};
    app.require_subcommand(1);
    app.fallthrough();
    cli::JobConfig cfg;
    cfg.data_dir = CTW_DATA_DIR;
    std::string format = "json";
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "pretty"}));
    app.add_option("--data-dir", cfg.data_dir, "Directory holding gallery/");

    auto add_seed = [&](CLI::App* sc) { sc->add_option("--seed", cfg.seed_path, "Seed JSON file")->required(); };
    auto add_seq = [&](CLI::App* sc) { sc->add_option("--seq", cfg.seq, "Mutation sequence, 1-based, application order"); };
    auto add_side = [&](CLI::App* sc) { sc->add_option("--side", cfg.side, "A or X")->check(CLI::IsMember({"A", "X"})); };

    auto* seed_check = app.add_subcommand("seed-check", "Validate a seed");
    add_seed(seed_check);
    auto* mutate = app.add_subcommand("mutate", "Mutate B along a sequence");
    add_seed(mutate);
    add_seq(mutate);
    auto* expand = app.add_subcommand("expand", "Expand a cluster variable in initial coordinates");
    add_seed(expand);
    add_seq(expand);
    add_side(expand);
    expand->add_option("--index", cfg.index, "Cluster variable, 1-based");
    auto* cgmat = app.add_subcommand("cgmat", "C, G, E, F matrices along a sequence");
    add_seed(cgmat);
    add_seq(cgmat);
    auto* var_solve = app.add_subcommand("var-solve", "Variation family between similar seeds");
    add_seed(var_solve);
    add_seq(var_solve);
    add_side(var_solve);
    var_solve->add_option("--target", cfg.target_path, "Target seed JSON (instead of --seq)");
    var_solve->add_option("--sigma", cfg.sigma, "Similarity, 1-based images");
    var_solve->add_option("--params", cfg.params, "Family member, e.g. λ=1,μ=1");
    var_solve->add_option("--alpha", cfg.alpha, "Scale of the compatible Λ");
    var_solve->add_flag("--poisson", cfg.poisson, "Apply the Poisson filter");
    var_solve->add_flag("--integral", cfg.integral, "Search an integral member");
    auto* twist = app.add_subcommand("twist", "Build and verify a twist");
    twist->add_option("kind", cfg.kind, "dt | principal | custom")->required()->check(CLI::IsMember({"dt", "principal", "custom"}));
    add_seed(twist);
    add_seq(twist);
    add_side(twist);
    twist->add_option("--depth", cfg.depth, "Search depth for t[1]");
    twist->add_option("--alpha", cfg.alpha, "Scale of the compatible Λ");
    twist->add_option("--params", cfg.params, "Family member for custom twists");
    twist->add_option("--sigma", cfg.sigma, "Similarity, 1-based images");
    auto* examples = app.add_subcommand("examples", "Run a gallery example");
    examples->add_option("name", cfg.kind, "a1 | sl3 | digon")->required()->check(CLI::IsMember({"a1", "sl3", "digon"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        report_error("validation", e.what());
        return 2;
    }

    try {
        io::Json out;
        int code = 0;
        if (*seed_check) out = cli::cmd_seed_check(cfg);
        else if (*mutate) out = cli::cmd_mutate(cfg);
        else if (*expand) out = cli::cmd_expand(cfg);
        else if (*cgmat) out = cli::cmd_cgmat(cfg);
        else if (*var_solve) out = cli::cmd_var_solve(cfg);
        else if (*twist) out = cli::cmd_twist(cfg);
        else if (*examples) {
            out = cli::cmd_examples(cfg);
            if (!out.at("ok").get<bool>()) code = 4;
        }
        std::cout << (format == "pretty" ? cli::pretty(out) : io::render(out));
        return code;
    } catch (const Error& e) {
        report_error(kind_name(e.kind()), e.what());
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        report_error("internal-consistency", e.what());
        return 4;
    }
}
