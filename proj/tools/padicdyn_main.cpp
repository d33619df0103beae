#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "padicdyn/cli.hpp"

namespace {

std::vector<padicdyn::bigint> parse_coeff_list(const std::string& csv) {
    std::vector<padicdyn::bigint> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) throw padicdyn::parse_error("empty coefficient in --coeffs");
        out.emplace_back(item);
    }
    if (out.empty()) throw padicdyn::parse_error("--coeffs must list at least the constant term");
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"criteria, brute-force dynamics and constructions for 1-Lipschitz maps on the p-adic integers"};
    app.require_subcommand(1);

    padicdyn::cli::CheckOptions check;
    uint32_t check_precision = 0, check_level = 0;
    auto* c = app.add_subcommand("check", "run all applicable criteria and the oracle ladder on a spec document");
    c->add_option("spec", check.path, "function-spec document (JSON)")->required();
    c->add_option("--precision", check_precision, "working precision override (digits)");
    c->add_option("--max-level", check_level, "cap for the oracle ladder");
    c->add_option("--budget", check.budget, "maximum table entries (default 2^24)");
    c->add_flag("--json", check.json_output, "machine-readable report on stdout");
    c->add_option("--out", check.out_path, "also write the JSON report to this path");

    padicdyn::cli::PolyOptions poly;
    std::string poly_coeffs;
    uint32_t poly_level = 0;
    auto* pl = app.add_subcommand("poly", "ergodicity of 1 + a_1 x + ... over the 2-adic integers");
    pl->add_option("--coeffs", poly_coeffs, "comma-separated coefficients, constant term first")->required();
    pl->add_option("--precision", poly.precision, "working precision (default 10)");
    pl->add_option("--max-level", poly_level, "cap for the oracle ladder");
    pl->add_option("--budget", poly.budget, "maximum table entries");
    pl->add_flag("--json", poly.json_output, "machine-readable report on stdout");

    padicdyn::cli::GenOptions gen;
    std::string gen_profile = "ergodic_core";
    uint32_t gen_precision = 0;
    auto* g = app.add_subcommand("gen", "generate a seeded random coefficient table as a spec document");
    g->add_option("--profile", gen_profile, "lipschitz | mp_sufficient | ergodic_core");
    g->add_option("--p", gen.p, "prime (default 2)");
    g->add_option("--precision", gen_precision, "digits (default 10 for p=2, 6 otherwise)");
    g->add_option("--seed", gen.seed, "generator seed");
    g->add_option("--out", gen.out_path, "output path (default stdout)");

    padicdyn::cli::StreamOptions stream;
    auto* s = app.add_subcommand("stream", "iterate x <- f(x) and emit one byte per step (p = 2)");
    s->add_option("spec", stream.path, "function-spec document (JSON)")->required();
    s->add_option("--count", stream.count, "bytes to emit")->required();
    s->add_option("--state", stream.state, "initial state (default 0)");
    s->add_flag("--force", stream.force, "stream even if the map is not a verified single cycle");
    s->add_option("--out", stream.out_path, "output path (default stdout)");

    padicdyn::cli::SweepOptions sweep;
    uint32_t sweep_level = 0;
    auto* w = app.add_subcommand("sweep", "run check over every .json document in a directory");
    w->add_option("dir", sweep.dir, "directory of spec documents")->required();
    w->add_option("--max-level", sweep_level, "cap for the oracle ladder");
    w->add_option("--budget", sweep.budget, "maximum table entries");
    w->add_flag("--json", sweep.json_output, "machine-readable summary on stdout");

    CLI11_PARSE(app, argc, argv);

    try {
        if (c->parsed()) {
            if (check_precision) check.precision = check_precision;
            if (check_level) check.max_level = check_level;
            return padicdyn::cli::cmd_check(check, std::cout, std::cerr);
        }
        if (pl->parsed()) {
            poly.coeffs = parse_coeff_list(poly_coeffs);
            if (poly_level) poly.max_level = poly_level;
            return padicdyn::cli::cmd_poly(poly, std::cout, std::cerr);
        }
        if (g->parsed()) {
            gen.profile = padicdyn::profile_from_string(gen_profile);
            if (gen_precision) gen.precision = gen_precision;
            return padicdyn::cli::cmd_gen(gen, std::cout, std::cerr);
        }
        if (s->parsed()) return padicdyn::cli::cmd_stream(stream, std::cout, std::cerr);
        if (w->parsed()) {
            if (sweep_level) sweep.max_level = sweep_level;
            return padicdyn::cli::cmd_sweep(sweep, std::cout, std::cerr);
        }
    } catch (const padicdyn::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
