#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "padic_periods/cli/commands.hpp"

using namespace padic_periods;
using namespace padic_periods::cli;

namespace {

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw precondition_error("cannot open generators file '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw precondition_error("generators file '" + path + "' is not valid JSON: " + e.what());
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact period computations for Mumford curves and supersingular reduction"};
    app.set_version_flag("--version", std::string(tool_version));
    app.require_subcommand(1);

    std::string format = "json";
    std::string cache_dir;
    bool timing = false;
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--cache-dir", cache_dir, "Supersingular cache directory (overrides PADIC_PERIODS_CACHE)");
    app.add_flag("--timing", timing, "Add wall-clock time to the report metadata");

    std::uint64_t prime = 0;
    auto* ss = app.add_subcommand("supersingular", "Supersingular lambda values over F_p^2");
    ss->add_option("--prime", prime, "Prime p >= 5")->required();

    bool powered = false;
    auto* pr = app.add_subcommand("pairing", "Residual pairing matrix and its invariants");
    pr->add_option("--prime", prime, "Prime p >= 5")->required();
    pr->add_flag("--powered", powered, "Also emit the (12/d)-th power table");

    std::string generators, alpha, beta;
    std::size_t max_length = 8;
    std::optional<std::uint64_t> theta_prime;
    auto* th = app.add_subcommand("theta", "Period pairing of a Schottky group via theta products");
    th->add_option("--prime", theta_prime, "Prime p (must match the generators file)");
    th->add_option("--generators", generators, "JSON file with generators and balls")->required();
    th->add_option("--alpha", alpha, "Word such as g1 or g1*g2^-1")->required();
    th->add_option("--beta", beta, "Word such as g1 or g1*g2^-1")->required();
    th->add_option("--max-length", max_length, "Largest reduced word length");

    std::string check = "all";
    long order = 20;
    std::uint64_t qprime = 5;
    auto* qs = app.add_subcommand("qseries", "Exact q-expansions, functional equations and cusp data");
    qs->add_option("--prime", qprime, "Prime p >= 5");
    qs->add_option("--check", check, "Which check to run")->check(CLI::IsMember(qseries_checks()));
    qs->add_option("--order", order, "Relative expansion order");

    for (auto* sub : {ss, pr, th, qs}) {
        sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--cache-dir", cache_dir, "Supersingular cache directory");
        sub->add_flag("--timing", timing, "Add wall-clock time to the report metadata");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_usage;
    }

    auto cache = [&]() -> std::optional<SupersingularCache> {
        return SupersingularCache::resolve(cache_dir);
    };

    std::function<Report()> command;
    if (ss->parsed()) {
        command = [&] { return cmd_supersingular(prime, cache()); };
    } else if (pr->parsed()) {
        command = [&] { return cmd_pairing(prime, powered, cache()); };
    } else if (th->parsed()) {
        command = [&] {
            SchottkyGroup g = group_from_json(read_json_file(generators));
            if (theta_prime && *theta_prime != g.p)
                throw precondition_error("--prime " + std::to_string(*theta_prime) + " differs from the file prime " +
                                         std::to_string(g.p));
            Report r = cmd_theta(g, alpha, beta, max_length);
            r.params["generators"] = generators;
            return r;
        };
    } else {
        command = [&] { return cmd_qseries(qprime, check, order); };
    }
    return run_reporting(command, format, timing, std::cout, std::cerr);
}
