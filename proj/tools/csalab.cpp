#include <CLI11.hpp>

#include <csalab/cli.hpp>

#include <iostream>
#include <optional>
#include <string>

int main(int argc, char** argv) {
    CLI::App app{"exact index computations for central simple algebras"};
    std::string path;
    app.add_option("scenario", path, "JSON scenario file")->required();

    std::string mode;
    app.add_option("--mode", mode, "enumeration mode: automatic, exhaustive or sampled");
    std::string budget, seed, samples;
    app.add_option("--budget", budget, "maximum number of enumerated terms");
    app.add_option("--seed", seed, "sampling seed");
    app.add_option("--samples", samples, "number of sampled coefficient vectors");
    bool json_only = false;
    app.add_flag("--json", json_only, "emit only the JSON report");

    CLI11_PARSE(app, argc, argv);

    csalab::cli_overrides ov;
    ov.json_only = json_only;
    try {
        if (!mode.empty()) ov.mode = mode;
        if (!budget.empty()) ov.budget = csalab::bigint(budget);
        if (!seed.empty()) ov.seed = std::stoull(seed);
        if (!samples.empty()) ov.samples = std::stoull(samples);
    } catch (const std::exception&) {
        std::cerr << "error: precondition: malformed numeric flag value\n";
        return 2;
    }
    return csalab::run_scenario_file(path, ov, std::cout, std::cerr);
}
