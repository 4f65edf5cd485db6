#include <iostream>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "splitaffine/workbench.hpp"

namespace wb = splitaffine::workbench;

int main(int argc, char** argv) {
    CLI::App app{"Indefinite improper affine spheres from Bjorling and Cauchy data"};
    app.require_subcommand(1);

    std::string config, out = ".", format, grid;
    double tol = 0.0;
    std::uint64_t seed = 0;
    int threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

    for (const auto& task : wb::task_names()) {
        CLI::App* sub = app.add_subcommand(task, "run the " + task + " task");
        sub->add_option("--config", config, "JSON run config");
        sub->add_option("--out", out, "output directory");
        sub->add_option("--format", format, "mesh format")->check(CLI::IsMember({"obj", "csv"}));
        sub->add_option("--grid", grid, "sample grid NSxNT");
        sub->add_option("--tol", tol, "quadrature tolerance")->check(CLI::PositiveNumber);
        sub->add_option("--seed", seed, "sweep seed");
        sub->add_option("--threads", threads, "worker threads for grid sampling")->check(CLI::PositiveNumber);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return wb::kConfigError;
    }

    CLI::App* sub = app.get_subcommands().front();
    wb::RunOptions opts;
    opts.out_dir = out;
    opts.threads = threads;
    if (!format.empty()) opts.format = format;
    if (sub->count("--tol")) opts.tol = tol;
    if (sub->count("--seed")) opts.seed = seed;
    if (!grid.empty()) {
        try {
            opts.grid = wb::parse_grid(grid);
        } catch (const wb::ConfigError& e) {
            std::cerr << "config error: " << e.what() << '\n';
            return wb::kConfigError;
        }
    }
    return wb::run_main(sub->get_name(), config, opts, std::cout, std::cerr);
}
