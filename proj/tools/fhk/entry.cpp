#include <cstdio>

#include "CLI11.hpp"
#include "cli.hpp"

namespace fhk::cli {

int main(int argc, char** argv) {
    CLI::App app{"fractional heat kernel toolkit"};
    Options opts;
    std::string config_path;
    double tol = 0.0;
    app.add_option("command", opts.command, "kernel | gevrey | backward | bounds | evolve | mc")
        ->required()
        ->check(CLI::IsMember({"kernel", "gevrey", "backward", "bounds", "evolve", "mc"}));
    app.add_option("--config", config_path, "INI file with [kernel], [grid], [run] sections");
    app.add_option("--out", opts.out, "output directory")->capture_default_str();
    app.add_option("--seed", opts.seed, "master seed")->capture_default_str();
    app.add_option("--workers", opts.workers, "parallelism cap")->check(CLI::PositiveNumber)->capture_default_str();
    auto* tol_opt = app.add_option("--tolerance", tol, "override the command's pass tolerance");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? Success : ConfigFailure;
    }
    if (*tol_opt) opts.tolerance = tol;

    Config config;
    try {
        if (!config_path.empty()) config = Config::load(config_path);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return ConfigFailure;
    }
    return run(config, opts);
}

}  // namespace fhk::cli
