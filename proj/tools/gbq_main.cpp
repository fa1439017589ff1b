// gbq: batch driver for the generalized Boussinesq spectral experiments.
//
//   gbq <simulate|acl-check|drift-scaling|growth-study|strichartz-check|convergence>
//       [--config <path>] [--key value ...] --out <dir>
//
// Any configuration key can be overridden with a flag of the same name;
// GBQ_WORKERS caps the worker pool and GBQ_SEED overrides the seed.

#include <omp.h>

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>

#include "gbq/config.hpp"
#include "gbq/experiments.hpp"
#include "gbq/kernels.hpp"
#include "gbq/version.hpp"

namespace {

void usage() {
    std::cout
        << "usage: gbq <experiment> [--config <path>] [--key value ...] --out <dir>\n"
           "experiments: simulate acl-check drift-scaling growth-study\n"
           "             strichartz-check convergence\n"
           "environment: GBQ_WORKERS (worker cap), GBQ_SEED (seed override)\n";
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        usage();
        return 2;
    }
    const std::string name = argv[1];
    if (name == "--help" || name == "-h" || name == "help") {
        usage();
        return 0;
    }
    if (name == "--version") {
        std::cout << "gbq " << gbq::kVersion << "\n";
        return 0;
    }

    std::string config_path, out_dir = "out";
    gbq::cfg::Config config;
    try {
        // first pass: --config so flag overrides win over the file
        for (int i = 2; i + 1 < argc; i += 2) {
            if (std::string(argv[i]) == "--config") config_path = argv[i + 1];
        }
        if (!config_path.empty())
            config = gbq::cfg::Config::parse_file(config_path);
        for (int i = 2; i < argc; i += 2) {
            std::string key = argv[i];
            if (key.rfind("--", 0) != 0 || i + 1 >= argc) {
                std::cerr << "{\"error\": \"expected --key value pairs, got '"
                          << key << "'\"}\n";
                return 2;
            }
            key = key.substr(2);
            if (key == "config") continue;
            if (key == "out") {
                out_dir = argv[i + 1];
                continue;
            }
            config.set(key, argv[i + 1]);
        }
        if (const char* w = std::getenv("GBQ_WORKERS")) {
            const int n = std::atoi(w);
            if (n > 0) {
                gbq::kern::set_workers(n);
                omp_set_num_threads(n);
            }
        }
        const auto result = gbq::exp::run_command(name, config, out_dir);
        std::cout << "run dir: " << result.run_dir << "\n";
        for (const auto& cr : result.record["criteria"]) {
            std::cout << (cr["pass"].get<bool>() ? "PASS " : "FAIL ")
                      << cr["name"].get<std::string>()
                      << "  value=" << cr["value"].get<double>()
                      << "  threshold=" << cr["threshold"].get<double>() << "\n";
        }
        return result.exit_code;
    } catch (const std::exception& e) {
        nlohmann::json err{{"error", e.what()}, {"experiment", name}};
        std::cerr << err.dump() << "\n";
        return 2;
    }
}
