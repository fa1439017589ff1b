#ifndef GBQ_EXPERIMENTS_HPP
#define GBQ_EXPERIMENTS_HPP

#include <string>

#include "json.hpp"

#include "gbq/config.hpp"

namespace gbq::exp {

struct CommandResult {
    int exit_code = 1;           // 0 iff every recorded criterion passed
    std::string run_dir;
    nlohmann::json record;       // contents of run.json
};

// The named experiments behind `gbq <name> --config ... --out ...`.
// Each validates its config (throwing std::invalid_argument on bad input),
// runs, and writes run.json + config.echo + its CSV outputs into a fresh
// versioned subdirectory of out_root.
CommandResult cmd_simulate(cfg::Config config, const std::string& out_root);
CommandResult cmd_acl_check(cfg::Config config, const std::string& out_root);
CommandResult cmd_drift_scaling(cfg::Config config, const std::string& out_root);
CommandResult cmd_growth_study(cfg::Config config, const std::string& out_root);
CommandResult cmd_strichartz_check(cfg::Config config, const std::string& out_root);
CommandResult cmd_convergence(cfg::Config config, const std::string& out_root);

// Dispatch by experiment name; applies the GBQ_SEED override.
CommandResult run_command(const std::string& name, cfg::Config config,
                          const std::string& out_root);

} // namespace gbq::exp

#endif
