#include <CLI11.hpp>
#include <iostream>
#include <string>

#include "subflow/app.hpp"

int main(int argc, char** argv) {
  CLI::App app{"subflow: regularized p-sublaplacian map flow on the Heisenberg nilmanifold"};
  app.require_subcommand(1);

  std::string config_path, out_dir, study_arg;
  std::uint64_t seed = 0;
  bool quiet = false;
  int verify_size = 16;

  CLI::App* run_cmd = app.add_subcommand("run", "run a flow from a config file");
  run_cmd->add_option("config", config_path, "config file")->required();
  run_cmd->add_option("--out", out_dir, "output directory (overrides out_dir)");
  run_cmd->add_option("--seed", seed, "seed override");
  run_cmd->add_flag("--quiet", quiet, "suppress progress output");

  CLI::App* verify_cmd = app.add_subcommand("verify", "run the identity and property suites");
  verify_cmd->add_option("--size", verify_size, "base grid size (8 = quick subset, default 16 = full)");
  verify_cmd->add_option("--out", out_dir, "directory for verdicts.csv");
  verify_cmd->add_flag("--quiet", quiet, "suppress per-check output");

  CLI::App* study_cmd = app.add_subcommand("study", "run a canned experiment preset or a config");
  study_cmd->add_option("preset", study_arg,
                        "acceptance | sphere-small-energy | hyperbolic | <config file>")
      ->required();
  study_cmd->add_option("--out", out_dir, "output directory");
  study_cmd->add_flag("--quiet", quiet, "suppress output");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) {
      subflow::RunConfig cfg = subflow::load_config(config_path);
      if (!out_dir.empty()) cfg.out_dir = out_dir;
      if (run_cmd->count("--seed")) cfg.seed = seed;
      return subflow::cmd_run(cfg, quiet);
    }
    if (verify_cmd->parsed()) {
      return subflow::cmd_verify(verify_size, quiet, out_dir);
    }
    if (study_cmd->parsed()) {
      return subflow::cmd_study(study_arg, quiet, out_dir);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
