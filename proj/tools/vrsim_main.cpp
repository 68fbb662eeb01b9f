// vrsim: train agents, evaluate checkpoints, and run the built-in
// self-checks (oracle-check, gradcheck) from the command line.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vrsim/agents/agent_config.hpp"
#include "vrsim/env/environment.hpp"
#include "vrsim/harness/config_io.hpp"
#include "vrsim/harness/experiment.hpp"
#include "vrsim/net/checkpoint.hpp"
#include "vrsim/net/gradcheck.hpp"
#include "vrsim/oracle/oracle.hpp"
#include "vrsim/rng.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 1;
constexpr int kExitRuntimeFault = 2;

struct CommonOpts {
  std::string config_path;
  std::string agent = "hrppo";
  std::int64_t seed = 0;
  std::string seed_range;  // "A..B", inclusive
  std::int64_t steps = 30000;
  std::int64_t eval_interval = 1000;
  std::string out_dir = "out";
  bool paper_exact_clip = false;
  std::string preset;
};

std::vector<std::uint64_t> resolve_seeds(const CommonOpts& opts,
                                         bool seed_given, bool range_given) {
  if (seed_given && range_given)
    throw vrsim::ConfigError("--seed and --seeds are mutually exclusive");
  if (range_given) {
    const auto dots = opts.seed_range.find("..");
    long long a = 0, b = 0;
    char trail = 0;
    if (dots == std::string::npos ||
        std::sscanf(opts.seed_range.c_str(), "%lld..%lld%c", &a, &b, &trail) !=
            2 ||
        a > b)
      throw vrsim::ConfigError("--seeds expects A..B with A <= B, got '" +
                               opts.seed_range + "'");
    std::vector<std::uint64_t> seeds;
    for (long long s = a; s <= b; ++s) seeds.push_back(s);
    return seeds;
  }
  return {static_cast<std::uint64_t>(opts.seed)};
}

vrsim::RunConfig resolve_config(const CommonOpts& opts) {
  vrsim::RunConfig config;
  if (!opts.config_path.empty()) config = vrsim::load_config(opts.config_path);
  config.agent.paper_exact_clip = opts.paper_exact_clip;
  return config;
}

int cmd_train(const CommonOpts& opts, bool seed_given, bool range_given,
              bool steps_given, bool interval_given) {
  vrsim::ExperimentSpec spec;
  spec.config = resolve_config(opts);
  spec.agent_kind = opts.agent;
  spec.total_steps = opts.steps;
  spec.eval_interval = opts.eval_interval;
  spec.out_dir = opts.out_dir;
  spec.seeds = resolve_seeds(opts, seed_given, range_given);

  if (!opts.preset.empty()) {
    if (opts.preset != "paper")
      throw vrsim::ConfigError("unknown preset '" + opts.preset + "'");
    // Paper-scale protocol; explicit flags still win.
    if (!steps_given) spec.total_steps = 200000;
    if (!interval_given) spec.eval_interval = 50;
    if (!seed_given && !range_given) {
      spec.seeds.clear();
      for (std::uint64_t s = 0; s <= 10; ++s) spec.seeds.push_back(s);
    }
  }

  spec.validate();
  const vrsim::CampaignResult result = vrsim::run_campaign(spec);
  for (std::size_t i = 0; i < spec.seeds.size(); ++i) {
    const vrsim::MetricsRow& last = result.rows[i].back();
    std::printf("seed %llu: final reward %.6g, successful_frames %.6g, "
                "energy %.6g J\n",
                static_cast<unsigned long long>(spec.seeds[i]), last.reward,
                last.successful_frames, last.energy_j);
  }
  std::printf("wrote %s/summary.csv\n", spec.out_dir.c_str());
  return kExitOk;
}

int cmd_eval(const CommonOpts& opts, const std::string& checkpoint_path,
             int episodes) {
  const vrsim::RunConfig config = resolve_config(opts);
  vrsim::CheckpointAgent agent(vrsim::load_checkpoint(checkpoint_path),
                               opts.agent, config.env);
  const vrsim::MetricsRow row = vrsim::evaluate_policy(
      agent, config.env, episodes, static_cast<std::uint64_t>(opts.seed));
  std::printf("reward %.10g (std %.10g)\n", row.reward, row.reward_std);
  std::printf("successful_frames %.10g\n", row.successful_frames);
  std::printf("energy_j %.10g\n", row.energy_j);
  if (row.rate_defined)
    std::printf("avg_rate_mbps %.10g\n", row.avg_rate_mbps);
  else
    std::printf("avg_rate_mbps undefined (no offloaded frames)\n");
  return kExitOk;
}

int cmd_oracle_check(const CommonOpts& opts, int instances) {
  vrsim::EnvConfig config;
  if (!opts.config_path.empty())
    config = vrsim::load_config(opts.config_path).env;
  else {
    // Default tiny scenario: enumerable action-sequence space.
    config.n_users = 2;
    config.n_channels = 1;
    config.frames_per_second = 5;
    config.slot_duration = 1.0 / 5;
    config.target_fps_min = 2.0;
    config.target_fps_max = 4.0;
    config.validate();
  }

  bool all_ok = true;
  for (int k = 0; k < instances; ++k) {
    const vrsim::TinyInstance instance = vrsim::make_tiny_instance(
        config, static_cast<std::uint64_t>(opts.seed) + k);
    const vrsim::SearchResult best = vrsim::exhaustive_search(instance);

    // Replay the optimum through the environment and cross-check.
    vrsim::Environment env(instance.config);
    env.reset_with(instance.profiles, instance.tape);
    for (std::int64_t a : best.best_actions) {
      if (env.terminated()) break;
      env.step(a);
    }
    const double env_objective = env.objective();
    const double gap = std::abs(env_objective - best.best_objective);
    const bool ok = gap <= 1e-9 * std::max(1.0, std::abs(best.best_objective));
    all_ok = all_ok && ok;
    std::printf("instance %d: optimum %.10g (%s), env replay %.10g, %s\n", k,
                best.best_objective, best.feasible ? "feasible" : "infeasible",
                env_objective, ok ? "match" : "MISMATCH");
  }
  if (!all_ok) {
    std::fprintf(stderr, "oracle-check: objective mismatch detected\n");
    return kExitRuntimeFault;
  }
  std::printf("oracle-check: %d instance(s) verified\n", instances);
  return kExitOk;
}

int cmd_gradcheck(const CommonOpts& opts, int nets, double tolerance) {
  vrsim::Rng rng(static_cast<std::uint64_t>(opts.seed), 0x6AD);
  const std::vector<std::vector<int>> shapes = {
      {26, 128, 128, 1024}, {26, 128, 128, 5},  {10, 64, 1},
      {3, 8, 8, 4},         {26, 128, 128, 1},  {1, 16, 1},
      {40, 128, 128, 256},  {12, 32, 32, 32},   {26, 64, 1024},
      {5, 128, 7},
  };
  double worst = 0.0;
  for (int i = 0; i < nets; ++i) {
    vrsim::DenseNet net(shapes[i % shapes.size()]);
    net.init(rng);
    const double err = vrsim::gradcheck_max_rel_error(net, rng, 1500);
    worst = std::max(worst, err);
    std::printf("net %d (%zu params): max rel error %.3g\n", i,
                net.param_count(), err);
  }
  std::printf("gradcheck: worst %.3g, tolerance %.3g: %s\n", worst, tolerance,
              worst <= tolerance ? "pass" : "FAIL");
  return worst <= tolerance ? kExitOk : kExitRuntimeFault;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"VR computation-offloading simulator and RL trainer"};
  app.require_subcommand(1);

  CommonOpts opts;
  std::string checkpoint_path;
  int episodes = 10;
  int instances = 5;
  int nets = 10;
  double tolerance = 1e-6;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", opts.config_path, "Config file (key=value)");
    cmd->add_option("--seed", opts.seed, "Base seed");
    return cmd;
  };

  CLI::App* train = add_common(app.add_subcommand("train", "Train an agent"));
  train->add_option("--agent", opts.agent, "hrppo | ppo | hrdqn | random");
  CLI::Option* seeds_opt =
      train->add_option("--seeds", opts.seed_range, "Seed range A..B");
  CLI::Option* steps_opt =
      train->add_option("--steps", opts.steps, "Training steps");
  CLI::Option* interval_opt = train->add_option(
      "--eval-interval", opts.eval_interval, "Steps between eval points");
  train->add_option("--out", opts.out_dir, "Output directory");
  train->add_flag("--paper-exact-clip", opts.paper_exact_clip,
                  "Use the literal min{r, clip(r)} * A clipping form");
  train->add_option("--preset", opts.preset,
                    "'paper': 2e5 steps, seeds 0..10, eval every 50");

  CLI::App* eval =
      add_common(app.add_subcommand("eval", "Evaluate a checkpoint"));
  eval->add_option("--agent", opts.agent, "hrppo | ppo | hrdqn");
  eval->add_option("--checkpoint", checkpoint_path, "Checkpoint file")
      ->required();
  eval->add_option("--episodes", episodes, "Evaluation episodes");

  CLI::App* oracle = add_common(app.add_subcommand(
      "oracle-check", "Verify the exhaustive oracle against the simulator"));
  oracle->add_option("--instances", instances, "Number of tiny instances");

  CLI::App* grad = add_common(app.add_subcommand(
      "gradcheck", "Finite-difference check of the net gradients"));
  grad->add_option("--nets", nets, "Number of random nets");
  grad->add_option("--tolerance", tolerance, "Max relative error allowed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  try {
    if (train->parsed())
      return cmd_train(opts, train->count("--seed") > 0, seeds_opt->count() > 0,
                       steps_opt->count() > 0, interval_opt->count() > 0);
    if (eval->parsed()) return cmd_eval(opts, checkpoint_path, episodes);
    if (oracle->parsed()) return cmd_oracle_check(opts, instances);
    if (grad->parsed()) return cmd_gradcheck(opts, nets, tolerance);
  } catch (const vrsim::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfigError;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "runtime fault: %s\n", e.what());
    return kExitRuntimeFault;
  }
  return kExitConfigError;
}
