#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "vrsim/agents/trainer.hpp"
#include "vrsim/harness/config_io.hpp"

namespace vrsim {

struct ExperimentSpec {
  RunConfig config;
  std::string agent_kind = "hrppo";  // hrppo | ppo | hrdqn | random
  std::int64_t total_steps = 30000;
  std::int64_t eval_interval = 1000;
  std::vector<std::uint64_t> seeds = {0, 1, 2};
  std::string out_dir = "out";

  void validate() const;
};

struct MetricsRow {
  std::int64_t step = 0;
  double reward = 0.0;       // eval-episode mean of the user-summed return
  double reward_std = 0.0;   // population std over eval episodes
  double successful_frames = 0.0;  // per-user mean of non-failed frames
  double energy_j = 0.0;           // mean total device energy per episode
  double avg_rate_mbps = 0.0;      // mean rate over offloaded (user, slot)
  bool rate_defined = true;        // false when no frame was offloaded
};

std::unique_ptr<Trainer> make_trainer(const std::string& kind,
                                      const EnvConfig& env_config,
                                      const AgentConfig& agent_config,
                                      std::uint64_t seed);

/// Greedy evaluation protocol: n_episodes fresh-seeded episodes, metrics
/// averaged over episodes. The step field of the returned row is left at 0.
MetricsRow evaluate_policy(Agent& agent, const EnvConfig& env_config,
                           int n_episodes, std::uint64_t eval_seed);

/// Evaluation front-end for persisted checkpoints; validates that the nets
/// match the config dimensions (reporting expected vs found on mismatch).
class CheckpointAgent final : public Agent {
 public:
  CheckpointAgent(std::vector<DenseNet> nets, const std::string& agent_kind,
                  const EnvConfig& env_config);
  std::int64_t act_greedy(std::span<const double> obs) override;

 private:
  std::vector<DenseNet> nets_;
  std::string kind_;
  int heads_ = 1;
  std::int64_t n_actions_ = 0;
};

/// Comma-separated metrics with the fixed header
/// step,reward,reward_std,successful_frames,energy_j,avg_rate_mbps,rate_defined.
void write_metrics(const std::vector<MetricsRow>& rows,
                   const std::string& path);
std::vector<MetricsRow> read_metrics(const std::string& path);

/// Per-eval-step across-seed mean and population std of each metric.
void write_summary(const std::vector<std::vector<MetricsRow>>& per_seed_rows,
                   const std::string& path);

struct CampaignResult {
  // [seed][eval point]
  std::vector<std::vector<MetricsRow>> rows;
};

/// Trains every seed (independent parallel workers), writing per seed
/// metrics_seed<k>.csv and checkpoint_seed<k>.ckpt plus one summary.csv.
CampaignResult run_campaign(const ExperimentSpec& spec);

}  // namespace vrsim
