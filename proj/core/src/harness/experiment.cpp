#include "vrsim/harness/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <thread>

#include "vrsim/agents/dqn.hpp"
#include "vrsim/agents/ppo.hpp"
#include "vrsim/agents/random_agent.hpp"
#include "vrsim/env/environment.hpp"
#include "vrsim/net/categorical.hpp"
#include "vrsim/net/checkpoint.hpp"

namespace vrsim {

void ExperimentSpec::validate() const {
  config.env.validate();
  config.agent.validate();
  if (seeds.empty())
    throw std::invalid_argument("ExperimentSpec: seed list must be non-empty");
  if (eval_interval < 1 || total_steps < eval_interval)
    throw std::invalid_argument(
        "ExperimentSpec: need total_steps >= eval_interval >= 1");
  if (agent_kind != "hrppo" && agent_kind != "ppo" && agent_kind != "hrdqn" &&
      agent_kind != "random")
    throw std::invalid_argument("ExperimentSpec: unknown agent '" + agent_kind +
                                "'");
}

std::unique_ptr<Trainer> make_trainer(const std::string& kind,
                                      const EnvConfig& env_config,
                                      const AgentConfig& agent_config,
                                      std::uint64_t seed) {
  if (kind == "hrppo")
    return std::make_unique<PpoTrainer>(env_config, agent_config, true, seed);
  if (kind == "ppo")
    return std::make_unique<PpoTrainer>(env_config, agent_config, false, seed);
  if (kind == "hrdqn")
    return std::make_unique<HrdqnTrainer>(env_config, agent_config, seed);
  if (kind == "random")
    return std::make_unique<RandomTrainer>(env_config.action_space_size(), seed);
  throw std::invalid_argument("make_trainer: unknown agent '" + kind + "'");
}

MetricsRow evaluate_policy(Agent& agent, const EnvConfig& env_config,
                           int n_episodes, std::uint64_t eval_seed) {
  Environment env(env_config);
  agent.begin_eval(eval_seed);

  std::vector<double> rewards, frames, energies;
  double rate_sum = 0.0;
  long long rate_count = 0;

  for (int e = 0; e < n_episodes; ++e) {
    std::vector<double> obs = env.reset(mix_seed(eval_seed, e));
    double episode_reward = 0.0, episode_frames = 0.0, episode_energy = 0.0;
    while (!env.terminated()) {
      const std::int64_t action = agent.act_greedy(obs);
      StepOutcome out = env.step(action);
      for (int n = 0; n < env_config.n_users; ++n) {
        episode_reward += out.rewards[n];
        episode_frames += 1 - out.info[n].failure;
        episode_energy += out.info[n].energy;
        if (out.info[n].channel >= 1) {
          rate_sum += out.info[n].rate;
          ++rate_count;
        }
      }
      obs = std::move(out.observation);
    }
    rewards.push_back(episode_reward);
    frames.push_back(episode_frames / env_config.n_users);
    energies.push_back(episode_energy);
  }

  auto mean = [](const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / v.size();
  };

  MetricsRow row;
  row.reward = mean(rewards);
  double var = 0.0;
  for (double r : rewards) var += (r - row.reward) * (r - row.reward);
  row.reward_std = std::sqrt(var / rewards.size());
  row.successful_frames = mean(frames);
  row.energy_j = mean(energies);
  row.rate_defined = rate_count > 0;
  row.avg_rate_mbps = rate_count > 0 ? rate_sum / rate_count / 1e6 : 0.0;
  return row;
}

CheckpointAgent::CheckpointAgent(std::vector<DenseNet> nets,
                                 const std::string& agent_kind,
                                 const EnvConfig& env_config)
    : nets_(std::move(nets)), kind_(agent_kind) {
  n_actions_ = env_config.action_space_size();
  if (nets_.empty())
    throw std::runtime_error("checkpoint holds no nets; cannot evaluate");
  const DenseNet& net = nets_[0];
  const int expected_in = env_config.observation_size();
  if (net.input_size() != expected_in)
    throw std::runtime_error(
        "checkpoint/config mismatch: observation size expected " +
        std::to_string(expected_in) + ", found " +
        std::to_string(net.input_size()));
  if (kind_ == "hrdqn") {
    heads_ = env_config.n_users;
    if (net.output_size() != n_actions_ * heads_)
      throw std::runtime_error(
          "checkpoint/config mismatch: q outputs expected " +
          std::to_string(n_actions_ * heads_) + ", found " +
          std::to_string(net.output_size()));
  } else {
    if (net.output_size() != n_actions_)
      throw std::runtime_error(
          "checkpoint/config mismatch: action outputs expected " +
          std::to_string(n_actions_) + ", found " +
          std::to_string(net.output_size()));
  }
}

std::int64_t CheckpointAgent::act_greedy(std::span<const double> obs) {
  const std::vector<double> out = forward(nets_[0], obs);
  if (kind_ == "hrdqn") {
    std::int64_t best = 0;
    double best_sum = -std::numeric_limits<double>::infinity();
    for (std::int64_t a = 0; a < n_actions_; ++a) {
      double sum = 0.0;
      for (int h = 0; h < heads_; ++h) sum += out[h * n_actions_ + a];
      if (sum > best_sum) {
        best_sum = sum;
        best = a;
      }
    }
    return best;
  }
  return CategoricalDist(out).greedy();
}

namespace {

std::string format_row(const MetricsRow& r) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%lld,%.10g,%.10g,%.10g,%.10g,%.10g,%d",
                static_cast<long long>(r.step), r.reward, r.reward_std,
                r.successful_frames, r.energy_j, r.avg_rate_mbps,
                r.rate_defined ? 1 : 0);
  return buf;
}

constexpr const char* kMetricsHeader =
    "step,reward,reward_std,successful_frames,energy_j,avg_rate_mbps,rate_defined";

}  // namespace

void write_metrics(const std::vector<MetricsRow>& rows,
                   const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("write_metrics: cannot open " + path);
  out << kMetricsHeader << '\n';
  for (const MetricsRow& r : rows) out << format_row(r) << '\n';
  if (!out) throw std::runtime_error("write_metrics: write failed for " + path);
}

std::vector<MetricsRow> read_metrics(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_metrics: cannot open " + path);
  std::string line;
  if (!std::getline(in, line) || line != kMetricsHeader)
    throw std::runtime_error("read_metrics: unexpected header in " + path);
  std::vector<MetricsRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    MetricsRow r;
    long long step = 0;
    int defined = 0;
    if (std::sscanf(line.c_str(), "%lld,%lf,%lf,%lf,%lf,%lf,%d", &step,
                    &r.reward, &r.reward_std, &r.successful_frames, &r.energy_j,
                    &r.avg_rate_mbps, &defined) != 7)
      throw std::runtime_error("read_metrics: malformed row in " + path);
    r.step = step;
    r.rate_defined = defined != 0;
    rows.push_back(r);
  }
  return rows;
}

void write_summary(const std::vector<std::vector<MetricsRow>>& per_seed,
                   const std::string& path) {
  if (per_seed.empty())
    throw std::invalid_argument("write_summary: no seed rows");
  const std::size_t points = per_seed[0].size();
  for (const auto& rows : per_seed)
    if (rows.size() != points)
      throw std::invalid_argument("write_summary: ragged per-seed rows");

  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("write_summary: cannot open " + path);
  out << "step,reward_mean,reward_std,successful_frames_mean,"
         "successful_frames_std,energy_j_mean,energy_j_std,"
         "avg_rate_mbps_mean,avg_rate_mbps_std\n";

  const double n = static_cast<double>(per_seed.size());
  for (std::size_t i = 0; i < points; ++i) {
    auto stat = [&](auto get) {
      double mean = 0.0;
      for (const auto& rows : per_seed) mean += get(rows[i]);
      mean /= n;
      double var = 0.0;
      for (const auto& rows : per_seed) {
        const double d = get(rows[i]) - mean;
        var += d * d;
      }
      return std::pair<double, double>(mean, std::sqrt(var / n));
    };
    const auto [rm, rs] = stat([](const MetricsRow& r) { return r.reward; });
    const auto [fm, fs] =
        stat([](const MetricsRow& r) { return r.successful_frames; });
    const auto [em, es] = stat([](const MetricsRow& r) { return r.energy_j; });
    const auto [am, as] =
        stat([](const MetricsRow& r) { return r.avg_rate_mbps; });
    char buf[512];
    std::snprintf(buf, sizeof(buf),
                  "%lld,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g",
                  static_cast<long long>(per_seed[0][i].step), rm, rs, fm, fs,
                  em, es, am, as);
    out << buf << '\n';
  }
  if (!out) throw std::runtime_error("write_summary: write failed for " + path);
}

CampaignResult run_campaign(const ExperimentSpec& spec) {
  spec.validate();
  std::error_code ec;
  std::filesystem::create_directories(spec.out_dir, ec);
  if (ec)
    throw std::runtime_error("run_campaign: cannot create output directory '" +
                             spec.out_dir + "': " + ec.message());

  CampaignResult result;
  result.rows.resize(spec.seeds.size());
  std::vector<std::exception_ptr> errors(spec.seeds.size());

  auto worker = [&](std::size_t idx) {
    try {
      const std::uint64_t seed = spec.seeds[idx];
      EnvConfig env_config = spec.config.env;
      env_config.rng_seed = mix_seed(spec.config.env.rng_seed, seed);
      std::unique_ptr<Trainer> trainer =
          make_trainer(spec.agent_kind, env_config, spec.config.agent, seed);

      std::vector<MetricsRow>& rows = result.rows[idx];
      const std::uint64_t eval_seed = mix_seed(env_config.rng_seed, 0xE7A1);
      trainer->run(spec.total_steps, spec.eval_interval, [&](std::int64_t step) {
        MetricsRow row = evaluate_policy(
            *trainer, env_config, spec.config.agent.eval_episodes, eval_seed);
        row.step = step;
        rows.push_back(row);
      });

      write_metrics(rows, spec.out_dir + "/metrics_seed" +
                              std::to_string(seed) + ".csv");
      save_checkpoint(spec.out_dir + "/checkpoint_seed" +
                          std::to_string(seed) + ".ckpt",
                      trainer->checkpoint_nets());
    } catch (...) {
      errors[idx] = std::current_exception();
    }
  };

  const unsigned max_workers =
      std::max(1u, std::thread::hardware_concurrency());
  for (std::size_t start = 0; start < spec.seeds.size(); start += max_workers) {
    std::vector<std::thread> pool;
    const std::size_t stop =
        std::min(spec.seeds.size(), start + static_cast<std::size_t>(max_workers));
    for (std::size_t i = start; i < stop; ++i) pool.emplace_back(worker, i);
    for (auto& t : pool) t.join();
  }
  for (const auto& err : errors)
    if (err) std::rethrow_exception(err);

  write_summary(result.rows, spec.out_dir + "/summary.csv");
  return result;
}

}  // namespace vrsim
