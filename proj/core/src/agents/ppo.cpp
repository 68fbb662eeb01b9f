#include "vrsim/agents/ppo.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "vrsim/agents/gae.hpp"
#include "vrsim/net/categorical.hpp"

namespace vrsim {

double clipped_surrogate(double ratio, double advantage, double clip_epsilon,
                         bool paper_exact) {
  const double clipped =
      std::clamp(ratio, 1.0 - clip_epsilon, 1.0 + clip_epsilon);
  if (paper_exact) return std::min(ratio, clipped) * advantage;
  return std::min(ratio * advantage, clipped * advantage);
}

std::vector<double> ppo_policy_gradient(const DenseNet& policy,
                                        std::span<const PpoSample> batch,
                                        const PolicyGradOptions& options,
                                        PolicyGradStats* stats) {
  if (batch.empty())
    throw std::invalid_argument("ppo_policy_gradient: empty batch");

  std::vector<double> advantages(batch.size());
  for (std::size_t i = 0; i < batch.size(); ++i)
    advantages[i] = batch[i].advantage;
  if (options.normalize_advantages && batch.size() > 1) {
    double mean = 0.0;
    for (double a : advantages) mean += a;
    mean /= advantages.size();
    double var = 0.0;
    for (double a : advantages) var += (a - mean) * (a - mean);
    const double std_dev = std::sqrt(var / advantages.size());
    for (double& a : advantages) a = (a - mean) / (std_dev + 1e-8);
  }

  std::vector<double> grad(policy.param_count(), 0.0);
  std::vector<double> out_grad(policy.output_size());
  ForwardCache cache;
  int used = 0;
  double surrogate_sum = 0.0;
  const double eps = options.clip_epsilon;

  for (std::size_t i = 0; i < batch.size(); ++i) {
    const PpoSample& s = batch[i];
    const std::vector<double> logits = forward(policy, *s.obs, &cache);
    CategoricalDist dist(logits);
    const double log_prob = dist.log_prob(s.action);
    const double ratio = std::exp(log_prob - s.behavior_log_prob);
    if (!std::isfinite(ratio)) {
      if (stats) ++stats->fault_count;
      continue;
    }
    const double adv = advantages[i];
    surrogate_sum += clipped_surrogate(ratio, adv, eps, options.paper_exact_clip);

    // d(surrogate)/d(log_prob): zero when the clipped branch is active.
    double coeff;
    if (options.paper_exact_clip) {
      coeff = (ratio <= 1.0 + eps) ? ratio * adv : 0.0;
    } else {
      const double unclipped = ratio * adv;
      const double clipped = std::clamp(ratio, 1.0 - eps, 1.0 + eps) * adv;
      coeff = (unclipped <= clipped) ? ratio * adv : 0.0;
    }

    const double entropy = dist.entropy();
    for (int k = 0; k < dist.size(); ++k) {
      const double p = std::exp(dist.log_probs()[k]);
      // surrogate term: coeff * (1[k==a] - p);
      // entropy term: dH/dz_k = -p * (log p + H)
      out_grad[k] = coeff * ((k == s.action ? 1.0 : 0.0) - p) -
                    options.entropy_coef * p * (dist.log_probs()[k] + entropy);
    }
    backward_accumulate(policy, cache, out_grad, grad);
    ++used;
  }

  if (used > 0)
    for (double& g : grad) g /= used;
  if (stats && used > 0) stats->mean_surrogate = surrogate_sum / used;
  return grad;
}

double hybrid_critic_loss(const DenseNet& critic,
                          std::span<const CriticSample> batch,
                          std::vector<double>& grad_out) {
  if (batch.empty())
    throw std::invalid_argument("hybrid_critic_loss: empty batch");
  const int heads = critic.output_size();
  for (const CriticSample& s : batch)
    if (static_cast<int>(s.targets.size()) != heads)
      throw std::invalid_argument("hybrid_critic_loss: head count mismatch");

  grad_out.assign(critic.param_count(), 0.0);
  std::vector<double> out_grad(heads);
  ForwardCache cache;
  double loss = 0.0;
  for (const CriticSample& s : batch) {
    const std::vector<double> values = forward(critic, *s.obs, &cache);
    for (int h = 0; h < heads; ++h) {
      const double err = values[h] - s.targets[h];
      loss += err * err;
      out_grad[h] = 2.0 * err / static_cast<double>(batch.size());
    }
    backward_accumulate(critic, cache, out_grad, grad_out);
  }
  return loss / static_cast<double>(batch.size());
}

PpoTrainer::PpoTrainer(EnvConfig env_config, AgentConfig agent_config,
                       bool hybrid, std::uint64_t seed)
    : env_config_(std::move(env_config)),
      config_(agent_config),
      hybrid_(hybrid),
      heads_(hybrid ? env_config_.n_users : 1),
      env_(env_config_),
      rng_(seed, 0x9907),
      seed_(seed) {
  config_.validate();
  const std::int64_t n_actions = env_config_.action_space_size();
  if (n_actions > kMaxActionOutputs)
    throw std::invalid_argument(
        "joint action space exceeds the supported output width (" +
        std::to_string(n_actions) + " > " + std::to_string(kMaxActionOutputs) +
        ")");
  const int obs = env_config_.observation_size();
  const int hidden = config_.hidden_units;
  policy_ = DenseNet({obs, hidden, hidden, static_cast<int>(n_actions)});
  policy_.init(rng_, 0.01);
  critic_ = DenseNet({obs, hidden, hidden, heads_});
  critic_.init(rng_);
  critic_target_ = critic_;
  policy_opt_ = AdamState(policy_.param_count(), config_.actor_lr);
  critic_opt_ = AdamState(critic_.param_count(), config_.critic_lr);
}

std::int64_t PpoTrainer::act_greedy(std::span<const double> obs) {
  return CategoricalDist(forward(policy_, obs)).greedy();
}

std::vector<DenseNet> PpoTrainer::checkpoint_nets() const {
  return {policy_, critic_};
}

void PpoTrainer::run(std::int64_t total_steps, std::int64_t eval_interval,
                     const std::function<void(std::int64_t)>& on_eval) {
  if (eval_interval < 1 || total_steps < eval_interval)
    throw std::invalid_argument("run: need total_steps >= eval_interval >= 1");
  on_eval(0);
  std::int64_t step = 0, last_eval = 0;
  while (step < total_steps) {
    obs_.clear();
    rewards_.clear();
    actions_.clear();
    log_probs_.clear();
    terminal_.clear();
    const std::int64_t budget =
        std::min<std::int64_t>(config_.rollout_length, total_steps - step);
    for (std::int64_t i = 0; i < budget; ++i) {
      if (need_reset_) {
        cur_obs_ = env_.reset(mix_seed(seed_, episode_counter_++));
        need_reset_ = false;
      }
      CategoricalDist dist(forward(policy_, cur_obs_));
      const auto [action, log_prob] = dist.sample(rng_);
      StepOutcome out = env_.step(action);

      obs_.push_back(cur_obs_);
      actions_.push_back(action);
      log_probs_.push_back(log_prob);
      if (hybrid_) {
        rewards_.push_back(out.rewards);
      } else {
        rewards_.push_back(
            {std::accumulate(out.rewards.begin(), out.rewards.end(), 0.0)});
      }
      terminal_.push_back(out.terminated ? 1 : 0);
      cur_obs_ = out.observation;
      need_reset_ = out.terminated;

      ++step;
      if (step % eval_interval == 0) {
        on_eval(step);
        last_eval = step;
      }
    }
    last_next_obs_ = cur_obs_;
    update_from_rollout();
  }
  if (last_eval != step) on_eval(step);
}

void PpoTrainer::update_from_rollout() {
  const std::size_t batch_len = obs_.size();
  if (batch_len == 0) return;

  // Values from the target critic (the bootstrap at truncation uses the
  // current critic).
  std::vector<std::vector<double>> values(batch_len + 1);
  for (std::size_t t = 0; t < batch_len; ++t)
    values[t] = forward(critic_target_, obs_[t]);
  values[batch_len] = terminal_.back()
                          ? std::vector<double>(heads_, 0.0)
                          : forward(critic_, last_next_obs_);

  const GaeResult gae =
      compute_gae(rewards_, values, terminal_, config_.gamma, config_.gae_lambda);

  std::vector<std::size_t> order(batch_len);
  std::iota(order.begin(), order.end(), 0);

  PolicyGradOptions options;
  options.clip_epsilon = config_.clip_epsilon;
  options.entropy_coef = config_.entropy_coef;
  options.paper_exact_clip = config_.paper_exact_clip;

  std::vector<PpoSample> policy_batch;
  std::vector<CriticSample> critic_batch;
  std::vector<double> neg_grad;

  for (int k = 0; k < config_.epochs; ++k) {
    // Fisher-Yates shuffle driven by the trainer RNG
    for (std::size_t i = batch_len - 1; i > 0; --i)
      std::swap(order[i], order[rng_.index(i + 1)]);

    for (std::size_t start = 0; start < batch_len;
         start += config_.batch_size) {
      const std::size_t stop =
          std::min(batch_len, start + static_cast<std::size_t>(config_.batch_size));
      policy_batch.clear();
      critic_batch.clear();
      for (std::size_t j = start; j < stop; ++j) {
        const std::size_t t = order[j];
        PpoSample ps;
        ps.obs = &obs_[t];
        ps.action = actions_[t];
        ps.behavior_log_prob = log_probs_[t];
        ps.advantage = std::accumulate(gae.advantages[t].begin(),
                                       gae.advantages[t].end(), 0.0);
        policy_batch.push_back(ps);
        critic_batch.push_back(CriticSample{&obs_[t], gae.targets[t]});
      }

      std::vector<double> ascent =
          ppo_policy_gradient(policy_, policy_batch, options);
      neg_grad.resize(ascent.size());
      for (std::size_t i = 0; i < ascent.size(); ++i) neg_grad[i] = -ascent[i];
      policy_opt_.update(policy_.params(), neg_grad);

      std::vector<double> critic_grad;
      hybrid_critic_loss(critic_, critic_batch, critic_grad);
      critic_opt_.update(critic_.params(), critic_grad);
    }
    ++update_epochs_done_;
    if (update_epochs_done_ % config_.target_sync == 0)
      critic_target_ = critic_;
  }
}

}  // namespace vrsim
