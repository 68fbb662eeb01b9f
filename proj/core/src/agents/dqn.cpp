#include "vrsim/agents/dqn.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

namespace vrsim {

ReplayBuffer::ReplayBuffer(int capacity)
    : capacity_(static_cast<std::size_t>(capacity)) {
  if (capacity < 1)
    throw std::invalid_argument("ReplayBuffer: capacity must be >= 1");
  buffer_.reserve(capacity_);
}

void ReplayBuffer::push(DqnTransition transition) {
  if (buffer_.size() < capacity_) {
    buffer_.push_back(std::move(transition));
  } else {
    buffer_[cursor_] = std::move(transition);
  }
  cursor_ = (cursor_ + 1) % capacity_;
}

std::vector<const DqnTransition*> ReplayBuffer::sample(int batch_size,
                                                       Rng& rng) const {
  if (static_cast<std::size_t>(batch_size) > buffer_.size())
    throw std::logic_error("ReplayBuffer: sampling from an underfilled buffer");
  std::unordered_set<std::uint64_t> chosen;
  std::vector<const DqnTransition*> batch;
  batch.reserve(batch_size);
  while (static_cast<int>(batch.size()) < batch_size) {
    const std::uint64_t i = rng.index(buffer_.size());
    if (chosen.insert(i).second) batch.push_back(&buffer_[i]);
  }
  return batch;
}

std::vector<double> hrdqn_update_gradient(const DenseNet& q_net,
                                          const DenseNet& target_net,
                                          std::span<const DqnTransition* const> batch,
                                          double gamma, int heads,
                                          double* loss_out) {
  if (batch.empty())
    throw std::invalid_argument("hrdqn_update_gradient: empty batch");
  const int n_actions = q_net.output_size() / heads;
  if (n_actions * heads != q_net.output_size())
    throw std::invalid_argument("hrdqn_update_gradient: head layout mismatch");

  std::vector<double> grad(q_net.param_count(), 0.0);
  std::vector<double> out_grad(q_net.output_size());
  ForwardCache cache;
  double loss = 0.0;

  for (const DqnTransition* tr : batch) {
    std::vector<double> targets(heads);
    if (tr->terminated) {
      for (int h = 0; h < heads; ++h) targets[h] = tr->rewards[h];
    } else {
      const std::vector<double> next_q = forward(target_net, tr->next_obs);
      // shared a*: argmax over the summed heads
      std::int64_t best = 0;
      double best_sum = -std::numeric_limits<double>::infinity();
      for (int a = 0; a < n_actions; ++a) {
        double sum = 0.0;
        for (int h = 0; h < heads; ++h) sum += next_q[h * n_actions + a];
        if (sum > best_sum) {
          best_sum = sum;
          best = a;
        }
      }
      for (int h = 0; h < heads; ++h)
        targets[h] = tr->rewards[h] + gamma * next_q[h * n_actions + best];
    }

    const std::vector<double> q = forward(q_net, tr->obs, &cache);
    std::fill(out_grad.begin(), out_grad.end(), 0.0);
    for (int h = 0; h < heads; ++h) {
      const double err = q[h * n_actions + tr->action] - targets[h];
      loss += err * err;
      out_grad[h * n_actions + tr->action] =
          2.0 * err / static_cast<double>(batch.size());
    }
    backward_accumulate(q_net, cache, out_grad, grad);
  }
  if (loss_out) *loss_out = loss / static_cast<double>(batch.size());
  return grad;
}

HrdqnTrainer::HrdqnTrainer(EnvConfig env_config, AgentConfig agent_config,
                           std::uint64_t seed)
    : env_config_(std::move(env_config)),
      config_(agent_config),
      heads_(env_config_.n_users),
      n_actions_(env_config_.action_space_size()),
      env_(env_config_),
      rng_(seed, 0xD46),
      replay_(agent_config.replay_capacity),
      seed_(seed) {
  config_.validate();
  if (n_actions_ * heads_ > kMaxActionOutputs * 8 || n_actions_ > kMaxActionOutputs)
    throw std::invalid_argument("joint action space exceeds the supported output width");
  const int obs = env_config_.observation_size();
  const int hidden = config_.hidden_units;
  q_net_ = DenseNet({obs, hidden, hidden, static_cast<int>(n_actions_) * heads_});
  q_net_.init(rng_, 0.01);
  target_net_ = q_net_;
  opt_ = AdamState(q_net_.param_count(), config_.critic_lr);
}

std::int64_t HrdqnTrainer::summed_argmax(const std::vector<double>& q) const {
  std::int64_t best = 0;
  double best_sum = -std::numeric_limits<double>::infinity();
  for (std::int64_t a = 0; a < n_actions_; ++a) {
    double sum = 0.0;
    for (int h = 0; h < heads_; ++h) sum += q[h * n_actions_ + a];
    if (sum > best_sum) {
      best_sum = sum;
      best = a;
    }
  }
  return best;
}

std::int64_t HrdqnTrainer::act_greedy(std::span<const double> obs) {
  return summed_argmax(forward(q_net_, obs));
}

std::vector<DenseNet> HrdqnTrainer::checkpoint_nets() const {
  return {q_net_};
}

void HrdqnTrainer::run(std::int64_t total_steps, std::int64_t eval_interval,
                       const std::function<void(std::int64_t)>& on_eval) {
  if (eval_interval < 1 || total_steps < eval_interval)
    throw std::invalid_argument("run: need total_steps >= eval_interval >= 1");
  on_eval(0);
  const double anneal_steps = config_.eps_decay_fraction * total_steps;
  std::vector<double> cur_obs;
  bool need_reset = true;
  std::int64_t last_eval = 0;

  for (std::int64_t step = 0; step < total_steps;) {
    if (need_reset) {
      cur_obs = env_.reset(mix_seed(seed_, episode_counter_++));
      need_reset = false;
    }
    const double eps =
        config_.eps_start +
        (config_.eps_end - config_.eps_start) *
            std::min(1.0, static_cast<double>(step) / anneal_steps);
    std::int64_t action;
    if (rng_.uniform() < eps) {
      action = static_cast<std::int64_t>(rng_.index(n_actions_));
    } else {
      action = summed_argmax(forward(q_net_, cur_obs));
    }
    StepOutcome out = env_.step(action);
    replay_.push(DqnTransition{cur_obs, out.observation, action, out.rewards,
                               out.terminated});
    cur_obs = out.observation;
    need_reset = out.terminated;

    if (replay_.size() >= static_cast<std::size_t>(config_.batch_size)) {
      const auto batch = replay_.sample(config_.batch_size, rng_);
      const std::vector<double> grad = hrdqn_update_gradient(
          q_net_, target_net_, batch, config_.gamma, heads_);
      opt_.update(q_net_.params(), grad);
      ++updates_done_;
      if (updates_done_ % config_.target_sync == 0) target_net_ = q_net_;
    }

    ++step;
    if (step % eval_interval == 0) {
      on_eval(step);
      last_eval = step;
    }
  }
  if (last_eval != total_steps) on_eval(total_steps);
}

}  // namespace vrsim
