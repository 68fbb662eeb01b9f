#include "vrsim/harness/config_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace vrsim {

namespace {

double parse_double(const std::string& value, const std::string& key,
                    int line_no) {
  char* end = nullptr;
  const double v = std::strtod(value.c_str(), &end);
  if (end == value.c_str() || *end != '\0')
    throw ConfigError("config line " + std::to_string(line_no) +
                      ": malformed number '" + value + "' for key '" + key + "'");
  return v;
}

long long parse_int(const std::string& value, const std::string& key,
                    int line_no) {
  char* end = nullptr;
  const long long v = std::strtoll(value.c_str(), &end, 10);
  if (end == value.c_str() || *end != '\0')
    throw ConfigError("config line " + std::to_string(line_no) +
                      ": malformed integer '" + value + "' for key '" + key + "'");
  return v;
}

using Setter = std::function<void(RunConfig&, const std::string&, int)>;

#define DOUBLE_KEY(field) \
  [](RunConfig& c, const std::string& v, int ln) { c.field = parse_double(v, #field, ln); }
#define INT_KEY(field) \
  [](RunConfig& c, const std::string& v, int ln) { c.field = static_cast<int>(parse_int(v, #field, ln)); }

const std::map<std::string, Setter>& key_table() {
  static const std::map<std::string, Setter> table = {
      {"n_users", INT_KEY(env.n_users)},
      {"n_channels", INT_KEY(env.n_channels)},
      {"frames_per_second", INT_KEY(env.frames_per_second)},
      {"slot_duration", DOUBLE_KEY(env.slot_duration)},
      {"area_side", DOUBLE_KEY(env.area_side)},
      {"bandwidth_per_channel", DOUBLE_KEY(env.bandwidth_per_channel)},
      {"noise_psd", DOUBLE_KEY(env.noise_psd)},
      {"path_loss_exponent", DOUBLE_KEY(env.path_loss_exponent)},
      {"frame_bits_min", DOUBLE_KEY(env.frame_bits_min)},
      {"frame_bits_max", DOUBLE_KEY(env.frame_bits_max)},
      {"cycles_per_bit_min", DOUBLE_KEY(env.cycles_per_bit_min)},
      {"cycles_per_bit_max", DOUBLE_KEY(env.cycles_per_bit_max)},
      {"vsp_cpu", DOUBLE_KEY(env.vsp_cpu)},
      {"user_cpu_min", DOUBLE_KEY(env.user_cpu_min)},
      {"user_cpu_max", DOUBLE_KEY(env.user_cpu_max)},
      {"tx_power_min", DOUBLE_KEY(env.tx_power_min)},
      {"tx_power_max", DOUBLE_KEY(env.tx_power_max)},
      {"energy_coeff", DOUBLE_KEY(env.energy_coeff)},
      {"battery_weight_min", DOUBLE_KEY(env.battery_weight_min)},
      {"battery_weight_max", DOUBLE_KEY(env.battery_weight_max)},
      {"target_fps_min", DOUBLE_KEY(env.target_fps_min)},
      {"target_fps_max", DOUBLE_KEY(env.target_fps_max)},
      {"omega1", DOUBLE_KEY(env.omega1)},
      {"omega2", DOUBLE_KEY(env.omega2)},
      {"r_success", DOUBLE_KEY(env.r_success)},
      {"r_fail", DOUBLE_KEY(env.r_fail)},
      {"r_terminal_scale", DOUBLE_KEY(env.r_terminal_scale)},
      {"rng_seed",
       [](RunConfig& c, const std::string& v, int ln) {
         c.env.rng_seed = static_cast<std::uint64_t>(parse_int(v, "rng_seed", ln));
       }},
      {"gamma", DOUBLE_KEY(agent.gamma)},
      {"gae_lambda", DOUBLE_KEY(agent.gae_lambda)},
      {"clip_epsilon", DOUBLE_KEY(agent.clip_epsilon)},
      {"epochs", INT_KEY(agent.epochs)},
      {"batch_size", INT_KEY(agent.batch_size)},
      {"actor_lr", DOUBLE_KEY(agent.actor_lr)},
      {"critic_lr", DOUBLE_KEY(agent.critic_lr)},
      {"entropy_coef", DOUBLE_KEY(agent.entropy_coef)},
      {"target_sync", INT_KEY(agent.target_sync)},
      {"replay_capacity", INT_KEY(agent.replay_capacity)},
      {"eps_start", DOUBLE_KEY(agent.eps_start)},
      {"eps_end", DOUBLE_KEY(agent.eps_end)},
      {"eps_decay_fraction", DOUBLE_KEY(agent.eps_decay_fraction)},
      {"rollout_length", INT_KEY(agent.rollout_length)},
      {"hidden_units", INT_KEY(agent.hidden_units)},
      {"eval_episodes", INT_KEY(agent.eval_episodes)},
  };
  return table;
}

#undef DOUBLE_KEY
#undef INT_KEY

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

void apply_config_key(RunConfig& config, const std::string& key,
                      const std::string& value, int line_no) {
  const auto& table = key_table();
  const auto it = table.find(key);
  if (it == table.end())
    throw ConfigError("config line " + std::to_string(line_no) +
                      ": unknown key '" + key + "'");
  it->second(config, value, line_no);
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);

  RunConfig config;
  bool slot_duration_set = false;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": expected key=value, got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    apply_config_key(config, key, value, line_no);
    if (key == "slot_duration") slot_duration_set = true;
  }
  if (!slot_duration_set)
    config.env.slot_duration = 1.0 / config.env.frames_per_second;
  config.env.validate();
  config.agent.validate();
  return config;
}

std::string dump_config(const RunConfig& c) {
  std::ostringstream out;
  char buf[64];
  auto putd = [&](const char* key, double v) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out << key << '=' << buf << '\n';
  };
  auto puti = [&](const char* key, long long v) { out << key << '=' << v << '\n'; };

  puti("n_users", c.env.n_users);
  puti("n_channels", c.env.n_channels);
  puti("frames_per_second", c.env.frames_per_second);
  putd("slot_duration", c.env.slot_duration);
  putd("area_side", c.env.area_side);
  putd("bandwidth_per_channel", c.env.bandwidth_per_channel);
  putd("noise_psd", c.env.noise_psd);
  putd("path_loss_exponent", c.env.path_loss_exponent);
  putd("frame_bits_min", c.env.frame_bits_min);
  putd("frame_bits_max", c.env.frame_bits_max);
  putd("cycles_per_bit_min", c.env.cycles_per_bit_min);
  putd("cycles_per_bit_max", c.env.cycles_per_bit_max);
  putd("vsp_cpu", c.env.vsp_cpu);
  putd("user_cpu_min", c.env.user_cpu_min);
  putd("user_cpu_max", c.env.user_cpu_max);
  putd("tx_power_min", c.env.tx_power_min);
  putd("tx_power_max", c.env.tx_power_max);
  putd("energy_coeff", c.env.energy_coeff);
  putd("battery_weight_min", c.env.battery_weight_min);
  putd("battery_weight_max", c.env.battery_weight_max);
  putd("target_fps_min", c.env.target_fps_min);
  putd("target_fps_max", c.env.target_fps_max);
  putd("omega1", c.env.omega1);
  putd("omega2", c.env.omega2);
  putd("r_success", c.env.r_success);
  putd("r_fail", c.env.r_fail);
  putd("r_terminal_scale", c.env.r_terminal_scale);
  puti("rng_seed", static_cast<long long>(c.env.rng_seed));
  putd("gamma", c.agent.gamma);
  putd("gae_lambda", c.agent.gae_lambda);
  putd("clip_epsilon", c.agent.clip_epsilon);
  puti("epochs", c.agent.epochs);
  puti("batch_size", c.agent.batch_size);
  putd("actor_lr", c.agent.actor_lr);
  putd("critic_lr", c.agent.critic_lr);
  putd("entropy_coef", c.agent.entropy_coef);
  puti("target_sync", c.agent.target_sync);
  puti("replay_capacity", c.agent.replay_capacity);
  putd("eps_start", c.agent.eps_start);
  putd("eps_end", c.agent.eps_end);
  putd("eps_decay_fraction", c.agent.eps_decay_fraction);
  puti("rollout_length", c.agent.rollout_length);
  puti("hidden_units", c.agent.hidden_units);
  puti("eval_episodes", c.agent.eval_episodes);
  return out.str();
}

}  // namespace vrsim
