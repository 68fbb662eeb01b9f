#include "vrsim/oracle/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "vrsim/env/environment.hpp"

namespace vrsim {

double TinyInstance::sequence_count() const {
  return std::pow(static_cast<double>(config.n_channels + 1),
                  static_cast<double>(config.n_users) *
                      static_cast<double>(config.frames_per_second));
}

TinyInstance make_tiny_instance(const EnvConfig& config, std::uint64_t seed) {
  config.validate();
  Rng rng(config.rng_seed, seed);
  TinyInstance instance;
  instance.config = config;
  instance.profiles = sample_profiles(config, rng);
  instance.tape = sample_tape(config, rng);
  return instance;
}

namespace {

void put(std::ostream& out, const char* key, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out << key << ' ' << buf << '\n';
}

}  // namespace

void save_tiny_instance(const TinyInstance& inst, const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("save_tiny_instance: cannot open " + path);
  const EnvConfig& c = inst.config;
  out << "tinyinstance v1\n";
  out << "n_users " << c.n_users << '\n';
  out << "n_channels " << c.n_channels << '\n';
  out << "frames_per_second " << c.frames_per_second << '\n';
  put(out, "slot_duration", c.slot_duration);
  put(out, "bandwidth_per_channel", c.bandwidth_per_channel);
  put(out, "noise_psd", c.noise_psd);
  put(out, "path_loss_exponent", c.path_loss_exponent);
  put(out, "vsp_cpu", c.vsp_cpu);
  put(out, "energy_coeff", c.energy_coeff);
  put(out, "omega1", c.omega1);
  put(out, "omega2", c.omega2);
  put(out, "r_success", c.r_success);
  put(out, "r_fail", c.r_fail);
  put(out, "r_terminal_scale", c.r_terminal_scale);
  put(out, "area_side", c.area_side);
  put(out, "frame_bits_min", c.frame_bits_min);
  put(out, "frame_bits_max", c.frame_bits_max);
  put(out, "cycles_per_bit_min", c.cycles_per_bit_min);
  put(out, "cycles_per_bit_max", c.cycles_per_bit_max);
  put(out, "user_cpu_min", c.user_cpu_min);
  put(out, "user_cpu_max", c.user_cpu_max);
  put(out, "tx_power_min", c.tx_power_min);
  put(out, "tx_power_max", c.tx_power_max);
  put(out, "target_fps_min", c.target_fps_min);
  put(out, "target_fps_max", c.target_fps_max);
  for (const VuProfile& p : inst.profiles) {
    out << "profile " << p.user_id;
    char buf[256];
    std::snprintf(buf, sizeof(buf), " %.17g %.17g %.17g %.17g %.17g %.17g %d",
                  p.pos_x, p.pos_y, p.distance, p.tx_power, p.cpu,
                  p.battery_weight, p.target_fps);
    out << buf << '\n';
  }
  const int slots = static_cast<int>(inst.tape.frame_bits.size());
  out << "slots " << slots << '\n';
  for (int t = 0; t < slots; ++t) {
    out << "slot " << t;
    char buf[64];
    for (double v : inst.tape.frame_bits[t]) {
      std::snprintf(buf, sizeof(buf), " %.17g", v);
      out << buf;
    }
    for (double v : inst.tape.cycles_per_bit[t]) {
      std::snprintf(buf, sizeof(buf), " %.17g", v);
      out << buf;
    }
    for (double v : inst.tape.fading[t]) {
      std::snprintf(buf, sizeof(buf), " %.17g", v);
      out << buf;
    }
    out << '\n';
  }
  if (!out) throw std::runtime_error("save_tiny_instance: write failed");
}

TinyInstance load_tiny_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_tiny_instance: cannot open " + path);
  std::string header;
  std::getline(in, header);
  if (header != "tinyinstance v1")
    throw std::runtime_error("load_tiny_instance: bad header in " + path);

  TinyInstance inst;
  EnvConfig& c = inst.config;
  int slots = -1;
  std::string key;
  while (in >> key) {
    if (key == "n_users") in >> c.n_users;
    else if (key == "n_channels") in >> c.n_channels;
    else if (key == "frames_per_second") in >> c.frames_per_second;
    else if (key == "slot_duration") in >> c.slot_duration;
    else if (key == "bandwidth_per_channel") in >> c.bandwidth_per_channel;
    else if (key == "noise_psd") in >> c.noise_psd;
    else if (key == "path_loss_exponent") in >> c.path_loss_exponent;
    else if (key == "vsp_cpu") in >> c.vsp_cpu;
    else if (key == "energy_coeff") in >> c.energy_coeff;
    else if (key == "omega1") in >> c.omega1;
    else if (key == "omega2") in >> c.omega2;
    else if (key == "r_success") in >> c.r_success;
    else if (key == "r_fail") in >> c.r_fail;
    else if (key == "r_terminal_scale") in >> c.r_terminal_scale;
    else if (key == "area_side") in >> c.area_side;
    else if (key == "frame_bits_min") in >> c.frame_bits_min;
    else if (key == "frame_bits_max") in >> c.frame_bits_max;
    else if (key == "cycles_per_bit_min") in >> c.cycles_per_bit_min;
    else if (key == "cycles_per_bit_max") in >> c.cycles_per_bit_max;
    else if (key == "user_cpu_min") in >> c.user_cpu_min;
    else if (key == "user_cpu_max") in >> c.user_cpu_max;
    else if (key == "tx_power_min") in >> c.tx_power_min;
    else if (key == "tx_power_max") in >> c.tx_power_max;
    else if (key == "target_fps_min") in >> c.target_fps_min;
    else if (key == "target_fps_max") in >> c.target_fps_max;
    else if (key == "profile") {
      VuProfile p;
      in >> p.user_id >> p.pos_x >> p.pos_y >> p.distance >> p.tx_power >>
          p.cpu >> p.battery_weight >> p.target_fps;
      p.initial_tolerance = c.frames_per_second - p.target_fps;
      inst.profiles.push_back(p);
    } else if (key == "slots") {
      in >> slots;
      inst.tape.frame_bits.resize(slots);
      inst.tape.cycles_per_bit.resize(slots);
      inst.tape.fading.resize(slots);
    } else if (key == "slot") {
      int t;
      in >> t;
      if (t < 0 || t >= slots)
        throw std::runtime_error("load_tiny_instance: slot index out of range");
      auto& d = inst.tape.frame_bits[t];
      auto& cy = inst.tape.cycles_per_bit[t];
      auto& g = inst.tape.fading[t];
      d.resize(c.n_users);
      cy.resize(c.n_users);
      g.resize(c.n_users * c.n_channels);
      for (double& v : d) in >> v;
      for (double& v : cy) in >> v;
      for (double& v : g) in >> v;
    } else {
      throw std::runtime_error("load_tiny_instance: unknown key '" + key + "'");
    }
    if (!in)
      throw std::runtime_error("load_tiny_instance: malformed value after '" +
                               key + "'");
  }
  if (slots < c.frames_per_second)
    throw std::runtime_error("load_tiny_instance: tape shorter than episode");
  return inst;
}

double recompute_objective(const EpisodeLog& log) {
  const EnvConfig& c = log.config;
  const double iota = c.slot_duration;
  double failures = 0.0, energy = 0.0;
  for (const auto& slot : log.steps) {
    if (static_cast<int>(slot.size()) != c.n_users)
      throw std::domain_error("recompute_objective: incomplete slot record");
    for (const StepInfo& info : slot) {
      const bool has_off = info.offload_delay.has_value();
      const bool has_loc = info.local_delay.has_value();
      if (has_off == has_loc)
        throw std::domain_error(
            "recompute_objective: exactly one delay must be populated");
      const double delay = has_off ? *info.offload_delay : *info.local_delay;
      if (delay > iota) failures += 1.0;
      energy += info.energy;
    }
  }
  return c.omega1 * failures + c.omega2 * energy;
}

// ---------------------------------------------------------------------------
// Independent episode arithmetic. This deliberately re-derives Eqs. of the
// system model from scratch; keep it free of env-core calls.

SequenceEvaluation evaluate_sequence(const TinyInstance& inst,
                                     const std::vector<std::int64_t>& actions) {
  const EnvConfig& c = inst.config;
  const int n_users = c.n_users;
  const int n_channels = c.n_channels;
  const double iota = c.slot_duration;
  const double noise = c.bandwidth_per_channel * c.noise_psd;

  std::vector<int> tolerance(n_users);
  for (int n = 0; n < n_users; ++n)
    tolerance[n] = inst.profiles[n].initial_tolerance;

  SequenceEvaluation eval;
  double failures = 0.0, energy = 0.0;

  for (int t = 0; t < c.frames_per_second; ++t) {
    // decode digit by digit, most significant = user 0
    std::vector<int> assignment(n_users);
    std::int64_t rest = actions[t];
    for (int n = n_users - 1; n >= 0; --n) {
      assignment[n] = static_cast<int>(rest % (n_channels + 1));
      rest /= (n_channels + 1);
    }

    bool exhausted = false;
    for (int n = 0; n < n_users; ++n) {
      const double bits = inst.tape.frame_bits[t][n];
      const double cycles = inst.tape.cycles_per_bit[t][n];
      double delay;
      if (assignment[n] == 0) {
        const double cpu = inst.profiles[n].cpu;
        delay = bits * cycles / cpu;
        energy += inst.profiles[n].battery_weight * bits * cycles *
                  c.energy_coeff * cpu * cpu;
      } else {
        const int m = assignment[n];
        // co-channel users sorted by received power, descending
        std::vector<int> members;
        for (int i = 0; i < n_users; ++i)
          if (assignment[i] == m) members.push_back(i);
        auto h2 = [&](int i) {
          const double amp = inst.tape.fading[t][i * n_channels + (m - 1)] *
                             std::pow(inst.profiles[i].distance,
                                      -c.path_loss_exponent);
          return amp * amp;
        };
        std::stable_sort(members.begin(), members.end(), [&](int a, int b) {
          return inst.profiles[a].tx_power * h2(a) >
                 inst.profiles[b].tx_power * h2(b);
        });
        double interference = 0.0;
        bool after_me = false;
        for (int i : members) {
          if (after_me) interference += inst.profiles[i].tx_power * h2(n);
          if (i == n) after_me = true;
        }
        const double sinr =
            inst.profiles[n].tx_power * h2(n) / (interference + noise);
        const double rate =
            c.bandwidth_per_channel * std::log(1.0 + sinr) / std::log(2.0);
        delay = bits * cycles / c.vsp_cpu + bits / rate;
      }
      if (delay > iota) {
        failures += 1.0;
        tolerance[n] -= 1;
        if (tolerance[n] <= 0) exhausted = true;
      }
    }
    eval.slots_executed = t + 1;
    if (exhausted) {
      eval.completed = false;
      eval.objective = c.omega1 * failures + c.omega2 * energy;
      return eval;
    }
  }
  eval.completed = true;
  eval.objective = c.omega1 * failures + c.omega2 * energy;
  return eval;
}

SearchResult exhaustive_search(const TinyInstance& inst) {
  if (inst.sequence_count() > static_cast<double>(1 << 20))
    throw std::invalid_argument(
        "exhaustive_search: instance exceeds the enumeration bound");
  const int slots = inst.config.frames_per_second;
  std::int64_t per_slot = 1;
  for (int n = 0; n < inst.config.n_users; ++n)
    per_slot *= (inst.config.n_channels + 1);

  SearchResult best;
  bool have_any = false;
  std::vector<std::int64_t> actions(slots, 0);

  while (true) {
    const SequenceEvaluation eval = evaluate_sequence(inst, actions);
    // feasible sequences dominate infeasible ones; ties keep the earlier
    // (lexicographically smaller) sequence
    const bool better =
        !have_any ||
        (eval.completed && !best.feasible) ||
        (eval.completed == best.feasible && eval.objective < best.best_objective);
    if (better) {
      best.best_actions = actions;
      best.best_objective = eval.objective;
      best.feasible = eval.completed;
      have_any = true;
    }
    // odometer increment, last slot least significant
    int pos = slots - 1;
    while (pos >= 0) {
      if (++actions[pos] < per_slot) break;
      actions[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  return best;
}

}  // namespace vrsim
