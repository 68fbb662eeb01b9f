#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vrsim/env/config.hpp"
#include "vrsim/env/types.hpp"
#include "vrsim/rng.hpp"

namespace vrsim {

/// A fully frozen miniature episode: config, profiles and the randomness
/// tape. Small enough that every action sequence can be enumerated.
struct TinyInstance {
  EnvConfig config;
  std::vector<VuProfile> profiles;
  EpisodeTape tape;

  /// (M+1)^(N*T); enumeration is refused above 2^20.
  double sequence_count() const;
};

TinyInstance make_tiny_instance(const EnvConfig& config, std::uint64_t seed);

/// Text fixture round-trip (format documented in the file header it writes).
void save_tiny_instance(const TinyInstance& instance, const std::string& path);
TinyInstance load_tiny_instance(const std::string& path);

/// Complete per-step record of one episode, as emitted by the environment.
struct EpisodeLog {
  EnvConfig config;
  std::vector<std::vector<StepInfo>> steps;  // [slot][user]
};

/// omega1 * sum I + omega2 * sum e recomputed from raw logged delays and
/// energies; failure flags are re-derived from delay > iota, not trusted.
/// Throws std::domain_error on an incomplete log.
double recompute_objective(const EpisodeLog& log);

struct SequenceEvaluation {
  double objective = 0.0;
  int slots_executed = 0;
  bool completed = false;  // ran all T slots without tolerance exhaustion
};

/// Replays one action sequence on the frozen tape with arithmetic written
/// independently of env-core (the cross-check depends on the two paths not
/// sharing code).
SequenceEvaluation evaluate_sequence(const TinyInstance& instance,
                                     const std::vector<std::int64_t>& actions);

struct SearchResult {
  std::vector<std::int64_t> best_actions;  // one encoded action per slot
  double best_objective = 0.0;
  bool feasible = false;  // some sequence completes all T slots
};

/// Enumerates every (M+1)^(N*T) action sequence. When feasible sequences
/// exist, minimizes over those; otherwise over all sequences. Ties go to the
/// lexicographically smallest sequence. Throws std::invalid_argument when the
/// instance exceeds the enumeration bound.
SearchResult exhaustive_search(const TinyInstance& instance);

}  // namespace vrsim
