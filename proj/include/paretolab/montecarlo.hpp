#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "paretolab/dirichlet.hpp"
#include "paretolab/estimators.hpp"
#include "paretolab/model.hpp"

namespace paretolab {

// Per-step agent rule. With probability kill_prob the agent is removed and
// respawned at the reinjection wealth; otherwise one outcome is drawn and its
// log step added to the log-wealth.
struct Dynamics {
  struct Outcome {
    double prob;
    double log_step;
  };
  double kappa = 1.0;
  double kill_prob = 0.0;  // 1 - 1/kappa
  std::vector<Outcome> outcomes;
};

Dynamics make_dynamics(const ModelParams& params);
// Each class contributes a win (p_i, +log(1+g_i)) and a loss (q_i, -log(1+g_i)).
Dynamics make_dynamics(const ClassMix& mix);

// Uniform on [0,1) as a pure function of (seed, agent, step, stream).
double counter_uniform(std::uint64_t seed, std::uint64_t agent, std::uint64_t step,
                       std::uint32_t stream);

struct AgentPopulation {
  std::vector<double> log_wealth;
  std::uint64_t seed = 0;
  std::uint64_t step_count = 0;
  double reinject_at = 1.0;

  std::size_t size() const noexcept { return log_wealth.size(); }
  std::vector<double> wealths() const;
};

AgentPopulation make_population(std::size_t n_agents, std::uint64_t seed,
                                double reinject_at = 1.0);

// Worker count from PARETOLAB_THREADS, else the hardware concurrency.
// Throws Error{Parse} when the variable is set but not a positive integer.
unsigned default_thread_count();

// Advances every agent by one step. Results do not depend on `threads`.
AgentPopulation mc_step(const AgentPopulation& pop, const Dynamics& dyn, unsigned threads = 1);
AgentPopulation mc_step(const AgentPopulation& pop, const ModelParams& params,
                        unsigned threads = 1);

struct McConfig {
  std::size_t n_agents = 200'000;
  int n_steps = 400;
  int burn_in = 200;
  std::uint64_t seed = 1;
  double reinject_at = 1.0;
  std::size_t hill_k = 0;  // 0 selects default_hill_k(n_agents)
  bool estimate_tail = true;
  unsigned threads = 1;
};

struct McResult {
  AgentPopulation population;
  std::vector<double> samples;  // final wealths, agent order
  std::optional<TailEstimate> tail;
  std::vector<TailEstimate> hill_profile;  // at k/2, k, 2k where valid
  // Hill threshold sits below 10 x reinject_at, inside the source region.
  bool threshold_in_source_region = false;
};

// Starts all agents at reinject_at and runs n_steps. Throws
// Error{StationarityUnavailable} for kappa = 1 with tail estimation: the
// invariant density then decays like 1/x and is not normalisable.
McResult run_mc(const Dynamics& dyn, const McConfig& config);

}  // namespace paretolab
