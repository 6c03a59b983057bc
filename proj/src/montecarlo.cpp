#include "paretolab/montecarlo.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <string>
#include <string_view>
#include <thread>

#include "paretolab/error.hpp"

namespace paretolab {

Dynamics make_dynamics(const ModelParams& params) {
  const double lambda = std::log1p(params.gamma());
  Dynamics d;
  d.kappa = params.kappa();
  d.kill_prob = 1.0 - 1.0 / params.kappa();
  d.outcomes = {{params.p(), lambda}, {1.0 - params.p(), -lambda}};
  return d;
}

Dynamics make_dynamics(const ClassMix& mix) {
  Dynamics d;
  d.kappa = mix.kappa();
  d.kill_prob = 1.0 - 1.0 / mix.kappa();
  for (const auto& e : mix.entries()) {
    const double lambda = std::log1p(e.gamma);
    d.outcomes.push_back({e.p, lambda});
    d.outcomes.push_back({e.q, -lambda});
  }
  return d;
}

namespace {

constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double advance(double log_w, const Dynamics& dyn, double log_reinject, std::uint64_t seed,
               std::uint64_t agent, std::uint64_t step) {
  if (dyn.kill_prob > 0.0 && counter_uniform(seed, agent, step, 0) < dyn.kill_prob) {
    return log_reinject;
  }
  const double u = counter_uniform(seed, agent, step, 1);
  double cumulative = 0.0;
  for (std::size_t i = 0; i + 1 < dyn.outcomes.size(); ++i) {
    cumulative += dyn.outcomes[i].prob;
    if (u < cumulative) return log_w + dyn.outcomes[i].log_step;
  }
  return log_w + dyn.outcomes.back().log_step;
}

template <class Fn>
void parallel_over(std::size_t n, unsigned threads, Fn&& fn) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (threads == 1) {
    fn(std::size_t{0}, n);
    return;
  }
  std::vector<std::thread> workers;
  const std::size_t chunk = (n + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    const std::size_t lo = std::min(n, t * chunk);
    const std::size_t hi = std::min(n, lo + chunk);
    workers.emplace_back([&fn, lo, hi] { fn(lo, hi); });
  }
  for (auto& w : workers) w.join();
}

}  // namespace

double counter_uniform(std::uint64_t seed, std::uint64_t agent, std::uint64_t step,
                       std::uint32_t stream) {
  std::uint64_t h = mix64(seed);
  h = mix64(h ^ agent);
  h = mix64(h ^ ((step << 2) | stream));
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

std::vector<double> AgentPopulation::wealths() const {
  std::vector<double> out(log_wealth.size());
  std::transform(log_wealth.begin(), log_wealth.end(), out.begin(),
                 [](double v) { return std::exp(v); });
  return out;
}

AgentPopulation make_population(std::size_t n_agents, std::uint64_t seed, double reinject_at) {
  if (!(reinject_at > 0.0) || !std::isfinite(reinject_at)) {
    throw Error(ErrorKind::OutOfRange, "reinjection wealth must be positive");
  }
  AgentPopulation pop;
  pop.log_wealth.assign(n_agents, std::log(reinject_at));
  pop.seed = seed;
  pop.reinject_at = reinject_at;
  return pop;
}

unsigned default_thread_count() {
  if (const char* env = std::getenv("PARETOLAB_THREADS")) {
    const std::string_view s(env);
    unsigned value = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size() || value == 0) {
      throw Error(ErrorKind::Parse, "PARETOLAB_THREADS must be a positive integer");
    }
    return value;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

AgentPopulation mc_step(const AgentPopulation& pop, const Dynamics& dyn, unsigned threads) {
  AgentPopulation next = pop;
  const double log_reinject = std::log(pop.reinject_at);
  parallel_over(pop.size(), threads, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      next.log_wealth[i] = advance(pop.log_wealth[i], dyn, log_reinject, pop.seed, i, pop.step_count);
    }
  });
  ++next.step_count;
  return next;
}

AgentPopulation mc_step(const AgentPopulation& pop, const ModelParams& params, unsigned threads) {
  return mc_step(pop, make_dynamics(params), threads);
}

McResult run_mc(const Dynamics& dyn, const McConfig& config) {
  if (config.estimate_tail && dyn.kappa == 1.0) {
    throw Error(ErrorKind::StationarityUnavailable, "stationary tail unavailable at kappa=1");
  }
  if (config.n_agents == 0) throw Error(ErrorKind::OutOfRange, "need at least one agent");
  if (config.burn_in < 0 || config.n_steps <= config.burn_in) {
    throw Error(ErrorKind::OutOfRange, "need n_steps > burn_in >= 0");
  }
  McResult r;
  r.population = make_population(config.n_agents, config.seed, config.reinject_at);
  auto& pop = r.population;
  const double log_reinject = std::log(config.reinject_at);
  const auto steps = static_cast<std::uint64_t>(config.n_steps);
  // Agent-major loop: each agent's path depends only on its own counters.
  parallel_over(pop.size(), config.threads, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      double w = pop.log_wealth[i];
      for (std::uint64_t s = 0; s < steps; ++s) {
        w = advance(w, dyn, log_reinject, config.seed, i, s);
      }
      pop.log_wealth[i] = w;
    }
  });
  pop.step_count = steps;
  r.samples = pop.wealths();

  if (config.estimate_tail) {
    const std::size_t k = config.hill_k == 0 ? default_hill_k(r.samples.size()) : config.hill_k;
    r.tail = hill_estimator(r.samples, k);
    r.threshold_in_source_region = r.tail->threshold < 10.0 * config.reinject_at;
    for (std::size_t kk : {k / 2, k, 2 * k}) {
      if (kk >= 2 && kk < r.samples.size()) r.hill_profile.push_back(hill_estimator(r.samples, kk));
    }
  }
  return r;
}

}  // namespace paretolab
