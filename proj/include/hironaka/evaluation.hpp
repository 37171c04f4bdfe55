#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "hironaka/game.hpp"
#include "hironaka/mcts.hpp"
#include "hironaka/policy.hpp"

namespace hironaka {

template <class T>
struct EvalConfig {
  std::size_t dim = 3;                 // n
  std::size_t points = 3;              // k
  std::int64_t coordinate_bound = 10;  // N: coordinates uniform in [1, N]
  std::size_t steps = 1000;            // m
  std::size_t repetitions = 30;
  std::size_t step_cap = 500;          // per-game cap before a forced restart
  std::uint64_t seed = 0;
  VariantRules rules = VariantRules::of(Variant::basic_shifted);
  // When nonempty, start states are drawn uniformly from this pool instead.
  std::vector<GameState<T>> initial_pool;

  void validate() const {
    if (dim < 2 || points < 1 || coordinate_bound < 1 || steps < 1 || repetitions < 1 || step_cap < 1) {
      throw std::invalid_argument("invalid evaluation config");
    }
    for (const auto& s : initial_pool) {
      if (is_terminal(s, rules)) throw std::invalid_argument("initial pool contains a terminal state");
    }
  }
};

struct EvalReport {
  std::string host;
  std::string agent;
  double rho = 0;
  double std_error = 0;        // over repetitions
  std::size_t games = 0;       // completed games, all repetitions
  std::size_t capped = 0;      // games force-restarted at the step cap
  std::map<std::size_t, std::size_t> lengths;  // completed-game length histogram
  std::vector<double> per_repetition;
};

// Uniform draw from V = {1..N}^n, k points, deduplicated and pruned; redrawn
// while fewer than two points survive.
template <class T>
GameState<T> sample_initial_state(const EvalConfig<T>& config, Rng& rng) {
  if (!config.initial_pool.empty()) {
    GameState<T> s = config.initial_pool[uniform_index(rng, config.initial_pool.size())];
    s.step = 0;
    return s;
  }
  if (config.coordinate_bound < 2 || config.points < 2) {
    throw std::invalid_argument("V contains no start state with two or more points");
  }
  for (;;) {
    std::vector<Point<T>> pts(config.points, Point<T>(config.dim));
    for (auto& p : pts) {
      for (auto& x : p) x = T(1 + static_cast<std::int64_t>(uniform_index(rng, config.coordinate_bound)));
    }
    PointConfiguration<T> S(std::move(pts));
    S = config.rules.pruning == PruningMode::domination ? remove_dominated(S) : newton_vertices(S);
    if (S.size() < 2) continue;
    return make_state(std::move(S), config.rules);
  }
}

// Completed-games-per-step ratio over `repetitions` independent m-step runs
// with immediate restarts. The game in progress at step m is not counted.
template <class T>
EvalReport rho_estimate(const HostPolicy<T>& host, const AgentPolicy<T>& agent, const EvalConfig<T>& config) {
  config.validate();
  EvalReport report;
  report.host = host.name();
  report.agent = agent.name();
  const VariantRules& rules = config.rules;
  for (std::size_t rep = 0; rep < config.repetitions; ++rep) {
    Rng rng(derive_seed(config.seed, rep));
    std::size_t completed = 0;
    std::size_t length = 0;
    GameState<T> state = sample_initial_state(config, rng);
    for (std::size_t t = 0; t < config.steps; ++t) {
      const HostMove I = host.decide(state, rules, rng);
      const AgentMove i = agent.decide(state, I, rules, rng);
      state = apply(state, I, i, rules);
      ++length;
      if (is_terminal(state, rules)) {
        ++completed;
        ++report.lengths[length];
      } else if (length >= config.step_cap) {
        ++report.capped;
      } else {
        continue;
      }
      length = 0;
      state = sample_initial_state(config, rng);
    }
    report.games += completed;
    report.per_repetition.push_back(static_cast<double>(completed) / static_cast<double>(config.steps));
  }
  // Integer totals keep rho correctly rounded, so equal per-repetition
  // ratios give the same double as the mean.
  const double reps = static_cast<double>(report.per_repetition.size());
  report.rho = static_cast<double>(report.games) / (reps * static_cast<double>(config.steps));
  if (report.per_repetition.size() > 1) {
    double ss = 0;
    for (double r : report.per_repetition) ss += (r - report.rho) * (r - report.rho);
    report.std_error = std::sqrt(ss / (reps - 1)) / std::sqrt(reps);
  }
  return report;
}

inline std::uint64_t cell_seed(std::uint64_t base, std::size_t host_index, std::size_t agent_index,
                               std::size_t num_agents) {
  return derive_seed(base, 0x100000 + host_index * num_agents + agent_index);
}

template <class T>
struct BenchmarkTable {
  std::vector<std::string> hosts;
  std::vector<std::string> agents;
  std::vector<std::vector<EvalReport>> cells;  // [host][agent]

  const EvalReport& at(std::size_t h, std::size_t a) const { return cells.at(h).at(a); }
};

template <class T>
BenchmarkTable<T> benchmark_matrix(const std::vector<HostPtr<T>>& hosts, const std::vector<AgentPtr<T>>& agents,
                                   const EvalConfig<T>& config) {
  if (hosts.empty() || agents.empty()) throw std::invalid_argument("benchmark needs hosts and agents");
  BenchmarkTable<T> table;
  for (const auto& h : hosts) table.hosts.push_back(h->name());
  for (const auto& a : agents) table.agents.push_back(a->name());
  for (std::size_t h = 0; h < hosts.size(); ++h) {
    table.cells.emplace_back();
    for (std::size_t a = 0; a < agents.size(); ++a) {
      EvalConfig<T> cell = config;
      cell.seed = cell_seed(config.seed, h, a, agents.size());
      table.cells.back().push_back(rho_estimate(*hosts[h], *agents[a], cell));
    }
  }
  return table;
}

struct ConvergencePoint {
  std::size_t steps = 0;
  double rho = 0;
  double std_error = 0;
  double delta = 0;  // |rho - previous rho|, zero for the first grid point
};

template <class T>
std::vector<ConvergencePoint> convergence_scan(const HostPolicy<T>& host, const AgentPolicy<T>& agent,
                                               EvalConfig<T> config, const std::vector<std::size_t>& grid) {
  if (grid.empty() || !std::is_sorted(grid.begin(), grid.end())) {
    throw std::invalid_argument("m-grid must be nonempty and ascending");
  }
  std::vector<ConvergencePoint> series;
  for (std::size_t m : grid) {
    config.steps = m;
    const EvalReport r = rho_estimate(host, agent, config);
    ConvergencePoint p{m, r.rho, r.std_error, 0.0};
    if (!series.empty()) p.delta = std::abs(p.rho - series.back().rho);
    series.push_back(p);
  }
  return series;
}

struct RoundResult {
  std::size_t round = 0;
  bool trained_host = false;  // false: an MCTS agent was fitted to the fixed host
  std::string host;
  std::string agent;
  double rho = 0;
};

// Alternates planning roles: odd rounds fix the current host and search for an
// agent against it, even rounds fix that agent and search for a host.
template <class T>
std::vector<RoundResult> alternating_rounds(HostPtr<T> host, AgentPtr<T> agent, std::size_t rounds,
                                            const MctsConfig<T>& mcts, const EvalConfig<T>& config) {
  std::vector<RoundResult> out;
  for (std::size_t r = 1; r <= rounds; ++r) {
    const bool train_host = r % 2 == 0;
    if (train_host) {
      host = std::make_shared<MctsHost<T>>(agent, mcts);
    } else {
      agent = std::make_shared<MctsAgent<T>>(host, mcts);
    }
    EvalConfig<T> cfg = config;
    cfg.seed = derive_seed(config.seed, 0x200000 + r);
    const EvalReport report = rho_estimate(*host, *agent, cfg);
    out.push_back(RoundResult{r, train_host, host->name(), agent->name(), report.rho});
  }
  return out;
}

}  // namespace hironaka
