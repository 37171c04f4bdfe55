#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "hironaka/game.hpp"

namespace hironaka {

using Rng = std::mt19937_64;

// splitmix64 finalizer; derives independent seeds for workers and cells.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Uniform index in [0, n). Uses rejection on raw engine output so results do
// not depend on the standard library's distribution implementation.
inline std::size_t uniform_index(Rng& rng, std::size_t n) {
  const std::uint64_t bound = n;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return static_cast<std::size_t>(x % bound);
}

template <class T>
class HostPolicy {
 public:
  virtual ~HostPolicy() = default;
  virtual std::string name() const = 0;
  virtual HostMove decide(const GameState<T>& state, const VariantRules& rules, Rng& rng) const = 0;
};

template <class T>
class AgentPolicy {
 public:
  virtual ~AgentPolicy() = default;
  virtual std::string name() const = 0;
  virtual AgentMove decide(const GameState<T>& state, const HostMove& I, const VariantRules& rules,
                           Rng& rng) const = 0;
};

template <class T>
using HostPtr = std::shared_ptr<const HostPolicy<T>>;
template <class T>
using AgentPtr = std::shared_ptr<const AgentPolicy<T>>;

template <class T>
struct Episode {
  std::vector<EpisodeStep<T>> steps;
  bool terminated = false;
};

// Plays host against agent until the state is terminal or `max_steps`
// exchanges have happened.
template <class T>
Episode<T> play_episode(GameState<T> state, const HostPolicy<T>& host, const AgentPolicy<T>& agent,
                        const VariantRules& rules, Rng& rng, std::size_t max_steps) {
  Episode<T> episode;
  episode.terminated = is_terminal(state, rules);
  while (!episode.terminated && episode.steps.size() < max_steps) {
    const HostMove I = host.decide(state, rules, rng);
    const AgentMove i = agent.decide(state, I, rules, rng);
    episode.steps.push_back(make_step(state, I, i, rules));
    state = episode.steps.back().after;
    episode.terminated = episode.steps.back().terminal;
  }
  return episode;
}

}  // namespace hironaka
