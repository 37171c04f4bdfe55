#pragma once

#include <algorithm>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hironaka/errors.hpp"
#include "hironaka/lattice.hpp"

namespace hironaka {

enum class Variant { basic, basic_shifted, hauser, polyhedra, thom };
enum class PruningMode { domination, hull_vertices };
enum class ShiftMode { none, axes, diagonal };
enum class TerminalRule { singleton, some_point_sum_at_most_one };
enum class HostLegality { size_at_least_two, size_and_sum_at_least_one };
enum class AgentLegality { any_in_subset, weight_minimal_in_subset };
enum class ScalarField { integer, rational };

struct VariantRules {
  Variant variant = Variant::basic;
  int transform_offset = 0;
  PruningMode pruning = PruningMode::domination;
  ShiftMode shift = ShiftMode::none;
  TerminalRule terminal = TerminalRule::singleton;
  HostLegality host_legality = HostLegality::size_at_least_two;
  AgentLegality agent_legality = AgentLegality::any_in_subset;
  ScalarField field = ScalarField::integer;
  bool uses_weights = false;

  static VariantRules of(Variant v) {
    VariantRules r;
    r.variant = v;
    switch (v) {
      case Variant::basic:
        break;
      case Variant::basic_shifted:
        r.shift = ShiftMode::axes;
        break;
      case Variant::hauser:
        r.pruning = PruningMode::hull_vertices;
        break;
      case Variant::polyhedra:
        r.transform_offset = -1;
        r.pruning = PruningMode::hull_vertices;
        r.terminal = TerminalRule::some_point_sum_at_most_one;
        r.host_legality = HostLegality::size_and_sum_at_least_one;
        r.field = ScalarField::rational;
        break;
      case Variant::thom:
        r.pruning = PruningMode::hull_vertices;
        r.shift = ShiftMode::diagonal;
        r.host_legality = HostLegality::size_and_sum_at_least_one;
        r.agent_legality = AgentLegality::weight_minimal_in_subset;
        r.uses_weights = true;
        break;
    }
    return r;
  }

  friend bool operator==(const VariantRules&, const VariantRules&) = default;
};

inline std::string_view variant_name(Variant v) {
  switch (v) {
    case Variant::basic: return "basic";
    case Variant::basic_shifted: return "basic-shifted";
    case Variant::hauser: return "hauser";
    case Variant::polyhedra: return "polyhedra";
    case Variant::thom: return "thom";
  }
  return "basic";
}

inline Variant parse_variant(std::string_view name) {
  for (Variant v : {Variant::basic, Variant::basic_shifted, Variant::hauser, Variant::polyhedra, Variant::thom}) {
    if (variant_name(v) == name) return v;
  }
  throw std::invalid_argument("unknown variant '" + std::string(name) + "'");
}

using HostMove = CoordinateSubset;

struct AgentMove {
  std::size_t index = 0;
  friend auto operator<=>(const AgentMove&, const AgentMove&) = default;
};

using Weights = std::vector<std::int64_t>;

template <class T>
struct GameState {
  PointConfiguration<T> config;
  std::optional<Weights> weights;
  std::uint64_t step = 0;

  std::size_t dim() const { return config.dim(); }

  // Equality and hashing ignore the step counter: two states at different
  // times are the same position.
  bool same_position(const GameState& other) const {
    return config == other.config && weights == other.weights;
  }

  std::size_t position_hash() const {
    std::size_t h = config.hash();
    if (weights) {
      for (auto w : *weights) hash_combine(h, std::hash<std::int64_t>{}(w));
      hash_combine(h, 1);
    }
    return h;
  }

  friend bool operator==(const GameState&, const GameState&) = default;
};

// Hashable key of a position (points and weights, not the step count).
template <class T>
struct PositionKey {
  PointConfiguration<T> config;
  std::optional<Weights> weights;

  explicit PositionKey(const GameState<T>& s) : config(s.config), weights(s.weights) {}
  friend bool operator==(const PositionKey&, const PositionKey&) = default;
};

template <class T>
struct PositionKeyHash {
  std::size_t operator()(const PositionKey<T>& k) const {
    std::size_t h = k.config.hash();
    if (k.weights) {
      for (auto w : *k.weights) hash_combine(h, std::hash<std::int64_t>{}(w));
      hash_combine(h, 1);
    }
    return h;
  }
};

// Builds a start state, checking the weight vector against the rules. Thom
// weights default to all ones.
template <class T>
GameState<T> make_state(PointConfiguration<T> config, const VariantRules& rules,
                        std::optional<Weights> weights = std::nullopt, std::uint64_t step = 0) {
  if (rules.uses_weights) {
    if (!weights) weights = Weights(config.dim(), 1);
    if (weights->size() != config.dim()) throw InvalidConfiguration("weight vector has wrong length");
    for (auto w : *weights) {
      if (w < 0) throw InvalidConfiguration("negative weight");
    }
  } else if (weights) {
    throw InvalidConfiguration("variant does not use weights");
  }
  return GameState<T>{std::move(config), std::move(weights), step};
}

template <class T>
bool is_terminal(const GameState<T>& state, const VariantRules& rules) {
  if (rules.terminal == TerminalRule::singleton) return state.config.size() == 1;
  for (const auto& p : state.config) {
    if (coordinate_sum(p) <= 1) return true;
  }
  return false;
}

// Colours the earliest smooth charts in trees; never ends a game by itself.
template <class T>
bool is_smooth_marker(const GameState<T>& state) {
  for (const auto& p : state.config) {
    if (coordinate_sum(p) <= 1) return true;
  }
  return false;
}

template <class T>
bool is_legal_host_move(const GameState<T>& state, const HostMove& I, const VariantRules& rules) {
  if (I.size() < 2 || I.bound() > state.dim()) return false;
  if (rules.host_legality == HostLegality::size_and_sum_at_least_one) {
    for (const auto& p : state.config) {
      if (subset_sum(p, I) < 1) return false;
    }
  }
  return true;
}

template <class T>
std::vector<HostMove> legal_host_moves(const GameState<T>& state, const VariantRules& rules) {
  if (is_terminal(state, rules)) throw TerminalState();
  const std::size_t n = state.dim();
  std::vector<HostMove> moves;
  const std::uint32_t limit = std::uint32_t{1} << n;
  for (std::uint32_t mask = 0; mask < limit; ++mask) {
    if (std::popcount(mask) < 2) continue;
    HostMove I = HostMove::from_mask(mask);
    if (is_legal_host_move(state, I, rules)) moves.push_back(I);
  }
  std::sort(moves.begin(), moves.end());
  return moves;
}

template <class T>
std::vector<AgentMove> legal_agent_moves(const GameState<T>& state, const HostMove& I, const VariantRules& rules) {
  std::vector<AgentMove> moves;
  if (rules.agent_legality == AgentLegality::weight_minimal_in_subset && state.weights) {
    const auto& w = *state.weights;
    std::int64_t best = 0;
    bool first = true;
    for (std::size_t i : I.indices()) {
      if (i >= w.size()) continue;
      if (first || w[i] < best) best = w[i];
      first = false;
    }
    for (std::size_t i : I.indices()) {
      if (i < w.size() && w[i] == best) moves.push_back(AgentMove{i});
    }
    return moves;
  }
  for (std::size_t i : I.indices()) {
    if (i < state.dim()) moves.push_back(AgentMove{i});
  }
  return moves;
}

// The coordinate change alone: coordinate i of every point becomes the sum of
// the coordinates in I plus `offset`. Returns the raw image without pruning.
template <class T>
std::vector<Point<T>> transform_points(const PointConfiguration<T>& S, const HostMove& I, std::size_t i,
                                       int offset = 0) {
  std::vector<Point<T>> out(S.points());
  for (auto& p : out) p[i] = subset_sum(p, I) + offset;
  return out;
}

template <class T>
GameState<T> apply(const GameState<T>& state, const HostMove& I, AgentMove i, const VariantRules& rules) {
  if (is_terminal(state, rules)) throw TerminalState();
  if (!is_legal_host_move(state, I, rules)) throw IllegalMove("illegal host move " + I.to_string());
  const auto agent_moves = legal_agent_moves(state, I, rules);
  if (std::find(agent_moves.begin(), agent_moves.end(), i) == agent_moves.end()) {
    throw IllegalMove("illegal agent move " + std::to_string(i.index) + " for " + I.to_string());
  }

  PointConfiguration<T> next(transform_points(state.config, I, i.index, rules.transform_offset));
  next = rules.pruning == PruningMode::domination ? remove_dominated(next) : newton_vertices(next);
  switch (rules.shift) {
    case ShiftMode::none: break;
    case ShiftMode::axes: next = shift_to_axes(next); break;
    case ShiftMode::diagonal: next = diagonal_shift(next); break;
  }

  std::optional<Weights> weights = state.weights;
  if (rules.uses_weights && weights) {
    const std::int64_t wi = (*weights)[i.index];
    for (std::size_t j : I.indices()) {
      if (j != i.index) (*weights)[j] -= wi;
    }
  }
  return GameState<T>{std::move(next), std::move(weights), state.step + 1};
}

// One host/agent exchange with the MDP rewards attached.
template <class T>
struct EpisodeStep {
  GameState<T> before;
  HostMove host_move;
  AgentMove agent_move;
  GameState<T> after;
  int agent_reward = 0;  // -1 when `after` is terminal
  int host_reward = 0;   // +1 when `after` is terminal
  bool terminal = false;
};

template <class T>
EpisodeStep<T> make_step(const GameState<T>& before, const HostMove& I, AgentMove i, const VariantRules& rules) {
  EpisodeStep<T> step{before, I, i, apply(before, I, i, rules)};
  step.terminal = is_terminal(step.after, rules);
  step.agent_reward = step.terminal ? -1 : 0;
  step.host_reward = step.terminal ? 1 : 0;
  return step;
}

}  // namespace hironaka

template <class T>
struct std::hash<hironaka::PositionKey<T>> : hironaka::PositionKeyHash<T> {};
