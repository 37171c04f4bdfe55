#pragma once

#include <algorithm>
#include <memory>
#include <string>
#include <vector>

#include "hironaka/errors.hpp"
#include "hironaka/lattice.hpp"
#include "hironaka/policy.hpp"
#include "hironaka/search.hpp"

namespace hironaka {

// ---------------------------------------------------------------------------
// Hosts

// Full coordinate set whenever legal, else the largest legal subset.
template <class T>
HostMove choose_all_host(const GameState<T>& state, const VariantRules& rules) {
  const HostMove full = HostMove::full(state.dim());
  if (is_terminal(state, rules)) throw TerminalState();
  if (is_legal_host_move(state, full, rules)) return full;
  const auto moves = legal_host_moves(state, rules);
  if (moves.empty()) throw IllegalMove("no legal host move");
  std::size_t largest = 0;
  for (const auto& I : moves) largest = std::max(largest, I.size());
  return *std::find_if(moves.begin(), moves.end(), [&](const HostMove& I) { return I.size() == largest; });
}

// Zeillinger's pair: I = {k, l} with k the first minimal and l the first
// maximal entry of the characteristic vector. Each chart strictly shrinks the
// chosen pair's (length, extremes) invariant.
template <class T>
HostMove zeillinger_host(const GameState<T>& state, const VariantRules& rules) {
  if (is_terminal(state, rules)) throw TerminalState();
  const std::vector<T> v = characteristic_vector(state.config);
  const auto k = static_cast<std::size_t>(std::min_element(v.begin(), v.end()) - v.begin());
  const auto l = static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
  const HostMove pair = k != l ? HostMove{k, l} : HostMove{0, 1};
  if (is_legal_host_move(state, pair, rules)) return pair;

  // Sum-legality can reject the preferred pair; fall back to the legal pair
  // with the widest gap in v, then to the smallest legal subset.
  const auto moves = legal_host_moves(state, rules);
  std::optional<HostMove> best;
  T best_gap = 0;
  for (const auto& I : moves) {
    if (I.size() != 2) continue;
    const auto idx = I.indices();
    T gap = v[idx[0]] > v[idx[1]] ? T(v[idx[0]] - v[idx[1]]) : T(v[idx[1]] - v[idx[0]]);
    if (!best || gap > best_gap) {
      best = I;
      best_gap = std::move(gap);
    }
  }
  if (best) return *best;
  if (moves.empty()) throw IllegalMove("no legal host move");
  return moves.front();
}

// Maximal hitting set: every coordinate that is positive on some Newton vertex.
template <class T>
HostMove spivakovsky_style_host(const GameState<T>& state, const VariantRules& rules) {
  if (is_terminal(state, rules)) throw TerminalState();
  const PointConfiguration<T> vertices = newton_vertices(state.config);
  std::uint32_t mask = 0;
  for (const auto& v : vertices) {
    const std::uint32_t s = support_mask(v);
    if (s == 0) throw NoHittingSet("a Newton vertex is the origin");
    mask |= s;
  }
  HostMove I = HostMove::from_mask(mask);
  for (std::size_t j = 0; I.size() < 2 && j < state.dim(); ++j) {
    if (!I.contains(j)) I.insert(j);
  }
  if (is_legal_host_move(state, I, rules)) return I;
  return choose_all_host(state, rules);
}

// Uniform choice among minimum-size hitting sets, padded to two coordinates
// with a uniformly chosen extra one.
template <class T>
HostMove random_hitting_host(const GameState<T>& state, const VariantRules& rules, Rng& rng) {
  if (is_terminal(state, rules)) throw TerminalState();
  const auto sets = minimal_hitting_sets(state.config);
  HostMove I = sets[uniform_index(rng, sets.size())];
  if (I.size() < 2) {
    std::vector<std::size_t> rest;
    for (std::size_t j = 0; j < state.dim(); ++j) {
      if (!I.contains(j)) rest.push_back(j);
    }
    I.insert(rest[uniform_index(rng, rest.size())]);
  }
  if (is_legal_host_move(state, I, rules)) return I;

  // Rational states can have hitting sets whose sums stay below one.
  const auto moves = legal_host_moves(state, rules);
  if (moves.empty()) throw IllegalMove("no legal host move");
  std::vector<HostMove> smallest;
  for (const auto& m : moves) {
    if (m.size() == moves.front().size()) smallest.push_back(m);
  }
  return smallest[uniform_index(rng, smallest.size())];
}

template <class T>
HostMove random_host(const GameState<T>& state, const VariantRules& rules, Rng& rng) {
  const auto moves = legal_host_moves(state, rules);
  if (moves.empty()) throw IllegalMove("no legal host move");
  return moves[uniform_index(rng, moves.size())];
}

template <class T>
class ChooseAllHost final : public HostPolicy<T> {
 public:
  std::string name() const override { return "choose-all"; }
  HostMove decide(const GameState<T>& s, const VariantRules& r, Rng&) const override { return choose_all_host(s, r); }
};

template <class T>
class ZeillingerHost final : public HostPolicy<T> {
 public:
  std::string name() const override { return "zeillinger"; }
  HostMove decide(const GameState<T>& s, const VariantRules& r, Rng&) const override { return zeillinger_host(s, r); }
};

template <class T>
class SpivakovskyHost final : public HostPolicy<T> {
 public:
  std::string name() const override { return "spivakovsky"; }
  HostMove decide(const GameState<T>& s, const VariantRules& r, Rng&) const override {
    return spivakovsky_style_host(s, r);
  }
};

template <class T>
class RandomHittingHost final : public HostPolicy<T> {
 public:
  std::string name() const override { return "random-hitting"; }
  HostMove decide(const GameState<T>& s, const VariantRules& r, Rng& rng) const override {
    return random_hitting_host(s, r, rng);
  }
};

template <class T>
class RandomHost final : public HostPolicy<T> {
 public:
  std::string name() const override { return "random"; }
  HostMove decide(const GameState<T>& s, const VariantRules& r, Rng& rng) const override {
    return random_host(s, r, rng);
  }
};

// ---------------------------------------------------------------------------
// Agents

template <class T>
class ChooseFirstAgent final : public AgentPolicy<T> {
 public:
  std::string name() const override { return "choose-first"; }
  AgentMove decide(const GameState<T>& s, const HostMove& I, const VariantRules& r, Rng&) const override {
    return legal_agent_moves(s, I, r).front();
  }
};

template <class T>
class ChooseLastAgent final : public AgentPolicy<T> {
 public:
  std::string name() const override { return "choose-last"; }
  AgentMove decide(const GameState<T>& s, const HostMove& I, const VariantRules& r, Rng&) const override {
    return legal_agent_moves(s, I, r).back();
  }
};

template <class T>
class RandomAgent final : public AgentPolicy<T> {
 public:
  std::string name() const override { return "random"; }
  AgentMove decide(const GameState<T>& s, const HostMove& I, const VariantRules& r, Rng& rng) const override {
    const auto moves = legal_agent_moves(s, I, r);
    return moves[uniform_index(rng, moves.size())];
  }
};

// Adversarial baseline: the reply whose truncated minimax survival value is
// largest, lowest index on ties.
template <class T>
class LookaheadAgent final : public AgentPolicy<T> {
 public:
  static constexpr unsigned kDefaultDepth = 4;

  explicit LookaheadAgent(VariantRules rules, unsigned depth = kDefaultDepth)
      : depth_(depth), evaluator_(std::make_shared<SurvivalEvaluator<T>>(rules)) {
    if (depth_ < 1) throw std::invalid_argument("lookahead depth must be at least 1");
  }

  std::string name() const override { return "lookahead"; }
  unsigned depth() const { return depth_; }

  AgentMove decide(const GameState<T>& s, const HostMove& I, const VariantRules& r, Rng&) const override {
    const auto moves = legal_agent_moves(s, I, r);
    AgentMove best = moves.front();
    unsigned best_value = 0;
    bool first = true;
    for (AgentMove i : moves) {
      const unsigned v = evaluator_->value(apply(s, I, i, r), depth_ - 1);
      if (first || v > best_value) {
        best = i;
        best_value = v;
        first = false;
      }
    }
    return best;
  }

 private:
  unsigned depth_;
  std::shared_ptr<SurvivalEvaluator<T>> evaluator_;
};

}  // namespace hironaka
