#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

#include "hironaka/game.hpp"
#include "hironaka/policy.hpp"

namespace hironaka {

// ---------------------------------------------------------------------------
// Policy trees

struct TreeEdge {
  AgentMove move;
  std::size_t child = 0;
};

template <class T>
struct TreeNode {
  GameState<T> state;
  std::size_t depth = 0;
  std::optional<std::size_t> parent;
  bool terminal = false;
  bool smooth = false;
  bool loop = false;          // position already seen on the path from the root
  bool depth_capped = false;  // reached the depth cap without terminating
  std::optional<HostMove> host_move;
  std::vector<TreeEdge> edges;

  bool is_leaf() const { return edges.empty(); }
};

template <class T>
struct GameTree {
  std::vector<TreeNode<T>> nodes;  // nodes[0] is the root, breadth-first order

  const TreeNode<T>& root() const { return nodes.front(); }
  std::size_t size() const { return nodes.size(); }

  std::size_t max_depth() const {
    std::size_t d = 0;
    for (const auto& n : nodes) d = std::max(d, n.depth);
    return d;
  }

  bool all_leaves_terminal() const {
    return std::all_of(nodes.begin(), nodes.end(), [](const TreeNode<T>& n) { return !n.is_leaf() || n.terminal; });
  }
};

// Expands the full reaction tree of a host: one host query per live node and
// one edge per legal agent reply.
template <class T>
GameTree<T> build_policy_tree(const GameState<T>& root, const HostPolicy<T>& host, const VariantRules& rules,
                              std::size_t depth_cap, Rng& rng) {
  if (depth_cap < 1) throw std::invalid_argument("depth cap must be at least 1");
  GameTree<T> tree;
  tree.nodes.push_back(TreeNode<T>{root});
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    const std::size_t id = queue.front();
    queue.pop_front();
    {
      auto& node = tree.nodes[id];
      node.smooth = is_smooth_marker(node.state);
      node.terminal = is_terminal(node.state, rules);
      if (node.terminal) continue;
      for (auto up = node.parent; up; up = tree.nodes[*up].parent) {
        if (tree.nodes[*up].state.same_position(node.state)) {
          node.loop = true;
          break;
        }
      }
      if (node.loop) continue;
      if (node.depth >= depth_cap) {
        node.depth_capped = true;
        continue;
      }
    }
    const GameState<T> state = tree.nodes[id].state;
    const HostMove I = host.decide(state, rules, rng);
    tree.nodes[id].host_move = I;
    for (AgentMove i : legal_agent_moves(state, I, rules)) {
      TreeNode<T> child{apply(state, I, i, rules)};
      child.depth = tree.nodes[id].depth + 1;
      child.parent = id;
      tree.nodes.push_back(std::move(child));
      tree.nodes[id].edges.push_back(TreeEdge{i, tree.nodes.size() - 1});
      queue.push_back(tree.nodes.size() - 1);
    }
  }
  return tree;
}

// ---------------------------------------------------------------------------
// Exhaustive minimax

template <class T>
struct SolveResult {
  // Minimal worst-case number of steps to termination; empty when it exceeds
  // the depth cap.
  std::optional<unsigned> value;
  unsigned depth_cap = 0;
  std::unordered_map<PositionKey<T>, HostMove> strategy;
  std::size_t explored = 0;

  bool bounded() const { return value.has_value(); }
};

// Memoized depth-bounded minimax over host subsets (min) and agent replies
// (max). Facts "value > b" and "value = v" are both budget-independent, so the
// table is shared across iterative-deepening passes.
template <class T>
class MinimaxSolver {
 public:
  explicit MinimaxSolver(VariantRules rules) : rules_(rules) {}

  SolveResult<T> solve(const GameState<T>& root, unsigned depth_cap) {
    if (depth_cap < 1) throw std::invalid_argument("depth cap must be at least 1");
    SolveResult<T> result;
    result.depth_cap = depth_cap;
    if (is_terminal(root, rules_)) {
      result.value = 0;
      return result;
    }
    for (unsigned budget = 1; budget <= depth_cap; ++budget) {
      const unsigned v = search(root, budget);
      if (v <= budget) {
        result.value = v;
        break;
      }
    }
    result.explored = memo_.size();
    if (result.value) extract_strategy(root, result.strategy);
    return result;
  }

  // Exact value if it is at most `budget`, otherwise budget + 1.
  unsigned search(const GameState<T>& state, unsigned budget) {
    if (is_terminal(state, rules_)) return 0;
    Entry& entry = memo_[PositionKey<T>(state)];
    if (entry.exact) return *entry.exact <= budget ? *entry.exact : budget + 1;
    if (entry.lower > budget) return budget + 1;
    if (budget == 0) {
      entry.lower = std::max(entry.lower, 1u);
      return 1;
    }
    unsigned best = budget + 1;
    std::optional<HostMove> best_move;
    for (const HostMove& I : legal_host_moves(state, rules_)) {
      if (best < 2) break;
      const unsigned child_budget = best - 2;
      unsigned worst = 0;
      bool within = true;
      for (AgentMove i : legal_agent_moves(state, I, rules_)) {
        const unsigned v = search(apply(state, I, i, rules_), child_budget);
        if (v > child_budget) {
          within = false;
          break;
        }
        worst = std::max(worst, v);
      }
      if (within) {
        best = worst + 1;
        best_move = I;
      }
    }
    // `entry` stays valid: unordered_map never moves its nodes.
    if (best <= budget) {
      entry.exact = best;
      entry.best = *best_move;
    } else {
      entry.lower = std::max(entry.lower, budget + 1);
    }
    return best;
  }

  std::size_t table_size() const { return memo_.size(); }

 private:
  struct Entry {
    unsigned lower = 0;
    std::optional<unsigned> exact;
    HostMove best;
  };

  void extract_strategy(const GameState<T>& root, std::unordered_map<PositionKey<T>, HostMove>& out) {
    std::deque<GameState<T>> pending{root};
    while (!pending.empty()) {
      GameState<T> s = std::move(pending.front());
      pending.pop_front();
      if (is_terminal(s, rules_)) continue;
      PositionKey<T> key(s);
      if (out.count(key)) continue;
      const Entry& e = memo_.at(key);
      out.emplace(key, e.best);
      for (AgentMove i : legal_agent_moves(s, e.best, rules_)) pending.push_back(apply(s, e.best, i, rules_));
    }
  }

  VariantRules rules_;
  std::unordered_map<PositionKey<T>, Entry> memo_;
};

template <class T>
SolveResult<T> minimax_solve(const GameState<T>& root, const VariantRules& rules, unsigned depth_cap) {
  return MinimaxSolver<T>(rules).solve(root, depth_cap);
}

// Replays a solved principal strategy as a host policy.
template <class T>
class StrategyHost final : public HostPolicy<T> {
 public:
  explicit StrategyHost(std::unordered_map<PositionKey<T>, HostMove> table) : table_(std::move(table)) {}
  std::string name() const override { return "solver"; }
  HostMove decide(const GameState<T>& state, const VariantRules&, Rng&) const override {
    auto it = table_.find(PositionKey<T>(state));
    if (it == table_.end()) throw IllegalMove("position not covered by the solved strategy");
    return it->second;
  }

 private:
  std::unordered_map<PositionKey<T>, HostMove> table_;
};

// ---------------------------------------------------------------------------
// Truncated survival value

// min(true minimax length, depth + 1): how long the game survives against a
// perfect host, looking at most `depth` exchanges ahead. Thread-safe cache.
template <class T>
class SurvivalEvaluator {
 public:
  explicit SurvivalEvaluator(VariantRules rules) : rules_(rules) {}

  unsigned value(const GameState<T>& state, unsigned depth) const {
    if (is_terminal(state, rules_)) return 0;
    if (depth == 0) return 1;
    Key key{PositionKey<T>(state), depth};
    {
      std::lock_guard lock(mutex_);
      if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    }
    unsigned best = depth + 1;
    for (const HostMove& I : legal_host_moves(state, rules_)) {
      unsigned worst = 0;
      for (AgentMove i : legal_agent_moves(state, I, rules_)) {
        worst = std::max(worst, value(apply(state, I, i, rules_), depth - 1));
        if (worst + 1 >= best) break;
      }
      best = std::min(best, worst + 1);
      if (best == 1) break;
    }
    std::lock_guard lock(mutex_);
    cache_.emplace(std::move(key), best);
    return best;
  }

 private:
  struct Key {
    PositionKey<T> position;
    unsigned depth;
    friend bool operator==(const Key&, const Key&) = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      std::size_t h = PositionKeyHash<T>{}(k.position);
      hash_combine(h, k.depth);
      return h;
    }
  };

  VariantRules rules_;
  mutable std::mutex mutex_;
  mutable std::unordered_map<Key, unsigned, KeyHash> cache_;
};

}  // namespace hironaka
