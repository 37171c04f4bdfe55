#pragma once

#include <cmath>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hironaka/game.hpp"
#include "hironaka/policies.hpp"
#include "hironaka/policy.hpp"

namespace hironaka {

template <class T>
struct MctsConfig {
  unsigned simulations = 100;
  double exploration = std::sqrt(2.0);
  unsigned rollout_depth = 50;
  // Value of a finished game d steps from the root, seen from the host.
  double shaping = 0.99;
  // Rollout policies; null means uniform random legal moves.
  HostPtr<T> rollout_host;
  AgentPtr<T> rollout_agent;
  std::uint64_t seed = 0;

  void validate() const {
    if (simulations == 0 || rollout_depth == 0 || !(exploration > 0) || !(shaping > 0 && shaping <= 1)) {
      throw std::invalid_argument("MCTS parameters must be positive");
    }
  }
};

namespace detail {

template <class T>
struct MctsNode;

template <class T>
struct MctsEdge {
  std::uint32_t move = 0;  // host subset mask or agent coordinate
  unsigned visits = 0;
  double value_sum = 0;    // from the searching side's perspective
  std::vector<std::pair<std::uint32_t, std::unique_ptr<MctsNode<T>>>> outcomes;
};

template <class T>
struct MctsNode {
  GameState<T> state;
  std::optional<HostMove> pending;  // host subset awaiting the agent's reply
  bool terminal = false;
  bool expanded = false;
  unsigned visits = 0;
  std::vector<MctsEdge<T>> edges;
};

// UCT search for one decision of one role against a fixed opponent policy.
template <class T>
class MctsPlanner {
 public:
  MctsPlanner(const VariantRules& rules, const MctsConfig<T>& config, const HostPolicy<T>* opponent_host,
              const AgentPolicy<T>* opponent_agent)
      : rules_(rules),
        config_(config),
        opponent_host_(opponent_host),
        opponent_agent_(opponent_agent),
        rollout_host_(config.rollout_host ? config.rollout_host : std::make_shared<RandomHost<T>>()),
        rollout_agent_(config.rollout_agent ? config.rollout_agent : std::make_shared<RandomAgent<T>>()),
        rng_(config.seed) {
    config_.validate();
  }

  // Returns the index of the most visited root edge.
  std::uint32_t run(MctsNode<T>& root) {
    expand(root);
    if (root.edges.size() == 1) return root.edges.front().move;
    for (unsigned sim = 0; sim < config_.simulations; ++sim) simulate(root, 0, true);
    const MctsEdge<T>* best = &root.edges.front();
    for (const auto& e : root.edges) {
      if (e.visits > best->visits) best = &e;
    }
    return best->move;
  }

 private:
  bool searching_host() const { return opponent_agent_ != nullptr; }

  double perspective(double host_value) const { return searching_host() ? host_value : -host_value; }

  double finished(unsigned depth) const { return std::pow(config_.shaping, static_cast<double>(depth)); }

  void expand(MctsNode<T>& node) {
    if (node.expanded) return;
    node.expanded = true;
    if (node.pending) {
      for (AgentMove i : legal_agent_moves(node.state, *node.pending, rules_)) {
        node.edges.push_back(MctsEdge<T>{static_cast<std::uint32_t>(i.index)});
      }
    } else {
      for (const HostMove& I : legal_host_moves(node.state, rules_)) node.edges.push_back(MctsEdge<T>{I.mask()});
    }
  }

  MctsEdge<T>& select(MctsNode<T>& node) {
    MctsEdge<T>* best = nullptr;
    double best_score = 0;
    const double log_n = std::log(static_cast<double>(std::max(node.visits, 1u)));
    for (auto& e : node.edges) {
      if (e.visits == 0) return e;
      const double score =
          e.value_sum / e.visits + config_.exploration * std::sqrt(log_n / static_cast<double>(e.visits));
      if (!best || score > best_score) {
        best = &e;
        best_score = score;
      }
    }
    return *best;
  }

  // Advances through one edge, letting the opponent respond.
  std::pair<std::uint32_t, std::unique_ptr<MctsNode<T>>> step(const MctsNode<T>& node, const MctsEdge<T>& edge) {
    auto child = std::make_unique<MctsNode<T>>();
    std::uint32_t key = 0;
    if (node.pending) {
      child->state = apply(node.state, *node.pending, AgentMove{edge.move}, rules_);
      child->terminal = is_terminal(child->state, rules_);
      if (!child->terminal) {
        const HostMove next = opponent_host_->decide(child->state, rules_, rng_);
        child->pending = next;
        key = next.mask();
      }
    } else {
      const HostMove I = HostMove::from_mask(edge.move);
      const AgentMove i = opponent_agent_->decide(node.state, I, rules_, rng_);
      child->state = apply(node.state, I, i, rules_);
      child->terminal = is_terminal(child->state, rules_);
      key = static_cast<std::uint32_t>(i.index);
    }
    return {key, std::move(child)};
  }

  double rollout(const MctsNode<T>& node, unsigned depth) {
    GameState<T> state = node.state;
    std::optional<HostMove> pending = node.pending;
    for (unsigned t = 0; t < config_.rollout_depth; ++t) {
      if (is_terminal(state, rules_)) return finished(depth);
      const HostMove I = pending ? *pending : rollout_host_->decide(state, rules_, rng_);
      pending.reset();
      const AgentMove i = rollout_agent_->decide(state, I, rules_, rng_);
      state = apply(state, I, i, rules_);
      ++depth;
    }
    return is_terminal(state, rules_) ? finished(depth) : 0.0;
  }

  // Returns the host-perspective value of one simulation through `node`.
  double simulate(MctsNode<T>& node, unsigned depth, bool is_root) {
    if (node.terminal) {
      ++node.visits;
      return finished(depth);
    }
    if (!is_root && node.visits == 0) {
      ++node.visits;
      return rollout(node, depth);
    }
    if (depth >= config_.rollout_depth) {
      ++node.visits;
      return 0.0;
    }
    expand(node);
    MctsEdge<T>& edge = select(node);
    auto [key, fresh] = step(node, edge);
    MctsNode<T>* child = nullptr;
    for (auto& [k, ptr] : edge.outcomes) {
      if (k == key) child = ptr.get();
    }
    if (!child) {
      edge.outcomes.emplace_back(key, std::move(fresh));
      child = edge.outcomes.back().second.get();
    }
    const double value = simulate(*child, depth + 1, false);
    ++edge.visits;
    edge.value_sum += perspective(value);
    ++node.visits;
    return value;
  }

  VariantRules rules_;
  MctsConfig<T> config_;
  const HostPolicy<T>* opponent_host_;
  const AgentPolicy<T>* opponent_agent_;
  HostPtr<T> rollout_host_;
  AgentPtr<T> rollout_agent_;
  Rng rng_;
};

}  // namespace detail

// Host decision by UCT against a fixed agent.
template <class T>
HostMove mcts_decide(const GameState<T>& state, const AgentPolicy<T>& opponent, const VariantRules& rules,
                     const MctsConfig<T>& config) {
  if (is_terminal(state, rules)) throw TerminalState();
  detail::MctsNode<T> root{state};
  detail::MctsPlanner<T> planner(rules, config, nullptr, &opponent);
  return HostMove::from_mask(planner.run(root));
}

// Agent reply to host subset I by UCT against a fixed host.
template <class T>
AgentMove mcts_decide(const GameState<T>& state, const HostMove& I, const HostPolicy<T>& opponent,
                      const VariantRules& rules, const MctsConfig<T>& config) {
  if (is_terminal(state, rules)) throw TerminalState();
  detail::MctsNode<T> root{state, I};
  detail::MctsPlanner<T> planner(rules, config, &opponent, nullptr);
  return AgentMove{planner.run(root)};
}

// Plans every move with a fresh search; the planner's seed is drawn from the
// caller's generator so results are reproducible per episode.
template <class T>
class MctsHost final : public HostPolicy<T> {
 public:
  MctsHost(AgentPtr<T> opponent, MctsConfig<T> config) : opponent_(std::move(opponent)), config_(std::move(config)) {
    config_.validate();
  }
  std::string name() const override { return "mcts"; }
  HostMove decide(const GameState<T>& s, const VariantRules& r, Rng& rng) const override {
    MctsConfig<T> c = config_;
    c.seed = rng();
    return mcts_decide(s, *opponent_, r, c);
  }

 private:
  AgentPtr<T> opponent_;
  MctsConfig<T> config_;
};

template <class T>
class MctsAgent final : public AgentPolicy<T> {
 public:
  MctsAgent(HostPtr<T> opponent, MctsConfig<T> config) : opponent_(std::move(opponent)), config_(std::move(config)) {
    config_.validate();
  }
  std::string name() const override { return "mcts"; }
  AgentMove decide(const GameState<T>& s, const HostMove& I, const VariantRules& r, Rng& rng) const override {
    MctsConfig<T> c = config_;
    c.seed = rng();
    return mcts_decide(s, I, *opponent_, r, c);
  }

 private:
  HostPtr<T> opponent_;
  MctsConfig<T> config_;
};

}  // namespace hironaka
