#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "hironaka/mcts.hpp"
#include "hironaka/policies.hpp"
#include "hironaka/wire.hpp"

namespace hironaka {

class UnknownPolicy : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline const std::vector<std::string>& host_policy_names() {
  static const std::vector<std::string> names{"choose-all", "zeillinger", "spivakovsky", "random-hitting",
                                              "random",     "mcts",       "solver"};
  return names;
}

inline const std::vector<std::string>& agent_policy_names() {
  static const std::vector<std::string> names{"choose-first", "choose-last", "random", "lookahead", "mcts"};
  return names;
}

// Extra knobs for the policies that need them.
template <class T>
struct PolicyOptions {
  MctsConfig<T> mcts;
  AgentPtr<T> mcts_agent_model;  // opponent assumed by an MCTS host; random if null
  HostPtr<T> mcts_host_model;    // opponent assumed by an MCTS agent; random if null
  unsigned lookahead_depth = LookaheadAgent<T>::kDefaultDepth;
  std::shared_ptr<const HostPolicy<T>> solver;  // prebuilt strategy host for "solver"
};

inline bool is_external(const std::string& name) { return name.rfind("ext:", 0) == 0; }

template <class T>
HostPtr<T> make_host(const std::string& name, Variant variant, const PolicyOptions<T>& opt = {}) {
  if (name == "choose-all") return std::make_shared<ChooseAllHost<T>>();
  if (name == "zeillinger") return std::make_shared<ZeillingerHost<T>>();
  if (name == "spivakovsky") return std::make_shared<SpivakovskyHost<T>>();
  if (name == "random-hitting") return std::make_shared<RandomHittingHost<T>>();
  if (name == "random") return std::make_shared<RandomHost<T>>();
  if (name == "mcts") {
    AgentPtr<T> model = opt.mcts_agent_model ? opt.mcts_agent_model : std::make_shared<RandomAgent<T>>();
    return std::make_shared<MctsHost<T>>(model, opt.mcts);
  }
  if (name == "solver") {
    if (!opt.solver) throw UnknownPolicy("the solver host needs a solved strategy");
    return opt.solver;
  }
  if (is_external(name)) return std::make_shared<ExternalHostPolicy<T>>(name.substr(4), variant);
  throw UnknownPolicy("unknown host policy '" + name + "'");
}

template <class T>
AgentPtr<T> make_agent(const std::string& name, Variant variant, const PolicyOptions<T>& opt = {}) {
  if (name == "choose-first") return std::make_shared<ChooseFirstAgent<T>>();
  if (name == "choose-last") return std::make_shared<ChooseLastAgent<T>>();
  if (name == "random") return std::make_shared<RandomAgent<T>>();
  if (name == "lookahead") return std::make_shared<LookaheadAgent<T>>(VariantRules::of(variant), opt.lookahead_depth);
  if (name == "mcts") {
    HostPtr<T> model = opt.mcts_host_model ? opt.mcts_host_model : std::make_shared<RandomHost<T>>();
    return std::make_shared<MctsAgent<T>>(model, opt.mcts);
  }
  if (is_external(name)) return std::make_shared<ExternalAgentPolicy<T>>(name.substr(4), variant);
  throw UnknownPolicy("unknown agent policy '" + name + "'");
}

}  // namespace hironaka
