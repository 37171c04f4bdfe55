// Command-line front end: play, tree, solve, eval.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "hironaka.hpp"

using namespace hironaka;

namespace {

struct Common {
  std::string state_file;
  std::string variant;  // overrides the file's variant when set
  std::uint64_t seed = 0;
};

StateDocument load(const Common& c) {
  StateDocument doc = load_state_document(c.state_file);
  if (!c.variant.empty()) {
    doc.variant = parse_variant(c.variant);
    if (doc.rules().uses_weights && !doc.weights) doc.weights = Weights(doc.dim, 1);
    if (!doc.rules().uses_weights) doc.weights.reset();
  }
  return doc;
}

template <class F>
int dispatch(const StateDocument& doc, F&& f) {
  if (doc.rules().field == ScalarField::rational) return f(to_state<Rational>(doc));
  return f(to_state<Integer>(doc));
}

void print_state(std::ostream& out, const auto& state) {
  for (const auto& p : state.config) out << "  " << to_string(p) << "\n";
  if (state.weights) {
    out << "  weights:";
    for (auto w : *state.weights) out << " " << w;
    out << "\n";
  }
}

std::optional<HostMove> parse_subset(const std::string& line) {
  std::string cleaned = line;
  for (char& c : cleaned) {
    if (c == ',' || c == '{' || c == '}') c = ' ';
  }
  std::istringstream in(cleaned);
  HostMove I;
  std::size_t j = 0;
  try {
    while (in >> j) I.insert(j);
  } catch (const InvalidConfiguration&) {
    return std::nullopt;
  }
  if (!in.eof() || I.empty()) return std::nullopt;
  return I;
}

// ---------------------------------------------------------------------------

struct PlayArgs {
  Common common;
  std::string role = "agent";
  std::string opponent;
};

int cmd_play(const PlayArgs& a) {
  const StateDocument doc = load(a.common);
  const VariantRules rules = doc.rules();
  return dispatch(doc, [&]<class T>(GameState<T> state) {
    Rng rng(a.common.seed);
    PolicyOptions<T> opt;
    HostPtr<T> host;
    AgentPtr<T> agent;
    if (a.role == "agent") {
      host = make_host<T>(a.opponent.empty() ? "choose-all" : a.opponent, doc.variant, opt);
    } else {
      agent = make_agent<T>(a.opponent.empty() ? "choose-first" : a.opponent, doc.variant, opt);
    }
    std::string line;
    std::uint64_t steps = 0;
    while (!is_terminal(state, rules)) {
      std::cout << "step " << steps << ", points:\n";
      print_state(std::cout, state);
      HostMove I;
      if (host) {
        I = host->decide(state, rules, rng);
        std::cout << "host chooses " << I.to_string() << "\n";
        const auto replies = legal_agent_moves(state, I, rules);
        std::cout << "your replies:";
        for (AgentMove i : replies) std::cout << " " << i.index;
        std::cout << "\n";
        AgentMove choice;
        for (;;) {
          std::cout << "> " << std::flush;
          if (!std::getline(std::cin, line) || line == "quit" || line == "q") {
            std::cout << "quit after " << steps << " steps\n";
            return 0;
          }
          std::istringstream in(line);
          std::size_t idx = 0;
          if (in >> idx && std::find(replies.begin(), replies.end(), AgentMove{idx}) != replies.end()) {
            choice = AgentMove{idx};
            break;
          }
          std::cout << "illegal reply, try again\n";
        }
        state = apply(state, I, choice, rules);
      } else {
        const auto moves = legal_host_moves(state, rules);
        std::cout << "your moves:";
        for (const auto& m : moves) std::cout << " " << m.to_string();
        std::cout << "\n";
        for (;;) {
          std::cout << "> " << std::flush;
          if (!std::getline(std::cin, line) || line == "quit" || line == "q") {
            std::cout << "quit after " << steps << " steps\n";
            return 0;
          }
          const auto parsed = parse_subset(line);
          if (parsed && std::find(moves.begin(), moves.end(), *parsed) != moves.end()) {
            I = *parsed;
            break;
          }
          std::cout << "illegal subset, try again\n";
        }
        const AgentMove i = agent->decide(state, I, rules, rng);
        std::cout << "agent replies " << i.index << "\n";
        state = apply(state, I, i, rules);
      }
      ++steps;
    }
    std::cout << "terminal state:\n";
    print_state(std::cout, state);
    std::cout << "game over after " << steps << " steps\n";
    return 0;
  });
}

// ---------------------------------------------------------------------------

struct TreeArgs {
  Common common;
  std::string host = "choose-all";
  unsigned depth_cap = 12;
  unsigned solve_cap = 12;
  std::string out = "tree";
};

int cmd_tree(const TreeArgs& a) {
  const StateDocument doc = load(a.common);
  const VariantRules rules = doc.rules();
  return dispatch(doc, [&]<class T>(const GameState<T>& root) {
    PolicyOptions<T> opt;
    if (a.host == "solver") {
      SolveResult<T> solved = minimax_solve(root, rules, a.solve_cap);
      if (!solved.bounded()) {
        std::cerr << "no strategy within " << a.solve_cap << " steps\n";
        return 1;
      }
      opt.solver = std::make_shared<StrategyHost<T>>(std::move(solved.strategy));
    }
    const HostPtr<T> host = make_host<T>(a.host, doc.variant, opt);
    Rng rng(a.common.seed);
    const GameTree<T> tree = build_policy_tree(root, *host, rules, a.depth_cap, rng);
    std::ofstream(a.out + ".dot") << to_dot(tree);
    std::ofstream(a.out + ".json") << tree_to_json(tree, doc.variant).dump(2) << "\n";
    std::cout << "nodes " << tree.size() << ", depth " << tree.max_depth() << ", all leaves terminal "
              << (tree.all_leaves_terminal() ? "yes" : "no") << "\n";
    return 0;
  });
}

// ---------------------------------------------------------------------------

struct SolveArgs {
  Common common;
  unsigned depth_cap = 12;
  std::string strategy_out;
};

int cmd_solve(const SolveArgs& a) {
  const StateDocument doc = load(a.common);
  const VariantRules rules = doc.rules();
  return dispatch(doc, [&]<class T>(const GameState<T>& root) {
    const SolveResult<T> r = minimax_solve(root, rules, a.depth_cap);
    if (r.value) {
      std::cout << "value " << *r.value << "\n";
    } else {
      std::cout << "value unbounded (> " << a.depth_cap << ")\n";
    }
    std::cout << "explored " << r.explored << "\n";
    if (!a.strategy_out.empty()) {
      // Sorted by serialized state so the file is stable across runs.
      std::vector<std::pair<std::string, json>> rows;
      for (const auto& [key, I] : r.strategy) {
        const GameState<T> s{key.config, key.weights, 0};
        rows.emplace_back(serialize(to_document(s, doc.variant)), to_json(I));
      }
      std::sort(rows.begin(), rows.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
      json table = json::array();
      for (auto& [state, move] : rows) table.push_back({{"state", json::parse(state)}, {"move", move}});
      std::ofstream(a.strategy_out) << table.dump(2) << "\n";
    }
    return 0;
  });
}

// ---------------------------------------------------------------------------

struct EvalArgs {
  std::vector<std::string> hosts{"choose-all", "zeillinger"};
  std::vector<std::string> agents{"random", "choose-first", "choose-last"};
  std::size_t n = 3, k = 3, m = 1000, reps = 30, cap = 500;
  std::int64_t N = 10;
  std::uint64_t seed = 0;
  std::string variant = "basic-shifted";
  unsigned simulations = 100;
  std::string out;
};

template <class T>
int run_eval(const EvalArgs& a, Variant variant) {
  EvalConfig<T> cfg;
  cfg.dim = a.n;
  cfg.points = a.k;
  cfg.coordinate_bound = a.N;
  cfg.steps = a.m;
  cfg.repetitions = a.reps;
  cfg.step_cap = a.cap;
  cfg.seed = a.seed;
  cfg.rules = VariantRules::of(variant);

  // Each cell gets its own policies; an MCTS player models its column or row
  // opponent and uses it for rollouts.
  BenchmarkTable<T> table;
  table.hosts = a.hosts;
  table.agents = a.agents;
  for (std::size_t h = 0; h < a.hosts.size(); ++h) {
    table.cells.emplace_back();
    for (std::size_t g = 0; g < a.agents.size(); ++g) {
      PolicyOptions<T> plain;
      plain.mcts.simulations = a.simulations;
      AgentPtr<T> agent = make_agent<T>(a.agents[g] == "mcts" ? "random" : a.agents[g], variant, plain);
      HostPtr<T> host = make_host<T>(a.hosts[h] == "mcts" ? "random" : a.hosts[h], variant, plain);
      if (a.hosts[h] == "mcts") {
        PolicyOptions<T> opt = plain;
        opt.mcts_agent_model = agent;
        opt.mcts.rollout_agent = agent;
        host = make_host<T>("mcts", variant, opt);
      }
      if (a.agents[g] == "mcts") {
        PolicyOptions<T> opt = plain;
        opt.mcts_host_model = host;
        opt.mcts.rollout_host = host;
        agent = make_agent<T>("mcts", variant, opt);
      }
      EvalConfig<T> cell = cfg;
      cell.seed = cell_seed(cfg.seed, h, g, a.agents.size());
      table.cells.back().push_back(rho_estimate(*host, *agent, cell));
      table.cells.back().back().host = a.hosts[h];
      table.cells.back().back().agent = a.agents[g];
    }
  }
  if (a.out.empty()) {
    write_csv(std::cout, table, cfg);
  } else {
    std::ofstream out(a.out);
    write_csv(out, table, cfg);
  }
  return 0;
}

int cmd_eval(const EvalArgs& a) {
  const Variant variant = parse_variant(a.variant);
  for (const auto& h : a.hosts) {
    if (h == "solver") throw UnknownPolicy("the solver host is not available in eval");
    if (!is_external(h) && std::find(host_policy_names().begin(), host_policy_names().end(), h) ==
                               host_policy_names().end()) {
      throw UnknownPolicy("unknown host policy '" + h + "'");
    }
  }
  for (const auto& g : a.agents) {
    if (!is_external(g) && std::find(agent_policy_names().begin(), agent_policy_names().end(), g) ==
                               agent_policy_names().end()) {
      throw UnknownPolicy("unknown agent policy '" + g + "'");
    }
  }
  if (VariantRules::of(variant).field == ScalarField::rational) return run_eval<Rational>(a, variant);
  return run_eval<Integer>(a, variant);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hironaka game engine, solver and benchmark harness"};
  app.require_subcommand(1);

  PlayArgs play;
  auto* p = app.add_subcommand("play", "play interactively against a built-in policy");
  p->add_option("state", play.common.state_file, "state file")->required()->check(CLI::ExistingFile);
  p->add_option("--variant", play.common.variant, "override the file's variant");
  p->add_option("--role", play.role, "your role")->check(CLI::IsMember({"host", "agent"}));
  p->add_option("--opponent", play.opponent, "opponent policy name");
  p->add_option("--seed", play.common.seed);

  TreeArgs tree;
  auto* t = app.add_subcommand("tree", "export the reaction tree of a host policy");
  t->add_option("state", tree.common.state_file, "state file")->required()->check(CLI::ExistingFile);
  t->add_option("--variant", tree.common.variant, "override the file's variant");
  t->add_option("--host", tree.host, "host policy name");
  t->add_option("--depth-cap", tree.depth_cap)->check(CLI::PositiveNumber);
  t->add_option("--solve-cap", tree.solve_cap, "depth cap for the solver host")->check(CLI::PositiveNumber);
  t->add_option("--out", tree.out, "output prefix; writes <out>.dot and <out>.json");
  t->add_option("--seed", tree.common.seed);

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "minimal worst-case number of steps");
  s->add_option("state", solve.common.state_file, "state file")->required()->check(CLI::ExistingFile);
  s->add_option("--variant", solve.common.variant, "override the file's variant");
  s->add_option("--depth-cap", solve.depth_cap)->check(CLI::PositiveNumber);
  s->add_option("--strategy", solve.strategy_out, "write the principal strategy as JSON");

  EvalArgs eval;
  auto* e = app.add_subcommand("eval", "rho benchmark matrix as CSV");
  e->add_option("--hosts", eval.hosts)->delimiter(',');
  e->add_option("--agents", eval.agents)->delimiter(',');
  e->add_option("--n", eval.n, "dimension")->check(CLI::Range(2, 32));
  e->add_option("--k", eval.k, "points per start state")->check(CLI::PositiveNumber);
  e->add_option("--N", eval.N, "coordinate bound")->check(CLI::PositiveNumber);
  e->add_option("--m", eval.m, "steps per sequence")->check(CLI::PositiveNumber);
  e->add_option("--reps", eval.reps, "independent sequences")->check(CLI::PositiveNumber);
  e->add_option("--cap", eval.cap, "per-game step cap")->check(CLI::PositiveNumber);
  e->add_option("--seed", eval.seed);
  e->add_option("--variant", eval.variant);
  e->add_option("--simulations", eval.simulations, "MCTS simulations per move")->check(CLI::PositiveNumber);
  e->add_option("--out", eval.out, "CSV file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*p) return cmd_play(play);
    if (*t) return cmd_tree(tree);
    if (*s) return cmd_solve(solve);
    if (*e) return cmd_eval(eval);
  } catch (const UnknownPolicy& err) {
    std::cerr << "usage error: " << err.what() << "\n";
    return 2;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  return 0;
}
