#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hironaka/errors.hpp"
#include "hironaka/evaluation.hpp"
#include "hironaka/game.hpp"
#include "hironaka/search.hpp"

namespace hironaka {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// State documents
//
//   {"variant": "basic-shifted", "dim": 3,
//    "points": [[2,0,0],[0,2,0],["3/2",0,1]],
//    "weights": [1,1,1], "step": 0}
//
// Coordinates are JSON integers when they fit in 64 bits and strings
// otherwise; non-integral rationals are always "p/q" strings.

struct StateDocument {
  Variant variant = Variant::basic;
  std::size_t dim = 0;
  std::vector<std::vector<Rational>> points;
  std::optional<Weights> weights;
  std::uint64_t step = 0;

  VariantRules rules() const { return VariantRules::of(variant); }

  friend bool operator==(const StateDocument&, const StateDocument&) = default;
};

template <class T>
GameState<T> to_state(const StateDocument& doc);

namespace detail {

inline json scalar_to_json(const Rational& v) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  if (denominator(v) == 1) {
    const Integer& n = numerator(v);
    if (n >= std::numeric_limits<std::int64_t>::min() && n <= std::numeric_limits<std::int64_t>::max()) {
      return static_cast<std::int64_t>(n);
    }
  }
  return to_string(v);
}

inline Rational scalar_from_json(const json& j) {
  if (j.is_number_integer()) {
    return j.is_number_unsigned() ? Rational(j.get<std::uint64_t>()) : Rational(j.get<std::int64_t>());
  }
  if (j.is_string()) {
    try {
      return parse_scalar<Rational>(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw InvalidConfiguration(e.what());
    }
  }
  throw InvalidConfiguration("coordinate must be an integer or a \"p/q\" string");
}

inline Rational as_rational(const Integer& v) { return Rational(v); }
inline Rational as_rational(const Rational& v) { return v; }

template <class T>
T from_rational(const Rational& v) {
  if constexpr (is_rational_v<T>) {
    return v;
  } else {
    if (boost::multiprecision::denominator(v) != 1) {
      throw InvalidConfiguration("non-integral coordinate " + to_string(v) + " in an integer variant");
    }
    return boost::multiprecision::numerator(v);
  }
}

}  // namespace detail

inline json to_json(const StateDocument& doc) {
  json j;
  j["variant"] = std::string(variant_name(doc.variant));
  j["dim"] = doc.dim;
  json pts = json::array();
  for (const auto& p : doc.points) {
    json row = json::array();
    for (const auto& x : p) row.push_back(detail::scalar_to_json(x));
    pts.push_back(std::move(row));
  }
  j["points"] = std::move(pts);
  if (doc.weights) j["weights"] = *doc.weights;
  j["step"] = doc.step;
  return j;
}

inline StateDocument state_document_from_json(const json& j) {
  if (!j.is_object()) throw InvalidConfiguration("state document must be an object");
  StateDocument doc;
  try {
    doc.variant = parse_variant(j.at("variant").get<std::string>());
    doc.dim = j.at("dim").get<std::size_t>();
    const json& pts = j.at("points");
    if (!pts.is_array() || pts.empty()) throw InvalidConfiguration("points must be a nonempty array");
    for (const json& row : pts) {
      if (!row.is_array()) throw InvalidConfiguration("each point must be an array");
      if (row.size() != doc.dim) throw InvalidConfiguration("point dimension does not match dim");
      std::vector<Rational> p;
      for (const json& x : row) {
        p.push_back(detail::scalar_from_json(x));
        if (p.back() < 0) throw InvalidConfiguration("negative coordinate");
      }
      doc.points.push_back(std::move(p));
    }
    if (j.contains("weights") && !j.at("weights").is_null()) doc.weights = j.at("weights").get<Weights>();
    if (j.contains("step")) doc.step = j.at("step").get<std::uint64_t>();
  } catch (const json::exception& e) {
    throw InvalidConfiguration(std::string("malformed state document: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw InvalidConfiguration(e.what());
  }
  // Full validation (dimension range, weights vs variant, integrality) happens
  // when the document is turned into a state.
  if (doc.rules().field == ScalarField::rational) {
    to_state<Rational>(doc);
  } else {
    to_state<Integer>(doc);
  }
  return doc;
}

inline std::string serialize(const StateDocument& doc) { return to_json(doc).dump(); }

inline StateDocument parse_state_document(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidConfiguration(std::string("state document is not valid JSON: ") + e.what());
  }
  return state_document_from_json(j);
}

inline StateDocument load_state_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidConfiguration("cannot open state file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_state_document(buf.str());
}

template <class T>
GameState<T> to_state(const StateDocument& doc) {
  const VariantRules rules = doc.rules();
  if (is_rational_v<T> != (rules.field == ScalarField::rational)) {
    throw InvalidConfiguration("scalar type does not match variant '" + std::string(variant_name(doc.variant)) + "'");
  }
  std::vector<Point<T>> pts;
  for (const auto& p : doc.points) {
    if (p.size() != doc.dim) throw InvalidConfiguration("point dimension does not match dim");
    Point<T> q;
    for (const auto& x : p) q.push_back(detail::from_rational<T>(x));
    pts.push_back(std::move(q));
  }
  return make_state(PointConfiguration<T>(std::move(pts)), rules, doc.weights, doc.step);
}

template <class T>
StateDocument to_document(const GameState<T>& state, Variant variant) {
  StateDocument doc;
  doc.variant = variant;
  doc.dim = state.dim();
  for (const auto& p : state.config) {
    std::vector<Rational> q;
    for (const auto& x : p) q.push_back(detail::as_rational(x));
    doc.points.push_back(std::move(q));
  }
  doc.weights = state.weights;
  doc.step = state.step;
  return doc;
}

template <class T>
json state_to_json(const GameState<T>& state, Variant variant) {
  return to_json(to_document(state, variant));
}

inline json to_json(const HostMove& I) { return I.indices(); }

// ---------------------------------------------------------------------------
// Policy trees

namespace detail {

inline std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace detail

// Graphviz rendering. Node labels list one point per line; terminal nodes are
// double circles, smooth-marker nodes blue, loop and depth-capped nodes dashed.
// Edges carry the agent's coordinate.
template <class T>
std::string to_dot(const GameTree<T>& tree) {
  std::ostringstream out;
  out << "digraph policy_tree {\n";
  out << "  node [shape=ellipse, fontname=\"monospace\"];\n";
  for (std::size_t id = 0; id < tree.size(); ++id) {
    const auto& n = tree.nodes[id];
    std::string label;
    for (std::size_t k = 0; k < n.state.config.size(); ++k) {
      if (k) label += "\\n";
      label += detail::dot_escape(to_string(n.state.config[k]));
    }
    out << "  n" << id << " [label=\"" << label << "\"";
    if (n.terminal) out << ", shape=doublecircle";
    if (n.smooth) out << ", color=blue, fontcolor=blue";
    if (n.loop || n.depth_capped) out << ", style=dashed";
    if (n.host_move) out << ", xlabel=\"I=" << n.host_move->to_string() << "\"";
    out << "];\n";
  }
  for (std::size_t id = 0; id < tree.size(); ++id) {
    for (const auto& e : tree.nodes[id].edges) {
      out << "  n" << id << " -> n" << e.child << " [label=\"" << e.move.index << "\"];\n";
    }
  }
  out << "}\n";
  return out.str();
}

template <class T>
json tree_to_json(const GameTree<T>& tree, Variant variant) {
  json nodes = json::array();
  for (std::size_t id = 0; id < tree.size(); ++id) {
    const auto& n = tree.nodes[id];
    json node;
    node["id"] = id;
    node["depth"] = n.depth;
    node["parent"] = n.parent ? json(*n.parent) : json(nullptr);
    node["state"] = state_to_json(n.state, variant);
    node["terminal"] = n.terminal;
    node["smooth"] = n.smooth;
    node["loop"] = n.loop;
    node["depth_capped"] = n.depth_capped;
    node["host_move"] = n.host_move ? to_json(*n.host_move) : json(nullptr);
    json edges = json::array();
    for (const auto& e : n.edges) edges.push_back({{"move", e.move.index}, {"child", e.child}});
    node["edges"] = std::move(edges);
    nodes.push_back(std::move(node));
  }
  return {{"variant", std::string(variant_name(variant))}, {"nodes", std::move(nodes)}};
}

// ---------------------------------------------------------------------------
// Transcripts

// One line per exchange: "<t> I=<subset> i=<index> -> <points>", then a
// closing "terminated" or "unfinished" line.
template <class T>
std::string transcript(const Episode<T>& episode) {
  std::ostringstream out;
  for (std::size_t t = 0; t < episode.steps.size(); ++t) {
    const auto& s = episode.steps[t];
    out << t << " I=" << s.host_move.to_string() << " i=" << s.agent_move.index << " -> "
        << to_string(s.after.config) << "\n";
  }
  out << (episode.terminated ? "terminated" : "unfinished") << " after " << episode.steps.size() << " steps\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Benchmark CSV

inline constexpr const char* kCsvHeader = "host,agent,n,k,N,m,reps,rho,stderr,games,capped";

namespace detail {

inline std::string fixed(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace detail

template <class T>
void write_csv(std::ostream& out, const BenchmarkTable<T>& table, const EvalConfig<T>& config) {
  out << kCsvHeader << "\n";
  for (std::size_t h = 0; h < table.hosts.size(); ++h) {
    for (std::size_t a = 0; a < table.agents.size(); ++a) {
      const EvalReport& r = table.at(h, a);
      out << r.host << ',' << r.agent << ',' << config.dim << ',' << config.points << ','
          << config.coordinate_bound << ',' << config.steps << ',' << config.repetitions << ','
          << detail::fixed(r.rho) << ',' << detail::fixed(r.std_error) << ',' << r.games << ',' << r.capped
          << "\n";
    }
  }
}

}  // namespace hironaka
