#pragma once

// Independent reference implementations used to cross-check the library.
// They share no code with the library beyond its public value types and
// favour exhaustive enumeration over cleverness.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "hironaka.hpp"

namespace oracle {

using hironaka::Integer;
using hironaka::Rational;
using Pt = std::vector<std::int64_t>;

inline std::vector<Pt> to_int_points(const hironaka::PointConfiguration<Integer>& S) {
  std::vector<Pt> out;
  for (const auto& p : S) {
    Pt q;
    for (const auto& x : p) q.push_back(static_cast<std::int64_t>(x));
    out.push_back(q);
  }
  return out;
}

inline hironaka::PointConfiguration<Integer> from_int_points(const std::vector<Pt>& pts) {
  std::vector<hironaka::Point<Integer>> out;
  for (const auto& p : pts) out.emplace_back(p.begin(), p.end());
  return hironaka::PointConfiguration<Integer>(std::move(out));
}

// Solves the square system M x = b exactly; nullopt when M is singular.
inline std::optional<std::vector<Rational>> solve_square(std::vector<std::vector<Rational>> M, std::vector<Rational> b) {
  const std::size_t n = M.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && M[pivot][c] == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(M[pivot], M[c]);
    std::swap(b[pivot], b[c]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || M[r][c] == 0) continue;
      const Rational f = M[r][c] / M[c][c];
      for (std::size_t k = c; k < n; ++k) M[r][k] -= f * M[c][k];
      b[r] -= f * b[c];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / M[i][i];
  return x;
}

// {x >= 0 : A x = b} is nonempty iff some basic solution is nonnegative (A has
// full row rank here). Enumerates every choice of basis columns.
inline bool feasible_by_bases(const std::vector<std::vector<Rational>>& A, const std::vector<Rational>& b) {
  const std::size_t rows = A.size();
  const std::size_t cols = A.front().size();
  std::vector<bool> pick(cols, false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(rows), true);
  do {
    std::vector<std::size_t> basis;
    for (std::size_t c = 0; c < cols; ++c) {
      if (pick[c]) basis.push_back(c);
    }
    std::vector<std::vector<Rational>> M(rows, std::vector<Rational>(rows));
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t k = 0; k < rows; ++k) M[r][k] = A[r][basis[k]];
    }
    if (auto x = solve_square(M, b)) {
      if (std::all_of(x->begin(), x->end(), [](const Rational& v) { return v >= 0; })) return true;
    }
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return false;
}

// p is not a vertex of conv(others + {p}) + R^n_+ iff p >= sum lambda_q q with
// lambda a probability vector over the other points.
inline bool is_vertex(const Pt& p, const std::vector<Pt>& pts) {
  std::vector<Pt> others;
  for (const auto& q : pts) {
    if (q != p) others.push_back(q);
  }
  if (others.empty()) return true;
  const std::size_t n = p.size();
  const std::size_t m = others.size();
  std::vector<std::vector<Rational>> A(n + 1, std::vector<Rational>(m + n));
  std::vector<Rational> b(n + 1);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t q = 0; q < m; ++q) A[j][q] = others[q][j];
    A[j][m + j] = 1;
    b[j] = p[j];
  }
  for (std::size_t q = 0; q < m; ++q) A[n][q] = 1;
  b[n] = 1;
  return !feasible_by_bases(A, b);
}

inline std::vector<Pt> vertices(const std::vector<Pt>& pts) {
  std::vector<Pt> uniq = pts;
  std::sort(uniq.begin(), uniq.end());
  uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
  std::vector<Pt> out;
  for (const auto& p : uniq) {
    if (is_vertex(p, uniq)) out.push_back(p);
  }
  return out;
}

inline std::vector<Pt> undominated(const std::vector<Pt>& pts) {
  std::vector<Pt> uniq = pts;
  std::sort(uniq.begin(), uniq.end());
  uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
  std::vector<Pt> out;
  for (const auto& p : uniq) {
    bool dominated = false;
    for (const auto& q : uniq) {
      if (q == p) continue;
      bool below = true;
      for (std::size_t j = 0; j < p.size(); ++j) below = below && q[j] <= p[j];
      dominated = dominated || below;
    }
    if (!dominated) out.push_back(p);
  }
  return out;
}

// Smallest subsets meeting the support of every vertex, ordered by their
// sorted index lists.
inline std::vector<std::vector<std::size_t>> min_hitting_sets(const std::vector<Pt>& pts) {
  const std::vector<Pt> vs = vertices(pts);
  const std::size_t n = pts.front().size();
  std::vector<std::vector<std::size_t>> best;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    bool hits = true;
    for (const auto& v : vs) {
      bool any = false;
      for (std::size_t j = 0; j < n; ++j) any = any || (((mask >> j) & 1u) && v[j] > 0);
      hits = hits && any;
    }
    if (!hits) continue;
    std::vector<std::size_t> idx;
    for (std::size_t j = 0; j < n; ++j) {
      if ((mask >> j) & 1u) idx.push_back(j);
    }
    if (!best.empty() && idx.size() > best.front().size()) continue;
    if (!best.empty() && idx.size() < best.front().size()) best.clear();
    best.push_back(idx);
  }
  std::sort(best.begin(), best.end());
  return best;
}

// One move of the basic game on raw integer points, optionally with the
// axes shift and with or without domination pruning.
inline std::vector<Pt> basic_move(const std::vector<Pt>& pts, const std::vector<std::size_t>& I, std::size_t i,
                                  bool prune, bool shift) {
  std::vector<Pt> out;
  for (Pt p : pts) {
    std::int64_t s = 0;
    for (std::size_t k : I) s += p[k];
    p[i] = s;
    out.push_back(p);
  }
  if (prune) out = undominated(out);
  if (shift) {
    Pt low = out.front();
    for (const auto& p : out) {
      for (std::size_t j = 0; j < p.size(); ++j) low[j] = std::min(low[j], p[j]);
    }
    for (auto& p : out) {
      for (std::size_t j = 0; j < p.size(); ++j) p[j] -= low[j];
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Unmemoized: can the host force termination within d moves?
template <class T>
bool host_wins_within(const hironaka::GameState<T>& s, const hironaka::VariantRules& rules, unsigned d) {
  if (hironaka::is_terminal(s, rules)) return true;
  if (d == 0) return false;
  for (const auto& I : hironaka::legal_host_moves(s, rules)) {
    bool all = true;
    for (auto i : hironaka::legal_agent_moves(s, I, rules)) {
      if (!host_wins_within(hironaka::apply(s, I, i, rules), rules, d - 1)) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

template <class T>
std::optional<unsigned> brute_force_value(const hironaka::GameState<T>& s, const hironaka::VariantRules& rules,
                                          unsigned cap) {
  for (unsigned d = 0; d <= cap; ++d) {
    if (host_wins_within(s, rules, d)) return d;
  }
  return std::nullopt;
}

// Uniform random configuration with k points in [lo, hi]^n.
inline std::vector<Pt> random_points(std::mt19937_64& rng, std::size_t n, std::size_t k, std::int64_t lo,
                                     std::int64_t hi) {
  std::uniform_int_distribution<std::int64_t> coord(lo, hi);
  std::vector<Pt> pts(k, Pt(n));
  for (auto& p : pts) {
    for (auto& x : p) x = coord(rng);
  }
  return pts;
}

}  // namespace oracle
