#pragma once

#include <algorithm>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "hironaka/errors.hpp"
#include "hironaka/scalar.hpp"
#include "hironaka/simplex.hpp"

namespace hironaka {

template <class T>
using Point = std::vector<T>;

inline constexpr std::size_t kMaxDim = 32;

// Set of distinct coordinate indices, 0-based. Ordered by size first and then
// lexicographically on the sorted index list, which is the order every move
// list in the library is emitted in.
class CoordinateSubset {
 public:
  CoordinateSubset() = default;

  CoordinateSubset(std::initializer_list<std::size_t> indices) {
    for (std::size_t i : indices) insert(i);
  }

  static CoordinateSubset from_indices(const std::vector<std::size_t>& indices) {
    CoordinateSubset s;
    for (std::size_t i : indices) s.insert(i);
    return s;
  }

  static CoordinateSubset from_mask(std::uint32_t mask) {
    CoordinateSubset s;
    s.mask_ = mask;
    return s;
  }

  static CoordinateSubset full(std::size_t dim) {
    return from_mask(dim >= 32 ? ~std::uint32_t{0} : ((std::uint32_t{1} << dim) - 1));
  }

  std::uint32_t mask() const { return mask_; }
  std::size_t size() const { return static_cast<std::size_t>(std::popcount(mask_)); }
  bool empty() const { return mask_ == 0; }
  bool contains(std::size_t i) const { return i < kMaxDim && ((mask_ >> i) & 1U) != 0; }

  std::vector<std::size_t> indices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < kMaxDim; ++i) {
      if (contains(i)) out.push_back(i);
    }
    return out;
  }

  std::size_t min() const { return static_cast<std::size_t>(std::countr_zero(mask_)); }
  std::size_t max() const { return kMaxDim - 1 - static_cast<std::size_t>(std::countl_zero(mask_)); }
  std::size_t bound() const { return empty() ? 0 : max() + 1; }

  void insert(std::size_t i) {
    if (i >= kMaxDim) throw InvalidConfiguration("coordinate index out of range");
    if (contains(i)) throw InvalidConfiguration("duplicate coordinate index");
    mask_ |= std::uint32_t{1} << i;
  }

  std::string to_string() const {
    std::string s = "{";
    bool first = true;
    for (std::size_t i : indices()) {
      if (!first) s += ",";
      s += std::to_string(i);
      first = false;
    }
    return s + "}";
  }

  friend bool operator==(const CoordinateSubset&, const CoordinateSubset&) = default;

  friend std::strong_ordering operator<=>(const CoordinateSubset& a, const CoordinateSubset& b) {
    if (auto c = a.size() <=> b.size(); c != 0) return c;
    // Same size: lexicographic on sorted indices. The lowest differing bit
    // decides, and the set holding it sorts first.
    const std::uint32_t diff = a.mask_ ^ b.mask_;
    if (diff == 0) return std::strong_ordering::equal;
    const std::uint32_t low = diff & (~diff + 1);
    return (a.mask_ & low) ? std::strong_ordering::less : std::strong_ordering::greater;
  }

 private:
  std::uint32_t mask_ = 0;
};

// Finite nonempty set of points in the closed nonnegative orthant, stored
// deduplicated and sorted lexicographically.
template <class T>
class PointConfiguration {
 public:
  using scalar_type = T;

  PointConfiguration() = default;

  explicit PointConfiguration(std::vector<Point<T>> points) : points_(std::move(points)) {
    if (points_.empty()) throw InvalidConfiguration("point configuration is empty");
    dim_ = points_.front().size();
    if (dim_ < 2) throw InvalidConfiguration("dimension must be at least 2");
    if (dim_ > kMaxDim) throw InvalidConfiguration("dimension too large");
    for (const auto& p : points_) {
      if (p.size() != dim_) throw InvalidConfiguration("points have mixed dimensions");
      for (const auto& x : p) {
        if (x < 0) throw InvalidConfiguration("negative coordinate");
      }
    }
    std::sort(points_.begin(), points_.end());
    points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
  }

  PointConfiguration(std::initializer_list<Point<T>> points)
      : PointConfiguration(std::vector<Point<T>>(points)) {}

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return points_.size(); }
  const std::vector<Point<T>>& points() const { return points_; }
  const Point<T>& operator[](std::size_t k) const { return points_[k]; }
  auto begin() const { return points_.begin(); }
  auto end() const { return points_.end(); }

  bool contains(const Point<T>& p) const {
    return std::binary_search(points_.begin(), points_.end(), p);
  }

  std::size_t hash() const {
    std::size_t h = dim_;
    for (const auto& p : points_) {
      for (const auto& x : p) hash_combine(h, hash_scalar(x));
    }
    return h;
  }

  friend bool operator==(const PointConfiguration&, const PointConfiguration&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<Point<T>> points_;
};

template <class T>
std::string to_string(const Point<T>& p) {
  std::string s = "(";
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (j) s += ",";
    s += to_string(p[j]);
  }
  return s + ")";
}

template <class T>
std::string to_string(const PointConfiguration<T>& S) {
  std::string s = "{";
  for (std::size_t k = 0; k < S.size(); ++k) {
    if (k) s += ",";
    s += to_string(S[k]);
  }
  return s + "}";
}

template <class T>
bool dominates(const Point<T>& q, const Point<T>& p) {
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (q[j] > p[j]) return false;
  }
  return true;
}

template <class T>
T coordinate_sum(const Point<T>& p) {
  T s = 0;
  for (const auto& x : p) s += x;
  return s;
}

template <class T>
T subset_sum(const Point<T>& p, const CoordinateSubset& I) {
  T s = 0;
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (I.contains(j)) s += p[j];
  }
  return s;
}

// Keeps the points that no other point sits componentwise below.
template <class T>
PointConfiguration<T> remove_dominated(const PointConfiguration<T>& S) {
  std::vector<Point<T>> kept;
  for (std::size_t a = 0; a < S.size(); ++a) {
    bool dominated = false;
    for (std::size_t b = 0; b < S.size() && !dominated; ++b) {
      dominated = b != a && dominates(S[b], S[a]);
    }
    if (!dominated) kept.push_back(S[a]);
  }
  return PointConfiguration<T>(std::move(kept));
}

// Translates by the componentwise minimum so every coordinate hyperplane is
// touched by some point.
template <class T>
PointConfiguration<T> shift_to_axes(const PointConfiguration<T>& S) {
  Point<T> low = S[0];
  for (const auto& p : S) {
    for (std::size_t j = 0; j < S.dim(); ++j) {
      if (p[j] < low[j]) low[j] = p[j];
    }
  }
  std::vector<Point<T>> out(S.points());
  for (auto& p : out) {
    for (std::size_t j = 0; j < S.dim(); ++j) p[j] -= low[j];
  }
  return PointConfiguration<T>(std::move(out));
}

// Translates along -(1,...,1) by the largest integer multiple that keeps the
// configuration in the nonnegative orthant.
template <class T>
PointConfiguration<T> diagonal_shift(const PointConfiguration<T>& S) {
  T low = S[0][0];
  for (const auto& p : S) {
    for (const auto& x : p) {
      if (x < low) low = x;
    }
  }
  const T step = T(floor_of(low));
  if (step == 0) return S;
  std::vector<Point<T>> out(S.points());
  for (auto& p : out) {
    for (auto& x : p) x -= step;
  }
  return PointConfiguration<T>(std::move(out));
}

namespace detail {

// True iff p lies in conv(others) + R^n_+.
template <class T>
bool in_upper_hull(const Point<T>& p, const std::vector<const Point<T>*>& others) {
  const std::size_t n = p.size();
  const std::size_t m = others.size();
  lp::EqualitySystem sys;
  sys.num_vars = m + n;
  sys.rows.assign(n + 1, std::vector<Rational>(m + n));
  sys.rhs.assign(n + 1, Rational(0));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t q = 0; q < m; ++q) sys.rows[j][q] = Rational((*others[q])[j]);
    sys.rows[j][m + j] = 1;
    sys.rhs[j] = Rational(p[j]);
  }
  for (std::size_t q = 0; q < m; ++q) sys.rows[n][q] = 1;
  sys.rhs[n] = 1;
  return lp::find_feasible_point(sys).has_value();
}

}  // namespace detail

// Vertices of conv(S) + R^n_+, decided exactly.
template <class T>
PointConfiguration<T> newton_vertices(const PointConfiguration<T>& S) {
  PointConfiguration<T> candidates = remove_dominated(S);
  if (candidates.size() <= 2) return candidates;
  std::vector<Point<T>> kept;
  for (std::size_t a = 0; a < candidates.size(); ++a) {
    std::vector<const Point<T>*> others;
    for (std::size_t b = 0; b < candidates.size(); ++b) {
      if (b != a) others.push_back(&candidates[b]);
    }
    if (!detail::in_upper_hull(candidates[a], others)) kept.push_back(candidates[a]);
  }
  return PointConfiguration<T>(std::move(kept));
}

// Componentwise max minus min.
template <class T>
std::vector<T> spread_vector(const PointConfiguration<T>& S) {
  Point<T> low = S[0];
  Point<T> high = S[0];
  for (const auto& p : S) {
    for (std::size_t j = 0; j < S.dim(); ++j) {
      if (p[j] < low[j]) low[j] = p[j];
      if (p[j] > high[j]) high[j] = p[j];
    }
  }
  std::vector<T> w(S.dim());
  for (std::size_t j = 0; j < S.dim(); ++j) w[j] = high[j] - low[j];
  return w;
}

// Difference p - q of the point pair (in canonical order) minimising
// (max - min, #minimal entries + #maximal entries) lexicographically; first
// pair wins ties. Zero vector for a single point.
template <class T>
std::vector<T> characteristic_vector(const PointConfiguration<T>& S) {
  const std::size_t n = S.dim();
  std::vector<T> best(n);
  T best_length = 0;
  std::size_t best_extremes = 0;
  bool have = false;
  std::vector<T> v(n);
  for (std::size_t a = 0; a < S.size(); ++a) {
    for (std::size_t b = a + 1; b < S.size(); ++b) {
      for (std::size_t j = 0; j < n; ++j) v[j] = S[a][j] - S[b][j];
      const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
      T length = *hi - *lo;
      const auto extremes = static_cast<std::size_t>(std::count(v.begin(), v.end(), *lo) +
                                                     std::count(v.begin(), v.end(), *hi));
      if (!have || length < best_length || (length == best_length && extremes < best_extremes)) {
        have = true;
        best = v;
        best_length = std::move(length);
        best_extremes = extremes;
      }
    }
  }
  return best;
}

template <class T>
std::uint32_t support_mask(const Point<T>& p) {
  std::uint32_t mask = 0;
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (p[j] > 0) mask |= std::uint32_t{1} << j;
  }
  return mask;
}

// All hitting sets of the Newton vertices with the smallest cardinality, in
// canonical order.
template <class T>
std::vector<CoordinateSubset> minimal_hitting_sets(const PointConfiguration<T>& S) {
  const PointConfiguration<T> vertices = newton_vertices(S);
  std::vector<std::uint32_t> supports;
  for (const auto& v : vertices) {
    const std::uint32_t s = support_mask(v);
    if (s == 0) throw NoHittingSet("a Newton vertex is the origin");
    supports.push_back(s);
  }
  const std::size_t n = S.dim();
  for (std::size_t size = 1; size <= n; ++size) {
    std::vector<CoordinateSubset> found;
    // Lexicographic combinations of `size` out of n.
    std::vector<std::size_t> comb(size);
    for (std::size_t k = 0; k < size; ++k) comb[k] = k;
    for (;;) {
      std::uint32_t mask = 0;
      for (std::size_t k : comb) mask |= std::uint32_t{1} << k;
      if (std::all_of(supports.begin(), supports.end(), [&](std::uint32_t s) { return (s & mask) != 0; })) {
        found.push_back(CoordinateSubset::from_mask(mask));
      }
      std::size_t k = size;
      while (k > 0 && comb[k - 1] == n - size + k - 1) --k;
      if (k == 0) break;
      ++comb[k - 1];
      for (std::size_t r = k; r < size; ++r) comb[r] = comb[r - 1] + 1;
    }
    if (!found.empty()) return found;
  }
  throw NoHittingSet();
}

template <class T>
PointConfiguration<T> scale(const PointConfiguration<T>& S, const T& factor) {
  std::vector<Point<T>> out(S.points());
  for (auto& p : out) {
    for (auto& x : p) x *= factor;
  }
  return PointConfiguration<T>(std::move(out));
}

}  // namespace hironaka
