#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <unordered_map>
#include <vector>

#include "sdn/complex.hpp"
#include "sdn/error.hpp"
#include "sdn/extended.hpp"

namespace sdn {

template <typename Scalar>
struct DiagramPoint {
  int dim;
  Extended<Scalar> birth;
  Extended<Scalar> death;

  friend bool operator==(const DiagramPoint&, const DiagramPoint&) = default;
};

template <typename Scalar>
bool operator<(const DiagramPoint<Scalar>& a, const DiagramPoint<Scalar>& b) {
  if (a.dim != b.dim) return a.dim < b.dim;
  if (a.birth != b.birth) return a.birth < b.birth;
  return a.death < b.death;
}

/// Multiset of (dim, birth, death) sorted by (dim, birth, death), without
/// zero-persistence points.
template <typename Scalar>
class PersistenceDiagram {
 public:
  using Point = DiagramPoint<Scalar>;

  PersistenceDiagram() = default;
  explicit PersistenceDiagram(std::vector<Point> points) : points_(std::move(points)) {
    for (const auto& p : points_) {
      if (p.dim < 0) throw InvalidArgument("diagram dimension must be >= 0");
      if (p.birth.is_infinite()) throw InvalidArgument("diagram birth must be finite");
      if (p.death < p.birth) throw InvalidArgument("diagram death precedes birth");
    }
    points_.erase(std::remove_if(points_.begin(), points_.end(), [](const Point& p) { return p.birth == p.death; }),
                  points_.end());
    std::sort(points_.begin(), points_.end());
  }

  const std::vector<Point>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }

  std::vector<Point> in_dimension(int dim) const {
    std::vector<Point> out;
    for (const auto& p : points_)
      if (p.dim == dim) out.push_back(p);
    return out;
  }

  int max_dimension() const { return points_.empty() ? -1 : points_.back().dim; }

  friend bool operator==(const PersistenceDiagram&, const PersistenceDiagram&) = default;

 private:
  std::vector<Point> points_;
};

/// Persistence over Z/2 of the sublevel filtration, reported in dimensions
/// <= max_dim. Columns are reduced dimension by dimension, top down, with
/// clearing.
template <typename Scalar>
PersistenceDiagram<Scalar> compute_persistence(const FilteredComplex<Scalar>& k, int max_dim) {
  if (max_dim < 0) throw InvalidArgument("max_dim must be >= 0");
  if (auto err = k.validation_error()) throw InvalidArgument("invalid complex: " + *err);

  const auto& entries = k.entries();
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < entries.size(); ++i)
    if (entries[i].simplex.dimension() <= max_dim + 1) kept.push_back(i);
  const std::size_t n = kept.size();

  std::unordered_map<Simplex, std::size_t, SimplexHash> index;
  index.reserve(n);
  for (std::size_t j = 0; j < n; ++j) index.emplace(entries[kept[j]].simplex, j);

  const auto dim_of = [&](std::size_t j) { return entries[kept[j]].simplex.dimension(); };
  const auto value_of = [&](std::size_t j) { return entries[kept[j]].value; };

  std::vector<std::vector<std::size_t>> columns(n);
  std::vector<bool> cleared(n, false);
  std::vector<std::size_t> pivot_column(n, n);
  std::vector<bool> killed(n, false);
  std::vector<DiagramPoint<Scalar>> points;

  for (int d = max_dim + 1; d >= 1; --d) {
    for (std::size_t j = 0; j < n; ++j) {
      if (dim_of(j) != d || cleared[j]) continue;
      auto& col = columns[j];
      for (const auto& f : entries[kept[j]].simplex.facets()) col.push_back(index.at(f));
      std::sort(col.begin(), col.end());
      while (!col.empty() && pivot_column[col.back()] != n) {
        const auto& other = columns[pivot_column[col.back()]];
        std::vector<std::size_t> sum;
        sum.reserve(col.size() + other.size());
        std::set_symmetric_difference(col.begin(), col.end(), other.begin(), other.end(), std::back_inserter(sum));
        col.swap(sum);
      }
      if (col.empty()) continue;
      const std::size_t low = col.back();
      pivot_column[low] = j;
      killed[j] = true;
      killed[low] = true;
      cleared[low] = true;
      if (d - 1 <= max_dim) points.push_back({d - 1, value_of(low), value_of(j)});
    }
  }
  for (std::size_t j = 0; j < n; ++j)
    if (!killed[j] && dim_of(j) <= max_dim) points.push_back({dim_of(j), value_of(j), Extended<Scalar>::infinity()});
  return PersistenceDiagram<Scalar>(std::move(points));
}

namespace detail {

// Hopcroft-Karp perfect matching test on an n x n bipartite graph.
inline bool has_perfect_matching(std::size_t n, const std::vector<std::vector<std::size_t>>& adj) {
  constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> match_l(n, none), match_r(n, none), dist(n);
  const auto bfs = [&] {
    std::queue<std::size_t> q;
    bool found = false;
    for (std::size_t u = 0; u < n; ++u) {
      if (match_l[u] == none) {
        dist[u] = 0;
        q.push(u);
      } else {
        dist[u] = none;
      }
    }
    while (!q.empty()) {
      const std::size_t u = q.front();
      q.pop();
      for (auto v : adj[u]) {
        const std::size_t w = match_r[v];
        if (w == none) {
          found = true;
        } else if (dist[w] == none) {
          dist[w] = dist[u] + 1;
          q.push(w);
        }
      }
    }
    return found;
  };
  std::function<bool(std::size_t)> dfs = [&](std::size_t u) {
    for (auto v : adj[u]) {
      const std::size_t w = match_r[v];
      if (w == none || (dist[w] == dist[u] + 1 && dfs(w))) {
        match_l[u] = v;
        match_r[v] = u;
        return true;
      }
    }
    dist[u] = none;
    return false;
  };
  std::size_t matched = 0;
  while (bfs())
    for (std::size_t u = 0; u < n; ++u)
      if (match_l[u] == none && dfs(u)) ++matched;
  return matched == n;
}

// Bottleneck matching for a coordinate cost (matched points pay the worse
// of their birth and death costs) and a diagonal cost. `unit` is the value
// for two empty diagrams.
template <typename Scalar, typename CoordCost, typename DiagCost>
Extended<Scalar> bottleneck_with(const PersistenceDiagram<Scalar>& d1, const PersistenceDiagram<Scalar>& d2, int dim,
                                 CoordCost coord, DiagCost diag, const Extended<Scalar>& unit) {
  using E = Extended<Scalar>;
  std::vector<E> ess1, ess2;
  std::vector<DiagramPoint<Scalar>> a, b;
  for (const auto& p : d1.in_dimension(dim)) (p.death.is_infinite() ? ess1.push_back(p.birth) : a.push_back(p));
  for (const auto& p : d2.in_dimension(dim)) (p.death.is_infinite() ? ess2.push_back(p.birth) : b.push_back(p));
  if (ess1.size() != ess2.size()) return E::infinity();

  // Births of essential classes: sorted order is optimal for monotone costs.
  E result = unit;
  std::sort(ess1.begin(), ess1.end());
  std::sort(ess2.begin(), ess2.end());
  for (std::size_t i = 0; i < ess1.size(); ++i) result = max(result, coord(ess1[i], ess2[i]));

  const std::size_t n1 = a.size(), n2 = b.size(), n = n1 + n2;
  if (n == 0) return result;
  const auto pair_cost = [&](std::size_t i, std::size_t j) {
    return max(coord(a[i].birth, b[j].birth), coord(a[i].death, b[j].death));
  };
  std::vector<E> diag_a(n1), diag_b(n2);
  for (std::size_t i = 0; i < n1; ++i) diag_a[i] = diag(a[i]);
  for (std::size_t j = 0; j < n2; ++j) diag_b[j] = diag(b[j]);

  std::vector<E> candidates(diag_a.begin(), diag_a.end());
  candidates.insert(candidates.end(), diag_b.begin(), diag_b.end());
  for (std::size_t i = 0; i < n1; ++i)
    for (std::size_t j = 0; j < n2; ++j) candidates.push_back(pair_cost(i, j));
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  // Left: a_0..a_{n1-1}, then diagonal copies of b. Right: b_0..b_{n2-1},
  // then diagonal copies of a.
  const auto feasible = [&](const E& delta) {
    std::vector<std::vector<std::size_t>> adj(n);
    for (std::size_t i = 0; i < n1; ++i) {
      for (std::size_t j = 0; j < n2; ++j)
        if (pair_cost(i, j) <= delta) adj[i].push_back(j);
      if (diag_a[i] <= delta) adj[i].push_back(n2 + i);
    }
    for (std::size_t j = 0; j < n2; ++j) {
      if (diag_b[j] <= delta) adj[n1 + j].push_back(j);
      for (std::size_t i = 0; i < n1; ++i) adj[n1 + j].push_back(n2 + i);
    }
    return has_perfect_matching(n, adj);
  };

  std::size_t lo = 0, hi = candidates.size() - 1;
  if (!feasible(candidates[hi])) return E::infinity();
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (feasible(candidates[mid]))
      hi = mid;
    else
      lo = mid + 1;
  }
  return max(result, candidates[lo]);
}

}  // namespace detail

/// Bottleneck distance in one dimension. Points with infinite death only
/// match each other.
template <typename Scalar>
Extended<Scalar> bottleneck(const PersistenceDiagram<Scalar>& d1, const PersistenceDiagram<Scalar>& d2, int dim) {
  using E = Extended<Scalar>;
  return detail::bottleneck_with(
      d1, d2, dim, [](const E& x, const E& y) { return abs_difference(x, y); },
      [](const DiagramPoint<Scalar>& p) { return E((p.death.value() - p.birth.value()) / Scalar(2)); },
      E(Scalar(0)));
}

/// Bottleneck distance after x -> log x, reported as exp of the log-scale
/// distance: matched coordinates cost max(x/y, y/x), with 0 and inf only
/// matching themselves, and a point (b, d) costs sqrt(d/b) to the diagonal.
template <typename Scalar>
Extended<Scalar> multiplicative_bottleneck(const PersistenceDiagram<Scalar>& d1, const PersistenceDiagram<Scalar>& d2,
                                           int dim) {
  using E = Extended<Scalar>;
  const auto ratio = [](const E& x, const E& y) -> E {
    if (x == y) return E(Scalar(1));
    if (x.is_infinite() || y.is_infinite()) return E::infinity();
    if (x.value() == Scalar(0) || y.value() == Scalar(0)) return E::infinity();
    return E(std::max(x.value(), y.value()) / std::min(x.value(), y.value()));
  };
  const auto diag = [](const DiagramPoint<Scalar>& p) -> E {
    using std::sqrt;
    if (p.birth.value() == Scalar(0)) return E::infinity();
    return E(sqrt(p.death.value() / p.birth.value()));
  };
  return detail::bottleneck_with(d1, d2, dim, ratio, diag, E(Scalar(1)));
}

}  // namespace sdn
