#pragma once

#include <algorithm>
#include <compare>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sdn/dissimilarity.hpp"
#include "sdn/error.hpp"
#include "sdn/extended.hpp"
#include "sdn/sparsification.hpp"

namespace sdn {

/// Non-empty strictly ascending vertex list.
class Simplex {
 public:
  using Vertex = Eigen::Index;

  Simplex() = default;
  explicit Simplex(std::vector<Vertex> vertices) : vertices_(std::move(vertices)) {
    if (vertices_.empty()) throw InvalidArgument("simplex must be non-empty");
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
      if (vertices_[i] < 0) throw InvalidArgument("negative vertex index");
      if (i > 0 && !(vertices_[i - 1] < vertices_[i]))
        throw InvalidArgument("simplex vertices must be strictly ascending");
    }
  }
  Simplex(std::initializer_list<Vertex> vs) : Simplex(std::vector<Vertex>(vs)) {}

  const std::vector<Vertex>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  int dimension() const { return static_cast<int>(vertices_.size()) - 1; }

  /// Codimension-one faces, in the order obtained by dropping vertex i.
  std::vector<Simplex> facets() const {
    std::vector<Simplex> out;
    if (vertices_.size() < 2) return out;
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
      Simplex f;
      f.vertices_.reserve(vertices_.size() - 1);
      for (std::size_t j = 0; j < vertices_.size(); ++j)
        if (j != i) f.vertices_.push_back(vertices_[j]);
      out.push_back(std::move(f));
    }
    return out;
  }

  friend bool operator==(const Simplex&, const Simplex&) = default;
  friend auto operator<=>(const Simplex& a, const Simplex& b) { return a.vertices_ <=> b.vertices_; }

 private:
  std::vector<Vertex> vertices_;
};

struct SimplexHash {
  std::size_t operator()(const Simplex& s) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (auto v : s.vertices()) {
      h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};

/// Simplices with filtration values, kept in (value, dimension, vertices)
/// order. A value v means membership at every level t > v.
template <typename Scalar>
class FilteredComplex {
 public:
  struct Entry {
    Simplex simplex;
    Extended<Scalar> value;
    friend bool operator==(const Entry&, const Entry&) = default;
  };

  FilteredComplex() = default;
  FilteredComplex(Eigen::Index vertex_count, std::vector<Entry> entries)
      : vertex_count_(vertex_count), entries_(std::move(entries)) {
    std::sort(entries_.begin(), entries_.end(), canonical_less);
  }

  template <typename Map>
  static FilteredComplex from_map(Eigen::Index vertex_count, const Map& values) {
    std::vector<Entry> entries;
    entries.reserve(values.size());
    for (const auto& [s, v] : values) entries.push_back(Entry{s, v});
    return FilteredComplex(vertex_count, std::move(entries));
  }

  static bool canonical_less(const Entry& a, const Entry& b) {
    if (a.value != b.value) return a.value < b.value;
    if (a.simplex.size() != b.simplex.size()) return a.simplex.size() < b.simplex.size();
    return a.simplex < b.simplex;
  }

  Eigen::Index vertex_count() const { return vertex_count_; }
  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  int max_dimension() const {
    int d = -1;
    for (const auto& e : entries_) d = std::max(d, e.simplex.dimension());
    return d;
  }

  std::size_t count_dimension(int dim) const {
    return static_cast<std::size_t>(std::count_if(entries_.begin(), entries_.end(),
                                                  [dim](const Entry& e) { return e.simplex.dimension() == dim; }));
  }

  std::optional<Extended<Scalar>> value_of(const Simplex& s) const {
    for (const auto& e : entries_)
      if (e.simplex == s) return e.value;
    return std::nullopt;
  }

  /// First violated invariant (duplicates, vertex range, downward closure,
  /// monotone values), or nothing.
  std::optional<std::string> validation_error() const {
    std::unordered_map<Simplex, Extended<Scalar>, SimplexHash> index;
    index.reserve(entries_.size());
    for (const auto& e : entries_) {
      if (e.simplex.vertices().back() >= vertex_count_) return "vertex index out of range";
      if (!index.emplace(e.simplex, e.value).second) return "duplicate simplex";
    }
    for (const auto& e : entries_) {
      for (const auto& f : e.simplex.facets()) {
        auto it = index.find(f);
        if (it == index.end()) return "not downward closed: missing face of a simplex";
        if (e.value < it->second) return "not monotone: face value exceeds coface value";
      }
    }
    return std::nullopt;
  }

  bool valid() const { return !validation_error().has_value(); }

  friend bool operator==(const FilteredComplex&, const FilteredComplex&) = default;

 private:
  Eigen::Index vertex_count_ = 0;
  std::vector<Entry> entries_;
};

/// min over witnesses of max over the simplex's landmarks; inf if no witness
/// is finite on all of them.
template <typename Scalar>
Extended<Scalar> simplex_radius(const Dissimilarity<Scalar>& d, const Simplex& s) {
  for (auto v : s.vertices())
    if (v >= d.landmarks()) throw InvalidArgument("simplex vertex out of range");
  auto best = Extended<Scalar>::infinity();
  for (Eigen::Index w = 0; w < d.witnesses(); ++w) {
    Extended<Scalar> worst(Scalar(0));
    for (auto v : s.vertices()) worst = max(worst, d(v, w));
    best = min(best, worst);
  }
  return best;
}

namespace detail {

template <typename Scalar>
using SimplexMap = std::unordered_map<Simplex, Extended<Scalar>, SimplexHash>;

template <typename Scalar>
void keep_min(SimplexMap<Scalar>& m, const Simplex& s, const Extended<Scalar>& v) {
  auto [it, inserted] = m.emplace(s, v);
  if (!inserted && v < it->second) it->second = v;
}

// Runs column_fn(col, local_map) over all columns, splitting the columns
// across threads; merging by minimum keeps the result schedule independent.
template <typename Scalar, typename Fn>
SimplexMap<Scalar> collect_columns(Eigen::Index columns, unsigned threads, Fn column_fn) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<Eigen::Index>(columns, 1))));
  std::vector<SimplexMap<Scalar>> maps(threads);
  const auto work = [&](unsigned tid) {
    for (Eigen::Index c = tid; c < columns; c += threads) column_fn(c, maps[tid]);
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  for (unsigned t = 1; t < threads; ++t)
    for (const auto& [s, v] : maps[t]) keep_min(maps[0], s, v);
  return std::move(maps[0]);
}

// Depth-first enumeration of subsets of `support` (ascending vertices with
// their column values) with at most max_size elements. visit(simplex, value)
// returns false to prune all supersets reached through this simplex.
template <typename Scalar, typename Visit>
void enumerate_column(const std::vector<std::pair<Eigen::Index, Extended<Scalar>>>& support, std::size_t max_size,
                      Visit visit) {
  std::vector<Eigen::Index> current;
  std::function<void(std::size_t, Extended<Scalar>)> rec = [&](std::size_t from, Extended<Scalar> value) {
    for (std::size_t i = from; i < support.size(); ++i) {
      current.push_back(support[i].first);
      const auto v = max(value, support[i].second);
      Simplex s;
      s = Simplex(current);
      if (visit(s, v) && current.size() < max_size) rec(i + 1, v);
      current.pop_back();
    }
  };
  rec(0, Extended<Scalar>(Scalar(0)));
}

template <typename Scalar>
std::vector<std::pair<Eigen::Index, Extended<Scalar>>> finite_support(const Dissimilarity<Scalar>& d, Eigen::Index w) {
  std::vector<std::pair<Eigen::Index, Extended<Scalar>>> out;
  for (Eigen::Index l = 0; l < d.landmarks(); ++l)
    if (d(l, w).is_finite()) out.emplace_back(l, d(l, w));
  return out;
}

}  // namespace detail

/// All simplices of dimension <= max_dim on the landmarks with finite
/// radius, valued by their radius.
template <typename Scalar>
FilteredComplex<Scalar> build_dowker_nerve(const Dissimilarity<Scalar>& d, int max_dim, unsigned threads = 1) {
  if (max_dim < 0) throw InvalidArgument("max_dim must be >= 0");
  const auto max_size = static_cast<std::size_t>(max_dim) + 1;
  auto values = detail::collect_columns<Scalar>(d.witnesses(), threads, [&](Eigen::Index w, auto& map) {
    detail::enumerate_column<Scalar>(detail::finite_support(d, w), max_size,
                                     [&](const Simplex& s, const Extended<Scalar>& v) {
                                       detail::keep_min(map, s, v);
                                       return true;
                                     });
  });
  return FilteredComplex<Scalar>::from_map(d.landmarks(), values);
}

/// The sparse (phi, lambda)-nerve of the plan's gamma: a simplex of the
/// nerve of gamma is kept iff its radius is at most lambda(phi(k)) for each
/// of its vertices k.
template <typename Scalar>
FilteredComplex<Scalar> build_sparse_nerve(const Dissimilarity<Scalar>& gamma, const ParentForest& parents,
                                           const std::vector<Extended<Scalar>>& lambda, int max_dim,
                                           unsigned threads = 1) {
  if (max_dim < 0) throw InvalidArgument("max_dim must be >= 0");
  const Eigen::Index n = gamma.landmarks();
  if (static_cast<Eigen::Index>(parents.phi.size()) != n || static_cast<Eigen::Index>(lambda.size()) != n)
    throw InvalidArgument("plan sizes do not match gamma");
  std::vector<Extended<Scalar>> cap(static_cast<std::size_t>(n));
  for (Eigen::Index k = 0; k < n; ++k)
    cap[static_cast<std::size_t>(k)] = lambda[static_cast<std::size_t>(parents.phi[static_cast<std::size_t>(k)])];

  const auto max_size = static_cast<std::size_t>(max_dim) + 1;
  auto values = detail::collect_columns<Scalar>(gamma.witnesses(), threads, [&](Eigen::Index c, auto& map) {
    detail::enumerate_column<Scalar>(detail::finite_support(gamma, c), max_size,
                                     [&](const Simplex& s, const Extended<Scalar>& v) {
                                       // Radius only grows and the cap only shrinks on supersets.
                                       for (auto k : s.vertices())
                                         if (cap[static_cast<std::size_t>(k)] < v) return false;
                                       detail::keep_min(map, s, v);
                                       return true;
                                     });
  });
  return FilteredComplex<Scalar>::from_map(n, values);
}

template <typename Scalar>
FilteredComplex<Scalar> build_sparse_nerve(const SparsificationPlan<Scalar>& plan, int max_dim, unsigned threads = 1) {
  return build_sparse_nerve(plan.gamma, plan.parents, plan.lambda_sparse, max_dim, threads);
}

/// Flag complex of the nerve's 1-skeleton.
template <typename Scalar>
FilteredComplex<Scalar> build_rips(const Dissimilarity<Scalar>& d, int max_dim) {
  if (max_dim < 0) throw InvalidArgument("max_dim must be >= 0");
  const Eigen::Index n = d.landmarks();
  using V = Extended<Scalar>;
  std::vector<V> vertex(static_cast<std::size_t>(n), V::infinity());
  Eigen::Matrix<V, Eigen::Dynamic, Eigen::Dynamic> edge =
      Eigen::Matrix<V, Eigen::Dynamic, Eigen::Dynamic>::Constant(n, n, V::infinity());
  for (Eigen::Index w = 0; w < d.witnesses(); ++w) {
    for (Eigen::Index a = 0; a < n; ++a) {
      if (d(a, w).is_infinite()) continue;
      vertex[static_cast<std::size_t>(a)] = min(vertex[static_cast<std::size_t>(a)], d(a, w));
      for (Eigen::Index b = a + 1; b < n; ++b) edge(a, b) = min(edge(a, b), max(d(a, w), d(b, w)));
    }
  }

  std::vector<typename FilteredComplex<Scalar>::Entry> entries;
  std::vector<Eigen::Index> clique;
  std::function<void(Eigen::Index, V)> grow = [&](Eigen::Index from, V value) {
    for (Eigen::Index v = from; v < n; ++v) {
      V next = max(value, vertex[static_cast<std::size_t>(v)]);
      if (next.is_infinite()) continue;
      bool adjacent = true;
      for (auto u : clique) {
        if (edge(u, v).is_infinite()) {
          adjacent = false;
          break;
        }
        next = max(next, edge(u, v));
      }
      if (!adjacent) continue;
      clique.push_back(v);
      entries.push_back({Simplex(clique), next});
      if (static_cast<int>(clique.size()) <= max_dim) grow(v + 1, next);
      clique.pop_back();
    }
  };
  grow(0, V(Scalar(0)));
  return FilteredComplex<Scalar>(n, std::move(entries));
}

}  // namespace sdn
