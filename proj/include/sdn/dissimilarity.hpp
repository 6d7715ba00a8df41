#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <type_traits>
#include <utility>
#include <vector>

#include "sdn/error.hpp"
#include "sdn/extended.hpp"
#include "sdn/relation.hpp"

namespace sdn {

template <typename Scalar>
using ExtendedMatrix = Eigen::Matrix<Extended<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

inline std::vector<std::string> index_labels(Eigen::Index n) {
  std::vector<std::string> out;
  out.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) out.push_back(std::to_string(i));
  return out;
}

/// A Dowker dissimilarity L x W -> [0, inf]. Rows index landmarks, columns
/// index witnesses.
template <typename Scalar>
class Dissimilarity {
 public:
  using Value = Extended<Scalar>;
  using Grid = ExtendedMatrix<Scalar>;

  Dissimilarity() = default;

  explicit Dissimilarity(Grid values)
      : l_labels_(index_labels(values.rows())),
        w_labels_(index_labels(values.cols())),
        values_(std::move(values)) {}

  Dissimilarity(std::vector<std::string> l_labels, std::vector<std::string> w_labels, Grid values)
      : l_labels_(std::move(l_labels)), w_labels_(std::move(w_labels)), values_(std::move(values)) {
    if (static_cast<Eigen::Index>(l_labels_.size()) != values_.rows() ||
        static_cast<Eigen::Index>(w_labels_.size()) != values_.cols())
      throw InvalidArgument("dissimilarity labels do not match grid dimensions");
  }

  /// Convenience for literals; std::numeric_limits infinity becomes inf.
  static Dissimilarity from_rows(const std::vector<std::vector<Scalar>>& rows) {
    const auto n_rows = static_cast<Eigen::Index>(rows.size());
    const auto n_cols = rows.empty() ? Eigen::Index(0) : static_cast<Eigen::Index>(rows[0].size());
    Grid g(n_rows, n_cols);
    for (Eigen::Index i = 0; i < n_rows; ++i) {
      if (static_cast<Eigen::Index>(rows[i].size()) != n_cols)
        throw InvalidArgument("ragged dissimilarity rows");
      for (Eigen::Index j = 0; j < n_cols; ++j) g(i, j) = Value(rows[i][j]);
    }
    return Dissimilarity(std::move(g));
  }

  Eigen::Index landmarks() const { return values_.rows(); }
  Eigen::Index witnesses() const { return values_.cols(); }
  bool square() const { return landmarks() == witnesses(); }

  const Value& operator()(Eigen::Index l, Eigen::Index w) const { return values_(l, w); }
  const Grid& values() const { return values_; }
  const std::vector<std::string>& landmark_labels() const { return l_labels_; }
  const std::vector<std::string>& witness_labels() const { return w_labels_; }

  friend bool operator==(const Dissimilarity& a, const Dissimilarity& b) {
    return a.values_.rows() == b.values_.rows() && a.values_.cols() == b.values_.cols() &&
           a.values_ == b.values_;
  }

 private:
  std::vector<std::string> l_labels_;
  std::vector<std::string> w_labels_;
  Grid values_;
};

/// The relation Lambda_t = {(l,w) | Lambda(l,w) < t}.
template <typename Scalar>
Relation slice_at(const Dissimilarity<Scalar>& d, const Extended<Scalar>& t) {
  Relation r(d.landmarks(), d.witnesses());
  for (Eigen::Index l = 0; l < d.landmarks(); ++l)
    for (Eigen::Index w = 0; w < d.witnesses(); ++w)
      if (d(l, w) < t) r.insert(l, w);
  return r;
}

template <typename Scalar>
Dissimilarity<Scalar> transpose(const Dissimilarity<Scalar>& d) {
  return Dissimilarity<Scalar>(d.witness_labels(), d.landmark_labels(),
                               typename Dissimilarity<Scalar>::Grid(d.values().transpose()));
}

/// sup over witnesses of the distance to the nearest landmark.
template <typename Scalar>
Extended<Scalar> cover_radius(const Dissimilarity<Scalar>& d) {
  if (d.landmarks() == 0 || d.witnesses() == 0) throw InvalidArgument("empty index set");
  return d.values().colwise().minCoeff().maxCoeff();
}

/// Witnesses strictly within distance t of landmark l.
template <typename Scalar>
std::vector<Eigen::Index> ball(const Dissimilarity<Scalar>& d, Eigen::Index l,
                               const Extended<Scalar>& t) {
  if (l < 0 || l >= d.landmarks()) throw InvalidArgument("landmark index out of range");
  std::vector<Eigen::Index> out;
  for (Eigen::Index w = 0; w < d.witnesses(); ++w)
    if (d(l, w) < t) out.push_back(w);
  return out;
}

/// Pairs (l,w) where l minimizes Lambda(., w); all minimizers are kept.
template <typename Scalar>
Relation nearest_point_triangle_relation(const Dissimilarity<Scalar>& d) {
  Relation r(d.landmarks(), d.witnesses());
  if (d.landmarks() == 0) return r;
  for (Eigen::Index w = 0; w < d.witnesses(); ++w) {
    const Extended<Scalar> best = d.values().col(w).minCoeff();
    for (Eigen::Index l = 0; l < d.landmarks(); ++l)
      if (d(l, w) == best) r.insert(l, w);
  }
  return r;
}

struct TriangleViolation {
  enum class Kind { uncovered_witness, triangle_inequality };
  Kind kind;
  // For uncovered_witness only w is meaningful.
  Eigen::Index l = -1, w = -1, l2 = -1, w2 = -1;
};

struct TriangleCheck {
  bool ok = true;
  std::optional<TriangleViolation> violation;
  explicit operator bool() const { return ok; }
};

/// Exhaustive check that T is a triangle relation for the dissimilarity:
/// every witness is covered, and for (l,w) in T and any (l2,w2),
/// Lambda(l2,w2) <= Lambda(l2,w) + Lambda(l,w2) + Lambda(l,w).
/// Floating scalars get a relative slack of a few ulps for rounded sums.
template <typename Scalar>
TriangleCheck verify_triangle_relation(const Dissimilarity<Scalar>& d, const Relation& t) {
  if (t.rows() != d.landmarks() || t.cols() != d.witnesses())
    throw InvalidArgument("relation does not match dissimilarity shape");
  Scalar slack(1);
  if constexpr (std::is_floating_point_v<Scalar>) slack += Scalar(64) * std::numeric_limits<Scalar>::epsilon();
  using V = TriangleViolation;
  for (Eigen::Index w = 0; w < d.witnesses(); ++w)
    if (!t.mask().col(w).any()) return {false, V{V::Kind::uncovered_witness, -1, w}};
  for (auto [l, w] : t.pairs()) {
    for (Eigen::Index l2 = 0; l2 < d.landmarks(); ++l2)
      for (Eigen::Index w2 = 0; w2 < d.witnesses(); ++w2)
        if (d(l2, w2) > slack * (d(l2, w) + d(l, w2) + d(l, w)))
          return {false, V{V::Kind::triangle_inequality, l, w, l2, w2}};
  }
  return {};
}

/// sup of the dissimilarity over the pairs of a non-empty relation.
template <typename Scalar>
Extended<Scalar> sup_over(const Dissimilarity<Scalar>& d, const Relation& t) {
  if (t.rows() != d.landmarks() || t.cols() != d.witnesses())
    throw InvalidArgument("relation does not match dissimilarity shape");
  if (t.empty()) throw InvalidArgument("sup over empty relation");
  Extended<Scalar> best(Scalar(0));
  for (auto [l, w] : t.pairs()) best = max(best, d(l, w));
  return best;
}

/// Column permutation: result column k is input column order[k].
template <typename Scalar>
Dissimilarity<Scalar> reorder_witnesses(const Dissimilarity<Scalar>& d,
                                        const std::vector<Eigen::Index>& order) {
  if (static_cast<Eigen::Index>(order.size()) != d.witnesses())
    throw InvalidArgument("witness order has wrong length");
  typename Dissimilarity<Scalar>::Grid g(d.landmarks(), d.witnesses());
  std::vector<std::string> labels;
  std::vector<bool> seen(order.size(), false);
  for (std::size_t k = 0; k < order.size(); ++k) {
    const Eigen::Index src = order[k];
    if (src < 0 || src >= d.witnesses() || seen[static_cast<std::size_t>(src)])
      throw InvalidArgument("witness order is not a permutation");
    seen[static_cast<std::size_t>(src)] = true;
    g.col(static_cast<Eigen::Index>(k)) = d.values().col(src);
    labels.push_back(d.witness_labels()[static_cast<std::size_t>(src)]);
  }
  return Dissimilarity<Scalar>(d.landmark_labels(), std::move(labels), std::move(g));
}

// ---------------------------------------------------------------------------
// Point clouds

enum class Metric { euclidean, manhattan, chebyshev };

inline Metric parse_metric(std::string_view tag) {
  if (tag == "euclidean") return Metric::euclidean;
  if (tag == "manhattan") return Metric::manhattan;
  if (tag == "chebyshev") return Metric::chebyshev;
  throw InvalidArgument("unknown metric tag: " + std::string(tag));
}

inline std::string_view metric_name(Metric m) {
  switch (m) {
    case Metric::euclidean: return "euclidean";
    case Metric::manhattan: return "manhattan";
    case Metric::chebyshev: return "chebyshev";
  }
  return "unknown";
}

/// n points in R^d, one per row.
template <typename Scalar>
struct PointCloud {
  using Points = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  PointCloud() = default;
  PointCloud(Points pts, Metric m = Metric::euclidean) : points(std::move(pts)), metric(m) {
    if (points.rows() > 0 && points.cols() < 1)
      throw InvalidArgument("point dimension must be at least 1");
  }

  Eigen::Index size() const { return points.rows(); }
  Eigen::Index dimension() const { return points.cols(); }

  Scalar distance(Eigen::Index i, Eigen::Index j) const {
    using std::sqrt;
    const auto diff = (points.row(i) - points.row(j)).array();
    switch (metric) {
      case Metric::euclidean: return sqrt(diff.square().sum());
      case Metric::manhattan: return diff.abs().sum();
      case Metric::chebyshev: return diff.abs().maxCoeff();
    }
    throw InvalidArgument("unknown metric");
  }

  /// Rows reordered: result row k is input row order[k].
  PointCloud reordered(const std::vector<Eigen::Index>& order) const {
    Points out(static_cast<Eigen::Index>(order.size()), dimension());
    for (std::size_t k = 0; k < order.size(); ++k)
      out.row(static_cast<Eigen::Index>(k)) = points.row(order[k]);
    return PointCloud(std::move(out), metric);
  }

  Points points;
  Metric metric = Metric::euclidean;
};

/// Restriction of the point metric to landmarks x witnesses.
template <typename Scalar>
Dissimilarity<Scalar> from_point_cloud(const PointCloud<Scalar>& p,
                                       const std::vector<Eigen::Index>& landmarks,
                                       const std::vector<Eigen::Index>& witnesses) {
  const auto in_range = [&](Eigen::Index i) { return i >= 0 && i < p.size(); };
  if (!std::all_of(landmarks.begin(), landmarks.end(), in_range) ||
      !std::all_of(witnesses.begin(), witnesses.end(), in_range))
    throw InvalidArgument("point index out of range");
  typename Dissimilarity<Scalar>::Grid g(static_cast<Eigen::Index>(landmarks.size()),
                                         static_cast<Eigen::Index>(witnesses.size()));
  std::vector<std::string> ll, wl;
  for (auto l : landmarks) ll.push_back(std::to_string(l));
  for (auto w : witnesses) wl.push_back(std::to_string(w));
  for (std::size_t i = 0; i < landmarks.size(); ++i)
    for (std::size_t j = 0; j < witnesses.size(); ++j)
      g(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          Extended<Scalar>(p.distance(landmarks[i], witnesses[j]));
  return Dissimilarity<Scalar>(std::move(ll), std::move(wl), std::move(g));
}

/// L = W = all points.
template <typename Scalar>
Dissimilarity<Scalar> from_point_cloud(const PointCloud<Scalar>& p) {
  std::vector<Eigen::Index> all(static_cast<std::size_t>(p.size()));
  for (Eigen::Index i = 0; i < p.size(); ++i) all[static_cast<std::size_t>(i)] = i;
  return from_point_cloud(p, all, all);
}

// ---------------------------------------------------------------------------
// Networks

/// Weighted directed network; absent edges are inf.
template <typename Scalar>
struct Network {
  Network() = default;
  explicit Network(ExtendedMatrix<Scalar> w) : labels(index_labels(w.rows())), weights(std::move(w)) {
    if (weights.rows() != weights.cols()) throw InvalidArgument("network weights must be square");
  }
  Network(std::vector<std::string> l, ExtendedMatrix<Scalar> w)
      : labels(std::move(l)), weights(std::move(w)) {
    if (weights.rows() != weights.cols()) throw InvalidArgument("network weights must be square");
    if (static_cast<Eigen::Index>(labels.size()) != weights.rows())
      throw InvalidArgument("network labels do not match weights");
  }

  /// n nodes with zero self loops and the listed directed edges; everything
  /// else is inf.
  static Network from_edges(Eigen::Index n,
                            const std::vector<std::tuple<Eigen::Index, Eigen::Index, Extended<Scalar>>>& edges) {
    ExtendedMatrix<Scalar> w = ExtendedMatrix<Scalar>::Constant(n, n, Extended<Scalar>::infinity());
    for (Eigen::Index i = 0; i < n; ++i) w(i, i) = Extended<Scalar>(Scalar(0));
    for (const auto& [i, j, x] : edges) {
      if (i < 0 || j < 0 || i >= n || j >= n) throw InvalidArgument("edge endpoint out of range");
      w(i, j) = x;
    }
    return Network(std::move(w));
  }

  Eigen::Index size() const { return weights.rows(); }
  const Extended<Scalar>& operator()(Eigen::Index i, Eigen::Index j) const { return weights(i, j); }

  std::vector<std::string> labels;
  ExtendedMatrix<Scalar> weights;
};

template <typename Scalar>
Dissimilarity<Scalar> from_network(const Network<Scalar>& n) {
  return Dissimilarity<Scalar>(n.labels, n.labels, n.weights);
}

}  // namespace sdn
