#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "sdn/complex.hpp"
#include "sdn/dissimilarity.hpp"
#include "sdn/error.hpp"
#include "sdn/relation.hpp"
#include "sdn/sampling.hpp"
#include "sdn/sparsification.hpp"
#include "sdn/translation.hpp"

namespace sdn {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
struct Ball {
  Vector<Scalar> center;
  Scalar radius;
};

namespace detail {

template <typename Scalar>
using Points = typename PointCloud<Scalar>::Points;

// Point x = p0 + Q v in the affine hull of `ids` with
// |x - p_j|^2 - |x - p_0|^2 = shift_j - shift_0 for every j. Returns false
// when the points are affinely dependent.
template <typename Scalar>
bool affine_equidistant(const Points<Scalar>& pts, const std::vector<Eigen::Index>& ids,
                        const std::vector<Scalar>& shift, Vector<Scalar>& x) {
  const Vector<Scalar> p0 = pts.row(ids[0]).transpose();
  const auto m = static_cast<Eigen::Index>(ids.size()) - 1;
  if (m == 0) {
    x = p0;
    return true;
  }
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> q(pts.cols(), m);
  for (Eigen::Index j = 0; j < m; ++j) q.col(j) = pts.row(ids[static_cast<std::size_t>(j + 1)]).transpose() - p0;
  const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> a = Scalar(2) * q.transpose() * q;
  Vector<Scalar> b(m);
  for (Eigen::Index j = 0; j < m; ++j)
    b(j) = q.col(j).squaredNorm() - (shift[static_cast<std::size_t>(j + 1)] - shift[0]);
  Eigen::FullPivLU<Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>> lu(a);
  lu.setThreshold(Scalar(1e-12));
  if (!lu.isInvertible()) return false;
  x = p0 + q * lu.solve(b);
  return true;
}

template <typename Scalar>
Ball<Scalar> circumball(const Points<Scalar>& pts, const std::vector<Eigen::Index>& support, bool& ok) {
  Ball<Scalar> b;
  const std::vector<Scalar> zero(support.size(), Scalar(0));
  ok = affine_equidistant(pts, support, zero, b.center);
  if (ok) b.radius = (b.center - pts.row(support[0]).transpose()).norm();
  return b;
}

// Move-to-front recursion over list[0, end) with the given boundary points.
template <typename Scalar>
bool mtf_ball(const Points<Scalar>& pts, std::vector<Eigen::Index>& list, std::size_t end,
              std::vector<Eigen::Index>& support, Ball<Scalar>& ball) {
  bool have = false;
  if (!support.empty()) {
    have = true;
    bool ok = true;
    ball = circumball<Scalar>(pts, support, ok);
    if (!ok) return false;
    if (static_cast<Eigen::Index>(support.size()) == pts.cols() + 1) return true;
  }
  for (std::size_t k = 0; k < end; ++k) {
    const Eigen::Index i = list[k];
    if (have) {
      const Scalar d = (pts.row(i).transpose() - ball.center).norm();
      if (d <= ball.radius * (Scalar(1) + Scalar(1e-12))) continue;
    }
    support.push_back(i);
    Ball<Scalar> sub;
    const bool ok = mtf_ball(pts, list, k, support, sub);
    support.pop_back();
    if (!ok) continue;
    ball = std::move(sub);
    have = true;
    std::rotate(list.begin(), list.begin() + static_cast<std::ptrdiff_t>(k),
                list.begin() + static_cast<std::ptrdiff_t>(k) + 1);
  }
  return have;
}

template <typename Scalar>
void require_euclidean(const PointCloud<Scalar>& p) {
  if (p.metric != Metric::euclidean) throw InvalidArgument("operation requires the euclidean metric");
}

// Raises every simplex value to the maximum over its facets.
template <typename Scalar>
void clamp_to_faces(SimplexMap<Scalar>& values) {
  std::vector<const Simplex*> order;
  order.reserve(values.size());
  for (const auto& kv : values) order.push_back(&kv.first);
  std::sort(order.begin(), order.end(), [](const Simplex* a, const Simplex* b) {
    if (a->size() != b->size()) return a->size() < b->size();
    return *a < *b;
  });
  for (const Simplex* s : order) {
    auto& v = values.at(*s);
    for (const auto& f : s->facets()) {
      auto it = values.find(f);
      if (it != values.end()) v = max(v, it->second);
    }
  }
}

}  // namespace detail

/// Minimum enclosing ball of the selected rows (move-to-front).
template <typename Scalar>
Ball<Scalar> miniball(const PointCloud<Scalar>& p, std::vector<Eigen::Index> subset) {
  detail::require_euclidean(p);
  if (subset.empty()) throw InvalidArgument("miniball of an empty subset");
  for (auto i : subset)
    if (i < 0 || i >= p.size()) throw InvalidArgument("point index out of range");
  std::vector<Eigen::Index> support;
  Ball<Scalar> ball;
  detail::mtf_ball(p.points, subset, subset.size(), support, ball);
  return ball;
}

template <typename Scalar>
Ball<Scalar> miniball(const PointCloud<Scalar>& p) {
  std::vector<Eigen::Index> all(static_cast<std::size_t>(p.size()));
  for (Eigen::Index i = 0; i < p.size(); ++i) all[static_cast<std::size_t>(i)] = i;
  return miniball(p, std::move(all));
}

/// Cech complex with witnesses ranging over all of R^d: each simplex is
/// valued by the radius of its minimum enclosing ball.
template <typename Scalar>
FilteredComplex<Scalar> build_euclidean_cech(const PointCloud<Scalar>& p, int max_dim) {
  detail::require_euclidean(p);
  if (max_dim < 0) throw InvalidArgument("max_dim must be >= 0");
  const auto max_size = static_cast<std::size_t>(max_dim) + 1;
  detail::SimplexMap<Scalar> values;
  std::vector<Eigen::Index> current;
  std::function<void(Eigen::Index)> rec = [&](Eigen::Index from) {
    for (Eigen::Index i = from; i < p.size(); ++i) {
      current.push_back(i);
      values.emplace(Simplex(current), Extended<Scalar>(miniball(p, current).radius));
      if (current.size() < max_size) rec(i + 1);
      current.pop_back();
    }
  };
  rec(0);
  detail::clamp_to_faces(values);
  return FilteredComplex<Scalar>::from_map(p.size(), values);
}

// ---------------------------------------------------------------------------
// Sparse Cech complex: Lambda(x, k) = d(x, p_k) with x ranging over R^d.

/// Points in greedy order with insertion radii lambda_ins, truncation
/// thresholds theta and sparse-nerve radii lambda; the parent function is
/// the identity.
template <typename Scalar>
struct SparseCechPlan {
  PointCloud<Scalar> ordered;
  std::vector<Eigen::Index> permutation;
  Scalar epsilon;
  TranslationMap<Scalar> alpha;
  TranslationMap<Scalar> beta;
  std::vector<Extended<Scalar>> lambda_ins;
  std::vector<Extended<Scalar>> thresholds;
  std::vector<Extended<Scalar>> lambda;
  ParentForest parents;
};

/// T = P x [n], multiplicative preset, lambda = lambda_ins (1+eps)^2 / eps.
template <typename Scalar>
SparseCechPlan<Scalar> sparse_cech_plan(const PointCloud<Scalar>& p, const GreedyOrder<Scalar>& greedy,
                                        const Scalar& epsilon) {
  detail::require_euclidean(p);
  if (p.size() == 0) throw InvalidArgument("empty point cloud");
  if (static_cast<Eigen::Index>(greedy.permutation.size()) != p.size())
    throw InvalidArgument("greedy order does not match point cloud");
  auto [alpha, beta] = multiplicative_preset(epsilon);
  SparseCechPlan<Scalar> plan{p.reordered(greedy.permutation), greedy.permutation, epsilon, alpha, beta, {}, {}, {},
                              {}};
  const Eigen::Index n = p.size();
  plan.lambda_ins = insertion_radii(from_point_cloud(plan.ordered), Relation::full(n, n));
  plan.thresholds = truncation_thresholds(plan.lambda_ins, alpha, beta);
  const Scalar scale = (Scalar(1) + epsilon) * (Scalar(1) + epsilon) / epsilon;
  for (const auto& l : plan.lambda_ins) plan.lambda.push_back(scale * l);
  plan.parents.phi.resize(static_cast<std::size_t>(n));
  for (Eigen::Index k = 0; k < n; ++k) plan.parents.phi[static_cast<std::size_t>(k)] = k;
  return plan;
}

namespace detail {

// min over x of max_k (|x - p_k|^2 - r2_k). The minimiser is the
// equal-value point in the affine hull of some affinely independent subset,
// so the least objective over those points is the optimum.
template <typename Scalar>
Scalar power_minmax(const Points<Scalar>& pts, const std::vector<Eigen::Index>& ids, const std::vector<Scalar>& r2) {
  const auto objective = [&](const Vector<Scalar>& x) {
    Scalar worst = -std::numeric_limits<Scalar>::infinity();
    for (std::size_t k = 0; k < ids.size(); ++k)
      worst = std::max(worst, (x - pts.row(ids[k]).transpose()).squaredNorm() - r2[k]);
    return worst;
  };
  Scalar best = std::numeric_limits<Scalar>::infinity();
  const auto max_size = std::min<std::size_t>(ids.size(), static_cast<std::size_t>(pts.cols()) + 1);
  std::vector<Eigen::Index> sub;
  std::vector<Scalar> shift;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    for (std::size_t k = from; k < ids.size(); ++k) {
      sub.push_back(ids[k]);
      shift.push_back(r2[k]);
      Vector<Scalar> x;
      if (affine_equidistant(pts, sub, shift, x)) {
        best = std::min(best, objective(x));
        if (sub.size() < max_size) rec(k + 1);
      }
      sub.pop_back();
      shift.pop_back();
    }
  };
  rec(0);
  return best;
}

}  // namespace detail

/// Radius of sigma in the truncated nerve: the least max_k d(p_k, x) over
/// x with d(p_k, x) <= theta_k for all k in sigma; inf if no such x.
/// Computed by bisection on the feasibility of a ball intersection.
template <typename Scalar>
Extended<Scalar> truncated_ambient_radius(const PointCloud<Scalar>& p, const std::vector<Eigen::Index>& sigma,
                                          const std::vector<Extended<Scalar>>& theta) {
  using std::sqrt;
  Scalar diam(0);
  Scalar max_theta(0);
  for (auto a : sigma) {
    for (auto b : sigma) diam = std::max(diam, p.distance(a, b));
    if (theta[static_cast<std::size_t>(a)].is_finite())
      max_theta = std::max(max_theta, theta[static_cast<std::size_t>(a)].value());
  }
  const auto feasible = [&](const Scalar& t, const Scalar& slack) {
    std::vector<Scalar> r2;
    for (auto a : sigma) {
      const auto& th = theta[static_cast<std::size_t>(a)];
      const Scalar r = th.is_finite() ? std::min(t, th.value()) : t;
      r2.push_back(r * r);
    }
    return detail::power_minmax(p.points, sigma, r2) <= slack;
  };
  Scalar hi = max_theta + diam;
  const Scalar scale = std::max(hi, Scalar(1));
  if (!feasible(hi, Scalar(1e-12) * scale * scale)) return Extended<Scalar>::infinity();
  Scalar lo(0);
  if (feasible(lo, Scalar(0))) return Extended<Scalar>(Scalar(0));
  for (int it = 0; it < 200 && hi - lo > Scalar(1e-15) * hi; ++it) {
    const Scalar mid = (lo + hi) / Scalar(2);
    if (feasible(mid, Scalar(0)))
      hi = mid;
    else
      lo = mid;
  }
  return Extended<Scalar>(hi);
}

/// Sparse nerve of the truncated ambient dissimilarity: sigma is kept with
/// its radius r iff r <= lambda(phi(k)) for every k in sigma.
template <typename Scalar>
FilteredComplex<Scalar> build_sparse_cech(const SparseCechPlan<Scalar>& plan, int max_dim) {
  if (max_dim < 0) throw InvalidArgument("max_dim must be >= 0");
  const Eigen::Index n = plan.ordered.size();
  const auto max_size = static_cast<std::size_t>(max_dim) + 1;
  detail::SimplexMap<Scalar> values;
  std::vector<Eigen::Index> current;
  std::function<void(Eigen::Index)> rec = [&](Eigen::Index from) {
    for (Eigen::Index i = from; i < n; ++i) {
      current.push_back(i);
      const auto r = truncated_ambient_radius(plan.ordered, current, plan.thresholds);
      bool keep = r.is_finite();
      for (auto k : current)
        keep = keep && r <= plan.lambda[static_cast<std::size_t>(plan.parents.phi[static_cast<std::size_t>(k)])];
      if (keep) {
        values.emplace(Simplex(current), r);
        if (current.size() < max_size) rec(i + 1);
      }
      current.pop_back();
    }
  };
  rec(0);
  detail::clamp_to_faces(values);
  return FilteredComplex<Scalar>::from_map(n, values);
}

}  // namespace sdn
