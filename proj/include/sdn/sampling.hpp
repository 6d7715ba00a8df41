#pragma once

#include <vector>

#include "sdn/dissimilarity.hpp"
#include "sdn/error.hpp"
#include "sdn/extended.hpp"
#include "sdn/relation.hpp"

namespace sdn {

/// Farthest point ordering: permutation[k] is the k-th chosen point and
/// radii[k] its distance to the points chosen before it (radii[0] = inf).
template <typename Scalar>
struct GreedyOrder {
  std::vector<Eigen::Index> permutation;
  std::vector<Extended<Scalar>> radii;
};

/// Greedy permutation of a square dissimilarity. The distance from a
/// candidate x to a chosen point p is d(x, p); ties go to the smallest index.
template <typename Scalar>
GreedyOrder<Scalar> greedy_order(const Dissimilarity<Scalar>& d, Eigen::Index start = 0) {
  if (!d.square()) throw InvalidArgument("greedy order needs a square dissimilarity");
  const Eigen::Index n = d.landmarks();
  if (n == 0) return {};
  if (start < 0 || start >= n) throw InvalidArgument("start index out of range");

  GreedyOrder<Scalar> out;
  std::vector<bool> chosen(static_cast<std::size_t>(n), false);
  std::vector<Extended<Scalar>> nearest(static_cast<std::size_t>(n), Extended<Scalar>::infinity());

  Eigen::Index next = start;
  Extended<Scalar> radius = Extended<Scalar>::infinity();
  for (Eigen::Index k = 0; k < n; ++k) {
    out.permutation.push_back(next);
    out.radii.push_back(radius);
    chosen[static_cast<std::size_t>(next)] = true;

    Eigen::Index best = -1;
    for (Eigen::Index x = 0; x < n; ++x) {
      if (chosen[static_cast<std::size_t>(x)]) continue;
      auto& nx = nearest[static_cast<std::size_t>(x)];
      nx = min(nx, d(x, next));
      if (best < 0 || nearest[static_cast<std::size_t>(best)] < nx) best = x;
    }
    if (best < 0) break;
    next = best;
    radius = nearest[static_cast<std::size_t>(best)];
  }
  return out;
}

template <typename Scalar>
GreedyOrder<Scalar> greedy_order(const PointCloud<Scalar>& p, Eigen::Index start = 0) {
  return greedy_order(from_point_cloud(p), start);
}

/// lambda(0) = inf and, for k > 0, the sup over landmarks l in the domain
/// of T of min_{i < k} d(l, i). Witnesses are taken in their given order.
template <typename Scalar>
std::vector<Extended<Scalar>> insertion_radii(const Dissimilarity<Scalar>& d, const Relation& t) {
  if (t.rows() != d.landmarks() || t.cols() != d.witnesses())
    throw InvalidArgument("relation does not match dissimilarity shape");
  std::vector<Eigen::Index> domain;
  for (Eigen::Index l = 0; l < d.landmarks(); ++l)
    if (t.mask().row(l).any()) domain.push_back(l);
  if (domain.empty()) throw InvalidArgument("triangle relation has empty domain");

  const Eigen::Index n = d.witnesses();
  std::vector<Extended<Scalar>> radii;
  if (n == 0) return radii;
  radii.push_back(Extended<Scalar>::infinity());

  // prefix_min[j] = min over witnesses seen so far for domain landmark j
  std::vector<Extended<Scalar>> prefix_min(domain.size(), Extended<Scalar>::infinity());
  for (Eigen::Index k = 1; k < n; ++k) {
    Extended<Scalar> sup(Scalar(0));
    for (std::size_t j = 0; j < domain.size(); ++j) {
      prefix_min[j] = min(prefix_min[j], d(domain[j], k - 1));
      sup = max(sup, prefix_min[j]);
    }
    radii.push_back(sup);
  }
  return radii;
}

}  // namespace sdn
