#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "sdn/dissimilarity.hpp"
#include "sdn/error.hpp"
#include "sdn/extended.hpp"
#include "sdn/relation.hpp"
#include "sdn/sampling.hpp"
#include "sdn/translation.hpp"

namespace sdn {

/// phi[k] is the parent of witness k; phi[0] = 0 and phi[k] < k.
struct ParentForest {
  std::vector<Eigen::Index> phi;
  friend bool operator==(const ParentForest&, const ParentForest&) = default;
};

/// Everything the sparse nerve builder needs.
template <typename Scalar>
struct SparsificationPlan {
  /// witness_order[k] is the original witness index placed at position k.
  std::vector<Eigen::Index> witness_order;
  /// Dissimilarity with witnesses in plan order.
  Dissimilarity<Scalar> ordered;
  Relation triangle;
  TranslationMap<Scalar> alpha;
  TranslationMap<Scalar> beta;
  std::vector<Extended<Scalar>> lambda_ins;
  /// alpha(beta^<-(lambda_ins(k))), used both as truncation threshold and as
  /// the sparse nerve's lambda.
  std::vector<Extended<Scalar>> lambda_sparse;
  /// Transpose of the truncated dissimilarity: rows are plan witnesses.
  Dissimilarity<Scalar> gamma;
  ParentForest parents;
};

template <typename Scalar>
std::vector<Extended<Scalar>> truncation_thresholds(const std::vector<Extended<Scalar>>& lambda,
                                                    const TranslationMap<Scalar>& alpha,
                                                    const TranslationMap<Scalar>& beta) {
  if (!alpha.dominates_identity()) throw InvalidArgument("alpha must dominate the identity");
  const auto beta_inv = generalized_inverse(beta);
  std::vector<Extended<Scalar>> out;
  out.reserve(lambda.size());
  for (const auto& l : lambda) out.push_back(alpha(beta_inv(l)));
  return out;
}

/// Entries above their column threshold become inf.
template <typename Scalar>
Dissimilarity<Scalar> truncate_at(const Dissimilarity<Scalar>& d,
                                  const std::vector<Extended<Scalar>>& thresholds) {
  if (static_cast<Eigen::Index>(thresholds.size()) != d.witnesses())
    throw InvalidArgument("threshold count does not match witness count");
  typename Dissimilarity<Scalar>::Grid g = d.values();
  for (Eigen::Index w = 0; w < d.witnesses(); ++w)
    for (Eigen::Index l = 0; l < d.landmarks(); ++l)
      if (g(l, w) > thresholds[static_cast<std::size_t>(w)]) g(l, w) = Extended<Scalar>::infinity();
  return Dissimilarity<Scalar>(d.landmark_labels(), d.witness_labels(), std::move(g));
}

/// The (lambda, alpha, beta)-truncation: keep Lambda(l,w) when it is at most
/// alpha(beta^<-(lambda(w))), otherwise inf.
template <typename Scalar>
Dissimilarity<Scalar> truncate(const Dissimilarity<Scalar>& d, const std::vector<Extended<Scalar>>& lambda,
                               const TranslationMap<Scalar>& alpha, const TranslationMap<Scalar>& beta) {
  if (static_cast<Eigen::Index>(lambda.size()) != d.witnesses())
    throw InvalidArgument("insertion function length does not match witness count");
  return truncate_at(d, truncation_thresholds(lambda, alpha, beta));
}

namespace detail {

template <typename Scalar>
std::vector<bool> row_ball(const Dissimilarity<Scalar>& d, Eigen::Index row, const Extended<Scalar>& t) {
  std::vector<bool> b(static_cast<std::size_t>(d.witnesses()));
  for (Eigen::Index c = 0; c < d.witnesses(); ++c) b[static_cast<std::size_t>(c)] = d(row, c) < t;
  return b;
}

inline bool ball_subset(const std::vector<bool>& a, const std::vector<bool>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] && !b[i]) return false;
  return true;
}

}  // namespace detail

/// phi(k) = max{i < k | B(k, lambda(k)) subset of B(i, lambda(i)) and
/// lambda(k) <= lambda(i)}, balls taken in the rows of gamma.
template <typename Scalar>
ParentForest parent_function(const Dissimilarity<Scalar>& gamma, const std::vector<Extended<Scalar>>& lambda) {
  const Eigen::Index n = gamma.landmarks();
  if (static_cast<Eigen::Index>(lambda.size()) != n)
    throw InvalidArgument("lambda length does not match the vertex count");
  ParentForest out;
  if (n == 0) return out;
  for (Eigen::Index c = 0; c < gamma.witnesses(); ++c)
    if (gamma(0, c).is_infinite()) throw InvalidArgument("root does not cover");

  std::vector<std::vector<bool>> balls;
  balls.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index k = 0; k < n; ++k) balls.push_back(detail::row_ball(gamma, k, lambda[static_cast<std::size_t>(k)]));

  out.phi.assign(static_cast<std::size_t>(n), 0);
  for (Eigen::Index k = 1; k < n; ++k) {
    const auto ku = static_cast<std::size_t>(k);
    for (Eigen::Index i = k - 1; i >= 0; --i) {
      const auto iu = static_cast<std::size_t>(i);
      if (lambda[ku] <= lambda[iu] && detail::ball_subset(balls[ku], balls[iu])) {
        out.phi[ku] = i;
        break;
      }
    }
  }
  return out;
}

struct HypothesisViolation {
  int condition;  // 1..4
  Eigen::Index vertex;
  std::string detail;
};

struct HypothesisCheck {
  std::vector<HypothesisViolation> violations;
  bool ok() const { return violations.empty(); }
  explicit operator bool() const { return ok(); }
};

/// Exhaustive check of the four conditions under which the sparse nerve
/// of (gamma, phi, lambda) is a deformation retract of the nerve of gamma:
/// (1) phi reaches a common root, (2) balls nest along phi, (3) balls are
/// constant above lambda (checked at t = lambda(l) and t = inf), (4) lambda
/// does not decrease along phi.
template <typename Scalar>
HypothesisCheck check_sparsification_hypotheses(const Dissimilarity<Scalar>& gamma, const ParentForest& forest,
                                                const std::vector<Extended<Scalar>>& lambda) {
  const Eigen::Index n = gamma.landmarks();
  HypothesisCheck out;
  if (static_cast<Eigen::Index>(forest.phi.size()) != n || static_cast<Eigen::Index>(lambda.size()) != n) {
    out.violations.push_back({1, -1, "parent or lambda length does not match vertex count"});
    return out;
  }
  if (n == 0) return out;
  const auto& phi = forest.phi;
  for (Eigen::Index v = 0; v < n; ++v) {
    const Eigen::Index p = phi[static_cast<std::size_t>(v)];
    if (p < 0 || p >= n) {
      out.violations.push_back({1, v, "parent out of range"});
      return out;
    }
  }
  const auto iterate = [&](Eigen::Index v) {
    for (Eigen::Index s = 0; s < n; ++s) v = phi[static_cast<std::size_t>(v)];
    return v;
  };
  const Eigen::Index root = iterate(0);
  if (phi[static_cast<std::size_t>(root)] != root) out.violations.push_back({1, root, "no fixed root"});
  for (Eigen::Index v = 0; v < n; ++v)
    if (iterate(v) != root) out.violations.push_back({1, v, "does not reach the root"});

  const auto inf = Extended<Scalar>::infinity();
  for (Eigen::Index v = 0; v < n; ++v) {
    const auto vu = static_cast<std::size_t>(v);
    const auto pu = static_cast<std::size_t>(phi[vu]);
    const auto own = detail::row_ball(gamma, v, lambda[vu]);
    if (!detail::ball_subset(own, detail::row_ball(gamma, phi[vu], lambda[pu])))
      out.violations.push_back({2, v, "ball not contained in parent ball"});
    if (own != detail::row_ball(gamma, v, inf))
      out.violations.push_back({3, v, "ball grows above lambda (t = inf)"});
    if (lambda[pu] < lambda[vu]) out.violations.push_back({4, v, "lambda decreases towards parent"});
  }
  return out;
}

template <typename Scalar>
struct InsertionViolation {
  Scalar t;
  Eigen::Index landmark;
};

template <typename Scalar>
struct InsertionCheck {
  bool ok = true;
  std::optional<InsertionViolation<Scalar>> violation;
  explicit operator bool() const { return ok; }
};

/// Checks that lambda is a T-insertion function of resolution at most beta:
/// for every finite t and (l,w) in T there is w0 with
/// Lambda(l,w0) <= beta(t) < lambda(w0).
///
/// The condition only changes where beta(t) crosses an entry of Lambda or a
/// value of lambda, so it is evaluated at 0, every finite entry, every
/// preimage beta^<-(v) of such a value, and midpoints between consecutive
/// grid points plus one point past the last.
template <typename Scalar>
InsertionCheck<Scalar> verify_insertion_function(const Dissimilarity<Scalar>& d, const Relation& t_rel,
                                         const std::vector<Extended<Scalar>>& lambda,
                                         const TranslationMap<Scalar>& beta) {
  if (static_cast<Eigen::Index>(lambda.size()) != d.witnesses())
    throw InvalidArgument("insertion function length does not match witness count");
  std::vector<Scalar> values{Scalar(0)};
  for (Eigen::Index l = 0; l < d.landmarks(); ++l)
    for (Eigen::Index w = 0; w < d.witnesses(); ++w)
      if (d(l, w).is_finite()) values.push_back(d(l, w).value());
  for (const auto& v : lambda)
    if (v.is_finite()) values.push_back(v.value());

  std::vector<Scalar> grid = values;
  if (!beta.bounded()) {
    const auto beta_inv = generalized_inverse(beta);
    for (const auto& v : values) grid.push_back(beta_inv(v));
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  const std::size_t base = grid.size();
  for (std::size_t i = 0; i + 1 < base; ++i) grid.push_back((grid[i] + grid[i + 1]) / Scalar(2));
  grid.push_back(grid[base - 1] + Scalar(1));

  std::vector<Eigen::Index> domain;
  for (Eigen::Index l = 0; l < d.landmarks(); ++l)
    if (t_rel.mask().row(l).any()) domain.push_back(l);

  for (const Scalar& t : grid) {
    const Extended<Scalar> bt(beta(t));
    for (Eigen::Index l : domain) {
      bool found = false;
      for (Eigen::Index w0 = 0; w0 < d.witnesses() && !found; ++w0)
        found = d(l, w0) <= bt && bt < lambda[static_cast<std::size_t>(w0)];
      if (!found) return {false, InsertionViolation<Scalar>{t, l}};
    }
  }
  return {};
}

/// Builds the sparsification plan for a dissimilarity whose witnesses are
/// already in the desired order.
template <typename Scalar>
SparsificationPlan<Scalar> build_plan(const Dissimilarity<Scalar>& d, const Relation& t_rel,
                                      const TranslationMap<Scalar>& alpha, const TranslationMap<Scalar>& beta,
                                      std::vector<Eigen::Index> witness_order = {}) {
  if (d.witnesses() == 0 || d.landmarks() == 0) throw InvalidArgument("empty index set");
  if (!verify_triangle_relation(d, t_rel)) throw InvalidArgument("relation is not a triangle relation");
  if (witness_order.empty()) {
    witness_order.resize(static_cast<std::size_t>(d.witnesses()));
    std::iota(witness_order.begin(), witness_order.end(), Eigen::Index(0));
  }
  auto lambda_ins = insertion_radii(d, t_rel);
  auto lambda_sparse = truncation_thresholds(lambda_ins, alpha, beta);
  auto gamma = transpose(truncate_at(d, lambda_sparse));
  auto parents = parent_function(gamma, lambda_sparse);
  return SparsificationPlan<Scalar>{std::move(witness_order), d,     t_rel, alpha, beta, std::move(lambda_ins),
                                    std::move(lambda_sparse), std::move(gamma), std::move(parents)};
}

/// The additive-cover preset: nearest point triangle relation,
/// beta(t) = max((c-1)t, rho) and alpha(t) = t + beta(t) + sup Lambda(T).
/// Square inputs are first put in greedy order starting at `start`.
template <typename Scalar>
SparsificationPlan<Scalar> build_cover_plan(const Dissimilarity<Scalar>& d, const Scalar& c, Eigen::Index start = 0) {
  std::vector<Eigen::Index> order;
  Dissimilarity<Scalar> ordered = d;
  if (d.square()) {
    order = greedy_order(d, start).permutation;
    ordered = reorder_witnesses(d, order);
  }
  const Relation t_rel = nearest_point_triangle_relation(ordered);
  auto [alpha, beta] = additive_cover_preset(c, cover_radius(ordered), sup_over(ordered, t_rel));
  return build_plan(ordered, t_rel, alpha, beta, std::move(order));
}

}  // namespace sdn
