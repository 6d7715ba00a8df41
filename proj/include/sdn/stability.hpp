#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "sdn/dissimilarity.hpp"
#include "sdn/error.hpp"
#include "sdn/extended.hpp"
#include "sdn/relation.hpp"
#include "sdn/translation.hpp"

namespace sdn {

/// sup over (x, x'), (y, y') in C of |w_X(x, y) - w_X'(x', y')|.
template <typename Scalar>
Extended<Scalar> distortion(const Relation& c, const Network<Scalar>& x, const Network<Scalar>& xp) {
  if (c.rows() != x.size() || c.cols() != xp.size()) throw InvalidArgument("correspondence does not match networks");
  if (!is_correspondence(c)) throw InvalidArgument("relation is not a correspondence");
  const auto pairs = c.pairs();
  Extended<Scalar> worst(Scalar(0));
  for (const auto& [a, ap] : pairs)
    for (const auto& [b, bp] : pairs) worst = max(worst, abs_difference(x(a, b), xp(ap, bp)));
  return worst;
}

template <typename Scalar>
struct NetworkDistance {
  Extended<Scalar> distance;
  Extended<Scalar> distortion;
  Relation correspondence;
};

/// Half the least distortion over all correspondences, by enumerating every
/// subset of X x X'. Ties go to the first subset in bitmask order.
template <typename Scalar>
NetworkDistance<Scalar> network_distance_bruteforce(const Network<Scalar>& x, const Network<Scalar>& xp) {
  const Eigen::Index rows = x.size(), cols = xp.size();
  const Eigen::Index cells = rows * cols;
  if (cells > 12) throw InvalidArgument("instance too large for brute force");
  if (rows == 0 && cols == 0) return {Extended<Scalar>(Scalar(0)), Extended<Scalar>(Scalar(0)), Relation(0, 0)};
  if (rows == 0 || cols == 0) throw InvalidArgument("no correspondence between an empty and a non-empty network");

  std::optional<NetworkDistance<Scalar>> best;
  for (std::uint32_t mask = 1; mask < (1u << cells); ++mask) {
    Relation c(rows, cols);
    for (Eigen::Index k = 0; k < cells; ++k)
      if (mask >> k & 1u) c.insert(k / cols, k % cols);
    if (!is_correspondence(c)) continue;
    const auto dis = distortion(c, x, xp);
    if (!best || dis < best->distortion) best = NetworkDistance<Scalar>{dis, dis, std::move(c)};
  }
  best->distance = (Scalar(1) / Scalar(2)) * best->distortion;
  return *best;
}

template <typename Scalar>
struct MorphismFailure {
  Scalar t;
  Eigen::Index witness;
};

template <typename Scalar>
struct MorphismCheck {
  bool ok = true;
  std::optional<MorphismFailure<Scalar>> failure;
  explicit operator bool() const { return ok; }
};

/// Checks that C: L -> L' carries Lambda_t into Lambda'_{alpha(t)} for
/// every t. Lambda_t is constant on (v_i, v_{i+1}] between consecutive
/// finite values, so t is taken just above each v_i: the maximal simplices
/// are {l | Lambda(l, w) <= v_i}, and their images need a common witness w'
/// with Lambda'(l', w') below alpha(v_i+), inclusive when alpha increases
/// right after v_i. A failure reports (v_i, w).
template <typename Scalar>
MorphismCheck<Scalar> verify_morphism(const Relation& c, const Dissimilarity<Scalar>& d, const Dissimilarity<Scalar>& dp,
                                      const TranslationMap<Scalar>& alpha) {
  if (c.rows() != d.landmarks() || c.cols() != dp.landmarks())
    throw InvalidArgument("relation does not match the landmark sets");
  std::vector<Scalar> grid;
  for (Eigen::Index l = 0; l < d.landmarks(); ++l)
    for (Eigen::Index w = 0; w < d.witnesses(); ++w)
      if (d(l, w).is_finite()) grid.push_back(d(l, w).value());
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  for (const Scalar& v : grid) {
    const Scalar bound = alpha.right_limit(v);
    const bool closed = alpha.right_slope(v) > Scalar(0);
    const auto below = [&](const Extended<Scalar>& x) {
      return x.is_finite() && (closed ? x.value() <= bound : x.value() < bound);
    };
    for (Eigen::Index w = 0; w < d.witnesses(); ++w) {
      std::vector<bool> image(static_cast<std::size_t>(dp.landmarks()), false);
      bool any_vertex = false, any_image = false;
      for (Eigen::Index l = 0; l < d.landmarks(); ++l) {
        if (!(d(l, w).is_finite() && d(l, w).value() <= v)) continue;
        any_vertex = true;
        for (Eigen::Index lp = 0; lp < dp.landmarks(); ++lp) {
          if (c.mask()(l, lp)) {
            image[static_cast<std::size_t>(lp)] = true;
            any_image = true;
          }
        }
      }
      if (!any_vertex) continue;
      bool witnessed = false;
      for (Eigen::Index wp = 0; any_image && wp < dp.witnesses() && !witnessed; ++wp) {
        witnessed = true;
        for (Eigen::Index lp = 0; lp < dp.landmarks() && witnessed; ++lp)
          if (image[static_cast<std::size_t>(lp)] && !below(dp(lp, wp))) witnessed = false;
      }
      if (!witnessed) return {false, MorphismFailure<Scalar>{v, w}};
    }
  }
  return {};
}

/// Both morphisms plus the inclusions Delta_L in C' o C and Delta_L' in C o C'.
template <typename Scalar>
bool verify_interleaving(const Relation& c, const Relation& cp, const Dissimilarity<Scalar>& d,
                         const Dissimilarity<Scalar>& dp, const TranslationMap<Scalar>& alpha,
                         const TranslationMap<Scalar>& alpha_p) {
  if (cp.rows() != c.cols() || cp.cols() != c.rows()) throw InvalidArgument("relations are not opposite");
  if (!Relation::diagonal(d.landmarks()).subset_of(compose(cp, c))) return false;
  if (!Relation::diagonal(dp.landmarks()).subset_of(compose(c, cp))) return false;
  return verify_morphism(c, d, dp, alpha).ok && verify_morphism(cp, dp, d, alpha_p).ok;
}

}  // namespace sdn
