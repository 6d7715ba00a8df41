#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "sdn/complex.hpp"
#include "sdn/euclidean.hpp"
#include "sdn/sampling.hpp"

namespace sdn {

namespace detail {

// Candidate centres for min_x max_{k} |x - p_k| subject to |x - p_k| <= rho_k.
// For a split of an affinely independent S into A (equidistant, non-empty)
// and C (on their constraint spheres), collects the points of aff(S)
// satisfying all those equalities.
template <typename Scalar>
void constrained_candidates(const Points<Scalar>& pts, const std::vector<Eigen::Index>& a,
                            const std::vector<Eigen::Index>& c, const std::vector<Scalar>& rho_c,
                            std::vector<Vector<Scalar>>& out) {
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  if (c.empty()) {
    Vector<Scalar> x;
    const std::vector<Scalar> zero(a.size(), Scalar(0));
    if (affine_equidistant(pts, a, zero, x)) out.push_back(x);
    return;
  }
  std::vector<Eigen::Index> s(a);
  s.insert(s.end(), c.begin(), c.end());
  const Vector<Scalar> p0 = pts.row(s[0]).transpose();
  const auto m = static_cast<Eigen::Index>(s.size()) - 1;
  Mat q(pts.cols(), m);
  for (Eigen::Index j = 0; j < m; ++j) q.col(j) = pts.row(s[static_cast<std::size_t>(j + 1)]).transpose() - p0;
  Eigen::FullPivLU<Mat> gram(q.transpose() * q);
  gram.setThreshold(Scalar(1e-12));
  if (!gram.isInvertible()) return;

  // Rows: -2 (p_i - p_j) . x = shift_i - shift_j - |p_i|^2 + |p_j|^2, x = p0 + Q v.
  Mat lhs(m - 1, m);
  Vector<Scalar> rhs(m - 1);
  Eigen::Index row = 0;
  const auto add_row = [&](Eigen::Index i, Eigen::Index j, const Scalar& shift) {
    const Vector<Scalar> pi = pts.row(i).transpose();
    const Vector<Scalar> pj = pts.row(j).transpose();
    lhs.row(row) = Scalar(-2) * (pi - pj).transpose() * q;
    rhs(row) = shift - pi.squaredNorm() + pj.squaredNorm() + Scalar(2) * (pi - pj).dot(p0);
    ++row;
  };
  for (std::size_t k = 1; k < a.size(); ++k) add_row(a[k], a[0], Scalar(0));
  for (std::size_t k = 1; k < c.size(); ++k) add_row(c[k], c[0], rho_c[k] * rho_c[k] - rho_c[0] * rho_c[0]);

  Vector<Scalar> v0 = Vector<Scalar>::Zero(m);
  Vector<Scalar> dir = Vector<Scalar>::Ones(m);
  if (m > 1) {
    Eigen::FullPivLU<Mat> lu(lhs);
    lu.setThreshold(Scalar(1e-12));
    const Mat kernel = lu.kernel();
    if (kernel.cols() != 1) return;
    v0 = lhs.completeOrthogonalDecomposition().solve(rhs);
    dir = kernel.col(0);
  }
  const Vector<Scalar> x0 = p0 + q * v0;
  const Vector<Scalar> u = q * dir;
  const Vector<Scalar> off = x0 - pts.row(c[0]).transpose();
  const Scalar qa = u.squaredNorm();
  const Scalar qb = Scalar(2) * u.dot(off);
  const Scalar qc = off.squaredNorm() - rho_c[0] * rho_c[0];
  Scalar disc = qb * qb - Scalar(4) * qa * qc;
  if (disc < Scalar(0)) {
    if (disc < -Scalar(1e-12) * qb * qb) return;
    disc = Scalar(0);
  }
  using std::sqrt;
  const Scalar root = sqrt(disc);
  out.push_back(x0 + ((-qb + root) / (Scalar(2) * qa)) * u);
  out.push_back(x0 + ((-qb - root) / (Scalar(2) * qa)) * u);
}

}  // namespace detail

/// Sparse Cech complex by direct enumeration: sigma (greedy indices) is kept
/// iff some x in R^d has d(p_l, x) <= lambda_ins(l)(1+eps)/eps and
/// d(p_k, x) <= lambda_ins(l)(1+eps)^2/eps for all k, l in sigma; its value
/// is the least max_k d(p_k, x) over such x, found among KKT candidate
/// centres.
template <typename Scalar>
FilteredComplex<Scalar> build_sparse_cech_oracle(const PointCloud<Scalar>& p, const GreedyOrder<Scalar>& greedy,
                                                 const Scalar& epsilon, int max_dim) {
  detail::require_euclidean(p);
  if (max_dim < 0) throw InvalidArgument("max_dim must be >= 0");
  if (!(epsilon > Scalar(0))) throw InvalidArgument("parameter epsilon must be > 0");
  const Eigen::Index n = p.size();
  const PointCloud<Scalar> q = p.reordered(greedy.permutation);
  const Scalar inf = std::numeric_limits<Scalar>::infinity();

  std::vector<Scalar> theta(static_cast<std::size_t>(n), inf);
  std::vector<Scalar> lambda(static_cast<std::size_t>(n), inf);
  for (Eigen::Index k = 1; k < n; ++k) {
    Scalar ins(0);
    for (Eigen::Index l = 0; l < n; ++l) {
      Scalar nearest = inf;
      for (Eigen::Index i = 0; i < k; ++i) nearest = std::min(nearest, q.distance(l, i));
      ins = std::max(ins, nearest);
    }
    theta[static_cast<std::size_t>(k)] = ins * (Scalar(1) + epsilon) / epsilon;
    lambda[static_cast<std::size_t>(k)] = ins * (Scalar(1) + epsilon) * (Scalar(1) + epsilon) / epsilon;
  }

  const auto dim = static_cast<std::size_t>(q.dimension());
  const auto radius = [&](const std::vector<Eigen::Index>& sigma) -> Extended<Scalar> {
    Scalar cap = inf;
    for (auto l : sigma) cap = std::min(cap, lambda[static_cast<std::size_t>(l)]);
    std::vector<Scalar> rho;
    for (auto k : sigma) rho.push_back(std::min(theta[static_cast<std::size_t>(k)], cap));

    std::vector<Vector<Scalar>> centres;
    for (auto k : sigma) centres.push_back(q.points.row(k).transpose());
    // Every subset of size <= d+1, every split into A (non-empty) and C.
    const std::size_t m = sigma.size();
    for (unsigned mask = 1; mask < (1u << m); ++mask) {
      if (static_cast<std::size_t>(__builtin_popcount(mask)) > dim + 1) continue;
      for (unsigned cmask = mask;; cmask = (cmask - 1) & mask) {
        if (cmask != mask) {
          std::vector<Eigen::Index> a, c;
          std::vector<Scalar> rho_c;
          bool finite = true;
          for (std::size_t k = 0; k < m; ++k) {
            if (!(mask >> k & 1u)) continue;
            if (cmask >> k & 1u) {
              c.push_back(sigma[k]);
              rho_c.push_back(rho[k]);
              finite = finite && std::isfinite(rho[k]);
            } else {
              a.push_back(sigma[k]);
            }
          }
          if (finite) detail::constrained_candidates(q.points, a, c, rho_c, centres);
        }
        if (cmask == 0) break;
      }
    }

    Scalar best = inf;
    for (const auto& x : centres) {
      Scalar worst(0);
      bool ok = true;
      for (std::size_t k = 0; k < m && ok; ++k) {
        const Scalar dk = (x - q.points.row(sigma[k]).transpose()).norm();
        ok = dk <= rho[k] + Scalar(1e-10) * std::max(Scalar(1), rho[k]);
        worst = std::max(worst, dk);
      }
      if (ok) best = std::min(best, worst);
    }
    return std::isfinite(best) ? Extended<Scalar>(best) : Extended<Scalar>::infinity();
  };

  const auto max_size = static_cast<std::size_t>(max_dim) + 1;
  detail::SimplexMap<Scalar> values;
  std::vector<Eigen::Index> current;
  std::function<void(Eigen::Index)> rec = [&](Eigen::Index from) {
    for (Eigen::Index i = from; i < n; ++i) {
      current.push_back(i);
      const auto r = radius(current);
      if (r.is_finite()) {
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
