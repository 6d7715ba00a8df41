#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <random>
#include <vector>

#include "sdn/complex.hpp"
#include "sdn/dissimilarity.hpp"
#include "sdn/persistence.hpp"

namespace testing {

using sdn::ExtendedValue;
inline constexpr double inf = std::numeric_limits<double>::infinity();

// Absent edges are inf, self loops 0.
inline sdn::Network<double> network_a() {
  return sdn::Network<double>::from_edges(3, {{0, 1, 0.0}, {1, 2, 0.0}, {0, 2, 0.0}});
}

inline sdn::Network<double> network_b() {
  return sdn::Network<double>::from_edges(3, {{0, 1, 0.0}, {1, 2, 0.0}, {2, 0, 0.0}});
}

inline sdn::Dissimilarity<double> line_example() {
  return sdn::Dissimilarity<double>::from_rows({{0, 10, 4}, {10, 0, 6}, {4, 6, 0}});
}

// Integer entries in {0..max_value}, each inf with probability inf_prob.
inline sdn::Dissimilarity<double> random_dissimilarity(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols,
                                                       int max_value = 5, double inf_prob = 1.0 / 7.0) {
  std::uniform_int_distribution<int> value(0, max_value);
  std::bernoulli_distribution is_inf(inf_prob);
  sdn::ExtendedMatrix<double> g(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j)
      g(i, j) = is_inf(rng) ? ExtendedValue::infinity() : ExtendedValue(static_cast<double>(value(rng)));
  return sdn::Dissimilarity<double>(std::move(g));
}

inline sdn::PointCloud<double> random_planar(std::mt19937_64& rng, Eigen::Index n, double scale = 1.0) {
  std::uniform_real_distribution<double> u(0.0, scale);
  sdn::PointCloud<double>::Points pts(n, 2);
  for (Eigen::Index i = 0; i < n; ++i) {
    pts(i, 0) = u(rng);
    pts(i, 1) = u(rng);
  }
  return sdn::PointCloud<double>(std::move(pts));
}

inline sdn::Dissimilarity<double> random_network_dissimilarity(std::mt19937_64& rng, Eigen::Index n) {
  std::uniform_real_distribution<double> w(0.0, 5.0);
  sdn::ExtendedMatrix<double> g(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) g(i, j) = ExtendedValue(i == j ? 0.0 : w(rng));
  return sdn::Dissimilarity<double>(std::move(g));
}

// Shortest-path closure, which makes any square network a quasi-metric.
inline sdn::Dissimilarity<double> shortest_paths(const sdn::Dissimilarity<double>& d) {
  auto g = d.values();
  const Eigen::Index n = d.landmarks();
  for (Eigen::Index k = 0; k < n; ++k)
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) g(i, j) = sdn::min(g(i, j), g(i, k) + g(k, j));
  return sdn::Dissimilarity<double>(std::move(g));
}

// Nerve by sweeping the sorted finite values: sigma enters at the first
// value t where some witness column has all of sigma at most t.
inline std::map<std::vector<Eigen::Index>, double> brute_nerve(const sdn::Dissimilarity<double>& d, int max_dim) {
  std::vector<double> levels;
  for (Eigen::Index l = 0; l < d.landmarks(); ++l)
    for (Eigen::Index w = 0; w < d.witnesses(); ++w)
      if (d(l, w).is_finite()) levels.push_back(d(l, w).value());
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  std::map<std::vector<Eigen::Index>, double> out;
  const Eigen::Index n = d.landmarks();
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<Eigen::Index> sigma;
    for (Eigen::Index l = 0; l < n; ++l)
      if (mask >> l & 1u) sigma.push_back(l);
    if (static_cast<int>(sigma.size()) > max_dim + 1) continue;
    for (double t : levels) {
      bool found = false;
      for (Eigen::Index w = 0; w < d.witnesses() && !found; ++w)
        found = std::all_of(sigma.begin(), sigma.end(), [&](Eigen::Index l) { return d(l, w) <= ExtendedValue(t); });
      if (found) {
        out[sigma] = t;
        break;
      }
    }
  }
  return out;
}

inline std::map<std::vector<Eigen::Index>, ExtendedValue> as_map(const sdn::FilteredComplex<double>& k) {
  std::map<std::vector<Eigen::Index>, ExtendedValue> out;
  for (const auto& e : k.entries()) out[e.simplex.vertices()] = e.value;
  return out;
}

// Rank over Z/2 of a 0/1 matrix given as rows of column index sets.
inline std::size_t rank_z2(std::vector<std::vector<bool>> m) {
  std::size_t rank = 0;
  const std::size_t cols = m.empty() ? 0 : m.front().size();
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < m.size() && !m[pivot][c]) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[pivot], m[rank]);
    for (std::size_t r = 0; r < m.size(); ++r)
      if (r != rank && m[r][c])
        for (std::size_t k = 0; k < cols; ++k) m[r][k] = m[r][k] != m[rank][k];
    ++rank;
  }
  return rank;
}

// Betti number in dimension p of the subcomplex of simplices with value <= t.
inline std::size_t betti_at(const sdn::FilteredComplex<double>& k, int p, const ExtendedValue& t) {
  std::vector<std::vector<Eigen::Index>> lower, mid, upper;
  for (const auto& e : k.entries()) {
    if (t < e.value) continue;
    const int d = e.simplex.dimension();
    if (d == p - 1) lower.push_back(e.simplex.vertices());
    if (d == p) mid.push_back(e.simplex.vertices());
    if (d == p + 1) upper.push_back(e.simplex.vertices());
  }
  const auto boundary_rank = [](const std::vector<std::vector<Eigen::Index>>& faces,
                                const std::vector<std::vector<Eigen::Index>>& cells) -> std::size_t {
    if (faces.empty() || cells.empty()) return 0;
    std::vector<std::vector<bool>> m(cells.size(), std::vector<bool>(faces.size(), false));
    for (std::size_t i = 0; i < cells.size(); ++i)
      for (std::size_t j = 0; j < faces.size(); ++j)
        m[i][j] = std::includes(cells[i].begin(), cells[i].end(), faces[j].begin(), faces[j].end());
    return rank_z2(std::move(m));
  };
  return mid.size() - boundary_rank(lower, mid) - boundary_rank(mid, upper);
}

inline std::size_t alive_at(const sdn::PersistenceDiagram<double>& d, int p, const ExtendedValue& t) {
  std::size_t n = 0;
  for (const auto& pt : d.in_dimension(p))
    if (pt.birth <= t && t < pt.death) ++n;
  return n;
}

}  // namespace testing
