#include "sdn/demo.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace sdn::demo {

PointCloud<double> noisy_circle(Eigen::Index n, double noise, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::normal_distribution<double> jitter(0.0, noise);
  PointCloud<double>::Points pts(n, 2);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double a = angle(rng);
    pts(i, 0) = std::cos(a);
    pts(i, 1) = std::sin(a);
    if (noise > 0) {
      pts(i, 0) += jitter(rng);
      pts(i, 1) += jitter(rng);
    }
  }
  return PointCloud<double>(std::move(pts));
}

PointCloud<double> uniform_cube(Eigen::Index n, Eigen::Index dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  PointCloud<double>::Points pts(n, dim);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) pts(i, j) = u(rng);
  return PointCloud<double>(std::move(pts));
}

}  // namespace sdn::demo
