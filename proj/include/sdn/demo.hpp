#pragma once

#include <cstdint>

#include "sdn/dissimilarity.hpp"

namespace sdn::demo {

/// n points on the unit circle at uniform random angles, each coordinate
/// perturbed by N(0, noise^2).
PointCloud<double> noisy_circle(Eigen::Index n, double noise, std::uint64_t seed);

/// n points uniform in [0, 1]^dim.
PointCloud<double> uniform_cube(Eigen::Index n, Eigen::Index dim, std::uint64_t seed);

}  // namespace sdn::demo
