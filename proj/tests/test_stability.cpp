#include <doctest.h>

#include <random>

#include "sdn/sparsification.hpp"
#include "sdn/stability.hpp"
#include "support.hpp"

using namespace sdn;
using testing::inf;

namespace {

using Map = TranslationMap<double>;

Network<double> net(std::vector<std::vector<double>> rows) {
  ExtendedMatrix<double> w(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows.size(); ++j)
      w(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = ExtendedValue(rows[i][j]);
  return Network<double>(w);
}

Network<double> random_network(std::mt19937_64& rng, Eigen::Index n) {
  std::uniform_int_distribution<int> v(0, 4);
  ExtendedMatrix<double> w(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) w(i, j) = ExtendedValue(static_cast<double>(v(rng)));
  return Network<double>(w);
}

Relation random_relation(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols, double p) {
  std::bernoulli_distribution in(p);
  Relation r(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j)
      if (in(rng)) r.insert(i, j);
  return r;
}

// Morphism condition at every t on a dyadic grid, straight from the
// definition with strict balls on both sides.
bool brute_morphism(const Relation& c, const Dissimilarity<double>& d, const Dissimilarity<double>& dp,
                    const Map& alpha) {
  for (int step = 1; step <= 8 * 64; ++step) {
    const double t = step / 64.0;
    const ExtendedValue at(alpha(t));
    for (Eigen::Index w = 0; w < d.witnesses(); ++w) {
      std::vector<Eigen::Index> image;
      for (Eigen::Index l = 0; l < d.landmarks(); ++l)
        if (d(l, w) < ExtendedValue(t))
          for (Eigen::Index lp = 0; lp < dp.landmarks(); ++lp)
            if (c.contains(l, lp)) image.push_back(lp);
      bool any_vertex = false;
      for (Eigen::Index l = 0; l < d.landmarks(); ++l) any_vertex = any_vertex || d(l, w) < ExtendedValue(t);
      if (!any_vertex) continue;
      bool witnessed = false;
      for (Eigen::Index wp = 0; !image.empty() && wp < dp.witnesses() && !witnessed; ++wp) {
        witnessed = true;
        for (auto lp : image) witnessed = witnessed && dp(lp, wp) < at;
      }
      if (!witnessed) return false;
    }
  }
  return true;
}

}  // namespace

TEST_SUITE("stability") {
  TEST_CASE("distortion examples") {
    const auto x = net({{0, 0}, {0, 0}});
    CHECK(distortion(Relation::diagonal(2), x, x) == ExtendedValue(0.0));
    const auto y = net({{0, 1}, {1, 0}});
    CHECK(distortion(Relation::diagonal(2), x, y) == ExtendedValue(1.0));
    // Pairs a zero weight with an absent edge.
    const auto z = Network<double>::from_edges(2, {{0, 1, 0.0}, {1, 0, 0.0}});
    CHECK(distortion(Relation::diagonal(2), z, Network<double>::from_edges(2, {})).is_infinite());
    CHECK_THROWS_AS(distortion(Relation::from_pairs(2, 2, {{0, 0}}), x, x), InvalidArgument);
    CHECK_THROWS_AS(distortion(Relation::diagonal(3), x, x), InvalidArgument);
  }

  TEST_CASE("identity correspondences have zero distortion") {
    std::mt19937_64 rng(103);
    for (int rep = 0; rep < 50; ++rep) {
      const auto x = random_network(rng, 1 + rep % 5);
      CHECK(distortion(Relation::diagonal(x.size()), x, x) == ExtendedValue(0.0));
    }
  }

  TEST_CASE("network distance examples") {
    const auto a = testing::network_a();
    CHECK(network_distance_bruteforce(a, a).distance == ExtendedValue(0.0));
    const auto r = network_distance_bruteforce(net({{0}}), net({{3}}));
    CHECK(r.distance == ExtendedValue(1.5));
    CHECK(r.distortion == ExtendedValue(3.0));
    CHECK(r.correspondence == Relation::full(1, 1));
    auto x = net({{0, 0}, {0, 0}});
    auto y = x;
    y.labels = {"p", "q"};
    CHECK(network_distance_bruteforce(x, y).distance == ExtendedValue(0.0));
    const auto big = net({{0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}});
    CHECK_THROWS_WITH_AS(network_distance_bruteforce(big, big), "instance too large for brute force", InvalidArgument);
  }

  TEST_CASE("network distance properties") {
    std::mt19937_64 rng(107);
    for (int rep = 0; rep < 40; ++rep) {
      const auto x = random_network(rng, 2), y = random_network(rng, 3), z = random_network(rng, 2);
      const auto xy = network_distance_bruteforce(x, y);
      CHECK(xy.distance == network_distance_bruteforce(y, x).distance);
      CHECK(network_distance_bruteforce(y, y).distance == ExtendedValue(0.0));
      CHECK(distortion(xy.correspondence, x, y) == xy.distortion);
      CHECK(network_distance_bruteforce(x, z).distance <= xy.distance + network_distance_bruteforce(y, z).distance);
      // Every correspondence bounds the distance from above.
      const auto c = Relation::full(2, 3);
      CHECK(xy.distortion <= distortion(c, x, y));
    }
  }

  TEST_CASE("correspondences are exactly the relations with both diagonal inclusions") {
    std::mt19937_64 rng(109);
    for (int rep = 0; rep < 400; ++rep) {
      const Eigen::Index m = 1 + rep % 4, n = 1 + (rep / 4) % 4;
      const auto c = random_relation(rng, m, n, 0.35);
      const bool both = Relation::diagonal(m).subset_of(compose(c.transposed(), c)) &&
                        Relation::diagonal(n).subset_of(compose(c, c.transposed()));
      CHECK(is_correspondence(c) == both);
    }
  }

  TEST_CASE("morphism examples") {
    const auto d = testing::line_example();
    const auto id = Map::identity();
    CHECK(verify_morphism(Relation::diagonal(3), d, d, id).ok);

    const auto plan = build_cover_plan(d, 2.0);
    const auto truncated = transpose(plan.gamma);
    CHECK(verify_morphism(Relation::diagonal(3), plan.ordered, truncated, plan.alpha).ok);
    CHECK(verify_morphism(Relation::diagonal(3), truncated, plan.ordered, id).ok);

    // Landmark 0 maps only to a row with no finite entry.
    const auto dp = Dissimilarity<double>::from_rows({{inf, inf}, {0, 0}});
    const auto c = Relation::from_pairs(1, 2, {{0, 0}});
    const auto check = verify_morphism(c, Dissimilarity<double>::from_rows({{1, 2}}), dp, id);
    CHECK_FALSE(check.ok);
    REQUIRE(check.failure.has_value());
    CHECK(check.failure->t == 1.0);
    CHECK(check.failure->witness == 0);
    CHECK_THROWS_AS(verify_morphism(Relation::diagonal(2), d, d, id), InvalidArgument);
  }

  TEST_CASE("shifts below the identity fail") {
    const auto d = testing::line_example();
    CHECK_FALSE(verify_morphism(Relation::diagonal(3), d, d, Map::affine(0.5, 0.0)).ok);
    // Raising every entry by 1 needs a shift of 1.
    auto shifted = d.values();
    for (Eigen::Index l = 0; l < 3; ++l)
      for (Eigen::Index w = 0; w < 3; ++w) shifted(l, w) = shifted(l, w) + ExtendedValue(1.0);
    const Dissimilarity<double> dp(shifted);
    CHECK_FALSE(verify_morphism(Relation::diagonal(3), d, dp, Map::identity()).ok);
    CHECK(verify_morphism(Relation::diagonal(3), d, dp, Map::shift(1.0)).ok);
  }

  TEST_CASE("morphism check agrees with a dense sweep") {
    std::mt19937_64 rng(113);
    const std::vector<Map> alphas{Map::identity(), Map::affine(2.0, 0.0), Map::shift(1.0), Map::shift(0.5),
                                  Map::linear_with_floor(1.0, 2.0)};
    for (int rep = 0; rep < 400; ++rep) {
      const auto d = testing::random_dissimilarity(rng, 3, 3, 5, 0.2);
      const auto dp = testing::random_dissimilarity(rng, 3, 4, 5, 0.2);
      const auto c = random_relation(rng, 3, 3, 0.4);
      const auto& alpha = alphas[static_cast<std::size_t>(rep) % alphas.size()];
      CHECK(verify_morphism(c, d, dp, alpha).ok == brute_morphism(c, d, dp, alpha));
    }
  }

  TEST_CASE("interleaving examples") {
    const auto d = testing::line_example();
    const auto delta = Relation::diagonal(3);
    CHECK(verify_interleaving(delta, delta, d, d, Map::identity(), Map::identity()));
    const auto plan = build_cover_plan(d, 2.0);
    CHECK(verify_interleaving(delta, delta, plan.ordered, transpose(plan.gamma), plan.alpha, Map::identity()));
    // Dropping a pair breaks the diagonal inclusion.
    const auto partial = Relation::from_pairs(3, 3, {{0, 0}, {1, 1}});
    CHECK_FALSE(verify_interleaving(partial, partial, d, d, Map::identity(), Map::identity()));
  }

  TEST_CASE("truncations are interleaved with their source") {
    std::mt19937_64 rng(127);
    std::uniform_real_distribution<double> c(1.0, 3.0);
    for (int rep = 0; rep < 60; ++rep) {
      const auto d = rep % 2 ? testing::shortest_paths(testing::random_network_dissimilarity(rng, 7))
                             : from_point_cloud(testing::random_planar(rng, 8));
      const auto plan = build_cover_plan(d, c(rng));
      const auto delta = Relation::diagonal(d.landmarks());
      CHECK(verify_interleaving(delta, delta, plan.ordered, transpose(plan.gamma), plan.alpha, Map::identity()));
    }
  }

  TEST_CASE("correspondences give interleavings shifted by their distortion") {
    std::mt19937_64 rng(131);
    for (int rep = 0; rep < 120; ++rep) {
      const auto x = random_network(rng, 3), y = random_network(rng, 3);
      const auto c = random_relation(rng, 3, 3, 0.5);
      if (!is_correspondence(c)) continue;
      const double dis = distortion(c, x, y).value();
      for (double delta : {0.0, 1e-3, 0.5}) {
        const auto shift = Map::shift(dis + delta);
        CHECK(verify_interleaving(c, c.transposed(), from_network(x), from_network(y), shift, shift));
      }
    }
    for (int rep = 0; rep < 40; ++rep) {
      const auto x = random_network(rng, 3), y = random_network(rng, 3);
      const auto best = network_distance_bruteforce(x, y);
      const auto shift = Map::shift(best.distortion.value());
      CHECK(verify_interleaving(best.correspondence, best.correspondence.transposed(), from_network(x),
                                from_network(y), shift, shift));
    }
  }
}
