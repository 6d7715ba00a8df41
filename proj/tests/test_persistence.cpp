#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "sdn/persistence.hpp"
#include "support.hpp"

using namespace sdn;
using testing::inf;

namespace {

using Point = DiagramPoint<double>;
using Diagram = PersistenceDiagram<double>;

Point pt(int dim, double birth, double death) { return {dim, ExtendedValue(birth), ExtendedValue(death)}; }

FilteredComplex<double> triangle_boundary() {
  return FilteredComplex<double>(3, {{Simplex{0}, 0.0},
                                     {Simplex{1}, 0.0},
                                     {Simplex{2}, 0.0},
                                     {Simplex{0, 1}, 1.0},
                                     {Simplex{0, 2}, 1.0},
                                     {Simplex{1, 2}, 1.0}});
}

// Distinct values of a complex.
std::vector<ExtendedValue> levels(const FilteredComplex<double>& k) {
  std::vector<ExtendedValue> out;
  for (const auto& e : k.entries()) out.push_back(e.value);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Diagram random_diagram(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> v(0, 12);
  std::bernoulli_distribution essential(0.15);
  std::vector<Point> pts;
  for (int i = 0; i < n; ++i) {
    const double b = v(rng);
    pts.push_back(essential(rng) ? Point{0, ExtendedValue(b), ExtendedValue::infinity()} : pt(0, b, b + v(rng)));
  }
  return Diagram(pts);
}

// Bottleneck by trying every matching between the two point lists padded
// with diagonal slots.
double brute_bottleneck(const Diagram& d1, const Diagram& d2) {
  auto a = d1.in_dimension(0), b = d2.in_dimension(0);
  const std::size_t n = a.size() + b.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  const auto cost = [&](std::size_t i, std::size_t j) -> double {
    const bool ra = i < a.size(), rb = j < b.size();
    if (ra && rb) {
      const auto c = [](const ExtendedValue& x, const ExtendedValue& y) {
        const auto d = abs_difference(x, y);
        return d.is_infinite() ? inf : d.value();
      };
      return std::max(c(a[i].birth, b[j].birth), c(a[i].death, b[j].death));
    }
    if (ra) return a[i].death.is_infinite() ? inf : (a[i].death.value() - a[i].birth.value()) / 2;
    if (rb) return b[j].death.is_infinite() ? inf : (b[j].death.value() - b[j].birth.value()) / 2;
    return 0.0;
  };
  double best = inf;
  do {
    double worst = 0;
    for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, cost(i, perm[i]));
    best = std::min(best, worst);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace

TEST_SUITE("persistence") {
  TEST_CASE("diagram normalisation") {
    const Diagram d({pt(1, 2, 3), pt(0, 1, 1), pt(0, 0, 5)});
    CHECK(d.points() == std::vector<Point>{pt(0, 0, 5), pt(1, 2, 3)});
    CHECK_THROWS_AS(Diagram({pt(0, 3, 2)}), InvalidArgument);
    CHECK_THROWS_AS(Diagram({Point{0, ExtendedValue::infinity(), ExtendedValue::infinity()}}), InvalidArgument);
    CHECK_THROWS_AS(Diagram({pt(-1, 0, 1)}), InvalidArgument);
  }

  TEST_CASE("single vertex") {
    const auto d = compute_persistence(FilteredComplex<double>(1, {{Simplex{0}, 0.0}}), 1);
    CHECK(d.points() == std::vector<Point>{{0, ExtendedValue(0.0), ExtendedValue::infinity()}});
  }

  TEST_CASE("triangle boundary") {
    const auto d = compute_persistence(triangle_boundary(), 1);
    CHECK(d.points() == std::vector<Point>{{0, ExtendedValue(0.0), ExtendedValue(1.0)},
                                           {0, ExtendedValue(0.0), ExtendedValue(1.0)},
                                           {0, ExtendedValue(0.0), ExtendedValue::infinity()},
                                           {1, ExtendedValue(1.0), ExtendedValue::infinity()}});
  }

  TEST_CASE("network B nerve is a persistent circle") {
    const auto d = compute_persistence(build_dowker_nerve(from_network(testing::network_b()), 2), 1);
    CHECK(d.points() == std::vector<Point>{{0, ExtendedValue(0.0), ExtendedValue::infinity()},
                                           {1, ExtendedValue(0.0), ExtendedValue::infinity()}});
    const auto a = compute_persistence(build_dowker_nerve(from_network(testing::network_a()), 2), 1);
    CHECK(a.points() == std::vector<Point>{{0, ExtendedValue(0.0), ExtendedValue::infinity()}});
  }

  TEST_CASE("invalid complexes are rejected") {
    const FilteredComplex<double> bad(2, {{Simplex{0}, 0.0}, {Simplex{0, 1}, 1.0}});
    CHECK_THROWS_WITH_AS(compute_persistence(bad, 1), doctest::Contains("not downward closed"), InvalidArgument);
  }

  TEST_CASE("ranks match betti numbers at every level") {
    std::mt19937_64 rng(71);
    for (int rep = 0; rep < 80; ++rep) {
      const auto k = build_dowker_nerve(testing::random_dissimilarity(rng, 6, 5, 4, 0.25), 3);
      const auto d = compute_persistence(k, 2);
      for (const auto& t : levels(k))
        for (int p = 0; p <= 2; ++p) CHECK(testing::alive_at(d, p, t) == testing::betti_at(k, p, t));
    }
  }

  TEST_CASE("euler characteristic at every level") {
    std::mt19937_64 rng(73);
    for (int rep = 0; rep < 60; ++rep) {
      const auto k = build_dowker_nerve(testing::random_dissimilarity(rng, 6, 6, 4, 0.25), 5);
      const auto d = compute_persistence(k, 5);
      for (const auto& t : levels(k)) {
        long simplices = 0, classes = 0;
        for (const auto& e : k.entries())
          if (e.value <= t) simplices += e.simplex.dimension() % 2 ? -1 : 1;
        for (int p = 0; p <= 5; ++p) classes += (p % 2 ? -1 : 1) * static_cast<long>(testing::alive_at(d, p, t));
        CHECK(simplices == classes);
      }
    }
  }

  TEST_CASE("equal-value columns may come in any order") {
    // Relabelling vertices permutes the order of equal-value columns.
    std::mt19937_64 rng(79);
    for (int rep = 0; rep < 40; ++rep) {
      const auto d = testing::random_dissimilarity(rng, 6, 5, 3, 0.2);
      std::vector<Eigen::Index> perm{0, 1, 2, 3, 4, 5};
      std::shuffle(perm.begin(), perm.end(), rng);
      auto g = d.values();
      for (Eigen::Index l = 0; l < 6; ++l) g.row(perm[static_cast<std::size_t>(l)]) = d.values().row(l);
      const Dissimilarity<double> relabelled(g);
      CHECK(compute_persistence(build_dowker_nerve(relabelled, 3), 2) ==
            compute_persistence(build_dowker_nerve(d, 3), 2));
    }
  }

  TEST_CASE("dowker duality") {
    std::mt19937_64 rng(83);
    for (int rep = 0; rep < 120; ++rep) {
      const auto d = testing::random_dissimilarity(rng, 2 + rep % 5, 2 + rep % 4, 5, 0.2);
      const int top = static_cast<int>(std::max(d.landmarks(), d.witnesses()));
      CHECK(compute_persistence(build_dowker_nerve(d, top), top) ==
            compute_persistence(build_dowker_nerve(transpose(d), top), top));
    }
  }

  TEST_CASE("bottleneck examples") {
    const Diagram a({pt(0, 0, 2)});
    CHECK(bottleneck(a, a, 0) == ExtendedValue(0.0));
    CHECK(bottleneck(a, Diagram(), 0) == ExtendedValue(1.0));
    CHECK(bottleneck(Diagram({pt(0, 0, 1)}), Diagram({pt(0, 0, 1.5)}), 0) == ExtendedValue(0.5));
    const Diagram ess({Point{0, ExtendedValue(0.0), ExtendedValue::infinity()}});
    CHECK(bottleneck(ess, Diagram(), 0).is_infinite());
    CHECK(bottleneck(ess, Diagram({Point{0, ExtendedValue(3.0), ExtendedValue::infinity()}}), 0) == ExtendedValue(3.0));
    // Dimensions are separate.
    CHECK(bottleneck(Diagram({pt(1, 0, 2)}), Diagram(), 0) == ExtendedValue(0.0));
  }

  TEST_CASE("bottleneck against all matchings") {
    std::mt19937_64 rng(89);
    for (int rep = 0; rep < 200; ++rep) {
      const auto a = random_diagram(rng, rep % 4);
      const auto b = random_diagram(rng, (rep / 4) % 4);
      const auto got = bottleneck(a, b, 0);
      const double want = brute_bottleneck(a, b);
      if (std::isinf(want))
        CHECK(got.is_infinite());
      else
        CHECK(got == ExtendedValue(want));
    }
  }

  TEST_CASE("bottleneck is a metric") {
    std::mt19937_64 rng(97);
    for (int rep = 0; rep < 200; ++rep) {
      const auto a = random_diagram(rng, 4), b = random_diagram(rng, 3), c = random_diagram(rng, 5);
      CHECK(bottleneck(a, b, 0) == bottleneck(b, a, 0));
      CHECK(bottleneck(a, a, 0) == ExtendedValue(0.0));
      CHECK(bottleneck(a, c, 0) <= bottleneck(a, b, 0) + bottleneck(b, c, 0));
    }
  }

  TEST_CASE("multiplicative bottleneck examples") {
    const Diagram a({pt(1, 1, 4)});
    CHECK(multiplicative_bottleneck(a, a, 1) == ExtendedValue(1.0));
    CHECK(multiplicative_bottleneck(a, Diagram({pt(1, 2, 4)}), 1) == ExtendedValue(2.0));
    const Diagram ess({Point{0, ExtendedValue(0.0), ExtendedValue::infinity()}});
    CHECK(multiplicative_bottleneck(ess, ess, 0) == ExtendedValue(1.0));
    // Birth 0 matches only birth 0.
    CHECK(multiplicative_bottleneck(ess, Diagram({Point{0, ExtendedValue(1.0), ExtendedValue::infinity()}}), 0)
              .is_infinite());
    // Unmatched points pay sqrt(death / birth).
    CHECK(multiplicative_bottleneck(a, Diagram(), 1) == ExtendedValue(2.0));
    CHECK(multiplicative_bottleneck(Diagram({pt(0, 0, 1)}), Diagram(), 0).is_infinite());
  }

  TEST_CASE("multiplicative bottleneck is the log-scale bottleneck") {
    std::mt19937_64 rng(101);
    std::uniform_int_distribution<int> v(0, 6);
    for (int rep = 0; rep < 150; ++rep) {
      std::vector<Point> pa, pb, la, lb;
      for (int i = 0; i < 3; ++i) {
        const int b1 = v(rng), b2 = v(rng);
        pa.push_back(pt(0, std::exp2(b1), std::exp2(b1 + v(rng))));
        la.push_back(pt(0, b1, std::log2(pa.back().death.value())));
        if (i < 2) {
          pb.push_back(pt(0, std::exp2(b2), std::exp2(b2 + v(rng))));
          lb.push_back(pt(0, b2, std::log2(pb.back().death.value())));
        }
      }
      // With base-2 coordinates the additive distance d becomes the ratio 2^d.
      const auto mult = multiplicative_bottleneck(Diagram(pa), Diagram(pb), 0);
      const auto add = bottleneck(Diagram(la), Diagram(lb), 0);
      CHECK(std::log2(mult.value()) == doctest::Approx(add.value()));
    }
  }
}
