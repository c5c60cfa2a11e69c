#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "qdim/cylinder_tree.hpp"
#include "qdim/error.hpp"
#include "qdim/maps.hpp"

using namespace qdim;
using namespace fixtures;

TEST_CASE("Map1D construction and evaluation") {
  const Map1D f = Map1D::similarity(0.25, 0.5, -1);
  CHECK(f(0.0) == doctest::Approx(0.5));
  CHECK(f(1.0) == doctest::Approx(0.25));
  CHECK(f.derivative(0.3) == doctest::Approx(-0.25));
  CHECK(f.image(kUnit) == Interval{0.25, 0.5});
  CHECK(*f.ratio() == 0.25);
  CHECK_THROWS_AS(Map1D::similarity(1.0), InvalidInput);
  CHECK_THROWS_AS(Map1D::similarity(0.5, 0.0, 2), InvalidInput);
  CHECK_THROWS_AS(Map1D::mobius(1.5), InvalidInput);

  const Map1D m = Map1D::mobius(2.0);
  CHECK_FALSE(m.ratio().has_value());
  CHECK(m.derivative_sup(kUnit) == 0.25);
  CHECK(m.log_derivative_lipschitz(kUnit) == doctest::Approx(1.0));
}

TEST_CASE("smooth map oracles agree with finite differences") {
  const Map1D g = Map1D::smooth([](double x) { return 0.3 * std::sin(x) + 0.1; },
                                [](double x) { return 0.3 * std::cos(x); });
  const double h = 1e-6;
  for (double x = 0.05; x < 1.0; x += 0.1) {
    const double fd = (g(x + h) - g(x - h)) / (2 * h);
    CHECK(std::abs(fd - g.derivative(x)) < 1e-6);
  }
  // Grid sup inflated by the certified factor exp(L h / 2).
  CHECK(g.derivative_sup(kUnit) >= 0.3);
  CHECK(g.derivative_sup(kUnit) <= 0.3 * (1 + 1e-3));
  // d/dx log|0.3 cos x| = -tan x, largest at x = 1.
  CHECK(g.log_derivative_lipschitz(kUnit) == doctest::Approx(std::tan(1.0)).epsilon(1e-3));
}

TEST_CASE("deriv_norm examples") {
  const System c = cantor();
  const DerivNorm n = deriv_norm(c, Word::parse("121"));
  CHECK(n.value == doctest::Approx(1.0 / 27.0).epsilon(1e-15));
  CHECK(n.upper == n.value);

  const System m = mobius();
  CHECK(deriv_norm(m, Word{1}).value == doctest::Approx(0.25).epsilon(1e-15));

  // Dense grid oracle on x -> 1/(1/(x+3) + 2) with N = 1e5.
  const std::size_t N = 100000;
  double sup = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    const double x = static_cast<double>(i) / (N - 1);
    const double inner = 1.0 / (x + 3.0);
    const double d = 1.0 / ((inner + 2.0) * (inner + 2.0)) / ((x + 3.0) * (x + 3.0));
    sup = std::max(sup, d);
  }
  const DerivNorm w = deriv_norm(m, Word{1, 2});
  CHECK(w.value == doctest::Approx(sup).epsilon(1e-12));
  CHECK(w.upper >= sup);
  CHECK(w.upper <= sup * 1.01);
}

TEST_CASE("certified upper bound dominates dense sampling") {
  const System m = mobius();
  for (const auto& u : all_words(2, 5)) {
    const DerivNorm n = deriv_norm(m, u);
    CHECK(n.upper >= mobius_word(u).norm() * (1 - 1e-14));
    CHECK(n.value <= n.upper);
  }
}

TEST_CASE("cylinder_interval examples") {
  const System f = two_scale();
  CHECK(cylinder_interval(f, Word{1}) == Interval{0.0, 0.5});
  const Interval j2 = cylinder_interval(f, Word{2});
  CHECK(j2.low == doctest::Approx(0.6));
  CHECK(j2.high == doctest::Approx(0.9333333333333333));

  const Interval c22 = cylinder_interval(cantor(), Word{2, 2});
  CHECK(c22.low == doctest::Approx(8.0 / 9.0));
  CHECK(c22.high == doctest::Approx(1.0));

  const Interval m2 = cylinder_interval(mobius(), Word{1});
  CHECK(m2.low == doctest::Approx(1.0 / 3.0));
  CHECK(m2.high == doctest::Approx(0.5));

  const System bad{LevelSchedule::autonomous(kUnit, {Map1D::similarity(0.5, 0.0), Map1D::similarity(0.5, 0.6)})};
  CHECK_THROWS_WITH_AS(cylinder_interval(bad, Word{2}), doctest::Contains("placement violates nesting"),
                       NestingViolated);
}

TEST_CASE("vanishing derivative is not conformal") {
  const Map1D flat = Map1D::smooth([](double x) { return 0.25 * x * x; }, [](double x) { return 0.5 * x; });
  const System s{LevelSchedule::autonomous(kUnit, {flat, Map1D::similarity(0.5, 0.5)})};
  CHECK_THROWS_WITH_AS(deriv_norm(s, Word{1, 1}), doctest::Contains("not conformal"), NotConformal);
}

TEST_CASE("distortion constant") {
  CHECK(distortion_constant(cantor(), 6) == 1.0);
  CHECK(distortion_constant(moran_alternating(), 6) == 1.0);
  const System m = mobius();
  CHECK(distortion_constant(m, 1) == doctest::Approx(2.25));
  double previous = 0.0;
  for (std::size_t depth = 1; depth <= 8; ++depth) {
    const double K = distortion_constant(m, depth);
    CHECK(K >= previous);
    CHECK(K < 4.0);
    previous = K;
  }
  // Regression value: sup/inf of |Psi_u'| over words of length <= 8 peaks at
  // the single map x -> 1/(x+2), whose ratio is the depth-1 value; deeper words
  // have smaller spread.
  CHECK(previous == doctest::Approx(2.25).epsilon(1e-12));
}

TEST_CASE("submultiplicativity and distortion bands") {
  for (const System& s : {cantor(), two_scale(), mobius()}) {
    const double K = distortion_constant(s, 6);
    const auto words = all_words(2, 3);
    for (const auto& u : words) {
      for (const auto& v : words) {
        const double uv = deriv_norm(s, u.concat(v)).value;
        const double prod = deriv_norm(s, u).value * deriv_norm(s, v).value;
        CHECK(uv <= prod * (1 + 1e-9));
        CHECK(uv >= prod / (K * K) * (1 - 1e-12));
      }
    }
    const double K8 = distortion_constant(s, 8);
    for (const auto& u : all_words(2, 8)) {
      const double norm = deriv_norm(s, u).value;
      const double len = cylinder_interval(s, u).length();
      CHECK(len / norm <= K8 * (1 + 1e-9));
      CHECK(len / norm >= 1 / K8 * (1 - 1e-9));
      // Volume comparison on the dyadic halves of J.
      for (const Interval A : {Interval{0.0, 0.5}, Interval{0.5, 1.0}}) {
        std::vector<const Map1D*> chain;
        for (std::size_t i = 0; i < u.depth(); ++i) chain.push_back(&s.schedule.map(i + 1, u[i]));
        const double a = detail::apply_chain(chain, A.low);
        const double b = detail::apply_chain(chain, A.high);
        const double image = std::abs(b - a);
        CHECK(image <= norm * A.length() * (1 + 1e-9));
        CHECK(image >= norm * A.length() / K8 * (1 - 1e-9));
      }
    }
  }
}

TEST_CASE("walker visits words in lexicographic order with consistent data") {
  const System m = mobius();
  const SymbolicMeasure mu = zero_gibbs();
  std::vector<Word> seen;
  walk_cylinders(m, &mu, [&](const CylinderNode& node) {
    seen.push_back(node.word());
    if (node.depth() > 0) {
      CHECK(node.norm.value == doctest::Approx(deriv_norm(m, node.word()).value).epsilon(1e-12));
      CHECK(node.mass == doctest::Approx(std::ldexp(1.0, -static_cast<int>(node.depth()))));
      const Interval I = cylinder_interval(m, node.word());
      CHECK(node.interval.low == doctest::Approx(I.low).epsilon(1e-14));
      CHECK(node.interval.high == doctest::Approx(I.high).epsilon(1e-14));
    }
    return node.depth() < 4;
  });
  CHECK(seen.size() == 31);
  CHECK(std::is_sorted(seen.begin(), seen.end()));
}
