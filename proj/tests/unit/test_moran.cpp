#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "qdim/error.hpp"
#include "qdim/moran.hpp"

using namespace qdim;
using namespace fixtures;

namespace {

double moran_product_log(const LevelSchedule& s, std::size_t k, double x) {
  double g = 0.0;
  for (std::size_t i = 1; i <= k; ++i) {
    double acc = 0.0;
    for (const auto& m : s.family(i)) acc += std::pow(*m.ratio(), x);
    g += std::log(acc);
  }
  return g;
}

}  // namespace

TEST_CASE("Moran roots") {
  const double cantor_dim = std::log(2.0) / std::log(3.0);
  for (std::size_t k : {1, 7, 30}) CHECK(moran_sk(cantor().schedule, k) == doctest::Approx(cantor_dim).epsilon(1e-14));
  CHECK(moran_sk(tiling().schedule, 1) == doctest::Approx(1.0).epsilon(1e-14));

  const LevelSchedule& a = moran_alternating().schedule;
  for (std::size_t m = 1; m <= 20; ++m) {
    CHECK(std::abs(moran_sk(a, 2 * m) - std::log(6.0) / std::log(20.0)) < 1e-10);
    const double md = static_cast<double>(m);
    const double odd = ((md + 1) * std::log(2.0) + md * std::log(3.0)) / ((md + 1) * std::log(4.0) + md * std::log(5.0));
    CHECK(std::abs(moran_sk(a, 2 * m + 1) - odd) < 1e-10);
  }
  for (std::size_t k = 1; k <= 40; ++k) CHECK(std::abs(moran_product_log(a, k, moran_sk(a, k))) < 1e-12);

  CHECK_THROWS_WITH_AS(moran_sk(mobius().schedule, 3), doctest::Contains("Moran formula needs ratios"), InvalidInput);
}

TEST_CASE("Moran limits") {
  const MoranReport c = moran_limits(cantor().schedule, 16);
  CHECK(c.converged);
  CHECK(c.verdict == "converged");
  CHECK(c.gap < 1e-12);

  const LevelSchedule& a = moran_alternating().schedule;
  const MoranReport r32 = moran_limits(a, 32);
  const MoranReport r256 = moran_limits(a, 256);
  CHECK(r256.gap < r32.gap);
  CHECK(r256.gap * 256 < r32.gap * 32 * 1.5);  // O(1/k)
  CHECK(r256.s_lower <= std::log(6.0) / std::log(20.0) + 1e-12);

  const MoranReport b = moran_limits(block_doubling().schedule, 256);
  CHECK(b.gap >= 0.01);
  CHECK_FALSE(b.converged);
  CHECK(b.verdict == "oscillating");
  CHECK(moran_limits(block_doubling().schedule, 1024).gap >= 0.01);

  CHECK_THROWS_AS(moran_limits(cantor().schedule, 3), InvalidInput);
}
