#include <gtest/gtest.h>

#include <cmath>
#include <cstring>

#include "jamplace/io.hpp"
#include "jamplace/kernels.hpp"
#include "jamplace/oracle.hpp"
#include "random_scenarios.hpp"

using namespace jamplace;
using namespace jamplace::kernels;
using jamplace::testing::Rng;

namespace {

TargetBlock random_block(Rng& rng) {
  TargetBlock b;
  const int n = rng.integer(1, 9);
  for (int t = 0; t < n; ++t) {
    b.x.push_back(rng.uniform(0, 10));
    b.y.push_back(rng.uniform(0, 10));
    b.coef.push_back(rng.uniform(0.01, 50));
    b.level.push_back(rng.uniform(0.01, 5));
  }
  const double nus[] = {1.0, 2.0, 3.0, 4.0, 2.5, 3.7};
  b.nu = nus[rng.integer(0, 5)];
  b.nu_int = integral_exponent(b.nu);
  b.eps_sq = std::pow(rng.uniform(0.0, 1.5), 2);
  b.respect_epsilon = rng.integer(0, 1) == 1;
  return b;
}

bool bit_equal(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

TEST(Kernels, IntegralExponent) {
  EXPECT_EQ(integral_exponent(2.0), 2);
  EXPECT_EQ(integral_exponent(4.0), 4);
  EXPECT_EQ(integral_exponent(2.5), 0);
  EXPECT_EQ(integral_exponent(0.0), 0);
}

TEST(Kernels, ScalarMatchesDirectEvaluation) {
  const Scenario s = bundled_scenario("C").with_power(4.0);
  Rng rng(41);
  // Row through the scene via the oracle's field map, checked cell by cell.
  const auto f = field_map(s, {{0, 10, 0, 10}, 0.37, true});
  for (std::size_t iy = 0; iy < f.ny; ++iy)
    for (std::size_t ix = 0; ix < f.nx; ++ix) {
      const Point2 p = f.node(ix, iy);
      if (!s.feasible(p)) continue;
      const double direct = min_crlb(s, p).value;
      ASSERT_NEAR(f.at(ix, iy), direct, 1e-12 * direct);
    }
}

TEST(Kernels, Avx2BitIdenticalToScalar) {
  if (!supported(Isa::Avx2)) GTEST_SKIP() << "AVX2 kernel not available on this machine/build";
  Rng rng(42);
  for (int c = 0; c < 3000; ++c) {
    const TargetBlock b = random_block(rng);
    const std::size_t n = static_cast<std::size_t>(rng.integer(0, 67));
    const double y = rng.uniform(-1, 11), x0 = rng.uniform(-1, 5), h = rng.uniform(0.001, 0.3);
    std::vector<double> a(n), v(n);
    min_crlb_row_scalar(b, y, x0, h, n, a.data());
    min_crlb_row(Isa::Avx2, b, y, x0, h, n, v.data());
    ASSERT_TRUE(bit_equal(a, v)) << "case " << c << " nu=" << b.nu << " n=" << n;
  }
}

TEST(Kernels, Avx2HandlesExactTargetHit) {
  if (!supported(Isa::Avx2)) GTEST_SKIP() << "AVX2 kernel not available on this machine/build";
  TargetBlock b;
  b.x = {1.0};
  b.y = {2.0};
  b.coef = {3.0};
  b.level = {0.5};
  b.nu = 2.0;
  b.nu_int = 2;
  b.eps_sq = 0.0;
  b.respect_epsilon = false;
  std::vector<double> a(9), v(9);
  min_crlb_row_scalar(b, 2.0, 0.0, 0.25, 9, a.data());
  min_crlb_row(Isa::Avx2, b, 2.0, 0.0, 0.25, 9, v.data());
  EXPECT_TRUE(std::isinf(a[4]) && a[4] > 0);
  EXPECT_TRUE(bit_equal(a, v));
}

TEST(Kernels, GridSearchSameUnderEitherIsa) {
  if (!supported(Isa::Avx2)) GTEST_SKIP() << "AVX2 kernel not available on this machine/build";
  const Isa before = active();
  Rng rng(43);
  for (int c = 0; c < 20; ++c) {
    const Scenario s = jamplace::testing::random_scenario(rng);
    const GridSpec g{default_search_box(s), 0.05, true};
    set_active(Isa::Scalar);
    const auto a = grid_search(s, g);
    set_active(Isa::Avx2);
    const auto v = grid_search(s, g);
    EXPECT_EQ(a.value, v.value);
    EXPECT_EQ(a.z, v.z);
  }
  set_active(before);
}
