// Built with -mavx2 -mfma; only reached after a runtime CPU check.
#include <immintrin.h>

#include <limits>

#include "jamplace/kernels.hpp"

namespace jamplace::kernels {

namespace {

// Same multiplication order as pow_from_sq.
inline __m256d pow_from_sq4(__m256d d2, int nu) {
  __m256d p = (nu & 1) ? _mm256_sqrt_pd(d2) : d2;
  for (int e = (nu & 1) ? 1 : 2; e < nu; e += 2) p = _mm256_mul_pd(p, d2);
  return p;
}

}  // namespace

void min_crlb_row_avx2(const TargetBlock& block, double y, double x0, double h, std::size_t n, double* out) {
  const double inf = std::numeric_limits<double>::infinity();
  const std::size_t nt = block.x.size();
  const __m256d vinf = _mm256_set1_pd(inf);
  const __m256d vninf = _mm256_set1_pd(-inf);
  const __m256d vzero = _mm256_setzero_pd();
  const __m256d veps = _mm256_set1_pd(block.eps_sq);
  const __m256d vh = _mm256_set1_pd(h);
  const __m256d vx0 = _mm256_set1_pd(x0);
  const __m256d vy = _mm256_set1_pd(y);
  const __m256d lane = _mm256_set_pd(3.0, 2.0, 1.0, 0.0);

  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d idx = _mm256_add_pd(_mm256_set1_pd(static_cast<double>(i)), lane);
    const __m256d x = _mm256_add_pd(vx0, _mm256_mul_pd(idx, vh));
    __m256d m = vinf;
    __m256d masked = vzero;
    for (std::size_t t = 0; t < nt; ++t) {
      const __m256d dx = _mm256_sub_pd(x, _mm256_set1_pd(block.x[t]));
      const __m256d dy = _mm256_sub_pd(vy, _mm256_set1_pd(block.y[t]));
      const __m256d d2 = _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
      if (block.respect_epsilon) masked = _mm256_or_pd(masked, _mm256_cmp_pd(d2, veps, _CMP_LT_OQ));
      const __m256d p = pow_from_sq4(d2, block.nu_int);
      __m256d v = _mm256_add_pd(_mm256_div_pd(_mm256_set1_pd(block.coef[t]), p), _mm256_set1_pd(block.level[t]));
      v = _mm256_blendv_pd(vinf, v, _mm256_cmp_pd(d2, vzero, _CMP_GT_OQ));
      m = _mm256_min_pd(v, m);
    }
    _mm256_storeu_pd(out + i, _mm256_blendv_pd(m, vninf, masked));
  }
  // Tail cells, same arithmetic as the scalar kernel.
  {
    for (; i < n; ++i) {
      const double x = x0 + static_cast<double>(i) * h;
      double m = inf;
      bool mask = false;
      for (std::size_t t = 0; t < nt; ++t) {
        const double dx = x - block.x[t];
        const double dy = y - block.y[t];
        const double d2 = dx * dx + dy * dy;
        mask |= block.respect_epsilon && d2 < block.eps_sq;
        const double v = d2 > 0.0 ? block.coef[t] / pow_from_sq(d2, block) + block.level[t] : inf;
        m = v < m ? v : m;
      }
      out[i] = mask ? -inf : m;
    }
  }
}

}  // namespace jamplace::kernels
