#include "jamplace/kernels.hpp"

#include <atomic>
#include <cmath>
#include <limits>

namespace jamplace::kernels {

#if defined(JAMPLACE_HAVE_AVX2)
void min_crlb_row_avx2(const TargetBlock& block, double y, double x0, double h, std::size_t n, double* out);
#endif

namespace {

std::atomic<int> g_active{-1};

}  // namespace

std::string_view to_string(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
  }
  return "unknown";
}

bool supported(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return true;
    case Isa::Avx2:
#if defined(JAMPLACE_HAVE_AVX2)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
  }
  return false;
}

Isa detect() { return supported(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar; }

Isa active() {
  int v = g_active.load(std::memory_order_relaxed);
  if (v < 0) {
    v = static_cast<int>(detect());
    g_active.store(v, std::memory_order_relaxed);
  }
  return static_cast<Isa>(v);
}

void set_active(Isa isa) { g_active.store(static_cast<int>(supported(isa) ? isa : Isa::Scalar)); }

int integral_exponent(double nu) {
  if (nu >= 1.0 && nu <= 16.0 && nu == std::floor(nu)) return static_cast<int>(nu);
  return 0;
}

double pow_from_sq(double d2, const TargetBlock& block) {
  if (block.nu_int == 0) return std::pow(d2, 0.5 * block.nu);
  double p = (block.nu_int & 1) ? std::sqrt(d2) : d2;
  for (int e = (block.nu_int & 1) ? 1 : 2; e < block.nu_int; e += 2) p *= d2;
  return p;
}

void min_crlb_row_scalar(const TargetBlock& block, double y, double x0, double h, std::size_t n, double* out) {
  const double inf = std::numeric_limits<double>::infinity();
  const std::size_t nt = block.x.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double x = x0 + static_cast<double>(i) * h;
    double m = inf;
    bool masked = false;
    for (std::size_t t = 0; t < nt; ++t) {
      const double dx = x - block.x[t];
      const double dy = y - block.y[t];
      const double d2 = dx * dx + dy * dy;
      masked |= block.respect_epsilon && d2 < block.eps_sq;
      const double v = d2 > 0.0 ? block.coef[t] / pow_from_sq(d2, block) + block.level[t] : inf;
      m = v < m ? v : m;
    }
    out[i] = masked ? -inf : m;
  }
}

void min_crlb_row(Isa isa, const TargetBlock& block, double y, double x0, double h, std::size_t n, double* out) {
#if defined(JAMPLACE_HAVE_AVX2)
  if (isa == Isa::Avx2 && block.nu_int != 0) {
    min_crlb_row_avx2(block, y, x0, h, n, out);
    return;
  }
#endif
  (void)isa;
  min_crlb_row_scalar(block, y, x0, h, n, out);
}

}  // namespace jamplace::kernels
