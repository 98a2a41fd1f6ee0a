#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

namespace jamplace::kernels {

enum class Isa { Scalar, Avx2 };

std::string_view to_string(Isa isa);

// Best instruction set supported by both this build and the running CPU.
Isa detect();
bool supported(Isa isa);

// Process-wide choice used by the oracle; defaults to detect().
Isa active();
void set_active(Isa isa);

// Structure-of-arrays view of the ungated objective:
//   crlb_t(z) = coef_t / d_t^nu + level_t,  d_t = |z - x_t|
// with coef_t = R_t K_t P_J and level_t = R_t N0 / 2.
struct TargetBlock {
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> coef;
  std::vector<double> level;
  double nu = 2.0;
  int nu_int = 2;         // nu when it is a small positive integer, else 0
  double eps_sq = 1.0;
  bool respect_epsilon = true;
};

// Exact small-integer exponent, or 0 when the generic pow path is needed.
int integral_exponent(double nu);

// d^nu from d^2, evaluated identically by every kernel variant.
double pow_from_sq(double d2, const TargetBlock& block);

// Minimum CRLB over targets at points (x0 + i*h, y), i in [0, n). Cells closer
// than epsilon to any target are written as -infinity so an argmax skips them.
void min_crlb_row(Isa isa, const TargetBlock& block, double y, double x0, double h, std::size_t n, double* out);

void min_crlb_row_scalar(const TargetBlock& block, double y, double x0, double h, std::size_t n, double* out);

}  // namespace jamplace::kernels
