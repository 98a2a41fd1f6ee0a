#pragma once

#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "jamplace/geometry.hpp"

namespace jamplace {

// Relative tolerance used to decide whether two CRLB values are "equal".
inline constexpr double kValueTol = 1e-6;

// Unbounded CRLB (all usable anchors lost). Compares greater than any finite value.
inline constexpr double kUnbounded = std::numeric_limits<double>::infinity();

inline bool is_unbounded(double v) { return v == kUnbounded; }

bool values_equal(double a, double b, double rel_tol = kValueTol);

class SingularGeometry : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SignalParams {
  double effective_bandwidth_hz = 0.0;
  double first_path_amplitude_sq = 0.0;
  double signal_energy = 0.0;
  double path_overlap = 0.0;  // in [0, 1]
  double propagation_speed = 299792458.0;
};

// Ranging information intensity contributed by one LOS link.
double lambda_from_signal(const SignalParams& sp);

// Symmetric 2x2 matrix [[a, b], [b, c]].
struct Fim2 {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  double det() const { return a * c - b * b; }
  double trace() const { return a + c; }
  bool positive_definite() const { return a > 0.0 && det() > 0.0; }
  // Throws SingularGeometry when |det| is below 1e-14 * ||M||^2.
  Fim2 inverse() const;
};

Fim2 bearing_information(std::span<const double> lambdas, std::span<const double> angles);

// Trace of the inverse bearing information. Throws SingularGeometry.
double localization_factor(std::span<const double> lambdas, std::span<const double> angles);

struct JammingParams {
  double pj_watts = 0.0;
  double n0 = 2.0;
  double nu = 2.0;
  double epsilon = 1.0;

  double noise_floor() const { return 0.5 * n0; }
  double pj_normalized() const { return 2.0 * pj_watts / n0; }
  static JammingParams from_normalized(double pj_normalized, double n0, double nu, double epsilon);
  void validate() const;
};

struct TargetProfile {
  int id = 0;
  Point2 position;
  std::vector<int> los_anchor_ids;
  std::vector<double> lambdas;  // parallel to los_anchor_ids
  std::vector<double> angles;   // bearing from the target to each LOS anchor
  double r = 0.0;               // localization factor
  double k = 1.0;               // jammer channel constant
};

// Builds a profile from LOS anchor positions. Throws SingularGeometry naming the target.
TargetProfile make_profile(int id, Point2 position, double k, std::vector<int> los_anchor_ids,
                           std::span<const Point2> los_anchor_positions, std::vector<double> lambdas);

// Jamming-plus-noise level seen by a target at distance d from the jammer.
double interference(double d, double k, const JammingParams& jp);

// Throw std::domain_error when z coincides with the target.
Fim2 fim(const TargetProfile& profile, Point2 z, const JammingParams& jp);
double crlb(const TargetProfile& profile, Point2 z, const JammingParams& jp);
double crlb_at_distance(const TargetProfile& profile, double d, const JammingParams& jp);

// Jammer distance below which a link with the given energy drops under the SNR
// threshold. Throws std::domain_error when energy / snr_threshold <= N0 / 2.
double d_lim(double energy, double snr_threshold, const JammingParams& jp, double k);

struct SnrGate {
  double snr_threshold = 1.0;
  // energies[t][a]: target t, LOS anchor slot a (parallel to the profile's anchor list).
  std::vector<std::vector<double>> energies;
};

// CRLB with links below the SNR threshold removed; kUnbounded when the
// surviving anchors cannot localize the target.
double crlb_gated(const TargetProfile& profile, std::span<const double> energies, double d,
                  const JammingParams& jp, double snr_threshold);

// Distance-to-CRLB map of one target, precomputed for fast evaluation. The
// ungated case is a single piece; with a gate every distinct critical distance
// starts a new piece whose localization factor uses only the links still alive.
class DistanceProfile {
 public:
  DistanceProfile() = default;
  DistanceProfile(const TargetProfile& profile, const JammingParams& jp);
  DistanceProfile(const TargetProfile& profile, std::span<const double> energies, const JammingParams& jp,
                  double snr_threshold);

  double crlb(double d) const;
  // Largest d with crlb(d) >= level (0 if none, infinity if every d qualifies).
  double level_radius(double level) const;
  // Supremum of the finite values crlb takes on [min_distance, inf).
  double finite_sup(double min_distance) const;

  std::span<const double> breakpoints() const { return breakpoints_; }
  std::span<const double> factors() const { return factors_; }
  bool gated() const { return breakpoints_.size() > 0; }

 private:
  double piece_value(std::size_t piece, double d) const;

  std::vector<double> breakpoints_;  // ascending critical distances
  std::vector<double> factors_;      // breakpoints_.size() + 1 localization factors
  double coef_ = 0.0;                // K * P_J
  double floor_ = 0.0;               // N0 / 2
  double nu_ = 2.0;
};

}  // namespace jamplace
