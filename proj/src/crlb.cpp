#include "jamplace/crlb.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace jamplace {

bool values_equal(double a, double b, double rel_tol) {
  if (a == b) return true;
  if (is_unbounded(a) || is_unbounded(b)) return false;
  return std::abs(a - b) <= rel_tol * std::max(std::abs(a), std::abs(b));
}

double lambda_from_signal(const SignalParams& sp) {
  if (!(sp.effective_bandwidth_hz > 0.0)) throw std::invalid_argument("lambda_from_signal: bandwidth must be > 0");
  if (!(sp.signal_energy > 0.0)) throw std::invalid_argument("lambda_from_signal: energy must be > 0");
  if (!(sp.path_overlap >= 0.0 && sp.path_overlap <= 1.0))
    throw std::invalid_argument("lambda_from_signal: path overlap must be in [0, 1]");
  if (!(sp.propagation_speed > 0.0)) throw std::invalid_argument("lambda_from_signal: speed must be > 0");
  if (!(sp.first_path_amplitude_sq >= 0.0)) throw std::invalid_argument("lambda_from_signal: amplitude must be >= 0");

  const double two_pi_beta = 2.0 * std::numbers::pi * sp.effective_bandwidth_hz;
  return two_pi_beta * two_pi_beta * sp.first_path_amplitude_sq * sp.signal_energy * (1.0 - sp.path_overlap) /
         (sp.propagation_speed * sp.propagation_speed);
}

Fim2 Fim2::inverse() const {
  const double norm2 = a * a + 2.0 * b * b + c * c;
  const double d = det();
  if (!(std::abs(d) > 1e-14 * norm2)) throw SingularGeometry("information matrix is singular");
  return {c / d, -b / d, a / d};
}

Fim2 bearing_information(std::span<const double> lambdas, std::span<const double> angles) {
  if (lambdas.size() != angles.size()) throw std::invalid_argument("bearing_information: size mismatch");
  Fim2 m;
  for (std::size_t j = 0; j < lambdas.size(); ++j) {
    const double cs = std::cos(angles[j]);
    const double sn = std::sin(angles[j]);
    m.a += lambdas[j] * cs * cs;
    m.b += lambdas[j] * cs * sn;
    m.c += lambdas[j] * sn * sn;
  }
  return m;
}

double localization_factor(std::span<const double> lambdas, std::span<const double> angles) {
  if (lambdas.size() < 2) throw SingularGeometry("fewer than two LOS anchors");
  // det(J) as a sum over anchor pairs: no cancellation when bearings nearly coincide,
  // and it only sees angle differences so rotating the anchors leaves it unchanged
  double total = 0.0, det = 0.0;
  for (std::size_t j = 0; j < lambdas.size(); ++j) {
    total += lambdas[j];
    for (std::size_t k = j + 1; k < lambdas.size(); ++k) {
      const double s = std::sin(angles[j] - angles[k]);
      det += lambdas[j] * lambdas[k] * s * s;
    }
  }
  if (!(det > 1e-14 * total * total)) throw SingularGeometry("anchor bearings do not span the plane");
  return total / det;
}

JammingParams JammingParams::from_normalized(double pj_normalized, double n0, double nu, double epsilon) {
  JammingParams jp{pj_normalized * 0.5 * n0, n0, nu, epsilon};
  jp.validate();
  return jp;
}

void JammingParams::validate() const {
  if (!(pj_watts >= 0.0) || !std::isfinite(pj_watts)) throw std::invalid_argument("jammer power must be finite and >= 0");
  if (!(n0 > 0.0) || !std::isfinite(n0)) throw std::invalid_argument("N0 must be > 0");
  if (!(nu >= 1.0) || !std::isfinite(nu)) throw std::invalid_argument("path-loss exponent must be >= 1");
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw std::invalid_argument("epsilon must be > 0");
}

TargetProfile make_profile(int id, Point2 position, double k, std::vector<int> los_anchor_ids,
                           std::span<const Point2> los_anchor_positions, std::vector<double> lambdas) {
  if (los_anchor_ids.size() != los_anchor_positions.size() || lambdas.size() != los_anchor_ids.size())
    throw std::invalid_argument("make_profile: size mismatch");
  if (!(k > 0.0)) throw std::invalid_argument("target " + std::to_string(id) + ": K must be > 0");

  TargetProfile p;
  p.id = id;
  p.position = position;
  p.k = k;
  p.los_anchor_ids = std::move(los_anchor_ids);
  p.lambdas = std::move(lambdas);
  p.angles.reserve(los_anchor_positions.size());
  for (const Point2 a : los_anchor_positions) p.angles.push_back(std::atan2(a.y - position.y, a.x - position.x));
  try {
    p.r = localization_factor(p.lambdas, p.angles);
  } catch (const SingularGeometry& e) {
    throw SingularGeometry("target " + std::to_string(id) + ": " + e.what());
  }
  return p;
}

double interference(double d, double k, const JammingParams& jp) {
  return k * jp.pj_watts / std::pow(d, jp.nu) + jp.noise_floor();
}

Fim2 fim(const TargetProfile& profile, Point2 z, const JammingParams& jp) {
  const double d = distance(z, profile.position);
  if (d == 0.0) throw std::domain_error("fim: jammer coincides with target " + std::to_string(profile.id));
  const double w = 1.0 / interference(d, profile.k, jp);
  const Fim2 m = bearing_information(profile.lambdas, profile.angles);
  return {w * m.a, w * m.b, w * m.c};
}

double crlb(const TargetProfile& profile, Point2 z, const JammingParams& jp) {
  const double d = distance(z, profile.position);
  if (d == 0.0) throw std::domain_error("crlb: jammer coincides with target " + std::to_string(profile.id));
  return crlb_at_distance(profile, d, jp);
}

double crlb_at_distance(const TargetProfile& profile, double d, const JammingParams& jp) {
  return profile.r * interference(d, profile.k, jp);
}

double d_lim(double energy, double snr_threshold, const JammingParams& jp, double k) {
  const double denom = energy / snr_threshold - jp.noise_floor();
  if (!(denom > 0.0)) throw std::domain_error("d_lim: link is below the SNR threshold even without jamming");
  if (jp.pj_watts == 0.0) return 0.0;
  return std::pow(k * jp.pj_watts / denom, 1.0 / jp.nu);
}

double crlb_gated(const TargetProfile& profile, std::span<const double> energies, double d,
                  const JammingParams& jp, double snr_threshold) {
  if (energies.size() != profile.lambdas.size()) throw std::invalid_argument("crlb_gated: size mismatch");
  std::vector<double> lambdas;
  std::vector<double> angles;
  for (std::size_t j = 0; j < energies.size(); ++j) {
    if (d > d_lim(energies[j], snr_threshold, jp, profile.k)) {
      lambdas.push_back(profile.lambdas[j]);
      angles.push_back(profile.angles[j]);
    }
  }
  double r;
  try {
    r = localization_factor(lambdas, angles);
  } catch (const SingularGeometry&) {
    return kUnbounded;
  }
  return r * interference(d, profile.k, jp);
}

DistanceProfile::DistanceProfile(const TargetProfile& profile, const JammingParams& jp)
    : factors_{profile.r}, coef_(profile.k * jp.pj_watts), floor_(jp.noise_floor()), nu_(jp.nu) {}

DistanceProfile::DistanceProfile(const TargetProfile& profile, std::span<const double> energies,
                                 const JammingParams& jp, double snr_threshold)
    : coef_(profile.k * jp.pj_watts), floor_(jp.noise_floor()), nu_(jp.nu) {
  if (energies.size() != profile.lambdas.size()) throw std::invalid_argument("DistanceProfile: size mismatch");

  std::vector<double> limits(energies.size());
  for (std::size_t j = 0; j < energies.size(); ++j) limits[j] = d_lim(energies[j], snr_threshold, jp, profile.k);

  for (double l : limits)
    if (l > 0.0) breakpoints_.push_back(l);
  std::sort(breakpoints_.begin(), breakpoints_.end());
  breakpoints_.erase(std::unique(breakpoints_.begin(), breakpoints_.end()), breakpoints_.end());

  // Piece p covers (b_p, b_{p+1}] with b_0 = 0; links with limit <= b_p survive.
  factors_.reserve(breakpoints_.size() + 1);
  for (std::size_t p = 0; p <= breakpoints_.size(); ++p) {
    const double lower = p == 0 ? 0.0 : breakpoints_[p - 1];
    std::vector<double> lambdas;
    std::vector<double> angles;
    for (std::size_t j = 0; j < limits.size(); ++j) {
      if (limits[j] <= lower) {
        lambdas.push_back(profile.lambdas[j]);
        angles.push_back(profile.angles[j]);
      }
    }
    double r = kUnbounded;
    if (lambdas.size() >= 2) {
      try {
        r = localization_factor(lambdas, angles);
      } catch (const SingularGeometry&) {
      }
    }
    factors_.push_back(r);
  }
}

double DistanceProfile::piece_value(std::size_t piece, double d) const {
  const double r = factors_[piece];
  if (is_unbounded(r)) return kUnbounded;
  if (coef_ == 0.0) return r * floor_;
  if (d <= 0.0) return kUnbounded;
  return r * (coef_ / std::pow(d, nu_) + floor_);
}

double DistanceProfile::crlb(double d) const {
  const auto piece = static_cast<std::size_t>(std::lower_bound(breakpoints_.begin(), breakpoints_.end(), d) -
                                              breakpoints_.begin());
  return piece_value(piece, d);
}

double DistanceProfile::level_radius(double level) const {
  const double inf = std::numeric_limits<double>::infinity();
  double radius = 0.0;
  for (std::size_t p = 0; p < factors_.size(); ++p) {
    const double lower = p == 0 ? 0.0 : breakpoints_[p - 1];
    const double upper = p < breakpoints_.size() ? breakpoints_[p] : inf;
    const double r = factors_[p];
    double reach;
    if (is_unbounded(r)) {
      reach = upper;
    } else if (is_unbounded(level)) {
      continue;
    } else if (level <= r * floor_) {
      reach = inf;
    } else if (coef_ == 0.0) {
      continue;
    } else {
      reach = std::pow(coef_ / (level / r - floor_), 1.0 / nu_);
    }
    if (reach > lower) radius = std::max(radius, std::min(reach, upper));
  }
  return radius;
}

double DistanceProfile::finite_sup(double min_distance) const {
  const double inf = std::numeric_limits<double>::infinity();
  double sup = 0.0;
  for (std::size_t p = 0; p < factors_.size(); ++p) {
    const double lower = p == 0 ? 0.0 : breakpoints_[p - 1];
    const double upper = p < breakpoints_.size() ? breakpoints_[p] : inf;
    if (is_unbounded(factors_[p]) || upper < min_distance) continue;
    sup = std::max(sup, piece_value(p, std::max(lower, min_distance)));
  }
  return sup;
}

}  // namespace jamplace
