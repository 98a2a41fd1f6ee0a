#pragma once

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "jamplace/crlb.hpp"
#include "jamplace/geometry.hpp"

namespace jamplace {

struct Anchor {
  int id = 0;
  Point2 position;
  friend bool operator==(const Anchor&, const Anchor&) = default;
};

struct TargetSpec {
  int id = 0;
  Point2 position;
  double k = 1.0;
  std::vector<int> los_anchor_ids;   // empty in a file means "all anchors"
  std::vector<int> nlos_anchor_ids;  // kept for fidelity, never used
  friend bool operator==(const TargetSpec&, const TargetSpec&) = default;
};

// lambda = c0 * distance^(-exponent)
struct FreeSpaceChannel {
  double c0 = 100.0;
  double exponent = 2.0;
  friend bool operator==(const FreeSpaceChannel&, const FreeSpaceChannel&) = default;
};

// lambda[target][anchor], indexed in file order; only LOS entries are read.
struct ExplicitChannel {
  std::vector<std::vector<double>> lambda;
  friend bool operator==(const ExplicitChannel&, const ExplicitChannel&) = default;
};

using ChannelModel = std::variant<FreeSpaceChannel, ExplicitChannel>;

// energy = e0 * distance^(-2)
struct InverseSquareEnergy {
  double e0 = 0.0;
  friend bool operator==(const InverseSquareEnergy&, const InverseSquareEnergy&) = default;
};

struct ExplicitEnergy {
  std::vector<std::vector<double>> energy;  // [target][anchor], file order
  friend bool operator==(const ExplicitEnergy&, const ExplicitEnergy&) = default;
};

struct GateSpec {
  double snr_threshold = 1.0;
  std::variant<InverseSquareEnergy, ExplicitEnergy> energy;
  friend bool operator==(const GateSpec&, const GateSpec&) = default;
};

struct JammingSpec {
  double pj_normalized = 0.0;
  double n0 = 2.0;
  double nu = 2.0;
  double epsilon = 1.0;
  friend bool operator==(const JammingSpec&, const JammingSpec&) = default;
};

struct ScenarioSpec {
  std::string name;
  std::vector<Anchor> anchors;
  std::vector<TargetSpec> targets;
  ChannelModel channel;
  JammingSpec jamming;
  std::optional<GateSpec> gate;
  friend bool operator==(const ScenarioSpec&, const ScenarioSpec&) = default;
};

// A validated problem instance with every per-target quantity precomputed.
// Targets are addressed by index (file order); results report ids.
class Scenario {
 public:
  // Throws std::invalid_argument on inconsistent specs and SingularGeometry
  // for targets whose LOS anchors cannot localize them.
  explicit Scenario(ScenarioSpec spec);

  const ScenarioSpec& spec() const { return spec_; }
  const std::string& name() const { return spec_.name; }
  const JammingParams& jamming() const { return jp_; }
  std::size_t target_count() const { return profiles_.size(); }
  std::span<const TargetProfile> profiles() const { return profiles_; }
  const TargetProfile& profile(std::size_t i) const { return profiles_[i]; }
  Point2 position(std::size_t i) const { return profiles_[i].position; }
  int target_id(std::size_t i) const { return profiles_[i].id; }
  std::size_t index_of(int target_id) const;
  std::vector<Point2> target_positions() const;

  bool gated() const { return gate_.has_value(); }
  const std::optional<SnrGate>& gate() const { return gate_; }
  const DistanceProfile& distance_profile(std::size_t i) const { return distance_profiles_[i]; }

  // Gate-aware CRLB of target i with the jammer at distance d or position z.
  double crlb_at_distance(std::size_t i, double d) const { return distance_profiles_[i].crlb(d); }
  double crlb(std::size_t i, Point2 z) const { return crlb_at_distance(i, distance(z, position(i))); }
  double level_radius(std::size_t i, double level) const { return distance_profiles_[i].level_radius(level); }

  bool feasible(Point2 z, double tol = kGeoTol) const;

  Scenario with_power(double pj_normalized) const;
  Scenario with_noise(double n0) const;
  Scenario without_gate() const;

 private:
  ScenarioSpec spec_;
  JammingParams jp_;
  std::vector<TargetProfile> profiles_;
  std::optional<SnrGate> gate_;
  std::vector<DistanceProfile> distance_profiles_;
};

struct MinCrlb {
  double value = kUnbounded;
  std::vector<int> argmin_ids;  // targets within kValueTol of the minimum
};

MinCrlb min_crlb(const Scenario& scenario, Point2 z);

// Ids of targets whose CRLB at z equals `value` within kValueTol.
std::vector<int> targets_at_level(const Scenario& scenario, Point2 z, double value);

}  // namespace jamplace
