#include "jamplace/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

namespace jamplace {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

bool finite(Point2 p) { return std::isfinite(p.x) && std::isfinite(p.y); }

std::size_t anchor_index(const std::vector<Anchor>& anchors, int id) {
  for (std::size_t a = 0; a < anchors.size(); ++a)
    if (anchors[a].id == id) return a;
  return anchors.size();
}

}  // namespace

Scenario::Scenario(ScenarioSpec spec) : spec_(std::move(spec)) {
  const auto& anchors = spec_.anchors;
  auto& targets = spec_.targets;
  if (anchors.empty()) fail("scenario has no anchors");
  if (targets.empty()) fail("scenario has no targets");

  std::set<int> ids;
  for (const auto& a : anchors) {
    if (!finite(a.position)) fail("anchor " + std::to_string(a.id) + ": non-finite position");
    if (!ids.insert(a.id).second) fail("duplicate anchor id " + std::to_string(a.id));
  }
  for (std::size_t i = 0; i < anchors.size(); ++i)
    for (std::size_t j = i + 1; j < anchors.size(); ++j)
      if (anchors[i].position == anchors[j].position)
        fail("anchors " + std::to_string(anchors[i].id) + " and " + std::to_string(anchors[j].id) + " coincide");

  ids.clear();
  for (auto& t : targets) {
    const std::string who = "target " + std::to_string(t.id);
    if (!finite(t.position)) fail(who + ": non-finite position");
    if (!ids.insert(t.id).second) fail("duplicate target id " + std::to_string(t.id));
    if (!(t.k > 0.0) || !std::isfinite(t.k)) fail(who + ": K must be > 0");
    if (t.los_anchor_ids.empty())
      for (const auto& a : anchors) t.los_anchor_ids.push_back(a.id);
    std::set<int> seen;
    for (int id : t.los_anchor_ids) {
      if (anchor_index(anchors, id) == anchors.size()) fail(who + ": unknown LOS anchor id " + std::to_string(id));
      if (!seen.insert(id).second) fail(who + ": LOS anchor id " + std::to_string(id) + " listed twice");
    }
    for (int id : t.nlos_anchor_ids) {
      if (anchor_index(anchors, id) == anchors.size()) fail(who + ": unknown NLOS anchor id " + std::to_string(id));
      if (seen.count(id)) fail(who + ": anchor " + std::to_string(id) + " is both LOS and NLOS");
    }
    for (const auto& a : anchors)
      if (a.position == t.position) fail(who + ": coincides with anchor " + std::to_string(a.id));
  }
  for (std::size_t i = 0; i < targets.size(); ++i)
    for (std::size_t j = i + 1; j < targets.size(); ++j)
      if (targets[i].position == targets[j].position)
        fail("targets " + std::to_string(targets[i].id) + " and " + std::to_string(targets[j].id) + " coincide");

  const auto& js = spec_.jamming;
  if (!(js.pj_normalized >= 0.0) || !std::isfinite(js.pj_normalized)) fail("jamming: power must be finite and >= 0");
  jp_ = JammingParams::from_normalized(js.pj_normalized, js.n0, js.nu, js.epsilon);

  if (const auto* ex = std::get_if<ExplicitChannel>(&spec_.channel)) {
    if (ex->lambda.size() != targets.size()) fail("channel: explicit lambda needs one row per target");
    for (const auto& row : ex->lambda)
      if (row.size() != anchors.size()) fail("channel: explicit lambda needs one column per anchor");
  } else {
    const auto& fs = std::get<FreeSpaceChannel>(spec_.channel);
    if (!(fs.c0 > 0.0) || !std::isfinite(fs.c0)) fail("channel: free_space c0 must be > 0");
    if (!std::isfinite(fs.exponent)) fail("channel: free_space exponent must be finite");
  }

  profiles_.reserve(targets.size());
  for (std::size_t t = 0; t < targets.size(); ++t) {
    const auto& ts = targets[t];
    std::vector<Point2> pos;
    std::vector<double> lambdas;
    for (int id : ts.los_anchor_ids) {
      const std::size_t a = anchor_index(anchors, id);
      pos.push_back(anchors[a].position);
      double lam;
      if (const auto* ex = std::get_if<ExplicitChannel>(&spec_.channel)) {
        lam = ex->lambda[t][a];
      } else {
        const auto& fs = std::get<FreeSpaceChannel>(spec_.channel);
        lam = fs.c0 * std::pow(distance(ts.position, anchors[a].position), -fs.exponent);
      }
      if (!(lam > 0.0) || !std::isfinite(lam))
        fail("target " + std::to_string(ts.id) + ": lambda for anchor " + std::to_string(id) + " must be > 0");
      lambdas.push_back(lam);
    }
    profiles_.push_back(make_profile(ts.id, ts.position, ts.k, ts.los_anchor_ids, pos, std::move(lambdas)));
  }

  if (spec_.gate) {
    const auto& gs = *spec_.gate;
    if (!(gs.snr_threshold > 0.0) || !std::isfinite(gs.snr_threshold)) fail("gate: snr_threshold must be > 0");
    SnrGate gate{gs.snr_threshold, {}};
    for (std::size_t t = 0; t < targets.size(); ++t) {
      std::vector<double> row;
      for (int id : targets[t].los_anchor_ids) {
        const std::size_t a = anchor_index(anchors, id);
        double e;
        if (const auto* inv = std::get_if<InverseSquareEnergy>(&gs.energy)) {
          e = inv->e0 / distance_sq(targets[t].position, anchors[a].position);
        } else {
          const auto& ex = std::get<ExplicitEnergy>(gs.energy);
          if (ex.energy.size() != targets.size() || ex.energy[t].size() != anchors.size())
            fail("gate: explicit energy needs one row per target and one column per anchor");
          e = ex.energy[t][a];
        }
        if (!(e / gs.snr_threshold > jp_.noise_floor()))
          fail("gate: target " + std::to_string(targets[t].id) + ", anchor " + std::to_string(id) +
               ": energy / snr_threshold must exceed N0 / 2");
        row.push_back(e);
      }
      gate.energies.push_back(std::move(row));
    }
    gate_ = std::move(gate);
  }

  distance_profiles_.reserve(profiles_.size());
  for (std::size_t t = 0; t < profiles_.size(); ++t) {
    if (gate_) distance_profiles_.emplace_back(profiles_[t], gate_->energies[t], jp_, gate_->snr_threshold);
    else distance_profiles_.emplace_back(profiles_[t], jp_);
  }
}

std::size_t Scenario::index_of(int target_id) const {
  for (std::size_t i = 0; i < profiles_.size(); ++i)
    if (profiles_[i].id == target_id) return i;
  throw std::out_of_range("no target with id " + std::to_string(target_id));
}

std::vector<Point2> Scenario::target_positions() const {
  std::vector<Point2> out;
  out.reserve(profiles_.size());
  for (const auto& p : profiles_) out.push_back(p.position);
  return out;
}

bool Scenario::feasible(Point2 z, double tol) const {
  for (const auto& p : profiles_)
    if (distance(z, p.position) < jp_.epsilon - tol) return false;
  return true;
}

Scenario Scenario::with_power(double pj_normalized) const {
  ScenarioSpec s = spec_;
  s.jamming.pj_normalized = pj_normalized;
  return Scenario(std::move(s));
}

Scenario Scenario::with_noise(double n0) const {
  ScenarioSpec s = spec_;
  s.jamming.n0 = n0;
  return Scenario(std::move(s));
}

Scenario Scenario::without_gate() const {
  ScenarioSpec s = spec_;
  s.gate.reset();
  return Scenario(std::move(s));
}

MinCrlb min_crlb(const Scenario& scenario, Point2 z) {
  MinCrlb out;
  std::vector<double> values(scenario.target_count());
  for (std::size_t i = 0; i < values.size(); ++i) {
    values[i] = scenario.crlb(i, z);
    out.value = std::min(out.value, values[i]);
  }
  for (std::size_t i = 0; i < values.size(); ++i)
    if (values_equal(values[i], out.value)) out.argmin_ids.push_back(scenario.target_id(i));
  return out;
}

std::vector<int> targets_at_level(const Scenario& scenario, Point2 z, double value) {
  std::vector<int> ids;
  for (std::size_t i = 0; i < scenario.target_count(); ++i)
    if (values_equal(scenario.crlb(i, z), value)) ids.push_back(scenario.target_id(i));
  return ids;
}

}  // namespace jamplace
