#pragma once

#include <array>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "jamplace/scenario.hpp"

namespace jamplace {

enum class Branch {
  Prop1Circle,
  Prop2Pair,
  TwoTargetMidpoint,
  TwoTargetEpsilonEdge,
  TwoTargetEqualizer,
  TriangleBoundary,
  TriangleInterior,
  TripleEnum,
  GridFallback,
};

std::string_view to_string(Branch b);
std::optional<Branch> branch_from_string(std::string_view s);

struct PlacementResult {
  Point2 z;
  double value = 0.0;
  std::vector<int> active_targets;  // ids, ascending
  Branch branch = Branch::GridFallback;
  bool feasible = false;
  std::vector<Point2> alternates;
  std::vector<int> subset;  // ids of the pair or triple that determined z, when one did
};

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SolveOptions {
  double grid_resolution = 0.01;
  int refine_rounds = 2;
  double refine_factor = 10.0;
};

// Fires when some target alone, jammed from exactly epsilon away, is already
// the worst off everywhere.
std::optional<std::pair<std::size_t, PlacementResult>> check_prop1(const Scenario& scenario);

// Two-target problem under the epsilon constraint, on the connecting segment.
PlacementResult solve_pair(const Scenario& scenario, std::size_t i, std::size_t j);

// Equalizer of two targets with no distance constraint.
PlacementResult solve_pair_unconstrained(const Scenario& scenario, std::size_t i, std::size_t j);

struct PairSolution {
  std::size_t i = 0;
  std::size_t j = 0;
  PlacementResult result;
};

std::vector<PairSolution> solve_all_pairs(const Scenario& scenario);

// Accepts the weakest pair's solution when every other target is at least as
// well off there and the epsilon constraints hold.
std::optional<PlacementResult> check_prop2(const Scenario& scenario, std::span<const PairSolution> pairs);

PlacementResult solve_triple_unconstrained(const Scenario& scenario, std::size_t i, std::size_t j, std::size_t k);

// Throws SolverError for a single target (no finite optimum without epsilon).
PlacementResult solve_unconstrained(const Scenario& scenario);

struct ExclusionCircle {
  Point2 center;
  double radius = 0.0;  // may be +infinity
};

// Disks the three-target interior optimum cannot enter, given the solution of
// the weakest pair (i, j).
std::array<ExclusionCircle, 3> exclusion_region(const Scenario& scenario, std::size_t i, std::size_t j,
                                                std::size_t k, const PlacementResult& pair_result);

// Same, choosing the weakest pair of the triple itself.
std::array<ExclusionCircle, 3> exclusion_region(const Scenario& scenario, std::size_t i, std::size_t j,
                                                std::size_t k);

bool outside_all(const std::array<ExclusionCircle, 3>& circles, Point2 z, double tol = kGeoTol);

// Full dispatch. Gated scenarios are routed to solve_gated.
PlacementResult solve(const Scenario& scenario, const SolveOptions& options = {});

PlacementResult solve_gated(const Scenario& scenario, const SolveOptions& options = {});

// Exact constrained optimum by bisection on the CRLB level: a level is
// reachable iff the disks {d_i <= radius_i(level)} meet outside every epsilon
// disk. Works with or without a gate.
PlacementResult solve_by_level_sets(const Scenario& scenario);

struct SweepSample {
  double pj_normalized = 0.0;
  PlacementResult result;
};

struct SweepResult {
  std::vector<SweepSample> samples;
  std::vector<double> breakpoints;
};

struct SweepOptions {
  SolveOptions solve;
  double breakpoint_resolution = 0.01;
};

// Throws std::invalid_argument when powers are not strictly ascending.
SweepResult sweep(const Scenario& scenario, std::span<const double> powers, const SweepOptions& options = {});

std::vector<double> linspace(double lo, double hi, std::size_t count);

}  // namespace jamplace
