#pragma once

#include <string>
#include <vector>

namespace jamplace {

struct GoldenCheck {
  int criterion = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

// Reference results on the bundled scenarios (criteria 1 to 6). Each check
// records what it measured in `detail`, pass or fail.
std::vector<GoldenCheck> run_goldens();

GoldenCheck golden_scenario_a();
GoldenCheck golden_scenario_a_breakpoints();
GoldenCheck golden_scenario_b();
GoldenCheck golden_scenario_c();
GoldenCheck golden_heatmap_argmax();
std::vector<GoldenCheck> golden_gated();

}  // namespace jamplace
