#pragma once

#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "jamplace/scenario.hpp"
#include "jamplace/solver.hpp"

namespace jamplace {

inline constexpr int kSchemaVersion = 1;
inline constexpr std::string_view kSolverVersion = "1.0.0";

// Malformed or inconsistent scenario input. The message starts with the
// offending field path, e.g. "targets[1].id: duplicate id 2".
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

ScenarioSpec parse_scenario_spec(std::string_view text);
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::filesystem::path& path);

// Canonical text form: fixed key order, power as PJ_normalized, defaults spelled out.
std::string dump_scenario(const Scenario& scenario);

// FNV-1a of the canonical text, 16 hex digits.
std::string scenario_hash(const Scenario& scenario);

// "A", "B", "C" and "A_gated".
std::vector<std::string> bundled_names();
std::string_view bundled_scenario_text(std::string_view name);
Scenario bundled_scenario(std::string_view name);

struct ResultRecord {
  std::string scenario_hash;
  double pj_normalized = 0.0;
  PlacementResult result;
  std::vector<std::pair<int, double>> target_crlbs;  // (id, CRLB at z)
  std::string solver_version{kSolverVersion};
  double wall_time_s = 0.0;
};

ResultRecord make_record(const Scenario& scenario, const PlacementResult& result, double wall_time_s);

// Fixed decimals; unbounded values print as "inf".
std::string format_fixed(double value, int decimals = 6);
std::string join_ids(std::span<const int> ids, char sep = ';');

inline constexpr std::string_view kResultsHeader =
    "pj_normalized,zx_m,zy_m,value_m2,branch,active_targets,feasible";

std::string results_csv(std::span<const ResultRecord> records);
// Throws std::invalid_argument on empty input, std::runtime_error if the file cannot be written.
void save_results(std::span<const ResultRecord> records, const std::filesystem::path& path);

std::string record_json(const ResultRecord& record);

void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace jamplace
