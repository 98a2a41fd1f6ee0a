#include "jamplace/io.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace jamplace {

namespace detail {
extern const std::string_view kBundledA;
extern const std::string_view kBundledB;
extern const std::string_view kBundledC;
extern const std::string_view kBundledAGated;
}  // namespace detail

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

[[noreturn]] void schema_fail(const std::string& path, const std::string& msg) {
  throw SchemaError(path + ": " + msg);
}

void allow_keys(const json& obj, const std::string& path, std::initializer_list<std::string_view> keys) {
  for (const auto& [k, v] : obj.items()) {
    bool ok = false;
    for (auto allowed : keys) ok = ok || k == allowed;
    if (!ok) schema_fail(path, "unknown field \"" + k + "\"");
  }
}

const json& need(const json& obj, const std::string& path, const char* key) {
  if (!obj.is_object()) schema_fail(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) schema_fail(path, std::string("missing field \"") + key + "\"");
  return *it;
}

double number(const json& v, const std::string& path) {
  if (!v.is_number()) schema_fail(path, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) schema_fail(path, "must be finite");
  return d;
}

double number_or(const json& obj, const std::string& path, const char* key, double fallback) {
  auto it = obj.find(key);
  return it == obj.end() ? fallback : number(*it, path + "." + key);
}

int integer(const json& v, const std::string& path) {
  if (!v.is_number_integer()) schema_fail(path, "expected an integer");
  return v.get<int>();
}

std::vector<int> id_list(const json& v, const std::string& path) {
  if (!v.is_array()) schema_fail(path, "expected an array of ids");
  std::vector<int> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(integer(v[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<std::vector<double>> matrix(const json& v, const std::string& path) {
  if (!v.is_array()) schema_fail(path, "expected an array of rows");
  std::vector<std::vector<double>> out;
  for (std::size_t r = 0; r < v.size(); ++r) {
    const std::string rp = path + "[" + std::to_string(r) + "]";
    if (!v[r].is_array()) schema_fail(rp, "expected an array of numbers");
    std::vector<double> row;
    for (std::size_t c = 0; c < v[r].size(); ++c) {
      // null marks an unused (non-LOS) entry
      row.push_back(v[r][c].is_null() ? 0.0 : number(v[r][c], rp + "[" + std::to_string(c) + "]"));
    }
    out.push_back(std::move(row));
  }
  return out;
}

Point2 position(const json& obj, const std::string& path) {
  return {number(need(obj, path, "x"), path + ".x"), number(need(obj, path, "y"), path + ".y")};
}

ChannelModel parse_channel(const json& v, const std::string& path) {
  if (!v.is_object() || v.size() != 1) schema_fail(path, "expected exactly one of \"free_space\" or \"explicit\"");
  if (v.contains("free_space")) {
    const json& fs = v["free_space"];
    const std::string p = path + ".free_space";
    allow_keys(fs, p, {"c0", "exponent"});
    return FreeSpaceChannel{number(need(fs, p, "c0"), p + ".c0"), number_or(fs, p, "exponent", 2.0)};
  }
  if (v.contains("explicit")) return ExplicitChannel{matrix(v["explicit"], path + ".explicit")};
  schema_fail(path, "expected exactly one of \"free_space\" or \"explicit\"");
}

JammingSpec parse_jamming(const json& v, const std::string& path) {
  if (!v.is_object()) schema_fail(path, "expected an object");
  allow_keys(v, path, {"PJ_normalized", "PJ_watts", "N0", "nu", "epsilon"});
  JammingSpec js;
  js.n0 = number_or(v, path, "N0", 2.0);
  js.nu = number_or(v, path, "nu", 2.0);
  js.epsilon = number_or(v, path, "epsilon", 1.0);
  const bool norm = v.contains("PJ_normalized");
  const bool watts = v.contains("PJ_watts");
  if (norm == watts) schema_fail(path, "give exactly one of \"PJ_normalized\" or \"PJ_watts\"");
  if (!(js.n0 > 0.0)) schema_fail(path + ".N0", "must be > 0");
  if (!(js.nu >= 1.0)) schema_fail(path + ".nu", "must be >= 1");
  if (!(js.epsilon > 0.0)) schema_fail(path + ".epsilon", "must be > 0");
  if (norm) {
    js.pj_normalized = number(v["PJ_normalized"], path + ".PJ_normalized");
  } else {
    js.pj_normalized = 2.0 * number(v["PJ_watts"], path + ".PJ_watts") / js.n0;
  }
  if (!(js.pj_normalized >= 0.0)) schema_fail(path, "jammer power must be >= 0");
  return js;
}

GateSpec parse_gate(const json& v, const std::string& path) {
  if (!v.is_object()) schema_fail(path, "expected an object");
  allow_keys(v, path, {"snr_threshold", "energy"});
  GateSpec g;
  g.snr_threshold = number(need(v, path, "snr_threshold"), path + ".snr_threshold");
  if (!(g.snr_threshold > 0.0)) schema_fail(path + ".snr_threshold", "must be > 0");
  const json& e = need(v, path, "energy");
  const std::string ep = path + ".energy";
  if (!e.is_object() || e.size() != 1) schema_fail(ep, "expected exactly one of \"inverse_square\" or \"explicit\"");
  if (e.contains("inverse_square")) {
    const double e0 = number(e["inverse_square"], ep + ".inverse_square");
    if (!(e0 > 0.0)) schema_fail(ep + ".inverse_square", "must be > 0");
    g.energy = InverseSquareEnergy{e0};
  } else if (e.contains("explicit")) {
    g.energy = ExplicitEnergy{matrix(e["explicit"], ep + ".explicit")};
  } else {
    schema_fail(ep, "expected exactly one of \"inverse_square\" or \"explicit\"");
  }
  return g;
}

ordered_json point_json(int id, Point2 p) {
  ordered_json o;
  o["id"] = id;
  o["x"] = p.x;
  o["y"] = p.y;
  return o;
}

json matrix_json(const std::vector<std::vector<double>>& m) {
  json a = json::array();
  for (const auto& row : m) a.push_back(row);
  return a;
}

}  // namespace

ScenarioSpec parse_scenario_spec(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("<document>: not valid JSON (") + e.what() + ")");
  }
  if (!doc.is_object()) schema_fail("<document>", "expected an object");
  allow_keys(doc, "<document>", {"schema_version", "name", "description", "anchors", "targets", "channel", "jamming", "gate"});

  const int version = integer(need(doc, "<document>", "schema_version"), "schema_version");
  if (version != kSchemaVersion)
    schema_fail("schema_version", "unsupported version " + std::to_string(version));

  ScenarioSpec spec;
  if (auto it = doc.find("name"); it != doc.end()) {
    if (!it->is_string()) schema_fail("name", "expected a string");
    spec.name = it->get<std::string>();
  }

  const json& anchors = need(doc, "<document>", "anchors");
  if (!anchors.is_array() || anchors.empty()) schema_fail("anchors", "expected a non-empty array");
  std::set<int> anchor_ids;
  for (std::size_t i = 0; i < anchors.size(); ++i) {
    const std::string p = "anchors[" + std::to_string(i) + "]";
    allow_keys(anchors[i], p, {"id", "x", "y"});
    Anchor a{integer(need(anchors[i], p, "id"), p + ".id"), position(anchors[i], p)};
    if (!anchor_ids.insert(a.id).second) schema_fail(p + ".id", "duplicate id " + std::to_string(a.id));
    spec.anchors.push_back(a);
  }

  const json& targets = need(doc, "<document>", "targets");
  if (!targets.is_array() || targets.empty()) schema_fail("targets", "expected a non-empty array");
  std::set<int> target_ids;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const std::string p = "targets[" + std::to_string(i) + "]";
    const json& t = targets[i];
    allow_keys(t, p, {"id", "x", "y", "K", "los_anchor_ids", "nlos_anchor_ids"});
    TargetSpec ts;
    ts.id = integer(need(t, p, "id"), p + ".id");
    if (!target_ids.insert(ts.id).second) schema_fail(p + ".id", "duplicate id " + std::to_string(ts.id));
    ts.position = position(t, p);
    ts.k = number_or(t, p, "K", 1.0);
    if (!(ts.k > 0.0)) schema_fail(p + ".K", "must be > 0");
    if (t.contains("los_anchor_ids")) ts.los_anchor_ids = id_list(t["los_anchor_ids"], p + ".los_anchor_ids");
    if (t.contains("nlos_anchor_ids")) ts.nlos_anchor_ids = id_list(t["nlos_anchor_ids"], p + ".nlos_anchor_ids");
    for (int id : ts.los_anchor_ids)
      if (!anchor_ids.count(id)) schema_fail(p + ".los_anchor_ids", "unknown anchor id " + std::to_string(id));
    for (int id : ts.nlos_anchor_ids)
      if (!anchor_ids.count(id)) schema_fail(p + ".nlos_anchor_ids", "unknown anchor id " + std::to_string(id));
    spec.targets.push_back(std::move(ts));
  }

  spec.channel = parse_channel(need(doc, "<document>", "channel"), "channel");
  spec.jamming = parse_jamming(need(doc, "<document>", "jamming"), "jamming");
  if (doc.contains("gate")) spec.gate = parse_gate(doc["gate"], "gate");
  return spec;
}

Scenario parse_scenario(std::string_view text) {
  ScenarioSpec spec = parse_scenario_spec(text);
  try {
    return Scenario(std::move(spec));
  } catch (const SingularGeometry&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw SchemaError(std::string("<scenario>: ") + e.what());
  }
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError(path.string() + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

std::string dump_scenario(const Scenario& scenario) {
  const ScenarioSpec& s = scenario.spec();
  ordered_json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["name"] = s.name;
  doc["anchors"] = ordered_json::array();
  for (const auto& a : s.anchors) doc["anchors"].push_back(point_json(a.id, a.position));
  doc["targets"] = ordered_json::array();
  for (const auto& t : s.targets) {
    ordered_json o = point_json(t.id, t.position);
    o["K"] = t.k;
    o["los_anchor_ids"] = t.los_anchor_ids;
    if (!t.nlos_anchor_ids.empty()) o["nlos_anchor_ids"] = t.nlos_anchor_ids;
    doc["targets"].push_back(o);
  }
  if (const auto* fs = std::get_if<FreeSpaceChannel>(&s.channel)) {
    doc["channel"]["free_space"]["c0"] = fs->c0;
    doc["channel"]["free_space"]["exponent"] = fs->exponent;
  } else {
    doc["channel"]["explicit"] = matrix_json(std::get<ExplicitChannel>(s.channel).lambda);
  }
  doc["jamming"]["PJ_normalized"] = s.jamming.pj_normalized;
  doc["jamming"]["N0"] = s.jamming.n0;
  doc["jamming"]["nu"] = s.jamming.nu;
  doc["jamming"]["epsilon"] = s.jamming.epsilon;
  if (s.gate) {
    doc["gate"]["snr_threshold"] = s.gate->snr_threshold;
    if (const auto* inv = std::get_if<InverseSquareEnergy>(&s.gate->energy)) {
      doc["gate"]["energy"]["inverse_square"] = inv->e0;
    } else {
      doc["gate"]["energy"]["explicit"] = matrix_json(std::get<ExplicitEnergy>(s.gate->energy).energy);
    }
  }
  return doc.dump(2) + "\n";
}

std::string scenario_hash(const Scenario& scenario) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : dump_scenario(scenario)) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

std::vector<std::string> bundled_names() { return {"A", "B", "C", "A_gated"}; }

std::string_view bundled_scenario_text(std::string_view name) {
  if (name == "A") return detail::kBundledA;
  if (name == "B") return detail::kBundledB;
  if (name == "C") return detail::kBundledC;
  if (name == "A_gated") return detail::kBundledAGated;
  throw std::invalid_argument("no bundled scenario named \"" + std::string(name) + "\"");
}

Scenario bundled_scenario(std::string_view name) { return parse_scenario(bundled_scenario_text(name)); }

ResultRecord make_record(const Scenario& scenario, const PlacementResult& result, double wall_time_s) {
  ResultRecord rec;
  rec.scenario_hash = scenario_hash(scenario);
  rec.pj_normalized = scenario.jamming().pj_normalized();
  rec.result = result;
  for (std::size_t i = 0; i < scenario.target_count(); ++i)
    rec.target_crlbs.emplace_back(scenario.target_id(i), scenario.crlb(i, result.z));
  rec.wall_time_s = wall_time_s;
  return rec;
}

std::string format_fixed(double value, int decimals) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (std::isnan(value)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  std::string s = buf;
  if (s.find_first_not_of("-0.") == std::string::npos && s[0] == '-') s.erase(0, 1);  // no "-0.000000"
  return s;
}

std::string join_ids(std::span<const int> ids, char sep) {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(ids[i]);
  }
  return out;
}

std::string results_csv(std::span<const ResultRecord> records) {
  std::string out(kResultsHeader);
  out += '\n';
  for (const auto& r : records) {
    out += format_fixed(r.pj_normalized) + ',' + format_fixed(r.result.z.x) + ',' + format_fixed(r.result.z.y) + ',' +
           format_fixed(r.result.value) + ',' + std::string(to_string(r.result.branch)) + ',' +
           join_ids(r.result.active_targets) + ',' + (r.result.feasible ? "true" : "false") + '\n';
  }
  return out;
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error(path.string() + ": cannot open for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw std::runtime_error(path.string() + ": write failed");
}

void save_results(std::span<const ResultRecord> records, const std::filesystem::path& path) {
  if (records.empty()) throw std::invalid_argument("save_results: no records");
  write_text_file(path, results_csv(records));
}

std::string record_json(const ResultRecord& r) {
  ordered_json o;
  auto num = [](double v) -> ordered_json {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
  };
  o["scenario_hash"] = r.scenario_hash;
  o["solver_version"] = r.solver_version;
  o["pj_normalized"] = r.pj_normalized;
  o["z_opt"] = {r.result.z.x, r.result.z.y};
  o["value_m2"] = num(r.result.value);
  o["branch"] = std::string(to_string(r.result.branch));
  o["active_targets"] = r.result.active_targets;
  o["feasible"] = r.result.feasible;
  o["alternates"] = ordered_json::array();
  for (const Point2 p : r.result.alternates) o["alternates"].push_back({p.x, p.y});
  o["target_crlbs"] = ordered_json::array();
  for (const auto& [id, v] : r.target_crlbs) {
    ordered_json t;
    t["id"] = id;
    t["crlb_m2"] = num(v);
    o["target_crlbs"].push_back(t);
  }
  o["wall_time_s"] = r.wall_time_s;
  return o.dump(2) + "\n";
}

}  // namespace jamplace
