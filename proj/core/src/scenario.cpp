#include "vesselgraph/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "vesselgraph/errors.hpp"

namespace vesselgraph {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

double parse_number(const std::string& text, const char* what) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw SchemaViolation(std::string("scenario: unparseable ") + what + ": \"" + text + "\"");
  }
  return v;
}

}  // namespace

const char* to_string(AnomalyType type) {
  switch (type) {
    case AnomalyType::SpeedSpike: return "speed_spike";
    case AnomalyType::CourseDeviation: return "course_deviation";
    case AnomalyType::KinematicBoth: return "kinematic_both";
    case AnomalyType::Rendezvous: return "rendezvous";
    case AnomalyType::Loitering: return "loitering";
    case AnomalyType::GroupDeviation: return "group_deviation";
  }
  return "kinematic_both";
}

const char* to_string(AnomalyLevel level) {
  switch (level) {
    case AnomalyLevel::Node: return "node";
    case AnomalyLevel::Edge: return "edge";
    case AnomalyLevel::Graph: return "graph";
  }
  return "node";
}

AnomalyType anomaly_type_from_string(const std::string& name) {
  const std::string n = lower(trim(name));
  if (n == "speed_spike") return AnomalyType::SpeedSpike;
  if (n == "course_deviation") return AnomalyType::CourseDeviation;
  if (n == "kinematic_both") return AnomalyType::KinematicBoth;
  if (n == "rendezvous") return AnomalyType::Rendezvous;
  if (n == "loitering") return AnomalyType::Loitering;
  if (n == "group_deviation") return AnomalyType::GroupDeviation;
  throw SchemaViolation("scenario: unknown anomaly type \"" + name + "\"");
}

AnomalyLevel anomaly_level_from_string(const std::string& name) {
  const std::string n = lower(trim(name));
  if (n == "node") return AnomalyLevel::Node;
  if (n == "edge") return AnomalyLevel::Edge;
  if (n == "graph") return AnomalyLevel::Graph;
  throw SchemaViolation("scenario: unknown level \"" + name + "\"");
}

bool is_kinematic_type(AnomalyType type) {
  return type == AnomalyType::SpeedSpike || type == AnomalyType::CourseDeviation ||
         type == AnomalyType::KinematicBoth || type == AnomalyType::GroupDeviation;
}

TargetSelector parse_target_selector(const std::string& text) {
  TargetSelector sel;
  const std::string t = trim(text);
  const std::string tl = lower(t);
  if (tl == "focal") {
    sel.kind = TargetSelector::Kind::Focal;
    return sel;
  }
  if (tl == "all") {
    sel.kind = TargetSelector::Kind::All;
    return sel;
  }
  const auto eq = t.find('=');
  if (eq == std::string::npos) {
    throw SchemaViolation("scenario: unparseable target \"" + text + "\"");
  }
  const std::string key = lower(trim(t.substr(0, eq)));
  const std::string value = trim(t.substr(eq + 1));
  if (key == "vessel_type") {
    sel.kind = TargetSelector::Kind::ByVesselType;
    sel.vessel_type = vessel_type_from_string(value);
    return sel;
  }
  if (key == "mmsi") {
    sel.kind = TargetSelector::Kind::ByMmsi;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      if (item.empty()) continue;
      sel.mmsis.push_back(static_cast<Mmsi>(parse_number(item, "mmsi")));
    }
    if (sel.mmsis.empty()) throw SchemaViolation("scenario: empty mmsi list");
    return sel;
  }
  if (key == "region") {
    sel.kind = TargetSelector::Kind::ByRegion;
    std::stringstream ss(value);
    std::string item;
    std::vector<double> vals;
    while (std::getline(ss, item, ',')) vals.push_back(parse_number(trim(item), "region bound"));
    if (vals.size() != 4) {
      throw SchemaViolation("scenario: region needs lon_min,lon_max,lat_min,lat_max");
    }
    sel.region = RegionBounds{vals[0], vals[1], vals[2], vals[3]};
    if (sel.region.lon_min >= sel.region.lon_max || sel.region.lat_min >= sel.region.lat_max) {
      throw SchemaViolation("scenario: degenerate region bounds");
    }
    return sel;
  }
  throw SchemaViolation("scenario: unknown target selector \"" + key + "\"");
}

std::string to_string(const TargetSelector& target) {
  switch (target.kind) {
    case TargetSelector::Kind::Focal: return "focal";
    case TargetSelector::Kind::All: return "all";
    case TargetSelector::Kind::ByVesselType:
      return std::string("vessel_type=") + to_string(target.vessel_type);
    case TargetSelector::Kind::ByMmsi: {
      std::string out = "mmsi=";
      for (std::size_t i = 0; i < target.mmsis.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(target.mmsis[i]);
      }
      return out;
    }
    case TargetSelector::Kind::ByRegion: {
      char buf[128];
      std::snprintf(buf, sizeof(buf), "region=%g,%g,%g,%g", target.region.lon_min,
                    target.region.lon_max, target.region.lat_min, target.region.lat_max);
      return buf;
    }
  }
  return "focal";
}

void validate_scenario(const Scenario& scenario) {
  if (scenario.id.empty()) throw SchemaViolation("scenario: id is required");
  if (is_kinematic_type(scenario.type) && !(scenario.severity > 3.0)) {
    throw SchemaViolation("scenario " + scenario.id +
                          ": kinematic severity must exceed 3 (sigma multiplier), got " +
                          std::to_string(scenario.severity));
  }
  if (scenario.type == AnomalyType::Rendezvous) {
    if (scenario.level != AnomalyLevel::Edge) {
      throw SchemaViolation("scenario " + scenario.id + ": rendezvous is edge-level");
    }
    if (!(scenario.severity > 0.0 && scenario.severity <= 0.5)) {
      throw SchemaViolation("scenario " + scenario.id +
                            ": rendezvous severity is the dwell distance in km, (0, 0.5]");
    }
  }
  if (scenario.type == AnomalyType::Loitering) {
    if (scenario.level == AnomalyLevel::Edge) {
      throw SchemaViolation("scenario " + scenario.id + ": loitering is node- or graph-level");
    }
    if (!(scenario.severity > 0.0 && scenario.severity < 1.0)) {
      throw SchemaViolation("scenario " + scenario.id +
                            ": loitering severity is the SOG ceiling in knots, (0, 1)");
    }
  }
  if (scenario.type == AnomalyType::GroupDeviation && scenario.level != AnomalyLevel::Graph) {
    throw SchemaViolation("scenario " + scenario.id + ": group_deviation is graph-level");
  }
  if ((scenario.type == AnomalyType::SpeedSpike || scenario.type == AnomalyType::CourseDeviation ||
       scenario.type == AnomalyType::KinematicBoth) &&
      scenario.level != AnomalyLevel::Node) {
    throw SchemaViolation("scenario " + scenario.id + ": " + to_string(scenario.type) +
                          " is node-level");
  }
}

Scenario DslInterpreter::interpret(const std::string& document) const {
  std::map<std::string, std::string> kv;
  std::istringstream in(document);
  std::string line;
  while (std::getline(in, line)) {
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const auto colon = stripped.find(':');
    if (colon == std::string::npos) {
      throw SchemaViolation("scenario: expected \"key: value\", got \"" + stripped + "\"");
    }
    const std::string key = lower(trim(stripped.substr(0, colon)));
    const std::string value = trim(stripped.substr(colon + 1));
    if (kv.count(key)) throw SchemaViolation("scenario: duplicate key \"" + key + "\"");
    kv[key] = value;
  }

  static const std::map<std::string, bool> known = {
      {"id", true},       {"type", true},   {"level", false},
      {"severity", false}, {"target", true}, {"prompt_text", false},
  };
  for (const auto& [key, value] : kv) {
    if (!known.count(key)) throw SchemaViolation("scenario: unknown key \"" + key + "\"");
  }
  for (const auto& [key, required] : known) {
    if (required && !kv.count(key)) {
      throw SchemaViolation("scenario: missing required key \"" + key + "\"");
    }
  }

  Scenario sc;
  sc.id = kv.at("id");
  sc.type = anomaly_type_from_string(kv.at("type"));
  sc.target = parse_target_selector(kv.at("target"));
  if (kv.count("prompt_text")) sc.prompt_text = kv.at("prompt_text");

  if (kv.count("level")) {
    sc.level = anomaly_level_from_string(kv.at("level"));
  } else {
    switch (sc.type) {
      case AnomalyType::Rendezvous: sc.level = AnomalyLevel::Edge; break;
      case AnomalyType::GroupDeviation: sc.level = AnomalyLevel::Graph; break;
      default: sc.level = AnomalyLevel::Node; break;
    }
  }

  if (kv.count("severity")) {
    sc.severity = parse_number(kv.at("severity"), "severity");
  } else {
    switch (sc.type) {
      case AnomalyType::Rendezvous: sc.severity = 0.25; break;
      case AnomalyType::Loitering: sc.severity = 0.8; break;
      default: sc.severity = 3.5; break;
    }
  }

  validate_scenario(sc);
  return sc;
}

Scenario interpret_scenario(const std::string& document) {
  return DslInterpreter{}.interpret(document);
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open scenario file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return interpret_scenario(buf.str());
  } catch (const SchemaViolation& e) {
    throw SchemaViolation(path + ": " + e.what());
  }
}

}  // namespace vesselgraph
