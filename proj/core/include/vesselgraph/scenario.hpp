#pragma once

#include <string>
#include <vector>

#include "vesselgraph/types.hpp"

namespace vesselgraph {

enum class AnomalyType {
  SpeedSpike,       // node: SOG rate pushed outside the fitted band
  CourseDeviation,  // node: COG rate pushed outside the fitted band
  KinematicBoth,    // node: both channels
  Rendezvous,       // edge: two vessels converge and dwell together
  Loitering,        // node (or graph for a whole group): near-zero drift
  GroupDeviation,   // graph: coordinated course offset across all members
};

enum class AnomalyLevel { Node, Edge, Graph };

const char* to_string(AnomalyType type);
const char* to_string(AnomalyLevel level);
AnomalyType anomaly_type_from_string(const std::string& name);
AnomalyLevel anomaly_level_from_string(const std::string& name);

/// Which group members a scenario applies to.
struct TargetSelector {
  enum class Kind { Focal, All, ByVesselType, ByMmsi, ByRegion };
  Kind kind = Kind::Focal;
  VesselType vessel_type = VesselType::Cargo;  // ByVesselType
  std::vector<Mmsi> mmsis;                     // ByMmsi
  RegionBounds region;                         // ByRegion (window-start position)
};

TargetSelector parse_target_selector(const std::string& text);
std::string to_string(const TargetSelector& target);

/// Structured anomaly intent. `severity` is the sigma multiplier for the
/// kinematic types (must exceed 3), the dwell distance in km for rendezvous,
/// and the SOG ceiling in knots for loitering.
struct Scenario {
  std::string id;
  AnomalyType type = AnomalyType::KinematicBoth;
  AnomalyLevel level = AnomalyLevel::Node;
  double severity = 3.5;
  TargetSelector target;
  std::string prompt_text;
  std::string rationale;
};

/// Turns a scenario document into a validated Scenario. The bundled
/// implementation parses the flat key:value DSL; alternative front ends
/// (e.g. a free-text model) plug in behind this interface and must produce
/// the same validated type.
class ScenarioInterpreter {
 public:
  virtual ~ScenarioInterpreter() = default;
  virtual Scenario interpret(const std::string& document) const = 0;
};

/// Rule-based interpreter for the flat key:value scenario format
/// (see docs/scenario_format.md). Unknown keys are rejected.
class DslInterpreter final : public ScenarioInterpreter {
 public:
  Scenario interpret(const std::string& document) const override;
};

/// Convenience wrapper over DslInterpreter.
Scenario interpret_scenario(const std::string& document);

Scenario load_scenario_file(const std::string& path);

/// Validates type/level consistency and severity constraints; throws
/// SchemaViolation. Called by every interpreter implementation.
void validate_scenario(const Scenario& scenario);

/// True for the four types whose severity is a sigma multiplier.
bool is_kinematic_type(AnomalyType type);

}  // namespace vesselgraph
