#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "edgeshard/cluster.hpp"

namespace edgeshard {

struct WorkloadAction {
    enum class Kind { Store, Retrieve, Audit, Repair };
    double t_ms = 0.0;
    Kind kind = Kind::Store;
    std::string label;
    NodeId dealer;            // unused for audit
    Bytes data;               // store only
    std::size_t over_request = 0;  // retrieve only
};

const char* workload_kind_name(WorkloadAction::Kind kind);

/// A full simulation scenario: cluster layout, fault script and workload.
/// Parsed from the JSON schema documented in docs/scenario-format.md.
struct ScenarioConfig {
    std::string name;
    ClusterConfig cluster;
    FaultScript faults;        // times non-decreasing
    std::vector<WorkloadAction> workload;  // times non-decreasing
};

/// Parses and validates a scenario document. Throws SchemaError naming the
/// offending field.
ScenarioConfig parse_scenario(const std::string& json_text);
ScenarioConfig load_scenario(const std::filesystem::path& path);

struct ScenarioReport {
    std::string text;  // human-readable table
    std::string json;  // machine-readable summary, byte-stable for a config
};

/// Runs the scenario deterministically: faults and workload merge into one
/// timeline (faults first at equal times), every queued delivery is drained
/// at the end, and the report covers action outcomes, selection scores,
/// audits, the final registry and the full event trace.
ScenarioReport run_scenario(const ScenarioConfig& config);

}  // namespace edgeshard
