#include "edgeshard/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "edgeshard/errors.hpp"
#include "json.hpp"

namespace edgeshard {
namespace {

using nlohmann::ordered_json;

FaultAction parse_fault_action(const std::string& name, const std::string& path) {
    if (name == "crash") return FaultAction::Crash;
    if (name == "unreach") return FaultAction::Unreach;
    if (name == "corrupt") return FaultAction::Corrupt;
    if (name == "restore") return FaultAction::Restore;
    if (name == "fill_capacity") return FaultAction::FillCapacity;
    throw SchemaError(path, "unknown fault action '" + name + "'");
}

// --- typed field access with JSON-pointer style error paths ---------------

const ordered_json& require(const ordered_json& obj, const std::string& path,
                            const std::string& key) {
    if (!obj.is_object())
        throw SchemaError(path.empty() ? "(document)" : path, "expected an object");
    const auto it = obj.find(key);
    if (it == obj.end())
        throw SchemaError(path.empty() ? key : path + "." + key, "missing required field");
    return *it;
}

double as_number(const ordered_json& v, const std::string& path) {
    if (!v.is_number()) throw SchemaError(path, "expected a number");
    return v.get<double>();
}

std::uint64_t as_uint(const ordered_json& v, const std::string& path) {
    if (!v.is_number_unsigned()) throw SchemaError(path, "expected an unsigned integer");
    return v.get<std::uint64_t>();
}

std::string as_string(const ordered_json& v, const std::string& path) {
    if (!v.is_string()) throw SchemaError(path, "expected a string");
    return v.get<std::string>();
}

bool as_bool(const ordered_json& v, const std::string& path) {
    if (!v.is_boolean()) throw SchemaError(path, "expected a boolean");
    return v.get<bool>();
}

double opt_number(const ordered_json& obj, const std::string& path, const std::string& key,
                  double fallback) {
    const auto it = obj.find(key);
    return it == obj.end() ? fallback : as_number(*it, path + "." + key);
}

Bytes parse_hex(const std::string& text, const std::string& path) {
    if (text.size() % 2 != 0) throw SchemaError(path, "hex string needs an even length");
    Bytes out(text.size() / 2);
    auto digit = [&](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        throw SchemaError(path, "bad hex digit");
    };
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = static_cast<std::uint8_t>(digit(text[2 * i]) * 16 + digit(text[2 * i + 1]));
    }
    return out;
}

SharePolicy parse_policy(const ordered_json& j, const std::string& path) {
    const auto k = as_uint(require(j, path, "k"), path + ".k");
    const auto n = as_uint(require(j, path, "n"), path + ".n");
    if (k < 2 || k > n || n > 255)
        throw SchemaError(path, "policy must satisfy 2 <= k <= n <= 255");
    return SharePolicy{static_cast<std::uint8_t>(k), static_cast<std::uint8_t>(n)};
}

ScoreWeights parse_weights(const ordered_json& j, const std::string& path) {
    ScoreWeights w;
    w.w_st = opt_number(j, path, "w_st", 1.0);
    w.w_sc = opt_number(j, path, "w_sc", 1.0);
    w.w_st_att = opt_number(j, path, "w_st_att", 1.0);
    w.w_st_sh = opt_number(j, path, "w_st_sh", 1.0);
    w.w_st_no = opt_number(j, path, "w_st_no", 1.0);
    w.w_st_as = opt_number(j, path, "w_st_as", 1.0);
    if (!w.valid())
        throw SchemaError(path, "weights must be >= 0 with w_st or w_sc positive");
    return w;
}

}  // namespace

const char* workload_kind_name(WorkloadAction::Kind kind) {
    switch (kind) {
        case WorkloadAction::Kind::Store: return "store";
        case WorkloadAction::Kind::Retrieve: return "retrieve";
        case WorkloadAction::Kind::Audit: return "audit";
        case WorkloadAction::Kind::Repair: return "repair";
    }
    return "?";
}

ScenarioConfig parse_scenario(const std::string& json_text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(json_text);
    } catch (const ordered_json::parse_error& e) {
        throw SchemaError("(document)", std::string("not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw SchemaError("(document)", "expected a JSON object");

    ScenarioConfig config;
    if (const auto it = doc.find("name"); it != doc.end())
        config.name = as_string(*it, "name");

    config.cluster.seed = as_uint(require(doc, "", "seed"), "seed");
    config.cluster.policy = parse_policy(require(doc, "", "policy"), "policy");
    if (const auto it = doc.find("weights"); it != doc.end())
        config.cluster.weights = parse_weights(*it, "weights");

    if (const auto it = doc.find("strategy"); it != doc.end()) {
        const auto kind = as_string(require(*it, "strategy", "kind"), "strategy.kind");
        if (kind == "top_n") {
            config.cluster.strategy.kind = StrategyConfig::Kind::TopN;
        } else if (kind == "threshold_random") {
            config.cluster.strategy.kind = StrategyConfig::Kind::ThresholdRandom;
            config.cluster.strategy.threshold =
                as_number(require(*it, "strategy", "threshold"), "strategy.threshold");
        } else {
            throw SchemaError("strategy.kind", "must be top_n or threshold_random");
        }
    }

    if (const auto it = doc.find("network"); it != doc.end()) {
        config.cluster.loss_probability = opt_number(*it, "network", "loss", 0.0);
        config.cluster.retry_timeout_ms = opt_number(*it, "network", "retry_timeout_ms", 50.0);
        if (config.cluster.loss_probability < 0.0 || config.cluster.loss_probability >= 1.0)
            throw SchemaError("network.loss", "must lie in [0, 1)");
        if (config.cluster.retry_timeout_ms <= 0.0)
            throw SchemaError("network.retry_timeout_ms", "must be positive");
    }
    if (const auto it = doc.find("chunk_size"); it != doc.end()) {
        const auto v = as_uint(*it, "chunk_size");
        if (v == 0 || v > 0xFFFFFFFFull) throw SchemaError("chunk_size", "must be in [1, 2^32)");
        config.cluster.chunk_size = static_cast<std::uint32_t>(v);
    }

    const auto& nodes = require(doc, "", "nodes");
    if (!nodes.is_array() || nodes.empty())
        throw SchemaError("nodes", "expected a non-empty array");
    std::set<NodeId> node_ids;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const std::string path = "nodes[" + std::to_string(i) + "]";
        const auto& jn = nodes[i];
        NodeConfig nc;
        nc.id = as_string(require(jn, path, "id"), path + ".id");
        nc.attack_risk = as_number(require(jn, path, "attack_risk"), path + ".attack_risk");
        if (nc.attack_risk <= 0.0 || nc.attack_risk > 1.0)
            throw SchemaError(path + ".attack_risk", "must lie in (0, 1]");
        nc.capacity_bytes = as_uint(require(jn, path, "capacity"), path + ".capacity");
        nc.link_latency_ms = opt_number(jn, path, "latency_ms", 0.0);
        if (nc.link_latency_ms < 0.0)
            throw SchemaError(path + ".latency_ms", "must be >= 0");
        nc.capability_raw = opt_number(jn, path, "capability", 0.0);
        if (nc.capability_raw < 0.0) throw SchemaError(path + ".capability", "must be >= 0");
        if (const auto it = jn.find("dealer"); it != jn.end())
            nc.dealer_capable = as_bool(*it, path + ".dealer");
        if (!node_ids.insert(nc.id).second)
            throw SchemaError(path + ".id", "duplicate node id '" + nc.id + "'");
        config.cluster.nodes.push_back(std::move(nc));
    }

    if (const auto it = doc.find("faults"); it != doc.end()) {
        if (!it->is_array()) throw SchemaError("faults", "expected an array");
        double last_t = 0.0;
        for (std::size_t i = 0; i < it->size(); ++i) {
            const std::string path = "faults[" + std::to_string(i) + "]";
            const auto& jf = (*it)[i];
            FaultEvent ev;
            ev.t_ms = as_number(require(jf, path, "t"), path + ".t");
            ev.node = as_string(require(jf, path, "node"), path + ".node");
            ev.action =
                parse_fault_action(as_string(require(jf, path, "action"), path + ".action"),
                                   path + ".action");
            if (!node_ids.count(ev.node))
                throw SchemaError(path + ".node", "unknown node '" + ev.node + "'");
            if (i > 0 && ev.t_ms < last_t)
                throw SchemaError(path + ".t", "fault times must be non-decreasing");
            last_t = ev.t_ms;
            config.faults.push_back(std::move(ev));
        }
    }

    const auto& workload = require(doc, "", "workload");
    if (!workload.is_array()) throw SchemaError("workload", "expected an array");
    std::set<std::string> stored_labels;
    double last_t = 0.0;
    for (std::size_t i = 0; i < workload.size(); ++i) {
        const std::string path = "workload[" + std::to_string(i) + "]";
        const auto& jw = workload[i];
        WorkloadAction action;
        action.t_ms = as_number(require(jw, path, "t"), path + ".t");
        if (i > 0 && action.t_ms < last_t)
            throw SchemaError(path + ".t", "workload times must be non-decreasing");
        last_t = action.t_ms;
        const auto kind = as_string(require(jw, path, "action"), path + ".action");
        action.label = as_string(require(jw, path, "label"), path + ".label");

        if (kind == "store") {
            action.kind = WorkloadAction::Kind::Store;
            action.dealer = as_string(require(jw, path, "dealer"), path + ".dealer");
            const bool has_hex = jw.contains("data_hex");
            const bool has_text = jw.contains("data_text");
            const bool has_random = jw.contains("data_random");
            if (int(has_hex) + int(has_text) + int(has_random) != 1)
                throw SchemaError(path,
                                  "store needs exactly one of data_hex/data_text/data_random");
            if (has_hex) {
                action.data = parse_hex(as_string(jw["data_hex"], path + ".data_hex"),
                                        path + ".data_hex");
            } else if (has_text) {
                const auto text = as_string(jw["data_text"], path + ".data_text");
                action.data.assign(text.begin(), text.end());
            } else {
                const auto size = as_uint(jw["data_random"], path + ".data_random");
                if (size > (16u << 20))
                    throw SchemaError(path + ".data_random", "capped at 16 MiB");
                action.data.resize(size);
                // Deterministic payload derived from the scenario seed and
                // the action's position.
                RandomSource data_rng(config.cluster.seed ^
                                      (0x9E3779B97F4A7C15ull * (i + 1)));
                data_rng.fill(action.data);
            }
            if (!stored_labels.insert(action.label).second)
                throw SchemaError(path + ".label",
                                  "label '" + action.label + "' stored twice");
        } else if (kind == "retrieve" || kind == "repair" || kind == "audit") {
            action.kind = kind == "retrieve" ? WorkloadAction::Kind::Retrieve
                          : kind == "repair" ? WorkloadAction::Kind::Repair
                                             : WorkloadAction::Kind::Audit;
            if (!stored_labels.count(action.label))
                throw SchemaError(path + ".label",
                                  "label '" + action.label + "' was never stored");
            if (action.kind != WorkloadAction::Kind::Audit)
                action.dealer = as_string(require(jw, path, "dealer"), path + ".dealer");
            if (action.kind == WorkloadAction::Kind::Retrieve && jw.contains("over_request"))
                action.over_request = static_cast<std::size_t>(
                    as_uint(jw["over_request"], path + ".over_request"));
        } else {
            throw SchemaError(path + ".action",
                              "must be store, retrieve, audit or repair");
        }
        if (!action.dealer.empty() && !node_ids.count(action.dealer))
            throw SchemaError(path + ".dealer", "unknown node '" + action.dealer + "'");
        config.workload.push_back(std::move(action));
    }

    return config;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open scenario file " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_scenario(buffer.str());
}

namespace {

ordered_json error_json(const std::exception& e) {
    ordered_json j;
    if (const auto* is = dynamic_cast<const InsufficientShares*>(&e)) {
        j["type"] = "InsufficientShares";
        j["have"] = is->have;
        j["need"] = is->need;
    } else if (const auto* in = dynamic_cast<const InsufficientNodes*>(&e)) {
        j["type"] = "InsufficientNodes";
        j["eligible"] = in->eligible;
        j["requested"] = in->requested;
    } else if (dynamic_cast<const DealerUnavailable*>(&e)) {
        j["type"] = "DealerUnavailable";
    } else if (dynamic_cast<const UnknownSecret*>(&e)) {
        j["type"] = "UnknownSecret";
    } else {
        j["type"] = "Error";
    }
    j["message"] = e.what();
    return j;
}

ordered_json selection_json(const SelectionResult& sel) {
    ordered_json scores = ordered_json::array();
    for (const auto& sc : sel.scores) {
        ordered_json entry;
        entry["node"] = sc.id;
        if (sc.score) {
            entry["score"] = *sc.score;
        } else {
            entry["score"] = nullptr;  // excluded
        }
        scores.push_back(std::move(entry));
    }
    return scores;
}

std::string fmt_ms(double t) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", t);
    return buf;
}

std::string fmt_score(const SelectionScore& s) {
    if (!s) return "excluded";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", *s);
    return buf;
}

}  // namespace

ScenarioReport run_scenario(const ScenarioConfig& config) {
    Cluster cluster(config.cluster);

    struct Entry {
        double t;
        bool is_fault;
        std::size_t index;
    };
    std::vector<Entry> timeline;
    for (std::size_t i = 0; i < config.faults.size(); ++i)
        timeline.push_back({config.faults[i].t_ms, true, i});
    for (std::size_t i = 0; i < config.workload.size(); ++i)
        timeline.push_back({config.workload[i].t_ms, false, i});
    std::stable_sort(timeline.begin(), timeline.end(), [](const Entry& a, const Entry& b) {
        if (a.t != b.t) return a.t < b.t;
        return a.is_fault && !b.is_fault;  // faults first at equal times
    });

    std::map<std::string, SecretId> label_ids;
    std::map<std::string, Bytes> label_data;

    ordered_json actions = ordered_json::array();
    std::ostringstream text;
    text << "scenario: " << (config.name.empty() ? "(unnamed)" : config.name) << "\n";
    text << "seed " << config.cluster.seed << ", policy k=" << int(config.cluster.policy.k)
         << " n=" << int(config.cluster.policy.n) << ", strategy "
         << (config.cluster.strategy.kind == StrategyConfig::Kind::TopN
                 ? "top_n"
                 : "threshold_random")
         << ", nodes " << config.cluster.nodes.size() << "\n\n";
    text << "  time(ms)  action    label        outcome\n";
    text << "  --------  --------  -----------  -------------------------------\n";

    auto text_row = [&](double t, const std::string& action, const std::string& label,
                        const std::string& outcome) {
        char head[64];
        std::snprintf(head, sizeof(head), "  %8.1f  %-8s  %-11s  ", t, action.c_str(),
                      label.c_str());
        text << head << outcome << "\n";
    };

    for (const auto& entry : timeline) {
        const double t = entry.t;
        cluster.run_until(t);

        if (entry.is_fault) {
            const auto& ev = config.faults[entry.index];
            ordered_json row;
            row["t"] = ev.t_ms;
            row["action"] = "fault";
            row["node"] = ev.node;
            row["fault"] = fault_action_name(ev.action);
            cluster.inject_fault(ev.node, ev.action);
            actions.push_back(std::move(row));
            text_row(t, "fault", "-", std::string(fault_action_name(ev.action)) + " " + ev.node);
            continue;
        }

        const auto& action = config.workload[entry.index];
        ordered_json row;
        row["t"] = action.t_ms;
        row["action"] = workload_kind_name(action.kind);
        row["label"] = action.label;

        switch (action.kind) {
            case WorkloadAction::Kind::Store: {
                row["dealer"] = action.dealer;
                row["bytes"] = action.data.size();
                try {
                    const auto result = cluster.store(action.dealer, action.data);
                    label_ids[action.label] = result.id;
                    label_data[action.label] = action.data;
                    row["outcome"] = "ok";
                    row["secret_id"] = result.id.hex();
                    row["assigned"] = cluster.record(result.id).assigned;
                    row["scores"] = selection_json(result.selection);
                    text_row(t, "store", action.label,
                             "ok  " + std::to_string(action.data.size()) + " B, id " +
                                 result.id.hex().substr(0, 8) + "..");
                    std::string score_line = "            scores: ";
                    for (const auto& sc : result.selection.scores)
                        score_line += sc.id + "=" + fmt_score(sc.score) + " ";
                    text << score_line << "\n";
                } catch (const std::exception& e) {
                    row["outcome"] = "error";
                    row["error"] = error_json(e);
                    text_row(t, "store", action.label, std::string("ERROR ") + e.what());
                }
                break;
            }
            case WorkloadAction::Kind::Retrieve: {
                row["dealer"] = action.dealer;
                row["over_request"] = action.over_request;
                const auto it = label_ids.find(action.label);
                if (it == label_ids.end()) {
                    row["outcome"] = "error";
                    row["error"] = {{"type", "Error"},
                                    {"message", "store of this label failed earlier"}};
                    text_row(t, "retrieve", action.label, "ERROR store failed earlier");
                    break;
                }
                try {
                    const Bytes got = cluster.retrieve(action.dealer, it->second,
                                                       action.over_request);
                    row["outcome"] = "ok";
                    row["bytes"] = got.size();
                    row["matches_stored"] = (got == label_data[action.label]);
                    text_row(t, "retrieve", action.label,
                             "ok  " + std::to_string(got.size()) + " B, matches=" +
                                 (got == label_data[action.label] ? "true" : "false"));
                } catch (const std::exception& e) {
                    row["outcome"] = "error";
                    row["error"] = error_json(e);
                    text_row(t, "retrieve", action.label, std::string("ERROR ") + e.what());
                }
                break;
            }
            case WorkloadAction::Kind::Audit: {
                const auto it = label_ids.find(action.label);
                if (it == label_ids.end()) {
                    row["outcome"] = "error";
                    row["error"] = {{"type", "Error"},
                                    {"message", "store of this label failed earlier"}};
                    text_row(t, "audit", action.label, "ERROR store failed earlier");
                    break;
                }
                try {
                    const auto health = cluster.audit(it->second);
                    row["outcome"] = "ok";
                    row["reachable_holders"] = health.reachable_holders;
                    row["margin"] = health.margin;
                    row["intact_checksums"] = health.intact_checksums;
                    text_row(t, "audit", action.label,
                             "reachable=" + std::to_string(health.reachable_holders) +
                                 " margin=" + std::to_string(health.margin) + " intact=" +
                                 std::to_string(health.intact_checksums));
                } catch (const std::exception& e) {
                    row["outcome"] = "error";
                    row["error"] = error_json(e);
                    text_row(t, "audit", action.label, std::string("ERROR ") + e.what());
                }
                break;
            }
            case WorkloadAction::Kind::Repair: {
                row["dealer"] = action.dealer;
                const auto it = label_ids.find(action.label);
                if (it == label_ids.end()) {
                    row["outcome"] = "error";
                    row["error"] = {{"type", "Error"},
                                    {"message", "store of this label failed earlier"}};
                    text_row(t, "repair", action.label, "ERROR store failed earlier");
                    break;
                }
                try {
                    const auto result = cluster.repair(action.dealer, it->second);
                    row["outcome"] = "ok";
                    row["assigned"] = result.record.assigned;
                    row["scores"] = selection_json(result.selection);
                    std::string holders;
                    for (const auto& h : result.record.assigned) holders += h + " ";
                    text_row(t, "repair", action.label, "ok  holders: " + holders);
                } catch (const std::exception& e) {
                    row["outcome"] = "error";
                    row["error"] = error_json(e);
                    text_row(t, "repair", action.label, std::string("ERROR ") + e.what());
                }
                break;
            }
        }
        actions.push_back(std::move(row));
    }

    cluster.drain();

    ordered_json summary;
    summary["scenario"] = config.name;
    summary["seed"] = config.cluster.seed;
    summary["policy"] = {{"k", config.cluster.policy.k}, {"n", config.cluster.policy.n}};
    summary["strategy"] =
        config.cluster.strategy.kind == StrategyConfig::Kind::TopN ? "top_n"
                                                                   : "threshold_random";
    summary["actions"] = std::move(actions);

    ordered_json health_list = ordered_json::array();
    text << "\nfinal state (t=" << fmt_ms(cluster.now_ms()) << " ms)\n";
    for (const auto& [label, id] : label_ids) {
        const auto health = cluster.audit(id);
        ordered_json h;
        h["label"] = label;
        h["secret_id"] = id.hex();
        h["reachable_holders"] = health.reachable_holders;
        h["margin"] = health.margin;
        h["intact_checksums"] = health.intact_checksums;
        health_list.push_back(std::move(h));
        text << "  " << label << ": reachable=" << health.reachable_holders
             << " margin=" << health.margin << " intact=" << health.intact_checksums << "\n";
    }
    summary["final_health"] = std::move(health_list);

    ordered_json registry;
    ordered_json counts;
    for (const auto& [id, count] : cluster.registry().counts()) counts[id] = count;
    registry["active_share_count"] = std::move(counts);
    ordered_json pairs = ordered_json::array();
    for (const auto& [key, count] : cluster.registry().pairs()) {
        pairs.push_back(ordered_json::array({key.first, key.second, count}));
    }
    registry["co_occurrence"] = std::move(pairs);
    registry["total_active_shares"] = cluster.registry().total_active_shares();
    summary["final_registry"] = std::move(registry);

    text << "  registry:";
    for (const auto& [id, count] : cluster.registry().counts())
        text << " " << id << "=" << count;
    text << "\n";

    ordered_json trace = ordered_json::array();
    for (const auto& ev : cluster.trace()) {
        ordered_json e;
        e["t"] = ev.t_ms;
        e["kind"] = ev.kind;
        if (!ev.src.empty()) e["src"] = ev.src;
        if (!ev.dst.empty()) e["dst"] = ev.dst;
        if (!ev.detail.empty()) e["detail"] = ev.detail;
        trace.push_back(std::move(e));
    }
    summary["trace"] = std::move(trace);

    ScenarioReport report;
    report.text = text.str();
    report.json = summary.dump(2) + "\n";
    return report;
}

}  // namespace edgeshard
