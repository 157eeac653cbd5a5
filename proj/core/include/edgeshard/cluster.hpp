#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "edgeshard/chunking.hpp"
#include "edgeshard/random.hpp"
#include "edgeshard/selection.hpp"
#include "edgeshard/shamir.hpp"
#include "edgeshard/types.hpp"

namespace edgeshard {

enum class FaultAction { Crash, Unreach, Corrupt, Restore, FillCapacity };

const char* fault_action_name(FaultAction action);

/// One scripted node state change at a virtual time.
struct FaultEvent {
    double t_ms = 0.0;
    NodeId node;
    FaultAction action = FaultAction::Crash;
};
using FaultScript = std::vector<FaultEvent>;

struct NodeConfig {
    NodeId id;
    double attack_risk = 1.0;
    std::uint64_t capacity_bytes = 0;
    double link_latency_ms = 0.0;
    double capability_raw = 0.0;
    bool dealer_capable = true;
};

/// One MEH with its collocated storage. Corrupt nodes keep serving their
/// shares (honest-but-curious); only reachability removes a node from the
/// network.
struct MehNode {
    NodeConfig config;
    bool reachable = true;
    bool corrupt = false;
    bool capacity_filled = false;
    std::uint64_t used_bytes = 0;
    /// Plaintext awaiting split; present only inside store/repair and erased
    /// before they return.
    std::optional<Bytes> staged_plaintext;
    std::map<std::pair<SecretId, std::uint32_t>, Share> stored;

    std::uint64_t free_capacity() const;
    NodeProfile profile() const;
    const Share* find_share(const SecretId& id, std::uint32_t chunk) const;
    void put_share(Share share);
    void drop_secret(const SecretId& id);
};

enum class RecordState { Active, Retired };

/// Orchestrator bookkeeping for one stored secret.
struct SecretRecord {
    SecretId id;
    SharePolicy policy;
    ChunkLayout layout;
    NodeId dealer;
    std::vector<NodeId> assigned;  // assigned[i] holds x = i + 1; dealer first
    double created_at_ms = 0.0;
    RecordState state = RecordState::Active;
};

struct HealthReport {
    std::size_t reachable_holders = 0;
    long margin = 0;  // reachable_holders - k; negative means unrecoverable now
    std::size_t intact_checksums = 0;
};

struct TraceEvent {
    double t_ms = 0.0;
    std::string kind;
    NodeId src;
    NodeId dst;
    std::string detail;

    friend bool operator==(const TraceEvent&, const TraceEvent&) = default;
};

struct StoreResult {
    SecretId id;
    SelectionResult selection;  // scores for the non-dealer candidates
};

struct RepairResult {
    SecretRecord record;
    SelectionResult selection;
};

struct StrategyConfig {
    enum class Kind { TopN, ThresholdRandom };
    Kind kind = Kind::TopN;
    double threshold = 0.0;
};

struct ClusterConfig {
    std::uint64_t seed = 0;
    SharePolicy policy{3, 5};
    ScoreWeights weights;
    StrategyConfig strategy;
    double loss_probability = 0.0;   // per message leg, [0, 1)
    double retry_timeout_ms = 50.0;  // wait before the single retry
    std::uint32_t chunk_size = 4096;
    std::vector<NodeConfig> nodes;
};

/// Deterministic single-threaded simulation of one edge cluster. All
/// randomness (selection sampling, split coefficients, secret ids, message
/// loss) comes from one seeded stream, so identical configs and call
/// sequences replay byte-identical traces.
class Cluster {
   public:
    explicit Cluster(ClusterConfig config);

    /// Fig.-4 store flow: chunk, split, keep one share at the dealer, send
    /// n-1 timed share messages, record the sharing in the registry, erase
    /// the plaintext. The dealer is force-included as the first holder.
    StoreResult store(const NodeId& dealer, std::span<const std::uint8_t> data,
                      std::optional<SharePolicy> policy_override = std::nullopt);

    /// Requests the local share plus k-1+over_request remote shares (capped
    /// at n-1) from the reachable holders with the lowest link latency, then
    /// reconstructs. Lost messages are retried once after retry_timeout_ms;
    /// checksum failures are skipped. No second selection round happens: the
    /// over-request is the insurance against unresponsive holders.
    Bytes retrieve(const NodeId& dealer, const SecretId& id, std::size_t over_request = 0);

    void inject_fault(const NodeId& node, FaultAction action);

    /// Snapshot health of one secret; mutates nothing.
    HealthReport audit(const SecretId& id) const;

    /// Retrieve, retire the old sharing, re-split with a fresh polynomial on
    /// a newly selected holder set, erase the plaintext. Keeps the secret id.
    RepairResult repair(const NodeId& dealer, const SecretId& id);

    /// Delivers every queued message with delivery time <= t_ms in
    /// (time, insertion) order and advances the clock. Returns the trace
    /// events generated by this call.
    std::vector<TraceEvent> run_until(double t_ms);

    /// Delivers everything still queued, however far in the future.
    std::vector<TraceEvent> drain();

    /// Flips one byte of a stored share payload (or its checksum when the
    /// payload is empty) so audits and retrievals see a corrupt share.
    void tamper_payload(const NodeId& node, const SecretId& id, std::uint32_t chunk);

    double now_ms() const { return clock_ms_; }
    const RegistryStats& registry() const { return registry_; }
    const SecretRecord& record(const SecretId& id) const;
    const MehNode& node(const NodeId& id) const;
    const std::map<NodeId, MehNode>& nodes() const { return nodes_; }
    const std::vector<TraceEvent>& trace() const { return trace_; }
    const ClusterConfig& config() const { return config_; }

    /// Scoring snapshots for every node, id order.
    std::vector<NodeProfile> candidate_profiles() const;

   private:
    struct QueuedShare {
        NodeId src;
        NodeId dst;
        Share share;
    };

    MehNode& node_mut(const NodeId& id);
    SecretRecord& record_mut(const SecretId& id);
    double link_latency(const NodeId& a, const NodeId& b) const;
    bool roll_loss();
    SelectionStrategy runtime_strategy();
    SelectionResult select_others(const NodeId& dealer, std::size_t count,
                                  std::uint64_t share_size);
    void place_shares(const SecretRecord& rec, std::span<const Bytes> chunks);
    void check_dealer(const MehNode& dealer, std::uint64_t incoming_bytes) const;
    TraceEvent& push_trace(std::string kind, NodeId src, NodeId dst, std::string detail);

    ClusterConfig config_;
    RandomSource rng_;
    double clock_ms_ = 0.0;
    std::uint64_t next_seq_ = 0;
    std::map<NodeId, MehNode> nodes_;
    std::map<SecretId, SecretRecord> records_;
    RegistryStats registry_;
    std::map<std::pair<double, std::uint64_t>, QueuedShare> queue_;
    std::vector<TraceEvent> trace_;
};

}  // namespace edgeshard
