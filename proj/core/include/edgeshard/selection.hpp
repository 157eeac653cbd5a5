#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "edgeshard/random.hpp"
#include "edgeshard/types.hpp"

namespace edgeshard {

/// Security and capability attributes of one edge node, as seen by the
/// selection algorithm. A snapshot: scoring never mutates it.
struct NodeProfile {
    NodeId id;
    double attack_risk = 1.0;  // (0,1]; clamped to [1e-6, 1] before inversion
    bool corrupt = false;
    bool reachable = true;
    std::uint64_t free_capacity = 0;  // bytes
    double capability_raw = 0.0;      // aggregate power/latency attributes, >= 0
    double link_latency_ms = 0.0;
};

struct ScoreWeights {
    double w_st = 1.0;      // trust term of the total score
    double w_sc = 1.0;      // capability term of the total score
    double w_st_att = 1.0;  // inverse-attack-risk term of the trust score
    double w_st_sh = 1.0;   // sharing term of the trust score
    double w_st_no = 1.0;   // active-share-count term of the sharing score
    double w_st_as = 1.0;   // co-occurrence term of the sharing score

    bool valid() const {
        return w_st >= 0 && w_sc >= 0 && w_st_att >= 0 && w_st_sh >= 0 && w_st_no >= 0 &&
               w_st_as >= 0 && (w_st > 0 || w_sc > 0);
    }
};

/// Orchestrator-side view of active shares: per-node counts and how often
/// node pairs appear together in one sharing's assigned set. Single writer;
/// readers take it as a const snapshot.
class RegistryStats {
   public:
    std::int64_t time_step = 0;

    int active_share_count(const NodeId& id) const;
    int co_occurrence(const NodeId& a, const NodeId& b) const;
    int max_co_occurrence(const NodeId& id) const;

    /// Counts one new sharing over the given assigned set.
    /// Throws InvalidRecord on duplicate node ids.
    void register_sharing(std::span<const NodeId> assigned);

    /// Reverses register_sharing. Throws InvalidRecord when the counters do
    /// not cover the record (it was never registered, or already retired).
    void retire_sharing(std::span<const NodeId> assigned);

    std::uint64_t total_active_shares() const;

    const std::map<NodeId, int>& counts() const { return counts_; }
    const std::map<std::pair<NodeId, NodeId>, int>& pairs() const { return pairs_; }

    friend bool operator==(const RegistryStats&, const RegistryStats&) = default;

   private:
    std::map<NodeId, int> counts_;
    std::map<std::pair<NodeId, NodeId>, int> pairs_;  // key ordered first < second
};

/// A score is either a finite value or the exclusion sentinel (the paper's
/// MIN, "in theory -infinity"): std::nullopt, which orders below every
/// engaged value.
using SelectionScore = std::optional<double>;

/// Min-max normalization of capability_raw over a candidate set. Degenerate
/// sets (one candidate, or all equal) map everything to 1.
struct CapabilityNorm {
    double lo = 0.0;
    double hi = 1.0;
    static CapabilityNorm from_candidates(std::span<const NodeProfile> candidates);
    double apply(double raw) const;
};

/// Capability score: excluded when unreachable or without room for a share
/// of share_size bytes, otherwise the normalized capability.
SelectionScore capability_score(const NodeProfile& profile, std::uint64_t share_size,
                                const CapabilityNorm& norm = {});

/// Load-balancing score: w_st_no / max(1, N) + w_st_as / (1 + max co-occurrence).
double sharing_score(const NodeId& id, const RegistryStats& stats, const ScoreWeights& weights);

/// Trust score: excluded when corrupt, otherwise
/// w_st_att / attack_risk + w_st_sh * sharing_score.
SelectionScore trust_score(const NodeProfile& profile, const RegistryStats& stats,
                           const ScoreWeights& weights);

/// Total selection score: w_st * trust + w_sc * capability, excluded when
/// either side is excluded.
SelectionScore total_score(const NodeProfile& profile, const RegistryStats& stats,
                           const ScoreWeights& weights, std::uint64_t share_size,
                           const CapabilityNorm& norm = {});

/// Pick the n highest finite scores, ties by ascending node id.
struct TopN {};

/// Uniform sample, without replacement, of the candidates whose finite score
/// is at least threshold. The rng is owned by the caller so repeated
/// selections advance one deterministic stream.
struct ThresholdRandom {
    double threshold = 0.0;
    RandomSource* rng = nullptr;
};

using SelectionStrategy = std::variant<TopN, ThresholdRandom>;

struct ScoredCandidate {
    NodeId id;
    SelectionScore score;
};

struct SelectionResult {
    std::vector<NodeId> chosen;            // length n
    std::vector<ScoredCandidate> scores;   // every candidate, input order
};

/// Selects n share holders. Excluded nodes can never appear in the result.
/// Throws InsufficientNodes (with the eligible count) when fewer than n
/// candidates qualify.
SelectionResult select_nodes(std::span<const NodeProfile> candidates, std::size_t n,
                             const SelectionStrategy& strategy, const RegistryStats& stats,
                             const ScoreWeights& weights, std::uint64_t share_size);

}  // namespace edgeshard
