#include "edgeshard/selection.hpp"

#include <algorithm>
#include <set>

#include "edgeshard/errors.hpp"

namespace edgeshard {
namespace {

constexpr double kMinAttackRisk = 1e-6;

std::pair<NodeId, NodeId> ordered_pair(const NodeId& a, const NodeId& b) {
    return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
}

}  // namespace

int RegistryStats::active_share_count(const NodeId& id) const {
    const auto it = counts_.find(id);
    return it == counts_.end() ? 0 : it->second;
}

int RegistryStats::co_occurrence(const NodeId& a, const NodeId& b) const {
    const auto it = pairs_.find(ordered_pair(a, b));
    return it == pairs_.end() ? 0 : it->second;
}

int RegistryStats::max_co_occurrence(const NodeId& id) const {
    int best = 0;
    for (const auto& [key, count] : pairs_) {
        if (key.first == id || key.second == id) best = std::max(best, count);
    }
    return best;
}

void RegistryStats::register_sharing(std::span<const NodeId> assigned) {
    const std::set<NodeId> unique(assigned.begin(), assigned.end());
    if (unique.size() != assigned.size())
        throw InvalidRecord("sharing record lists a node more than once");
    for (const auto& id : assigned) ++counts_[id];
    for (std::size_t i = 0; i < assigned.size(); ++i) {
        for (std::size_t j = i + 1; j < assigned.size(); ++j) {
            ++pairs_[ordered_pair(assigned[i], assigned[j])];
        }
    }
}

void RegistryStats::retire_sharing(std::span<const NodeId> assigned) {
    const std::set<NodeId> unique(assigned.begin(), assigned.end());
    if (unique.size() != assigned.size())
        throw InvalidRecord("sharing record lists a node more than once");
    // Validate everything before decrementing so a bad record changes nothing.
    for (const auto& id : assigned) {
        if (active_share_count(id) < 1)
            throw InvalidRecord("retiring a record never registered: node " + id);
    }
    for (std::size_t i = 0; i < assigned.size(); ++i) {
        for (std::size_t j = i + 1; j < assigned.size(); ++j) {
            if (co_occurrence(assigned[i], assigned[j]) < 1)
                throw InvalidRecord("retiring a record never registered: pair " + assigned[i] +
                                    "/" + assigned[j]);
        }
    }
    for (const auto& id : assigned) {
        auto it = counts_.find(id);
        if (--it->second == 0) counts_.erase(it);
    }
    for (std::size_t i = 0; i < assigned.size(); ++i) {
        for (std::size_t j = i + 1; j < assigned.size(); ++j) {
            auto it = pairs_.find(ordered_pair(assigned[i], assigned[j]));
            if (--it->second == 0) pairs_.erase(it);
        }
    }
}

std::uint64_t RegistryStats::total_active_shares() const {
    std::uint64_t total = 0;
    for (const auto& [id, count] : counts_) total += static_cast<std::uint64_t>(count);
    return total;
}

CapabilityNorm CapabilityNorm::from_candidates(std::span<const NodeProfile> candidates) {
    CapabilityNorm norm;
    if (candidates.empty()) return norm;
    double lo = candidates.front().capability_raw;
    double hi = lo;
    for (const auto& p : candidates) {
        lo = std::min(lo, p.capability_raw);
        hi = std::max(hi, p.capability_raw);
    }
    norm.lo = lo;
    norm.hi = hi;
    return norm;
}

double CapabilityNorm::apply(double raw) const {
    if (hi <= lo) return 1.0;
    return std::clamp((raw - lo) / (hi - lo), 0.0, 1.0);
}

SelectionScore capability_score(const NodeProfile& profile, std::uint64_t share_size,
                                const CapabilityNorm& norm) {
    if (!profile.reachable) return std::nullopt;
    if (profile.free_capacity < share_size) return std::nullopt;
    return norm.apply(profile.capability_raw);
}

double sharing_score(const NodeId& id, const RegistryStats& stats, const ScoreWeights& weights) {
    const int n_no = stats.active_share_count(id);
    const double count_term = 1.0 / std::max(1, n_no);
    const double as_term = 1.0 / (1.0 + stats.max_co_occurrence(id));
    return weights.w_st_no * count_term + weights.w_st_as * as_term;
}

SelectionScore trust_score(const NodeProfile& profile, const RegistryStats& stats,
                           const ScoreWeights& weights) {
    if (profile.corrupt) return std::nullopt;
    const double risk = std::clamp(profile.attack_risk, kMinAttackRisk, 1.0);
    return weights.w_st_att * (1.0 / risk) +
           weights.w_st_sh * sharing_score(profile.id, stats, weights);
}

SelectionScore total_score(const NodeProfile& profile, const RegistryStats& stats,
                           const ScoreWeights& weights, std::uint64_t share_size,
                           const CapabilityNorm& norm) {
    const auto trust = trust_score(profile, stats, weights);
    const auto capability = capability_score(profile, share_size, norm);
    if (!trust || !capability) return std::nullopt;
    return weights.w_st * *trust + weights.w_sc * *capability;
}

SelectionResult select_nodes(std::span<const NodeProfile> candidates, std::size_t n,
                             const SelectionStrategy& strategy, const RegistryStats& stats,
                             const ScoreWeights& weights, std::uint64_t share_size) {
    const auto norm = CapabilityNorm::from_candidates(candidates);

    SelectionResult result;
    result.scores.reserve(candidates.size());
    for (const auto& profile : candidates) {
        result.scores.push_back(
            {profile.id, total_score(profile, stats, weights, share_size, norm)});
    }

    if (std::holds_alternative<TopN>(strategy)) {
        std::vector<const ScoredCandidate*> eligible;
        for (const auto& sc : result.scores) {
            if (sc.score) eligible.push_back(&sc);
        }
        if (eligible.size() < n) throw InsufficientNodes(eligible.size(), n);
        std::sort(eligible.begin(), eligible.end(),
                  [](const ScoredCandidate* a, const ScoredCandidate* b) {
                      if (*a->score != *b->score) return *a->score > *b->score;
                      return a->id < b->id;
                  });
        for (std::size_t i = 0; i < n; ++i) result.chosen.push_back(eligible[i]->id);
        return result;
    }

    const auto& tr = std::get<ThresholdRandom>(strategy);
    if (tr.rng == nullptr)
        throw std::invalid_argument("ThresholdRandom strategy needs a RandomSource");
    std::vector<NodeId> pool;
    for (const auto& sc : result.scores) {
        if (sc.score && *sc.score >= tr.threshold) pool.push_back(sc.id);
    }
    if (pool.size() < n) throw InsufficientNodes(pool.size(), n);
    // Partial Fisher-Yates over the id-sorted pool keeps the draw sequence
    // independent of candidate input order.
    std::sort(pool.begin(), pool.end());
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = i + tr.rng->uniform(pool.size() - i);
        std::swap(pool[i], pool[j]);
        result.chosen.push_back(pool[i]);
    }
    return result;
}

}  // namespace edgeshard
