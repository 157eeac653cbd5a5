#include "edgeshard/cluster.hpp"

#include <algorithm>
#include <set>

#include "edgeshard/errors.hpp"

namespace edgeshard {

const char* fault_action_name(FaultAction action) {
    switch (action) {
        case FaultAction::Crash: return "crash";
        case FaultAction::Unreach: return "unreach";
        case FaultAction::Corrupt: return "corrupt";
        case FaultAction::Restore: return "restore";
        case FaultAction::FillCapacity: return "fill_capacity";
    }
    return "?";
}

std::uint64_t MehNode::free_capacity() const {
    if (capacity_filled) return 0;
    return config.capacity_bytes > used_bytes ? config.capacity_bytes - used_bytes : 0;
}

NodeProfile MehNode::profile() const {
    NodeProfile p;
    p.id = config.id;
    p.attack_risk = config.attack_risk;
    p.corrupt = corrupt;
    p.reachable = reachable;
    p.free_capacity = free_capacity();
    p.capability_raw = config.capability_raw;
    p.link_latency_ms = config.link_latency_ms;
    return p;
}

const Share* MehNode::find_share(const SecretId& id, std::uint32_t chunk) const {
    const auto it = stored.find({id, chunk});
    return it == stored.end() ? nullptr : &it->second;
}

void MehNode::put_share(Share share) {
    const auto key = std::make_pair(share.secret_id, share.chunk_index);
    const auto it = stored.find(key);
    if (it != stored.end()) {
        used_bytes -= it->second.payload.size();
        used_bytes += share.payload.size();
        it->second = std::move(share);
    } else {
        used_bytes += share.payload.size();
        stored.emplace(key, std::move(share));
    }
}

void MehNode::drop_secret(const SecretId& id) {
    for (auto it = stored.begin(); it != stored.end();) {
        if (it->first.first == id) {
            used_bytes -= it->second.payload.size();
            it = stored.erase(it);
        } else {
            ++it;
        }
    }
}

Cluster::Cluster(ClusterConfig config) : config_(std::move(config)), rng_(config_.seed) {
    config_.policy.ensure_valid();
    if (!config_.weights.valid())
        throw SchemaError("weights", "all weights must be >= 0 with w_st or w_sc positive");
    if (config_.loss_probability < 0.0 || config_.loss_probability >= 1.0)
        throw SchemaError("loss", "loss probability must lie in [0, 1)");
    if (config_.retry_timeout_ms <= 0.0)
        throw SchemaError("retry_timeout_ms", "retry timeout must be positive");
    if (config_.chunk_size == 0) throw SchemaError("chunk_size", "chunk size must be >= 1");
    if (config_.nodes.empty()) throw SchemaError("nodes", "at least one node is required");
    for (const auto& nc : config_.nodes) {
        if (nc.id.empty()) throw SchemaError("nodes", "node id must be non-empty");
        MehNode node;
        node.config = nc;
        if (!nodes_.emplace(nc.id, std::move(node)).second)
            throw SchemaError("nodes", "duplicate node id " + nc.id);
    }
}

MehNode& Cluster::node_mut(const NodeId& id) {
    const auto it = nodes_.find(id);
    if (it == nodes_.end()) throw UnknownNode(id);
    return it->second;
}

const MehNode& Cluster::node(const NodeId& id) const {
    const auto it = nodes_.find(id);
    if (it == nodes_.end()) throw UnknownNode(id);
    return it->second;
}

SecretRecord& Cluster::record_mut(const SecretId& id) {
    const auto it = records_.find(id);
    if (it == records_.end() || it->second.state != RecordState::Active)
        throw UnknownSecret(id.hex());
    return it->second;
}

const SecretRecord& Cluster::record(const SecretId& id) const {
    const auto it = records_.find(id);
    if (it == records_.end()) throw UnknownSecret(id.hex());
    return it->second;
}

double Cluster::link_latency(const NodeId& a, const NodeId& b) const {
    return node(a).config.link_latency_ms + node(b).config.link_latency_ms;
}

bool Cluster::roll_loss() {
    if (config_.loss_probability <= 0.0) return false;
    return rng_.next_double() < config_.loss_probability;
}

SelectionStrategy Cluster::runtime_strategy() {
    if (config_.strategy.kind == StrategyConfig::Kind::TopN) return TopN{};
    return ThresholdRandom{config_.strategy.threshold, &rng_};
}

std::vector<NodeProfile> Cluster::candidate_profiles() const {
    std::vector<NodeProfile> out;
    out.reserve(nodes_.size());
    for (const auto& [id, node] : nodes_) out.push_back(node.profile());
    return out;
}

SelectionResult Cluster::select_others(const NodeId& dealer, std::size_t count,
                                       std::uint64_t share_size) {
    std::vector<NodeProfile> candidates;
    for (const auto& [id, node] : nodes_) {
        if (id != dealer) candidates.push_back(node.profile());
    }
    const auto strategy = runtime_strategy();
    return select_nodes(candidates, count, strategy, registry_, config_.weights, share_size);
}

TraceEvent& Cluster::push_trace(std::string kind, NodeId src, NodeId dst, std::string detail) {
    trace_.push_back(
        {clock_ms_, std::move(kind), std::move(src), std::move(dst), std::move(detail)});
    return trace_.back();
}

void Cluster::check_dealer(const MehNode& dealer, std::uint64_t incoming_bytes) const {
    const auto& id = dealer.config.id;
    if (!dealer.reachable) throw DealerUnavailable("dealer " + id + " is unreachable");
    if (dealer.corrupt) throw DealerUnavailable("dealer " + id + " is corrupt");
    if (!dealer.config.dealer_capable)
        throw DealerUnavailable("node " + id + " cannot act as a dealer");
    if (dealer.free_capacity() < incoming_bytes)
        throw DealerUnavailable("dealer " + id + " has no room for its local share");
}

void Cluster::place_shares(const SecretRecord& rec, std::span<const Bytes> chunks) {
    auto& dealer = node_mut(rec.dealer);
    for (std::uint32_t ci = 0; ci < chunks.size(); ++ci) {
        auto shares = split_chunk(rec.id, ci, config_.chunk_size, chunks[ci], rec.policy, rng_);
        for (std::size_t i = 0; i < rec.assigned.size(); ++i) {
            const NodeId& holder = rec.assigned[i];
            if (holder == rec.dealer) {
                dealer.put_share(std::move(shares[i]));
                continue;
            }
            if (roll_loss()) {
                push_trace("share_lost", rec.dealer, holder,
                           "chunk " + std::to_string(ci) + " lost in transit");
                continue;
            }
            const double at = clock_ms_ + link_latency(rec.dealer, holder);
            queue_.emplace(std::make_pair(at, next_seq_++),
                           QueuedShare{rec.dealer, holder, std::move(shares[i])});
            push_trace("share_sent", rec.dealer, holder,
                       "chunk " + std::to_string(ci) + " eta " + std::to_string(at));
        }
    }
}

StoreResult Cluster::store(const NodeId& dealer_id, std::span<const std::uint8_t> data,
                           std::optional<SharePolicy> policy_override) {
    auto& dealer = node_mut(dealer_id);
    const SharePolicy policy = policy_override.value_or(config_.policy);
    policy.ensure_valid();
    check_dealer(dealer, data.size());

    dealer.staged_plaintext = Bytes(data.begin(), data.end());
    try {
        const auto layout = ChunkLayout::for_size(data.size(), config_.chunk_size);
        const auto chunks = chunk_data(data, config_.chunk_size);
        auto selection = select_others(dealer_id, std::size_t(policy.n) - 1, data.size());

        SecretRecord rec;
        rng_.fill(rec.id.bytes);
        rec.policy = policy;
        rec.layout = layout;
        rec.dealer = dealer_id;
        rec.assigned.push_back(dealer_id);
        rec.assigned.insert(rec.assigned.end(), selection.chosen.begin(),
                            selection.chosen.end());
        rec.created_at_ms = clock_ms_;

        place_shares(rec, chunks);
        registry_.register_sharing(rec.assigned);
        records_[rec.id] = rec;

        dealer.staged_plaintext.reset();  // the paper's post-sharing deletion
        push_trace("store", dealer_id, "",
                   rec.id.hex() + " " + std::to_string(data.size()) + " bytes in " +
                       std::to_string(layout.chunk_count) + " chunks");
        return {rec.id, std::move(selection)};
    } catch (...) {
        dealer.staged_plaintext.reset();
        throw;
    }
}

Bytes Cluster::retrieve(const NodeId& dealer_id, const SecretId& id, std::size_t over_request) {
    auto& dealer = node_mut(dealer_id);
    auto& rec = record_mut(id);
    if (!dealer.reachable) throw DealerUnavailable("dealer " + dealer_id + " is unreachable");
    if (std::find(rec.assigned.begin(), rec.assigned.end(), dealer_id) == rec.assigned.end())
        throw DealerUnavailable("node " + dealer_id + " is not a holder of " + id.hex());

    std::size_t reachable_holders = 0;
    for (const auto& h : rec.assigned) {
        if (node(h).reachable) ++reachable_holders;
    }
    if (reachable_holders < rec.policy.k)
        throw InsufficientShares(reachable_holders, rec.policy.k);

    if (rec.layout.chunk_count == 0) {
        push_trace("retrieve", dealer_id, "", id.hex() + " empty secret");
        return {};
    }

    // Local shares first.
    std::vector<std::vector<const Share*>> per_chunk(rec.layout.chunk_count);
    bool local_complete = true;
    for (std::uint32_t ci = 0; ci < rec.layout.chunk_count; ++ci) {
        if (const Share* s = dealer.find_share(id, ci)) {
            per_chunk[ci].push_back(s);
        } else {
            local_complete = false;
        }
    }

    // Remote holders, nearest link first.
    std::vector<NodeId> remotes;
    for (const auto& h : rec.assigned) {
        if (h != dealer_id && node(h).reachable) remotes.push_back(h);
    }
    std::sort(remotes.begin(), remotes.end(), [&](const NodeId& a, const NodeId& b) {
        const double la = link_latency(dealer_id, a);
        const double lb = link_latency(dealer_id, b);
        if (la != lb) return la < lb;
        return a < b;
    });
    const std::size_t base = rec.policy.k - (local_complete ? 1 : 0);
    const std::size_t want =
        std::min<std::size_t>(base + over_request, std::size_t(rec.policy.n) - 1);
    if (remotes.size() > want) remotes.resize(want);

    // One request/response exchange per holder, one retry after the timeout.
    std::vector<std::vector<Share>> received;
    double completion = clock_ms_;
    for (const auto& h : remotes) {
        const double rtt = 2.0 * link_latency(dealer_id, h);
        double arrival = -1.0;
        for (int attempt = 0; attempt < 2 && arrival < 0.0; ++attempt) {
            const double sent = clock_ms_ + attempt * config_.retry_timeout_ms;
            if (attempt == 1) push_trace("retry", dealer_id, h, "second request");
            if (roll_loss()) {
                push_trace("request_lost", dealer_id, h, "");
                continue;
            }
            if (roll_loss()) {
                push_trace("response_lost", h, dealer_id, "");
                continue;
            }
            arrival = sent + rtt;
        }
        if (arrival < 0.0) {
            completion = std::max(completion, clock_ms_ + 2.0 * config_.retry_timeout_ms);
            push_trace("holder_unresponsive", h, dealer_id, "gave up after one retry");
            continue;
        }
        completion = std::max(completion, arrival);
        std::vector<Share> bundle;
        for (std::uint32_t ci = 0; ci < rec.layout.chunk_count; ++ci) {
            if (const Share* s = node(h).find_share(id, ci)) bundle.push_back(*s);
        }
        push_trace("response", h, dealer_id,
                   std::to_string(bundle.size()) + " shares at t=" + std::to_string(arrival));
        received.push_back(std::move(bundle));
    }
    clock_ms_ = std::max(clock_ms_, completion);

    for (const auto& bundle : received) {
        for (const auto& share : bundle) {
            if (share.chunk_index < rec.layout.chunk_count)
                per_chunk[share.chunk_index].push_back(&share);
        }
    }

    Bytes out;
    out.reserve(rec.layout.total_length);
    for (std::uint32_t ci = 0; ci < rec.layout.chunk_count; ++ci) {
        std::vector<const Share*> valid;
        for (const Share* s : per_chunk[ci]) {
            if (s->checksum_ok()) {
                valid.push_back(s);
            } else {
                push_trace("checksum_failed", "", dealer_id,
                           "chunk " + std::to_string(ci) + " x=" + std::to_string(s->x));
            }
        }
        if (valid.size() < rec.policy.k) throw InsufficientShares(valid.size(), rec.policy.k);
        const Bytes chunk = reconstruct(std::span<const Share* const>(valid), rec.policy);
        out.insert(out.end(), chunk.begin(), chunk.end());
    }
    if (out.size() != rec.layout.total_length)
        throw CorruptShare("reassembled length disagrees with the layout");
    push_trace("retrieve", dealer_id, "", id.hex() + " ok");
    return out;
}

void Cluster::inject_fault(const NodeId& node_id, FaultAction action) {
    auto& n = node_mut(node_id);
    switch (action) {
        case FaultAction::Crash:
            n.reachable = false;
            for (auto it = queue_.begin(); it != queue_.end();) {
                if (it->second.src == node_id || it->second.dst == node_id) {
                    push_trace("share_dropped", it->second.src, it->second.dst,
                               "in-flight message lost to crash of " + node_id);
                    it = queue_.erase(it);
                } else {
                    ++it;
                }
            }
            break;
        case FaultAction::Unreach:
            n.reachable = false;
            break;
        case FaultAction::Corrupt:
            n.corrupt = true;
            break;
        case FaultAction::Restore:
            n.reachable = true;
            n.corrupt = false;
            n.capacity_filled = false;
            break;
        case FaultAction::FillCapacity:
            n.capacity_filled = true;
            break;
    }
    push_trace("fault", "", node_id, fault_action_name(action));
}

HealthReport Cluster::audit(const SecretId& id) const {
    const auto& rec = record(id);
    HealthReport report;
    for (const auto& h : rec.assigned) {
        const auto& holder = node(h);
        if (holder.reachable) ++report.reachable_holders;
        bool intact = true;
        for (std::uint32_t ci = 0; ci < rec.layout.chunk_count; ++ci) {
            const Share* s = holder.find_share(id, ci);
            if (s == nullptr || !s->checksum_ok()) {
                intact = false;
                break;
            }
        }
        if (intact) ++report.intact_checksums;
    }
    report.margin = static_cast<long>(report.reachable_holders) - rec.policy.k;
    return report;
}

RepairResult Cluster::repair(const NodeId& dealer_id, const SecretId& id) {
    auto& dealer = node_mut(dealer_id);
    auto& rec = record_mut(id);

    const auto health = audit(id);
    if (health.margin < 0) throw InsufficientShares(health.reachable_holders, rec.policy.k);

    const Bytes data = retrieve(dealer_id, id, 0);
    // The dealer's own old shares are about to be purged; credit them when
    // checking room for the fresh local shares.
    std::uint64_t dealer_old = 0;
    for (const auto& [key, share] : dealer.stored) {
        if (key.first == id) dealer_old += share.payload.size();
    }
    check_dealer(dealer, data.size() > dealer_old ? data.size() - dealer_old : 0);
    dealer.staged_plaintext = data;
    try {
        auto selection =
            select_others(dealer_id, std::size_t(rec.policy.n) - 1, data.size());

        // Old shares go away on every holder that can still hear us.
        for (const auto& h : rec.assigned) {
            auto& holder = node_mut(h);
            if (holder.reachable) {
                holder.drop_secret(id);
                push_trace("purge", dealer_id, h, "old shares of " + id.hex() + " deleted");
            }
        }
        registry_.retire_sharing(rec.assigned);

        rec.dealer = dealer_id;
        rec.assigned.clear();
        rec.assigned.push_back(dealer_id);
        rec.assigned.insert(rec.assigned.end(), selection.chosen.begin(),
                            selection.chosen.end());
        rec.created_at_ms = clock_ms_;

        const auto chunks = chunk_data(data, config_.chunk_size);
        place_shares(rec, chunks);
        registry_.register_sharing(rec.assigned);

        dealer.staged_plaintext.reset();
        push_trace("repair", dealer_id, "", id.hex() + " re-shared with a fresh polynomial");
        return {rec, std::move(selection)};
    } catch (...) {
        dealer.staged_plaintext.reset();
        throw;
    }
}

std::vector<TraceEvent> Cluster::run_until(double t_ms) {
    std::vector<TraceEvent> delivered;
    while (!queue_.empty() && queue_.begin()->first.first <= t_ms) {
        const auto it = queue_.begin();
        clock_ms_ = std::max(clock_ms_, it->first.first);
        QueuedShare msg = std::move(it->second);
        queue_.erase(it);

        auto& dst = node_mut(msg.dst);
        if (!dst.reachable) {
            delivered.push_back(push_trace("share_dropped", msg.src, msg.dst,
                                           "destination unreachable at delivery"));
            continue;
        }
        if (dst.free_capacity() < msg.share.payload.size()) {
            delivered.push_back(
                push_trace("share_dropped", msg.src, msg.dst, "destination storage full"));
            continue;
        }
        const auto chunk = msg.share.chunk_index;
        dst.put_share(std::move(msg.share));
        delivered.push_back(push_trace("share_delivered", msg.src, msg.dst,
                                       "chunk " + std::to_string(chunk)));
    }
    clock_ms_ = std::max(clock_ms_, t_ms);
    return delivered;
}

std::vector<TraceEvent> Cluster::drain() {
    if (queue_.empty()) return {};
    return run_until(queue_.rbegin()->first.first);
}

void Cluster::tamper_payload(const NodeId& node_id, const SecretId& id, std::uint32_t chunk) {
    auto& n = node_mut(node_id);
    const auto it = n.stored.find({id, chunk});
    if (it == n.stored.end())
        throw InvalidRecord("node " + node_id + " holds no share of " + id.hex() + " chunk " +
                            std::to_string(chunk));
    if (it->second.payload.empty()) {
        it->second.checksum ^= 1;
    } else {
        it->second.payload[0] ^= 0xFF;
    }
    push_trace("tamper", "", node_id, id.hex() + " chunk " + std::to_string(chunk));
}

}  // namespace edgeshard
