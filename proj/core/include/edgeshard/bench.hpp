#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "edgeshard/shamir.hpp"

namespace edgeshard {

struct Stat {
    double mean = 0.0;
    double stddev = 0.0;
};

/// Timing harness mirroring the structure of the storage experiment:
///   t_local          store the payload locally, no sharing
///   t_split          run the split alone (no I/O), batched for resolution
///   t_share_local    split + store all n share files locally
///   t_share_network  t_share_local plus the simulated network delivery time
/// Wall-clock values are hardware-specific; the simulated network time is the
/// configured one-way delivery latency and fully deterministic.
struct BenchConfig {
    std::vector<std::size_t> sizes{25, 32, 40, 64};
    SharePolicy policy{3, 5};
    int trials = 100;
    int warmup = 3;
    int split_reps = 32;           // inner batch per t_split sample
    double latency_ms = 10.0;      // one-way share delivery latency
    std::uint64_t seed = 1;
    std::filesystem::path workdir;  // scratch space for the file I/O legs
};

struct BenchRow {
    std::size_t payload_size = 0;
    int trials = 0;
    Stat t_local;          // seconds
    Stat t_split;          // seconds
    Stat t_share_local;    // seconds
    Stat t_share_network;  // seconds, composite of wall + virtual
    double virtual_network_s = 0.0;
    std::size_t bytes_per_share = 0;  // payload + fixed record overhead
};

std::vector<BenchRow> run_bench(const BenchConfig& config);

std::string bench_table(const BenchConfig& config, const std::vector<BenchRow>& rows);

/// Machine-readable summary. Deliberately holds only the deterministic
/// quantities (configuration, sizes, virtual network time, share geometry):
/// wall-clock means belong to the text table, where run-to-run variation is
/// expected.
std::string bench_summary_json(const BenchConfig& config, const std::vector<BenchRow>& rows);

/// Full wall-clock statistics for offline analysis; not stable across runs.
std::string bench_measurements_json(const BenchConfig& config,
                                    const std::vector<BenchRow>& rows);

struct ScalingConfig {
    std::vector<int> ns{2, 5, 10, 20};
    std::size_t payload_size = 1024;
    int trials = 30;
    int warmup = 3;
    std::uint64_t seed = 1;
};

struct ScalingRow {
    int n = 0;
    int k = 0;  // max(2, ceil(n / 2))
    Stat split_s;
    Stat reconstruct_s;  // from k shares
};

std::vector<ScalingRow> run_scaling(const ScalingConfig& config);
std::string scaling_table(const ScalingConfig& config, const std::vector<ScalingRow>& rows);
std::string scaling_summary_json(const ScalingConfig& config,
                                 const std::vector<ScalingRow>& rows);

}  // namespace edgeshard
