#include "edgeshard/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "edgeshard/errors.hpp"
#include "edgeshard/random.hpp"
#include "edgeshard/share_io.hpp"
#include "json.hpp"

namespace edgeshard {
namespace {

using Clock = std::chrono::steady_clock;
using nlohmann::ordered_json;

double seconds_since(const Clock::time_point& start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

Stat stat_of(const std::vector<double>& samples) {
    Stat s;
    if (samples.empty()) return s;
    double sum = 0.0;
    for (const double v : samples) sum += v;
    s.mean = sum / samples.size();
    double sq = 0.0;
    for (const double v : samples) sq += (v - s.mean) * (v - s.mean);
    s.stddev = samples.size() > 1 ? std::sqrt(sq / (samples.size() - 1)) : 0.0;
    return s;
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> data) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot create " + path.string());
    out.write(reinterpret_cast<const char*>(data.data()),
              static_cast<std::streamsize>(data.size()));
    out.flush();
    if (!out) throw Error("write failed for " + path.string());
}

}  // namespace

std::vector<BenchRow> run_bench(const BenchConfig& config) {
    if (config.trials < 1) throw Error("bench needs at least one trial");
    auto workdir = config.workdir;
    if (workdir.empty()) workdir = std::filesystem::temp_directory_path() / "edgeshard-bench";
    std::filesystem::create_directories(workdir);

    RandomSource rng(config.seed);
    const std::size_t n_sizes = config.sizes.size();
    std::vector<std::vector<double>> local_s(n_sizes), split_s(n_sizes),
        share_local_s(n_sizes);
    std::vector<Bytes> data(n_sizes);
    for (std::size_t i = 0; i < n_sizes; ++i) data[i].resize(config.sizes[i]);

    // Trials interleave across sizes so clock drift cannot masquerade as a
    // size effect.
    for (int trial = -config.warmup; trial < config.trials; ++trial) {
        for (std::size_t i = 0; i < n_sizes; ++i) {
            rng.fill(data[i]);
            const auto data_path =
                workdir / ("payload-" + std::to_string(config.sizes[i]) + ".bin");

            // T_LS analog: plain local store of the payload.
            const auto t0 = Clock::now();
            write_file(data_path, data[i]);
            const double t_local = seconds_since(t0);

            // Split alone, batched against timer resolution.
            const auto t1 = Clock::now();
            for (int rep = 0; rep < config.split_reps; ++rep) {
                volatile std::uint8_t sink = 0;
                const auto shares = split(data[i], config.policy, rng);
                sink = sink ^ (shares.back().payload.empty() ? shares.back().x
                                                             : shares.back().payload[0]);
                (void)sink;
            }
            const double t_split = seconds_since(t1) / config.split_reps;

            // T_SSS+LS analog: split plus storing the n share files.
            const auto t2 = Clock::now();
            const auto shares = split(data[i], config.policy, rng);
            for (const auto& share : shares) {
                const auto path = workdir / ("bench-x" + std::to_string(share.x) + ".esh");
                write_file(path, encode_share(share));
            }
            const double t_share_local = seconds_since(t2);

            if (trial >= 0) {
                local_s[i].push_back(t_local);
                split_s[i].push_back(t_split);
                share_local_s[i].push_back(t_share_local);
            }
        }
    }

    std::vector<BenchRow> rows;
    for (std::size_t i = 0; i < n_sizes; ++i) {
        BenchRow row;
        row.payload_size = config.sizes[i];
        row.trials = config.trials;
        row.virtual_network_s = config.latency_ms / 1000.0;
        row.bytes_per_share = config.sizes[i] + kShareOverhead;
        row.t_local = stat_of(local_s[i]);
        row.t_split = stat_of(split_s[i]);
        row.t_share_local = stat_of(share_local_s[i]);
        std::vector<double> network_s(share_local_s[i]);
        for (double& v : network_s) v += row.virtual_network_s;
        row.t_share_network = stat_of(network_s);
        rows.push_back(row);
    }
    return rows;
}

std::string bench_table(const BenchConfig& config, const std::vector<BenchRow>& rows) {
    std::string out;
    char line[192];
    std::snprintf(line, sizeof(line),
                  "sharing benchmark: k=%d n=%d trials=%d latency=%.3f ms seed=%llu\n",
                  int(config.policy.k), int(config.policy.n), config.trials,
                  config.latency_ms, static_cast<unsigned long long>(config.seed));
    out += line;
    out +=
        "  size(B)   t_local(s)      t_split(s)      t_share_local(s)  "
        "t_share_network(s)  virtual_net(s)\n";
    for (const auto& row : rows) {
        std::snprintf(line, sizeof(line),
                      "  %7zu   %.6f±%.6f  %.6f±%.6f  %.6f±%.6f  %.6f±%.6f    %.6f\n",
                      row.payload_size, row.t_local.mean, row.t_local.stddev,
                      row.t_split.mean, row.t_split.stddev, row.t_share_local.mean,
                      row.t_share_local.stddev, row.t_share_network.mean,
                      row.t_share_network.stddev, row.virtual_network_s);
        out += line;
    }
    return out;
}

std::string bench_summary_json(const BenchConfig& config, const std::vector<BenchRow>& rows) {
    ordered_json j;
    j["command"] = "bench";
    j["seed"] = config.seed;
    j["k"] = config.policy.k;
    j["n"] = config.policy.n;
    j["trials"] = config.trials;
    j["latency_ms"] = config.latency_ms;
    ordered_json jrows = ordered_json::array();
    for (const auto& row : rows) {
        ordered_json r;
        r["payload_size"] = row.payload_size;
        r["trials"] = row.trials;
        r["virtual_network_s"] = row.virtual_network_s;
        r["share_files"] = config.policy.n;
        r["bytes_per_share"] = row.bytes_per_share;
        r["total_stored_payload"] = row.payload_size * config.policy.n;
        jrows.push_back(std::move(r));
    }
    j["rows"] = std::move(jrows);
    return j.dump(2) + "\n";
}

std::string bench_measurements_json(const BenchConfig& config,
                                    const std::vector<BenchRow>& rows) {
    ordered_json j;
    j["command"] = "bench";
    j["seed"] = config.seed;
    j["note"] = "wall-clock statistics; expect run-to-run variation";
    ordered_json jrows = ordered_json::array();
    for (const auto& row : rows) {
        ordered_json r;
        r["payload_size"] = row.payload_size;
        r["t_local"] = {{"mean_s", row.t_local.mean}, {"stddev_s", row.t_local.stddev}};
        r["t_split"] = {{"mean_s", row.t_split.mean}, {"stddev_s", row.t_split.stddev}};
        r["t_share_local"] = {{"mean_s", row.t_share_local.mean},
                              {"stddev_s", row.t_share_local.stddev}};
        r["t_share_network"] = {{"mean_s", row.t_share_network.mean},
                                {"stddev_s", row.t_share_network.stddev}};
        jrows.push_back(std::move(r));
    }
    j["rows"] = std::move(jrows);
    return j.dump(2) + "\n";
}

std::vector<ScalingRow> run_scaling(const ScalingConfig& config) {
    if (config.trials < 1) throw Error("scaling needs at least one trial");
    RandomSource rng(config.seed);
    std::vector<ScalingRow> rows;
    for (const int n : config.ns) {
        if (n < 2 || n > 255) throw Error("scaling n out of range [2, 255]");
        ScalingRow row;
        row.n = n;
        row.k = std::max(2, (n + 1) / 2);  // ceil(n/2), floored at the policy bound
        const SharePolicy policy{static_cast<std::uint8_t>(row.k),
                                 static_cast<std::uint8_t>(n)};

        std::vector<double> split_s, rec_s;
        Bytes data(config.payload_size);
        for (int trial = -config.warmup; trial < config.trials; ++trial) {
            rng.fill(data);
            const auto t0 = Clock::now();
            const auto shares = split(data, policy, rng);
            const double ts = seconds_since(t0);

            const std::span<const Share> first_k(shares.data(), policy.k);
            const auto t1 = Clock::now();
            const auto back = reconstruct(first_k, policy);
            const double tr = seconds_since(t1);
            if (back != data) throw Error("scaling round trip failed");

            if (trial >= 0) {
                split_s.push_back(ts);
                rec_s.push_back(tr);
            }
        }
        row.split_s = stat_of(split_s);
        row.reconstruct_s = stat_of(rec_s);
        rows.push_back(row);
    }
    return rows;
}

std::string scaling_table(const ScalingConfig& config, const std::vector<ScalingRow>& rows) {
    std::string out;
    char line[160];
    std::snprintf(line, sizeof(line),
                  "scaling: payload=%zu B, k=ceil(n/2), trials=%d, seed=%llu\n",
                  config.payload_size, config.trials,
                  static_cast<unsigned long long>(config.seed));
    out += line;
    out += "    n    k   split(s)            reconstruct(s)\n";
    for (const auto& row : rows) {
        std::snprintf(line, sizeof(line), "  %3d  %3d   %.6f±%.6f   %.6f±%.6f\n", row.n,
                      row.k, row.split_s.mean, row.split_s.stddev, row.reconstruct_s.mean,
                      row.reconstruct_s.stddev);
        out += line;
    }
    return out;
}

std::string scaling_summary_json(const ScalingConfig& config,
                                 const std::vector<ScalingRow>& rows) {
    ordered_json j;
    j["command"] = "scaling";
    j["seed"] = config.seed;
    j["payload_size"] = config.payload_size;
    j["trials"] = config.trials;
    ordered_json jrows = ordered_json::array();
    for (const auto& row : rows) {
        ordered_json r;
        r["n"] = row.n;
        r["k"] = row.k;
        jrows.push_back(std::move(r));
    }
    j["rows"] = std::move(jrows);
    return j.dump(2) + "\n";
}

}  // namespace edgeshard
