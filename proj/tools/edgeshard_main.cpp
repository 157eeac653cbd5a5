// edgeshard - threshold-secret-sharing storage engine for simulated edge
// clusters. Subcommands: share, reconstruct, simulate, bench, scaling.
//
// Exit codes: 0 success, 1 I/O, 2 usage/schema, 3 inconsistent shares,
// 4 insufficient shares.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "edgeshard/bench.hpp"
#include "edgeshard/errors.hpp"
#include "edgeshard/scenario.hpp"
#include "edgeshard/share_io.hpp"

namespace fs = std::filesystem;
using namespace edgeshard;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInconsistent = 3;
constexpr int kExitInsufficient = 4;

std::uint64_t entropy_seed() {
    std::random_device rd;
    const auto now = std::chrono::steady_clock::now().time_since_epoch().count();
    return (std::uint64_t(rd()) << 32) ^ std::uint64_t(rd()) ^ std::uint64_t(now);
}

Bytes read_file_or_throw(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    return Bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

void write_file_or_throw(const fs::path& path, std::span<const std::uint8_t> data) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot create " + path.string());
    out.write(reinterpret_cast<const char*>(data.data()),
              static_cast<std::streamsize>(data.size()));
    if (!out) throw Error("write failed for " + path.string());
}

void write_text_or_throw(const fs::path& path, const std::string& text) {
    write_file_or_throw(path, std::span<const std::uint8_t>(
                                  reinterpret_cast<const std::uint8_t*>(text.data()),
                                  text.size()));
}

int run_share(const std::string& input, unsigned k, unsigned n, const std::string& out_dir,
              std::uint64_t seed, bool seeded, unsigned long chunk_size) {
    if (k < 2 || k > n || n > 255) {
        std::cerr << "error: need 2 <= k <= n <= 255 (got k=" << k << " n=" << n << ")\n";
        return kExitUsage;
    }
    if (chunk_size == 0 || chunk_size > 0xFFFFFFFFull) {
        std::cerr << "error: --chunk-size must be in [1, 2^32)\n";
        return kExitUsage;
    }
    const Bytes data = read_file_or_throw(input);
    RandomSource rng(seeded ? seed : entropy_seed());
    const auto set = write_share_files(
        data, SharePolicy{std::uint8_t(k), std::uint8_t(n)},
        static_cast<std::uint32_t>(chunk_size), rng, out_dir);
    std::cout << set.secret_id.hex() << "\n";
    return kExitOk;
}

int run_reconstruct(const std::vector<std::string>& files, const std::string& out_path) {
    std::vector<fs::path> paths(files.begin(), files.end());
    std::vector<std::string> warnings;
    SecretId id;
    const Bytes data = reconstruct_from_files(paths, &warnings, &id);
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
    write_file_or_throw(out_path, data);
    std::cout << "reconstructed " << data.size() << " bytes of " << id.hex() << " -> "
              << out_path << "\n";
    return kExitOk;
}

int run_simulate(const std::string& scenario_path, const std::string& json_path) {
    const auto config = load_scenario(scenario_path);
    const auto report = run_scenario(config);
    std::cout << report.text;
    if (!json_path.empty()) {
        write_text_or_throw(json_path, report.json);
        std::cout << "\nmachine-readable report: " << json_path << "\n";
    }
    return kExitOk;
}

int run_bench(BenchConfig config, const std::string& json_path,
              const std::string& measurements_path) {
    const auto rows = run_bench(config);
    std::cout << bench_table(config, rows);
    if (!json_path.empty()) write_text_or_throw(json_path, bench_summary_json(config, rows));
    if (!measurements_path.empty())
        write_text_or_throw(measurements_path, bench_measurements_json(config, rows));
    return kExitOk;
}

int run_scaling(ScalingConfig config, const std::string& json_path) {
    const auto rows = run_scaling(config);
    std::cout << scaling_table(config, rows);
    if (!json_path.empty())
        write_text_or_throw(json_path, scaling_summary_json(config, rows));
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"edgeshard - threshold-secret-sharing storage for simulated edge clusters"};
    app.require_subcommand(1);

    // share
    auto* share_cmd = app.add_subcommand("share", "split a file into n share files");
    std::string share_input, share_out = ".";
    unsigned share_k = 0, share_n = 0;
    std::uint64_t share_seed = 0;
    unsigned long share_chunk = 4096;
    share_cmd->add_option("input", share_input, "file to share")->required();
    share_cmd->add_option("--k", share_k, "reconstruction threshold")->required();
    share_cmd->add_option("--n", share_n, "number of shares")->required();
    share_cmd->add_option("--out", share_out, "output directory (default .)");
    auto* seed_opt = share_cmd->add_option("--seed", share_seed, "deterministic RNG seed");
    share_cmd->add_option("--chunk-size", share_chunk, "chunk size in bytes (default 4096)");

    // reconstruct
    auto* rec_cmd = app.add_subcommand("reconstruct", "rebuild a file from share files");
    std::vector<std::string> rec_files;
    std::string rec_out;
    rec_cmd->add_option("files", rec_files, "share files (need at least k)")->required();
    rec_cmd->add_option("--out", rec_out, "output file path")->required();

    // simulate
    auto* sim_cmd = app.add_subcommand("simulate", "run a cluster scenario");
    std::string sim_scenario, sim_json;
    sim_cmd->add_option("--scenario", sim_scenario, "scenario file (JSON)")->required();
    sim_cmd->add_option("--json", sim_json, "write the machine-readable report here");

    // bench
    auto* bench_cmd = app.add_subcommand("bench", "sharing/storage timing harness");
    BenchConfig bench_cfg;
    unsigned bench_k = 3, bench_n = 5;
    std::string bench_json, bench_measurements, bench_workdir;
    bench_cmd->add_option("--sizes", bench_cfg.sizes, "payload sizes in bytes");
    bench_cmd->add_option("--k", bench_k, "threshold (default 3)");
    bench_cmd->add_option("--n", bench_n, "share count (default 5)");
    bench_cmd->add_option("--trials", bench_cfg.trials, "trials per size (default 100)");
    bench_cmd->add_option("--seed", bench_cfg.seed, "payload RNG seed (default 1)");
    bench_cmd->add_option("--latency", bench_cfg.latency_ms,
                          "one-way share delivery latency in ms (default 10)");
    bench_cmd->add_option("--json", bench_json, "write the deterministic summary here");
    bench_cmd->add_option("--measurements", bench_measurements,
                          "write full wall-clock statistics here");
    bench_cmd->add_option("--workdir", bench_workdir, "scratch directory for file I/O");

    // scaling
    auto* scale_cmd = app.add_subcommand("scaling", "split/reconstruct time versus n");
    ScalingConfig scale_cfg;
    std::string scale_json;
    scale_cmd->add_option("--ns", scale_cfg.ns, "share counts to test");
    scale_cmd->add_option("--size", scale_cfg.payload_size, "payload bytes (default 1024)");
    scale_cmd->add_option("--trials", scale_cfg.trials, "trials per n (default 30)");
    scale_cmd->add_option("--seed", scale_cfg.seed, "payload RNG seed (default 1)");
    scale_cmd->add_option("--json", scale_json, "write the deterministic summary here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (share_cmd->parsed()) {
            return run_share(share_input, share_k, share_n, share_out, share_seed,
                             seed_opt->count() > 0, share_chunk);
        }
        if (rec_cmd->parsed()) return run_reconstruct(rec_files, rec_out);
        if (sim_cmd->parsed()) return run_simulate(sim_scenario, sim_json);
        if (bench_cmd->parsed()) {
            if (bench_k < 2 || bench_k > bench_n || bench_n > 255) {
                std::cerr << "error: need 2 <= k <= n <= 255\n";
                return kExitUsage;
            }
            if (bench_cfg.trials < 1) {
                std::cerr << "error: --trials must be >= 1\n";
                return kExitUsage;
            }
            bench_cfg.policy = SharePolicy{std::uint8_t(bench_k), std::uint8_t(bench_n)};
            if (!bench_workdir.empty()) bench_cfg.workdir = bench_workdir;
            return run_bench(bench_cfg, bench_json, bench_measurements);
        }
        if (scale_cmd->parsed()) return run_scaling(scale_cfg, scale_json);
    } catch (const SchemaError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const InvalidPolicy& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const InvalidChunkSize& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const InconsistentShares& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInconsistent;
    } catch (const InsufficientShares& e) {
        std::cerr << "error: " << e.what() << " (provided " << e.have << ", required "
                  << e.need << ")\n";
        return kExitInsufficient;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitUsage;
}
