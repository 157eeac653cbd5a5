// End-to-end tests that exercise the built edgeshard binary. ctest provides
// EDGESHARD_BIN and EDGESHARD_SCENARIO_DIR in the environment.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "edgeshard/random.hpp"
#include "edgeshard/types.hpp"

namespace fs = std::filesystem;
using edgeshard::Bytes;
using edgeshard::RandomSource;

namespace {

std::string binary_path() {
    const char* bin = std::getenv("EDGESHARD_BIN");
    REQUIRE_MESSAGE(bin != nullptr, "EDGESHARD_BIN must point at the edgeshard binary");
    return bin;
}

fs::path scenario_dir() {
    const char* dir = std::getenv("EDGESHARD_SCENARIO_DIR");
    REQUIRE_MESSAGE(dir != nullptr, "EDGESHARD_SCENARIO_DIR must be set");
    return dir;
}

struct RunResult {
    int exit_code = -1;
    std::string output;  // stdout + stderr
};

RunResult run(const std::string& args) {
    static int counter = 0;
    const auto log = fs::temp_directory_path() /
                     ("edgeshard-cli-" + std::to_string(counter++) + ".log");
    const std::string cmd = binary_path() + " " + args + " > " + log.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    RunResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(log);
    result.output.assign((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
    fs::remove(log);
    return result;
}

fs::path fresh_dir(const char* name) {
    const auto dir = fs::temp_directory_path() / "edgeshard-cli" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

Bytes make_file(const fs::path& path, std::size_t size, std::uint64_t seed) {
    RandomSource rng(seed);
    Bytes data(size);
    rng.fill(data);
    std::ofstream out(path, std::ios::binary);
    out.write(reinterpret_cast<const char*>(data.data()),
              static_cast<std::streamsize>(size));
    return data;
}

Bytes read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    return Bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

std::string q(const fs::path& p) { return "\"" + p.string() + "\""; }

}  // namespace

TEST_CASE("share then reconstruct from any k files is byte-identical") {
    const auto dir = fresh_dir("roundtrip");
    const auto input = dir / "input.bin";
    const Bytes data = make_file(input, 100000, 5);

    const auto share = run("share " + q(input) + " --k 3 --n 5 --out " + q(dir / "shares") +
                           " --seed 11");
    REQUIRE(share.exit_code == 0);

    const auto s = [&](int x) { return q(dir / "shares" / ("share-00" + std::to_string(x) + ".esh")); };

    const auto rec = run("reconstruct " + s(1) + " " + s(3) + " " + s(5) + " --out " +
                         q(dir / "out.bin"));
    REQUIRE(rec.exit_code == 0);
    CHECK(read_file(dir / "out.bin") == data);

    // All five files also work (extras ignored).
    const auto rec_all = run("reconstruct " + s(1) + " " + s(2) + " " + s(3) + " " + s(4) +
                             " " + s(5) + " --out " + q(dir / "out2.bin"));
    REQUIRE(rec_all.exit_code == 0);
    CHECK(read_file(dir / "out2.bin") == data);
}

TEST_CASE("a 10 MiB file survives the round trip") {
    const auto dir = fresh_dir("big");
    const auto input = dir / "input.bin";
    const Bytes data = make_file(input, 10 << 20, 6);
    REQUIRE(run("share " + q(input) + " --k 2 --n 3 --out " + q(dir / "shares") + " --seed 1")
                .exit_code == 0);
    REQUIRE(run("reconstruct " + q(dir / "shares" / "share-001.esh") + " " +
                q(dir / "shares" / "share-003.esh") + " --out " + q(dir / "out.bin"))
                .exit_code == 0);
    CHECK(read_file(dir / "out.bin") == data);
}

TEST_CASE("exit codes: usage 2, inconsistent 3, insufficient 4") {
    const auto dir = fresh_dir("exitcodes");
    const auto input = dir / "input.bin";
    make_file(input, 300, 7);

    CHECK(run("share " + q(input) + " --k 1 --n 5 --out " + q(dir / "a")).exit_code == 2);
    CHECK(run("share " + q(input) + " --k 6 --n 5 --out " + q(dir / "a")).exit_code == 2);
    CHECK(run("share " + q(dir / "missing.bin") + " --k 2 --n 3 --out " + q(dir / "a"))
              .exit_code == 1);
    CHECK(run("bogus-subcommand").exit_code == 2);

    REQUIRE(run("share " + q(input) + " --k 3 --n 5 --out " + q(dir / "a") + " --seed 1")
                .exit_code == 0);
    REQUIRE(run("share " + q(input) + " --k 3 --n 5 --out " + q(dir / "b") + " --seed 2")
                .exit_code == 0);

    const auto too_few = run("reconstruct " + q(dir / "a" / "share-001.esh") + " " +
                             q(dir / "a" / "share-002.esh") + " --out " + q(dir / "o.bin"));
    CHECK(too_few.exit_code == 4);
    CHECK(too_few.output.find("required") != std::string::npos);

    const auto mixed = run("reconstruct " + q(dir / "a" / "share-001.esh") + " " +
                           q(dir / "a" / "share-002.esh") + " " +
                           q(dir / "b" / "share-003.esh") + " --out " + q(dir / "o.bin"));
    CHECK(mixed.exit_code == 3);
}

TEST_CASE("corrupt share files are named and skipped") {
    const auto dir = fresh_dir("crc");
    const auto input = dir / "input.bin";
    const Bytes data = make_file(input, 500, 8);
    REQUIRE(run("share " + q(input) + " --k 2 --n 4 --out " + q(dir / "s") + " --seed 3")
                .exit_code == 0);

    // Damage one file's payload.
    const auto victim = dir / "s" / "share-002.esh";
    Bytes bytes = read_file(victim);
    bytes[60] ^= 0xFF;
    std::ofstream out(victim, std::ios::binary | std::ios::trunc);
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    out.close();

    const auto rec = run("reconstruct " + q(dir / "s" / "share-001.esh") + " " + q(victim) +
                         " " + q(dir / "s" / "share-004.esh") + " --out " + q(dir / "o.bin"));
    REQUIRE(rec.exit_code == 0);
    CHECK(rec.output.find("share-002.esh") != std::string::npos);
    CHECK(read_file(dir / "o.bin") == data);
}

TEST_CASE("empty files share and reconstruct") {
    const auto dir = fresh_dir("empty");
    const auto input = dir / "input.bin";
    make_file(input, 0, 9);
    REQUIRE(run("share " + q(input) + " --k 2 --n 3 --out " + q(dir / "s") + " --seed 4")
                .exit_code == 0);
    REQUIRE(run("reconstruct " + q(dir / "s" / "share-001.esh") + " " +
                q(dir / "s" / "share-002.esh") + " --out " + q(dir / "o.bin"))
                .exit_code == 0);
    CHECK(fs::file_size(dir / "o.bin") == 0);
}

TEST_CASE("share files are byte-identical for a fixed seed") {
    const auto dir = fresh_dir("determinism");
    const auto input = dir / "input.bin";
    make_file(input, 2000, 10);
    REQUIRE(run("share " + q(input) + " --k 3 --n 4 --out " + q(dir / "r1") + " --seed 77")
                .exit_code == 0);
    REQUIRE(run("share " + q(input) + " --k 3 --n 4 --out " + q(dir / "r2") + " --seed 77")
                .exit_code == 0);
    for (int x = 1; x <= 4; ++x) {
        const auto name = "share-00" + std::to_string(x) + ".esh";
        CHECK(read_file(dir / "r1" / name) == read_file(dir / "r2" / name));
    }
}

TEST_CASE("simulate runs the bundled scenarios with the documented outcomes") {
    const auto dir = fresh_dir("simulate");

    const auto tolerance = run("simulate --scenario " + q(scenario_dir() / "tolerance.scn") +
                               " --json " + q(dir / "t1.json"));
    REQUIRE(tolerance.exit_code == 0);
    CHECK(tolerance.output.find("matches=true") != std::string::npos);

    const auto collapse = run("simulate --scenario " + q(scenario_dir() / "collapse.scn"));
    REQUIRE(collapse.exit_code == 0);
    CHECK(collapse.output.find("insufficient shares") != std::string::npos);

    // Determinism: identical machine-readable reports across executions.
    REQUIRE(run("simulate --scenario " + q(scenario_dir() / "tolerance.scn") + " --json " +
                q(dir / "t2.json"))
                .exit_code == 0);
    CHECK(read_file(dir / "t1.json") == read_file(dir / "t2.json"));

    // Schema violations exit 2 and name the field.
    const auto bad = dir / "bad.scn";
    std::ofstream(bad) << R"({"seed":1,"policy":{"k":2,"n":3},"nodes":[],"workload":[]})";
    const auto schema = run("simulate --scenario " + q(bad));
    CHECK(schema.exit_code == 2);
    CHECK(schema.output.find("nodes") != std::string::npos);
}

TEST_CASE("bench and scaling emit stable summaries for a fixed seed") {
    const auto dir = fresh_dir("bench");
    const std::string bench_args = "bench --trials 2 --sizes 25 64 --seed 5 --workdir " +
                                   q(dir / "w") + " --json ";
    REQUIRE(run(bench_args + q(dir / "b1.json")).exit_code == 0);
    REQUIRE(run(bench_args + q(dir / "b2.json")).exit_code == 0);
    CHECK(read_file(dir / "b1.json") == read_file(dir / "b2.json"));

    const auto scaling = run("scaling --ns 2 5 --trials 2 --size 64 --json " +
                             q(dir / "s1.json"));
    REQUIRE(scaling.exit_code == 0);
    CHECK(scaling.output.find("split(s)") != std::string::npos);
}
