#include <benchmark/benchmark.h>

#include <vector>

#include "edgeshard/crc32.hpp"
#include "edgeshard/gf256.hpp"
#include "edgeshard/random.hpp"
#include "edgeshard/shamir.hpp"

using namespace edgeshard;

namespace {

Bytes random_bytes(std::size_t size, std::uint64_t seed) {
    RandomSource rng(seed);
    Bytes data(size);
    rng.fill(data);
    return data;
}

void BM_GfMul(benchmark::State& state) {
    const Bytes a = random_bytes(4096, 1);
    const Bytes b = random_bytes(4096, 2);
    for (auto _ : state) {
        std::uint8_t acc = 0;
        for (std::size_t i = 0; i < a.size(); ++i) acc ^= gf::mul(a[i], b[i]);
        benchmark::DoNotOptimize(acc);
    }
    state.SetBytesProcessed(int64_t(state.iterations()) * int64_t(a.size()));
}
BENCHMARK(BM_GfMul);

void BM_Crc32(benchmark::State& state) {
    const Bytes data = random_bytes(std::size_t(state.range(0)), 3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(crc32(data));
    }
    state.SetBytesProcessed(int64_t(state.iterations()) * state.range(0));
}
BENCHMARK(BM_Crc32)->Arg(64)->Arg(4096)->Arg(1 << 20);

void BM_Split(benchmark::State& state) {
    const auto size = std::size_t(state.range(0));
    const int n = int(state.range(1));
    const SharePolicy policy{std::uint8_t((n + 1) / 2 < 2 ? 2 : (n + 1) / 2),
                             std::uint8_t(n)};
    const Bytes data = random_bytes(size, 4);
    RandomSource rng(5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(split(data, policy, rng));
    }
    state.SetBytesProcessed(int64_t(state.iterations()) * int64_t(size));
}
BENCHMARK(BM_Split)->Args({64, 5})->Args({4096, 5})->Args({4096, 10})->Args({4096, 20});

void BM_Reconstruct(benchmark::State& state) {
    const auto size = std::size_t(state.range(0));
    const int n = int(state.range(1));
    const SharePolicy policy{std::uint8_t((n + 1) / 2 < 2 ? 2 : (n + 1) / 2),
                             std::uint8_t(n)};
    const Bytes data = random_bytes(size, 6);
    RandomSource rng(7);
    const auto shares = split(data, policy, rng);
    std::vector<const Share*> picked;
    for (int i = 0; i < policy.k; ++i) picked.push_back(&shares[std::size_t(i)]);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            reconstruct(std::span<const Share* const>(picked), policy));
    }
    state.SetBytesProcessed(int64_t(state.iterations()) * int64_t(size));
}
BENCHMARK(BM_Reconstruct)->Args({64, 5})->Args({4096, 5})->Args({4096, 10})->Args({4096, 20});

void BM_LagrangeWeights(benchmark::State& state) {
    const int k = int(state.range(0));
    std::vector<std::uint8_t> xs;
    for (int i = 1; i <= k; ++i) xs.push_back(std::uint8_t(i));
    for (auto _ : state) {
        benchmark::DoNotOptimize(lagrange_weights_at_zero(xs));
    }
}
BENCHMARK(BM_LagrangeWeights)->Arg(3)->Arg(10)->Arg(128);

}  // namespace

BENCHMARK_MAIN();
