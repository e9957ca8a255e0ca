#include "polaraut/ae_sim.hpp"
#include "polaraut/automorphism.hpp"
#include "polaraut/gf2.hpp"
#include "polaraut/invariance.hpp"
#include "polaraut/monomial.hpp"
#include "polaraut/sc_decoder.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace polaraut;

namespace {

PolarCode code_256_128() {
    return PolarCode(decreasing_closure(8, {Monomial::of(8, {6, 7, 8}), Monomial::of(8, {2, 3, 7, 8})}));
}

void bm_mat_mul(benchmark::State& state) {
    std::mt19937_64 rng(1);
    auto a = sample_blta(BlockStructure({32}), rng).matrix;
    auto b = sample_blta(BlockStructure({32}), rng).matrix;
    for (auto _ : state)
        benchmark::DoNotOptimize(mat_mul(a, b));
}
BENCHMARK(bm_mat_mul);

void bm_sc_decode(benchmark::State& state) {
    PolarCode code = code_256_128();
    ScDecoder decoder(code, state.range(0) ? DecoderFlavor::min_sum : DecoderFlavor::exact);
    std::mt19937_64 rng(2);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> y(code.n());
    for (auto& v : y)
        v = gauss(rng);
    for (auto _ : state)
        benchmark::DoNotOptimize(decoder.decode(y));
}
BENCHMARK(bm_sc_decode)->Arg(0)->Arg(1);

void bm_ae_decode8(benchmark::State& state) {
    PolarCode code = code_256_128();
    std::mt19937_64 rng(3);
    std::vector<AffineAutomorphism> ensemble;
    for (const AffineMap& map : sample_ensemble(code.info(), 8, rng))
        ensemble.push_back(make_automorphism(map, code.info()));
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> y(code.n());
    for (auto& v : y)
        v = gauss(rng);
    for (auto _ : state)
        benchmark::DoNotOptimize(ae_decode(code, ensemble, y));
}
BENCHMARK(bm_ae_decode8);

void bm_dec_group(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    InfoSet info = bec_construct(m, (1ull << m) / 2, 0.5);
    for (auto _ : state)
        benchmark::DoNotOptimize(dec_group(info));
}
BENCHMARK(bm_dec_group)->Arg(8)->Arg(10)->Arg(12);

void bm_automorphism_group(benchmark::State& state) {
    InfoSet info = code_256_128().info();
    for (auto _ : state)
        benchmark::DoNotOptimize(automorphism_group(info));
}
BENCHMARK(bm_automorphism_group);

void bm_encode(benchmark::State& state) {
    PolarCode code(bec_construct(10, 512, 0.5));
    std::vector<std::uint8_t> msg(code.k(), 1);
    for (auto _ : state)
        benchmark::DoNotOptimize(encode(code, msg));
}
BENCHMARK(bm_encode);

void bm_sample_blta(benchmark::State& state) {
    BlockStructure s({3, 1, 1, 1, 1, 1});
    std::mt19937_64 rng(4);
    for (auto _ : state)
        benchmark::DoNotOptimize(sample_blta(s, rng));
}
BENCHMARK(bm_sample_blta);

}  // namespace

BENCHMARK_MAIN();
