#include <asw/deform.hpp>
#include <asw/moduli.hpp>
#include <asw/parse.hpp>
#include <asw/ramify.hpp>
#include <asw/witt.hpp>
#include <benchmark/benchmark.h>

#include <string>
#include <vector>

using namespace asw;

namespace {

WittVector wv(const Field& f, const std::vector<std::string>& entries) {
  std::vector<RatFunc> e;
  for (const auto& s : entries) e.push_back(parse_ratfunc(s, f));
  return WittVector(std::move(e));
}

// Length-n vectors with poles at 0 and 1 of growing order.
WittVector sample(const Field& f, unsigned n, int shift) {
  std::vector<std::string> e;
  for (unsigned i = 0; i < n; ++i)
    e.push_back("1/x^" + std::to_string(2 + shift + 3 * static_cast<int>(i)) + " + x^2/(x-1)^" +
                std::to_string(1 + shift + static_cast<int>(i)));
  return wv(f, e);
}

void BM_WittAdd(benchmark::State& state) {
  const auto p = static_cast<std::uint32_t>(state.range(0));
  const auto n = static_cast<unsigned>(state.range(1));
  const Field f = Field::prime(p);
  const WittVector u = sample(f, n, 0), v = sample(f, n, 1);
  for (auto _ : state) benchmark::DoNotOptimize(u + v);
}
BENCHMARK(BM_WittAdd)->ArgsProduct({{2, 3, 5}, {1, 2, 3}})->Unit(benchmark::kMicrosecond);

void BM_Reduce(benchmark::State& state) {
  const auto p = static_cast<std::uint32_t>(state.range(0));
  const Field f = Field::prime(p);
  const std::string pp = std::to_string(p);
  const WittVector u = wv(f, {"1/x^" + pp + " + 1/(x-1)^" + std::to_string(2 * p), "1/x^" + std::to_string(p * p)});
  for (auto _ : state) benchmark::DoNotOptimize(reduce(u));
}
BENCHMARK(BM_Reduce)->Arg(2)->Arg(3)->Arg(5)->Unit(benchmark::kMicrosecond);

void BM_BranchingDatumZ25(benchmark::State& state) {
  const Field f5 = Field::prime(5);
  const WittVector u = wv(f5, {"1/x + 1/(x-1)", "1/(x-1)^7 + 1/(x-2)^12"});
  for (auto _ : state) benchmark::DoNotOptimize(analyze_branching(u));
}
BENCHMARK(BM_BranchingDatumZ25)->Unit(benchmark::kMicrosecond);

void BM_Enumerate(benchmark::State& state) {
  const auto p = static_cast<std::uint32_t>(state.range(0));
  const std::vector<int> d{static_cast<int>(state.range(1)), static_cast<int>(state.range(2))};
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_partitions(d, p));
}
BENCHMARK(BM_Enumerate)->Args({2, 4, 8})->Args({2, 10, 30})->Args({3, 9, 27})->Args({5, 9, 53})->Unit(benchmark::kMicrosecond);

void BM_BuildGraph(benchmark::State& state) {
  const auto jobs = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_graph({10, 30}, 2, jobs));
}
BENCHMARK(BM_BuildGraph)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_VerifyOrderFour(benchmark::State& state) {
  const Field f2 = Field::prime(2);
  const Field k = Field::parametric(f2);
  const WittVector special = wv(f2, {"1/x^3", "1/x^7"});
  const WittVector family = wv(k, {"1/(x^2(x-t^4))", "1/(x^3(x-t^4)^2(x-t^2)^2)"});
  for (auto _ : state) benchmark::DoNotOptimize(verify_deformation(special, family));
}
BENCHMARK(BM_VerifyOrderFour)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
