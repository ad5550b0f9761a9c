#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "thompson/closure.hpp"
#include "thompson/decision.hpp"

using namespace thompson;

namespace {

std::vector<Element> parse_all(const std::vector<std::string>& texts) {
  std::vector<Element> out;
  for (const auto& t : texts) out.push_back(parse_element(t));
  return out;
}

Element random_word(std::mt19937_64& rng, int length) {
  std::uniform_int_distribution<unsigned> index(0, 3);
  Element out;
  for (int i = 0; i < length; ++i) {
    Element g = generator(index(rng));
    out = multiply(out, rng() & 1 ? invert(g) : g);
  }
  return out;
}

const std::vector<std::string> kB1 = {"x0 x1 x2 x3 x5^2 (x0 x1 x2 x4^3)^-1",
                                      "x0^3 x2 x6 (x0 x1^2 x3 x5^2 x7)^-1"};

void BM_Multiply(benchmark::State& state) {
  std::mt19937_64 rng(1);
  Element a = random_word(rng, static_cast<int>(state.range(0)));
  Element b = random_word(rng, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(multiply(a, b));
}
BENCHMARK(BM_Multiply)->Arg(8)->Arg(32)->Arg(128);

void BM_BuildCore(benchmark::State& state) {
  auto gens = parse_all(kB1);
  for (auto _ : state) benchmark::DoNotOptimize(build_core(gens));
}
BENCHMARK(BM_BuildCore);

void BM_Completion(benchmark::State& state) {
  auto rules = presentation(build_core(parse_all(kB1)));
  for (auto _ : state) benchmark::DoNotOptimize(complete(rules));
}
BENCHMARK(BM_Completion);

void BM_SlopeLattice(benchmark::State& state) {
  auto gens = parse_all({"x0 x1^-2", "x1 x3^-1"});
  for (auto _ : state) benchmark::DoNotOptimize(slope_lattice(gens));
}
BENCHMARK(BM_SlopeLattice);

}  // namespace

BENCHMARK_MAIN();
