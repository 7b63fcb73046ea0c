#include <benchmark/benchmark.h>

#include "zipring/matrix.hpp"
#include "zipring/taut_ring.hpp"
#include "zipring/weyl.hpp"
#include "zipring/zip_oracle.hpp"

using namespace zipring;

namespace {

// Fresh ring data each iteration; the shared ring() cache would hide the
// build cost being measured.
void bm_hilbert(benchmark::State& state) {
  int g = static_cast<int>(state.range(0));
  for (auto _ : state) {
    RingData data(g);
    benchmark::DoNotOptimize(data.hilbert_function());
  }
}

void bm_normal_form(benchmark::State& state) {
  int g = static_cast<int>(state.range(0));
  auto r = ring(g);
  const auto& w = r->presentation().weights;
  Polynomial u1 = Polynomial::generator(w, 0);
  Polynomial power = Polynomial::constant(w, Rational(1));
  for (int k = 0; k < g; ++k) power = power * u1;
  for (auto _ : state) benchmark::DoNotOptimize(r->normal_form(power));
}

void bm_sparse_rref(benchmark::State& state) {
  // Relation multiples of the mid degree, the dominant ring-build workload.
  int g = static_cast<int>(state.range(0));
  Presentation pres = build_presentation(g);
  long d = static_cast<long>(g) * (g + 1) / 4;
  std::vector<Monomial> monos = monomials_of_degree(pres.weights, d);
  std::map<Monomial, size_t> index;
  for (size_t k = 0; k < monos.size(); ++k) index.emplace(monos[k], k);
  std::vector<SparseRow> rows;
  for (const Polynomial& rel : pres.relations) {
    if (rel.degree() > d) continue;
    for (const Monomial& m : monomials_of_degree(pres.weights, d - rel.degree())) {
      Polynomial mono(pres.weights);
      mono.add_term(m.exp, Rational(1));
      Polynomial prod = rel * mono;
      SparseRow row;
      for (const auto& [mm, c] : prod.terms()) row.emplace_back(index.at(mm), c);
      rows.push_back(std::move(row));
    }
  }
  for (auto _ : state) {
    auto copy = rows;
    benchmark::DoNotOptimize(sparse_rref(std::move(copy)));
  }
}

void bm_coset_table(benchmark::State& state) {
  int g = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(CosetTable::build(g));
}

void bm_enumerate_lagrangians(benchmark::State& state) {
  int g = static_cast<int>(state.range(0));
  long p = state.range(1);
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_lagrangians(g, p));
}

void bm_zip_stream(benchmark::State& state) {
  int g = static_cast<int>(state.range(0));
  long p = state.range(1);
  OracleLimits limits;
  for (auto _ : state) {
    uint64_t count = 0;
    for_each_zip(g, p, limits, [&](const FpMat&) { ++count; });
    benchmark::DoNotOptimize(count);
  }
}

void bm_zip_invariant(benchmark::State& state) {
  auto zips = enumerate_zips(2, 3);
  size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(zip_invariant(zips[i]));
    i = (i + 997) % zips.size();
  }
}

void bm_orbit_decomposition(benchmark::State& state) {
  int g = static_cast<int>(state.range(0));
  long p = state.range(1);
  for (auto _ : state) benchmark::DoNotOptimize(orbit_decomposition(g, p));
}

}  // namespace

BENCHMARK(bm_hilbert)->Arg(4)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_normal_form)->Arg(3)->Arg(5);
BENCHMARK(bm_sparse_rref)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_coset_table)->Arg(3)->Arg(6);
BENCHMARK(bm_enumerate_lagrangians)->Args({2, 3})->Args({3, 2});
BENCHMARK(bm_zip_stream)->Args({2, 2})->Args({2, 3})->Unit(benchmark::kMillisecond);
BENCHMARK(bm_zip_invariant);
BENCHMARK(bm_orbit_decomposition)->Args({1, 3})->Args({2, 2})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
