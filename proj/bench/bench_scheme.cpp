// One sweep of the fixed-point map: OpenMP column loops against the serial reference.

#include "microlub/scheme.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace microlub;

struct Setup {
    ModelParams params = ModelParams::from_lubrication_params(0.1, 0.01, 0.1, 0.01, 1.0, 0.5);
    BearingGeometry geometry = BearingGeometry::linear(-0.5);
    Grids grids;
    Potential psi;
    SchemeState state;

    Setup(int n1, int nZ)
        : grids(n1, nZ),
          psi(solve_potential(params.M(), grids.vertical)),
          state(initial_state(params, grids, InitialProfile::Couette)) {}
};

template <bool Parallel>
void BM_Sweep(benchmark::State& st) {
    const Setup s(static_cast<int>(st.range(0)), static_cast<int>(st.range(1)));
    for (auto _ : st) {
        auto next = Parallel ? iterate(s.state, s.params, s.geometry, s.grids, s.psi)
                             : iterate_serial(s.state, s.params, s.geometry, s.grids, s.psi);
        benchmark::DoNotOptimize(next.p.data());
    }
    st.SetItemsProcessed(st.iterations() * (st.range(0) + 1));
}

BENCHMARK(BM_Sweep<true>)->Name("sweep/openmp")->Args({200, 400})->Args({800, 1600})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Sweep<false>)->Name("sweep/serial")->Args({200, 400})->Args({800, 1600})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
