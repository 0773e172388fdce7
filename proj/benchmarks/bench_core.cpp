// Microbenchmarks for the hot paths of a solver iteration: gradient
// operators, the FFT screened solve, the network forward/backward pass, the
// Adam update, and one full ADMM iteration.

#include <benchmark/benchmark.h>

#include "ngr/blas_tuning.hpp"
#include "ngr/degrade.hpp"
#include "ngr/net.hpp"
#include "ngr/solver.hpp"
#include "ngr/tensor.hpp"

using namespace ngr;

namespace {

Tensor3 make_image(int n) { return degrade::synthetic_image(n, n, 3); }

void bm_grad(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Tensor3 x = make_image(n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(grad(x, Axis::h));
        benchmark::DoNotOptimize(grad(x, Axis::v));
        benchmark::DoNotOptimize(grad(x, Axis::t));
    }
    state.SetItemsProcessed(state.iterations() * x.size() * 3);
}
BENCHMARK(bm_grad)->Arg(64)->Arg(128);

void bm_fft_solve(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Tensor3 r = make_image(n);
    solver::SolverConfig cfg;
    for (auto _ : state) benchmark::DoNotOptimize(solver::update_x(r, cfg));
    state.SetItemsProcessed(state.iterations() * r.size());
}
BENCHMARK(bm_fft_solve)->Arg(64)->Arg(128);

void bm_net_forward(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    net::NetConfig cfg;
    cfg.input_channels = 3;
    Rng rng(1);
    net::NetParams p = net::init_params(rng, cfg);
    Tensor3 in = net::init_input(rng, n, n, 3, 0.1);
    for (auto _ : state) benchmark::DoNotOptimize(net::forward(p, cfg, in));
}
BENCHMARK(bm_net_forward)->Arg(64);

void bm_net_loss_and_grad(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    net::NetConfig cfg;
    cfg.input_channels = 3;
    Rng rng(1);
    net::NetParams p = net::init_params(rng, cfg);
    Tensor3 in = net::init_input(rng, n, n, 3, 0.1);
    Tensor3 x = make_image(n);
    net::GradientTriple tgt{grad(x, Axis::h), grad(x, Axis::v), grad(x, Axis::t)};
    for (auto _ : state)
        benchmark::DoNotOptimize(net::loss_and_grad(p, cfg, in, tgt, {1.0, 1.0, 1.0}));
}
BENCHMARK(bm_net_loss_and_grad)->Arg(64);

void bm_adam_step(benchmark::State& state) {
    net::NetConfig cfg;
    cfg.input_channels = 3;
    Rng rng(1);
    net::NetParams p = net::init_params(rng, cfg);
    net::NetParams g = net::init_params(rng, cfg);
    net::AdamState adam = net::AdamState::init(cfg, 0.01);
    for (auto _ : state) net::adam_step(p, g, adam);
}
BENCHMARK(bm_adam_step);

void bm_solver_iteration(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Tensor3 truth = make_image(n);
    Rng rng(7);
    auto omega = degrade::random_mask(rng, n, n, 3, 0.3);
    Tensor3 y = solver::project(truth, omega);
    solver::SolverConfig cfg;
    cfg.net.input_channels = 3;
    cfg.net.output_channels = 3;

    Rng srng(cfg.seed);
    solver::AdmmState st;
    st.x = y;
    st.k = Tensor3(n, n, 3);
    st.lambda = Tensor3(n, n, 3);
    st.input = net::init_input(srng, n, n, 3, cfg.input_amplitude);
    st.params = net::init_params(srng, cfg.net);
    st.adam = net::AdamState::init(cfg.net, cfg.lr);

    for (auto _ : state) {
        solver::update_theta(st, cfg);
        solver::update_k(st, y, omega, cfg.mu);
        Tensor3 r = solver::compute_rhs(st, y, omega, cfg, st.last_prediction);
        st.x = solver::update_x(r, cfg);
        solver::update_lambda(st, y, omega, cfg.mu);
    }
}
BENCHMARK(bm_solver_iteration)->Arg(64)->Unit(benchmark::kMillisecond);

} // namespace

int main(int argc, char** argv) {
    ngr::blas::ensure_tuned(argv);
    benchmark::Initialize(&argc, argv);
    if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
    benchmark::RunSpecifiedBenchmarks();
    benchmark::Shutdown();
    return 0;
}
