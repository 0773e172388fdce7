// Command-line front end: degradation synthesis, the NGR inpainting/denoising
// solvers, the TV baseline, metric evaluation, a desk-scale benchmark suite,
// and a numerical selfcheck.
//
// Exit codes: 0 success, 2 usage, 3 data, 4 numeric failure.

#include <CLI11.hpp>

#include "ngr/baselines.hpp"
#include "ngr/blas_tuning.hpp"
#include "ngr/degrade.hpp"
#include "ngr/errors.hpp"
#include "ngr/io.hpp"
#include "ngr/metrics.hpp"
#include "ngr/net.hpp"
#include "ngr/solver.hpp"
#include "ngr/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

namespace {

using namespace ngr;

constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitNumeric = 4;

std::uint64_t default_seed() {
    if (const char* env = std::getenv("NGR_SEED")) {
        try {
            return std::stoull(env);
        } catch (...) {
            throw ngr::ConfigError(std::string("NGR_SEED is not a valid integer: ") + env);
        }
    }
    return 0;
}

// Replayability: every command prints the invocation line it is equivalent
// to, with all defaults spelled out.
void echo_invocation(const std::string& line) { std::cout << "# ngr " << line << "\n"; }

solver::SolverConfig load_solver_config(const std::string& path) {
    if (path.empty()) return solver::SolverConfig{};
    return io::read_solver_config(path);
}

// ---------------------------------------------------------------- degrade --

struct DegradeArgs {
    std::string in, out, mask_out, kind, preset = "weak";
    double sr = 0.3, sigma = 0.1, ratio = 0.1, bands_fraction = 0.2;
    double stripe_min = -0.25, stripe_max = 0.25;
    int columns = 0, stripes_per_band = 35;
    std::optional<std::uint64_t> seed_opt;
    std::uint64_t seed = 0;
};

int run_degrade(DegradeArgs a) {
    a.seed = a.seed_opt ? *a.seed_opt : default_seed();
    Tensor3 x = io::read_image(a.in);
    Rng rng(a.seed);
    Tensor3 out;
    std::optional<solver::ObservationMask> mask;
    std::ostringstream inv;
    inv << "degrade --in " << a.in << " --out " << a.out << " --kind " << a.kind
        << " --seed " << a.seed;

    if (a.kind == "random") {
        mask = degrade::random_mask(rng, x.height(), x.width(), x.channels(), a.sr);
        out = solver::project(x, *mask);
        inv << " --sr " << a.sr;
    } else if (a.kind == "deadline") {
        mask = degrade::deadline_mask(rng, x.height(), x.width(), x.channels(), a.columns);
        out = solver::project(x, *mask);
        inv << " --columns " << a.columns;
    } else if (a.kind == "gaussian") {
        out = degrade::add_gaussian(rng, x, a.sigma);
        inv << " --sigma " << a.sigma;
    } else if (a.kind == "impulse") {
        out = degrade::add_impulse(rng, x, a.ratio);
        inv << " --ratio " << a.ratio;
    } else if (a.kind == "stripes") {
        out = degrade::add_stripes(rng, x, a.bands_fraction, a.stripes_per_band,
                                   {a.stripe_min, a.stripe_max});
        inv << " --bands-fraction " << a.bands_fraction << " --stripes-per-band "
            << a.stripes_per_band << " --stripe-min " << a.stripe_min << " --stripe-max "
            << a.stripe_max;
    } else {  // mixed
        out = degrade::apply_mixed(rng, x, degrade::MixedNoisePreset::by_name(a.preset));
        inv << " --preset " << a.preset;
    }
    if (!a.mask_out.empty()) inv << " --mask-out " << a.mask_out;
    echo_invocation(inv.str());

    io::write_image(out, a.out);
    if (!a.mask_out.empty()) {
        if (!mask) throw std::invalid_argument("--mask-out only applies to random/deadline kinds");
        io::write_tensor(mask->to_tensor(), a.mask_out);
    }
    std::cout << a.kind << ": " << x.height() << "x" << x.width() << "x" << x.channels();
    if (mask) std::cout << ", observed " << mask->count_observed() << "/" << x.size();
    std::cout << " -> " << a.out << "\n";
    return 0;
}

// ---------------------------------------------------------------- inpaint --

struct InpaintArgs {
    std::string in, mask, out, config, trace, snapshots_dir;
    std::optional<std::uint64_t> seed;
};

void write_trace(const solver::IterationTrace& trace, const std::string& csv_path,
                 const std::string& snapshots_dir) {
    if (!csv_path.empty()) io::write_text(trace.to_csv(), csv_path);
    if (!snapshots_dir.empty()) {
        std::filesystem::create_directories(snapshots_dir);
        for (const auto& s : trace.snapshots) {
            const std::string stem = snapshots_dir + "/iter" + std::to_string(s.iter);
            io::write_tensor(s.maps.g_h, stem + "_gh.ngrt");
            io::write_tensor(s.maps.g_v, stem + "_gv.ngrt");
            io::write_tensor(s.maps.g_t, stem + "_gt.ngrt");
        }
    }
}

int run_inpaint(const InpaintArgs& a) {
    Tensor3 y = io::read_image(a.in);
    auto omega = solver::ObservationMask::from_tensor(io::read_tensor(a.mask));
    solver::SolverConfig cfg = load_solver_config(a.config);
    // precedence: --seed, then NGR_SEED, then the config file, then 0
    if (a.seed) cfg.seed = *a.seed;
    else if (std::getenv("NGR_SEED")) cfg.seed = default_seed();

    std::ostringstream inv;
    inv << "inpaint --in " << a.in << " --mask " << a.mask << " --out " << a.out;
    if (!a.config.empty()) inv << " --config " << a.config;
    if (!a.trace.empty()) inv << " --trace " << a.trace;
    if (!a.snapshots_dir.empty()) inv << " --snapshots-dir " << a.snapshots_dir;
    inv << " --seed " << cfg.seed;
    echo_invocation(inv.str());

    auto res = solver::run_inpainting(y, omega, cfg);
    io::write_image(res.x, a.out);
    write_trace(res.trace, a.trace, a.snapshots_dir);
    std::cout << "inpaint: " << res.trace.rows.size() << " iterations, final residual "
              << res.trace.rows.back().residual_max << " -> " << a.out << "\n";
    return 0;
}

// ---------------------------------------------------------------- denoise --

struct DenoiseArgs {
    std::string in, out, config, trace, mode = "mixed";
    std::optional<std::uint64_t> seed;
};

int run_denoise(const DenoiseArgs& a) {
    Tensor3 y = io::read_image(a.in);
    solver::DenoiseConfig cfg;
    if (!a.config.empty()) cfg = io::read_denoise_config(a.config);
    if (a.seed) cfg.base.seed = *a.seed;
    else if (std::getenv("NGR_SEED")) cfg.base.seed = default_seed();
    if (a.mode == "gaussian") cfg.tau = 0.0;  // no sparse-outlier term

    std::ostringstream inv;
    inv << "denoise --in " << a.in << " --out " << a.out << " --mode " << a.mode;
    if (!a.config.empty()) inv << " --config " << a.config;
    if (!a.trace.empty()) inv << " --trace " << a.trace;
    inv << " --seed " << cfg.base.seed;
    echo_invocation(inv.str());

    auto res = solver::run_denoising(y, cfg);
    io::write_image(res.x, a.out);
    if (!a.trace.empty()) io::write_text(res.trace.to_csv(), a.trace);
    std::cout << "denoise: " << res.trace.rows.size() << " iterations -> " << a.out << "\n";
    return 0;
}

// ------------------------------------------------------------- tv-inpaint --

struct TvArgs {
    std::string in, mask, out, config, trace;
};

int run_tv_inpaint(const TvArgs& a) {
    Tensor3 y = io::read_image(a.in);
    auto omega = solver::ObservationMask::from_tensor(io::read_tensor(a.mask));
    baselines::TvConfig cfg;
    if (!a.config.empty()) cfg = io::read_tv_config(a.config);

    std::ostringstream inv;
    inv << "tv-inpaint --in " << a.in << " --mask " << a.mask << " --out " << a.out;
    if (!a.config.empty()) inv << " --config " << a.config;
    if (!a.trace.empty()) inv << " --trace " << a.trace;
    echo_invocation(inv.str());

    solver::IterationTrace trace;
    Tensor3 x = baselines::tv3d_inpaint(y, omega, cfg, a.trace.empty() ? nullptr : &trace);
    io::write_image(x, a.out);
    if (!a.trace.empty()) io::write_text(trace.to_csv(), a.trace);
    std::cout << "tv-inpaint: " << cfg.iters << " iterations -> " << a.out << "\n";
    return 0;
}

// ------------------------------------------------------------------- eval --

int run_eval(const std::string& x_path, const std::string& ref_path) {
    echo_invocation("eval --x " + x_path + " --ref " + ref_path);
    Tensor3 x = io::read_image(x_path);
    Tensor3 ref = io::read_image(ref_path);
    metrics::MetricReport r = metrics::evaluate(x, ref);
    std::cout << metrics::MetricReport::csv_header() << "\n" << r.to_csv() << "\n";
    return 0;
}

// -------------------------------------------------------------- selfcheck --

bool check(const char* name, bool ok) {
    std::cout << (ok ? "PASS " : "FAIL ") << name << "\n";
    return ok;
}

bool selfcheck_adjoint() {
    Rng rng(101);
    for (int trial = 0; trial < 100; ++trial) {
        Tensor3 x = uniform(rng, 8, 8, 3, -1.0, 1.0);
        Tensor3 g = uniform(rng, 8, 8, 3, -1.0, 1.0);
        for (Axis ax : {Axis::h, Axis::v, Axis::t}) {
            const double lhs = dot(grad(x, ax), g);
            const double rhs = dot(x, grad_adjoint(g, ax));
            if (std::fabs(lhs - rhs) > 1e-10 * norm2(x) * norm2(g)) return false;
        }
    }
    return true;
}

bool selfcheck_spectrum() {
    for (int n : {2, 3, 4, 7, 8, 16}) {
        const auto spec = grad_spectrum(n);
        for (int k = 0; k < n; ++k) {
            const double s = std::sin(std::numbers::pi * k / n);
            if (std::fabs(spec[k] - 4.0 * s * s) > 1e-12) return false;
            // naive DFT of the difference kernel (-1, 1, 0, ..., 0)
            std::complex<double> f = 0.0;
            for (int j = 0; j < n; ++j) {
                const double kernel = j == 0 ? -1.0 : (j == 1 % n ? 1.0 : 0.0);
                f += kernel * std::exp(std::complex<double>(0, -2.0 * std::numbers::pi * k * j / n));
            }
            if (std::fabs(spec[k] - std::norm(f)) > 1e-12) return false;
        }
    }
    return true;
}

bool selfcheck_fft_solve() {
    Rng rng(102);
    const int h = 6, w = 6, c = 2;
    const std::size_t n = static_cast<std::size_t>(h) * w * c;
    for (int trial = 0; trial < 5; ++trial) {
        solver::SolverConfig cfg;
        cfg.lambda_h = rng.uniform(0.0, 2.0);
        cfg.lambda_v = rng.uniform(0.0, 2.0);
        cfg.lambda_t = rng.uniform(0.0, 2.0);
        cfg.mu = rng.uniform(0.5, 8.0);
        Tensor3 r = uniform(rng, h, w, c, -1.0, 1.0);
        Tensor3 x = solver::update_x(r, cfg);
        // verify the stationarity condition (mu + sum lambda_i D_i^T D_i) x = r
        Tensor3 lhs = x * cfg.mu;
        lhs += cfg.lambda_h * grad_adjoint(grad(x, Axis::h), Axis::h);
        lhs += cfg.lambda_v * grad_adjoint(grad(x, Axis::v), Axis::v);
        lhs += cfg.lambda_t * grad_adjoint(grad(x, Axis::t), Axis::t);
        double num = 0, den = 0;
        for (std::size_t i = 0; i < n; ++i) {
            num += (lhs[i] - r[i]) * (lhs[i] - r[i]);
            den += r[i] * r[i];
        }
        if (std::sqrt(num / den) > 1e-8) return false;
    }
    return true;
}

bool selfcheck_finite_difference() {
    net::NetConfig cfg;
    cfg.blocks = 2;
    cfg.width = 4;
    cfg.input_channels = 2;
    cfg.output_channels = 2;
    Rng rng(103);
    net::NetParams p = net::init_params(rng, cfg);
    Tensor3 in = net::init_input(rng, 6, 6, 2, 0.1);
    net::GradientTriple target;
    target.g_h = uniform(rng, 6, 6, 2, -0.5, 0.5);
    target.g_v = uniform(rng, 6, 6, 2, -0.5, 0.5);
    target.g_t = uniform(rng, 6, 6, 2, -0.5, 0.5);
    const std::array<double, 3> lambda = {1.0, 1.0, 1.0};

    auto lg = net::loss_and_grad(p, cfg, in, target, lambda);
    auto flat = [](net::NetParams& q) {
        std::vector<double*> out;
        auto add = [&](net::Conv& cv) {
            for (auto& v : cv.w) out.push_back(&v);
            for (auto& v : cv.b) out.push_back(&v);
        };
        for (auto& cv : q.trunk) add(cv);
        for (auto& cv : q.heads) add(cv);
        return out;
    };
    auto analytic = flat(lg.grads);
    auto theta = flat(p);
    const double h = 1e-5;
    for (std::size_t i = 0; i < theta.size(); ++i) {
        const double orig = *theta[i];
        *theta[i] = orig + h;
        const double lp = net::loss_and_grad(p, cfg, in, target, lambda).loss;
        *theta[i] = orig - h;
        const double lm = net::loss_and_grad(p, cfg, in, target, lambda).loss;
        *theta[i] = orig;
        const double fd = (lp - lm) / (2.0 * h);
        const double mag = std::max(std::fabs(fd), std::fabs(*analytic[i]));
        if (mag < 1e-6) {
            if (std::fabs(fd - *analytic[i]) > 1e-6) return false;
        } else if (std::fabs(fd - *analytic[i]) / mag > 1e-4) {
            return false;
        }
    }
    return true;
}

int run_selfcheck() {
    echo_invocation("selfcheck");
    bool ok = true;
    ok &= check("adjoint identity", selfcheck_adjoint());
    ok &= check("gradient spectrum", selfcheck_spectrum());
    ok &= check("fft screened solve", selfcheck_fft_solve());
    ok &= check("backprop finite differences", selfcheck_finite_difference());
    return ok ? 0 : kExitNumeric;
}

// ------------------------------------------------------------------ bench --

// Desk-scale sweeps: small images and a reduced net so a full suite stays in
// CI territory. Rows are computed independently (optionally in parallel) and
// written in a normalized order.
struct BenchRow {
    std::string image, method;
    double sr = 1.0, mu = 16.0, lambda_t = 1.0;
    double psnr = 0.0, ssim = 0.0;

    std::string csv() const {
        std::ostringstream os;
        os.precision(10);
        os << image << ',' << method << ',' << sr << ',' << mu << ',' << lambda_t << ','
           << psnr << ',' << ssim;
        return os.str();
    }
};

solver::SolverConfig bench_ngr_config() {
    solver::SolverConfig cfg;
    cfg.net.blocks = 2;
    cfg.net.width = 8;
    cfg.outer_iters = 200;
    cfg.lr = 0.02;
    return cfg;
}

int run_bench(const std::string& suite, const std::string& out_dir, int jobs,
              std::uint64_t seed) {
    std::ostringstream inv;
    inv << "bench --suite " << suite << " --out-dir " << out_dir << " --jobs " << jobs
        << " --seed " << seed;
    echo_invocation(inv.str());

    struct Task {
        std::string image;
        int h = 32, w = 32, c = 3;
        std::string method;  // ngr | tv3d | zero_fill
        double sr = 0.3, mu = 16.0, lambda_t = 1.0;
    };
    std::vector<Task> tasks;
    const std::vector<std::pair<std::string, int>> images = {{"synthetic32", 32},
                                                             {"synthetic24", 24}};

    if (suite == "sr-sweep") {
        for (const auto& [name, n] : images)
            for (double sr : {0.5, 0.3, 0.1})
                for (const char* method : {"ngr", "tv3d", "zero_fill"})
                    tasks.push_back({name, n, n, 3, method, sr, 16.0, 1.0});
    } else if (suite == "mu-sweep") {
        for (const auto& [name, n] : images)
            for (double mu : {4.0, 16.0, 64.0, 256.0})
                tasks.push_back({name, n, n, 3, "ngr", 0.3, mu, 1.0});
    } else if (suite == "lambda-sweep") {
        for (const auto& [name, n] : images)
            for (double lt : {0.0, 0.5, 1.0, 2.0})
                tasks.push_back({name, n, n, 3, "ngr", 0.3, 16.0, lt});
    } else {
        throw CLI::ValidationError("--suite", "unknown suite: " + suite);
    }

    std::vector<BenchRow> rows(tasks.size());
    std::mutex fail_mutex;
    std::string failure;

    auto worker = [&](std::size_t begin, std::size_t step) {
        for (std::size_t i = begin; i < tasks.size(); i += step) {
            const Task& t = tasks[i];
            try {
                Tensor3 truth = degrade::synthetic_image(t.h, t.w, t.c);
                // mask seed depends only on the task definition, not order
                Rng rng(seed + i);
                auto omega = degrade::random_mask(rng, t.h, t.w, t.c, t.sr);
                Tensor3 y = solver::project(truth, omega);
                Tensor3 x;
                if (t.method == "ngr") {
                    solver::SolverConfig cfg = bench_ngr_config();
                    cfg.mu = t.mu;
                    cfg.lambda_t = t.lambda_t;
                    cfg.seed = seed;
                    x = solver::run_inpainting(y, omega, cfg).x;
                } else if (t.method == "tv3d") {
                    baselines::TvConfig cfg;
                    cfg.lambda_t = t.lambda_t;
                    x = baselines::tv3d_inpaint(y, omega, cfg);
                } else {
                    x = baselines::zero_fill(y, omega);
                }
                rows[i] = {t.image, t.method, t.sr, t.mu, t.lambda_t,
                           metrics::psnr(x, truth), metrics::ssim(x, truth)};
            } catch (const std::exception& e) {
                std::lock_guard lock(fail_mutex);
                if (failure.empty()) failure = e.what();
            }
        }
    };

    const int n_threads = std::max(1, std::min<int>(jobs, static_cast<int>(tasks.size())));
    if (n_threads == 1) {
        worker(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < n_threads; ++t)
            pool.emplace_back(worker, static_cast<std::size_t>(t), static_cast<std::size_t>(n_threads));
        for (auto& th : pool) th.join();
    }
    if (!failure.empty()) throw NumericError("bench: " + failure);

    // normalized ordering regardless of completion order
    std::sort(rows.begin(), rows.end(), [](const BenchRow& a, const BenchRow& b) {
        return std::tie(a.image, a.method, a.sr, a.mu, a.lambda_t) <
               std::tie(b.image, b.method, b.sr, b.mu, b.lambda_t);
    });

    std::ostringstream csv;
    csv << "image,method,sr,mu,lambda_t,psnr,ssim\n";
    for (const auto& r : rows) csv << r.csv() << "\n";

    std::filesystem::create_directories(out_dir);
    const std::string path = out_dir + "/" + suite + ".csv";
    io::write_text(csv.str(), path);
    std::cout << "bench: " << rows.size() << " rows -> " << path << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    ngr::blas::ensure_tuned(argv);
    CLI::App app{"Zero-shot image restoration with a neural gradient regularizer"};
    app.require_subcommand(1);

    DegradeArgs dg;
    auto* degrade_cmd = app.add_subcommand("degrade", "Synthesize masks and noise");
    degrade_cmd->add_option("--in", dg.in)->required();
    degrade_cmd->add_option("--out", dg.out)->required();
    degrade_cmd->add_option("--mask-out", dg.mask_out);
    degrade_cmd->add_option("--kind", dg.kind)
        ->required()
        ->check(CLI::IsMember({"random", "deadline", "gaussian", "impulse", "stripes", "mixed"}));
    degrade_cmd->add_option("--sr", dg.sr)->check(CLI::Range(0.0, 1.0));
    degrade_cmd->add_option("--columns", dg.columns)->check(CLI::NonNegativeNumber);
    degrade_cmd->add_option("--sigma", dg.sigma)->check(CLI::NonNegativeNumber);
    degrade_cmd->add_option("--ratio", dg.ratio)->check(CLI::Range(0.0, 1.0));
    degrade_cmd->add_option("--bands-fraction", dg.bands_fraction)->check(CLI::Range(0.0, 1.0));
    degrade_cmd->add_option("--stripes-per-band", dg.stripes_per_band)->check(CLI::NonNegativeNumber);
    degrade_cmd->add_option("--stripe-min", dg.stripe_min);
    degrade_cmd->add_option("--stripe-max", dg.stripe_max);
    degrade_cmd->add_option("--preset", dg.preset)->check(CLI::IsMember({"weak", "strong"}));
    degrade_cmd->add_option("--seed", dg.seed_opt);

    InpaintArgs ia;
    auto* inpaint_cmd = app.add_subcommand("inpaint", "NGR ADMM inpainting");
    inpaint_cmd->add_option("--in", ia.in)->required();
    inpaint_cmd->add_option("--mask", ia.mask)->required();
    inpaint_cmd->add_option("--out", ia.out)->required();
    inpaint_cmd->add_option("--config", ia.config);
    inpaint_cmd->add_option("--trace", ia.trace);
    inpaint_cmd->add_option("--snapshots-dir", ia.snapshots_dir);
    inpaint_cmd->add_option("--seed", ia.seed);

    DenoiseArgs da;
    auto* denoise_cmd = app.add_subcommand(
        "denoise", "NGR denoising (model invented here, not from published work)");
    denoise_cmd->add_option("--in", da.in)->required();
    denoise_cmd->add_option("--out", da.out)->required();
    denoise_cmd->add_option("--config", da.config);
    denoise_cmd->add_option("--trace", da.trace);
    denoise_cmd->add_option("--mode", da.mode)->check(CLI::IsMember({"gaussian", "mixed"}));
    denoise_cmd->add_option("--seed", da.seed);

    TvArgs ta;
    auto* tv_cmd = app.add_subcommand("tv-inpaint", "3-D total-variation baseline");
    tv_cmd->add_option("--in", ta.in)->required();
    tv_cmd->add_option("--mask", ta.mask)->required();
    tv_cmd->add_option("--out", ta.out)->required();
    tv_cmd->add_option("--config", ta.config);
    tv_cmd->add_option("--trace", ta.trace);

    std::string eval_x, eval_ref;
    auto* eval_cmd = app.add_subcommand("eval", "Print metrics CSV for x against ref");
    eval_cmd->add_option("--x", eval_x)->required();
    eval_cmd->add_option("--ref", eval_ref)->required();

    std::string bench_suite, bench_out_dir = "bench-out";
    int bench_jobs = 1;
    std::optional<std::uint64_t> bench_seed;
    auto* bench_cmd = app.add_subcommand("bench", "Desk-scale benchmark sweeps");
    bench_cmd->add_option("--suite", bench_suite)
        ->required()
        ->check(CLI::IsMember({"sr-sweep", "mu-sweep", "lambda-sweep"}));
    bench_cmd->add_option("--out-dir", bench_out_dir);
    bench_cmd->add_option("--jobs", bench_jobs)->check(CLI::PositiveNumber);
    bench_cmd->add_option("--seed", bench_seed);

    auto* selfcheck_cmd = app.add_subcommand("selfcheck", "Run the numerical oracles");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*degrade_cmd) return run_degrade(dg);
        if (*inpaint_cmd) return run_inpaint(ia);
        if (*denoise_cmd) return run_denoise(da);
        if (*tv_cmd) return run_tv_inpaint(ta);
        if (*eval_cmd) return run_eval(eval_x, eval_ref);
        if (*bench_cmd)
            return run_bench(bench_suite, bench_out_dir, bench_jobs,
                             bench_seed ? *bench_seed : default_seed());
        if (*selfcheck_cmd) return run_selfcheck();
    } catch (const NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const FormatError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitData;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    return 0;
}
