#include "tinvit/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "tinvit/kernels.hpp"

namespace tinvit {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

}  // namespace

double orthogonality_deviation(const Matrix& q, ThreadPool* pool) {
    const std::size_t n = q.rows();
    double worst = 0.0;
    std::vector<double> g;
    for (std::size_t j = 0; j < q.cols(); ++j) {
        g.assign(j + 1, 0.0);
        kernels::gemv_t(pool, q.data(), q.ld(), n, j + 1, q.col(j), 0.0, g);
        g[j] -= 1.0;
        for (double x : g) worst = std::max(worst, std::abs(x));
    }
    return worst;
}

double subspace_sine(const Matrix& a, const Matrix& b, std::size_t begin, std::size_t end) {
    if (a.rows() != b.rows() || end > a.cols() || end > b.cols() || begin > end)
        throw std::invalid_argument("subspace_sine: dimension mismatch");
    const std::size_t n = a.rows();
    const std::size_t k = end - begin;
    double fro = 0.0;
    std::vector<double> w(k);
    for (std::size_t j = begin; j < end; ++j) {
        std::vector<double> r(a.col(j).begin(), a.col(j).end());
        kernels::gemv_t(nullptr, b.data() + begin * b.ld(), b.ld(), n, k, r, 0.0, w);
        kernels::gemv_n(nullptr, b.data() + begin * b.ld(), b.ld(), n, k, -1.0, w, r);
        for (double x : r) fro += x * x;
    }
    return std::sqrt(fro);
}

VerificationSummary verify_result(const SymTridiagonal& t, std::span<const double> lams, const Matrix& q,
                                  const Matrix* reference, std::span<const ClusterRange> clusters,
                                  ThreadPool* pool) {
    if (q.rows() != t.n() || lams.size() != q.cols())
        throw std::invalid_argument("verify_result: dimension mismatch");
    VerificationSummary s;
    s.max_orth_dev = orthogonality_deviation(q, pool);
    const double tnorm = norm_estimate(t);
    const double scale = tnorm > 0.0 ? tnorm : 1.0;
    for (std::size_t j = 0; j < q.cols(); ++j) {
        const auto col = q.col(j);
        const auto tq = matvec(t, col);
        double r = 0.0;
        for (std::size_t i = 0; i < col.size(); ++i) r = std::max(r, std::abs(tq[i] - lams[j] * col[i]));
        s.max_residual = std::max(s.max_residual, r / scale);
    }
    if (reference) {
        if (reference->rows() != q.rows() || reference->cols() != q.cols())
            throw std::invalid_argument("verify_result: reference shape mismatch");
        double worst = 0.0;
        if (clusters.empty()) {
            worst = subspace_sine(q, *reference, 0, q.cols());
        } else {
            for (const auto& cl : clusters) worst = std::max(worst, subspace_sine(q, *reference, cl.begin, cl.end));
        }
        s.max_subspace_sine = worst;
    }
    return s;
}

std::size_t RunMetrics::max_cluster() const noexcept {
    std::size_t m = 0;
    for (auto s : cluster_sizes) m = std::max(m, s);
    return m;
}

ExperimentResult run_pipeline(const RunConfig& cfg) {
    if (cfg.threads < 1) throw std::invalid_argument("run_pipeline: threads must be >= 1");
    auto t = generate(cfg.matrix);
    auto lams = bisect_eigenvalues(t, t.n(), cfg.tol);

    InverseIterationConfig icfg;
    icfg.backend = cfg.backend;
    icfg.rng_seed = cfg.seed;

    ThreadPool pool(cfg.threads);
    ThreadPool* p = cfg.threads > 1 ? &pool : nullptr;

    const auto start = std::chrono::steady_clock::now();
    auto vectors = inverse_iteration(t, lams, icfg, p);
    const auto stop = std::chrono::steady_clock::now();

    RunMetrics m;
    m.wall_time = std::chrono::duration<double>(stop - start).count();
    m.flops = vectors.counters.flops;
    m.sync_events = vectors.counters.sync_events;
    for (int it : vectors.iters) ++m.iters_histogram[it];
    for (const auto& cl : vectors.clusters) m.cluster_sizes.push_back(cl.size());
    m.nonconverged = vectors.nonconverged();
    m.restarts = vectors.restarts;

    m.max_residual = 0.0;
    const double tnorm = norm_estimate(t);
    for (double r : vectors.residuals) m.max_residual = std::max(m.max_residual, r / (tnorm > 0 ? tnorm : 1.0));
    m.max_orth_dev = std::numeric_limits<double>::quiet_NaN();
    if (cfg.verify) {
        m.max_orth_dev = orthogonality_deviation(vectors.q, p);
        m.verified = true;
    }
    return {std::move(t), std::move(lams), std::move(vectors), std::move(m)};
}

RunMetrics run_experiment(const RunConfig& cfg) {
    auto res = run_pipeline(cfg);
    if (!cfg.output_path.empty()) append_csv(cfg.output_path, cfg, res.metrics);
    return res.metrics;
}

bool metrics_within_bounds(const RunMetrics& m, std::size_t n) {
    const double nd = static_cast<double>(n);
    if (m.nonconverged != 0) return false;
    if (!(m.max_residual <= 1e3 * nd * kEps)) return false;
    if (m.verified && !(m.max_orth_dev <= 100.0 * nd * kEps)) return false;
    return true;
}

std::string csv_row(const RunConfig& cfg, const RunMetrics& m) {
    std::ostringstream os;
    os << to_string(cfg.matrix.family) << ',' << cfg.matrix.dimension() << ',' << to_string(cfg.backend) << ','
       << cfg.threads << ',' << cfg.seed << ',' << std::setprecision(6) << m.wall_time << ',' << m.flops << ','
       << m.sync_events << ',' << std::setprecision(3) << std::scientific << m.max_orth_dev << ','
       << m.max_residual << ',' << std::defaultfloat << m.nonconverged << ',' << m.max_cluster();
    return os.str();
}

void append_csv(const std::string& path, const RunConfig& cfg, const RunMetrics& m) {
    namespace fs = std::filesystem;
    std::error_code ec;
    const bool fresh = !fs::exists(path, ec) || fs::file_size(path, ec) == 0;
    std::ofstream out(path, std::ios::app);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    if (fresh) out << kCsvHeader << '\n';
    out << csv_row(cfg, m) << '\n';
    if (!out) throw std::runtime_error("write to " + path + " failed");
}

ComparisonReport compare_backends(const RunConfig& base, std::span<const Backend> backends) {
    if (backends.size() < 2) throw std::invalid_argument("compare_backends: need at least two backends");
    ComparisonReport rep;
    rep.base = base;
    for (Backend b : backends) {
        RunConfig cfg = base;
        cfg.backend = b;
        rep.backends.push_back(b);
        rep.runs.push_back(run_experiment(cfg));
    }
    return rep;
}

void print_comparison(std::ostream& os, const ComparisonReport& rep) {
    const auto& first = rep.runs.front();
    os << "matrix " << to_string(rep.base.matrix.family) << " n=" << rep.base.matrix.dimension()
       << " threads=" << rep.base.threads << " seed=" << rep.base.seed << '\n';
    os << std::left << std::setw(14) << "backend" << std::right << std::setw(11) << "time[s]" << std::setw(16)
       << "flops" << std::setw(12) << "syncs" << std::setw(12) << "orth_dev" << std::setw(12) << "t0/t"
       << std::setw(10) << "flops/f0" << std::setw(10) << "sync/s0" << '\n';
    for (std::size_t i = 0; i < rep.runs.size(); ++i) {
        const auto& r = rep.runs[i];
        auto ratio = [](double a, double b) { return b > 0 ? a / b : std::numeric_limits<double>::quiet_NaN(); };
        os << std::left << std::setw(14) << to_string(rep.backends[i]) << std::right << std::fixed
           << std::setprecision(4) << std::setw(11) << r.wall_time << std::setw(16) << r.flops << std::setw(12)
           << r.sync_events << std::scientific << std::setprecision(2) << std::setw(12) << r.max_orth_dev
           << std::fixed << std::setprecision(3) << std::setw(12) << ratio(first.wall_time, r.wall_time)
           << std::setw(10) << ratio(double(r.flops), double(first.flops)) << std::setw(10)
           << ratio(double(r.sync_events), double(first.sync_events)) << '\n';
        os.unsetf(std::ios::floatfield);
    }
}

void print_summary(std::ostream& os, const RunConfig& cfg, const RunMetrics& m) {
    os << "matrix        " << to_string(cfg.matrix.family) << " n=" << cfg.matrix.dimension() << '\n'
       << "backend       " << to_string(cfg.backend) << " threads=" << cfg.threads << " seed=" << cfg.seed << '\n'
       << "wall time     " << m.wall_time << " s\n"
       << "flops         " << m.flops << '\n'
       << "sync events   " << m.sync_events << '\n'
       << "clusters      " << m.cluster_sizes.size() << " (largest " << m.max_cluster() << ")\n"
       << "max residual  " << m.max_residual << " (scaled by ||T||)\n";
    if (m.verified) os << "orthogonality " << m.max_orth_dev << " (max |Q^T Q - I|)\n";
    os << "nonconverged  " << m.nonconverged << "  restarts " << m.restarts << '\n' << "iterations   ";
    for (const auto& [it, count] : m.iters_histogram) os << ' ' << it << ':' << count;
    os << '\n';
}

}  // namespace tinvit
