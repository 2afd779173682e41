// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any hard criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "oracle.hpp"
#include "tinvit/bench.hpp"
#include "tinvit/invit.hpp"
#include "tinvit/matgen.hpp"
#include "tinvit/ortho.hpp"
#include "tinvit/spectrum.hpp"

using tinvit::Backend;
using tinvit::CwyVariant;
using tinvit::Matrix;
using tinvit::OpCounters;

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Outcome {
    bool pass = true;
    bool soft = false;  // failure downgrades to a warning
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

class Gate {
public:
    void run(int id, const std::string& name, double time_limit, const std::function<void(Outcome&)>& body) {
        Outcome o;
        const auto start = std::chrono::steady_clock::now();
        try {
            body(o);
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << " [exception: " << e.what() << "]";
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        o.detail << " time=" << secs << "s";
        o.require(secs < time_limit, "runtime < " + std::to_string(static_cast<int>(time_limit)) + "s");
        const char* tag = o.pass ? "PASS" : (o.soft ? "WARN" : "FAIL");
        std::printf("criterion %2d: %s  %s:%s\n", id, tag, name.c_str(), o.detail.str().c_str());
        std::fflush(stdout);
        if (!o.pass && !o.soft) ++hard_failures_;
    }

    int hard_failures() const { return hard_failures_; }

private:
    int hard_failures_ = 0;
};

std::vector<double> tail_of(std::span<const double> v, std::size_t from) { return {v.begin() + from, v.end()}; }

double max_abs(const Eigen::MatrixXd& a) { return a.cwiseAbs().maxCoeff(); }

// Compact WY identity: I - Y T Y^T equals H_1 ... H_m.
void wy_identity(Outcome& o) {
    std::mt19937_64 gen(101);
    std::uniform_int_distribution<std::size_t> pick_n(1, 20);
    double worst = 0.0;
    for (int rep = 0; rep < 200; ++rep) {
        const std::size_t n = pick_n(gen);
        const std::size_t m = std::uniform_int_distribution<std::size_t>(1, n)(gen);
        const auto variant = rep % 2 == 0 ? CwyVariant::ordinary : CwyVariant::packed;
        const Matrix v = oracle::from_dense(oracle::random_matrix(n, m, gen));
        tinvit::ReflectorAccumulator acc(n, m, variant);
        Eigen::MatrixXd prod = Eigen::MatrixXd::Identity(n, n);
        for (std::size_t j = 0; j < m; ++j) {
            const auto u = j == 0 ? tail_of(v.col(0), 0) : acc.apply_transpose_tail(v.col(j));
            const auto h = acc.make(u);
            acc.append(h);
            prod = prod * oracle::reflector_dense(h, n);
        }
        worst = std::max(worst, max_abs(oracle::cwy_dense(acc) - prod));
    }
    o.detail << " max|I-YTY^T - H1..Hm|=" << worst;
    o.require(worst <= 1e-13, "entrywise <= 1e-13");
}

// Ordinary and packed variants give the same Q up to column signs.
void variant_equivalence(Outcome& o) {
    std::mt19937_64 gen(202);
    double worst_col = 0.0;
    double worst_sine = 0.0;
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 200)(gen);
        const std::size_t m = std::uniform_int_distribution<std::size_t>(1, std::min<std::size_t>(n, 50))(gen);
        const Matrix v = oracle::from_dense(oracle::random_matrix(n, m, gen));
        const auto qo = oracle::dense(tinvit::cwy_orthogonalize(v, CwyVariant::ordinary));
        const auto qp = oracle::dense(tinvit::cwy_orthogonalize(v, CwyVariant::packed));
        for (Eigen::Index j = 0; j < qo.cols(); ++j) {
            const double s = qo.col(j).dot(qp.col(j)) < 0.0 ? -1.0 : 1.0;
            worst_col = std::max(worst_col, (qo.col(j) - s * qp.col(j)).cwiseAbs().maxCoeff());
        }
        worst_sine = std::max(worst_sine, oracle::max_principal_sine(qo, qp));
    }
    o.detail << " max column diff=" << worst_col << " max subspace sine=" << worst_sine;
    o.require(worst_col <= 1e-13, "columns equal up to sign within 1e-13");
    o.require(worst_sine <= 1e-13, "subspaces equal");
}

// 2/||y||^2 == 1/(c^2 - u1 c).
void t_formula(Outcome& o) {
    std::mt19937_64 gen(303);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_int_distribution<std::size_t> pick_n(1, 32);
    double worst = 0.0;
    std::vector<double> v;
    for (int rep = 0; rep < 100000; ++rep) {
        v.resize(pick_n(gen));
        for (auto& x : v) x = u(gen);
        const double a = tinvit::make_reflector(v, 0, tinvit::TFormula::two_over_norm).t;
        const double b = tinvit::make_reflector(v, 0, tinvit::TFormula::reduced).t;
        worst = std::max(worst, std::abs(a - b) / b);
    }
    o.detail << " max relative difference=" << worst;
    o.require(worst <= 1e-14, "|2/||y||^2 - 1/(c^2-u1 c)| <= 1e-14 t");
}

// Orthogonality against the condition number of V.
void orthogonality_vs_conditioning(Outcome& o) {
    std::mt19937_64 gen(404);
    const std::size_t n = 200, m = 50;
    const double bound = 100.0 * n * kEps;
    double mgs_at_max = 0.0, cwy_at_max = 0.0;
    for (double kappa : {1e2, 1e4, 1e6, 1e8}) {
        const Matrix v = oracle::from_dense(oracle::conditioned_matrix(n, m, kappa, gen));
        const double dm = oracle::orth_dev(oracle::dense(tinvit::mgs_orthogonalize(v)));
        const double dh = oracle::orth_dev(oracle::dense(tinvit::householder_orthogonalize(v)));
        const double dob = oracle::orth_dev(oracle::dense(tinvit::cwy_orthogonalize(v, CwyVariant::ordinary)));
        const double dp = oracle::orth_dev(oracle::dense(tinvit::cwy_orthogonalize(v, CwyVariant::packed)));
        o.detail << " k=" << kappa << "{mgs=" << dm << " hh=" << dh << " ord=" << dob << " pk=" << dp << "}";
        o.require(dh <= bound && dob <= bound && dp <= bound, "Householder/cWY <= 100 n eps at kappa " +
                                                                   std::to_string(kappa));
        if (kappa == 1e8) {
            mgs_at_max = dm;
            cwy_at_max = std::max(dob, dp);
        }
    }
    o.require(mgs_at_max >= 1e3 * cwy_at_max, "MGS >= 1e3 x cWY at kappa 1e8");
}

// Flop counts at m = n.
void flop_scaling(Outcome& o) {
    std::mt19937_64 gen(505);
    for (std::size_t n : {100u, 200u, 400u}) {
        const Matrix v = oracle::from_dense(oracle::random_matrix(n, n, gen));
        OpCounters ord, pk, mgs;
        tinvit::cwy_orthogonalize(v, CwyVariant::ordinary, &ord);
        tinvit::cwy_orthogonalize(v, CwyVariant::packed, &pk);
        tinvit::mgs_orthogonalize(v, &mgs);
        const double r_pk = static_cast<double>(pk.flops) / static_cast<double>(ord.flops);
        const double r_mgs = static_cast<double>(mgs.flops) / static_cast<double>(pk.flops);
        const double nd = static_cast<double>(n);
        const double theory = 2.0 * nd * nd * nd / (4.0 * nd * nd * nd - nd * nd * nd);
        o.detail << " n=" << n << "{pk/ord=" << r_pk << " mgs/pk=" << r_mgs << " theory=" << theory << "}";
        o.require(r_pk >= 0.55 && r_pk <= 0.65, "packed/ordinary in [0.55,0.65] at n=" + std::to_string(n));
        o.require(std::abs(r_mgs / theory - 1.0) <= 0.15, "MGS/packed within 15% at n=" + std::to_string(n));
    }
}

// Synchronization counts per cluster of size m.
void sync_counts(Outcome& o) {
    std::mt19937_64 gen(606);
    const std::size_t n = 400;
    for (std::size_t m : {50u, 100u, 200u}) {
        const Matrix v = oracle::from_dense(oracle::random_matrix(n, m, gen));
        OpCounters mgs, ord, pk, hh;
        tinvit::mgs_orthogonalize(v, &mgs);
        tinvit::cwy_orthogonalize(v, CwyVariant::ordinary, &ord);
        tinvit::cwy_orthogonalize(v, CwyVariant::packed, &pk);
        tinvit::householder_orthogonalize(v, &hh);
        o.detail << " m=" << m << "{mgs=" << mgs.sync_events << " ord=" << ord.sync_events
                 << " pk=" << pk.sync_events << " hh=" << hh.sync_events << "}";
        const auto ms = std::to_string(m);
        o.require(mgs.sync_events == m * (m - 1) / 2, "MGS = m(m-1)/2 at m=" + ms);
        o.require(ord.sync_events == 9 * m - 5, "ordinary = 9m-5 at m=" + ms);
        o.require(pk.sync_events == 10 * m - 6, "packed = 10m-6 at m=" + ms);
        o.require(ord.sync_events <= 10 * m && pk.sync_events <= 10 * m, "cWY <= 10 m at m=" + ms);
    }
}

// Glued Wilkinson, 5 blocks, delta 1e-4.
void glued_end_to_end(Outcome& o) {
    const auto t = tinvit::gen_glued_wilkinson(5, 1e-4);
    const std::size_t n = t.n();
    const double tnorm = tinvit::norm_estimate(t);
    const auto es = oracle::eig(t);
    const auto lams = tinvit::bisect_eigenvalues(t, n);
    for (Backend b : {Backend::mgs, Backend::householder, Backend::cwy_ordinary, Backend::cwy_packed}) {
        tinvit::InverseIterationConfig cfg;
        cfg.backend = b;
        const auto r = tinvit::inverse_iteration(t, lams, cfg);
        const auto q = oracle::dense(r.q);
        const double orth = oracle::orth_dev(q);
        double res = 0.0;
        for (double x : r.residuals) res = std::max(res, x / tnorm);
        int max_it = 0;
        for (int it : r.iters) max_it = std::max(max_it, it);
        double sine = 0.0;
        for (const auto& cl : r.clusters)
            sine = std::max(sine, oracle::max_principal_sine(q.middleCols(cl.begin, cl.size()),
                                                             es.eigenvectors().middleCols(cl.begin, cl.size())));
        const std::string name(tinvit::to_string(b));
        o.detail << " " << name << "{orth=" << orth << " res=" << res << " iters<=" << max_it
                 << " nonconv=" << r.nonconverged() << " sine=" << sine << "}";
        const double orth_bound = b == Backend::mgs ? 100.0 * n * kEps : 1e-12;
        o.require(orth <= orth_bound, name + " orthogonality");
        o.require(res <= 1e3 * n * kEps, name + " residual <= 1e3 n eps");
        o.require(r.nonconverged() == 0 && max_it <= 5, name + " converged within 5 iterations");
        o.require(sine <= 1e-8, name + " cluster principal angles <= 1e-8");
    }
    const auto clusters = tinvit::find_clusters(lams.values, tnorm);
    std::size_t sized5 = 0;
    for (const auto& cl : clusters) sized5 += cl.size() == 5 ? 1 : 0;
    o.detail << " clusters=" << clusters.size() << " (of size 5: " << sized5 << ")";
    o.require(clusters.size() == 21 && sized5 == 21, "21 clusters of 5 under the 1e-3 ||T|| rule");
}

// Type-2 analytic eigenvalues and residuals.
void type2_analytic(Outcome& o) {
    const std::size_t n = 100;
    const auto t = tinvit::gen_type2(n);
    const double tol = tinvit::default_bisection_tolerance(t);
    const auto lams = tinvit::bisect_eigenvalues(t, n);
    double worst = 0.0;
    for (std::size_t k = 0; k < n; ++k)
        worst = std::max(worst, std::abs(lams.values[k] - oracle::type2_eigenvalue(n, k + 1)));
    const double tnorm = tinvit::norm_estimate(t);
    double res = 0.0;
    for (Backend b : {Backend::mgs, Backend::cwy_packed}) {
        const auto r = tinvit::inverse_iteration(t, lams, {.backend = b});
        for (double x : r.residuals) res = std::max(res, x);
    }
    o.detail << " max|lambda - analytic|=" << worst << " tol=" << tol << " max residual=" << res
             << " bound=" << 1e3 * n * kEps * tnorm;
    o.require(worst <= tol, "eigenvalues within tol");
    o.require(res <= 1e3 * n * kEps * tnorm, "residuals <= 1e3 n eps ||T||");
}

// cwy_packed faster than mgs on Type-2, n = 2000, 8 threads.
void desk_trend(Outcome& o) {
    o.soft = true;
    tinvit::RunConfig cfg;
    cfg.matrix.family = tinvit::MatrixFamily::type2;
    cfg.matrix.size = 2000;
    cfg.threads = 8;
    cfg.backend = Backend::mgs;
    const auto mgs = tinvit::run_experiment(cfg);
    cfg.backend = Backend::cwy_packed;
    const auto cwy = tinvit::run_experiment(cfg);
    o.detail << " hardware threads=" << std::thread::hardware_concurrency() << " t_mgs=" << mgs.wall_time
             << "s t_cwy=" << cwy.wall_time << "s t/t_cwy=" << mgs.wall_time / cwy.wall_time
             << " largest cluster=" << cwy.max_cluster();
    double model_mgs = 0.0, model_cwy = 0.0;
    for (std::size_t m : cwy.cluster_sizes) {
        const double md = static_cast<double>(m), nd = 2000.0;
        model_mgs += 2.0 * md * md * nd;
        model_cwy += 4.0 * md * md * nd - md * md * md;
    }
    const double flop_ratio = static_cast<double>(mgs.flops) / static_cast<double>(cwy.flops);
    const double model_ratio = model_mgs / model_cwy;
    o.detail << " flops mgs/cwy=" << flop_ratio << " model=" << model_ratio;
    o.require(std::abs(flop_ratio / model_ratio - 1.0) <= 0.15, "flop ratio within 15% of 2m^2n : 4m^2n - m^3");
    o.require(cwy.wall_time < mgs.wall_time, "t_cwy < t_mgs");
}

// Bit-identical repeats with threads = 1.
void determinism(Outcome& o) {
    struct Case {
        tinvit::MatrixSpec spec;
        Backend backend;
    };
    std::vector<Case> cases;
    for (Backend b : {Backend::mgs, Backend::householder, Backend::cwy_ordinary, Backend::cwy_packed}) {
        cases.push_back({{tinvit::MatrixFamily::glued_wilkinson, 5, 1, 1e-4}, b});
        cases.push_back({{tinvit::MatrixFamily::type1, 300, 17, 1e-4}, b});
        cases.push_back({{tinvit::MatrixFamily::type2, 300, 1, 1e-4}, b});
    }
    std::size_t identical = 0;
    for (const auto& c : cases) {
        tinvit::RunConfig cfg;
        cfg.matrix = c.spec;
        cfg.backend = c.backend;
        cfg.threads = 1;
        const auto a = tinvit::run_pipeline(cfg);
        const auto b = tinvit::run_pipeline(cfg);
        const bool same = a.vectors.q == b.vectors.q && a.metrics.flops == b.metrics.flops &&
                          a.metrics.sync_events == b.metrics.sync_events;
        identical += same ? 1 : 0;
        o.require(same, std::string(tinvit::to_string(c.spec.family)) + "/" +
                            std::string(tinvit::to_string(c.backend)) + " repeat differs");
    }
    o.detail << " identical repeats " << identical << "/" << cases.size();
}

}  // namespace

int main() {
    Gate gate;
    gate.run(1, "compact WY identity", 5, wy_identity);
    gate.run(2, "ordinary/packed equivalence", 10, variant_equivalence);
    gate.run(3, "t-formula identity", 2, t_formula);
    gate.run(4, "orthogonality vs conditioning", 10, orthogonality_vs_conditioning);
    gate.run(5, "flop-count scaling", 30, flop_scaling);
    gate.run(6, "synchronization counts", 10, sync_counts);
    gate.run(7, "glued Wilkinson end to end", 5, glued_end_to_end);
    gate.run(8, "Type-2 analytic", 2, type2_analytic);
    gate.run(9, "desk-scale trend (environment-sensitive)", 300, desk_trend);
    gate.run(10, "determinism", 60, determinism);
    std::printf("hard failures: %d\n", gate.hard_failures());
    return gate.hard_failures() == 0 ? 0 : 1;
}
