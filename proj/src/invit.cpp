#include "tinvit/invit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

#include "tinvit/kernels.hpp"
#include "tinvit/rng.hpp"

namespace tinvit {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxRestarts = 2;
// Clusters at least this large run alone with row-parallel kernels; smaller
// ones are spread over the pool one cluster per task.
constexpr std::size_t kRowParallelCluster = 64;

double effective_norm(const SymTridiagonal& t) {
    const double tn = norm_estimate(t);
    return tn > 0.0 ? tn : 1.0;
}

double inf_norm(std::span<const double> x) {
    double m = 0.0;
    for (double v : x) m = std::max(m, std::abs(v));
    return m;
}

double two_norm(std::span<const double> x) { return kernels::nrm2(nullptr, x); }

void normalize(std::vector<double>& x) {
    const double s = two_norm(x);
    for (double& v : x) v /= s;
}

std::vector<double> start_vector(std::uint64_t seed, std::size_t j, int attempt, std::size_t n) {
    CounterRng rng(seed, (static_cast<std::uint64_t>(attempt) << 40) | j);
    std::vector<double> v(n);
    for (double& x : v) x = rng.uniform_pm1();
    return v;
}

double residual_inf(const SymTridiagonal& t, std::span<const double> q, double lam) {
    const auto tq = matvec(t, q);
    double r = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) r = std::max(r, std::abs(tq[i] - lam * q[i]));
    return r;
}

// Shared state of one driver run; every cluster writes disjoint columns.
struct RunState {
    const SymTridiagonal& t;
    const EigenvalueEstimates& lams;
    const InverseIterationConfig& cfg;
    std::vector<double> shifts;
    double threshold;
    EigenvectorResult& out;
};

struct ColumnOutcome {
    int iters = 0;
    bool converged = false;
};

// Outer loop of one column: restarts with a fresh start vector when the
// orthogonalized iterate degenerates. `iterate` runs the repeat-until loop and
// returns nullopt on degeneracy.
template <class Iterate, class Rollback>
ColumnOutcome run_column(RunState& st, std::size_t j, std::size_t& restarts, Iterate&& iterate,
                         Rollback&& rollback) {
    const std::size_t n = st.t.n();
    for (int attempt = 0; attempt <= kMaxRestarts; ++attempt) {
        auto x = start_vector(st.cfg.rng_seed, j, attempt, n);
        if (auto done = iterate(x)) return *done;
        rollback();
        ++restarts;
    }
    throw std::runtime_error("inverse iteration: column " + std::to_string(j) +
                             " stays degenerate after restarts");
}

// Repeat-until loop shared by both drivers. `orthogonalize(y, k)` replaces the
// solve output by its orthogonalized version and returns the growth to test,
// or nullopt when it degenerates.
template <class Ortho>
std::optional<ColumnOutcome> repeat_until(RunState& st, const PivotedTriFactor& f, std::vector<double>& x,
                                          Ortho&& orthogonalize) {
    ColumnOutcome res;
    bool polishing = false;
    for (int k = 1; k <= st.cfg.max_iters; ++k) {
        normalize(x);
        auto y = solve_shifted(f, x);
        const auto growth = orthogonalize(y, k);
        if (!growth) return std::nullopt;
        x = std::move(y);
        res.iters = k;
        if (polishing) break;
        if (*growth >= st.threshold) {
            res.converged = true;
            polishing = true;
        }
    }
    normalize(x);
    return res;
}

void store_column(RunState& st, std::size_t j, const std::vector<double>& x, const ColumnOutcome& r) {
    st.out.q.set_col(j, x);
    st.out.iters[j] = r.iters;
    st.out.converged[j] = r.converged ? 1 : 0;
    st.out.residuals[j] = residual_inf(st.t, x, st.lams.values[j]);
}

void classical_cluster(RunState& st, ClusterRange cl, ThreadPool* pool, OpCounters& counters,
                       std::size_t& restarts) {
    const std::size_t n = st.t.n();
    for (std::size_t j = cl.begin; j < cl.end; ++j) {
        const std::size_t jc = j - cl.begin;
        const auto f = factor_shifted(st.t, st.shifts[j]);
        std::vector<double> x;
        auto iterate = [&](std::vector<double>& start) {
            auto r = repeat_until(st, f, start, [&](std::vector<double>& y, int) -> std::optional<double> {
                if (jc > 0) {
                    const double before = two_norm(y);
                    y = mgs_project(y, st.out.q, cl.begin, jc, &counters, pool);
                    if (!(two_norm(y) > static_cast<double>(n) * kEps * before)) return std::nullopt;
                }
                return inf_norm(y);
            });
            if (r) x = start;
            return r;
        };
        const auto r = run_column(st, j, restarts, iterate, [] {});
        store_column(st, j, x, r);
    }
}

template <class Store>
void cwy_cluster(RunState& st, ClusterRange cl, std::optional<Store>& store, OpCounters& counters,
                 std::size_t& restarts) {
    const std::size_t n = st.t.n();
    for (std::size_t j = cl.begin; j < cl.end; ++j) {
        const std::size_t jc = j - cl.begin;
        const auto f = factor_shifted(st.t, st.shifts[j]);
        std::vector<double> x;

        if (jc == 1) {
            // Y_1, T_1 from the accepted first vector of the cluster; its
            // orthonormal image is that vector itself, so it is not recomputed.
            const auto v1 = st.out.q.col(cl.begin);
            store->append(store->make(v1));
        }

        bool trial = false;
        auto iterate = [&](std::vector<double>& start) {
            auto r = repeat_until(st, f, start, [&](std::vector<double>& y, int) -> std::optional<double> {
                if (jc == 0) return inf_norm(y);
                if (trial) {
                    store->pop();
                    trial = false;
                }
                const double before = two_norm(y);
                const auto u_tail = store->apply_transpose_tail(y);
                ReflectorParts h;
                try {
                    h = store->make(u_tail, static_cast<double>(n) * kEps * before);
                } catch (const DegenerateVectorError&) {
                    return std::nullopt;
                }
                store->append(h);
                trial = true;
                y = store->extract_column(jc);
                // The orthogonalized iterate is c * q, so its growth is |c| ||q||_inf.
                return std::abs(h.c) * inf_norm(y);
            });
            if (r) x = start;
            return r;
        };
        auto rollback = [&] {
            if (trial) {
                store->pop();
                trial = false;
            }
        };
        const auto r = run_column(st, j, restarts, iterate, rollback);
        store_column(st, j, x, r);
    }
    if (store) counters += store->counters();
}

template <class ClusterFn>
EigenvectorResult drive(const SymTridiagonal& t, const EigenvalueEstimates& lams,
                        const InverseIterationConfig& cfg, ThreadPool* pool, ClusterFn&& run_cluster) {
    if (cfg.max_iters < 1) throw std::invalid_argument("inverse iteration: max_iters must be >= 1");
    if (cfg.growth_threshold && !(*cfg.growth_threshold > 0.0))
        throw std::invalid_argument("inverse iteration: growth_threshold must be positive");
    if (lams.values.size() != lams.m || lams.n != t.n() || lams.m == 0 || lams.m > t.n())
        throw std::invalid_argument("inverse iteration: eigenvalue estimates do not match T");

    const std::size_t n = t.n();
    const std::size_t m = lams.m;
    const double tnorm = effective_norm(t);

    EigenvectorResult out;
    out.q = Matrix(n, m);
    out.iters.assign(m, 0);
    out.residuals.assign(m, 0.0);
    out.converged.assign(m, 0);
    out.shifts = perturb_degenerate(lams.values, tnorm, n, cfg.perturb_factor);
    out.clusters = find_clusters(lams.values, tnorm);

    RunState st{t, lams, cfg, out.shifts,
                cfg.growth_threshold.value_or(default_growth_threshold(n, tnorm)), out};

    const std::size_t nc = out.clusters.size();
    std::vector<OpCounters> counters(nc);
    std::vector<std::size_t> restarts(nc, 0);

    const bool cluster_parallel = pool != nullptr && pool->size() > 1 && nc > 1;
    std::vector<std::size_t> small;
    for (std::size_t c = 0; c < nc; ++c) {
        const auto cl = out.clusters[c];
        if (cluster_parallel && cl.size() < kRowParallelCluster)
            small.push_back(c);
        else
            run_cluster(st, cl, pool, counters[c], restarts[c]);
    }
    if (!small.empty()) {
        pool->run(small.size(), [&](std::size_t i) {
            const std::size_t c = small[i];
            run_cluster(st, out.clusters[c], nullptr, counters[c], restarts[c]);
        });
    }
    for (std::size_t c = 0; c < nc; ++c) {
        out.counters += counters[c];
        out.restarts += restarts[c];
    }
    return out;
}

}  // namespace

std::string_view to_string(Backend b) noexcept {
    switch (b) {
        case Backend::mgs: return "mgs";
        case Backend::householder: return "householder";
        case Backend::cwy_ordinary: return "cwy_ordinary";
        case Backend::cwy_packed: return "cwy_packed";
    }
    return "?";
}

Backend parse_backend(std::string_view name) {
    for (Backend b : {Backend::mgs, Backend::householder, Backend::cwy_ordinary, Backend::cwy_packed})
        if (to_string(b) == name) return b;
    throw std::invalid_argument("unknown backend: " + std::string(name));
}

bool ClusterTracker::advance(std::size_t j, std::span<const double> lams) {
    if (j > 0 && std::abs(lams[j] - lams[j - 1]) <= threshold) {
        jc = j - j1;
        return true;
    }
    j1 = j;
    jc = 0;
    return false;
}

std::size_t EigenvectorResult::nonconverged() const noexcept {
    return static_cast<std::size_t>(std::count(converged.begin(), converged.end(), 0));
}

bool detect_cluster(double lam_j, double lam_prev, double tnorm) noexcept {
    return std::abs(lam_j - lam_prev) <= 1e-3 * tnorm;
}

std::vector<ClusterRange> find_clusters(std::span<const double> lams, double tnorm) {
    std::vector<ClusterRange> out;
    ClusterTracker tracker(tnorm);
    for (std::size_t j = 0; j < lams.size(); ++j) {
        if (!tracker.advance(j, lams)) out.push_back({j, j});
        out.back().end = j + 1;
    }
    return out;
}

std::vector<double> perturb_degenerate(std::span<const double> lams, double tnorm, std::size_t n,
                                       double factor) {
    std::vector<double> out(lams.begin(), lams.end());
    const double sep = factor * static_cast<double>(n) * kEps * tnorm;
    for (std::size_t j = 1; j < out.size(); ++j) {
        if (out[j] - out[j - 1] < sep) out[j] = out[j - 1] + sep;
        // Rounding can swallow sep next to large values.
        if (out[j] <= out[j - 1]) out[j] = std::nextafter(out[j - 1], std::numeric_limits<double>::infinity());
    }
    return out;
}

double default_growth_threshold(std::size_t n, double tnorm) noexcept {
    return 1.0 / (100.0 * static_cast<double>(n) * kEps * (tnorm > 0.0 ? tnorm : 1.0));
}

bool accept_test(std::span<const double> x, double threshold) noexcept { return inf_norm(x) >= threshold; }

EigenvectorResult classical_inverse_iteration(const SymTridiagonal& t, const EigenvalueEstimates& lams,
                                              const InverseIterationConfig& cfg, ThreadPool* pool) {
    if (cfg.backend != Backend::mgs)
        throw std::invalid_argument("classical_inverse_iteration: backend must be mgs");
    return drive(t, lams, cfg, pool,
                 [](RunState& st, ClusterRange cl, ThreadPool* p, OpCounters& c, std::size_t& r) {
                     classical_cluster(st, cl, p, c, r);
                 });
}

EigenvectorResult cwy_inverse_iteration(const SymTridiagonal& t, const EigenvalueEstimates& lams,
                                        const InverseIterationConfig& cfg, ThreadPool* pool) {
    switch (cfg.backend) {
        case Backend::cwy_ordinary:
        case Backend::cwy_packed: {
            const auto variant =
                cfg.backend == Backend::cwy_packed ? CwyVariant::packed : CwyVariant::ordinary;
            return drive(t, lams, cfg, pool,
                         [variant](RunState& st, ClusterRange cl, ThreadPool* p, OpCounters& c,
                                   std::size_t& r) {
                             std::optional<ReflectorAccumulator> acc;
                             if (cl.size() > 1) acc.emplace(st.t.n(), cl.size(), variant, p);
                             cwy_cluster(st, cl, acc, c, r);
                         });
        }
        case Backend::householder:
            return drive(t, lams, cfg, pool,
                         [](RunState& st, ClusterRange cl, ThreadPool* p, OpCounters& c, std::size_t& r) {
                             std::optional<HouseholderSequence> seq;
                             if (cl.size() > 1) seq.emplace(st.t.n(), cl.size(), p);
                             cwy_cluster(st, cl, seq, c, r);
                         });
        case Backend::mgs:
            break;
    }
    throw std::invalid_argument("cwy_inverse_iteration: backend must be cwy_ordinary, cwy_packed or householder");
}

EigenvectorResult inverse_iteration(const SymTridiagonal& t, const EigenvalueEstimates& lams,
                                    const InverseIterationConfig& cfg, ThreadPool* pool) {
    if (cfg.backend == Backend::mgs) return classical_inverse_iteration(t, lams, cfg, pool);
    return cwy_inverse_iteration(t, lams, cfg, pool);
}

}  // namespace tinvit
