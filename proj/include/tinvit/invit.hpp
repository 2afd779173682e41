#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "tinvit/dense.hpp"
#include "tinvit/ortho.hpp"
#include "tinvit/parallel.hpp"
#include "tinvit/spectrum.hpp"
#include "tinvit/tridiag.hpp"

namespace tinvit {

enum class Backend { mgs, householder, cwy_ordinary, cwy_packed };

std::string_view to_string(Backend b) noexcept;
/// Throws std::invalid_argument for unknown names.
Backend parse_backend(std::string_view name);

struct InverseIterationConfig {
    int max_iters = 5;
    /// Growth ||x||_inf of the solve output (unit right-hand side) needed to
    /// accept a column. Unset means default_growth_threshold(n, ||T||).
    std::optional<double> growth_threshold;
    std::uint64_t rng_seed = 1;
    Backend backend = Backend::cwy_packed;
    /// Degenerate shifts are separated by perturb_factor * n * eps * ||T||.
    double perturb_factor = 1.0;
};

/// Peters-Wilkinson cluster state: j1 is the first index of the current
/// cluster and jc = j - j1 the position of j inside it.
struct ClusterTracker {
    std::size_t j1 = 0;
    std::size_t jc = 0;
    double threshold = 0.0;

    explicit ClusterTracker(double tnorm) : threshold(1e-3 * tnorm) {}

    /// Moves to index j. Returns true when j continues the current cluster;
    /// otherwise j starts a new one (j1 = j, jc = 0).
    bool advance(std::size_t j, std::span<const double> lams);
};

/// Half-open index range [begin, end) of one eigenvalue cluster.
struct ClusterRange {
    std::size_t begin = 0;
    std::size_t end = 0;
    std::size_t size() const noexcept { return end - begin; }
};

struct EigenvectorResult {
    Matrix q;                         // n x m, unit columns
    std::vector<int> iters;           // iterations per column, polish included
    std::vector<double> residuals;    // ||T q_j - lambda_j q_j||_inf
    std::vector<char> converged;      // growth test passed
    std::vector<double> shifts;       // shifts actually used (after separation)
    std::vector<ClusterRange> clusters;
    std::size_t restarts = 0;
    OpCounters counters;              // orthogonalization kernels only

    std::size_t nonconverged() const noexcept;
};

/// |lam_j - lam_prev| <= 1e-3 * tnorm.
bool detect_cluster(double lam_j, double lam_prev, double tnorm) noexcept;

/// Clusters of consecutive eigenvalues under detect_cluster.
std::vector<ClusterRange> find_clusters(std::span<const double> lams, double tnorm);

/// Forces lams[j] >= lams[j-1] + factor * n * eps * tnorm, giving a strictly
/// increasing list. `lams` must be ascending.
std::vector<double> perturb_degenerate(std::span<const double> lams, double tnorm, std::size_t n,
                                       double factor = 1.0);

/// 1 / (100 n eps ||T||).
double default_growth_threshold(std::size_t n, double tnorm) noexcept;

/// ||x||_inf >= threshold.
bool accept_test(std::span<const double> x, double threshold) noexcept;

/// Inverse iteration with MGS reorthogonalization inside clusters.
EigenvectorResult classical_inverse_iteration(const SymTridiagonal& t, const EigenvalueEstimates& lams,
                                              const InverseIterationConfig& cfg,
                                              ThreadPool* pool = nullptr);

/// Inverse iteration with Householder reorthogonalization kept in compact WY
/// form per cluster (cwy_ordinary, cwy_packed), or as a plain reflector
/// sequence (householder).
EigenvectorResult cwy_inverse_iteration(const SymTridiagonal& t, const EigenvalueEstimates& lams,
                                        const InverseIterationConfig& cfg, ThreadPool* pool = nullptr);

/// Dispatches on cfg.backend.
EigenvectorResult inverse_iteration(const SymTridiagonal& t, const EigenvalueEstimates& lams,
                                    const InverseIterationConfig& cfg, ThreadPool* pool = nullptr);

}  // namespace tinvit
