#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tinvit/dense.hpp"
#include "tinvit/invit.hpp"
#include "tinvit/matgen.hpp"

namespace tinvit {

/// Largest |(Q^T Q - I)_{ij}|.
double orthogonality_deviation(const Matrix& q, ThreadPool* pool = nullptr);

/// Frobenius norm of (I - B B^T) A over columns [begin, end) of A and B, both
/// with orthonormal columns. It bounds the sine of the largest principal angle
/// between the two column spaces from above.
double subspace_sine(const Matrix& a, const Matrix& b, std::size_t begin, std::size_t end);

struct VerificationSummary {
    double max_orth_dev = 0.0;
    double max_residual = 0.0;  // max_j ||T q_j - lambda_j q_j||_inf / ||T||
    std::optional<double> max_subspace_sine;
};

/// Quality of Q against T and the eigenvalues. With a reference Q, also the
/// largest per-cluster subspace sine.
VerificationSummary verify_result(const SymTridiagonal& t, std::span<const double> lams, const Matrix& q,
                                  const Matrix* reference = nullptr,
                                  std::span<const ClusterRange> clusters = {}, ThreadPool* pool = nullptr);

struct RunMetrics {
    double wall_time = 0.0;  // inverse-iteration phase only
    std::uint64_t flops = 0;
    std::uint64_t sync_events = 0;
    double max_orth_dev = 0.0;   // NaN when not verified
    double max_residual = 0.0;   // scaled by ||T||
    std::map<int, std::size_t> iters_histogram;
    std::vector<std::size_t> cluster_sizes;
    std::size_t nonconverged = 0;
    std::size_t restarts = 0;
    bool verified = false;

    std::size_t max_cluster() const noexcept;
};

struct RunConfig {
    MatrixSpec matrix;
    Backend backend = Backend::cwy_packed;
    std::size_t threads = 1;
    std::uint64_t seed = 1;
    std::optional<double> tol;
    std::string output_path;
    bool verify = false;
};

/// Everything one pipeline run produces.
struct ExperimentResult {
    SymTridiagonal t;
    EigenvalueEstimates lams;
    EigenvectorResult vectors;
    RunMetrics metrics;
};

/// Matrix generation, bisection for all eigenvalues, inverse iteration with
/// the configured backend and optional verification. Writes nothing.
ExperimentResult run_pipeline(const RunConfig& cfg);

/// run_pipeline plus one CSV row appended to cfg.output_path when set.
RunMetrics run_experiment(const RunConfig& cfg);

/// Thresholds checked by a verifying run: orthogonality <= 100 n eps,
/// scaled residual <= 1000 n eps, every column converged.
bool metrics_within_bounds(const RunMetrics& m, std::size_t n);

inline constexpr const char* kCsvHeader =
    "family,n,backend,threads,seed,wall_s,flops,sync_events,max_orth_dev,max_residual,nonconverged,"
    "max_cluster";

std::string csv_row(const RunConfig& cfg, const RunMetrics& m);

/// Appends a row, writing the header first when the file is new or empty.
/// Throws std::runtime_error on I/O failure.
void append_csv(const std::string& path, const RunConfig& cfg, const RunMetrics& m);

struct ComparisonReport {
    RunConfig base;
    std::vector<Backend> backends;
    std::vector<RunMetrics> runs;
};

/// Runs each backend on the same matrix and seed. Needs at least two backends.
ComparisonReport compare_backends(const RunConfig& base, std::span<const Backend> backends);

/// Table with one row per backend and ratios against the first one
/// (time ratio t_first / t_backend, flop and sync ratios backend / first).
void print_comparison(std::ostream& os, const ComparisonReport& report);

/// Human-readable summary of one run.
void print_summary(std::ostream& os, const RunConfig& cfg, const RunMetrics& m);

}  // namespace tinvit
