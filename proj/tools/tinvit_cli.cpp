// Command-line driver: bisection -> inverse iteration -> verification, with
// timing, flop and sync instrumentation.
//
//   tinvit run --family type2 --n 500 --backend cwy_packed --verify
//   tinvit compare --family glued --blocks 5 --backends mgs,cwy_packed

#include <cstdlib>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tinvit/bench.hpp"
#include "tinvit/parallel.hpp"

namespace {

constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Symmetric tridiagonal eigenvectors by inverse iteration"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value file; command-line flags override it");

    std::string family = "type2";
    std::size_t n = 100;
    std::size_t blocks = 5;
    double delta = 1e-4;
    std::string backend = "cwy_packed";
    std::vector<std::string> backends{"mgs", "cwy_packed"};
    std::size_t threads = tinvit::default_thread_count();
    std::uint64_t seed = 1;
    double tol = 0.0;
    std::string out;
    bool verify = false;

    app.add_option("--family", family, "type1 | type2 | glued")
        ->check(CLI::IsMember({"type1", "type2", "glued"}));
    app.add_option("--n", n, "dimension for type1/type2")->check(CLI::PositiveNumber);
    app.add_option("--blocks", blocks, "number of 21x21 blocks for glued")->check(CLI::PositiveNumber);
    app.add_option("--delta", delta, "glue value for glued, in (0,1)")->check(CLI::Range(0.0, 1.0));
    app.add_option("--backend", backend, "mgs | householder | cwy_ordinary | cwy_packed")
        ->check(CLI::IsMember({"mgs", "householder", "cwy_ordinary", "cwy_packed"}));
    app.add_option("--threads", threads, "worker threads (env TINVIT_THREADS)")
        ->envname("TINVIT_THREADS")
        ->check(CLI::PositiveNumber);
    app.add_option("--seed", seed, "random seed");
    app.add_option("--tol", tol, "bisection half-width (default eps*||T||*n)")->check(CLI::NonNegativeNumber);
    app.add_option("--out", out, "CSV file to append results to");
    app.add_flag("--verify", verify, "check orthogonality and residuals; exit 1 on failure");

    auto* run = app.add_subcommand("run", "run one backend");
    auto* compare = app.add_subcommand("compare", "run several backends on the same matrix");
    compare->add_option("--backends", backends, "comma-separated backends, first is the baseline")
        ->delimiter(',')
        ->check(CLI::IsMember({"mgs", "householder", "cwy_ordinary", "cwy_packed"}));
    run->fallthrough();
    compare->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    tinvit::RunConfig cfg;
    try {
        cfg.matrix.family = tinvit::parse_family(family);
        cfg.matrix.size = cfg.matrix.family == tinvit::MatrixFamily::glued_wilkinson ? blocks : n;
        cfg.matrix.seed = seed;
        cfg.matrix.delta = delta;
        cfg.backend = tinvit::parse_backend(backend);
        cfg.threads = threads;
        cfg.seed = seed;
        if (tol > 0.0) cfg.tol = tol;
        cfg.output_path = out;
        cfg.verify = verify;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        const std::size_t dim = cfg.matrix.dimension();
        if (*run) {
            const auto m = tinvit::run_experiment(cfg);
            tinvit::print_summary(std::cout, cfg, m);
            if (verify && !tinvit::metrics_within_bounds(m, dim)) {
                std::cout << "verification FAILED\n";
                return kExitVerifyFailed;
            }
            return EXIT_SUCCESS;
        }

        if (backends.size() < 2) {
            std::cerr << "error: compare needs at least two backends\n";
            return kExitUsage;
        }
        std::vector<tinvit::Backend> list;
        for (const auto& b : backends) list.push_back(tinvit::parse_backend(b));
        const auto rep = tinvit::compare_backends(cfg, list);
        tinvit::print_comparison(std::cout, rep);
        if (verify) {
            for (std::size_t i = 0; i < rep.runs.size(); ++i) {
                if (!tinvit::metrics_within_bounds(rep.runs[i], dim)) {
                    std::cout << "verification FAILED for " << tinvit::to_string(rep.backends[i]) << '\n';
                    return kExitVerifyFailed;
                }
            }
        }
        return EXIT_SUCCESS;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitVerifyFailed;
    }
}
