#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <memory>

#include "tinvit/bench.hpp"
#include "tinvit/invit.hpp"
#include "tinvit/matgen.hpp"
#include "tinvit/ortho.hpp"
#include "tinvit/spectrum.hpp"

namespace py = pybind11;

namespace {

using FArray = py::array_t<double, py::array::f_style | py::array::forcecast>;

tinvit::Matrix to_matrix(const FArray& a) {
    if (a.ndim() != 2) throw std::invalid_argument("expected a 2-D array");
    tinvit::Matrix m(static_cast<std::size_t>(a.shape(0)), static_cast<std::size_t>(a.shape(1)));
    std::copy_n(a.data(), m.rows() * m.cols(), m.data());
    return m;
}

py::array_t<double> to_numpy(const tinvit::Matrix& m) {
    py::array_t<double, py::array::f_style> out({m.rows(), m.cols()});
    std::copy_n(m.data(), m.rows() * m.cols(), out.mutable_data());
    return out;
}

template <class T>
py::array_t<T> to_numpy(const std::vector<T>& v) {
    py::array_t<T> out(v.size());
    std::copy(v.begin(), v.end(), out.mutable_data());
    return out;
}

std::unique_ptr<tinvit::ThreadPool> make_pool(std::size_t threads) {
    if (threads < 1) throw std::invalid_argument("threads must be >= 1");
    return threads > 1 ? std::make_unique<tinvit::ThreadPool>(threads) : nullptr;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Symmetric tridiagonal eigenvectors by inverse iteration";

    py::register_exception<tinvit::DegenerateVectorError>(m, "DegenerateVectorError", PyExc_RuntimeError);

    py::enum_<tinvit::Backend>(m, "Backend")
        .value("mgs", tinvit::Backend::mgs)
        .value("householder", tinvit::Backend::householder)
        .value("cwy_ordinary", tinvit::Backend::cwy_ordinary)
        .value("cwy_packed", tinvit::Backend::cwy_packed);

    py::enum_<tinvit::CwyVariant>(m, "CwyVariant")
        .value("ordinary", tinvit::CwyVariant::ordinary)
        .value("packed", tinvit::CwyVariant::packed);

    py::class_<tinvit::OpCounters>(m, "OpCounters")
        .def_readonly("flops", &tinvit::OpCounters::flops)
        .def_readonly("sync_events", &tinvit::OpCounters::sync_events)
        .def("__repr__", [](const tinvit::OpCounters& c) {
            return "OpCounters(flops=" + std::to_string(c.flops) + ", sync_events=" +
                   std::to_string(c.sync_events) + ")";
        });

    py::class_<tinvit::SymTridiagonal>(m, "SymTridiagonal")
        .def(py::init<std::vector<double>, std::vector<double>>(), py::arg("diag"), py::arg("offdiag"))
        .def_property_readonly("n", &tinvit::SymTridiagonal::n)
        .def_property_readonly("diag",
                               [](const tinvit::SymTridiagonal& t) {
                                   return to_numpy(std::vector<double>(t.diag().begin(), t.diag().end()));
                               })
        .def_property_readonly("offdiag",
                               [](const tinvit::SymTridiagonal& t) {
                                   return to_numpy(std::vector<double>(t.offdiag().begin(), t.offdiag().end()));
                               })
        .def("norm", &tinvit::norm_estimate)
        .def("matvec", [](const tinvit::SymTridiagonal& t, const std::vector<double>& x) {
            return to_numpy(tinvit::matvec(t, x));
        });

    py::class_<tinvit::EigenvalueEstimates>(m, "EigenvalueEstimates")
        .def_property_readonly("values", [](const tinvit::EigenvalueEstimates& e) { return to_numpy(e.values); })
        .def_property_readonly("half_widths",
                               [](const tinvit::EigenvalueEstimates& e) { return to_numpy(e.half_widths); })
        .def_readonly("n", &tinvit::EigenvalueEstimates::n)
        .def_readonly("m", &tinvit::EigenvalueEstimates::m);

    py::class_<tinvit::EigenvectorResult>(m, "EigenvectorResult")
        .def_property_readonly("q", [](const tinvit::EigenvectorResult& r) { return to_numpy(r.q); })
        .def_property_readonly("iters", [](const tinvit::EigenvectorResult& r) { return to_numpy(r.iters); })
        .def_property_readonly("residuals", [](const tinvit::EigenvectorResult& r) { return to_numpy(r.residuals); })
        .def_property_readonly("converged",
                               [](const tinvit::EigenvectorResult& r) {
                                   std::vector<bool> c(r.converged.begin(), r.converged.end());
                                   return c;
                               })
        .def_property_readonly("clusters",
                               [](const tinvit::EigenvectorResult& r) {
                                   std::vector<std::pair<std::size_t, std::size_t>> out;
                                   for (const auto& c : r.clusters) out.emplace_back(c.begin, c.end);
                                   return out;
                               })
        .def_readonly("restarts", &tinvit::EigenvectorResult::restarts)
        .def_readonly("counters", &tinvit::EigenvectorResult::counters)
        .def("nonconverged", &tinvit::EigenvectorResult::nonconverged);

    m.def("gen_type1", &tinvit::gen_type1, py::arg("n"), py::arg("seed") = 1);
    m.def("gen_type2", &tinvit::gen_type2, py::arg("n"));
    m.def("gen_glued_wilkinson", &tinvit::gen_glued_wilkinson, py::arg("num_blocks"), py::arg("delta") = 1e-4);

    m.def("sturm_count", &tinvit::sturm_count, py::arg("t"), py::arg("x"));
    m.def(
        "bisect_eigenvalues",
        [](const tinvit::SymTridiagonal& t, std::optional<std::size_t> count, std::optional<double> tol) {
            return tinvit::bisect_eigenvalues(t, count.value_or(t.n()), tol);
        },
        py::arg("t"), py::arg("m") = py::none(), py::arg("tol") = py::none(),
        "The m smallest eigenvalues (all by default).");

    m.def(
        "find_clusters",
        [](const std::vector<double>& lams, double tnorm) {
            std::vector<std::pair<std::size_t, std::size_t>> out;
            for (const auto& c : tinvit::find_clusters(lams, tnorm)) out.emplace_back(c.begin, c.end);
            return out;
        },
        py::arg("lams"), py::arg("tnorm"));

    m.def(
        "inverse_iteration",
        [](const tinvit::SymTridiagonal& t, const tinvit::EigenvalueEstimates& lams, tinvit::Backend backend,
           int max_iters, std::optional<double> growth_threshold, std::uint64_t seed, std::size_t threads) {
            tinvit::InverseIterationConfig cfg;
            cfg.backend = backend;
            cfg.max_iters = max_iters;
            cfg.growth_threshold = growth_threshold;
            cfg.rng_seed = seed;
            auto pool = make_pool(threads);
            py::gil_scoped_release release;
            return tinvit::inverse_iteration(t, lams, cfg, pool.get());
        },
        py::arg("t"), py::arg("lams"), py::arg("backend") = tinvit::Backend::cwy_packed, py::arg("max_iters") = 5,
        py::arg("growth_threshold") = py::none(), py::arg("seed") = 1, py::arg("threads") = 1);

    m.def(
        "make_reflector",
        [](const std::vector<double>& u) {
            const auto h = tinvit::make_reflector(u, 0);
            return py::make_tuple(to_numpy(h.tail), h.t, h.c);
        },
        py::arg("u"), "Returns (y, t, c) with (I - t y y^T) u = c e_1.");

    m.def(
        "mgs_orthogonalize",
        [](const FArray& v) {
            tinvit::OpCounters c;
            auto q = tinvit::mgs_orthogonalize(to_matrix(v), &c);
            return py::make_tuple(to_numpy(q), c);
        },
        py::arg("v"));
    m.def(
        "householder_orthogonalize",
        [](const FArray& v) {
            tinvit::OpCounters c;
            auto q = tinvit::householder_orthogonalize(to_matrix(v), &c);
            return py::make_tuple(to_numpy(q), c);
        },
        py::arg("v"));
    m.def(
        "cwy_orthogonalize",
        [](const FArray& v, tinvit::CwyVariant variant) {
            tinvit::OpCounters c;
            auto q = tinvit::cwy_orthogonalize(to_matrix(v), variant, &c);
            return py::make_tuple(to_numpy(q), c);
        },
        py::arg("v"), py::arg("variant") = tinvit::CwyVariant::packed);

    m.def(
        "orthogonality_deviation", [](const FArray& q) { return tinvit::orthogonality_deviation(to_matrix(q)); },
        py::arg("q"), "max |(Q^T Q - I)_ij|");
}
