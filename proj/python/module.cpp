#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdio>
#include <optional>

#include "permlim/descriptor.hpp"
#include "permlim/forcing.hpp"
#include "permlim/heatmap.hpp"
#include "permlim/witness.hpp"

namespace py = pybind11;

namespace {

using namespace permlim;

std::string fmt_g(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

const Permuton* optional_target(const std::optional<std::string>& descriptor,
                                std::optional<Permuton>& storage) {
    if (!descriptor) return nullptr;
    storage = parse_permuton(*descriptor);
    return &*storage;
}

}  // namespace

PYBIND11_MODULE(_permlim, m) {
    m.doc() = "permutation and graph limit toolkit";

    py::class_<Estimate>(m, "Estimate")
        .def_readonly("value", &Estimate::value)
        .def_readonly("std_error", &Estimate::std_error)
        .def_readonly("samples", &Estimate::samples)
        .def("__repr__", [](const Estimate& e) {
            return "Estimate(value=" + fmt_g(e.value) + ", std_error=" + fmt_g(e.std_error) +
                   ", samples=" + std::to_string(e.samples) + ")";
        });

    py::class_<Permutation>(m, "Permutation")
        .def(py::init(&Permutation::from_string), py::arg("one_line"),
             "Parse \"7126354\" (digits, n <= 9) or \"7,1,2,6,3,5,4\"")
        .def("__str__", &Permutation::to_string)
        .def("__repr__",
             [](const Permutation& p) { return "Permutation(\"" + p.to_string() + "\")"; })
        .def("__len__", &Permutation::order)
        .def("__eq__", [](const Permutation& a, const Permutation& b) { return a == b; })
        .def_property_readonly("one_line",
                               [](const Permutation& p) { return p.one_line(); });

    py::class_<Graph>(m, "Graph")
        .def(py::init(&Graph::from_string), py::arg("edge_list"),
             "Parse \"n; i-j,i-j,...\" (or just \"n\" for an edgeless graph)")
        .def("__str__", &Graph::to_string)
        .def("__repr__", [](const Graph& g) { return "Graph(\"" + g.to_string() + "\")"; })
        .def("__eq__", [](const Graph& a, const Graph& b) { return a == b; })
        .def_property_readonly("order", &Graph::order)
        .def_property_readonly("edge_count", &Graph::edge_count);

    py::class_<Permuton>(m, "Permuton")
        .def(py::init(&parse_permuton), py::arg("descriptor"),
             "Inline shorthand (\"uniform\", \"monotone:0.5\", \"square:0.5\") or a path to "
             "a JSON object file; see docs/schema.md")
        .def(
            "density",
            [](const Permuton& mu, const std::string& pattern, std::uint64_t samples,
               std::uint64_t seed) {
                return density_mc(mu, Permutation::from_string(pattern), samples, seed);
            },
            py::arg("pattern"), py::arg("samples") = 100000, py::arg("seed") = 0,
            "Monte Carlo pattern density")
        .def(
            "density",
            [](const Permuton& mu, const Permutation& pattern, std::uint64_t samples,
               std::uint64_t seed) { return density_mc(mu, pattern, samples, seed); },
            py::arg("pattern"), py::arg("samples") = 100000, py::arg("seed") = 0)
        .def(
            "density_exact",
            [](const Permuton& mu, const std::string& pattern) {
                return density_exact_diagonal(mu, Permutation::from_string(pattern));
            },
            py::arg("pattern"),
            "Closed-form pattern density (geometric block families, order <= 7)")
        .def(
            "density_exact",
            [](const Permuton& mu, const Permutation& pattern) {
                return density_exact_diagonal(mu, pattern);
            },
            py::arg("pattern"))
        .def("cdf", &Permuton::cdf, py::arg("x"), py::arg("y"))
        .def(
            "sample_pattern",
            [](const Permuton& mu, int n, std::uint64_t seed) {
                return mu.sample_permutation(n, seed);
            },
            py::arg("n"), py::arg("seed") = 0)
        .def(
            "heatmap",
            [](const Permuton& mu, int resolution, std::uint64_t samples, std::uint64_t seed) {
                return heatmap_pgm(mu, {resolution, samples, seed});
            },
            py::arg("resolution") = 256, py::arg("samples") = 0, py::arg("seed") = 0,
            "ASCII P2 graymap of per-cell sampled mass")
        .def("json", [](const Permuton& mu) { return permuton_json(mu); })
        .def("__repr__",
             [](const Permuton& mu) { return "Permuton('" + permuton_json(mu) + "')"; });

    py::class_<Graphon>(m, "Graphon")
        .def(py::init(&parse_graphon), py::arg("descriptor"),
             "Inline shorthand (\"constant:0.5\", \"cliqueblocks:0.5\", "
             "\"planted:rho=0.5,alpha=0.5\", \"induced:<permuton>\") or a path to a JSON "
             "object file; see docs/schema.md")
        .def(
            "density",
            [](const Graphon& w, const std::string& graph, std::uint64_t samples,
               std::uint64_t seed) {
                return density_mc(Graph::from_string(graph), w, samples, seed);
            },
            py::arg("graph"), py::arg("samples") = 100000, py::arg("seed") = 0,
            "Monte Carlo induced-subgraph density")
        .def(
            "density",
            [](const Graphon& w, const Graph& graph, std::uint64_t samples,
               std::uint64_t seed) { return density_mc(graph, w, samples, seed); },
            py::arg("graph"), py::arg("samples") = 100000, py::arg("seed") = 0)
        .def(
            "density_quadrature",
            [](const Graphon& w, const std::string& graph, int grid) {
                return density_quadrature(Graph::from_string(graph), w, grid);
            },
            py::arg("graph"), py::arg("grid") = 64,
            "Tensor-grid quadrature (pointwise kernels, order <= 5)")
        .def(
            "density_quadrature",
            [](const Graphon& w, const Graph& graph, int grid) {
                return density_quadrature(graph, w, grid);
            },
            py::arg("graph"), py::arg("grid") = 64)
        .def("kernel", &Graphon::kernel, py::arg("x"), py::arg("y"))
        .def("pointwise", &Graphon::pointwise)
        .def(
            "sample_graph",
            [](const Graphon& w, int n, std::uint64_t seed) { return w.sample_graph(n, seed); },
            py::arg("n"), py::arg("seed") = 0)
        .def(
            "heatmap",
            [](const Graphon& w, int resolution, std::uint64_t samples, std::uint64_t seed) {
                return heatmap_pgm(w, {resolution, samples, seed});
            },
            py::arg("resolution") = 256, py::arg("samples") = 0, py::arg("seed") = 0,
            "ASCII P2 graymap of kernel values (sampled fallback without a pointwise kernel)")
        .def("json", [](const Graphon& w) { return graphon_json(w); })
        .def("__repr__", [](const Graphon& w) { return "Graphon('" + graphon_json(w) + "')"; });

    py::class_<ForcingReport>(m, "ForcingReport")
        .def_readonly("constraint", &ForcingReport::constraint)
        .def_readonly("target", &ForcingReport::target)
        .def_readonly("measured", &ForcingReport::measured)
        .def_readonly("tolerance", &ForcingReport::tolerance)
        .def_readonly("passed", &ForcingReport::pass)
        .def("__repr__", [](const ForcingReport& r) {
            return "ForcingReport(" + r.constraint + ", value=" + fmt_g(r.measured.value) +
                   ", " + (r.pass ? "pass" : "FAIL") + ")";
        });

    m.def(
        "verify_monotone",
        [](double alpha, std::uint64_t samples, std::uint64_t seed,
           const std::optional<std::string>& target) {
            std::optional<Permuton> storage;
            return verify_monotone_forcing(alpha, samples, seed, {},
                                           optional_target(target, storage));
        },
        py::arg("alpha"), py::arg("samples") = 100000, py::arg("seed") = 0,
        py::arg("target") = py::none(),
        "Check the decreasing-segment constraint system; `target` substitutes another "
        "permuton descriptor (negative control)");
    m.def(
        "verify_square",
        [](double alpha, std::uint64_t samples, std::uint64_t seed,
           const std::optional<std::string>& target) {
            std::optional<Permuton> storage;
            return verify_square_forcing(alpha, samples, seed, {},
                                         optional_target(target, storage));
        },
        py::arg("alpha"), py::arg("samples") = 100000, py::arg("seed") = 0,
        py::arg("target") = py::none());
    m.def("all_pass", &all_pass, py::arg("reports"));
    m.def("forcing_csv", &forcing_csv, py::arg("reports"));

    py::class_<WitnessProblem>(m, "WitnessProblem")
        .def(py::init([](int n, double alpha, double epsilon) {
                 WitnessProblem p;
                 p.n = n;
                 p.alpha = alpha;
                 p.epsilon = epsilon;
                 return p;
             }),
             py::arg("n"), py::arg("alpha"), py::arg("epsilon"))
        .def_readonly("n", &WitnessProblem::n)
        .def_readonly("alpha", &WitnessProblem::alpha)
        .def_readonly("epsilon", &WitnessProblem::epsilon)
        .def("geometric_sizes", &WitnessProblem::geometric_sizes);

    py::class_<WitnessResult>(m, "WitnessResult")
        .def_readonly("b", &WitnessResult::b)
        .def_readonly("residuals", &WitnessResult::residuals)
        .def_readonly("residual_history", &WitnessResult::residual_history)
        .def_readonly("realized_epsilon", &WitnessResult::realized_epsilon)
        .def_readonly("halvings", &WitnessResult::halvings)
        .def_readonly("iterations", &WitnessResult::iterations)
        .def_readonly("converged", &WitnessResult::converged);

    m.def("solve_witness", &solve_witness, py::arg("problem"), py::arg("max_iter") = 50,
          py::arg("tol") = 1e-12,
          "Damped Newton solve for perturbed block sizes matching power sums 1..n");
    m.def("certify_witness", &certify_witness, py::arg("result"), py::arg("problem"),
          py::arg("rho") = 0.5);
    m.def("witness_csv", &witness_csv, py::arg("problem"), py::arg("result"),
          py::arg("certification"));
}
