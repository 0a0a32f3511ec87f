// Python bindings for the core operations: PSD projection, generation,
// fitting, the permutation test, and the evaluation metrics. Matrices cross
// the boundary as numpy arrays.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <string>
#include <vector>

#include "multirdpg/adjacency.hpp"
#include "multirdpg/errors.hpp"
#include "multirdpg/fit.hpp"
#include "multirdpg/inference.hpp"
#include "multirdpg/latent_model.hpp"
#include "multirdpg/metrics.hpp"
#include "multirdpg/psd.hpp"

namespace py = pybind11;
using namespace multirdpg;

namespace {

std::vector<AdjacencyMatrix> to_graphs(
    const std::vector<Eigen::MatrixXd>& matrices) {
  std::vector<AdjacencyMatrix> graphs;
  graphs.reserve(matrices.size());
  for (const auto& m : matrices) graphs.emplace_back(m);
  return graphs;
}

FitOptions make_fit_options(int d, int max_iterations, double tolerance,
                            const std::string& init, std::uint64_t seed) {
  FitOptions options;
  options.d = d;
  options.max_iterations = max_iterations;
  options.tolerance = tolerance;
  options.init = init_from_name(init);
  options.seed = seed;
  return options;
}

struct PyFit {
  Eigen::MatrixXd u;
  std::vector<Eigen::VectorXd> lambdas;
  std::vector<double> objective_trace;
  bool converged = false;
  int iterations = 0;
  double objective = 0.0;
};

struct PyTestResult {
  double statistic = 0.0;
  double null_objective = 0.0;
  double alternative_objective = 0.0;
  std::vector<double> null_statistics;
  double p_value = 0.0;
  std::vector<std::string> warnings;
};

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Joint low-rank PSD embedding of multiple graphs on shared "
            "nodes, with a permutation test for distribution equality.";

  py::register_exception<DataError>(m, "DataError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError",
                                         PyExc_ArithmeticError);

  py::class_<PyFit>(m, "FitResult")
      .def_readonly("u", &PyFit::u)
      .def_readonly("lambdas", &PyFit::lambdas)
      .def_readonly("objective_trace", &PyFit::objective_trace)
      .def_readonly("converged", &PyFit::converged)
      .def_readonly("iterations", &PyFit::iterations)
      .def_readonly("objective", &PyFit::objective);

  py::class_<PyTestResult>(m, "TestResult")
      .def_readonly("statistic", &PyTestResult::statistic)
      .def_readonly("null_objective", &PyTestResult::null_objective)
      .def_readonly("alternative_objective",
                    &PyTestResult::alternative_objective)
      .def_readonly("null_statistics", &PyTestResult::null_statistics)
      .def_readonly("p_value", &PyTestResult::p_value)
      .def_readonly("warnings", &PyTestResult::warnings);

  m.def(
      "positive_part",
      [](const Eigen::MatrixXd& adjacency) {
        return positive_part(AdjacencyMatrix(adjacency)).matrix();
      },
      py::arg("adjacency"),
      "Positive semi-definite part of a 0/1 adjacency matrix.");

  m.def("symmetric_positive_part", &symmetric_positive_part, py::arg("m"),
        "Positive semi-definite part of any real symmetric matrix.");

  m.def(
      "edge_probabilities",
      [](const Eigen::MatrixXd& u, const Eigen::VectorXd& lambda,
         const std::string& link) {
        const LatentModel model(u, {lambda}, link_from_name(link));
        return edge_probabilities(model, 1);
      },
      py::arg("u"), py::arg("lambda_"), py::arg("link") = "identity");

  m.def(
      "sample_graph",
      [](const Eigen::MatrixXd& u, const Eigen::VectorXd& lambda,
         std::uint64_t seed, const std::string& link) {
        const LatentModel model(u, {lambda}, link_from_name(link));
        return sample_graph(model, 1, seed).matrix();
      },
      py::arg("u"), py::arg("lambda_"), py::arg("seed"),
      py::arg("link") = "identity",
      "Draw one graph from the latent model (u, lambda).");

  m.def(
      "downsample_edges",
      [](const Eigen::MatrixXd& adjacency, int target, std::uint64_t seed) {
        return downsample_edges(AdjacencyMatrix(adjacency), target, seed)
            .matrix();
      },
      py::arg("adjacency"), py::arg("target_edge_count"), py::arg("seed"));

  m.def(
      "read_edge_list",
      [](const std::string& path, bool one_based) {
        return to_adjacency(read_edge_list_file(path, one_based).edge_list)
            .matrix();
      },
      py::arg("path"), py::arg("one_based") = false,
      "Read an edge-list file into a dense adjacency matrix.");

  m.def(
      "fit_rdpg_single",
      [](const Eigen::MatrixXd& aplus, int d) {
        const auto fit = fit_rdpg_single(PsdGraphMatrix(aplus), d);
        return py::make_tuple(fit.u, fit.lambda, fit.objective);
      },
      py::arg("aplus"), py::arg("d"),
      "Closed-form single-graph fit of a PSD matrix; returns (u, lambda, "
      "objective).");

  m.def(
      "fit_multi_rdpg",
      [](const std::vector<Eigen::MatrixXd>& graphs, int d,
         int max_iterations, double tolerance, const std::string& init,
         std::uint64_t seed) {
        const auto fit = fit_multi_rdpg(
            to_graphs(graphs),
            make_fit_options(d, max_iterations, tolerance, init, seed));
        return PyFit{fit.model.u(),          fit.model.lambdas(),
                     fit.objective_trace,    fit.converged,
                     fit.iterations,         fit.objective()};
      },
      py::arg("graphs"), py::arg("d"), py::arg("max_iterations") = 1000,
      py::arg("tolerance") = 1e-8, py::arg("init") = "average-spectral",
      py::arg("seed") = 0,
      "Alternating minimization fit of the joint embedding.");

  m.def(
      "fit_common_lambda",
      [](const std::vector<Eigen::MatrixXd>& graphs, int d) {
        const auto fit = fit_common_lambda(to_graphs(graphs), d);
        return py::make_tuple(fit.u, fit.lambda, fit.objective);
      },
      py::arg("graphs"), py::arg("d"),
      "Exact fit with one weight vector shared by all graphs; returns "
      "(u, lambda, objective).");

  m.def(
      "test_statistic",
      [](const std::vector<Eigen::MatrixXd>& graphs, int d,
         int max_iterations, double tolerance) {
        FitOptions options;
        options.max_iterations = max_iterations;
        options.tolerance = tolerance;
        const auto t = test_statistic(to_graphs(graphs), d, options);
        return py::make_tuple(t.statistic, t.null_objective,
                              t.alternative_objective);
      },
      py::arg("graphs"), py::arg("d"), py::arg("max_iterations") = 1000,
      py::arg("tolerance") = 1e-8,
      "Returns (T, null_objective, alternative_objective).");

  m.def(
      "permute_graphs",
      [](const std::vector<Eigen::MatrixXd>& graphs, std::uint64_t seed) {
        std::vector<Eigen::MatrixXd> out;
        for (const auto& g : permute_graphs(to_graphs(graphs), seed)) {
          out.push_back(g.matrix());
        }
        return out;
      },
      py::arg("graphs"), py::arg("seed"),
      "Entrywise permutation of the graphs' edges across the list.");

  m.def(
      "permutation_test",
      [](const std::vector<Eigen::MatrixXd>& graphs, int d, int permutations,
         std::uint64_t seed, bool add_one, int threads, int max_iterations,
         double tolerance) {
        TestOptions options;
        options.d = d;
        options.n_permutations = permutations;
        options.seed = seed;
        options.add_one_convention = add_one;
        options.threads = threads;
        options.fit_options.max_iterations = max_iterations;
        options.fit_options.tolerance = tolerance;
        const auto result = permutation_test(to_graphs(graphs), options);
        return PyTestResult{result.observed.statistic,
                            result.observed.null_objective,
                            result.observed.alternative_objective,
                            result.null_statistics,
                            result.p_value,
                            result.warnings};
      },
      py::arg("graphs"), py::arg("d"), py::arg("permutations") = 1000,
      py::arg("seed") = 0, py::arg("add_one") = false, py::arg("threads") = 1,
      py::arg("max_iterations") = 1000, py::arg("tolerance") = 1e-8,
      "Permutation test of equal weights across graphs.");

  m.def("subspace_distance", &subspace_distance, py::arg("u_hat"),
        py::arg("u"),
        "Operator 2-norm distance between the projectors onto two "
        "orthonormal frames.");

  m.def(
      "adjacency_error",
      [](const Eigen::MatrixXd& u_true,
         const std::vector<Eigen::VectorXd>& lambdas_true,
         const std::string& link, const Eigen::MatrixXd& u_hat,
         const std::vector<Eigen::VectorXd>& lambdas_hat) {
        const LatentModel truth(u_true, lambdas_true, link_from_name(link));
        const LatentModel estimate(u_hat, lambdas_hat, Link::identity);
        return adjacency_error(truth, estimate);
      },
      py::arg("u_true"), py::arg("lambdas_true"), py::arg("link"),
      py::arg("u_hat"), py::arg("lambdas_hat"),
      "Mean squared reconstruction error against the linked truth.");

  m.def("build_u_structured", &build_u_structured, py::arg("n"), py::arg("d"),
        "Normalized +/-1 sign-pattern basis (d=2 or 3).");

  m.attr("__version__") = "1.0.0";
}
