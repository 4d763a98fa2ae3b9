// Copyright 2026 The qfit Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <optional>
#include <string>
#include <vector>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qfit/algorithms.hpp"
#include "qfit/commands.hpp"
#include "qfit/error.hpp"
#include "qfit/linalg.hpp"
#include "qfit/tomography.hpp"

namespace py = pybind11;
using namespace qfit;

namespace {

py::object toPython(const io::json &j) {
    return py::module_::import("json").attr("loads")(j.dump());
}

io::json fromPython(const py::object &o) {
    return io::json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

commands::RunConfig runConfig(Index clockSize, std::optional<double> t0, std::optional<double> c,
                              const std::string &variant, const std::string &window,
                              std::optional<std::uint64_t> shots, double delta, double epsilon,
                              Index mPrime, double alpha, std::uint64_t seed) {
    commands::RunConfig cfg;
    cfg.clockSize = clockSize;
    cfg.t0 = t0;
    cfg.c = c;
    cfg.variant = algorithms::parsePipelineVariant(variant);
    cfg.window = qsim::parseClockWindow(window);
    cfg.shots = shots;
    cfg.delta = delta;
    cfg.epsilon = epsilon;
    cfg.mPrime = mPrime;
    cfg.alpha = alpha;
    cfg.seed = seed;
    return cfg;
}

}  // namespace

PYBIND11_MODULE(_qfit, m) {
    m.doc() = "Least-squares fitting on a simulated quantum computer";

    static py::handle qfitError = py::exception<Error>(m, "QfitError", PyExc_RuntimeError).release();
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) {
                std::rethrow_exception(p);
            }
        } catch (const Error &e) {
            py::object err = qfitError(e.what());
            err.attr("code") = std::string(errorCodeName(e.code()));
            PyErr_SetObject(qfitError.ptr(), err.ptr());
        }
    });

    m.def("embed", [](const ComplexMatrix &f) { return linalg::embed(f).matrix; }, py::arg("f"),
          "Hermitian embedding [[0, F^dagger], [F, 0]].");
    m.def("pseudoinverse", &linalg::pseudoinverse, py::arg("f"));
    m.def("singular_values", &linalg::singularValues, py::arg("f"));
    m.def("condition_number", [](const ComplexMatrix &f) {
        return linalg::conditionEstimate(f).kappa;
    }, py::arg("f"));

    m.def("classical_fit", [](const ComplexMatrix &f, const ComplexVector &y) {
        const auto s = fit::classicalFit(f, y);
        py::dict d;
        d["lambda"] = s.lambda;
        d["residual_energy"] = s.residualEnergy;
        d["fitted"] = s.fittedVector;
        return d;
    }, py::arg("f"), py::arg("y"));

    m.def("normalize", [](const ComplexMatrix &f, const ComplexVector &y) {
        return toPython(io::problemToJson(fit::normalizeProblem(f, y)));
    }, py::arg("f"), py::arg("y"), "Normalized problem document for raw F and y.");

    m.def("generate", [](Index n, Index mm, const std::string &kind, std::vector<Index> planted,
                         double mass, std::optional<double> kappa, std::optional<int> bins,
                         double noise, std::uint64_t seed) {
        fit::GeneratorSpec spec{n, mm, fit::parseProblemKind(kind)};
        spec.plantedSupport = std::move(planted);
        spec.plantedMass = mass;
        spec.conditionTarget = kappa;
        spec.commensurateBins = bins;
        spec.noise = noise;
        return toPython(commands::generateDocument(spec, seed));
    }, py::arg("n"), py::arg("m"), py::arg("kind") = "random",
       py::arg("planted") = std::vector<Index>{}, py::arg("mass") = 1.0,
       py::arg("kappa") = py::none(), py::arg("bins") = py::none(), py::arg("noise") = 0.1,
       py::arg("seed") = 0);

    m.def("oracle", [](const py::object &problem) {
        return toPython(commands::oracleDocument(io::problemFromJson(fromPython(problem))));
    }, py::arg("problem"));

    m.def("run", [](const py::object &problem, Index clockSize, std::optional<double> t0,
                    std::optional<double> c, const std::string &variant, const std::string &window,
                    std::optional<std::uint64_t> shots, double delta, double epsilon,
                    std::uint64_t seed) {
        const auto cfg = runConfig(clockSize, t0, c, variant, window, shots, delta, epsilon, 0,
                                   20.0, seed);
        return toPython(commands::runDocument(cfg, io::problemFromJson(fromPython(problem))));
    }, py::arg("problem"), py::arg("T") = 1024, py::arg("t0") = py::none(),
       py::arg("C") = py::none(), py::arg("variant") = "three-stage", py::arg("window") = "sine",
       py::arg("shots") = py::none(), py::arg("delta") = 0.01, py::arg("epsilon") = 0.01,
       py::arg("seed") = 0, "Algorithms 1 and 2: prepare |lambda> and estimate the fit quality.");

    m.def("learn", [](const py::object &problem, Index mPrime, Index clockSize,
                      std::optional<double> t0, std::optional<double> c,
                      const std::string &variant, const std::string &window,
                      std::optional<std::uint64_t> shots, double delta, double epsilon,
                      double alpha, std::uint64_t seed) {
        const auto cfg = runConfig(clockSize, t0, c, variant, window, shots, delta, epsilon,
                                   mPrime, alpha, seed);
        return toPython(commands::learnDocument(cfg, io::problemFromJson(fromPython(problem))));
    }, py::arg("problem"), py::arg("m_prime"), py::arg("T") = 1024, py::arg("t0") = py::none(),
       py::arg("C") = py::none(), py::arg("variant") = "three-stage", py::arg("window") = "sine",
       py::arg("shots") = py::none(), py::arg("delta") = 0.01, py::arg("epsilon") = 0.05,
       py::arg("alpha") = 20.0, py::arg("seed") = 0,
       "Algorithm 3: recover the m_prime dominant parameters.");

    m.def("cost", [](double n, double s, double kappa, double epsilon, double delta,
                     double mPrime, const std::string &alg, bool amplified) {
        algorithms::CostQuery q;
        q.n = n;
        q.s = s;
        q.kappa = kappa;
        q.epsilon = epsilon;
        q.delta = delta;
        q.mPrime = mPrime;
        q.algorithm = algorithms::parseCostAlgorithm(alg);
        q.amplitudeAmplification = amplified;
        return toPython(commands::costDocument(q));
    }, py::arg("n"), py::arg("s") = 1.0, py::arg("kappa") = 1.0, py::arg("epsilon") = 0.1,
       py::arg("delta") = 0.1, py::arg("m_prime") = 1.0, py::arg("alg") = "eq3",
       py::arg("amplified") = true);

    m.def("replay", [](const py::object &doc) {
        return toPython(commands::replay(fromPython(doc)));
    }, py::arg("document"));

    m.def("apply_hermitian", [](const ComplexMatrix &f, const ComplexVector &psi,
                                const std::string &mode, Index clockSize, double t0, double c,
                                const std::string &window) {
        const qsim::SpectralOperator op(linalg::embed(f));
        const qsim::PhaseEstimationConfig cfg{clockSize, t0, c, qsim::parsePeMode(mode),
                                              qsim::parseClockWindow(window)};
        const auto r = qsim::applyHermitianViaPE(psi, op, cfg);
        py::dict d;
        d["output"] = r.output;
        d["flag_probability"] = r.flagProbability;
        d["clock_residual"] = r.clockResidual;
        d["oracle_fidelity"] = r.oracleFidelity;
        return d;
    }, py::arg("f"), py::arg("psi"), py::arg("mode"), py::arg("T"), py::arg("t0"), py::arg("C"),
       py::arg("window") = "sine",
       "One phase-estimation pass of H_F on psi (length M+N, parameter sector first).");

    m.def("swap_test", [](const ComplexVector &a, const ComplexVector &b, std::uint64_t shots,
                          std::uint64_t seed) {
        const auto r = qsim::swapTest(a, b, {shots, 0.01, seed});
        return toPython(io::swapToJson(r));
    }, py::arg("a"), py::arg("b"), py::arg("shots") = 10000, py::arg("seed") = 0);

    m.def("plan_budget", [](Index mPrime, double epsilon) {
        const auto b = tomography::planBudget(mPrime, epsilon);
        return py::make_tuple(b.settings, b.shotsPerSetting);
    }, py::arg("m_prime"), py::arg("epsilon"), "(settings, shots per setting)");

    m.def("tomography", [](const ComplexVector &state, double epsilon, std::uint64_t seed) {
        const auto budget = tomography::planBudget(state.size(), epsilon);
        const auto r = tomography::reconstructPureState([state] { return state; }, budget, seed);
        return r.amplitudes;
    }, py::arg("state"), py::arg("epsilon"), py::arg("seed") = 0,
       "Reconstruct a pure state from simulated measurement counts.");
}
