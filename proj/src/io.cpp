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

#include "qfit/io.hpp"

#include <fstream>
#include <sstream>

#include "qfit/error.hpp"

namespace qfit::io {

namespace {

template <typename T>
T field(const json &j, const char *key) {
    if (!j.is_object() || !j.contains(key)) {
        throw Error(ErrorCode::Schema, std::string("missing field '") + key + "'");
    }
    try {
        return j.at(key).get<T>();
    } catch (const json::exception &e) {
        throw Error(ErrorCode::Schema, std::string("bad field '") + key + "': " + e.what());
    }
}

}  // namespace

json complexToJson(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complexFromJson(const json &j) {
    if (j.is_number()) {
        return {j.get<double>(), 0.0};
    }
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw Error(ErrorCode::Schema, "complex value must be [re, im]");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

json vectorToJson(const ComplexVector &v) {
    json out = json::array();
    for (Index i = 0; i < v.size(); ++i) {
        out.push_back(complexToJson(v[i]));
    }
    return out;
}

ComplexVector vectorFromJson(const json &j) {
    if (!j.is_array()) {
        throw Error(ErrorCode::Schema, "vector must be an array of [re, im]");
    }
    ComplexVector v(static_cast<Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) {
        v[static_cast<Index>(i)] = complexFromJson(j[i]);
    }
    return v;
}

json realVectorToJson(const RealVector &v) {
    json out = json::array();
    for (Index i = 0; i < v.size(); ++i) {
        out.push_back(v[i]);
    }
    return out;
}

json matrixToJson(const ComplexMatrix &m) {
    json entries = json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        for (Index k = 0; k < m.cols(); ++k) {
            entries.push_back(complexToJson(m(i, k)));
        }
    }
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

ComplexMatrix matrixFromJson(const json &j) {
    const auto rows = field<Index>(j, "rows");
    const auto cols = field<Index>(j, "cols");
    if (rows < 1 || cols < 1) {
        throw Error(ErrorCode::Schema, "matrix dimensions must be positive");
    }
    if (j.contains("entries")) {
        const json &e = j.at("entries");
        if (!e.is_array() || e.size() != static_cast<std::size_t>(rows * cols)) {
            throw Error(ErrorCode::Schema, "entries must hold rows*cols values");
        }
        ComplexMatrix m(rows, cols);
        for (Index i = 0; i < rows; ++i) {
            for (Index k = 0; k < cols; ++k) {
                m(i, k) = complexFromJson(e[static_cast<std::size_t>(i * cols + k)]);
            }
        }
        return m;
    }
    if (j.contains("triplets")) {
        ComplexMatrix m = ComplexMatrix::Zero(rows, cols);
        for (const json &t : j.at("triplets")) {
            if (!t.is_array() || t.size() != 4) {
                throw Error(ErrorCode::Schema, "triplet must be [i, j, re, im]");
            }
            const auto r = t[0].get<Index>();
            const auto c = t[1].get<Index>();
            if (r < 0 || r >= rows || c < 0 || c >= cols) {
                throw Error(ErrorCode::Schema, "triplet index out of range");
            }
            m(r, c) += Complex{t[2].get<double>(), t[3].get<double>()};
        }
        return m;
    }
    throw Error(ErrorCode::Schema, "matrix needs 'entries' or 'triplets'");
}

json generatorToJson(const fit::GeneratorSpec &g) {
    json j{{"n", g.n},
           {"m", g.m},
           {"kind", fit::toString(g.kind)},
           {"plantedSupport", g.plantedSupport},
           {"plantedMass", g.plantedMass},
           {"noise", g.noise}};
    j["conditionTarget"] = g.conditionTarget ? json(*g.conditionTarget) : json(nullptr);
    j["commensurateBins"] = g.commensurateBins ? json(*g.commensurateBins) : json(nullptr);
    return j;
}

fit::GeneratorSpec generatorFromJson(const json &j) {
    fit::GeneratorSpec g;
    g.n = field<Index>(j, "n");
    g.m = field<Index>(j, "m");
    g.kind = fit::parseProblemKind(field<std::string>(j, "kind"));
    g.plantedSupport = j.value("plantedSupport", std::vector<Index>{});
    g.plantedMass = j.value("plantedMass", 1.0);
    g.noise = j.value("noise", 0.1);
    if (j.contains("conditionTarget") && !j["conditionTarget"].is_null()) {
        g.conditionTarget = j["conditionTarget"].get<double>();
    }
    if (j.contains("commensurateBins") && !j["commensurateBins"].is_null()) {
        g.commensurateBins = j["commensurateBins"].get<int>();
    }
    return g;
}

json problemToJson(const fit::FitProblem &p) {
    json x = json::array();
    json y = json::array();
    for (const auto &pt : p.dataSet.points) {
        x.push_back(complexToJson(pt.x));
        y.push_back(complexToJson(pt.y));
    }
    json j{{"schema", "qfit.problem"},
           {"schemaVersion", kSchemaVersion},
           {"dataSet", {{"x", std::move(x)}, {"y", std::move(y)}}},
           {"basis", {{"kind", fit::toString(p.basis.kind)},
                      {"m", p.basis.m},
                      {"period", p.basis.period}}},
           {"designMatrix", matrixToJson(p.designMatrix)},
           {"yVector", vectorToJson(p.yVector)},
           {"normScale", {{"cF", p.normScale.cF}, {"cY", p.normScale.cY}}}};
    j["seed"] = p.seed ? json(*p.seed) : json(nullptr);
    j["generator"] = p.generator ? generatorToJson(*p.generator) : json(nullptr);
    return j;
}

fit::FitProblem problemFromJson(const json &j) {
    requireSchema(j, "qfit.problem");
    const json &data = j.at("dataSet");
    const ComplexVector xs = vectorFromJson(data.at("x"));
    const ComplexVector ys = vectorFromJson(data.at("y"));
    if (xs.size() != ys.size()) {
        throw Error(ErrorCode::Schema, "dataSet x and y differ in length");
    }
    fit::DataSet dataSet;
    for (Index i = 0; i < xs.size(); ++i) {
        dataSet.points.push_back({xs[i], ys[i]});
    }
    const json &b = j.at("basis");
    fit::FitBasis basis;
    basis.kind = fit::parseBasisKind(field<std::string>(b, "kind"));
    basis.m = field<Index>(b, "m");
    basis.period = b.value("period", 1.0);

    fit::FitProblem p;
    if (j.contains("designMatrix") && !j["designMatrix"].is_null()) {
        p.dataSet = dataSet;
        p.basis = basis;
        p.designMatrix = matrixFromJson(j["designMatrix"]);
        p.yVector = vectorFromJson(j.at("yVector"));
        const json &s = j.at("normScale");
        p.normScale = {field<double>(s, "cF"), field<double>(s, "cY")};
        if (p.designMatrix.rows() != p.yVector.size() || p.designMatrix.cols() != basis.m) {
            throw Error(ErrorCode::Schema, "designMatrix, yVector and basis disagree in shape");
        }
    } else {
        if (basis.kind == fit::BasisKind::CustomMatrix) {
            throw Error(ErrorCode::Schema, "customMatrix basis requires designMatrix");
        }
        p = fit::makeProblem(dataSet, basis);
    }
    if (j.contains("seed") && !j["seed"].is_null()) {
        p.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("generator") && !j["generator"].is_null()) {
        p.generator = generatorFromJson(j["generator"]);
    }
    return p;
}

json solutionToJson(const fit::FitSolution &s) {
    return {{"lambda", vectorToJson(s.lambda)},
            {"residualEnergy", s.residualEnergy},
            {"fittedVector", vectorToJson(s.fittedVector)}};
}

json stateToJson(const qsim::QuantumState &s) {
    const auto &l = s.layout();
    return {{"layout", {{"clockSize", l.clockSize},
                        {"systemDim", l.systemDim},
                        {"flagCount", l.flagCount}}},
            {"amplitudes", vectorToJson(s.amplitudes())}};
}

json configToJson(const qsim::PhaseEstimationConfig &c) {
    return {{"mode", qsim::toString(c.mode)},
            {"T", c.clockSize},
            {"t0", c.t0},
            {"C", c.c},
            {"window", qsim::toString(c.window)}};
}

json stageToJson(const algorithms::StageSummary &s) {
    return {{"mode", qsim::toString(s.mode)},
            {"t0", s.t0},
            {"C", s.c},
            {"flagProbability", s.flagProbability},
            {"clockReturnProbability", s.clockReturnProbability},
            {"clockResidual", s.clockResidual},
            {"oracleFidelity", s.oracleFidelity}};
}

json algorithm1ToJson(const algorithms::Algorithm1Result &r) {
    json stages = json::array();
    for (const auto &s : r.stages) {
        stages.push_back(stageToJson(s));
    }
    return {{"lambdaState", vectorToJson(r.lambdaState)},
            {"parameterSectorMass", r.parameterSectorMass},
            {"fidelity", r.fidelity},
            {"totalSuccessProbability", r.totalSuccessProbability},
            {"maxClockResidual", r.maxClockResidual},
            {"stages", std::move(stages)}};
}

json swapToJson(const qsim::SwapTestResult &r) {
    return {{"onesObserved", r.onesObserved},
            {"shots", r.shots},
            {"exactPOne", r.exactPOne},
            {"pOneEstimate", r.pOneEstimate},
            {"overlapSqEstimate", r.overlapSqEstimate},
            {"stdError", r.stdError}};
}

json fitReportToJson(const algorithms::FitReport &r) {
    json stages = json::array();
    json probabilities = json::array();
    for (const auto &s : r.stages) {
        stages.push_back(stageToJson(s));
        probabilities.push_back(s.flagProbability);
    }
    return {{"overlapSqEstimate", r.overlapSqEstimate},
            {"stdError", r.stdError},
            {"eBound", r.eBound},
            {"eBoundExact", r.eBoundExact},
            {"eExactReference", r.eExactReference},
            {"exactOverlapSq", r.exactOverlapSq},
            {"simulatedOverlapSq", r.simulatedOverlapSq},
            {"boundIdentityHolds", r.boundIdentityHolds},
            {"degenerate", r.degenerate},
            {"lambdaFidelity", r.lambdaFidelity},
            {"fittedStateFidelity", r.fittedStateFidelity},
            {"swapTest", swapToJson(r.swap)},
            {"successProbabilities", std::move(probabilities)},
            {"stages", std::move(stages)},
            {"totalShots", r.totalShots},
            {"swapSeed", r.swapSeed},
            {"cost", costReportToJson(r.cost)}};
}

json reconstructionToJson(const tomography::ReconstructedState &r) {
    json settings = json::array();
    for (const auto &s : r.settings) {
        json rec{{"kind", tomography::toString(s.kind)}, {"counts", s.counts}};
        if (s.kind == tomography::SettingKind::Interference) {
            rec["index"] = s.index;
            rec["reference"] = s.reference;
            rec["phase"] = s.phase;
        }
        settings.push_back(std::move(rec));
    }
    json j{{"method", "linear-inversion interferometric tomography (substitutes compressed sensing)"},
           {"amplitudes", vectorToJson(r.amplitudes)},
           {"referenceIndex", r.referenceIndex},
           {"budget", {{"settings", r.budget.settings},
                       {"shotsPerSetting", r.budget.shotsPerSetting},
                       {"totalShots", r.budget.totalShots()},
                       {"epsilon", r.budget.epsilon}}},
           {"settings", std::move(settings)}};
    j["fidelityVsOracle"] = r.fidelityVsOracle ? json(*r.fidelityVsOracle) : json(nullptr);
    return j;
}

json learnReportToJson(const algorithms::LearnReport &r) {
    return {{"mPrime", r.mPrime},
            {"supportShots", r.supportShots},
            {"histogram", r.histogram},
            {"recoveredSupport", r.recoveredSupport},
            {"reducedNormScale", {{"cF", r.reducedScale.cF}, {"cY", r.reducedScale.cY}}},
            {"reconstruction", reconstructionToJson(r.reconstruction)},
            {"oracleLambda", vectorToJson(r.oracleLambda)},
            {"reconstructionFidelity", r.reconstructionFidelity},
            {"preparedFidelity", r.preparedFidelity},
            {"fitQuality", fitReportToJson(r.fitQuality)},
            {"fullExactResidual", r.fullExactResidual},
            {"reducedExactResidual", r.reducedExactResidual},
            {"fullExactEBound", r.fullExactEBound},
            {"reducedExactEBound", r.reducedExactEBound},
            {"qualityDegraded", r.qualityDegraded}};
}

json costReportToJson(const algorithms::CostReport &r) {
    const auto &q = r.query;
    const auto &rep = r.repetitions;
    return {{"model", "asymptotic, unit constants, log base 2"},
            {"query", {{"n", q.n},
                       {"s", q.s},
                       {"kappa", q.kappa},
                       {"epsilon", q.epsilon},
                       {"delta", q.delta},
                       {"mPrime", q.mPrime},
                       {"algorithm", algorithms::toString(q.algorithm)},
                       {"amplitudeAmplification", q.amplitudeAmplification}}},
            {"formula", r.formula},
            {"queries", r.queries},
            {"simulationPerAttempt", r.simulationPerAttempt},
            {"repetitions", {{"hermitianApplyPlain", rep.hermitianApplyPlain},
                             {"hermitianApplyAmplified", rep.hermitianApplyAmplified},
                             {"inversionPlain", rep.inversionPlain},
                             {"inversionAmplified", rep.inversionAmplified},
                             {"lambdaPrepAmplified", rep.lambdaPrepAmplified},
                             {"lambdaPrepPlain", rep.lambdaPrepPlain},
                             {"selected", rep.selected}}}};
}

void requireSchema(const json &j, const std::string &schema) {
    if (!j.is_object() || j.value("schema", std::string{}) != schema) {
        throw Error(ErrorCode::Schema, "expected a '" + schema + "' document");
    }
    if (j.value("schemaVersion", 0) != kSchemaVersion) {
        throw Error(ErrorCode::Schema, "unsupported schemaVersion for " + schema);
    }
}

json readJsonFile(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::Io, "cannot open '" + path.string() + "'");
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error &e) {
        throw Error(ErrorCode::Schema, "'" + path.string() + "' is not valid JSON: " + e.what());
    }
}

std::string dumpJson(const json &j) { return j.dump(2) + "\n"; }

void writeTextFile(const std::filesystem::path &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(ErrorCode::Io, "cannot write '" + path.string() + "'");
    }
    out << text;
}

}  // namespace qfit::io
