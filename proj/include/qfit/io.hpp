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

#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "qfit/algorithms.hpp"
#include "qfit/cost_model.hpp"
#include "qfit/fit_problem.hpp"
#include "qfit/qsim.hpp"
#include "qfit/tomography.hpp"

namespace qfit::io {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;

/// Complex numbers are [re, im] pairs. Dense matrices are
/// {rows, cols, entries: [[re, im], ...]} in row-major order; the sparse form
/// {rows, cols, triplets: [[i, j, re, im], ...]} (0-based) is accepted on read.
json complexToJson(Complex z);
Complex complexFromJson(const json &j);
json vectorToJson(const ComplexVector &v);
ComplexVector vectorFromJson(const json &j);
json realVectorToJson(const RealVector &v);
json matrixToJson(const ComplexMatrix &m);
ComplexMatrix matrixFromJson(const json &j);

json generatorToJson(const fit::GeneratorSpec &g);
fit::GeneratorSpec generatorFromJson(const json &j);

json problemToJson(const fit::FitProblem &p);
/// Rebuilds F from dataSet and basis when designMatrix is absent.
fit::FitProblem problemFromJson(const json &j);

json solutionToJson(const fit::FitSolution &s);
json stateToJson(const qsim::QuantumState &s);
json configToJson(const qsim::PhaseEstimationConfig &c);
json stageToJson(const algorithms::StageSummary &s);
json algorithm1ToJson(const algorithms::Algorithm1Result &r);
json swapToJson(const qsim::SwapTestResult &r);
json fitReportToJson(const algorithms::FitReport &r);
json reconstructionToJson(const tomography::ReconstructedState &r);
json learnReportToJson(const algorithms::LearnReport &r);
json costReportToJson(const algorithms::CostReport &r);

/// Requires the "schema" field to equal `schema` and a supported version.
void requireSchema(const json &j, const std::string &schema);

json readJsonFile(const std::filesystem::path &path);
/// Two-space indented with a trailing newline.
std::string dumpJson(const json &j);
void writeTextFile(const std::filesystem::path &path, const std::string &text);

}  // namespace qfit::io
