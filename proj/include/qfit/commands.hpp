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

#include <cstdint>
#include <optional>
#include <string>

#include "qfit/algorithms.hpp"
#include "qfit/io.hpp"

namespace qfit::commands {

using io::json;

struct RunConfig {
    std::string problemPath;
    Index clockSize = 1024;
    std::optional<double> t0;          // nullopt = auto
    std::optional<double> c;           // nullopt = mode default
    algorithms::PipelineVariant variant = algorithms::PipelineVariant::ThreeStage;
    qsim::ClockWindow window = qsim::ClockWindow::Sine;
    std::optional<std::uint64_t> shots; // nullopt = ceil(1/delta^2)
    double delta = 0.01;
    double epsilon = 0.01;
    Index mPrime = 0;
    double alpha = 20.0;
    std::uint64_t seed = 0;
    std::string outputPath;
};

json configToJson(const RunConfig &config);
RunConfig configFromJson(const json &j);

/// Reads QFIT_SEED, if set, as the master seed.
std::optional<std::uint64_t> seedFromEnvironment();

algorithms::PipelineOptions pipelineOptions(const RunConfig &config);
std::uint64_t swapShots(const RunConfig &config);

/// Each builder returns the full report document. Reports embed the
/// problem, the config and the seed so that replay() can rebuild them.
json generateDocument(const fit::GeneratorSpec &spec, std::uint64_t seed);
json runDocument(const RunConfig &config, const fit::FitProblem &problem);
json learnDocument(const RunConfig &config, const fit::FitProblem &problem);
json oracleDocument(const fit::FitProblem &problem);
json costDocument(const algorithms::CostQuery &query);

/// Recomputes a document from its embedded inputs.
json replay(const json &document);

/// Header and value row of the scalar fields of a report, for sweeps.
std::string csvHeader(const json &document);
std::string csvRow(const json &document);
/// Appends one row, writing the header first when the file is new.
void appendCsv(const std::string &path, const json &document);

json errorDocument(const std::exception &e);

}  // namespace qfit::commands
