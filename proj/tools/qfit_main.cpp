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

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qfit/commands.hpp"
#include "qfit/error.hpp"

namespace {

using qfit::commands::json;

std::optional<double> parseAuto(const std::string &value, const char *name) {
    if (value == "auto") {
        return std::nullopt;
    }
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used == value.size()) {
            return v;
        }
    } catch (const std::exception &) {
    }
    throw qfit::Error(qfit::ErrorCode::InvalidArgument,
                      std::string(name) + " must be a number or \"auto\"");
}

void emit(const json &doc, const std::string &out) {
    const std::string text = qfit::io::dumpJson(doc);
    if (out.empty() || out == "-") {
        std::cout << text;
    } else {
        qfit::io::writeTextFile(out, text);
    }
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"qfit: least-squares fitting on a simulated quantum computer"};
    app.require_subcommand(1);

    std::string out;
    std::string csv;
    std::optional<std::uint64_t> seedFlag;

    // generate
    auto *gen = app.add_subcommand("generate", "Write a seeded synthetic fit problem");
    std::string kind = "random";
    qfit::fit::GeneratorSpec spec;
    std::vector<qfit::Index> planted;
    std::optional<double> kappa;
    std::optional<int> bins;
    gen->add_option("--kind", kind, "identity | poly | fourier | random")->capture_default_str();
    gen->add_option("--n", spec.n, "Number of data points")->capture_default_str();
    gen->add_option("--m", spec.m, "Number of fit functions")->capture_default_str();
    gen->add_option("--planted", planted, "0-based columns carrying the planted mass")
        ->delimiter(',');
    gen->add_option("--mass", spec.plantedMass, "Planted parameter mass")->capture_default_str();
    gen->add_option("--kappa", kappa, "Condition-number target");
    gen->add_option("--bins", bins, "Snap singular values to multiples of 1/bins");
    gen->add_option("--noise", spec.noise, "Noise level")->capture_default_str();

    // run / learn share the run config
    qfit::commands::RunConfig config;
    std::string t0Text = "auto";
    std::string cText = "auto";
    std::string variantText = "three-stage";
    std::string windowText = "sine";
    std::optional<std::uint64_t> shots;
    auto addRunOptions = [&](CLI::App *cmd) {
        cmd->add_option("problem,--problem", config.problemPath, "Problem file")->required();
        cmd->add_option("--T", config.clockSize, "Clock size (power of two)")->capture_default_str();
        cmd->add_option("--t0", t0Text, "Evolution time or \"auto\"")->capture_default_str();
        cmd->add_option("--C", cText, "Rotation constant or \"auto\"")->capture_default_str();
        cmd->add_option("--variant", variantText, "three-stage | fused")->capture_default_str();
        cmd->add_option("--window", windowText, "sine | rectangular")->capture_default_str();
        cmd->add_option("--shots", shots, "Swap-test shots (default ceil(1/delta^2))");
        cmd->add_option("--delta", config.delta, "Swap-test accuracy")->capture_default_str();
        cmd->add_option("--eps,--epsilon", config.epsilon, "Target accuracy")
            ->capture_default_str();
        cmd->add_option("--csv", csv, "Append scalar results to a CSV file");
    };
    auto *run = app.add_subcommand("run", "Prepare |lambda> and estimate the fit quality");
    addRunOptions(run);
    auto *learn = app.add_subcommand("learn", "Recover the dominant parameters");
    addRunOptions(learn);
    learn->add_option("--mprime,--mPrime", config.mPrime, "Number of parameters to keep")
        ->required();
    learn->add_option("--alpha", config.alpha, "Support-sampling constant")
        ->capture_default_str();

    // oracle
    auto *oracle = app.add_subcommand("oracle", "Classical least-squares solution");
    std::string oracleProblem;
    oracle->add_option("problem,--problem", oracleProblem, "Problem file")->required();

    // cost
    auto *cost = app.add_subcommand("cost", "Evaluate the asymptotic cost model");
    qfit::algorithms::CostQuery query;
    std::string algText = "eq3";
    bool noAmplification = false;
    cost->add_option("--n", query.n, "Number of data points")->capture_default_str();
    cost->add_option("--s", query.s, "Sparseness")->capture_default_str();
    cost->add_option("--kappa", query.kappa, "Condition number")->capture_default_str();
    cost->add_option("--eps,--epsilon", query.epsilon, "Accuracy")->capture_default_str();
    cost->add_option("--delta", query.delta, "Fit-quality accuracy")->capture_default_str();
    cost->add_option("--mprime,--mPrime", query.mPrime, "Learned parameters")
        ->capture_default_str();
    cost->add_option("--alg", algText, "eq3 | eq4 | alg2 | alg3")->capture_default_str();
    cost->add_flag("--no-amplification", noAmplification,
                   "Count repetitions without amplitude amplification");

    // replay
    auto *replay = app.add_subcommand("replay", "Regenerate a report from its embedded inputs");
    std::string replayInput;
    bool check = false;
    replay->add_option("report", replayInput, "Report or generated problem file")->required();
    replay->add_flag("--check", check, "Fail unless the output is byte-identical to the input");

    for (auto *cmd : {gen, run, learn, oracle, cost, replay}) {
        cmd->add_option("-o,--out", out, "Output path (default stdout)");
    }
    for (auto *cmd : {gen, run, learn}) {
        cmd->add_option("--seed", seedFlag, "Master seed (fallback: QFIT_SEED, then 0)");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        std::cerr << json{{"error", {{"code", "usage"}, {"message", e.what()}}}}.dump() << "\n";
        return 2;
    }

    try {
        const auto seed = [&] {
            if (seedFlag) {
                return *seedFlag;
            }
            return qfit::commands::seedFromEnvironment().value_or(0);
        };
        json doc;
        if (*gen) {
            spec.kind = qfit::fit::parseProblemKind(kind);
            spec.plantedSupport = planted;
            spec.conditionTarget = kappa;
            spec.commensurateBins = bins;
            doc = qfit::commands::generateDocument(spec, seed());
        } else if (*run || *learn) {
            config.t0 = parseAuto(t0Text, "--t0");
            config.c = parseAuto(cText, "--C");
            config.variant = qfit::algorithms::parsePipelineVariant(variantText);
            config.window = qfit::qsim::parseClockWindow(windowText);
            config.shots = shots;
            config.seed = seed();
            config.outputPath = out;
            const auto problem =
                qfit::io::problemFromJson(qfit::io::readJsonFile(config.problemPath));
            doc = *run ? qfit::commands::runDocument(config, problem)
                       : qfit::commands::learnDocument(config, problem);
        } else if (*oracle) {
            doc = qfit::commands::oracleDocument(
                qfit::io::problemFromJson(qfit::io::readJsonFile(oracleProblem)));
        } else if (*cost) {
            query.algorithm = qfit::algorithms::parseCostAlgorithm(algText);
            query.amplitudeAmplification = !noAmplification;
            doc = qfit::commands::costDocument(query);
        } else if (*replay) {
            const auto original = qfit::io::readJsonFile(replayInput);
            doc = qfit::commands::replay(original);
            if (check && qfit::io::dumpJson(doc) != qfit::io::dumpJson(original)) {
                throw qfit::Error(qfit::ErrorCode::Schema,
                                  "replayed report differs from '" + replayInput + "'");
            }
        }
        emit(doc, out);
        if (!csv.empty()) {
            qfit::commands::appendCsv(csv, doc);
        }
    } catch (const std::exception &e) {
        std::cerr << qfit::commands::errorDocument(e).dump() << "\n";
        return 1;
    }
    return 0;
}
