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

#include "qfit/commands.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qfit/error.hpp"
#include "qfit/linalg.hpp"
#include "qfit/random.hpp"

namespace qfit::commands {

namespace {

json optionalNumber(const std::optional<double> &v) {
    return v ? json(*v) : json("auto");
}

std::optional<double> autoOrNumber(const json &j) {
    if (j.is_string() && j.get<std::string>() == "auto") {
        return std::nullopt;
    }
    if (!j.is_number()) {
        throw Error(ErrorCode::Schema, "expected a number or \"auto\"");
    }
    return j.get<double>();
}

json header(const std::string &schema, const std::string &command) {
    return {{"schema", schema}, {"schemaVersion", io::kSchemaVersion}, {"command", command}};
}

ComplexMatrix rawDesignMatrix(const fit::FitProblem &p) {
    return p.designMatrix / p.normScale.cF;
}

ComplexVector rawOrdinates(const fit::FitProblem &p) {
    return p.yVector / p.normScale.cY;
}

json pipelineToJson(const algorithms::PipelineSpec &spec) {
    json stages = json::array();
    for (const auto &s : spec.stages) {
        stages.push_back(io::configToJson(s));
    }
    return {{"variant", algorithms::toString(spec.variant)},
            {"stages", std::move(stages)},
            {"fittingStage", io::configToJson(spec.fittingStage)}};
}

std::string csvField(const std::string &v) {
    if (v.find_first_of(",\"\n") == std::string::npos) {
        return v;
    }
    std::string quoted = "\"";
    for (char ch : v) {
        quoted += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    }
    return quoted + "\"";
}

void flatten(const json &j, const std::string &prefix,
             std::vector<std::pair<std::string, std::string>> &out) {
    for (const auto &[key, value] : j.items()) {
        const std::string name = prefix.empty() ? key : prefix + "." + key;
        if (value.is_object()) {
            flatten(value, name, out);
        } else if (value.is_number() || value.is_boolean()) {
            out.emplace_back(name, value.dump());
        } else if (value.is_string()) {
            out.emplace_back(name, csvField(value.get<std::string>()));
        }
    }
}

std::vector<std::pair<std::string, std::string>> scalarFields(const json &document) {
    std::vector<std::pair<std::string, std::string>> out;
    out.emplace_back("command", document.value("command", std::string{}));
    out.emplace_back("seed", document.contains("seed") ? document["seed"].dump() : "");
    if (document.contains("config")) {
        flatten(document["config"], "config", out);
    }
    if (document.contains("result")) {
        flatten(document["result"], "result", out);
    }
    return out;
}

}  // namespace

json configToJson(const RunConfig &config) {
    json j{{"problemPath", config.problemPath},
           {"T", config.clockSize},
           {"t0", optionalNumber(config.t0)},
           {"C", optionalNumber(config.c)},
           {"variant", algorithms::toString(config.variant)},
           {"window", qsim::toString(config.window)},
           {"delta", config.delta},
           {"epsilon", config.epsilon},
           {"mPrime", config.mPrime},
           {"alpha", config.alpha},
           {"seed", config.seed},
           {"outputPath", config.outputPath}};
    j["shots"] = config.shots ? json(*config.shots) : json("auto");
    return j;
}

RunConfig configFromJson(const json &j) {
    try {
        RunConfig c;
        c.problemPath = j.value("problemPath", std::string{});
        c.clockSize = j.at("T").get<Index>();
        c.t0 = autoOrNumber(j.at("t0"));
        c.c = autoOrNumber(j.at("C"));
        c.variant = algorithms::parsePipelineVariant(j.at("variant").get<std::string>());
        c.window = qsim::parseClockWindow(j.at("window").get<std::string>());
        const json &shots = j.at("shots");
        if (shots.is_number_unsigned()) {
            c.shots = shots.get<std::uint64_t>();
        } else if (!(shots.is_string() && shots.get<std::string>() == "auto")) {
            throw Error(ErrorCode::Schema, "shots must be a count or \"auto\"");
        }
        c.delta = j.at("delta").get<double>();
        c.epsilon = j.at("epsilon").get<double>();
        c.mPrime = j.at("mPrime").get<Index>();
        c.alpha = j.at("alpha").get<double>();
        c.seed = j.at("seed").get<std::uint64_t>();
        c.outputPath = j.value("outputPath", std::string{});
        return c;
    } catch (const json::exception &e) {
        throw Error(ErrorCode::Schema, std::string("bad run config: ") + e.what());
    }
}

std::optional<std::uint64_t> seedFromEnvironment() {
    const char *env = std::getenv("QFIT_SEED");
    if (env == nullptr || *env == '\0') {
        return std::nullopt;
    }
    char *end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (*end != '\0') {
        throw Error(ErrorCode::InvalidArgument, "QFIT_SEED must be an unsigned integer");
    }
    return static_cast<std::uint64_t>(v);
}

algorithms::PipelineOptions pipelineOptions(const RunConfig &config) {
    algorithms::PipelineOptions o;
    o.variant = config.variant;
    o.clockSize = config.clockSize;
    o.t0 = config.t0;
    o.c = config.c;
    o.window = config.window;
    o.epsilon = config.epsilon;
    return o;
}

std::uint64_t swapShots(const RunConfig &config) {
    return config.shots ? *config.shots : qsim::shotsForDelta(config.delta);
}

json generateDocument(const fit::GeneratorSpec &spec, std::uint64_t seed) {
    return io::problemToJson(fit::generateProblem(spec, seed));
}

json runDocument(const RunConfig &config, const fit::FitProblem &problem) {
    const auto options = pipelineOptions(config);
    const qsim::SpectralOperator op(linalg::embed(problem.designMatrix));
    const auto spec = algorithms::PipelineSpec::resolve(options, op);
    spec.validate(op);

    qsim::SwapTestPlan plan;
    plan.shots = swapShots(config);
    plan.delta = config.delta;
    plan.seed = deriveSeed(config.seed, SeedStream::SwapTest);

    json doc = header("qfit.fitReport", "run");
    doc["seed"] = config.seed;
    doc["config"] = configToJson(config);
    doc["problem"] = io::problemToJson(problem);
    doc["pipeline"] = pipelineToJson(spec);
    if (algorithms::dataOrthogonalToColumns(problem)) {
        doc["algorithm1"] = nullptr;
        doc["result"] = io::fitReportToJson(algorithms::degenerateFitReport(problem, spec, plan));
        return doc;
    }
    const auto alg1 = algorithms::algorithm1PrepareLambda(problem, spec, op);
    doc["algorithm1"] = io::algorithm1ToJson(alg1);
    doc["result"] =
        io::fitReportToJson(algorithms::algorithm2FitQuality(problem, spec, op, alg1, plan));
    return doc;
}

json learnDocument(const RunConfig &config, const fit::FitProblem &problem) {
    if (config.mPrime < 1) {
        throw Error(ErrorCode::InvalidArgument, "learn requires mPrime >= 1");
    }
    algorithms::LearnBudgets budgets;
    budgets.alpha = config.alpha;
    budgets.epsilon = config.epsilon;
    budgets.swap.shots = swapShots(config);
    budgets.swap.delta = config.delta;
    const auto report = algorithms::algorithm3Learn(problem, config.mPrime,
                                                    pipelineOptions(config), budgets,
                                                    config.seed);
    json doc = header("qfit.learnReport", "learn");
    doc["seed"] = config.seed;
    doc["config"] = configToJson(config);
    doc["problem"] = io::problemToJson(problem);
    doc["result"] = io::learnReportToJson(report);
    return doc;
}

json oracleDocument(const fit::FitProblem &problem) {
    const auto normalized = fit::classicalFit(problem);
    const auto original = fit::denormalize(normalized, problem.normScale,
                                           rawDesignMatrix(problem), rawOrdinates(problem));
    json doc = header("qfit.fitSolution", "oracle");
    doc["problem"] = io::problemToJson(problem);
    doc["result"] = {{"normalized", io::solutionToJson(normalized)},
                     {"original", io::solutionToJson(original)}};
    return doc;
}

json costDocument(const algorithms::CostQuery &query) {
    json doc = header("qfit.costReport", "cost");
    json result = io::costReportToJson(algorithms::costModel(query));
    doc["config"] = result["query"];
    doc["result"] = std::move(result);
    return doc;
}

json replay(const json &document) {
    if (!document.is_object()) {
        throw Error(ErrorCode::Schema, "replay expects a report document");
    }
    if (document.value("schema", std::string{}) == "qfit.problem") {
        if (!document.contains("generator") || document["generator"].is_null() ||
            !document.contains("seed") || document["seed"].is_null()) {
            throw Error(ErrorCode::Schema, "problem file was not produced by generate");
        }
        return generateDocument(io::generatorFromJson(document["generator"]),
                                document["seed"].get<std::uint64_t>());
    }
    const std::string command = document.value("command", std::string{});
    const auto problem = [&] { return io::problemFromJson(document.at("problem")); };
    if (command == "run") {
        io::requireSchema(document, "qfit.fitReport");
        return runDocument(configFromJson(document.at("config")), problem());
    }
    if (command == "learn") {
        io::requireSchema(document, "qfit.learnReport");
        return learnDocument(configFromJson(document.at("config")), problem());
    }
    if (command == "oracle") {
        io::requireSchema(document, "qfit.fitSolution");
        return oracleDocument(problem());
    }
    if (command == "cost") {
        io::requireSchema(document, "qfit.costReport");
        const json &q = document.at("config");
        algorithms::CostQuery query;
        query.n = q.at("n").get<double>();
        query.s = q.at("s").get<double>();
        query.kappa = q.at("kappa").get<double>();
        query.epsilon = q.at("epsilon").get<double>();
        query.delta = q.at("delta").get<double>();
        query.mPrime = q.at("mPrime").get<double>();
        query.algorithm = algorithms::parseCostAlgorithm(q.at("algorithm").get<std::string>());
        query.amplitudeAmplification = q.at("amplitudeAmplification").get<bool>();
        return costDocument(query);
    }
    throw Error(ErrorCode::Schema, "unknown report command '" + command + "'");
}

std::string csvHeader(const json &document) {
    std::string line;
    for (const auto &[name, value] : scalarFields(document)) {
        line += (line.empty() ? "" : ",") + name;
    }
    return line + "\n";
}

std::string csvRow(const json &document) {
    std::string line;
    bool first = true;
    for (const auto &[name, value] : scalarFields(document)) {
        line += (first ? "" : ",") + value;
        first = false;
    }
    return line + "\n";
}

void appendCsv(const std::string &path, const json &document) {
    const bool fresh = !std::filesystem::exists(path) || std::filesystem::file_size(path) == 0;
    std::ofstream out(path, std::ios::app | std::ios::binary);
    if (!out) {
        throw Error(ErrorCode::Io, "cannot write '" + path + "'");
    }
    if (fresh) {
        out << csvHeader(document);
    }
    out << csvRow(document);
}

json errorDocument(const std::exception &e) {
    std::string code = "internal";
    if (const auto *qe = dynamic_cast<const Error *>(&e)) {
        code = std::string(errorCodeName(qe->code()));
    }
    return {{"error", {{"code", code}, {"message", e.what()}}}};
}

}  // namespace qfit::commands
