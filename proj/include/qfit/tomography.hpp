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
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qfit/types.hpp"

namespace qfit::tomography {

struct TomographyBudget {
    std::uint64_t settings = 1;
    std::uint64_t shotsPerSetting = 1;
    double epsilon = 0.1;

    [[nodiscard]] std::uint64_t totalShots() const noexcept {
        return settings * shotsPerSetting;
    }
};

/// settings = ceil(a m'(log2 m' + 1)^2), shotsPerSetting = ceil(b m'/eps^2).
TomographyBudget planBudget(Index mPrime, double epsilon,
                            double settingsConstant = 1.0,
                            double shotsConstant = 1.0);

enum class SettingKind { Computational, Interference };

/// One measurement setting and its raw outcome counts. Interference settings
/// measure in {(|r> + e^{i phase}|j>)/sqrt2, (|r> - e^{i phase}|j>)/sqrt2,
/// everything else}.
struct SettingRecord {
    SettingKind kind = SettingKind::Computational;
    Index index = 0;
    Index reference = 0;
    double phase = 0.0;
    std::vector<std::uint64_t> counts;
};

struct ReconstructedState {
    ComplexVector amplitudes;
    Index referenceIndex = 0;
    TomographyBudget budget;
    std::vector<SettingRecord> settings;
    std::optional<double> fidelityVsOracle;
};

/// Each call yields a fresh copy of the state being learned.
using StateSource = std::function<ComplexVector()>;

/// Rotates the global phase so the first nonzero amplitude is real positive.
ComplexVector canonicalizePhase(const ComplexVector &v, double tolerance = 1e-12);

/// Linear-inversion pure-state tomography: magnitudes from computational
/// basis counts, relative phases from interference with the most probable
/// component. Throws Error(IllConditionedReference) when that component's
/// amplitude estimate is below 10 eps.
ReconstructedState reconstructPureState(const StateSource &source,
                                        const TomographyBudget &budget,
                                        std::uint64_t seed);

std::string toString(SettingKind kind);

}  // namespace qfit::tomography
