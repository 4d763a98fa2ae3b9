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
#include <random>

#include "qfit/types.hpp"

namespace qfit {

/// Independent random streams derived from one master seed.
enum class SeedStream : std::uint64_t {
    Problem = 1,
    StatePrep = 2,
    SwapTest = 3,
    SupportSampling = 4,
    Tomography = 5,
};

/// splitmix64 finalizer.
std::uint64_t mixSeed(std::uint64_t x) noexcept;

/// Counter scheme: stream i of master m is mixSeed(m ^ (golden * i)).
std::uint64_t deriveSeed(std::uint64_t master, SeedStream stream) noexcept;
std::uint64_t deriveSeed(std::uint64_t master, std::uint64_t counter) noexcept;

/// Seeded generator whose draws do not depend on the standard library's
/// distribution implementations, so sample streams are identical across
/// platforms.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1) with 53 random bits.
    double uniform();
    double normal();
    /// Complex Gaussian with E|z|^2 = 1.
    Complex complexNormal();
    /// Uniform integer on [0, n).
    std::uint64_t below(std::uint64_t n);

  private:
    std::mt19937_64 engine_;
    bool hasSpare_ = false;
    double spare_ = 0.0;
};

}  // namespace qfit
