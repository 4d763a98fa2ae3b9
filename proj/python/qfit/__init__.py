# Copyright 2026 The qfit Authors

# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at

#     http://www.apache.org/licenses/LICENSE-2.0

# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Least-squares fitting on a simulated quantum computer."""

from ._qfit import (
    QfitError,
    apply_hermitian,
    classical_fit,
    condition_number,
    cost,
    embed,
    generate,
    learn,
    normalize,
    oracle,
    plan_budget,
    pseudoinverse,
    replay,
    run,
    singular_values,
    swap_test,
    tomography,
)

__all__ = [
    "QfitError",
    "apply_hermitian",
    "classical_fit",
    "condition_number",
    "cost",
    "embed",
    "generate",
    "learn",
    "normalize",
    "oracle",
    "plan_budget",
    "pseudoinverse",
    "replay",
    "run",
    "singular_values",
    "swap_test",
    "tomography",
]
