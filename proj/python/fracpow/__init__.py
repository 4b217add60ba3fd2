# Copyright 2026 The fracpow Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Real powers of black-box unitaries by phase estimation."""

from ._core import (
    BlackBox,
    CapabilityError,
    DimensionError,
    Error,
    GapReport,
    PrimeSpectrumFixture,
    QueryLedger,
    ResourceLimitError,
    SpectralFixture,
    ValidationError,
    convergents,
    dyadic_fixture,
    entangled_search,
    estimate_subspace_dim,
    exact_power_apply,
    first_primes,
    fixture_from_json,
    fixture_to_json,
    fractional_apply,
    function_apply,
    gap_check,
    inverse_free_apply,
    magnification_experiment,
    measure_error,
    power_apply,
    primorial,
    qft_fixture,
    recover_eigenphase,
    required_m,
    roots_of_unity_fixture,
    spectral_power,
    third_fixture,
    trace_distance,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
