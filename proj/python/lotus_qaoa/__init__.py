# Copyright 2026 The LOTUS-QAOA Authors
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
"""Python bindings for the LOTUS-QAOA C++ core."""

from ._lotus import (
    CutResult,
    Graph,
    HfaParams,
    LipschitzReport,
    Schedule,
    baseline_optimize,
    brute_force_maxcut,
    depth_transfer,
    expectation,
    gen_erdos_renyi,
    hfa_dimension,
    hfa_generate,
    invariant_suite,
    lipschitz_certificate,
    load_records,
    lotus_optimize,
    max_layer_gap,
    minimize,
    optimizer_ids,
    probabilities,
    resample,
    run_sweep,
    score_records,
    standard_pack,
    standard_unpack,
    wilcoxon_signed_rank,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
