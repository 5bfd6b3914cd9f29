# Copyright 2026 The drfkit Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
# http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Exact multi-resource fair allocation: DRF, EDRF and PDRF.

Scenarios are dicts (or JSON strings) of the form
``{"resources": [9, 18], "users": [{"id": "A", "demand": [1, 4]}, ...]}``.
Exact quantities come back as ``fractions.Fraction``.
"""

import json

from . import _core

__all__ = ["drf", "pdrf", "edrf", "cycles", "decompose", "bench"]
__version__ = "0.1.0"


def _text(scenario):
    return scenario if isinstance(scenario, str) else json.dumps(scenario)


def drf(scenario, remove_saturated=True, trace=False):
    """Indivisible DRF by progressive filling."""
    return _core.drf(_text(scenario), remove_saturated, trace)


def pdrf(scenario, finishing_pass=False):
    """Closed-form PDRF allocation with its cycle factor k."""
    return _core.pdrf(_text(scenario), finishing_pass)


def edrf(scenario):
    """Divisible (extended) DRF."""
    return _core.edrf(_text(scenario))


def cycles(scenario):
    """Cycle profile of the DRF main loop."""
    return _core.cycles(_text(scenario))


def decompose(scenario):
    """Experimental higher-order cycle decomposition."""
    return _core.decompose(_text(scenario))


def bench(users=1000, resources=10, demands="1:10", reserves="50000:100000", trials=30, seed=1,
          strict_drf=False, finishing_pass=False, threads=0):
    """Seeded DRF vs PDRF deviation experiment; returns the stats document as a dict."""
    return json.loads(_core.bench(users, resources, demands, reserves, trials, seed, strict_drf,
                                  finishing_pass, threads))
