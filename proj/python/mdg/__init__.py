# Copyright 2026 The iRouting Authors
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

"""Malware detection game: equilibria, route selection and simulation."""

import json

from ._mdg import (
    ConfigError,
    Error,
    NoRouteError,
    __version__,
    campaign_csv,
    default_config,
    nash_equilibria,
    normalize_config,
    scaled_game,
    simulate,
    solve_maximin,
    solve_pure_commitment,
    solve_sse,
    verify,
)


def load_config(path):
    """Reads a JSON config file and returns it with defaults filled in."""
    with open(path) as f:
        return json.loads(normalize_config(f.read()))


__all__ = [
    "ConfigError",
    "Error",
    "NoRouteError",
    "__version__",
    "campaign_csv",
    "default_config",
    "load_config",
    "nash_equilibria",
    "normalize_config",
    "scaled_game",
    "simulate",
    "solve_maximin",
    "solve_pure_commitment",
    "solve_sse",
    "verify",
]
