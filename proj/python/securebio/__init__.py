# Copyright 2026 The securebio Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Secure biometric authentication toolkit.

Bit vectors are strings of '0'/'1'; parity-check matrices are lists of such
rows. Configurations, templates and reports are plain dicts with the same
layout as the command-line JSON files.
"""

import json as _json

from ._core import (
    Error,
    IoError,
    bit_negation,
    enumerate_coset,
    paper_check,
    preset_names,
    rank,
    sketch_leakage,
    syndrome,
    syndrome_decode,
)
from . import _core

__all__ = [
    "Error",
    "IoError",
    "attack",
    "authenticate",
    "bit_negation",
    "encrypted_distance",
    "enroll",
    "enumerate_coset",
    "linkage",
    "metrics",
    "paillier_keygen",
    "paper_check",
    "preset",
    "preset_names",
    "rank",
    "sketch_leakage",
    "syndrome",
    "syndrome_decode",
    "validate_config",
]

__version__ = "0.1.0"


def _dump(value):
    return _json.dumps(value)


def preset(name):
    """Built-in configuration ("sidebar-b" or "bsc16") as a dict."""
    return _json.loads(_core._preset(name))


def validate_config(config):
    """Normalized copy of config; raises Error when it is invalid."""
    return _json.loads(_core._validate_config(_dump(config)))


def enroll(config, biometric):
    """Enrolls biometric; returns {"template", ["key"], ["secret"]}."""
    return _json.loads(_core._enroll(_dump(config), biometric))


def authenticate(config, template, probe, key=None):
    """Returns (accepted, detail)."""
    accepted, detail = _core._authenticate(
        _dump(config), _dump(template), probe, None if key is None else _dump(key))
    return accepted, _json.loads(detail)


def metrics(config, fmt="json"):
    """Metric report as a dict, or the ROC CSV text when fmt == "csv"."""
    report, csv = _core._metrics(_dump(config))
    return csv if fmt == "csv" else _json.loads(report)


def attack(config):
    return _json.loads(_core._attack(_dump(config)))


def linkage(config):
    return _json.loads(_core._linkage(_dump(config)))


def paillier_keygen(prime_bits, seed):
    """Keypair {"p", "q", "n"} as hex strings."""
    return _json.loads(_core._paillier_keygen(prime_bits, seed))


def encrypted_distance(key, a, d, seed=1):
    """Decrypted value of the encrypted squared distance between a and d."""
    return int(_core._encrypted_distance(_dump(key), a, d, seed))
