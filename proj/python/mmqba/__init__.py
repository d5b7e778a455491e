# Copyright 2026 The mmqba Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Measure-many quantum Buchi automata: simulation, analysis, constructions."""

import json as _json

from ._mmqba import (
    AlphabetMismatchError,
    Automaton,
    FiniteAutomaton,
    FormatError,
    PreconditionError,
    UnknownSymbolError,
    empty,
    finite_language,
    load,
    loads,
    no_entry_check,
    restrict,
    run_mmqfa,
    union,
    validate,
)
from . import _mmqba

__all__ = [
    "AlphabetMismatchError", "Automaton", "FiniteAutomaton", "FormatError", "PreconditionError",
    "UnknownSymbolError", "check_emptiness", "decompose", "empty", "estimate_limit", "finite_language",
    "load", "loads", "no_entry_check", "restrict", "run_lasso", "run_mmqfa", "run_prefix", "union", "validate",
]


def run_prefix(automaton, word):
    """Per-step records (dicts) for '#' followed by `word`."""
    return _json.loads(_mmqba._run_prefix(automaton, word))


def run_lasso(automaton, prefix, cycle, cutpoint, **budget):
    """Verdict for prefix cycle^w. Keyword options: max_periods, mode, beta, epsilon, visit_eps."""
    return _json.loads(_mmqba._run_lasso(automaton, prefix, cycle, cutpoint, **budget))


def decompose(automaton):
    return _json.loads(_mmqba._decompose(automaton))


def estimate_limit(automaton, prefix, cycle, periods=64, period_len=0):
    return _mmqba._estimate_limit(automaton, prefix, cycle, periods, period_len)


def check_emptiness(automaton, cutpoint, max_rounds=6, threads=1, mode="certify"):
    return _json.loads(_mmqba._check_emptiness(automaton, cutpoint, max_rounds, threads, mode))
