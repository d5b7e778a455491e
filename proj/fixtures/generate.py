#!/usr/bin/env python3
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

"""Writes the hand-entered automata in this directory.

Matrices are row-major, entry [s][t] = <q_s|V|q_t>. Irrational entries are
the nearest double.
"""

import json
import math
import pathlib

HERE = pathlib.Path(__file__).resolve().parent
r2, r3, r5 = math.sqrt(2), math.sqrt(3), math.sqrt(5)


def mat(rows):
    return [[[float(x), 0.0] for x in row] for row in rows]


def write(name, states, alphabet, accepting, rejecting, unitaries, initial=None):
    doc = {
        "type": "mmqba",
        "states": states,
        "alphabet": alphabet,
        "initial": initial or states[0],
        "accepting": accepting,
        "rejecting": rejecting,
        "unitaries": {k: mat(v) for k, v in unitaries.items()},
    }
    (HERE / name).write_text(json.dumps(doc, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")


write("example1.qba", ["q0", "q1", "q2"], ["a", "b"], ["q1"], ["q2"], {
    "a": [[1 / r3, r2 / r3, 0], [-r2 / r3, 1 / r3, 0], [0, 0, 1]],
    "b": [[1 / 3, 2 / 3, 2 / 3], [2 / 3, 1 / 3, -2 / 3], [2 / 3, -2 / 3, 1 / 3]],
})

write("a_omega.qba", ["q0", "q1", "q2"], ["a", "b"], ["q1"], ["q2"], {
    "a": [[math.sqrt(1 / 5), math.sqrt(1 / 2), -math.sqrt(3 / 10)],
          [math.sqrt(3 / 5), 0, math.sqrt(2 / 5)],
          [math.sqrt(1 / 5), -math.sqrt(1 / 2), -math.sqrt(3 / 10)]],
    "b": [[0, 1, 0], [0, 0, 1], [1, 0, 0]],
})

write("ex3.qba", ["q0", "q1", "q_acc", "q_rej"], ["a", "b"], ["q_acc"], ["q_rej"], {
    "a": [[0, 0, 0, 1], [1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0]],
    "b": [[0, 3 / 5, 4 / 5, 0], [0, 0, 0, 1], [0, 4 / 5, -3 / 5, 0], [1, 0, 0, 0]],
})

write("ex4.qba", ["q0", "q1", "q_acc", "q_rej"], ["a", "b"], ["q_acc"], ["q_rej"], {
    "a": [[0, 1, 0, 0], [r3 / 2, 0, -1 / 2, 0], [1 / 2, 0, r3 / 2, 0], [0, 0, 0, 1]],
    "b": [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
})

write("ex5.qba", ["q0", "q1", "q2", "q_acc", "q4", "q5"], ["a", "b"], ["q_acc"], ["q4", "q5"], {
    "a": [[0, 0, 0, 1, 0, 0], [1, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0],
          [0, 0, 0, 0, 1, 0], [0, 0, 1, 0, 0, 0], [0, 0, 0, 0, 0, 1]],
    "b": [[0, 0, 4 / 5, 3 / 5, 0, 0], [0, 0, 0, 0, 1, 0], [0, 0, 0, 0, 0, 1],
          [0, 0, 3 / 5, -4 / 5, 0, 0], [1, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0]],
})

write("no_entry.qba", ["q0", "q1", "q2"], ["σ"], [], [], {
    "σ": [[1 / r2, 0, -1 / r2], [0, 1, 0], [1 / r2, 0, 1 / r2]],
})

write("swap.qba", ["q0", "q1"], ["a"], ["q1"], [], {
    "a": [[0, 1], [1, 0]],
})

write("empty.qba", ["q0'", "qr'"], ["a", "b"], [], ["qr'"], {
    "a": [[1, 0], [0, 1]],
    "b": [[1, 0], [0, 1]],
})

write("identity.qba", ["q0"], ["a", "b"], [], [], {
    "a": [[1]],
    "b": [[1]],
})

# Example 1 with V_a[0][0] replaced by 0.5.
write("broken.qba", ["q0", "q1", "q2"], ["a", "b"], ["q1"], ["q2"], {
    "a": [[0.5, r2 / r3, 0], [-r2 / r3, 1 / r3, 0], [0, 0, 1]],
    "b": [[1 / 3, 2 / 3, 2 / 3], [2 / 3, 1 / 3, -2 / 3], [2 / 3, -2 / 3, 1 / 3]],
})

# finite_ab.qba, finite_a_aa.qba and finite_epsilon.qba are built by the CLI:
#   qba construct finite --alphabet ab --word ab -o finite_ab.qba
#   qba construct finite --alphabet ab --word a --word aa -o finite_a_aa.qba
#   qba construct finite --alphabet ab --word "" -o finite_epsilon.qba
