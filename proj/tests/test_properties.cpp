// Copyright 2026 The mmqba Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <chrono>

#include "doctest.h"
#include "property_suite.hpp"

using namespace mmqba;
using testing::fixture;

TEST_CASE("property suite: 10^4 randomized runs") {
    const auto t0 = std::chrono::steady_clock::now();
    const auto st = testing::run_property_suite(20261015, 10000);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    CAPTURE(st.worst_case);
    CHECK(st.cases == 10000);
    CHECK(st.max_norm_error <= 1e-9);
    CHECK(st.max_monotone_drop == 0.0);
    CHECK(st.max_partition_error <= 1e-12);
    CHECK(st.max_state_norm_error <= 1e-12);
    CHECK(secs < 30.0);
}

TEST_CASE("property: save/load round-trip preserves validation") {
    for (const auto& name : testing::valid_fixtures()) {
        CAPTURE(name);
        const Mmqba a = fixture(name);
        const Mmqba b = load_mmqba(save_automaton(a));
        CHECK(validate(b).size() == validate(a).size());
        for (std::size_t s = 0; s < a.alphabet.size(); ++s) CHECK(max_abs(a.unitaries[s] - b.unitaries[s]) == 0.0);
    }
}

TEST_CASE("property: every trace agrees with step-by-step prefixes") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 200; ++trial) {
        const auto names = testing::valid_fixtures();
        const Mmqba a = fixture(names[rng() % names.size()]);
        const Word w = testing::random_word(a, 1 + rng() % 20, rng);
        const auto full = run_prefix(a, w);
        REQUIRE(full.size() == w.size());
        const std::size_t cut = rng() % w.size();
        const auto part = run_prefix(a, Word(w.begin(), w.begin() + static_cast<long>(cut) + 1));
        CHECK(part.back().acc == full[cut].acc);
        CHECK(part.back().rej == full[cut].rej);
    }
}

TEST_CASE("property: lasso verdicts are stable in the number of periods") {
    // Once a verdict is ACCEPTED or REJECTED it stays so for larger budgets.
    for (const char* kind : {"positive", "negative"}) {
        for (const auto& c : testing::lasso_cases(kind)) {
            CAPTURE(c.name());
            const Mmqba a = fixture(c.automaton);
            Status first = Status::Inconclusive;
            for (std::size_t periods : {64, 256, 1024, 4096}) {
                RunBudget b;
                b.max_periods = periods;
                const auto v = run_lasso(a, c.word, Cutpoint(c.cutpoint), b);
                if (first != Status::Inconclusive) CHECK(v.status == first);
                if (first == Status::Inconclusive) first = v.status;
            }
            CHECK(first == (std::string(kind) == "positive" ? Status::Accepted : Status::Rejected));
        }
    }
}
