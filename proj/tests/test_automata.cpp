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

#include <algorithm>

#include "doctest.h"
#include "support.hpp"

using namespace mmqba;

namespace {

bool has_violation(const std::vector<Violation>& v, const std::string& name) {
    return std::any_of(v.begin(), v.end(), [&](const Violation& x) { return x.invariant == name; });
}

std::string example1_text() {
    return R"({
  "type": "mmqba",
  "states": ["q0", "q1", "q2"],
  "alphabet": ["a", "b"],
  "initial": "q0",
  "accepting": ["q1"],
  "rejecting": ["q2"],
  "unitaries": {
    "a": [[0.57735026918962584, 0.81649658092772603, 0], [-0.81649658092772603, 0.57735026918962584, 0], [0, 0, 1]],
    "b": [[[0.33333333333333331, 0], [0.66666666666666663, 0], [0.66666666666666663, 0]],
          [[0.66666666666666663, 0], [0.33333333333333331, 0], [-0.66666666666666663, 0]],
          [[0.66666666666666663, 0], [-0.66666666666666663, 0], [0.33333333333333331, 0]]]
  }
})";
}

}  // namespace

TEST_CASE("load example1") {
    const Mmqba a = load_mmqba(example1_text());
    CHECK(a.dim() == 3);
    CHECK(a.alphabet == std::vector<Symbol>{"a", "b"});
    CHECK(a.accepting == std::vector<std::size_t>{1});
    CHECK(a.rejecting == std::vector<std::size_t>{2});
    CHECK(validate(a).empty());
    // Row-major file entry [1][0] is <q1|V_a|q0>.
    CHECK(a.unitary("a")(1, 0).real() == doctest::Approx(-std::sqrt(2.0 / 3.0)).epsilon(1e-15));
    CHECK_FALSE(a.end_marker.has_value());
}

TEST_CASE("validate reports each broken invariant") {
    Mmqba a = testing::fixture("example1.qba");
    SUBCASE("disjointness") {
        a.rejecting.push_back(1);
        const auto v = validate(a);
        REQUIRE(v.size() == 1);
        CHECK(v[0].invariant == "disjointness");
        CHECK(v[0].detail.find("q1") != std::string::npos);
    }
    SUBCASE("unitarity") {
        a.unitaries[0](0, 0) = 0.5;
        const auto v = validate(a);
        REQUIRE(v.size() == 1);
        CHECK(v[0].invariant == "unitarity(V_a)");
    }
    SUBCASE("initial state must not halt") {
        a.initial = 2;
        CHECK(has_violation(validate(a), "initial_nonhalting"));
    }
    SUBCASE("one unitary per symbol") {
        a.unitaries.pop_back();
        CHECK_FALSE(validate(a).empty());
    }
    SUBCASE("dimension") {
        a.unitaries[1] = Matrix::Identity(2, 2);
        CHECK_FALSE(validate(a).empty());
    }
    CHECK_THROWS_AS(require_valid(a), std::invalid_argument);
}

TEST_CASE("broken fixture lists the unitarity violation") {
    const auto any = load_automaton_file(testing::fixture_path("broken.qba"));
    const auto v = validate(std::get<Mmqba>(any));
    REQUIRE(v.size() == 1);
    CHECK(v[0].invariant == "unitarity(V_a)");
}

TEST_CASE("load errors") {
    SUBCASE("empty alphabet") {
        std::string text = example1_text();
        text.replace(text.find(R"(["a", "b"])"), 10, "[]");
        CHECK_THROWS_WITH_AS(load_automaton(text), doctest::Contains("alphabet must be nonempty"), FormatError);
    }
    SUBCASE("syntax error carries line and column") {
        try {
            load_automaton("{\n  \"type\": \"mmqba\",\n  \"states\": [\"q0\",, ]\n}");
            FAIL("expected a parse error");
        } catch (const FormatError& e) {
            CHECK(e.line() == 3);
            CHECK(e.column() > 0);
        }
    }
    SUBCASE("unknown state names carry the element path") {
        std::string text = example1_text();
        text.replace(text.find(R"("accepting": ["q1"])"), 19, R"("accepting": ["qX"])");
        try {
            load_automaton(text);
            FAIL("expected an error");
        } catch (const FormatError& e) {
            CHECK(e.path() == "/accepting/0");
        }
    }
    SUBCASE("reserved symbols") {
        std::string text = example1_text();
        text.replace(text.find(R"(["a", "b"])"), 10, R"(["a", "$"])");
        CHECK_THROWS_AS(load_automaton(text), FormatError);
    }
    SUBCASE("matrix shape") {
        std::string text = example1_text();
        text.replace(text.find("[0, 0, 1]]"), 10, "[0, 0]]");
        CHECK_THROWS_AS(load_automaton(text), FormatError);
    }
    SUBCASE("mmqfa needs '$'") {
        std::string text = example1_text();
        text.replace(text.find("\"mmqba\""), 7, "\"mmqfa\"");
        CHECK_THROWS_WITH_AS(load_automaton(text), doctest::Contains("'$'"), FormatError);
    }
    CHECK_THROWS_AS(load_automaton_file("/nonexistent/file.qba"), std::ios_base::failure);
}

TEST_CASE("round trip of the (ab)^w automaton") {
    const Mmqba a = testing::fixture("ex3.qba");
    const std::string text = save_automaton(a);
    const Mmqba b = load_mmqba(text);
    CHECK(b.states == a.states);
    CHECK(b.alphabet == a.alphabet);
    CHECK(b.initial == a.initial);
    CHECK(b.accepting == a.accepting);
    CHECK(b.rejecting == a.rejecting);
    for (std::size_t i = 0; i < a.unitaries.size(); ++i) CHECK(b.unitaries[i] == a.unitaries[i]);
    // Canonical documents are a fixed point of save . load.
    CHECK(save_automaton(b) == text);
}

TEST_CASE("property: round trip is exact and preserves validation for every fixture") {
    std::vector<std::string> all = testing::valid_fixtures();
    all.push_back("broken.qba");
    for (const auto& name : all) {
        CAPTURE(name);
        const auto a = std::get<Mmqba>(load_automaton_file(testing::fixture_path(name)));
        const auto b = load_mmqba(save_automaton(a));
        for (std::size_t i = 0; i < a.unitaries.size(); ++i) {
            // Exact equality: every double survives to the last bit.
            CHECK(b.unitaries[i] == a.unitaries[i]);
        }
        const auto va = validate(a), vb = validate(b);
        REQUIRE(va.size() == vb.size());
        for (std::size_t i = 0; i < va.size(); ++i) CHECK(va[i].invariant == vb[i].invariant);
    }
}

TEST_CASE("end marker and mmqfa documents") {
    Mmqba a = testing::fixture("example1.qba");
    a.end_marker = a.unitaries[0];
    const Mmqba b = load_mmqba(save_automaton(a));
    REQUIRE(b.end_marker.has_value());
    CHECK(*b.end_marker == *a.end_marker);

    const Mmqfa f = finite_language_mmqfa({split_symbols("ab")}, {"a", "b"});
    const auto any = load_automaton(save_automaton(f));
    REQUIRE(std::holds_alternative<Mmqfa>(any));
    CHECK(std::get<Mmqfa>(any).terminal == f.terminal);
    CHECK(validate(std::get<Mmqfa>(any)).empty());
}

TEST_CASE("symbols are Unicode scalar values") {
    const Mmqba a = testing::fixture("no_entry.qba");
    CHECK(a.alphabet == std::vector<Symbol>{"σ"});
    CHECK(split_symbols("aσb") == Word{"a", "σ", "b"});
    CHECK(join_symbols(Word{"a", "σ"}) == "aσ");
    CHECK_THROWS_AS(a.symbol_index("x"), UnknownSymbolError);
}

TEST_CASE("cutpoint range") {
    CHECK(Cutpoint(1.0).value() == 1.0);
    CHECK(Cutpoint(0.5).below_half());
    CHECK_FALSE(Cutpoint(0.6).below_half());
    CHECK_THROWS_AS(Cutpoint(0.0), std::invalid_argument);
    CHECK_THROWS_AS(Cutpoint(1.5), std::invalid_argument);
}
