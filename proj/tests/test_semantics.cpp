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

#include <cmath>
#include <random>

#include "doctest.h"
#include "json.hpp"
#include "support.hpp"

using namespace mmqba;
using testing::fixture;
using testing::geometric_partial;

namespace {

Word repeat(const std::string& prefix, const std::string& cycle, std::size_t periods) {
    Word w = split_symbols(prefix);
    const Word c = split_symbols(cycle);
    for (std::size_t k = 0; k < periods; ++k) w.insert(w.end(), c.begin(), c.end());
    return w;
}

// Closed forms for example1 on a^3 b^w: alpha_j = 2/3 (1/3)^(j-1) for j <= 3,
// then 4/9 of the remaining (1/27)(1/9)^(j-4).
double example1_alpha(std::size_t j) {
    if (j <= 3) return 2.0 / 3.0 * std::pow(1.0 / 3.0, static_cast<double>(j - 1));
    return 4.0 / 9.0 / 27.0 * std::pow(1.0 / 9.0, static_cast<double>(j - 4));
}

}  // namespace

TEST_CASE("step: one symbol on example1") {
    const Mmqba a = fixture("example1.qba");
    const auto [s, rec] = step(a, start_state(a), "a");
    CHECK(rec.alpha == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(rec.rho == 0.0);
    CHECK(std::abs(s.nonhalt(0) - 1.0 / std::sqrt(3.0)) < 1e-15);
    CHECK(std::abs(s.nonhalt(1)) == 0.0);
    CHECK(std::abs(s.nonhalt(2)) == 0.0);
    CHECK(s.acc(a) == doctest::Approx(2.0 / 3.0));
    CHECK_THROWS_AS(step(a, s, "c"), UnknownSymbolError);
}

TEST_CASE("step: the zero state is a fixed point") {
    const Mmqba a = fixture("example1.qba");
    TotalState z = initial_total_state(a);
    z.nonhalt.setZero();
    const auto [s, rec] = step(a, z, "b");
    CHECK(rec.alpha == 0.0);
    CHECK(rec.rho == 0.0);
    CHECK(s.nonhalt.norm() == 0.0);
}

TEST_CASE("run_prefix on example1") {
    const Mmqba a = fixture("example1.qba");
    const Trace t = run_prefix(a, split_symbols("aaab"));
    REQUIRE(t.size() == 4);
    CHECK(t[2].acc == doctest::Approx(26.0 / 27.0).epsilon(1e-14));
    CHECK(t[2].rej == 0.0);
    CHECK(t[3].alpha == doctest::Approx(4.0 / 243.0).epsilon(1e-13));
    CHECK(t[3].rho == doctest::Approx(4.0 / 243.0).epsilon(1e-13));
    CHECK(t[3].step == 4);
    CHECK(t[3].symbol == "b");

    const Trace tb = run_prefix(a, split_symbols("b"));
    CHECK(tb[0].acc == doctest::Approx(4.0 / 9.0).epsilon(1e-14));
    CHECK(tb[0].rej == doctest::Approx(4.0 / 9.0).epsilon(1e-14));

    CHECK(run_prefix(a, {}).empty());
    CHECK_THROWS_AS(run_prefix(a, split_symbols("ax")), UnknownSymbolError);
}

TEST_CASE("the end marker is applied once before the first symbol") {
    Mmqba a = fixture("example1.qba");
    CHECK(start_state(a).nonhalt == initial_total_state(a).nonhalt);
    // A '#' that swaps q0 with the accepting q1 is measured immediately.
    Matrix swap = Matrix::Identity(3, 3);
    swap(0, 0) = swap(1, 1) = 0.0;
    swap(0, 1) = swap(1, 0) = 1.0;
    a.end_marker = swap;
    const TotalState s = start_state(a);
    CHECK(s.acc(a) == 1.0);
    CHECK(s.nonhalt.norm() == 0.0);
    const Trace t = run_prefix(a, split_symbols("a"));
    CHECK(t[0].step == 1);
    CHECK(t[0].alpha == 0.0);
}

TEST_CASE("run_lasso on the worked examples") {
    SUBCASE("example1, a^3 b^w, p = 0.8") {
        const auto v = run_lasso(fixture("example1.qba"), LassoWord::parse("aaa", "b"), Cutpoint(0.8), {200});
        CHECK(v.status == Status::Accepted);
        CHECK(std::abs(v.acc_lower - 53.0 / 54.0) <= 1e-9);
        CHECK(std::abs(v.rej_lower - 1.0 / 54.0) <= 1e-9);
        CHECK(v.acc_limit == ClauseStatus::Certified);
        CHECK(v.rej_limit == ClauseStatus::Certified);
        CHECK(v.buchi == ClauseStatus::Certified);
    }
    SUBCASE("example1, b^w, p = 0.8") {
        const auto v = run_lasso(fixture("example1.qba"), LassoWord::parse("", "b"), Cutpoint(0.8), {200});
        CHECK(v.status == Status::Rejected);
        CHECK(v.acc_limit == ClauseStatus::Refuted);
        CHECK(v.acc_lower + v.nonhalt_norm_sq < 0.8);
    }
    SUBCASE("a^w automaton, p = 0.6") {
        const auto v = run_lasso(fixture("a_omega.qba"), LassoWord::parse("", "a"), Cutpoint(0.6), {200});
        CHECK(v.status == Status::Accepted);
        CHECK(std::abs(v.acc_lower - 0.75) <= 1e-9);
        CHECK(std::abs(v.rej_lower - 0.25) <= 1e-9);
    }
    SUBCASE("ex3, (ab)^w, p = 1/2") {
        const auto v = run_lasso(fixture("ex3.qba"), LassoWord::parse("", "ab"), Cutpoint(0.5), {200});
        CHECK(v.status == Status::Accepted);
        CHECK(v.acc_lower >= 1.0 - 1e-9);
        CHECK(v.rej_lower == 0.0);
    }
    SUBCASE("invariants of every verdict") {
        for (const auto& [file, pre, cyc] : std::vector<std::tuple<std::string, std::string, std::string>>{
                 {"example1.qba", "ab", "ba"}, {"ex5.qba", "b", "a"}, {"swap.qba", "", "a"}}) {
            const auto v = run_lasso(fixture(file), LassoWord::parse(pre, cyc), Cutpoint(0.7), {64});
            CHECK(v.acc_lower + v.rej_lower <= 1.0 + 1e-9);
            CHECK(v.rej_lower <= v.rej_upper);
        }
    }
}

TEST_CASE("run_lasso argument checks") {
    const Mmqba a = fixture("example1.qba");
    CHECK_THROWS_AS(LassoWord::parse("a", ""), std::invalid_argument);
    CHECK_THROWS_AS(run_lasso(a, LassoWord::parse("", "c"), Cutpoint(0.8)), UnknownSymbolError);
    RunBudget b;
    b.max_periods = 0;
    CHECK_THROWS_AS(run_lasso(a, LassoWord::parse("", "a"), Cutpoint(0.8), b), std::invalid_argument);
    b = {};
    b.beta = 0.0;
    CHECK_THROWS_AS(b.check(), std::invalid_argument);
    b = {};
    b.visit_eps = 0.0;
    CHECK_THROWS_AS(b.check(), std::invalid_argument);
}

TEST_CASE("the swap automaton visits once and halts") {
    const Mmqba a = fixture("swap.qba");
    const Trace t = run_prefix(a, repeat("", "a", 50));
    CHECK(t[0].acc == 1.0);
    for (std::size_t h = 2; h <= t.size(); ++h) {
        const auto r = check_acceptance_clauses(std::span(t).first(h), Cutpoint(0.8), 1e-12);
        CHECK(r.buchi_count == 1);
        CHECK(r.buchi == ClauseStatus::Refuted);
        CHECK(r.acc_limit == ClauseStatus::Certified);
    }
    RunBudget literal;
    literal.mode = CheckMode::Literal;
    CHECK(run_lasso(a, LassoWord::parse("", "a"), Cutpoint(0.8)).status == Status::Rejected);
    // The literal test only counts visits, so it accepts at step 1.
    CHECK(run_lasso(a, LassoWord::parse("", "a"), Cutpoint(0.8), literal).status == Status::Accepted);
}

TEST_CASE("check_acceptance_clauses against closed forms") {
    const Mmqba a = fixture("example1.qba");
    SUBCASE("a^3 b^w at j = 50") {
        const Trace t = run_prefix(a, repeat("aaa", "b", 47));
        REQUIRE(t.size() == 50);
        double acc = 0.0;
        std::size_t visible = 0;
        for (std::size_t j = 1; j <= 50; ++j) {
            acc += example1_alpha(j);
            if (example1_alpha(j) > 1e-12) ++visible;
        }
        CHECK(std::abs(t.back().acc - acc) <= 1e-12);
        const auto r = check_acceptance_clauses(t, Cutpoint(0.8), 1e-100);
        CHECK(r.buchi_count == 50);
        CHECK(r.acc_limit == ClauseStatus::Certified);
        CHECK(r.rej_limit == ClauseStatus::Certified);
        CHECK(check_acceptance_clauses(t, Cutpoint(0.8), 1e-12).buchi_count == visible);
    }
    SUBCASE("b^w at j = 50") {
        const Trace t = run_prefix(a, repeat("", "b", 50));
        const double acc = geometric_partial(4.0 / 9.0, 1.0 / 9.0, 50);
        CHECK(std::abs(t.back().acc - acc) <= 1e-12);
        CHECK(std::abs(t.back().rej - acc) <= 1e-12);
        const auto r = check_acceptance_clauses(t, Cutpoint(0.8), 1e-12);
        CHECK(r.acc_limit == ClauseStatus::Refuted);
        CHECK(r.rej_limit == ClauseStatus::Certified);
    }
    SUBCASE("no accepting states") {
        const Trace t = run_prefix(fixture("empty.qba"), repeat("", "ab", 10));
        CHECK(check_acceptance_clauses(t, Cutpoint(0.6), 1e-12).buchi_count == 0);
    }
    CHECK_THROWS_AS(check_acceptance_clauses({}, Cutpoint(0.8), 1e-12), std::invalid_argument);
}

TEST_CASE("run_mmqfa") {
    const Mmqfa f = finite_language_mmqfa({split_symbols("ab")}, {"a", "b"});
    auto r = run_mmqfa(f, split_symbols("ab"));
    CHECK(r.p_accept == 1.0);
    CHECK(r.p_reject == 0.0);
    r = run_mmqfa(f, split_symbols("aa"));
    CHECK(r.p_accept == 0.0);
    CHECK(r.p_reject == 1.0);
    r = run_mmqfa(f, {});
    CHECK(r.p_reject == 1.0);
    CHECK(r.p_accept + r.p_reject + r.remaining_norm_sq == doctest::Approx(1.0));
}

TEST_CASE("convergence on the (ab)^w, odd-a and (aab)^w examples") {
    const std::vector<std::tuple<std::string, std::string>> cases{{"ex3.qba", "ab"}, {"ex4.qba", "ab"}, {"ex5.qba", "aab"}};
    for (const auto& [file, cyc] : cases) {
        CAPTURE(file);
        const Trace t = run_prefix(fixture(file), repeat("", cyc, 200));
        CHECK(t.back().acc >= 1.0 - 1e-6);
        for (const auto& rec : t) CHECK(rec.rho == 0.0);
    }
}

TEST_CASE("verdicts never flip under a larger budget") {
    const std::vector<std::tuple<std::string, std::string, std::string, double>> cases{
        {"example1.qba", "aaa", "b", 0.8}, {"example1.qba", "", "b", 0.8}, {"example1.qba", "", "a", 0.8},
        {"example1.qba", "b", "ab", 0.6},  {"a_omega.qba", "", "a", 0.6},  {"a_omega.qba", "", "b", 0.6},
        {"ex3.qba", "", "ab", 0.5},        {"ex3.qba", "", "a", 0.5},      {"ex4.qba", "", "ab", 1.0},
        {"ex5.qba", "", "aab", 0.5},       {"ex5.qba", "a", "b", 0.5},     {"swap.qba", "", "a", 0.8},
        {"empty.qba", "a", "b", 0.6}};
    for (const auto& [file, pre, cyc, p] : cases) {
        CAPTURE(file);
        CAPTURE(cyc);
        const Mmqba a = fixture(file);
        for (const auto mode : {CheckMode::Certify, CheckMode::Literal}) {
            Status settled = Status::Inconclusive;
            for (std::size_t n : {1, 2, 4, 8, 16, 64, 256, 1024}) {
                RunBudget b;
                b.max_periods = n;
                b.mode = mode;
                const Status s = run_lasso(a, LassoWord::parse(pre, cyc), Cutpoint(p), b).status;
                if (settled != Status::Inconclusive) CHECK(s == settled);
                if (s != Status::Inconclusive) settled = s;
            }
        }
    }
}

TEST_CASE("trace export") {
    const Trace t = run_prefix(fixture("example1.qba"), split_symbols("ab"));
    const std::string csv = trace_to_csv(t);
    CHECK(csv.rfind("j,symbol,alpha,rho,acc,rej,nonhalt_norm_sq\n", 0) == 0);
    CHECK(csv.find("1,a,0.66666666666666") != std::string::npos);
    const auto j = nlohmann::json::parse(trace_to_json(t));
    REQUIRE(j.size() == 2);
    CHECK(j[1]["symbol"] == "b");
    CHECK(j[0]["alpha"].get<double>() == t[0].alpha);
    const auto vj = nlohmann::json::parse(
        verdict_to_json(run_lasso(fixture("example1.qba"), LassoWord::parse("aaa", "b"), Cutpoint(0.8), {200}),
                        LassoWord::parse("aaa", "b"), Cutpoint(0.8)));
    CHECK(vj["status"] == "ACCEPTED");
}
