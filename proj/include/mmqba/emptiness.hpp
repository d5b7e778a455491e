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

#ifndef MMQBA_EMPTINESS_HPP
#define MMQBA_EMPTINESS_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mmqba/automaton.hpp"
#include "mmqba/semantics.hpp"

namespace mmqba {

struct SearchBudget {
    std::size_t max_rounds = 6;
    double beta = 0.5;
    double epsilon = 1e-9;
    double visit_eps = 1e-12;
    CheckMode mode = CheckMode::Certify;
    /// Worker threads for candidate evaluation; 0 or 1 runs inline. Never
    /// changes the result.
    std::size_t threads = 1;

    /// Throws std::invalid_argument when a field is out of range.
    void check() const;
};

enum class SearchStatus { Nonempty, Inconclusive };

std::string to_string(SearchStatus s);

struct RoundStats {
    std::size_t round = 0;
    std::size_t max_periods = 0;
    /// Pairs (u, v) seen for the first time in this round.
    std::size_t new_candidates = 0;
    /// Simulations run: new pairs plus undecided pairs retried with more periods.
    std::size_t evaluations = 0;
};

struct Witness {
    LassoWord word;
    Verdict verdict;
    std::size_t round = 0;
};

struct SearchResult {
    SearchStatus status = SearchStatus::Inconclusive;
    std::optional<Witness> witness;
    /// Distinct (u, v) pairs simulated at least once.
    std::size_t candidates_tried = 0;
    std::size_t evaluations = 0;
    std::size_t rounds_completed = 0;
    std::vector<RoundStats> rounds;
};

/// Dovetailed search for an accepted lasso. Round r covers |u| <= r and
/// 1 <= |v| <= r in shortlex order (u major, v minor) with 2^r periods each.
/// Pairs already REJECTED, or whose run halted, cannot change verdict with
/// more periods and are not simulated again. The witness is the first
/// ACCEPTED pair of the first round that has one.
SearchResult check_emptiness(const Mmqba& a, Cutpoint p, const SearchBudget& b = {});

/// Number of new (u, v) pairs in round r over k symbols.
std::size_t expected_new_candidates(std::size_t k, std::size_t r);

std::string search_result_to_json(const SearchResult& r, Cutpoint p, const SearchBudget& b);

struct BenchPoint {
    std::size_t dim = 0;
    std::size_t symbols = 0;
    double seconds = 0.0;
    double ns_per_symbol = 0.0;
};

struct BenchReport {
    std::vector<BenchPoint> points;
    /// Least-squares slope of log(ns per symbol) against log(dim).
    double exponent = 0.0;
};

/// Best-of-`repeats` wall time for `symbols` steps cycling through the
/// alphabet.
BenchPoint time_steps(const Mmqba& a, std::size_t symbols, std::size_t repeats = 3);

/// Times a, a (x) a, ..., up to `powers` tensor factors.
BenchReport benchmark_step_cost(const Mmqba& a, std::size_t powers, std::size_t symbols, std::size_t repeats = 3);

double fit_exponent(const std::vector<BenchPoint>& points);

std::string bench_report_to_json(const BenchReport& r);

}  // namespace mmqba

#endif  // MMQBA_EMPTINESS_HPP
