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

#ifndef MMQBA_SEMANTICS_HPP
#define MMQBA_SEMANTICS_HPP

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mmqba/automaton.hpp"

namespace mmqba {

/// Non-halting amplitude vector plus cumulative halting probability per
/// halting basis state.
struct TotalState {
    Vector nonhalt;
    std::map<std::size_t, double> cumulative;

    double acc(const Mmqba& a) const;
    double rej(const Mmqba& a) const;
};

/// What happened when one symbol was read.
struct StepRecord {
    std::size_t step = 0;  // 1-based
    Symbol symbol;
    double alpha = 0.0;  // ||P_acc psi_j||^2
    double rho = 0.0;    // ||P_rej psi_j||^2
    double acc = 0.0;
    double rej = 0.0;
    double nonhalt_norm_sq = 0.0;
};

using Trace = std::vector<StepRecord>;

/// |q_initial> with zero cumulative probabilities, before '#'.
TotalState initial_total_state(const Mmqba& a);

/// The state after the '#' end marker (identity when the automaton has none).
TotalState start_state(const Mmqba& a);

/// Applies one symbol: unitary, then measurement. `step_index` is recorded
/// verbatim. Throws UnknownSymbolError.
std::pair<TotalState, StepRecord> step(const Mmqba& a, const TotalState& s, std::string_view symbol,
                                       std::size_t step_index = 1);

/// Allocation-free stepping engine used by every simulation in the library.
class Runner {
  public:
    /// Starts from start_state(a). The automaton must outlive the runner.
    explicit Runner(const Mmqba& a);
    Runner(const Mmqba& a, const TotalState& s);

    /// Reads the symbol with the given alphabet index.
    void advance(std::size_t symbol_index);
    /// Applies an arbitrary unitary as one measured step ('$' for instance).
    void advance_with(const Matrix& unitary);
    /// Restarts from the pure state `psi` with zero cumulative sums, without
    /// reallocating. Used by benchmarks to keep amplitudes away from denormals.
    void reset_to(const Vector& psi);

    double alpha() const { return alpha_; }
    double rho() const { return rho_; }
    double acc() const { return acc_; }
    double rej() const { return rej_; }
    double nonhalt_norm_sq() const { return nonhalt_norm_sq_; }
    std::size_t steps() const { return steps_; }
    const Vector& nonhalt() const { return psi_; }

    TotalState state() const;
    StepRecord record(const Symbol& symbol) const;

  private:
    void measure();

    const Mmqba* automaton_;
    Vector psi_;
    Vector scratch_;
    std::vector<unsigned char> role_;  // 0 non-halting, 1 accepting, 2 rejecting
    std::vector<std::size_t> accepting_;
    std::vector<std::size_t> rejecting_;
    std::vector<std::size_t> nonhalting_;
    std::vector<double> cumulative_;
    double alpha_ = 0.0;
    double rho_ = 0.0;
    double acc_ = 0.0;
    double rej_ = 0.0;
    double nonhalt_norm_sq_ = 1.0;
    std::size_t steps_ = 0;
};

/// Applies '#' once, then one step per symbol. Trace length == word length.
Trace run_prefix(const Mmqba& a, const Word& word);

/// Ultimately periodic word u v^omega.
struct LassoWord {
    Word prefix;
    Word cycle;

    /// Throws std::invalid_argument if the cycle is empty.
    static LassoWord parse(std::string_view prefix, std::string_view cycle);
    std::string to_string() const;
    bool operator==(const LassoWord&) const = default;
};

enum class Status { Accepted, Rejected, Inconclusive };

/// Finite-horizon standing of one acceptance clause.
enum class ClauseStatus { Certified, Possible, Refuted };

enum class CheckMode {
    /// Sound bounds: acc_j >= p - epsilon and rej_j + ||psi'_j||^2 < p.
    Certify,
    /// The original threshold test (rej_j < p) with an early return as soon
    /// as all three conditions hold inside the cycle.
    Literal,
};

std::string to_string(Status s);
std::string to_string(ClauseStatus s);
std::string to_string(CheckMode m);

struct RunBudget {
    std::size_t max_periods = 1024;
    double epsilon = 1e-9;
    double beta = 0.5;
    double visit_eps = 1e-12;
    CheckMode mode = CheckMode::Certify;

    /// Throws std::invalid_argument when a field is out of range.
    void check() const;
};

struct Verdict {
    Status status = Status::Inconclusive;
    double acc_lower = 0.0;
    double rej_lower = 0.0;
    double rej_upper = 0.0;
    double nonhalt_norm_sq = 1.0;
    std::size_t visit_count = 0;
    std::size_t periods_simulated = 0;
    std::size_t steps = 0;
    /// True when the run stopped because the non-halting mass fell to visit_eps.
    bool halted = false;
    ClauseStatus buchi = ClauseStatus::Possible;
    ClauseStatus acc_limit = ClauseStatus::Possible;
    ClauseStatus rej_limit = ClauseStatus::Possible;
    double beta = 0.5;
    double epsilon = 1e-9;
    double visit_eps = 1e-12;
    CheckMode mode = CheckMode::Certify;
};

/// Simulates u then up to budget.max_periods copies of v and classifies the
/// run. When `trace` is non-null every step is appended to it.
Verdict run_lasso(const Mmqba& a, const LassoWord& w, Cutpoint p, const RunBudget& budget = {},
                  Trace* trace = nullptr);

struct FiniteRunResult {
    double p_accept = 0.0;
    double p_reject = 0.0;
    double remaining_norm_sq = 0.0;
};

/// '#', the word, then '$'.
FiniteRunResult run_mmqfa(const Mmqfa& a, const Word& word);

struct ClauseReport {
    std::size_t buchi_count = 0;  // steps with alpha_j > visit_eps
    std::size_t last_visit = 0;   // 1-based step of the last counted visit, 0 if none
    ClauseStatus buchi = ClauseStatus::Possible;
    ClauseStatus acc_limit = ClauseStatus::Possible;
    ClauseStatus rej_limit = ClauseStatus::Possible;
};

/// Reads the clauses off a finite trace. The Buchi clause is refuted only
/// when nothing is left to measure (non-halting vector exactly zero).
/// Throws std::invalid_argument on an empty trace.
ClauseReport check_acceptance_clauses(std::span<const StepRecord> trace, Cutpoint p, double visit_eps);

/// CSV with header `j,symbol,alpha,rho,acc,rej,nonhalt_norm_sq`.
std::string trace_to_csv(std::span<const StepRecord> trace);
/// JSON array of step objects.
std::string trace_to_json(std::span<const StepRecord> trace);
std::string verdict_to_json(const Verdict& v, const LassoWord& w, Cutpoint p);

}  // namespace mmqba

#endif  // MMQBA_SEMANTICS_HPP
