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

#ifndef MMQBA_ANALYSIS_HPP
#define MMQBA_ANALYSIS_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mmqba/automaton.hpp"
#include "mmqba/semantics.hpp"

namespace mmqba {

/// Split of the non-halting space into S1 (invariant under every symbol and
/// never leaking into halting states) and its complement S2 inside S_non.
struct Decomposition {
    SubspaceBasis s1;
    SubspaceBasis s2;
    /// Number of W-chain iterations computed, the last one confirming the
    /// fixed point.
    std::size_t chain_length = 0;
    /// dim W_0, dim W_1, ..., dim W_chain_length.
    std::vector<std::size_t> chain_dims;
};

/// Iterates W_0 = S_non, W_i = {psi in W_{i-1} : (I - P_{W_{i-1}}) V_s psi = 0 for all s}
/// to its fixed point, which is S1.
Decomposition decompose_nonhalting(const Mmqba& a, double sv_tol = 1e-9);

/// max over s and over basis vectors w of S1 of ||(I - P_W) V_s w||.
double fixed_point_residual(const Mmqba& a, const SubspaceBasis& w);

std::string decomposition_to_json(const Decomposition& d);

/// Thrown when an analysis precondition on the given subspace does not hold.
class PreconditionError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// True iff V_symbol maps span(s) into itself (to `tol`). Throws
/// PreconditionError if s is not inside the non-halting space.
bool is_sigma_cycle_subspace(const Mmqba& a, const SubspaceBasis& s, std::string_view symbol, double tol = 1e-10);

struct NoEntryReport {
    /// (basis index r outside S, ||P_S V_symbol |r>||)
    std::vector<std::pair<std::size_t, double>> residuals;
    double max_residual = 0.0;
};

/// For S = span{e_i : i in indices}, a symbol-cycle subspace, measures how
/// much of each outside basis vector V_symbol maps into S. Throws
/// PreconditionError when S is not a cycle subspace for the symbol.
NoEntryReport no_entry_check(const Mmqba& a, std::span<const std::size_t> indices, std::string_view symbol,
                             double tol = 1e-10);

struct DecompositionCheck {
    std::size_t trials = 0;
    std::size_t word_len = 0;
    /// Largest cumulative halting probability over runs started inside S1.
    double s1_max_halting = 0.0;
    /// Largest distance of any psi'_k from S1 over those runs.
    double s1_max_escape = 0.0;
    /// ||psi'_k||^2 for k = 0..word_len, one trajectory per S2 trial.
    std::vector<std::vector<double>> s2_norm_sq;
    /// max_k |halting increment from psi1 + psi2 - increment from psi2 alone|.
    double superposition_max_deviation = 0.0;

    bool s1_holds(double tol = 1e-9) const { return s1_max_halting <= tol && s1_max_escape <= tol; }
    bool superposition_holds(double tol = 1e-9) const { return superposition_max_deviation <= tol; }
};

/// Random-trial check of the decomposition properties. Each trial draws its
/// own generator from (seed, trial index), so results do not depend on
/// evaluation order.
DecompositionCheck verify_decomposition(const Mmqba& a, const Decomposition& d, std::size_t word_len,
                                        std::size_t trials, std::uint64_t seed);

struct LimitEstimate {
    double acc_limit_estimate = 0.0;
    double rej_limit_estimate = 0.0;
    double ratio = 0.0;
    bool is_geometric = false;
    double acc_lower = 0.0;
    double acc_upper = 0.0;
    double rej_lower = 0.0;
    double rej_upper = 0.0;
};

/// Extrapolates the limits of acc/rej from per-period increments. Periods
/// start at `prefix_len`. Throws std::invalid_argument with fewer than four
/// full periods.
LimitEstimate estimate_limit(std::span<const StepRecord> trace, std::size_t period_len, std::size_t prefix_len = 0);

}  // namespace mmqba

#endif  // MMQBA_ANALYSIS_HPP
