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

#ifndef MMQBA_CONSTRUCTIONS_HPP
#define MMQBA_CONSTRUCTIONS_HPP

#include <stdexcept>
#include <vector>

#include "mmqba/automaton.hpp"
#include "mmqba/semantics.hpp"

namespace mmqba {

class AlphabetMismatchError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Tensor-product union. Product state (i, j) has index i * dim(m2) + j.
/// Accepting if either component accepts, rejecting if both reject.
/// The alphabets must agree as sets; the result uses m1's symbol order.
Mmqba union_of(const Mmqba& m1, const Mmqba& m2);

/// Two states, identity dynamics, no accepting states: accepts nothing.
Mmqba empty_automaton(const std::vector<Symbol>& alphabet);

/// Permutation MMQFA accepting exactly `words` with probability 1 and
/// rejecting everything else with probability 1.
///
/// One non-halting state per prefix of a word in the language. Every prefix
/// x also owns a rejecting "dead" state, entered on a symbol that leaves the
/// prefix tree, and an end state entered on '$' (accepting iff x is in the
/// language). Separate halting targets per prefix keep every symbol a
/// permutation.
Mmqfa finite_language_mmqfa(const std::vector<Word>& words, const std::vector<Symbol>& alphabet);

/// One state, identity for every symbol, no halting states.
Mmqba finite_language_mmqba(const std::vector<Symbol>& alphabet);

/// Rewrites u v^w so that u is empty or u and v end in different symbols
/// (e.g. a(ba)^w -> (ab)^w). The infinite word is unchanged.
LassoWord canonical_lasso(const LassoWord& w);

/// m tensored with a deterministic matcher for the canonical form of w.
/// The matcher has one position per symbol of u v and one rejecting dead
/// state per position; a mismatch at position i moves to dead state i.
/// Product states whose matcher part is dead are rejecting.
Mmqba restrict_to_lasso(const Mmqba& m, const LassoWord& w);

}  // namespace mmqba

#endif  // MMQBA_CONSTRUCTIONS_HPP
