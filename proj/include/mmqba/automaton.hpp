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

#ifndef MMQBA_AUTOMATON_HPP
#define MMQBA_AUTOMATON_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mmqba/numerics.hpp"

namespace mmqba {

/// One input symbol: a single Unicode scalar value, stored as UTF-8.
using Symbol = std::string;
using Word = std::vector<Symbol>;

inline constexpr std::string_view kEndMarker = "#";
inline constexpr std::string_view kTerminalMarker = "$";

/// Splits UTF-8 text into one Symbol per code point.
/// Throws std::invalid_argument on malformed UTF-8.
Word split_symbols(std::string_view utf8);
std::string join_symbols(const Word& word);

/// Thrown when an input symbol is not in the automaton's alphabet.
class UnknownSymbolError : public std::invalid_argument {
  public:
    explicit UnknownSymbolError(const Symbol& symbol);
    const Symbol& symbol() const { return symbol_; }

  private:
    Symbol symbol_;
};

/// Acceptance threshold p with 0 < p <= 1.
class Cutpoint {
  public:
    /// Throws std::invalid_argument outside (0, 1].
    explicit Cutpoint(double p);
    double value() const { return p_; }
    /// Most results about these automata assume p > 1/2; callers warn on this.
    bool below_half() const { return p_ <= 0.5; }

  private:
    double p_;
};

/// Measure-many quantum Buchi automaton. Basis order is the order of
/// `states`; unitaries[i] belongs to alphabet[i] and uses the column
/// convention: entry (s, t) = <q_s| V |q_t>.
struct Mmqba {
    std::vector<std::string> states;
    std::vector<Symbol> alphabet;
    std::vector<Matrix> unitaries;
    std::size_t initial = 0;
    std::vector<std::size_t> accepting;
    std::vector<std::size_t> rejecting;
    /// Unitary for the left end marker '#'; identity when absent.
    std::optional<Matrix> end_marker;

    std::size_t dim() const { return states.size(); }

    /// Index of `symbol` in the alphabet; throws UnknownSymbolError.
    std::size_t symbol_index(std::string_view symbol) const;
    const Matrix& unitary(std::string_view symbol) const { return unitaries[symbol_index(symbol)]; }

    /// Maps every symbol of `word` to its alphabet index.
    std::vector<std::size_t> encode(const Word& word) const;

    bool is_accepting(std::size_t q) const;
    bool is_rejecting(std::size_t q) const;
    bool is_halting(std::size_t q) const { return is_accepting(q) || is_rejecting(q); }

    /// Indices of non-halting basis states, ascending.
    std::vector<std::size_t> nonhalting() const;
    /// Accepting then rejecting indices, each ascending.
    std::vector<std::size_t> halting() const;

    std::optional<std::size_t> state_index(std::string_view name) const;
};

/// Measure-many quantum finite automaton: an Mmqba plus the right end
/// marker '$' applied after the last symbol.
struct Mmqfa {
    Mmqba core;
    Matrix terminal;
};

/// One failed structural invariant.
struct Violation {
    /// Machine-readable invariant name, e.g. "disjointness" or "unitarity(V_a)".
    std::string invariant;
    std::string detail;
};

std::vector<Violation> validate(const Mmqba& a, double unitarity_tol = 1e-10);
std::vector<Violation> validate(const Mmqfa& a, double unitarity_tol = 1e-10);

/// Throws std::invalid_argument listing the violations, if any.
void require_valid(const Mmqba& a, double unitarity_tol = 1e-10);

}  // namespace mmqba

#endif  // MMQBA_AUTOMATON_HPP
