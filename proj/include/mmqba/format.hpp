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

// Automaton documents (".qba" files):
//
//   { "type": "mmqba" | "mmqfa",
//     "states": ["q0", "q1", ...],
//     "alphabet": ["a", "b"],
//     "initial": "q0",
//     "accepting": ["q1"], "rejecting": ["q2"],
//     "unitaries": { "a": [[[re, im], ...], ...], "#": optional, "$": mmqfa only } }
//
// Matrices are row-major: entry [s][t] = <q_s|V|q_t>.

#ifndef MMQBA_FORMAT_HPP
#define MMQBA_FORMAT_HPP

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include "mmqba/automaton.hpp"

namespace mmqba {

/// Malformed document. `path` is a JSON pointer to the offending element
/// (empty for syntax errors); line/column are 1-based and 0 when unknown.
class FormatError : public std::runtime_error {
  public:
    FormatError(const std::string& message, std::string path, std::size_t line = 0, std::size_t column = 0);
    const std::string& path() const { return path_; }
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

  private:
    std::string path_;
    std::size_t line_;
    std::size_t column_;
};

using AnyAutomaton = std::variant<Mmqba, Mmqfa>;

/// Parses a document. Structural problems (missing fields, unknown state
/// names, wrong matrix shapes) throw FormatError; semantic invariants such as
/// unitarity are left to validate().
AnyAutomaton load_automaton(std::string_view text);
AnyAutomaton load_automaton_file(const std::filesystem::path& path);

/// Like load_automaton but requires an mmqba/mmqfa document respectively.
Mmqba load_mmqba(std::string_view text);
Mmqfa load_mmqfa(std::string_view text);

/// Canonical document text (2-space indent, trailing newline, shortest
/// round-trip decimal for every real).
std::string save_automaton(const Mmqba& a);
std::string save_automaton(const Mmqfa& a);
std::string save_automaton(const AnyAutomaton& a);

/// Formats a double with 17 significant digits.
std::string format_real(double x);
/// Formats a double with 7 significant digits for human output.
std::string format_human(double x);

}  // namespace mmqba

#endif  // MMQBA_FORMAT_HPP
