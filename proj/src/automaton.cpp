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

#include "mmqba/automaton.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace mmqba {

Word split_symbols(std::string_view utf8) {
    Word out;
    std::size_t i = 0;
    while (i < utf8.size()) {
        auto lead = static_cast<unsigned char>(utf8[i]);
        std::size_t len = 0;
        if (lead < 0x80) {
            len = 1;
        } else if ((lead & 0xE0) == 0xC0) {
            len = 2;
        } else if ((lead & 0xF0) == 0xE0) {
            len = 3;
        } else if ((lead & 0xF8) == 0xF0) {
            len = 4;
        } else {
            throw std::invalid_argument("malformed UTF-8 at byte " + std::to_string(i));
        }
        if (i + len > utf8.size()) throw std::invalid_argument("truncated UTF-8 at byte " + std::to_string(i));
        for (std::size_t k = 1; k < len; ++k) {
            if ((static_cast<unsigned char>(utf8[i + k]) & 0xC0) != 0x80) {
                throw std::invalid_argument("malformed UTF-8 at byte " + std::to_string(i + k));
            }
        }
        out.emplace_back(utf8.substr(i, len));
        i += len;
    }
    return out;
}

std::string join_symbols(const Word& word) {
    std::string out;
    for (const auto& s : word) out += s;
    return out;
}

UnknownSymbolError::UnknownSymbolError(const Symbol& symbol)
    : std::invalid_argument("unknown symbol '" + symbol + "'"), symbol_(symbol) {}

Cutpoint::Cutpoint(double p) : p_(p) {
    if (!(p > 0.0 && p <= 1.0)) {
        std::ostringstream msg;
        msg << "cutpoint must lie in (0, 1], got " << p;
        throw std::invalid_argument(msg.str());
    }
}

std::size_t Mmqba::symbol_index(std::string_view symbol) const {
    auto it = std::find(alphabet.begin(), alphabet.end(), symbol);
    if (it == alphabet.end()) throw UnknownSymbolError(Symbol(symbol));
    return static_cast<std::size_t>(it - alphabet.begin());
}

std::vector<std::size_t> Mmqba::encode(const Word& word) const {
    std::vector<std::size_t> out;
    out.reserve(word.size());
    for (const auto& s : word) out.push_back(symbol_index(s));
    return out;
}

bool Mmqba::is_accepting(std::size_t q) const {
    return std::find(accepting.begin(), accepting.end(), q) != accepting.end();
}

bool Mmqba::is_rejecting(std::size_t q) const {
    return std::find(rejecting.begin(), rejecting.end(), q) != rejecting.end();
}

std::vector<std::size_t> Mmqba::nonhalting() const {
    std::vector<std::size_t> out;
    for (std::size_t q = 0; q < dim(); ++q) {
        if (!is_halting(q)) out.push_back(q);
    }
    return out;
}

std::vector<std::size_t> Mmqba::halting() const {
    std::vector<std::size_t> acc(accepting);
    std::vector<std::size_t> rej(rejecting);
    std::sort(acc.begin(), acc.end());
    std::sort(rej.begin(), rej.end());
    acc.insert(acc.end(), rej.begin(), rej.end());
    return acc;
}

std::optional<std::size_t> Mmqba::state_index(std::string_view name) const {
    auto it = std::find(states.begin(), states.end(), name);
    if (it == states.end()) return std::nullopt;
    return static_cast<std::size_t>(it - states.begin());
}

namespace {

std::string state_label(const Mmqba& a, std::size_t q) {
    return q < a.states.size() ? a.states[q] : "#" + std::to_string(q);
}

void check_matrix(const Matrix& m, std::size_t dim, const std::string& name, double tol,
                  std::vector<Violation>& out) {
    if (static_cast<std::size_t>(m.rows()) != dim || static_cast<std::size_t>(m.cols()) != dim) {
        std::ostringstream msg;
        msg << name << " is " << m.rows() << "x" << m.cols() << ", expected " << dim << "x" << dim;
        out.push_back({"dimension(" + name + ")", msg.str()});
        return;
    }
    if (!all_finite(m)) {
        out.push_back({"finite(" + name + ")", name + " has a NaN or infinite entry"});
        return;
    }
    if (!is_unitary(m, tol)) {
        Matrix dev = m.adjoint() * m - Matrix::Identity(m.rows(), m.cols());
        std::ostringstream msg;
        msg << name << " is not unitary: max |V^dagger V - I| = " << max_abs(dev) << " > " << tol;
        out.push_back({"unitarity(" + name + ")", msg.str()});
    }
}

}  // namespace

std::vector<Violation> validate(const Mmqba& a, double unitarity_tol) {
    std::vector<Violation> out;
    const std::size_t n = a.dim();
    if (n == 0) out.push_back({"states", "automaton has no states"});
    if (a.alphabet.empty()) out.push_back({"alphabet", "alphabet must be nonempty"});

    std::set<std::string> names;
    for (const auto& s : a.states) {
        if (!names.insert(s).second) out.push_back({"state_names", "duplicate state name '" + s + "'"});
    }
    std::set<Symbol> symbols;
    for (const auto& s : a.alphabet) {
        if (!symbols.insert(s).second) out.push_back({"alphabet", "duplicate symbol '" + s + "'"});
        if (s == kEndMarker || s == kTerminalMarker) out.push_back({"alphabet", "symbol '" + s + "' is reserved"});
        try {
            if (split_symbols(s).size() != 1) {
                out.push_back({"alphabet", "symbol '" + s + "' is not a single code point"});
            }
        } catch (const std::invalid_argument& e) {
            out.push_back({"alphabet", e.what()});
        }
    }

    auto check_indices = [&](const std::vector<std::size_t>& set, const char* which) {
        for (std::size_t q : set) {
            if (q >= n) out.push_back({which, std::string(which) + " index " + std::to_string(q) + " out of range"});
        }
    };
    check_indices(a.accepting, "accepting");
    check_indices(a.rejecting, "rejecting");
    if (a.initial >= n) out.push_back({"initial", "initial state index out of range"});

    for (std::size_t q : a.accepting) {
        if (a.is_rejecting(q)) {
            out.push_back({"disjointness", "state '" + state_label(a, q) + "' is both accepting and rejecting"});
        }
    }
    if (a.initial < n && a.is_halting(a.initial)) {
        out.push_back({"initial_nonhalting", "initial state '" + state_label(a, a.initial) + "' is a halting state"});
    }

    if (a.unitaries.size() != a.alphabet.size()) {
        out.push_back({"unitary_per_symbol", "expected one unitary per alphabet symbol (" +
                                                 std::to_string(a.alphabet.size()) + "), found " +
                                                 std::to_string(a.unitaries.size())});
    }
    for (std::size_t i = 0; i < std::min(a.unitaries.size(), a.alphabet.size()); ++i) {
        check_matrix(a.unitaries[i], n, "V_" + a.alphabet[i], unitarity_tol, out);
    }
    if (a.end_marker) check_matrix(*a.end_marker, n, "V_#", unitarity_tol, out);
    return out;
}

std::vector<Violation> validate(const Mmqfa& a, double unitarity_tol) {
    auto out = validate(a.core, unitarity_tol);
    check_matrix(a.terminal, a.core.dim(), "V_$", unitarity_tol, out);
    return out;
}

void require_valid(const Mmqba& a, double unitarity_tol) {
    auto violations = validate(a, unitarity_tol);
    if (violations.empty()) return;
    std::string msg = "invalid automaton:";
    for (const auto& v : violations) msg += " [" + v.invariant + "] " + v.detail + ";";
    throw std::invalid_argument(msg);
}

}  // namespace mmqba
