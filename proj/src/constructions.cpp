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

#include "mmqba/constructions.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>

namespace mmqba {

namespace {

constexpr std::size_t kUnset = static_cast<std::size_t>(-1);

// Completes the partial injection col -> target[col] to a permutation by
// pairing unused columns with unused rows in index order.
Matrix permutation(std::vector<std::size_t> target) {
    const std::size_t n = target.size();
    std::vector<bool> hit(n, false);
    for (std::size_t t : target) {
        if (t == kUnset) continue;
        if (hit.at(t)) throw std::logic_error("partial map is not injective");
        hit[t] = true;
    }
    std::size_t row = 0;
    for (auto& t : target) {
        if (t != kUnset) continue;
        while (hit[row]) ++row;
        t = row;
        hit[row] = true;
    }
    Matrix m = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t col = 0; col < n; ++col) m(static_cast<Eigen::Index>(target[col]), static_cast<Eigen::Index>(col)) = 1.0;
    return m;
}

Matrix identity(std::size_t n) { return Matrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)); }

void require_alphabet(const std::vector<Symbol>& alphabet) {
    if (alphabet.empty()) throw std::invalid_argument("alphabet must be nonempty");
    std::set<Symbol> seen;
    for (const auto& s : alphabet) {
        if (!seen.insert(s).second) throw std::invalid_argument("duplicate alphabet symbol '" + s + "'");
    }
}

}  // namespace

Mmqba union_of(const Mmqba& m1, const Mmqba& m2) {
    const std::set<Symbol> a1(m1.alphabet.begin(), m1.alphabet.end());
    const std::set<Symbol> a2(m2.alphabet.begin(), m2.alphabet.end());
    if (a1 != a2) throw AlphabetMismatchError("union requires identical alphabets");

    const std::size_t n2 = m2.dim();
    Mmqba out;
    for (const auto& s1 : m1.states) {
        for (const auto& s2 : m2.states) out.states.push_back("(" + s1 + "," + s2 + ")");
    }
    out.alphabet = m1.alphabet;
    for (std::size_t i = 0; i < m1.alphabet.size(); ++i) {
        out.unitaries.push_back(tensor(m1.unitaries[i], m2.unitary(m1.alphabet[i])));
    }
    out.initial = m1.initial * n2 + m2.initial;
    for (std::size_t i = 0; i < m1.dim(); ++i) {
        for (std::size_t j = 0; j < n2; ++j) {
            if (m1.is_accepting(i) || m2.is_accepting(j)) {
                out.accepting.push_back(i * n2 + j);
            } else if (m1.is_rejecting(i) && m2.is_rejecting(j)) {
                out.rejecting.push_back(i * n2 + j);
            }
        }
    }
    if (m1.end_marker || m2.end_marker) {
        out.end_marker = tensor(m1.end_marker.value_or(identity(m1.dim())), m2.end_marker.value_or(identity(n2)));
    }
    return out;
}

Mmqba empty_automaton(const std::vector<Symbol>& alphabet) {
    require_alphabet(alphabet);
    Mmqba out;
    out.states = {"q0'", "qr'"};
    out.alphabet = alphabet;
    out.unitaries.assign(alphabet.size(), identity(2));
    out.initial = 0;
    out.rejecting = {1};
    return out;
}

Mmqfa finite_language_mmqfa(const std::vector<Word>& words, const std::vector<Symbol>& alphabet) {
    require_alphabet(alphabet);
    auto symbol_pos = [&](const Symbol& s) {
        auto it = std::find(alphabet.begin(), alphabet.end(), s);
        if (it == alphabet.end()) throw UnknownSymbolError(s);
        return static_cast<std::size_t>(it - alphabet.begin());
    };

    // Prefix tree in shortlex order over the alphabet's order.
    auto shortlex = [&](const Word& x, const Word& y) {
        if (x.size() != y.size()) return x.size() < y.size();
        for (std::size_t i = 0; i < x.size(); ++i) {
            const auto a = symbol_pos(x[i]);
            const auto b = symbol_pos(y[i]);
            if (a != b) return a < b;
        }
        return false;
    };
    std::set<Word, decltype(shortlex)> prefixes(shortlex);
    std::set<Word, decltype(shortlex)> language(shortlex);
    prefixes.insert(Word{});
    for (const auto& w : words) {
        for (const auto& s : w) symbol_pos(s);
        language.insert(w);
        for (std::size_t k = 0; k <= w.size(); ++k) prefixes.insert(Word(w.begin(), w.begin() + static_cast<long>(k)));
    }

    std::map<Word, std::size_t> node;
    std::vector<Word> nodes(prefixes.begin(), prefixes.end());
    const std::size_t k = nodes.size();
    for (std::size_t i = 0; i < k; ++i) node[nodes[i]] = i;
    // Layout: nodes [0, k), dead states [k, 2k), end states [2k, 3k).
    const std::size_t n = 3 * k;

    Mmqfa out;
    Mmqba& core = out.core;
    for (const auto& x : nodes) core.states.push_back("[" + join_symbols(x) + "]");
    for (const auto& x : nodes) core.states.push_back("dead[" + join_symbols(x) + "]");
    for (const auto& x : nodes) core.states.push_back((language.count(x) ? "acc[" : "rej[") + join_symbols(x) + "]");
    core.alphabet = alphabet;
    core.initial = 0;
    for (std::size_t i = 0; i < k; ++i) {
        core.rejecting.push_back(k + i);
        (language.count(nodes[i]) ? core.accepting : core.rejecting).push_back(2 * k + i);
    }
    std::sort(core.rejecting.begin(), core.rejecting.end());

    for (const auto& sym : alphabet) {
        std::vector<std::size_t> target(n, kUnset);
        for (std::size_t i = 0; i < k; ++i) {
            Word next = nodes[i];
            next.push_back(sym);
            auto it = node.find(next);
            target[i] = it != node.end() ? it->second : k + i;
        }
        core.unitaries.push_back(permutation(std::move(target)));
    }
    std::vector<std::size_t> terminal(n, kUnset);
    for (std::size_t i = 0; i < k; ++i) terminal[i] = 2 * k + i;
    out.terminal = permutation(std::move(terminal));
    core.end_marker = identity(n);
    return out;
}

Mmqba finite_language_mmqba(const std::vector<Symbol>& alphabet) {
    require_alphabet(alphabet);
    Mmqba out;
    out.states = {"q0"};
    out.alphabet = alphabet;
    out.unitaries.assign(alphabet.size(), identity(1));
    return out;
}

LassoWord canonical_lasso(const LassoWord& w) {
    if (w.cycle.empty()) throw std::invalid_argument("lasso cycle must be nonempty");
    LassoWord out = w;
    while (!out.prefix.empty() && out.prefix.back() == out.cycle.back()) {
        std::rotate(out.cycle.rbegin(), out.cycle.rbegin() + 1, out.cycle.rend());
        out.prefix.pop_back();
    }
    return out;
}

Mmqba restrict_to_lasso(const Mmqba& m, const LassoWord& w) {
    m.encode(w.prefix);
    m.encode(w.cycle);
    const LassoWord c = canonical_lasso(w);
    Word positions = c.prefix;
    positions.insert(positions.end(), c.cycle.begin(), c.cycle.end());
    const std::size_t len = positions.size();
    const std::size_t loop_start = c.prefix.size();
    // Matcher layout: positions [0, len), dead states [len, 2 len).
    const std::size_t k = 2 * len;

    Mmqba matcher;
    for (std::size_t i = 0; i < len; ++i) matcher.states.push_back("m" + std::to_string(i));
    for (std::size_t i = 0; i < len; ++i) matcher.states.push_back("d" + std::to_string(i));
    matcher.alphabet = m.alphabet;
    for (const auto& sym : m.alphabet) {
        std::vector<std::size_t> target(k, kUnset);
        for (std::size_t i = 0; i < len; ++i) {
            target[i] = positions[i] == sym ? (i + 1 < len ? i + 1 : loop_start) : len + i;
        }
        matcher.unitaries.push_back(permutation(std::move(target)));
    }

    Mmqba out;
    for (const auto& q : m.states) {
        for (const auto& s : matcher.states) out.states.push_back("(" + q + "," + s + ")");
    }
    out.alphabet = m.alphabet;
    for (std::size_t i = 0; i < m.alphabet.size(); ++i) out.unitaries.push_back(tensor(m.unitaries[i], matcher.unitaries[i]));
    out.initial = m.initial * k;
    for (std::size_t q = 0; q < m.dim(); ++q) {
        for (std::size_t s = 0; s < k; ++s) {
            const bool dead = s >= len;
            if (dead || m.is_rejecting(q)) {
                out.rejecting.push_back(q * k + s);
            } else if (m.is_accepting(q)) {
                out.accepting.push_back(q * k + s);
            }
        }
    }
    if (m.end_marker) out.end_marker = tensor(*m.end_marker, identity(k));
    return out;
}

}  // namespace mmqba
