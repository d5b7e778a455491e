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

#include "mmqba/format.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace mmqba {

using Json = nlohmann::ordered_json;

FormatError::FormatError(const std::string& message, std::string path, std::size_t line, std::size_t column)
    : std::runtime_error(message), path_(std::move(path)), line_(line), column_(column) {}

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& message) {
    throw FormatError(path.empty() ? message : path + ": " + message, path);
}

const Json& require(const Json& obj, const char* key, const std::string& path) {
    auto it = obj.find(key);
    if (it == obj.end()) fail(path, std::string("missing field '") + key + "'");
    return *it;
}

std::vector<std::string> string_list(const Json& j, const std::string& path) {
    if (!j.is_array()) fail(path, "expected an array of strings");
    std::vector<std::string> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_string()) fail(path + "/" + std::to_string(i), "expected a string");
        out.push_back(j[i].get<std::string>());
    }
    return out;
}

std::size_t state_ref(const Mmqba& a, const Json& j, const std::string& path) {
    if (!j.is_string()) fail(path, "expected a state name");
    auto name = j.get<std::string>();
    auto idx = a.state_index(name);
    if (!idx) fail(path, "unknown state '" + name + "'");
    return *idx;
}

double real_value(const Json& j, const std::string& path) {
    if (!j.is_number()) fail(path, "expected a number");
    double x = j.get<double>();
    if (!std::isfinite(x)) fail(path, "non-finite number");
    return x;
}

Matrix read_matrix(const Json& j, std::size_t dim, const std::string& path) {
    if (!j.is_array() || j.size() != dim) fail(path, "expected " + std::to_string(dim) + " rows");
    Matrix m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t r = 0; r < dim; ++r) {
        const std::string rpath = path + "/" + std::to_string(r);
        const Json& row = j[r];
        if (!row.is_array() || row.size() != dim) fail(rpath, "expected " + std::to_string(dim) + " entries");
        for (std::size_t c = 0; c < dim; ++c) {
            const std::string epath = rpath + "/" + std::to_string(c);
            const Json& e = row[c];
            Complex z;
            if (e.is_number()) {
                z = Complex(real_value(e, epath), 0.0);
            } else if (e.is_array() && e.size() == 2) {
                z = Complex(real_value(e[0], epath + "/0"), real_value(e[1], epath + "/1"));
            } else {
                fail(epath, "expected [re, im]");
            }
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = z;
        }
    }
    return m;
}

Json write_matrix(const Matrix& m) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            row.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

Json document(const Mmqba& a, const char* type, const Matrix* terminal) {
    Json doc;
    doc["type"] = type;
    doc["states"] = a.states;
    doc["alphabet"] = a.alphabet;
    doc["initial"] = a.states.at(a.initial);
    Json acc = Json::array();
    for (std::size_t q : a.accepting) acc.push_back(a.states.at(q));
    Json rej = Json::array();
    for (std::size_t q : a.rejecting) rej.push_back(a.states.at(q));
    doc["accepting"] = std::move(acc);
    doc["rejecting"] = std::move(rej);
    Json unitaries = Json::object();
    for (std::size_t i = 0; i < a.alphabet.size(); ++i) unitaries[a.alphabet[i]] = write_matrix(a.unitaries.at(i));
    if (a.end_marker) unitaries[std::string(kEndMarker)] = write_matrix(*a.end_marker);
    if (terminal) unitaries[std::string(kTerminalMarker)] = write_matrix(*terminal);
    doc["unitaries"] = std::move(unitaries);
    return doc;
}

}  // namespace

AnyAutomaton load_automaton(std::string_view text) {
    Json doc;
    try {
        doc = Json::parse(text.begin(), text.end());
    } catch (const Json::parse_error& e) {
        auto [line, column] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
        std::ostringstream msg;
        msg << "parse error at line " << line << ", column " << column << ": " << e.what();
        throw FormatError(msg.str(), "", line, column);
    }
    if (!doc.is_object()) fail("", "document must be a JSON object");

    const Json& type_j = require(doc, "type", "");
    if (!type_j.is_string()) fail("/type", "expected a string");
    const auto type = type_j.get<std::string>();
    if (type != "mmqba" && type != "mmqfa") fail("/type", "type must be \"mmqba\" or \"mmqfa\", got \"" + type + "\"");

    Mmqba a;
    a.states = string_list(require(doc, "states", ""), "/states");
    if (a.states.empty()) fail("/states", "states must be nonempty");
    for (std::size_t i = 0; i < a.states.size(); ++i) {
        for (std::size_t k = 0; k < i; ++k) {
            if (a.states[k] == a.states[i]) fail("/states/" + std::to_string(i), "duplicate state '" + a.states[i] + "'");
        }
    }
    a.alphabet = string_list(require(doc, "alphabet", ""), "/alphabet");
    if (a.alphabet.empty()) fail("/alphabet", "alphabet must be nonempty");
    for (std::size_t i = 0; i < a.alphabet.size(); ++i) {
        const std::string path = "/alphabet/" + std::to_string(i);
        const auto& s = a.alphabet[i];
        Word parts;
        try {
            parts = split_symbols(s);
        } catch (const std::invalid_argument& e) {
            fail(path, e.what());
        }
        if (parts.size() != 1) fail(path, "symbol '" + s + "' must be a single character");
        if (s == kEndMarker || s == kTerminalMarker) fail(path, "symbol '" + s + "' is reserved");
        for (std::size_t k = 0; k < i; ++k) {
            if (a.alphabet[k] == s) fail(path, "duplicate symbol '" + s + "'");
        }
    }

    a.initial = state_ref(a, require(doc, "initial", ""), "/initial");
    auto read_set = [&](const char* key) {
        std::vector<std::size_t> out;
        const std::string path = std::string("/") + key;
        auto it = doc.find(key);
        if (it == doc.end()) return out;
        if (!it->is_array()) fail(path, "expected an array of state names");
        for (std::size_t i = 0; i < it->size(); ++i) {
            std::size_t q = state_ref(a, (*it)[i], path + "/" + std::to_string(i));
            if (std::find(out.begin(), out.end(), q) != out.end()) {
                fail(path + "/" + std::to_string(i), "duplicate state");
            }
            out.push_back(q);
        }
        return out;
    };
    a.accepting = read_set("accepting");
    a.rejecting = read_set("rejecting");

    const Json& unitaries = require(doc, "unitaries", "");
    if (!unitaries.is_object()) fail("/unitaries", "expected an object keyed by symbol");
    for (auto it = unitaries.begin(); it != unitaries.end(); ++it) {
        const auto& key = it.key();
        bool known = key == kEndMarker || (key == kTerminalMarker && type == "mmqfa") ||
                     std::find(a.alphabet.begin(), a.alphabet.end(), key) != a.alphabet.end();
        if (!known) fail("/unitaries/" + key, "no such symbol in the alphabet");
    }
    for (const auto& s : a.alphabet) {
        auto it = unitaries.find(s);
        if (it == unitaries.end()) fail("/unitaries", "missing unitary for symbol '" + s + "'");
        a.unitaries.push_back(read_matrix(*it, a.dim(), "/unitaries/" + s));
    }
    if (auto it = unitaries.find(std::string(kEndMarker)); it != unitaries.end()) {
        a.end_marker = read_matrix(*it, a.dim(), "/unitaries/#");
    }

    if (type == "mmqba") return a;

    auto it = unitaries.find(std::string(kTerminalMarker));
    if (it == unitaries.end()) fail("/unitaries", "an mmqfa requires a unitary for '$'");
    Mmqfa fa{std::move(a), Matrix()};
    fa.terminal = read_matrix(*it, fa.core.dim(), "/unitaries/$");
    return fa;
}

AnyAutomaton load_automaton_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::ios_base::failure("cannot open '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_automaton(buf.str());
}

Mmqba load_mmqba(std::string_view text) {
    auto any = load_automaton(text);
    if (auto* a = std::get_if<Mmqba>(&any)) return std::move(*a);
    throw FormatError("/type: expected an mmqba document", "/type");
}

Mmqfa load_mmqfa(std::string_view text) {
    auto any = load_automaton(text);
    if (auto* a = std::get_if<Mmqfa>(&any)) return std::move(*a);
    throw FormatError("/type: expected an mmqfa document", "/type");
}

std::string save_automaton(const Mmqba& a) { return document(a, "mmqba", nullptr).dump(2) + "\n"; }

std::string save_automaton(const Mmqfa& a) { return document(a.core, "mmqfa", &a.terminal).dump(2) + "\n"; }

std::string save_automaton(const AnyAutomaton& a) {
    return std::visit([](const auto& x) { return save_automaton(x); }, a);
}

std::string format_real(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string format_human(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.7g", x);
    return buf;
}

}  // namespace mmqba
