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

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mmqba/mmqba.hpp"

namespace py = pybind11;
using namespace mmqba;

namespace {

Word word_of(const std::string& s) { return split_symbols(s); }

std::vector<Symbol> alphabet_of(const std::vector<std::string>& symbols) {
    // Accept either ["a", "b"] or ["ab"].
    if (symbols.size() == 1) return split_symbols(symbols[0]);
    return symbols;
}

CheckMode mode_of(const std::string& m) {
    if (m == "certify") return CheckMode::Certify;
    if (m == "literal") return CheckMode::Literal;
    throw std::invalid_argument("mode must be 'certify' or 'literal'");
}

std::vector<std::pair<std::string, std::string>> violations(const std::vector<Violation>& v) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& x : v) out.emplace_back(x.invariant, x.detail);
    return out;
}

}  // namespace

PYBIND11_MODULE(_mmqba, m) {
    m.doc() = "Measure-many quantum Buchi automata";

    py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);
    py::register_exception<UnknownSymbolError>(m, "UnknownSymbolError", PyExc_ValueError);
    py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
    py::register_exception<AlphabetMismatchError>(m, "AlphabetMismatchError", PyExc_ValueError);

    py::class_<Mmqba>(m, "Automaton")
        .def_readonly("states", &Mmqba::states)
        .def_readonly("alphabet", &Mmqba::alphabet)
        .def_readonly("initial", &Mmqba::initial)
        .def_readonly("accepting", &Mmqba::accepting)
        .def_readonly("rejecting", &Mmqba::rejecting)
        .def_property_readonly("dim", &Mmqba::dim)
        .def("unitary", [](const Mmqba& a, const std::string& s) { return Matrix(a.unitary(s)); }, py::arg("symbol"))
        .def("save", [](const Mmqba& a) { return save_automaton(a); })
        .def("__repr__", [](const Mmqba& a) {
            return "<mmqba.Automaton dim=" + std::to_string(a.dim()) + " alphabet=" + join_symbols(a.alphabet) + ">";
        });

    py::class_<Mmqfa>(m, "FiniteAutomaton")
        .def_readonly("core", &Mmqfa::core)
        .def_property_readonly("dim", [](const Mmqfa& a) { return a.core.dim(); })
        .def("save", [](const Mmqfa& a) { return save_automaton(a); });

    m.def("load", [](const std::string& path) -> py::object {
        auto any = load_automaton_file(path);
        if (auto* a = std::get_if<Mmqba>(&any)) return py::cast(std::move(*a));
        return py::cast(std::get<Mmqfa>(std::move(any)));
    }, py::arg("path"), "Load an .qba document from a file.");
    m.def("loads", [](const std::string& text) -> py::object {
        auto any = load_automaton(text);
        if (auto* a = std::get_if<Mmqba>(&any)) return py::cast(std::move(*a));
        return py::cast(std::get<Mmqfa>(std::move(any)));
    }, py::arg("text"));

    m.def("validate", [](const Mmqba& a, double tol) { return violations(validate(a, tol)); }, py::arg("automaton"),
          py::arg("tol") = 1e-10);
    m.def("validate", [](const Mmqfa& a, double tol) { return violations(validate(a, tol)); }, py::arg("automaton"),
          py::arg("tol") = 1e-10);

    m.def("_run_prefix", [](const Mmqba& a, const std::string& w) { return trace_to_json(run_prefix(a, word_of(w))); },
          py::arg("automaton"), py::arg("word"));
    m.def("_run_lasso",
          [](const Mmqba& a, const std::string& prefix, const std::string& cycle, double p, std::size_t periods,
             const std::string& mode, double beta, double epsilon, double visit_eps) {
              RunBudget b;
              b.max_periods = periods;
              b.mode = mode_of(mode);
              b.beta = beta;
              b.epsilon = epsilon;
              b.visit_eps = visit_eps;
              const auto w = LassoWord::parse(prefix, cycle);
              const Cutpoint cp(p);
              py::gil_scoped_release release;
              return verdict_to_json(run_lasso(a, w, cp, b), w, cp);
          },
          py::arg("automaton"), py::arg("prefix"), py::arg("cycle"), py::arg("cutpoint"), py::arg("max_periods") = 1024,
          py::arg("mode") = "certify", py::arg("beta") = 0.5, py::arg("epsilon") = 1e-9, py::arg("visit_eps") = 1e-12);
    m.def("run_mmqfa",
          [](const Mmqfa& a, const std::string& w) {
              const auto r = run_mmqfa(a, word_of(w));
              return py::make_tuple(r.p_accept, r.p_reject, r.remaining_norm_sq);
          },
          py::arg("automaton"), py::arg("word"), "(p_accept, p_reject, remaining_norm_sq) for '#', the word, '$'.");

    m.def("_decompose", [](const Mmqba& a) { return decomposition_to_json(decompose_nonhalting(a)); },
          py::arg("automaton"));
    m.def("no_entry_check",
          [](const Mmqba& a, const std::vector<std::size_t>& states, const std::string& symbol) {
              const auto r = no_entry_check(a, states, symbol);
              return py::make_tuple(r.max_residual, r.residuals);
          },
          py::arg("automaton"), py::arg("states"), py::arg("symbol"));
    m.def("_estimate_limit",
          [](const Mmqba& a, const std::string& prefix, const std::string& cycle, std::size_t periods,
             std::size_t period_len) {
              Word w = word_of(prefix);
              const Word v = word_of(cycle);
              for (std::size_t k = 0; k < periods; ++k) w.insert(w.end(), v.begin(), v.end());
              const auto e = estimate_limit(run_prefix(a, w), period_len ? period_len : v.size(), word_of(prefix).size());
              py::dict d;
              d["is_geometric"] = e.is_geometric;
              d["ratio"] = e.ratio;
              d["acc_limit_estimate"] = e.acc_limit_estimate;
              d["rej_limit_estimate"] = e.rej_limit_estimate;
              d["acc_bounds"] = py::make_tuple(e.acc_lower, e.acc_upper);
              d["rej_bounds"] = py::make_tuple(e.rej_lower, e.rej_upper);
              return d;
          },
          py::arg("automaton"), py::arg("prefix"), py::arg("cycle"), py::arg("periods") = 64, py::arg("period_len") = 0);

    m.def("union", &union_of, py::arg("m1"), py::arg("m2"));
    m.def("empty", [](const std::vector<std::string>& alphabet) { return empty_automaton(alphabet_of(alphabet)); },
          py::arg("alphabet"));
    m.def("finite_language",
          [](const std::vector<std::string>& words, const std::vector<std::string>& alphabet) {
              std::vector<Word> ws;
              for (const auto& w : words) ws.push_back(word_of(w));
              return finite_language_mmqfa(ws, alphabet_of(alphabet));
          },
          py::arg("words"), py::arg("alphabet"));
    m.def("restrict",
          [](const Mmqba& a, const std::string& prefix, const std::string& cycle) {
              return restrict_to_lasso(a, LassoWord::parse(prefix, cycle));
          },
          py::arg("automaton"), py::arg("prefix"), py::arg("cycle"));

    m.def("_check_emptiness",
          [](const Mmqba& a, double p, std::size_t rounds, std::size_t threads, const std::string& mode) {
              SearchBudget b;
              b.max_rounds = rounds;
              b.threads = threads;
              b.mode = mode_of(mode);
              const Cutpoint cp(p);
              py::gil_scoped_release release;
              return search_result_to_json(check_emptiness(a, cp, b), cp, b);
          },
          py::arg("automaton"), py::arg("cutpoint"), py::arg("max_rounds") = 6, py::arg("threads") = 1,
          py::arg("mode") = "certify");
}
