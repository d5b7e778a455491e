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

// qba: command-line front end for the mmqba library.
//
// Exit codes: run 0/1/2 = ACCEPTED/REJECTED/INCONCLUSIVE, emptiness 0/2 =
// NONEMPTY/INCONCLUSIVE, validate 0/1 = valid/violations, 64 usage or I/O
// error, 65 malformed input.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mmqba/mmqba.hpp"

namespace {

constexpr int kUsage = 64;
constexpr int kDataError = 65;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

mmqba::AnyAutomaton load(const std::string& file) {
    try {
        return mmqba::load_automaton_file(file);
    } catch (const std::ios_base::failure& e) {
        throw UsageError(e.what());
    }
}

mmqba::Mmqba load_core(const std::string& file) {
    auto any = load(file);
    if (auto* a = std::get_if<mmqba::Mmqba>(&any)) return std::move(*a);
    throw UsageError(file + ": expected an mmqba file");
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) throw UsageError("cannot write '" + path + "'");
}

void warn_cutpoint(const mmqba::Cutpoint& p) {
    if (p.below_half()) {
        std::cerr << "warning: cutpoint " << mmqba::format_human(p.value())
                  << " <= 1/2; results about these automata generally assume p > 1/2\n";
    }
}

std::vector<std::size_t> parse_indices(const std::string& text) {
    std::vector<std::size_t> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            std::size_t pos = 0;
            const unsigned long v = std::stoul(item, &pos);
            if (pos != item.size()) throw std::invalid_argument(item);
            out.push_back(v);
        } catch (const std::exception&) {
            throw UsageError("bad state index '" + item + "' in --subspace");
        }
    }
    return out;
}

std::string clauses(const mmqba::Verdict& v) {
    using mmqba::to_string;
    return "acc_limit " + to_string(v.acc_limit) + ", rej_limit " + to_string(v.rej_limit) + ", buchi " +
           to_string(v.buchi);
}

int exit_code(mmqba::Status s) {
    switch (s) {
        case mmqba::Status::Accepted:
            return 0;
        case mmqba::Status::Rejected:
            return 1;
        case mmqba::Status::Inconclusive:
            break;
    }
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Measure-many quantum Buchi automata toolkit"};
    app.require_subcommand(1);
    app.footer("Environment: QBA_TOL overrides tolerances, either a bare number (unitarity) or\n"
               "comma-separated key=value pairs with keys unitarity, sv, projector, visit.");

    std::string file, file2, out_path;
    bool json = false;

    // validate
    auto* validate = app.add_subcommand("validate", "Check structural invariants of an automaton file");
    validate->add_option("file", file, "Automaton file")->required();
    validate->add_flag("--json", json, "Machine-readable output");

    // run
    std::string prefix, cycle, word, trace_path, trace_format = "csv";
    std::size_t periods = 1024;
    double cutpoint = 0.0, beta = 0.5, epsilon = 1e-9, visit_eps = -1.0;
    bool literal_mode = false, certify = false, estimate = false;
    bool have_word = false;
    auto* run = app.add_subcommand("run", "Simulate a lasso word u v^w (mmqba) or a finite word (mmqfa)");
    run->add_option("file", file, "Automaton file")->required();
    run->add_option("--prefix,-u", prefix, "Prefix u");
    auto* cycle_opt = run->add_option("--cycle,-v", cycle, "Cycle v (nonempty)");
    auto* word_opt = run->add_option("--word,-w", word, "Finite word for an mmqfa");
    run->add_option("--periods,-n", periods, "Maximum repetitions of v")->check(CLI::PositiveNumber);
    auto* cut_opt = run->add_option("--cutpoint,-p", cutpoint, "Cutpoint in (0, 1]");
    run->add_option("--trace", trace_path, "Write the run trace to this file");
    run->add_option("--format", trace_format, "Trace format")->check(CLI::IsMember({"csv", "json"}));
    auto* literal_flag = run->add_flag("--literal", literal_mode, "Threshold test rej_j < p with early return");
    run->add_flag("--certify", certify, "Sound finite certificates (default)")->excludes(literal_flag);
    run->add_option("--beta", beta, "Visit frequency threshold in (0, 1]");
    run->add_option("--epsilon", epsilon, "Slack on the acceptance threshold");
    run->add_option("--visit-eps", visit_eps, "Smallest alpha_j counted as a visit");
    run->add_flag("--estimate", estimate, "Also print the geometric limit estimate");
    run->add_flag("--json", json, "Machine-readable verdict");
    word_opt->excludes(cycle_opt);

    // emptiness
    std::size_t rounds = 6, threads = 1;
    auto* empt = app.add_subcommand("emptiness", "Dovetailed search for an accepted lasso");
    empt->add_option("file", file, "Automaton file")->required();
    empt->add_option("--cutpoint,-p", cutpoint, "Cutpoint in (0, 1]")->required();
    empt->add_option("--rounds,-r", rounds, "Number of rounds (>= 1)");
    empt->add_option("--beta", beta, "Visit frequency threshold in (0, 1]");
    empt->add_option("--epsilon", epsilon, "Slack on the acceptance threshold");
    empt->add_option("--visit-eps", visit_eps, "Smallest alpha_j counted as a visit");
    empt->add_flag("--literal", literal_mode, "Use the literal threshold test");
    empt->add_option("--threads", threads, "Parallel candidate evaluation; never changes the result");
    empt->add_flag("--json", json, "Machine-readable result");

    // union
    auto* uni = app.add_subcommand("union", "Tensor-product union of two automata");
    uni->add_option("file1", file, "First automaton")->required();
    uni->add_option("file2", file2, "Second automaton")->required();
    uni->add_option("-o,--output", out_path, "Output file")->required();

    // decompose
    auto* dec = app.add_subcommand("decompose", "Split the non-halting space into S1 and S2");
    dec->add_option("file", file, "Automaton file")->required();
    dec->add_flag("--json", json, "Full report with bases");

    // check-cycle
    std::string symbol, subspace;
    auto* cyc = app.add_subcommand("check-cycle", "Cycle-subspace and no-entry check for one symbol");
    cyc->add_option("file", file, "Automaton file")->required();
    cyc->add_option("--symbol,-s", symbol, "Symbol")->required();
    cyc->add_option("--subspace", subspace, "Comma-separated basis state indices")->required();

    // bench
    std::size_t powers = 3, symbols = 10000, repeats = 3;
    auto* bench = app.add_subcommand("bench", "Per-symbol simulation cost across tensor powers");
    bench->add_option("file", file, "Automaton file")->required();
    bench->add_option("--powers", powers, "Tensor powers to time (1 = the automaton itself)")->check(CLI::PositiveNumber);
    bench->add_option("--symbols", symbols, "Symbols per timing")->check(CLI::PositiveNumber);
    bench->add_option("--repeats", repeats, "Best-of repeats")->check(CLI::PositiveNumber);
    bench->add_flag("--json", json, "Machine-readable report");

    // construct
    std::string alphabet;
    std::vector<std::string> words;
    auto* cons = app.add_subcommand("construct", "Build automata from the standard constructions");
    cons->require_subcommand(1);
    auto* c_empty = cons->add_subcommand("empty", "Automaton accepting nothing");
    c_empty->add_option("--alphabet", alphabet, "Symbols, e.g. ab")->required();
    c_empty->add_option("-o,--output", out_path, "Output file")->required();
    auto* c_finite = cons->add_subcommand("finite", "Permutation mmqfa for a finite language");
    c_finite->add_option("--alphabet", alphabet, "Symbols, e.g. ab")->required();
    c_finite->add_option("--word", words, "A word of the language (repeatable; \"\" is the empty word)");
    c_finite->add_option("-o,--output", out_path, "Output file")->required();
    auto* c_restrict = cons->add_subcommand("restrict", "Restrict an automaton to a single lasso word");
    c_restrict->add_option("file", file, "Automaton file")->required();
    c_restrict->add_option("--prefix,-u", prefix, "Prefix u");
    c_restrict->add_option("--cycle,-v", cycle, "Cycle v")->required();
    c_restrict->add_option("-o,--output", out_path, "Output file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }
    have_word = word_opt->count() > 0;

    try {
        const mmqba::Tolerances tol = mmqba::tolerances_from_env();
        if (visit_eps < 0.0) visit_eps = tol.visit;

        if (*validate) {
            auto any = load(file);
            auto violations = std::visit([&](const auto& a) { return mmqba::validate(a, tol.unitarity); }, any);
            if (json) {
                std::cout << "{\"valid\": " << (violations.empty() ? "true" : "false") << ", \"violations\": [";
                for (std::size_t i = 0; i < violations.size(); ++i) {
                    std::cout << (i ? ", " : "") << "{\"invariant\": " << nlohmann::json(violations[i].invariant).dump()
                              << ", \"detail\": " << nlohmann::json(violations[i].detail).dump() << "}";
                }
                std::cout << "]}\n";
            } else if (violations.empty()) {
                std::cout << "valid\n";
            } else {
                for (const auto& v : violations) std::cout << v.invariant << ": " << v.detail << "\n";
            }
            return violations.empty() ? 0 : 1;
        }

        if (*run) {
            auto any = load(file);
            if (auto* fa = std::get_if<mmqba::Mmqfa>(&any)) {
                if (!have_word) throw UsageError("an mmqfa file needs --word");
                mmqba::require_valid(fa->core, tol.unitarity);
                const auto r = mmqba::run_mmqfa(*fa, mmqba::split_symbols(word));
                if (json) {
                    std::cout << "{\"p_accept\": " << mmqba::format_real(r.p_accept)
                              << ", \"p_reject\": " << mmqba::format_real(r.p_reject)
                              << ", \"remaining_norm_sq\": " << mmqba::format_real(r.remaining_norm_sq) << "}\n";
                } else {
                    std::cout << "p_accept: " << mmqba::format_human(r.p_accept) << "\n"
                              << "p_reject: " << mmqba::format_human(r.p_reject) << "\n";
                }
                return 0;
            }
            const auto& a = std::get<mmqba::Mmqba>(any);
            if (have_word) throw UsageError("--word applies to mmqfa files; use --prefix/--cycle");
            if (cycle.empty()) throw UsageError("--cycle must be a nonempty word");
            if (!cut_opt->count()) throw UsageError("--cutpoint is required");
            mmqba::require_valid(a, tol.unitarity);
            const mmqba::Cutpoint p(cutpoint);
            warn_cutpoint(p);
            const auto lasso = mmqba::LassoWord::parse(prefix, cycle);
            mmqba::RunBudget budget{periods, epsilon, beta, visit_eps,
                                    literal_mode ? mmqba::CheckMode::Literal : mmqba::CheckMode::Certify};
            mmqba::Trace trace;
            const bool want_trace = !trace_path.empty() || estimate;
            const auto v = mmqba::run_lasso(a, lasso, p, budget, want_trace ? &trace : nullptr);
            if (!trace_path.empty()) {
                write_file(trace_path, trace_format == "json" ? mmqba::trace_to_json(trace) : mmqba::trace_to_csv(trace));
            }
            if (json) {
                std::cout << mmqba::verdict_to_json(v, lasso, p);
            } else {
                using mmqba::format_human;
                std::cout << "status: " << mmqba::to_string(v.status) << "\n"
                          << "lasso: " << lasso.to_string() << "\n"
                          << "cutpoint: " << format_human(p.value()) << "\n"
                          << "acc: " << format_human(v.acc_lower) << "\n"
                          << "rej: " << format_human(v.rej_lower) << " (upper bound " << format_human(v.rej_upper)
                          << ")\n"
                          << "visits: " << v.visit_count << " in " << v.periods_simulated << " periods (beta "
                          << format_human(v.beta) << ")" << (v.halted ? ", halted" : "") << "\n"
                          << "clauses: " << clauses(v) << "\n"
                          << "mode: " << mmqba::to_string(v.mode) << "\n";
            }
            if (estimate) {
                const std::size_t plen = lasso.cycle.size();
                const std::size_t full = trace.size() > lasso.prefix.size() ? (trace.size() - lasso.prefix.size()) / plen : 0;
                if (full >= 4) {
                    const auto e = mmqba::estimate_limit(trace, plen, lasso.prefix.size());
                    std::cerr << "estimate: acc " << mmqba::format_human(e.acc_limit_estimate) << ", rej "
                              << mmqba::format_human(e.rej_limit_estimate)
                              << (e.is_geometric ? ", geometric ratio " + mmqba::format_human(e.ratio)
                                                 : std::string(", not geometric"))
                              << "\n";
                } else {
                    std::cerr << "estimate: fewer than 4 periods simulated\n";
                }
            }
            return exit_code(v.status);
        }

        if (*empt) {
            if (rounds < 1) throw UsageError("--rounds must be >= 1");
            const auto a = load_core(file);
            mmqba::require_valid(a, tol.unitarity);
            const mmqba::Cutpoint p(cutpoint);
            warn_cutpoint(p);
            mmqba::SearchBudget b{rounds, beta, epsilon, visit_eps,
                                  literal_mode ? mmqba::CheckMode::Literal : mmqba::CheckMode::Certify, threads};
            const auto r = mmqba::check_emptiness(a, p, b);
            if (json) {
                std::cout << mmqba::search_result_to_json(r, p, b);
            } else {
                std::cout << mmqba::to_string(r.status) << "\n";
                if (r.witness) {
                    std::cout << "witness: " << r.witness->word.to_string() << " (round " << r.witness->round << ")\n"
                              << "acc: " << mmqba::format_human(r.witness->verdict.acc_lower) << ", rej upper bound "
                              << mmqba::format_human(r.witness->verdict.rej_upper) << ", visits "
                              << r.witness->verdict.visit_count << " in " << r.witness->verdict.periods_simulated
                              << " periods\n"
                              << "heuristic: beta " << mmqba::format_human(b.beta) << ", epsilon "
                              << mmqba::format_human(b.epsilon) << ", visit_eps " << mmqba::format_human(b.visit_eps)
                              << "\n";
                }
                std::cout << "candidates: " << r.candidates_tried << ", simulations: " << r.evaluations
                          << ", rounds: " << r.rounds_completed << "\n";
            }
            return r.status == mmqba::SearchStatus::Nonempty ? 0 : 2;
        }

        if (*uni) {
            const auto m1 = load_core(file);
            const auto m2 = load_core(file2);
            mmqba::require_valid(m1, tol.unitarity);
            mmqba::require_valid(m2, tol.unitarity);
            const auto u = mmqba::union_of(m1, m2);
            write_file(out_path, mmqba::save_automaton(u));
            std::cout << "wrote " << out_path << " (" << u.dim() << " states)\n";
            return 0;
        }

        if (*dec) {
            const auto a = load_core(file);
            mmqba::require_valid(a, tol.unitarity);
            const auto d = mmqba::decompose_nonhalting(a, tol.singular_value);
            if (json) {
                std::cout << mmqba::decomposition_to_json(d);
            } else {
                std::cout << "s1_dim=" << d.s1.dim() << " s2_dim=" << d.s2.dim() << " chain_length=" << d.chain_length
                          << "\n";
            }
            return 0;
        }

        if (*cyc) {
            const auto a = load_core(file);
            mmqba::require_valid(a, tol.unitarity);
            const auto idx = parse_indices(subspace);
            const auto s = mmqba::SubspaceBasis::coordinate(idx, a.dim());
            const bool is_cycle = mmqba::is_sigma_cycle_subspace(a, s, symbol);
            if (!is_cycle) {
                std::cout << "cycle: no\n";
                return 1;
            }
            const auto report = mmqba::no_entry_check(a, idx, symbol);
            std::cout << "cycle: yes; max no-entry residual " << mmqba::format_human(report.max_residual) << "\n";
            for (const auto& [r, res] : report.residuals) {
                std::cout << "  " << a.states[r] << ": " << mmqba::format_human(res) << "\n";
            }
            return 0;
        }

        if (*bench) {
            const auto a = load_core(file);
            const auto report = mmqba::benchmark_step_cost(a, powers, symbols, repeats);
            if (json) {
                std::cout << mmqba::bench_report_to_json(report);
            } else {
                for (const auto& pt : report.points) {
                    std::cout << "dim " << pt.dim << ": " << mmqba::format_human(pt.ns_per_symbol) << " ns/symbol\n";
                }
                std::cout << "fitted exponent: " << mmqba::format_human(report.exponent) << "\n";
            }
            return 0;
        }

        if (*c_empty) {
            write_file(out_path, mmqba::save_automaton(mmqba::empty_automaton(mmqba::split_symbols(alphabet))));
            return 0;
        }
        if (*c_finite) {
            std::vector<mmqba::Word> lang;
            for (const auto& w : words) lang.push_back(mmqba::split_symbols(w));
            write_file(out_path, mmqba::save_automaton(mmqba::finite_language_mmqfa(lang, mmqba::split_symbols(alphabet))));
            return 0;
        }
        if (*c_restrict) {
            const auto a = load_core(file);
            mmqba::require_valid(a, tol.unitarity);
            write_file(out_path, mmqba::save_automaton(mmqba::restrict_to_lasso(a, mmqba::LassoWord::parse(prefix, cycle))));
            return 0;
        }
    } catch (const UsageError& e) {
        std::cerr << "qba: " << e.what() << "\n";
        return kUsage;
    } catch (const mmqba::UnknownSymbolError& e) {
        // Words come from the command line.
        std::cerr << "qba: " << e.what() << "\n";
        return kUsage;
    } catch (const mmqba::FormatError& e) {
        std::cerr << "qba: " << file << ": " << e.what() << "\n";
        return kDataError;
    } catch (const std::exception& e) {
        std::cerr << "qba: " << e.what() << "\n";
        return kDataError;
    }
    return kUsage;
}
