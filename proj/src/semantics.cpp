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

#include "mmqba/semantics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "json_out.hpp"
#include "mmqba/format.hpp"

namespace mmqba {

double TotalState::acc(const Mmqba& a) const {
    double sum = 0.0;
    for (const auto& [q, prob] : cumulative) {
        if (a.is_accepting(q)) sum += prob;
    }
    return sum;
}

double TotalState::rej(const Mmqba& a) const {
    double sum = 0.0;
    for (const auto& [q, prob] : cumulative) {
        if (a.is_rejecting(q)) sum += prob;
    }
    return sum;
}

TotalState initial_total_state(const Mmqba& a) {
    TotalState s;
    s.nonhalt = Vector::Zero(static_cast<Eigen::Index>(a.dim()));
    s.nonhalt(static_cast<Eigen::Index>(a.initial)) = 1.0;
    for (std::size_t q : a.halting()) s.cumulative[q] = 0.0;
    return s;
}

TotalState start_state(const Mmqba& a) {
    if (!a.end_marker) return initial_total_state(a);
    Runner r(a, initial_total_state(a));
    r.advance_with(*a.end_marker);
    return r.state();
}

Runner::Runner(const Mmqba& a) : Runner(a, initial_total_state(a)) {
    if (a.end_marker) {
        advance_with(*a.end_marker);
        steps_ = 0;
    }
}

Runner::Runner(const Mmqba& a, const TotalState& s)
    : automaton_(&a),
      psi_(s.nonhalt),
      scratch_(static_cast<Eigen::Index>(a.dim())),
      role_(a.dim(), 0),
      cumulative_(a.dim(), 0.0) {
    if (static_cast<std::size_t>(psi_.size()) != a.dim()) {
        throw std::invalid_argument("total state dimension does not match the automaton");
    }
    for (std::size_t q : a.accepting) role_.at(q) = 1;
    for (std::size_t q : a.rejecting) role_.at(q) = 2;
    for (std::size_t q = 0; q < role_.size(); ++q) {
        (role_[q] == 1 ? accepting_ : role_[q] == 2 ? rejecting_ : nonhalting_).push_back(q);
    }
    for (const auto& [q, prob] : s.cumulative) {
        cumulative_.at(q) = prob;
        if (role_[q] == 1) acc_ += prob;
        if (role_[q] == 2) rej_ += prob;
    }
    nonhalt_norm_sq_ = psi_.squaredNorm();
}

void Runner::advance(std::size_t symbol_index) { advance_with(automaton_->unitaries.at(symbol_index)); }

void Runner::advance_with(const Matrix& unitary) {
    // Column-major product on interleaved re/im doubles; for the small
    // matrices used here this beats a general GEMV call by a wide margin.
    const auto n = static_cast<std::size_t>(psi_.size());
    if (static_cast<std::size_t>(unitary.rows()) != n || static_cast<std::size_t>(unitary.cols()) != n) {
        throw std::invalid_argument("unitary dimension does not match the state");
    }
    const double* m = reinterpret_cast<const double*>(unitary.data());
    const double* x = reinterpret_cast<const double*>(psi_.data());
    double* y = reinterpret_cast<double*>(scratch_.data());
    for (std::size_t s = 0; s < n; ++s) {
        y[2 * s] = m[2 * s] * x[0] - m[2 * s + 1] * x[1];
        y[2 * s + 1] = m[2 * s] * x[1] + m[2 * s + 1] * x[0];
    }
    for (std::size_t t = 1; t < n; ++t) {
        const double xr = x[2 * t];
        const double xi = x[2 * t + 1];
        const double* col = m + 2 * n * t;
        for (std::size_t s = 0; s < n; ++s) {
            const double mr = col[2 * s];
            const double mi = col[2 * s + 1];
            y[2 * s] += mr * xr - mi * xi;
            y[2 * s + 1] += mr * xi + mi * xr;
        }
    }
    psi_.swap(scratch_);
    measure();
    ++steps_;
}

void Runner::reset_to(const Vector& psi) {
    if (psi.size() != psi_.size()) throw std::invalid_argument("reset_to: dimension mismatch");
    psi_ = psi;
    std::fill(cumulative_.begin(), cumulative_.end(), 0.0);
    alpha_ = rho_ = acc_ = rej_ = 0.0;
    nonhalt_norm_sq_ = psi_.squaredNorm();
    steps_ = 0;
}

void Runner::measure() {
    Complex* z = psi_.data();
    auto collapse = [&](const std::vector<std::size_t>& idx) {
        double sum = 0.0;
        for (std::size_t i : idx) {
            // std::norm goes through hypot in strict IEEE mode; square directly.
            const double mass = z[i].real() * z[i].real() + z[i].imag() * z[i].imag();
            cumulative_[i] += mass;
            sum += mass;
            z[i] = 0.0;
        }
        return sum;
    };
    alpha_ = collapse(accepting_);
    rho_ = collapse(rejecting_);
    double rest = 0.0;
    for (std::size_t i : nonhalting_) rest += z[i].real() * z[i].real() + z[i].imag() * z[i].imag();
    acc_ += alpha_;
    rej_ += rho_;
    nonhalt_norm_sq_ = rest;
}

TotalState Runner::state() const {
    TotalState s;
    s.nonhalt = psi_;
    for (std::size_t q = 0; q < role_.size(); ++q) {
        if (role_[q] != 0) s.cumulative[q] = cumulative_[q];
    }
    return s;
}

StepRecord Runner::record(const Symbol& symbol) const {
    return StepRecord{steps_, symbol, alpha_, rho_, acc_, rej_, nonhalt_norm_sq_};
}

std::pair<TotalState, StepRecord> step(const Mmqba& a, const TotalState& s, std::string_view symbol,
                                       std::size_t step_index) {
    std::size_t idx = a.symbol_index(symbol);
    Runner r(a, s);
    r.advance(idx);
    StepRecord rec = r.record(Symbol(symbol));
    rec.step = step_index;
    return {r.state(), rec};
}

Trace run_prefix(const Mmqba& a, const Word& word) {
    auto encoded = a.encode(word);
    Runner r(a);
    Trace trace;
    trace.reserve(word.size());
    for (std::size_t i = 0; i < encoded.size(); ++i) {
        r.advance(encoded[i]);
        trace.push_back(r.record(word[i]));
    }
    return trace;
}

LassoWord LassoWord::parse(std::string_view prefix, std::string_view cycle) {
    LassoWord w{split_symbols(prefix), split_symbols(cycle)};
    if (w.cycle.empty()) throw std::invalid_argument("lasso cycle must be nonempty");
    return w;
}

std::string LassoWord::to_string() const { return join_symbols(prefix) + "(" + join_symbols(cycle) + ")^w"; }

std::string to_string(Status s) {
    switch (s) {
        case Status::Accepted:
            return "ACCEPTED";
        case Status::Rejected:
            return "REJECTED";
        case Status::Inconclusive:
            return "INCONCLUSIVE";
    }
    return "?";
}

std::string to_string(ClauseStatus s) {
    switch (s) {
        case ClauseStatus::Certified:
            return "certified";
        case ClauseStatus::Possible:
            return "possible";
        case ClauseStatus::Refuted:
            return "refuted";
    }
    return "?";
}

std::string to_string(CheckMode m) { return m == CheckMode::Certify ? "certify" : "literal"; }

void RunBudget::check() const {
    if (max_periods < 1) throw std::invalid_argument("max_periods must be >= 1");
    if (!(beta > 0.0 && beta <= 1.0)) throw std::invalid_argument("beta must lie in (0, 1]");
    if (!(epsilon >= 0.0)) throw std::invalid_argument("epsilon must be >= 0");
    if (!(visit_eps > 0.0)) throw std::invalid_argument("visit_eps must be > 0");
}

namespace {

struct LassoProgress {
    double acc;
    double rej;
    double tail;
    std::size_t visits;
    std::size_t periods;
    bool halted;
    std::size_t last_visit_period = 0;  // 0: no visit inside the cycle yet
};

// Once the run has halted, periods after the last detectable visit are not
// charged: visits there are below visit_eps because the mass is.
bool frequent_enough(const LassoProgress& s, double beta) {
    const std::size_t window = s.halted ? s.last_visit_period : s.periods;
    if (window == 0) return false;
    return static_cast<double>(s.visits) >= beta * static_cast<double>(window);
}

bool literal_accepts(const LassoProgress& s, double p, const RunBudget& b) {
    return s.acc >= p - b.epsilon && s.rej < p && frequent_enough(s, b.beta);
}

void classify(const Mmqba& a, const LassoProgress& s, double p, const RunBudget& b, Verdict& v) {
    const double floor = p - b.epsilon;
    const bool no_accepting = a.accepting.empty();

    if (s.acc >= floor) {
        v.acc_limit = ClauseStatus::Certified;
    } else if (no_accepting || s.acc + s.tail < floor || s.halted) {
        // acc can grow by at most the remaining non-halting mass.
        v.acc_limit = ClauseStatus::Refuted;
    } else {
        v.acc_limit = ClauseStatus::Possible;
    }

    if (s.rej >= p) {
        v.rej_limit = ClauseStatus::Refuted;
    } else if (b.mode == CheckMode::Literal || s.rej + s.tail < p) {
        v.rej_limit = ClauseStatus::Certified;
    } else {
        v.rej_limit = ClauseStatus::Possible;
    }

    if (no_accepting || s.tail == 0.0) {
        v.buchi = ClauseStatus::Refuted;
    } else if (frequent_enough(s, b.beta)) {
        v.buchi = ClauseStatus::Certified;
    } else {
        v.buchi = ClauseStatus::Possible;
    }

    const bool all_certified = v.acc_limit == ClauseStatus::Certified && v.rej_limit == ClauseStatus::Certified &&
                               v.buchi == ClauseStatus::Certified;
    const bool any_refuted = v.acc_limit == ClauseStatus::Refuted || v.rej_limit == ClauseStatus::Refuted ||
                             v.buchi == ClauseStatus::Refuted;
    if (b.mode == CheckMode::Literal && literal_accepts(s, p, b)) {
        v.status = Status::Accepted;
    } else if (any_refuted) {
        v.status = Status::Rejected;
    } else if (all_certified) {
        v.status = Status::Accepted;
    } else {
        v.status = Status::Inconclusive;
    }
}

}  // namespace

Verdict run_lasso(const Mmqba& a, const LassoWord& w, Cutpoint p, const RunBudget& budget, Trace* trace) {
    budget.check();
    if (w.cycle.empty()) throw std::invalid_argument("lasso cycle must be nonempty");
    const auto u = a.encode(w.prefix);
    const auto v = a.encode(w.cycle);
    const double cut = p.value();

    Runner r(a);
    LassoProgress s{r.acc(), r.rej(), r.nonhalt_norm_sq(), 0, 0, r.nonhalt_norm_sq() <= budget.visit_eps};
    bool early_accept = false;

    auto advance = [&](std::size_t idx, const Symbol& sym) {
        r.advance(idx);
        if (trace) trace->push_back(r.record(sym));
        if (r.alpha() > budget.visit_eps) {
            ++s.visits;
            s.last_visit_period = s.periods;
        }
        s.acc = r.acc();
        s.rej = r.rej();
        s.tail = r.nonhalt_norm_sq();
        s.halted = s.tail <= budget.visit_eps;
    };

    for (std::size_t i = 0; i < u.size() && !s.halted; ++i) advance(u[i], w.prefix[i]);
    for (std::size_t k = 0; k < budget.max_periods && !s.halted && !early_accept; ++k) {
        ++s.periods;
        for (std::size_t i = 0; i < v.size(); ++i) {
            advance(v[i], w.cycle[i]);
            if (budget.mode == CheckMode::Literal && literal_accepts(s, cut, budget)) {
                early_accept = true;
                break;
            }
            if (s.halted) break;
        }
    }

    Verdict verdict;
    verdict.acc_lower = s.acc;
    verdict.rej_lower = s.rej;
    verdict.rej_upper = s.rej + s.tail;
    verdict.nonhalt_norm_sq = s.tail;
    verdict.visit_count = s.visits;
    verdict.periods_simulated = s.periods;
    verdict.steps = r.steps();
    verdict.halted = s.halted;
    verdict.beta = budget.beta;
    verdict.epsilon = budget.epsilon;
    verdict.visit_eps = budget.visit_eps;
    verdict.mode = budget.mode;
    classify(a, s, cut, budget, verdict);
    return verdict;
}

FiniteRunResult run_mmqfa(const Mmqfa& a, const Word& word) {
    auto encoded = a.core.encode(word);
    Runner r(a.core);
    for (std::size_t idx : encoded) r.advance(idx);
    r.advance_with(a.terminal);
    return {r.acc(), r.rej(), r.nonhalt_norm_sq()};
}

ClauseReport check_acceptance_clauses(std::span<const StepRecord> trace, Cutpoint p, double visit_eps) {
    if (trace.empty()) throw std::invalid_argument("check_acceptance_clauses: empty trace");
    ClauseReport out;
    for (const auto& rec : trace) {
        if (rec.alpha > visit_eps) {
            ++out.buchi_count;
            out.last_visit = rec.step;
        }
    }
    const StepRecord& last = trace.back();
    const double cut = p.value();
    if (last.acc >= cut) {
        out.acc_limit = ClauseStatus::Certified;
    } else if (last.acc + last.nonhalt_norm_sq < cut) {
        out.acc_limit = ClauseStatus::Refuted;
    }
    if (last.rej >= cut) {
        out.rej_limit = ClauseStatus::Refuted;
    } else if (last.rej + last.nonhalt_norm_sq < cut) {
        out.rej_limit = ClauseStatus::Certified;
    }
    if (last.nonhalt_norm_sq == 0.0) out.buchi = ClauseStatus::Refuted;
    return out;
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace

std::string trace_to_csv(std::span<const StepRecord> trace) {
    std::string out = "j,symbol,alpha,rho,acc,rej,nonhalt_norm_sq\n";
    for (const auto& r : trace) {
        out += std::to_string(r.step) + "," + csv_field(r.symbol) + "," + format_real(r.alpha) + "," +
               format_real(r.rho) + "," + format_real(r.acc) + "," + format_real(r.rej) + "," +
               format_real(r.nonhalt_norm_sq) + "\n";
    }
    return out;
}

std::string trace_to_json(std::span<const StepRecord> trace) {
    detail::Json arr = detail::Json::array();
    for (const auto& r : trace) {
        detail::Json j;
        j["j"] = r.step;
        j["symbol"] = r.symbol;
        j["alpha"] = r.alpha;
        j["rho"] = r.rho;
        j["acc"] = r.acc;
        j["rej"] = r.rej;
        j["nonhalt_norm_sq"] = r.nonhalt_norm_sq;
        arr.push_back(std::move(j));
    }
    return detail::dump17(arr) + "\n";
}

std::string verdict_to_json(const Verdict& v, const LassoWord& w, Cutpoint p) {
    detail::Json j;
    j["status"] = to_string(v.status);
    j["prefix"] = join_symbols(w.prefix);
    j["cycle"] = join_symbols(w.cycle);
    j["cutpoint"] = p.value();
    j["acc_lower"] = v.acc_lower;
    j["rej_lower"] = v.rej_lower;
    j["rej_upper"] = v.rej_upper;
    j["nonhalt_norm_sq"] = v.nonhalt_norm_sq;
    j["visit_count"] = v.visit_count;
    j["periods_simulated"] = v.periods_simulated;
    j["steps"] = v.steps;
    j["halted"] = v.halted;
    j["clauses"] = {{"buchi", to_string(v.buchi)},
                    {"acc_limit", to_string(v.acc_limit)},
                    {"rej_limit", to_string(v.rej_limit)}};
    j["parameters"] = {{"mode", to_string(v.mode)},
                       {"beta", v.beta},
                       {"epsilon", v.epsilon},
                       {"visit_eps", v.visit_eps}};
    return detail::dump17(j) + "\n";
}

}  // namespace mmqba
