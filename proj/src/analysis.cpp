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

#include "mmqba/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "json_out.hpp"

namespace mmqba {

Decomposition decompose_nonhalting(const Mmqba& a, double sv_tol) {
    const auto n = static_cast<Eigen::Index>(a.dim());
    const auto nonhalt = a.nonhalting();
    const SubspaceBasis s_non = SubspaceBasis::coordinate(nonhalt, a.dim());

    Decomposition d{s_non, SubspaceBasis(a.dim()), 0, {s_non.dim()}};
    SubspaceBasis w = s_non;
    for (;;) {
        ++d.chain_length;
        if (w.empty()) {
            d.chain_dims.push_back(0);
            break;
        }
        const Matrix& basis = w.vectors();
        const Eigen::Index k = basis.cols();
        const Matrix outside = Matrix::Identity(n, n) - w.projector();
        Matrix stacked(n * static_cast<Eigen::Index>(a.unitaries.size()), k);
        for (std::size_t s = 0; s < a.unitaries.size(); ++s) {
            stacked.middleRows(static_cast<Eigen::Index>(s) * n, n) = outside * a.unitaries[s] * basis;
        }
        SubspaceBasis kernel = null_space(stacked, sv_tol);
        d.chain_dims.push_back(kernel.dim());
        if (static_cast<Eigen::Index>(kernel.dim()) == k) break;
        w = SubspaceBasis::span_of(basis * kernel.vectors(), sv_tol);
    }
    d.s1 = w;
    d.s2 = orthogonal_complement(w, s_non, sv_tol);
    return d;
}

double fixed_point_residual(const Mmqba& a, const SubspaceBasis& w) {
    const auto n = static_cast<Eigen::Index>(a.dim());
    const Matrix p = w.empty() ? Matrix(Matrix::Zero(n, n)) : w.projector();
    const Matrix outside = Matrix::Identity(n, n) - p;
    double worst = 0.0;
    for (const auto& u : a.unitaries) worst = std::max(worst, max_abs(outside * u * p));
    return worst;
}

namespace {

detail::Json basis_json(const SubspaceBasis& s) {
    detail::Json out = detail::Json::array();
    for (std::size_t i = 0; i < s.dim(); ++i) {
        detail::Json vec = detail::Json::array();
        Vector v = s.vector(i);
        for (Eigen::Index k = 0; k < v.size(); ++k) vec.push_back(detail::Json::array({v(k).real(), v(k).imag()}));
        out.push_back(std::move(vec));
    }
    return out;
}

}  // namespace

std::string decomposition_to_json(const Decomposition& d) {
    detail::Json j;
    j["s1_dim"] = d.s1.dim();
    j["s2_dim"] = d.s2.dim();
    j["chain_length"] = d.chain_length;
    j["chain_dims"] = d.chain_dims;
    j["s1_basis"] = basis_json(d.s1);
    j["s2_basis"] = basis_json(d.s2);
    return detail::dump17(j) + "\n";
}

namespace {

void require_nonhalting(const Mmqba& a, const SubspaceBasis& s, double tol) {
    if (s.ambient_dim() != a.dim()) {
        throw PreconditionError("subspace dimension " + std::to_string(s.ambient_dim()) +
                                " does not match the automaton (" + std::to_string(a.dim()) + ")");
    }
    const auto halting = a.halting();
    for (std::size_t i = 0; i < s.dim(); ++i) {
        double leak = 0.0;
        for (std::size_t q : halting) leak += std::norm(s.vectors()(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(i)));
        if (std::sqrt(leak) > tol) throw PreconditionError("subspace is not contained in the non-halting space");
    }
}

}  // namespace

bool is_sigma_cycle_subspace(const Mmqba& a, const SubspaceBasis& s, std::string_view symbol, double tol) {
    const Matrix& v = a.unitary(symbol);
    require_nonhalting(a, s, tol);
    for (std::size_t i = 0; i < s.dim(); ++i) {
        Vector image = v * s.vector(i);
        if ((image - project_onto(image, s)).norm() > tol) return false;
    }
    return true;
}

NoEntryReport no_entry_check(const Mmqba& a, std::span<const std::size_t> indices, std::string_view symbol,
                             double tol) {
    const SubspaceBasis s = SubspaceBasis::coordinate(indices, a.dim());
    if (!is_sigma_cycle_subspace(a, s, symbol, tol)) {
        throw PreconditionError("span of the given basis states is not a cycle subspace for '" + std::string(symbol) +
                                "'");
    }
    const Matrix& v = a.unitary(symbol);
    NoEntryReport report;
    for (std::size_t r = 0; r < a.dim(); ++r) {
        if (std::find(indices.begin(), indices.end(), r) != indices.end()) continue;
        double inside = 0.0;
        for (std::size_t i : indices) inside += std::norm(v(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(r)));
        const double residual = std::sqrt(inside);
        report.residuals.emplace_back(r, residual);
        report.max_residual = std::max(report.max_residual, residual);
    }
    return report;
}

namespace {

std::mt19937_64 trial_rng(std::uint64_t seed, std::size_t trial) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
    return std::mt19937_64(seq);
}

Vector random_unit_in(const SubspaceBasis& s, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Vector c(static_cast<Eigen::Index>(s.dim()));
    for (Eigen::Index i = 0; i < c.size(); ++i) c(i) = Complex(g(rng), g(rng));
    Vector v = s.vectors() * c;
    return v / v.norm();
}

std::vector<std::size_t> random_word(const Mmqba& a, std::size_t len, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::size_t> pick(0, a.alphabet.size() - 1);
    std::vector<std::size_t> w(len);
    for (auto& s : w) s = pick(rng);
    return w;
}

TotalState from_vector(const Mmqba& a, const Vector& v) {
    TotalState s = initial_total_state(a);
    s.nonhalt = v;
    return s;
}

}  // namespace

DecompositionCheck verify_decomposition(const Mmqba& a, const Decomposition& d, std::size_t word_len,
                                        std::size_t trials, std::uint64_t seed) {
    DecompositionCheck out;
    out.trials = trials;
    out.word_len = word_len;
    for (std::size_t t = 0; t < trials; ++t) {
        auto rng = trial_rng(seed, t);
        const auto word = random_word(a, word_len, rng);

        if (!d.s1.empty()) {
            Runner r(a, from_vector(a, random_unit_in(d.s1, rng)));
            for (std::size_t idx : word) {
                r.advance(idx);
                out.s1_max_halting = std::max(out.s1_max_halting, r.acc() + r.rej());
                const Vector& psi = r.nonhalt();
                out.s1_max_escape = std::max(out.s1_max_escape, (psi - project_onto(psi, d.s1)).norm());
            }
        }

        if (!d.s2.empty()) {
            const Vector psi2 = random_unit_in(d.s2, rng);
            Runner r(a, from_vector(a, psi2));
            std::vector<double> traj{r.nonhalt_norm_sq()};
            for (std::size_t idx : word) {
                r.advance(idx);
                traj.push_back(r.nonhalt_norm_sq());
            }
            out.s2_norm_sq.push_back(std::move(traj));

            Vector psi1 = d.s1.empty() ? Vector(Vector::Zero(psi2.size())) : random_unit_in(d.s1, rng);
            const double scale = d.s1.empty() ? 1.0 : 1.0 / std::sqrt(2.0);
            Runner mixed(a, from_vector(a, scale * (psi1 + psi2)));
            Runner alone(a, from_vector(a, scale * psi2));
            for (std::size_t idx : word) {
                mixed.advance(idx);
                alone.advance(idx);
                const double dev = std::abs((mixed.alpha() + mixed.rho()) - (alone.alpha() + alone.rho()));
                out.superposition_max_deviation = std::max(out.superposition_max_deviation, dev);
            }
        }
    }
    return out;
}

LimitEstimate estimate_limit(std::span<const StepRecord> trace, std::size_t period_len, std::size_t prefix_len) {
    if (period_len == 0) throw std::invalid_argument("estimate_limit: period length must be positive");
    const std::size_t full = trace.size() > prefix_len ? (trace.size() - prefix_len) / period_len : 0;
    if (full < 4) {
        throw std::invalid_argument("estimate_limit: trace covers " + std::to_string(full) +
                                    " full periods, at least 4 are required");
    }
    std::vector<double> acc_inc(full, 0.0);
    std::vector<double> rej_inc(full, 0.0);
    for (std::size_t k = 0; k < full; ++k) {
        for (std::size_t i = 0; i < period_len; ++i) {
            const auto& rec = trace[prefix_len + k * period_len + i];
            acc_inc[k] += rec.alpha;
            rej_inc[k] += rec.rho;
        }
    }
    const StepRecord& last = trace[prefix_len + full * period_len - 1];

    LimitEstimate est;
    est.acc_lower = last.acc;
    est.acc_upper = last.acc + last.nonhalt_norm_sq;
    est.rej_lower = last.rej;
    est.rej_upper = last.rej + last.nonhalt_norm_sq;
    est.acc_limit_estimate = last.acc;
    est.rej_limit_estimate = last.rej;

    // Latest window of four periods whose increments are still normal numbers;
    // further out they underflow and their ratios are meaningless.
    constexpr double kTiny = 1e-250;
    std::size_t end = full;
    while (end >= 4 && acc_inc[end - 1] <= kTiny) --end;
    if (end < 4) return est;

    auto ratios = [&](const std::vector<double>& inc, std::vector<double>& out) {
        out.clear();
        for (std::size_t k = end - 3; k < end; ++k) {
            if (!(inc[k - 1] > kTiny)) return false;
            out.push_back(inc[k] / inc[k - 1]);
        }
        return true;
    };
    auto constant = [](const std::vector<double>& r) {
        const auto [lo, hi] = std::minmax_element(r.begin(), r.end());
        return *hi - *lo <= 1e-6 && *hi < 1.0;
    };

    std::vector<double> r_acc;
    if (!ratios(acc_inc, r_acc) || !constant(r_acc)) return est;
    const double r = r_acc.back();
    const StepRecord& anchor = trace[prefix_len + end * period_len - 1];
    est.is_geometric = true;
    est.ratio = r;
    est.acc_limit_estimate = anchor.acc + acc_inc[end - 1] * r / (1.0 - r);

    std::vector<double> r_rej;
    if (ratios(rej_inc, r_rej) && constant(r_rej)) {
        const double rr = r_rej.back();
        est.rej_limit_estimate = anchor.rej + rej_inc[end - 1] * rr / (1.0 - rr);
    } else {
        est.rej_limit_estimate = anchor.rej;
    }
    return est;
}

}  // namespace mmqba
