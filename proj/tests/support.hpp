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

// Shared fixtures for the test binaries.

#ifndef MMQBA_TESTS_SUPPORT_HPP
#define MMQBA_TESTS_SUPPORT_HPP

#include <cmath>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"
#include "mmqba/mmqba.hpp"

namespace testing {

inline std::string fixture_path(const std::string& name) { return std::string(MMQBA_FIXTURES_DIR) + "/" + name; }

inline mmqba::Mmqba fixture(const std::string& name) {
    return std::get<mmqba::Mmqba>(mmqba::load_automaton_file(fixture_path(name)));
}

/// Every bundled mmqba fixture that passes validation.
inline std::vector<std::string> valid_fixtures() {
    return {"example1.qba", "a_omega.qba", "ex3.qba",  "ex4.qba",     "ex5.qba",
            "no_entry.qba", "swap.qba",    "empty.qba", "identity.qba"};
}

/// One (automaton, lasso, cutpoint) row of fixtures/manifest.json.
struct LassoCase {
    std::string automaton;
    mmqba::LassoWord word;
    double cutpoint = 0.0;

    std::string name() const { return automaton + " " + word.to_string() + " p=" + std::to_string(cutpoint); }
};

inline nlohmann::json manifest() {
    std::ifstream in(fixture_path("manifest.json"));
    return nlohmann::json::parse(in);
}

inline std::vector<LassoCase> lasso_cases(const std::string& kind) {
    std::vector<LassoCase> out;
    const nlohmann::json m = manifest();
    for (const auto& c : m.at(kind)) {
        out.push_back({c["automaton"].get<std::string>(),
                       mmqba::LassoWord::parse(c["prefix"].get<std::string>(), c["cycle"].get<std::string>()),
                       c["cutpoint"].get<double>()});
    }
    return out;
}

inline mmqba::Matrix real_matrix(std::initializer_list<std::initializer_list<double>> rows) {
    const auto n = static_cast<Eigen::Index>(rows.size());
    mmqba::Matrix m(n, static_cast<Eigen::Index>(rows.begin()->size()));
    Eigen::Index i = 0;
    for (const auto& row : rows) {
        Eigen::Index j = 0;
        for (double x : row) m(i, j++) = x;
        ++i;
    }
    return m;
}

/// Haar-ish random unitary: QR of a complex Gaussian matrix.
inline mmqba::Matrix random_unitary(std::size_t n, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    mmqba::Matrix z(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < z.rows(); ++i)
        for (Eigen::Index j = 0; j < z.cols(); ++j) z(i, j) = mmqba::Complex(g(rng), g(rng));
    Eigen::HouseholderQR<mmqba::Matrix> qr(z);
    return qr.householderQ() * mmqba::Matrix::Identity(z.rows(), z.cols());
}

inline mmqba::Vector random_unit_vector(std::size_t n, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    mmqba::Vector v(static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = mmqba::Complex(g(rng), g(rng));
    return v / v.norm();
}

inline mmqba::Word random_word(const mmqba::Mmqba& a, std::size_t len, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::size_t> pick(0, a.alphabet.size() - 1);
    mmqba::Word w;
    for (std::size_t i = 0; i < len; ++i) w.push_back(a.alphabet[pick(rng)]);
    return w;
}

/// Sum of the geometric series first + first*r + ... (n terms).
inline double geometric_partial(double first, double r, std::size_t n) {
    return first * (1.0 - std::pow(r, static_cast<double>(n))) / (1.0 - r);
}

}  // namespace testing

#endif  // MMQBA_TESTS_SUPPORT_HPP
