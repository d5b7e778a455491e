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

#include "mmqba/numerics.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace mmqba {

namespace {

double parse_double(std::string_view text) {
    // std::from_chars for double is available in libstdc++ 11.
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || !(value > 0.0) || !std::isfinite(value)) {
        throw std::invalid_argument("bad tolerance value '" + std::string(text) + "'");
    }
    return value;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    return s;
}

}  // namespace

Tolerances parse_tolerances(std::string_view text, Tolerances base) {
    text = trim(text);
    if (text.empty()) return base;
    if (text.find('=') == std::string_view::npos) {
        base.unitarity = parse_double(text);
        return base;
    }
    while (!text.empty()) {
        auto comma = text.find(',');
        auto item = trim(text.substr(0, comma));
        text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
        if (item.empty()) continue;
        auto eq = item.find('=');
        if (eq == std::string_view::npos) {
            throw std::invalid_argument("expected key=value in tolerance list, got '" + std::string(item) + "'");
        }
        auto key = trim(item.substr(0, eq));
        double value = parse_double(trim(item.substr(eq + 1)));
        if (key == "unitarity") {
            base.unitarity = value;
        } else if (key == "sv" || key == "singular_value") {
            base.singular_value = value;
        } else if (key == "projector") {
            base.projector = value;
        } else if (key == "visit") {
            base.visit = value;
        } else {
            throw std::invalid_argument("unknown tolerance key '" + std::string(key) + "'");
        }
    }
    return base;
}

Tolerances tolerances_from_env() {
    const char* env = std::getenv("QBA_TOL");
    if (env == nullptr) return {};
    return parse_tolerances(env);
}

double max_abs(const Matrix& m) {
    if (m.size() == 0) return 0.0;
    return m.cwiseAbs().maxCoeff();
}

bool all_finite(const Matrix& m) {
    for (Eigen::Index i = 0; i < m.size(); ++i) {
        const Complex& z = m.data()[i];
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
    return true;
}

bool is_unitary(const Matrix& m, double tol) {
    if (m.rows() != m.cols() || m.rows() == 0) return false;
    if (!all_finite(m)) return false;
    Matrix gram = m.adjoint() * m;
    gram -= Matrix::Identity(m.rows(), m.cols());
    return max_abs(gram) <= tol;
}

Matrix projector_from_indices(std::span<const std::size_t> indices, std::size_t dim) {
    Matrix p = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t i : indices) {
        if (i >= dim) {
            throw std::out_of_range("projector index " + std::to_string(i) + " out of range for dimension " +
                                    std::to_string(dim));
        }
        p(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = 1.0;
    }
    return p;
}

Matrix tensor(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

SubspaceBasis::SubspaceBasis(std::size_t ambient_dim) : vectors_(static_cast<Eigen::Index>(ambient_dim), 0) {}

SubspaceBasis::SubspaceBasis(Matrix orthonormal_columns, double tol) : vectors_(std::move(orthonormal_columns)) {
    if (vectors_.cols() > vectors_.rows()) {
        throw std::invalid_argument("subspace basis has more vectors than the ambient dimension");
    }
    Matrix gram = vectors_.adjoint() * vectors_;
    gram -= Matrix::Identity(gram.rows(), gram.cols());
    if (max_abs(gram) > tol) {
        throw std::invalid_argument("subspace basis vectors are not orthonormal");
    }
}

SubspaceBasis SubspaceBasis::span_of(const Matrix& columns, double sv_tol) {
    if (columns.cols() == 0) return SubspaceBasis(static_cast<std::size_t>(columns.rows()));
    Eigen::JacobiSVD<Matrix> svd(columns, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    Eigen::Index rank = 0;
    while (rank < sv.size() && sv(rank) > sv_tol) ++rank;
    SubspaceBasis out(static_cast<std::size_t>(columns.rows()));
    out.vectors_ = svd.matrixU().leftCols(rank);
    return out;
}

SubspaceBasis SubspaceBasis::coordinate(std::span<const std::size_t> indices, std::size_t ambient_dim) {
    SubspaceBasis out(ambient_dim);
    out.vectors_ = Matrix::Zero(static_cast<Eigen::Index>(ambient_dim), static_cast<Eigen::Index>(indices.size()));
    for (std::size_t k = 0; k < indices.size(); ++k) {
        if (indices[k] >= ambient_dim) {
            throw std::out_of_range("basis index " + std::to_string(indices[k]) + " out of range for dimension " +
                                    std::to_string(ambient_dim));
        }
        out.vectors_(static_cast<Eigen::Index>(indices[k]), static_cast<Eigen::Index>(k)) = 1.0;
    }
    // Duplicate indices would break orthonormality.
    return SubspaceBasis(std::move(out.vectors_), 0.5);
}

Matrix SubspaceBasis::projector() const { return vectors_ * vectors_.adjoint(); }

SubspaceBasis null_space(const Matrix& m, double sv_tol) {
    const auto n = m.cols();
    if (n == 0) return SubspaceBasis(0);
    if (m.rows() == 0) return SubspaceBasis(Matrix::Identity(n, n));
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    Eigen::Index rank = 0;
    while (rank < sv.size() && sv(rank) > sv_tol) ++rank;
    // Columns of V past the rank span the kernel, including the ones with no
    // singular value at all when rows < cols.
    return SubspaceBasis(Matrix(svd.matrixV().rightCols(n - rank)));
}

Vector project_onto(const Vector& v, const SubspaceBasis& s) {
    if (static_cast<std::size_t>(v.size()) != s.ambient_dim()) {
        throw std::invalid_argument("project_onto: vector has dimension " + std::to_string(v.size()) +
                                    " but subspace lives in dimension " + std::to_string(s.ambient_dim()));
    }
    if (s.empty()) return Vector::Zero(v.size());
    return s.vectors() * (s.vectors().adjoint() * v);
}

SubspaceBasis orthogonal_complement(const SubspaceBasis& s, const SubspaceBasis& within, double sv_tol) {
    if (s.ambient_dim() != within.ambient_dim()) {
        throw std::invalid_argument("orthogonal_complement: ambient dimensions differ");
    }
    if (within.empty()) return within;
    if (s.empty()) return within;
    Matrix coords = s.vectors().adjoint() * within.vectors();
    SubspaceBasis kernel = null_space(coords, sv_tol);
    Matrix cols = within.vectors() * kernel.vectors();
    return SubspaceBasis(std::move(cols), 1e-8);
}

double max_cross_inner_product(const SubspaceBasis& a, const SubspaceBasis& b) {
    if (a.empty() || b.empty()) return 0.0;
    return max_abs(a.vectors().adjoint() * b.vectors());
}

double containment_residual(const SubspaceBasis& a, const SubspaceBasis& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        Vector v = a.vector(i);
        worst = std::max(worst, (v - project_onto(v, b)).norm());
    }
    return worst;
}

}  // namespace mmqba
