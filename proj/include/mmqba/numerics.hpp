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

#ifndef MMQBA_NUMERICS_HPP
#define MMQBA_NUMERICS_HPP

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

#include <Eigen/Dense>

namespace mmqba {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

/// Numerical thresholds shared by every module.
struct Tolerances {
    double unitarity = 1e-10;
    double singular_value = 1e-9;
    double projector = 1e-12;
    double visit = 1e-12;
};

/// Parses a QBA_TOL style override: either a bare number (unitarity) or a
/// comma-separated list of `key=value` with keys unitarity, sv, projector, visit.
/// Throws std::invalid_argument on malformed input.
Tolerances parse_tolerances(std::string_view text, Tolerances base = {});

/// Defaults, with the QBA_TOL environment variable applied when set.
Tolerances tolerances_from_env();

/// Largest absolute entry; 0 for an empty matrix.
double max_abs(const Matrix& m);

bool all_finite(const Matrix& m);

/// True iff every entry of U^dagger U - I is within `tol`.
bool is_unitary(const Matrix& m, double tol);

/// Diagonal 0/1 projector onto span{e_i : i in indices}.
/// Throws std::out_of_range if an index is >= dim.
Matrix projector_from_indices(std::span<const std::size_t> indices, std::size_t dim);

/// Kronecker product; entry ((i*rb + k), (j*cb + l)) = a(i,j) * b(k,l).
Matrix tensor(const Matrix& a, const Matrix& b);

/// Orthonormal set of column vectors spanning a subspace of C^ambient_dim.
class SubspaceBasis {
  public:
    /// The zero subspace of C^ambient_dim.
    explicit SubspaceBasis(std::size_t ambient_dim);

    /// Wraps columns that are already orthonormal (checked to `tol`).
    /// Throws std::invalid_argument otherwise.
    SubspaceBasis(Matrix orthonormal_columns, double tol = 1e-9);

    /// Orthonormal basis of the column span, dropping directions whose
    /// singular value is <= sv_tol.
    static SubspaceBasis span_of(const Matrix& columns, double sv_tol = 1e-9);

    /// span{e_i : i in indices}; throws std::out_of_range on a bad index.
    static SubspaceBasis coordinate(std::span<const std::size_t> indices, std::size_t ambient_dim);

    std::size_t dim() const { return static_cast<std::size_t>(vectors_.cols()); }
    std::size_t ambient_dim() const { return static_cast<std::size_t>(vectors_.rows()); }
    bool empty() const { return vectors_.cols() == 0; }

    /// ambient_dim x dim matrix whose columns are the basis vectors.
    const Matrix& vectors() const { return vectors_; }
    Vector vector(std::size_t i) const { return vectors_.col(static_cast<Eigen::Index>(i)); }

    /// Orthogonal projector onto the subspace.
    Matrix projector() const;

  private:
    Matrix vectors_;
};

/// Orthonormal basis of {x : m x = 0}; singular values <= sv_tol count as zero.
SubspaceBasis null_space(const Matrix& m, double sv_tol);

/// Orthogonal projection of v onto span(s). Throws std::invalid_argument on
/// dimension mismatch.
Vector project_onto(const Vector& v, const SubspaceBasis& s);

/// Orthogonal complement of `s` inside `within` (s must lie in `within`).
SubspaceBasis orthogonal_complement(const SubspaceBasis& s, const SubspaceBasis& within, double sv_tol = 1e-9);

/// Largest |<a_i, b_j>| over basis pairs; 0 if either is empty.
double max_cross_inner_product(const SubspaceBasis& a, const SubspaceBasis& b);

/// max over basis vectors v of a of ||v - P_b v||: 0 iff span(a) is inside span(b).
double containment_residual(const SubspaceBasis& a, const SubspaceBasis& b);

}  // namespace mmqba

#endif  // MMQBA_NUMERICS_HPP
