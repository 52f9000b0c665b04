// Copyright 2026 The qsrm Authors
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

#ifndef QSRM_LINALG_H
#define QSRM_LINALG_H

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "qsrm/errors.h"

namespace qsrm {

using Cx = std::complex<double>;

/// Largest state-vector dimension any operation will materialize.
inline constexpr size_t kMaxTotalDim = size_t{1} << 20;
/// Largest dimension for dense square matrices (density matrices, operators).
inline constexpr size_t kMaxMatrixDim = 2048;

/// Tolerance applied by construction invariants (normalization, hermiticity, trace, PSD).
inline constexpr double kInvariantTol = 1e-9;

/// Builds a complex value, rejecting NaN and infinite components.
Cx make_cx(double re, double im = 0.0);
/// Polar form; same finiteness check.
Cx cx_polar(double magnitude, double phase);

/// Dimensions of an ordered tensor product of factors.
///
/// Composite indices are row-major: the FIRST factor varies slowest. Every
/// operation in the library uses this convention.
class HilbertLayout {
   public:
    HilbertLayout() = default;
    explicit HilbertLayout(std::vector<size_t> factor_dims);
    HilbertLayout(std::initializer_list<size_t> factor_dims);
    static HilbertLayout qubits(size_t count);

    const std::vector<size_t> &factor_dims() const {
        return dims_;
    }
    size_t num_factors() const {
        return dims_.size();
    }
    size_t total_dim() const {
        return total_;
    }

    HilbertLayout concat(const HilbertLayout &other) const;
    /// Layout of the listed factors, in original order. `keep` must be sorted and unique.
    HilbertLayout subset(std::span<const size_t> keep) const;

    bool operator==(const HilbertLayout &other) const = default;

   private:
    std::vector<size_t> dims_;
    size_t total_ = 0;
};

/// A normalized pure state over an explicit layout.
class StateVector {
   public:
    /// Throws ValidationError unless the Euclidean norm is 1 within kInvariantTol.
    static StateVector from_amplitudes(HilbertLayout layout, std::vector<Cx> amplitudes);
    static StateVector basis(HilbertLayout layout, size_t index);
    static StateVector qubit(Cx amp0, Cx amp1);

    const HilbertLayout &layout() const {
        return layout_;
    }
    std::span<const Cx> amplitudes() const {
        return amps_;
    }
    size_t dim() const {
        return amps_.size();
    }
    Cx operator[](size_t k) const {
        return amps_[k];
    }
    double norm() const;

   private:
    StateVector(HilbertLayout layout, std::vector<Cx> amplitudes);
    friend class KetBuilder;
    friend StateVector tensor(const StateVector &u, const StateVector &v);

    HilbertLayout layout_;
    std::vector<Cx> amps_;
};

/// Unnormalized accumulator for linear combinations of states.
///
/// Amplitudes are summed exactly as given; normalization only happens at
/// `normalized()` or is checked at `require_unit()`.
class KetBuilder {
   public:
    explicit KetBuilder(HilbertLayout layout);

    KetBuilder &add(Cx coeff, const StateVector &term);
    KetBuilder &add_amplitude(size_t index, Cx value);

    const HilbertLayout &layout() const {
        return layout_;
    }
    std::span<const Cx> amplitudes() const {
        return amps_;
    }
    double norm() const;

    /// Rescales to unit norm. Throws ValidationError for a zero vector.
    StateVector normalized() const;
    /// Throws ValidationError unless the accumulated norm is already 1 within kInvariantTol.
    StateVector require_unit() const;

   private:
    HilbertLayout layout_;
    std::vector<Cx> amps_;
};

/// Hermitian, unit-trace, positive semidefinite matrix over a layout.
class DensityMatrix {
   public:
    /// Full validation, including a spectral PSD check.
    static DensityMatrix from_entries(HilbertLayout layout, std::vector<Cx> row_major);

    const HilbertLayout &layout() const {
        return layout_;
    }
    size_t dim() const {
        return layout_.total_dim();
    }
    Cx operator()(size_t row, size_t col) const {
        return entries_[row * dim() + col];
    }
    std::span<const Cx> entries() const {
        return entries_;
    }
    double trace() const;

   private:
    struct Trusted {};
    // Checks hermiticity and trace only; callers guarantee PSD by construction.
    DensityMatrix(HilbertLayout layout, std::vector<Cx> row_major, Trusted);

    friend DensityMatrix outer_to_density(const StateVector &u);
    friend DensityMatrix partial_trace(const DensityMatrix &rho, std::span<const size_t> keep);
    friend DensityMatrix partial_trace(const StateVector &psi, std::span<const size_t> keep);
    friend DensityMatrix density_2x2(double p00, Cx p01);

    HilbertLayout layout_;
    std::vector<Cx> entries_;
};

struct EigenPair {
    double lambda_plus;
    double lambda_minus;
};

/// Dense square operator, used for explicit unitaries.
class Operator {
   public:
    explicit Operator(size_t dim);
    static Operator identity(size_t dim);

    size_t dim() const {
        return dim_;
    }
    Cx &operator()(size_t row, size_t col) {
        return entries_[row * dim_ + col];
    }
    Cx operator()(size_t row, size_t col) const {
        return entries_[row * dim_ + col];
    }

    Operator adjoint() const;
    Operator operator*(const Operator &rhs) const;
    /// Largest entrywise deviation of U^dagger U from the identity.
    double unitarity_error() const;
    /// Applies to a state; the result is renormalization-free, so it is checked to be unit.
    StateVector apply(const StateVector &psi) const;

   private:
    size_t dim_;
    std::vector<Cx> entries_;
};

StateVector tensor(const StateVector &u, const StateVector &v);
StateVector tensor_all(std::span<const StateVector> factors);
/// <u|v>, conjugate-linear in the first argument.
Cx inner_product(const StateVector &u, const StateVector &v);
Cx inner_product(std::span<const Cx> u, std::span<const Cx> v);
DensityMatrix outer_to_density(const StateVector &u);

/// Traces out every factor not in `keep` (sorted, unique, nonempty, proper subset).
DensityMatrix partial_trace(const DensityMatrix &rho, std::span<const size_t> keep);
/// Same as partial_trace(outer_to_density(psi), keep) without materializing the full matrix.
DensityMatrix partial_trace(const StateVector &psi, std::span<const size_t> keep);

/// 2x2 density matrix with diagonal (p00, 1 - p00) and upper off-diagonal p01.
DensityMatrix density_2x2(double p00, Cx p01);

/// Analytic spectrum of a 2x2 density matrix, descending.
EigenPair eigenvalues_2x2(const DensityMatrix &rho);
/// Ascending eigenvalues of a Hermitian matrix given row-major.
std::vector<double> hermitian_eigenvalues(std::span<const Cx> row_major, size_t dim);

double trace_distance(const DensityMatrix &a, const DensityMatrix &b);
/// <psi|rho|psi>.
double fidelity_to_pure(const DensityMatrix &rho, const StateVector &psi);
/// Shannon entropy in bits of the distribution (lambda, 1 - lambda).
double binary_entropy(double lambda);

/// Largest entrywise modulus of a - b.
double max_entry_diff(const DensityMatrix &a, const DensityMatrix &b);

}  // namespace qsrm

#endif
