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

#include "qsrm/linalg.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>

namespace qsrm {

namespace {

std::string dims_to_string(const std::vector<size_t> &dims) {
    std::stringstream ss;
    ss << "(";
    for (size_t k = 0; k < dims.size(); k++) {
        ss << (k ? "," : "") << dims[k];
    }
    ss << ")";
    return ss.str();
}

void check_matrix_dim(size_t dim, const char *what) {
    if (dim > kMaxMatrixDim) {
        std::stringstream ss;
        ss << what << ": matrix dimension " << dim << " exceeds the cap of " << kMaxMatrixDim;
        throw ResourceError(ss.str());
    }
}

void check_keep(const HilbertLayout &layout, std::span<const size_t> keep) {
    if (keep.empty() || keep.size() >= layout.num_factors()) {
        throw UsageError("partial_trace: keep-set must be a nonempty proper subset of the layout factors");
    }
    for (size_t k = 0; k < keep.size(); k++) {
        if (keep[k] >= layout.num_factors()) {
            throw UsageError("partial_trace: factor index " + std::to_string(keep[k]) + " out of range");
        }
        if (k > 0 && keep[k] <= keep[k - 1]) {
            throw UsageError("partial_trace: keep-set must be sorted and free of duplicates");
        }
    }
}

/// table[t * kept_dim + k] is the composite index whose kept digits encode k and traced digits encode t.
std::vector<size_t> split_index_table(const HilbertLayout &layout, std::span<const size_t> keep) {
    const auto &dims = layout.factor_dims();
    std::vector<bool> is_kept(dims.size(), false);
    for (size_t f : keep) {
        is_kept[f] = true;
    }
    size_t kept_dim = 1;
    for (size_t f : keep) {
        kept_dim *= dims[f];
    }
    std::vector<size_t> table(layout.total_dim());
    std::vector<size_t> digits(dims.size(), 0);
    for (size_t i = 0; i < layout.total_dim(); i++) {
        size_t k = 0;
        size_t t = 0;
        for (size_t f = 0; f < dims.size(); f++) {
            if (is_kept[f]) {
                k = k * dims[f] + digits[f];
            } else {
                t = t * dims[f] + digits[f];
            }
        }
        table[t * kept_dim + k] = i;
        for (size_t f = dims.size(); f-- > 0;) {
            if (++digits[f] < dims[f]) {
                break;
            }
            digits[f] = 0;
        }
    }
    return table;
}

void check_hermitian_unit_trace(std::span<const Cx> m, size_t dim, const char *what) {
    double tr = 0;
    for (size_t r = 0; r < dim; r++) {
        tr += m[r * dim + r].real();
        for (size_t c = r; c < dim; c++) {
            if (std::abs(m[r * dim + c] - std::conj(m[c * dim + r])) > kInvariantTol) {
                throw ValidationError(std::string(what) + ": matrix is not Hermitian");
            }
        }
    }
    if (std::abs(tr - 1.0) > kInvariantTol) {
        throw ValidationError(std::string(what) + ": trace " + std::to_string(tr) + " is not 1");
    }
}

}  // namespace

Cx make_cx(double re, double im) {
    if (!std::isfinite(re) || !std::isfinite(im)) {
        throw ValidationError("complex value has a non-finite component");
    }
    return {re, im};
}

Cx cx_polar(double magnitude, double phase) {
    if (!std::isfinite(magnitude) || !std::isfinite(phase)) {
        throw ValidationError("complex value has a non-finite component");
    }
    return std::polar(magnitude, phase);
}

HilbertLayout::HilbertLayout(std::vector<size_t> factor_dims) : dims_(std::move(factor_dims)), total_(1) {
    if (dims_.empty()) {
        throw UsageError("HilbertLayout needs at least one factor");
    }
    for (size_t d : dims_) {
        if (d == 0) {
            throw UsageError("HilbertLayout factor dimensions must be >= 1, got " + dims_to_string(dims_));
        }
        if (total_ > kMaxTotalDim / d) {
            throw ResourceError(
                "HilbertLayout " + dims_to_string(dims_) + " exceeds the total dimension cap of " +
                std::to_string(kMaxTotalDim));
        }
        total_ *= d;
    }
}

HilbertLayout::HilbertLayout(std::initializer_list<size_t> factor_dims)
    : HilbertLayout(std::vector<size_t>(factor_dims)) {
}

HilbertLayout HilbertLayout::qubits(size_t count) {
    return HilbertLayout(std::vector<size_t>(count, 2));
}

HilbertLayout HilbertLayout::concat(const HilbertLayout &other) const {
    std::vector<size_t> dims = dims_;
    dims.insert(dims.end(), other.dims_.begin(), other.dims_.end());
    return HilbertLayout(std::move(dims));
}

HilbertLayout HilbertLayout::subset(std::span<const size_t> keep) const {
    std::vector<size_t> dims;
    for (size_t f : keep) {
        dims.push_back(dims_.at(f));
    }
    return HilbertLayout(std::move(dims));
}

StateVector::StateVector(HilbertLayout layout, std::vector<Cx> amplitudes)
    : layout_(std::move(layout)), amps_(std::move(amplitudes)) {
}

StateVector StateVector::from_amplitudes(HilbertLayout layout, std::vector<Cx> amplitudes) {
    if (amplitudes.size() != layout.total_dim()) {
        throw UsageError(
            "StateVector: " + std::to_string(amplitudes.size()) + " amplitudes for a layout of dimension " +
            std::to_string(layout.total_dim()));
    }
    for (const Cx &z : amplitudes) {
        make_cx(z.real(), z.imag());
    }
    StateVector result(std::move(layout), std::move(amplitudes));
    double n = result.norm();
    if (std::abs(n - 1.0) > kInvariantTol) {
        throw ValidationError("StateVector: norm " + std::to_string(n) + " is not 1");
    }
    return result;
}

StateVector StateVector::basis(HilbertLayout layout, size_t index) {
    if (index >= layout.total_dim()) {
        throw UsageError("StateVector::basis: index out of range");
    }
    std::vector<Cx> amps(layout.total_dim());
    amps[index] = 1.0;
    return StateVector(std::move(layout), std::move(amps));
}

StateVector StateVector::qubit(Cx amp0, Cx amp1) {
    return from_amplitudes(HilbertLayout{2}, {amp0, amp1});
}

double StateVector::norm() const {
    return std::sqrt(std::real(inner_product(amps_, amps_)));
}

KetBuilder::KetBuilder(HilbertLayout layout) : layout_(std::move(layout)), amps_(layout_.total_dim()) {
}

KetBuilder &KetBuilder::add(Cx coeff, const StateVector &term) {
    if (term.layout() != layout_) {
        throw UsageError("KetBuilder::add: term layout does not match the builder layout");
    }
    for (size_t k = 0; k < amps_.size(); k++) {
        amps_[k] += coeff * term[k];
    }
    return *this;
}

KetBuilder &KetBuilder::add_amplitude(size_t index, Cx value) {
    amps_.at(index) += value;
    return *this;
}

double KetBuilder::norm() const {
    return std::sqrt(std::real(inner_product(amps_, amps_)));
}

StateVector KetBuilder::normalized() const {
    double n = norm();
    if (n == 0) {
        throw ValidationError("KetBuilder::normalized: zero vector");
    }
    std::vector<Cx> amps = amps_;
    for (Cx &z : amps) {
        z /= n;
    }
    return StateVector(layout_, std::move(amps));
}

StateVector KetBuilder::require_unit() const {
    double n = norm();
    if (std::abs(n - 1.0) > kInvariantTol) {
        throw ValidationError("KetBuilder::require_unit: norm " + std::to_string(n) + " is not 1");
    }
    return StateVector(layout_, amps_);
}

DensityMatrix::DensityMatrix(HilbertLayout layout, std::vector<Cx> row_major, Trusted)
    : layout_(std::move(layout)), entries_(std::move(row_major)) {
    check_hermitian_unit_trace(entries_, layout_.total_dim(), "DensityMatrix");
}

DensityMatrix DensityMatrix::from_entries(HilbertLayout layout, std::vector<Cx> row_major) {
    size_t dim = layout.total_dim();
    check_matrix_dim(dim, "DensityMatrix");
    if (row_major.size() != dim * dim) {
        throw UsageError("DensityMatrix: entry count does not match layout dimension squared");
    }
    for (const Cx &z : row_major) {
        make_cx(z.real(), z.imag());
    }
    DensityMatrix result(std::move(layout), std::move(row_major), Trusted{});
    auto eig = hermitian_eigenvalues(result.entries_, dim);
    if (eig.front() < -kInvariantTol) {
        throw ValidationError("DensityMatrix: not positive semidefinite (min eigenvalue " +
                              std::to_string(eig.front()) + ")");
    }
    return result;
}

double DensityMatrix::trace() const {
    double t = 0;
    for (size_t k = 0; k < dim(); k++) {
        t += (*this)(k, k).real();
    }
    return t;
}

Operator::Operator(size_t dim) : dim_(dim) {
    check_matrix_dim(dim, "Operator");
    entries_.assign(dim * dim, Cx{});
}

Operator Operator::identity(size_t dim) {
    Operator result(dim);
    for (size_t k = 0; k < dim; k++) {
        result(k, k) = 1.0;
    }
    return result;
}

Operator Operator::adjoint() const {
    Operator result(dim_);
    for (size_t r = 0; r < dim_; r++) {
        for (size_t c = 0; c < dim_; c++) {
            result(c, r) = std::conj((*this)(r, c));
        }
    }
    return result;
}

Operator Operator::operator*(const Operator &rhs) const {
    if (rhs.dim_ != dim_) {
        throw UsageError("Operator product: dimension mismatch");
    }
    Operator result(dim_);
    for (size_t r = 0; r < dim_; r++) {
        for (size_t k = 0; k < dim_; k++) {
            Cx a = (*this)(r, k);
            if (a == Cx{}) {
                continue;
            }
            for (size_t c = 0; c < dim_; c++) {
                result(r, c) += a * rhs(k, c);
            }
        }
    }
    return result;
}

double Operator::unitarity_error() const {
    Operator product = adjoint() * (*this);
    double worst = 0;
    for (size_t r = 0; r < dim_; r++) {
        for (size_t c = 0; c < dim_; c++) {
            worst = std::max(worst, std::abs(product(r, c) - (r == c ? 1.0 : 0.0)));
        }
    }
    return worst;
}

StateVector Operator::apply(const StateVector &psi) const {
    if (psi.dim() != dim_) {
        throw UsageError("Operator::apply: dimension mismatch");
    }
    KetBuilder out(psi.layout());
    for (size_t r = 0; r < dim_; r++) {
        Cx acc = 0;
        for (size_t c = 0; c < dim_; c++) {
            acc += (*this)(r, c) * psi[c];
        }
        out.add_amplitude(r, acc);
    }
    return out.require_unit();
}

StateVector tensor(const StateVector &u, const StateVector &v) {
    HilbertLayout layout = u.layout().concat(v.layout());
    std::vector<Cx> amps(layout.total_dim());
    for (size_t i = 0; i < u.dim(); i++) {
        for (size_t j = 0; j < v.dim(); j++) {
            amps[i * v.dim() + j] = u[i] * v[j];
        }
    }
    return StateVector(std::move(layout), std::move(amps));
}

StateVector tensor_all(std::span<const StateVector> factors) {
    if (factors.empty()) {
        throw UsageError("tensor_all: no factors");
    }
    StateVector acc = factors[0];
    for (size_t k = 1; k < factors.size(); k++) {
        acc = tensor(acc, factors[k]);
    }
    return acc;
}

Cx inner_product(std::span<const Cx> u, std::span<const Cx> v) {
    if (u.size() != v.size()) {
        throw UsageError(
            "inner_product: dimension mismatch (" + std::to_string(u.size()) + " vs " + std::to_string(v.size()) +
            ")");
    }
    Cx acc = 0;
    for (size_t k = 0; k < u.size(); k++) {
        acc += std::conj(u[k]) * v[k];
    }
    return acc;
}

Cx inner_product(const StateVector &u, const StateVector &v) {
    return inner_product(u.amplitudes(), v.amplitudes());
}

DensityMatrix outer_to_density(const StateVector &u) {
    size_t dim = u.dim();
    check_matrix_dim(dim, "outer_to_density");
    std::vector<Cx> entries(dim * dim);
    for (size_t r = 0; r < dim; r++) {
        for (size_t c = 0; c < dim; c++) {
            entries[r * dim + c] = u[r] * std::conj(u[c]);
        }
    }
    return DensityMatrix(u.layout(), std::move(entries), DensityMatrix::Trusted{});
}

DensityMatrix partial_trace(const DensityMatrix &rho, std::span<const size_t> keep) {
    check_keep(rho.layout(), keep);
    HilbertLayout out_layout = rho.layout().subset(keep);
    size_t kd = out_layout.total_dim();
    size_t td = rho.dim() / kd;
    auto table = split_index_table(rho.layout(), keep);
    std::vector<Cx> out(kd * kd);
    for (size_t t = 0; t < td; t++) {
        const size_t *row = &table[t * kd];
        for (size_t k1 = 0; k1 < kd; k1++) {
            for (size_t k2 = 0; k2 < kd; k2++) {
                out[k1 * kd + k2] += rho(row[k1], row[k2]);
            }
        }
    }
    return DensityMatrix(std::move(out_layout), std::move(out), DensityMatrix::Trusted{});
}

DensityMatrix partial_trace(const StateVector &psi, std::span<const size_t> keep) {
    check_keep(psi.layout(), keep);
    HilbertLayout out_layout = psi.layout().subset(keep);
    size_t kd = out_layout.total_dim();
    check_matrix_dim(kd, "partial_trace");
    size_t td = psi.dim() / kd;
    auto table = split_index_table(psi.layout(), keep);
    std::vector<Cx> out(kd * kd);
    for (size_t t = 0; t < td; t++) {
        const size_t *row = &table[t * kd];
        for (size_t k1 = 0; k1 < kd; k1++) {
            Cx a = psi[row[k1]];
            if (a == Cx{}) {
                continue;
            }
            for (size_t k2 = 0; k2 < kd; k2++) {
                out[k1 * kd + k2] += a * std::conj(psi[row[k2]]);
            }
        }
    }
    return DensityMatrix(std::move(out_layout), std::move(out), DensityMatrix::Trusted{});
}

DensityMatrix density_2x2(double p00, Cx p01) {
    make_cx(p01.real(), p01.imag());
    if (!(p00 >= 0 && p00 <= 1) || std::norm(p01) > p00 * (1 - p00) + kInvariantTol) {
        throw ValidationError("density_2x2: parameters do not define a positive semidefinite matrix");
    }
    return DensityMatrix(HilbertLayout{2}, {p00, p01, std::conj(p01), 1 - p00}, DensityMatrix::Trusted{});
}

EigenPair eigenvalues_2x2(const DensityMatrix &rho) {
    if (rho.dim() != 2) {
        throw UsageError("eigenvalues_2x2: expected a 2x2 matrix, got dimension " + std::to_string(rho.dim()));
    }
    double mean = 0.5 * (rho(0, 0).real() + rho(1, 1).real());
    double half_split = 0.5 * (rho(0, 0).real() - rho(1, 1).real());
    double radius = std::hypot(half_split, std::abs(rho(0, 1)));
    return {mean + radius, mean - radius};
}

std::vector<double> hermitian_eigenvalues(std::span<const Cx> row_major, size_t dim) {
    if (row_major.size() != dim * dim) {
        throw UsageError("hermitian_eigenvalues: entry count does not match dimension");
    }
    check_matrix_dim(dim, "hermitian_eigenvalues");
    Eigen::MatrixXcd m(dim, dim);
    for (size_t r = 0; r < dim; r++) {
        for (size_t c = 0; c < dim; c++) {
            m(r, c) = row_major[r * dim + c];
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
    const auto &ev = solver.eigenvalues();
    return std::vector<double>(ev.data(), ev.data() + ev.size());
}

double trace_distance(const DensityMatrix &a, const DensityMatrix &b) {
    if (a.layout() != b.layout()) {
        throw UsageError("trace_distance: layout mismatch");
    }
    size_t dim = a.dim();
    if (dim == 2) {
        // Traceless Hermitian difference: eigenvalues are +/- its radius.
        Cx d00 = a(0, 0) - b(0, 0);
        Cx d11 = a(1, 1) - b(1, 1);
        Cx d01 = a(0, 1) - b(0, 1);
        double mean = 0.5 * (d00.real() + d11.real());
        double radius = std::hypot(0.5 * (d00.real() - d11.real()), std::abs(d01));
        return 0.5 * (std::abs(mean + radius) + std::abs(mean - radius));
    }
    // Fix the subtraction order so that d(a, b) and d(b, a) are bitwise equal.
    auto before = [](const Cx &x, const Cx &y) {
        return x.real() < y.real() || (x.real() == y.real() && x.imag() < y.imag());
    };
    bool swap = std::lexicographical_compare(
        b.entries().begin(), b.entries().end(), a.entries().begin(), a.entries().end(), before);
    const DensityMatrix &lhs = swap ? b : a;
    const DensityMatrix &rhs = swap ? a : b;
    std::vector<Cx> diff(dim * dim);
    for (size_t k = 0; k < diff.size(); k++) {
        diff[k] = lhs.entries()[k] - rhs.entries()[k];
    }
    double total = 0;
    for (double ev : hermitian_eigenvalues(diff, dim)) {
        total += std::abs(ev);
    }
    return 0.5 * total;
}

double fidelity_to_pure(const DensityMatrix &rho, const StateVector &psi) {
    if (rho.dim() != psi.dim()) {
        throw UsageError("fidelity_to_pure: dimension mismatch");
    }
    Cx acc = 0;
    for (size_t r = 0; r < rho.dim(); r++) {
        Cx row = 0;
        for (size_t c = 0; c < rho.dim(); c++) {
            row += rho(r, c) * psi[c];
        }
        acc += std::conj(psi[r]) * row;
    }
    return acc.real();
}

double binary_entropy(double lambda) {
    // Eigenvalues reach this function with rounding slop on the order of 1 ulp.
    constexpr double slack = 1e-12;
    if (!(lambda >= -slack && lambda <= 1 + slack)) {
        throw UsageError("binary_entropy: argument " + std::to_string(lambda) + " outside [0, 1]");
    }
    lambda = std::clamp(lambda, 0.0, 1.0);
    auto term = [](double x) { return x > 0 ? -x * std::log2(x) : 0.0; };
    return term(lambda) + term(1 - lambda);
}

double max_entry_diff(const DensityMatrix &a, const DensityMatrix &b) {
    if (a.layout() != b.layout()) {
        throw UsageError("max_entry_diff: layout mismatch");
    }
    double worst = 0;
    for (size_t k = 0; k < a.entries().size(); k++) {
        worst = std::max(worst, std::abs(a.entries()[k] - b.entries()[k]));
    }
    return worst;
}

}  // namespace qsrm
