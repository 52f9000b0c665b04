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

#include <numbers>
#include <random>

#include "gtest/gtest.h"
#include "oracles.h"

using namespace qsrm;

namespace {

const double kS = std::numbers::sqrt2 / 2;

StateVector ket0() {
    return StateVector::basis(HilbertLayout{2}, 0);
}
StateVector ket1() {
    return StateVector::basis(HilbertLayout{2}, 1);
}

std::vector<Cx> to_vec(std::span<const Cx> s) {
    return {s.begin(), s.end()};
}

/// Random layout with total dimension <= max_dim and at least two factors.
std::vector<size_t> random_layout(std::mt19937_64 &rng, size_t max_dim) {
    std::uniform_int_distribution<size_t> pick(1, 4);
    while (true) {
        std::vector<size_t> dims;
        size_t total = 1;
        size_t count = 2 + rng() % 3;
        for (size_t k = 0; k < count; k++) {
            size_t d = pick(rng);
            dims.push_back(d);
            total *= d;
        }
        if (total <= max_dim && total >= 2) {
            return dims;
        }
    }
}

std::vector<size_t> random_keep(std::mt19937_64 &rng, size_t factors) {
    while (true) {
        std::vector<size_t> keep;
        for (size_t f = 0; f < factors; f++) {
            if (rng() & 1) {
                keep.push_back(f);
            }
        }
        if (!keep.empty() && keep.size() < factors) {
            return keep;
        }
    }
}

}  // namespace

TEST(layout, product_and_validation) {
    HilbertLayout l{2, 3, 4};
    ASSERT_EQ(l.total_dim(), 24u);
    ASSERT_EQ(l.concat(HilbertLayout{5}).total_dim(), 120u);
    std::vector<size_t> keep{0, 2};
    ASSERT_EQ(l.subset(keep), (HilbertLayout{2, 4}));
    ASSERT_THROW(HilbertLayout({2, 0}), UsageError);
    ASSERT_THROW(HilbertLayout(std::vector<size_t>{}), UsageError);
    ASSERT_THROW(HilbertLayout::qubits(21), ResourceError);
    ASSERT_NO_THROW(HilbertLayout::qubits(20));
}

TEST(cx, rejects_non_finite) {
    ASSERT_THROW(make_cx(std::nan(""), 0), ValidationError);
    ASSERT_THROW(make_cx(0, INFINITY), ValidationError);
    ASSERT_EQ(make_cx(1, 2), Cx(1, 2));
}

TEST(state_vector, normalization_enforced) {
    ASSERT_THROW(StateVector::qubit(1, 1), ValidationError);
    ASSERT_THROW(StateVector::from_amplitudes(HilbertLayout{2}, {1}), UsageError);
    ASSERT_NO_THROW(StateVector::qubit(0.6, Cx(0, 0.8)));

    KetBuilder b(HilbertLayout{2});
    b.add(1, ket0()).add(1, ket1());
    ASSERT_NEAR(b.norm(), std::sqrt(2.0), 1e-15);
    ASSERT_THROW(b.require_unit(), ValidationError);
    StateVector plus = b.normalized();
    ASSERT_NEAR(plus[0].real(), kS, 1e-15);
    ASSERT_THROW(KetBuilder(HilbertLayout{2}).normalized(), ValidationError);
}

TEST(tensor, basis_bookkeeping) {
    StateVector v = tensor(ket0(), ket1());
    ASSERT_EQ(v.layout(), (HilbertLayout{2, 2}));
    for (size_t k = 0; k < 4; k++) {
        ASSERT_EQ(v[k], k == 1 ? Cx(1) : Cx(0));
    }
    StateVector psi = StateVector::qubit(0.6, 0.8);
    StateVector w = tensor(psi, ket0());
    ASSERT_EQ(to_vec(w.amplitudes()), (std::vector<Cx>{0.6, 0, 0.8, 0}));
}

TEST(tensor, hadamard_pair_matches_loop_oracle) {
    StateVector h = StateVector::qubit(kS, kS);
    StateVector v = tensor(h, h);
    auto expected = oracle::tensor(to_vec(h.amplitudes()), to_vec(h.amplitudes()));
    for (size_t k = 0; k < 4; k++) {
        ASSERT_NEAR(std::abs(v[k] - expected[k]), 0, 1e-15);
        ASSERT_NEAR(v[k].real(), 0.5, 1e-15);
    }
}

TEST(tensor, unit_vectors_stay_unit_and_cap_applies) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; trial++) {
        auto u = StateVector::from_amplitudes(HilbertLayout{3}, oracle::random_unit_vector(rng, 3));
        auto v = StateVector::from_amplitudes(HilbertLayout{2, 2}, oracle::random_unit_vector(rng, 4));
        ASSERT_NEAR(tensor(u, v).norm(), 1, 1e-12);
    }
    StateVector big = StateVector::basis(HilbertLayout::qubits(20), 0);
    ASSERT_THROW(tensor(big, ket0()), ResourceError);
}

TEST(inner_product, examples) {
    ASSERT_EQ(inner_product(ket0(), ket1()), Cx(0));
    // psi1 = a|0> + b|1>, psi2 = c|0> + d e^{i theta}|1>: <psi1|psi2> = ac + bd e^{i theta}.
    double a = 0.6, b = 0.8, c = 0.28, d = 0.96, theta = 1.1;
    auto psi1 = StateVector::qubit(a, b);
    auto psi2 = StateVector::qubit(c, std::polar(d, theta));
    ASSERT_NEAR(std::abs(inner_product(psi1, psi2) - (a * c + b * d * std::polar(1.0, theta))), 0, 1e-15);

    auto u = StateVector::qubit(kS, kS);
    auto v = StateVector::qubit(kS, std::polar(kS, std::numbers::pi / 2));
    Cx z = inner_product(u, v);
    ASSERT_NEAR(z.real(), 0.5, 1e-15);
    ASSERT_NEAR(z.imag(), 0.5, 1e-15);
    ASSERT_NEAR(std::abs(z), 0.70710678118654752, 1e-15);
    // Conjugate-linear in the first argument.
    ASSERT_NEAR(std::abs(inner_product(v, u) - std::conj(z)), 0, 1e-15);

    ASSERT_THROW(inner_product(ket0(), tensor(ket0(), ket0())), UsageError);
}

TEST(outer_to_density, examples) {
    DensityMatrix r0 = outer_to_density(ket0());
    ASSERT_EQ(r0(0, 0), Cx(1));
    ASSERT_EQ(r0(1, 1), Cx(0));
    DensityMatrix plus = outer_to_density(StateVector::qubit(kS, kS));
    for (Cx z : plus.entries()) {
        ASSERT_NEAR(z.real(), 0.5, 1e-15);
    }
    double c = 0.6, d = 0.8, theta = 2.0;
    auto psi2 = StateVector::qubit(c, std::polar(d, theta));
    DensityMatrix rho = outer_to_density(psi2);
    auto expected = oracle::outer(to_vec(psi2.amplitudes()));
    ASSERT_NEAR(std::abs(rho(0, 1) - c * d * std::polar(1.0, -theta)), 0, 1e-15);
    ASSERT_NEAR(std::abs(rho(1, 0) - c * d * std::polar(1.0, theta)), 0, 1e-15);
    for (size_t k = 0; k < 4; k++) {
        ASSERT_NEAR(std::abs(rho.entries()[k] - expected[k]), 0, 1e-15);
    }
}

TEST(density_matrix, validation) {
    ASSERT_THROW(DensityMatrix::from_entries(HilbertLayout{2}, {1, 0.2, 0.3, 0}), ValidationError);  // not Hermitian
    ASSERT_THROW(DensityMatrix::from_entries(HilbertLayout{2}, {0.6, 0, 0, 0.6}), ValidationError);  // trace
    ASSERT_THROW(DensityMatrix::from_entries(HilbertLayout{2}, {0.5, 0.9, 0.9, 0.5}), ValidationError);  // not PSD
    ASSERT_THROW(DensityMatrix::from_entries(HilbertLayout{2}, {1, 0, 0}), UsageError);
    ASSERT_NO_THROW(DensityMatrix::from_entries(HilbertLayout{2}, {0.5, 0.5, 0.5, 0.5}));
    ASSERT_THROW(density_2x2(0.5, 0.6), ValidationError);
}

TEST(partial_trace, bell_and_product) {
    KetBuilder bell(HilbertLayout{2, 2});
    bell.add(kS, tensor(ket0(), ket0())).add(kS, tensor(ket1(), ket1()));
    std::vector<size_t> first{0};
    DensityMatrix reduced = partial_trace(outer_to_density(bell.require_unit()), first);
    ASSERT_NEAR(reduced(0, 0).real(), 0.5, 1e-15);
    ASSERT_NEAR(reduced(1, 1).real(), 0.5, 1e-15);
    ASSERT_NEAR(std::abs(reduced(0, 1)), 0, 1e-15);

    std::mt19937_64 rng(11);
    auto ra = oracle::random_density(rng, 2);
    auto rb = oracle::random_density(rng, 3);
    std::vector<Cx> prod(36);
    for (size_t i = 0; i < 6; i++) {
        for (size_t j = 0; j < 6; j++) {
            prod[i * 6 + j] = ra[(i / 3) * 2 + j / 3] * rb[(i % 3) * 3 + j % 3];
        }
    }
    auto rho = DensityMatrix::from_entries(HilbertLayout{2, 3}, prod);
    DensityMatrix a = partial_trace(rho, first);
    for (size_t k = 0; k < 4; k++) {
        ASSERT_NEAR(std::abs(a.entries()[k] - ra[k]), 0, 1e-10);
    }
}

TEST(partial_trace, rejects_bad_keep_sets) {
    auto rho = outer_to_density(tensor(ket0(), ket1()));
    std::vector<size_t> none, all{0, 1}, unsorted{1, 0}, out_of_range{2};
    ASSERT_THROW(partial_trace(rho, none), UsageError);
    ASSERT_THROW(partial_trace(rho, all), UsageError);
    ASSERT_THROW(partial_trace(rho, out_of_range), UsageError);
    std::vector<size_t> dup{0, 0};
    auto three = outer_to_density(tensor(tensor(ket0(), ket1()), ket0()));
    ASSERT_THROW(partial_trace(three, dup), UsageError);
    ASSERT_THROW(partial_trace(three, unsorted), UsageError);
}

TEST(partial_trace, matches_index_summation_oracle) {
    std::mt19937_64 rng(2026);
    for (int trial = 0; trial < 200; trial++) {
        auto dims = random_layout(rng, 64);
        HilbertLayout layout(dims);
        auto keep = random_keep(rng, dims.size());
        std::vector<Cx> rho_entries;
        if (trial % 2 == 0) {
            auto psi = StateVector::from_amplitudes(layout, oracle::random_unit_vector(rng, layout.total_dim()));
            rho_entries = oracle::outer(to_vec(psi.amplitudes()));
            // Pure-state route must agree as well.
            auto via_pure = partial_trace(psi, keep);
            auto expected = oracle::partial_trace(rho_entries, dims, keep);
            for (size_t k = 0; k < expected.size(); k++) {
                ASSERT_NEAR(std::abs(via_pure.entries()[k] - expected[k]), 0, 1e-12);
            }
        } else {
            rho_entries = oracle::random_density(rng, layout.total_dim());
        }
        auto rho = DensityMatrix::from_entries(layout, rho_entries);
        auto got = partial_trace(rho, keep);
        auto expected = oracle::partial_trace(rho_entries, dims, keep);
        ASSERT_EQ(got.layout(), layout.subset(keep));
        ASSERT_NEAR(got.trace(), 1, 1e-9);
        for (size_t k = 0; k < expected.size(); k++) {
            ASSERT_NEAR(std::abs(got.entries()[k] - expected[k]), 0, 1e-12) << "trial " << trial;
        }
    }
}

TEST(partial_trace, schmidt_symmetry) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 100; trial++) {
        size_t da = 2 + rng() % 3;
        size_t db = 2 + rng() % 4;
        HilbertLayout layout{da, db};
        auto psi = StateVector::from_amplitudes(layout, oracle::random_unit_vector(rng, da * db));
        std::vector<size_t> a{0}, b{1};
        auto ra = partial_trace(psi, a);
        auto rb = partial_trace(psi, b);
        auto ea = hermitian_eigenvalues(ra.entries(), da);
        auto eb = hermitian_eigenvalues(rb.entries(), db);
        // The larger side carries extra zero eigenvalues.
        std::reverse(ea.begin(), ea.end());
        std::reverse(eb.begin(), eb.end());
        for (size_t k = 0; k < std::max(da, db); k++) {
            double x = k < da ? ea[k] : 0;
            double y = k < db ? eb[k] : 0;
            ASSERT_NEAR(x, y, 1e-9);
        }
    }
}

TEST(eigenvalues_2x2, examples) {
    auto half = density_2x2(0.5, 0);
    EigenPair e = eigenvalues_2x2(half);
    ASSERT_NEAR(e.lambda_plus, 0.5, 1e-15);
    ASSERT_NEAR(e.lambda_minus, 0.5, 1e-15);

    // Off-diagonal |p||q|/2 gives 1/2 + |p||q|/2.
    double p = 0.8, q = 0.3;
    ASSERT_NEAR(eigenvalues_2x2(density_2x2(0.5, p * q / 2)).lambda_plus, 0.5 + p * q / 2, 1e-15);

    auto rho = density_2x2(0.5, std::polar(0.125, 0.7));
    auto [hi, lo] = oracle::eig2_by_bisection(rho(0, 0), rho(0, 1), rho(1, 1));
    ASSERT_NEAR(hi, 0.625, 1e-12);
    ASSERT_NEAR(lo, 0.375, 1e-12);
    e = eigenvalues_2x2(rho);
    ASSERT_NEAR(e.lambda_plus, hi, 1e-12);
    ASSERT_NEAR(e.lambda_minus, lo, 1e-12);

    ASSERT_THROW(eigenvalues_2x2(outer_to_density(tensor(ket0(), ket0()))), UsageError);
}

TEST(eigenvalues_2x2, matches_characteristic_polynomial_on_random_matrices) {
    std::mt19937_64 rng(1000);
    std::uniform_real_distribution<double> unit(0, 1);
    for (int trial = 0; trial < 1000; trial++) {
        double p00 = unit(rng);
        double bound = std::sqrt(p00 * (1 - p00));
        Cx off = std::polar(bound * unit(rng), 2 * std::numbers::pi * unit(rng));
        auto rho = density_2x2(p00, off);
        EigenPair e = eigenvalues_2x2(rho);
        auto [hi, lo] = oracle::eig2_by_bisection(rho(0, 0), rho(0, 1), rho(1, 1));
        ASSERT_NEAR(e.lambda_plus, hi, 1e-12);
        ASSERT_NEAR(e.lambda_minus, lo, 1e-12);
        ASSERT_GE(e.lambda_plus, e.lambda_minus);
        ASSERT_NEAR(e.lambda_plus + e.lambda_minus, 1, 1e-9);
    }
}

TEST(hermitian_eigenvalues, matches_jacobi_oracle) {
    std::mt19937_64 rng(3);
    for (size_t dim : {2u, 3u, 5u, 8u}) {
        auto rho = oracle::random_density(rng, dim);
        auto got = hermitian_eigenvalues(rho, dim);
        auto expected = oracle::hermitian_eigenvalues(rho, dim);
        for (size_t k = 0; k < dim; k++) {
            ASSERT_NEAR(got[k], expected[k], 1e-12);
        }
    }
}

TEST(trace_distance, examples) {
    auto rho = density_2x2(0.3, Cx(0.1, 0.2));
    ASSERT_EQ(trace_distance(rho, rho), 0);
    ASSERT_NEAR(trace_distance(outer_to_density(ket0()), outer_to_density(ket1())), 1, 1e-15);

    // Alice's matrices before / after one replication step at p = q = r = 0.5.
    double p = 0.5, q = 0.5, r = 0.5;
    std::vector<Cx> before{0.5, p * q / 2, p * q / 2, 0.5};
    std::vector<Cx> after{0.5, p * p * q * q * r / 2, p * p * q * q * r / 2, 0.5};
    double expected = oracle::trace_distance(before, after, 2);
    ASSERT_NEAR(expected, 0.109375, 1e-14);
    auto db = DensityMatrix::from_entries(HilbertLayout{2}, before);
    auto da = DensityMatrix::from_entries(HilbertLayout{2}, after);
    ASSERT_NEAR(trace_distance(db, da), expected, 1e-14);

    ASSERT_THROW(trace_distance(rho, outer_to_density(tensor(ket0(), ket0()))), UsageError);
}

TEST(trace_distance, metric_axioms) {
    std::mt19937_64 rng(99);
    for (size_t dim : {2u, 3u, 4u}) {
        for (int trial = 0; trial < 60; trial++) {
            HilbertLayout layout{dim};
            auto a = DensityMatrix::from_entries(layout, oracle::random_density(rng, dim));
            auto b = DensityMatrix::from_entries(layout, oracle::random_density(rng, dim));
            auto c = DensityMatrix::from_entries(layout, oracle::random_density(rng, dim));
            double ab = trace_distance(a, b);
            ASSERT_EQ(ab, trace_distance(b, a));
            ASSERT_LE(trace_distance(a, c), ab + trace_distance(b, c) + 1e-9);
            ASSERT_GE(ab, 0);
            ASSERT_LE(ab, 1 + 1e-12);
            std::vector<Cx> ea(a.entries().begin(), a.entries().end());
            std::vector<Cx> eb(b.entries().begin(), b.entries().end());
            ASSERT_NEAR(ab, oracle::trace_distance(ea, eb, dim), 1e-10);
        }
    }
}

TEST(fidelity_to_pure, examples) {
    auto psi = StateVector::qubit(0.6, Cx(0, 0.8));
    ASSERT_NEAR(fidelity_to_pure(outer_to_density(psi), psi), 1, 1e-15);
    ASSERT_NEAR(fidelity_to_pure(density_2x2(0.5, 0), psi), 0.5, 1e-15);

    // Dephased mixture |alpha|^2 |0><0| + |beta|^2 |1><1| against alpha|0> + beta|1>.
    double alpha = 0.6, beta = 0.8;
    auto mixed = density_2x2(alpha * alpha, 0);
    double expected = std::pow(alpha, 4) + std::pow(beta, 4);
    ASSERT_NEAR(expected, 0.5392, 1e-15);
    ASSERT_NEAR(fidelity_to_pure(mixed, StateVector::qubit(alpha, beta)), expected, 1e-15);

    ASSERT_THROW(fidelity_to_pure(mixed, tensor(ket0(), ket0())), UsageError);
}

TEST(binary_entropy, examples) {
    ASSERT_NEAR(binary_entropy(0.5), 1.0, 1e-15);
    ASSERT_EQ(binary_entropy(1.0), 0.0);
    ASSERT_EQ(binary_entropy(0.0), 0.0);
    double expected = oracle::binary_entropy_nats_route(0.67678);
    ASSERT_NEAR(expected, 0.90784877726, 1e-10);
    ASSERT_NEAR(binary_entropy(0.67678), expected, 1e-14);
    ASSERT_THROW(binary_entropy(1.1), UsageError);
    ASSERT_THROW(binary_entropy(-0.01), UsageError);
    ASSERT_THROW(binary_entropy(std::nan("")), UsageError);
}

TEST(operator_, unitarity_and_apply) {
    Operator x(2);
    x(0, 1) = 1;
    x(1, 0) = 1;
    ASSERT_EQ(x.unitarity_error(), 0);
    ASSERT_EQ(x.apply(ket0())[1], Cx(1));
    Operator bad(2);
    bad(0, 0) = 2;
    ASSERT_GT(bad.unitarity_error(), 1);
    ASSERT_THROW(Operator(kMaxMatrixDim + 1), ResourceError);
}
