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

#include "qsrm/verifiers.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace qsrm {

namespace {

constexpr size_t kAlice[] = {0};

void require_magnitude_at_most_one(Cx z, const char *name) {
    make_cx(z.real(), z.imag());
    if (std::abs(z) > 1 + kZeroOverlapTol) {
        throw ValidationError(std::string("overlap ") + name + " has magnitude " + std::to_string(std::abs(z)) + " > 1");
    }
}

void require_reservoir(size_t m, size_t n) {
    if (n < 2 * (m + 1)) {
        throw ResourceError(
            "one replication step needs n >= 2(m + 1) = " + std::to_string(2 * (m + 1)) + " blanks, got n = " +
            std::to_string(n));
    }
}

void require_qubit_pair(const StateVector &psi1, const StateVector &psi2) {
    if (psi1.layout() != psi2.layout()) {
        throw UsageError("data states must share a layout");
    }
}

StateVector joint_with_alice(const StateVector &branch1, const StateVector &branch2) {
    const double s = std::numbers::sqrt2 / 2;
    KetBuilder joint(HilbertLayout{2}.concat(branch1.layout()));
    joint.add(s, tensor(StateVector::basis(HilbertLayout{2}, 0), branch1));
    joint.add(s, tensor(StateVector::basis(HilbertLayout{2}, 1), branch2));
    return joint.require_unit();
}

void require_resource_shape(const EntangledResource &resource) {
    const auto &dims = resource.state.layout().factor_dims();
    if (dims.size() < 2 || dims[0] != 2) {
        throw UsageError("entangled resource must have Alice's qubit as factor 0 followed by Bob's registers");
    }
}

}  // namespace

std::string_view to_string(ConditionClass c) {
    switch (c) {
        case ConditionClass::OrthogonalStates:
            return "ORTHOGONAL_STATES";
        case ConditionClass::OrthogonalPrograms:
            return "ORTHOGONAL_PROGRAMS";
        case ConditionClass::Degenerate:
            return "DEGENERATE";
        case ConditionClass::Violation:
            return "VIOLATION";
    }
    return "?";
}

std::string_view to_string(LinearityVerdict v) {
    return v == LinearityVerdict::Consistent ? "CONSISTENT" : "CONTRADICTION";
}

ConditionClass classify_existence_condition(Cx p, Cx q) {
    require_magnitude_at_most_one(p, "p");
    require_magnitude_at_most_one(q, "q");
    bool p_zero = std::abs(p) <= kZeroOverlapTol;
    bool q_zero = std::abs(q) <= kZeroOverlapTol;
    if (p_zero && q_zero) {
        return ConditionClass::Degenerate;
    }
    if (p_zero) {
        return ConditionClass::OrthogonalStates;
    }
    if (q_zero) {
        return ConditionClass::OrthogonalPrograms;
    }
    return ConditionClass::Violation;
}

MachineSetup MachineSetup::make(Cx q, Cx r, size_t m, size_t n) {
    require_reservoir(m, n);
    MachineSetup setup;
    setup.programs = declare_program_pair(q, setup.registry);
    setup.controls = declare_control_chain(r, setup.registry);
    setup.aux_blanks = m;
    setup.total_blanks = n;
    return setup;
}

Cx MachineSetup::program_overlap() const {
    return registry.overlap(programs.first, programs.second);
}

Cx MachineSetup::control_overlap() const {
    return registry.overlap(controls.branch1, controls.branch2);
}

Realization MachineSetup::realize() const {
    std::array<std::string, 2> program_labels{programs.first, programs.second};
    std::array<std::string, 3> control_labels{controls.initial, controls.branch1, controls.branch2};
    Realization out = gram_realize(program_labels, registry);
    out.merge(gram_realize(control_labels, registry));
    return out;
}

MachineConfiguration MachineSetup::branch(const StateVector &data, int which) const {
    if (which != 1 && which != 2) {
        throw UsageError("MachineSetup::branch: branch must be 1 or 2");
    }
    return MachineConfiguration::initial(
        data,
        which == 1 ? programs.first : programs.second,
        aux_blanks,
        controls.initial,
        which == 1 ? controls.branch1 : controls.branch2,
        total_blanks);
}

SuperpositionSpec SuperpositionSpec::make(Cx alpha, Cx beta) {
    make_cx(alpha.real(), alpha.imag());
    make_cx(beta.real(), beta.imag());
    double total = std::norm(alpha) + std::norm(beta);
    if (std::abs(total - 1) > 1e-12) {
        throw ValidationError("SuperpositionSpec: |alpha|^2 + |beta|^2 = " + std::to_string(total) + ", expected 1");
    }
    return {alpha, beta};
}

LinearityReport verify_linearity(
    const StateVector &psi1, const StateVector &psi2, const SuperpositionSpec &spec, const MachineSetup &setup) {
    require_qubit_pair(psi1, psi2);
    if (std::abs(inner_product(psi1, psi2)) >= kZeroOverlapTol) {
        throw UsageError("verify_linearity: psi1 and psi2 must be orthogonal");
    }
    require_reservoir(setup.aux_blanks, setup.total_blanks);

    Realization realization = setup.realize();
    StateVector out1 = realize_output(apply_replication_step(setup.branch(psi1, 1)), realization);
    StateVector out2 = realize_output(apply_replication_step(setup.branch(psi2, 2)), realization);

    KetBuilder linear(out1.layout());
    linear.add(spec.alpha, out1).add(spec.beta, out2);
    DensityMatrix parent_data = partial_trace(linear.require_unit(), kAlice);

    KetBuilder xi(psi1.layout());
    xi.add(spec.alpha, psi1).add(spec.beta, psi2);

    LinearityReport report{};
    report.replication_fidelity = fidelity_to_pure(parent_data, xi.require_unit());
    report.ideal_fidelity = 1.0;
    report.deviation = report.ideal_fidelity - report.replication_fidelity;
    report.expected_fidelity = std::pow(std::norm(spec.alpha), 2) + std::pow(std::norm(spec.beta), 2);
    report.verdict = report.deviation > kInvariantTol ? LinearityVerdict::Contradiction : LinearityVerdict::Consistent;
    return report;
}

Cx EntangledResource::p() const {
    return inner_product(psi1, psi2);
}

Cx EntangledResource::q() const {
    return setup.program_overlap();
}

Cx EntangledResource::r() const {
    return setup.control_overlap();
}

EntangledResource build_entangled_resource(const StateVector &psi1, const StateVector &psi2, const MachineSetup &setup) {
    require_qubit_pair(psi1, psi2);
    require_reservoir(setup.aux_blanks, setup.total_blanks);
    Realization realization = setup.realize();
    StateVector b1 = realize_configuration(setup.branch(psi1, 1), realization);
    StateVector b2 = realize_configuration(setup.branch(psi2, 2), realization);
    StateVector joint = joint_with_alice(b1, b2);
    return EntangledResource{psi1, psi2, setup, std::move(realization), std::move(joint)};
}

DensityMatrix alice_before_closed_form(Cx p, Cx q) {
    return density_2x2(0.5, 0.5 * std::conj(p * q));
}

DensityMatrix alice_after_closed_form(Cx p, Cx q, Cx r) {
    return density_2x2(0.5, 0.5 * std::conj(p * p * q * q * r));
}

CrossCheckedMatrix reduced_alice_before(const EntangledResource &resource) {
    require_resource_shape(resource);
    DensityMatrix numeric = partial_trace(resource.state, kAlice);
    DensityMatrix closed = alice_before_closed_form(resource.p(), resource.q());
    double residual = max_entry_diff(numeric, closed);
    return {std::move(numeric), std::move(closed), residual};
}

CrossCheckedMatrix reduced_alice_after(const EntangledResource &resource) {
    require_resource_shape(resource);
    const MachineSetup &setup = resource.setup;
    StateVector out1 = realize_output(apply_replication_step(setup.branch(resource.psi1, 1)), resource.realization);
    StateVector out2 = realize_output(apply_replication_step(setup.branch(resource.psi2, 2)), resource.realization);
    DensityMatrix numeric = partial_trace(joint_with_alice(out1, out2), kAlice);
    DensityMatrix closed = alice_after_closed_form(resource.p(), resource.q(), resource.r());
    double residual = max_entry_diff(numeric, closed);
    return {std::move(numeric), std::move(closed), residual};
}

SignallingReport verify_no_signalling(const EntangledResource &resource) {
    CrossCheckedMatrix before = reduced_alice_before(resource);
    CrossCheckedMatrix after = reduced_alice_after(resource);
    double distance = trace_distance(before.numeric, after.numeric);
    Cx p = resource.p();
    Cx q = resource.q();
    Cx r = resource.r();
    bool boundary = std::abs(p) * std::abs(q) * std::abs(r) >= 1 - kBoundaryTol;
    return {std::move(before), std::move(after), distance, classify_existence_condition(p, q), boundary};
}

SignallingReport verify_no_signalling(const StateVector &psi1, const StateVector &psi2, const MachineSetup &setup) {
    return verify_no_signalling(build_entangled_resource(psi1, psi2, setup));
}

EntanglementReport verify_entanglement_conservation(const EntangledResource &resource) {
    EigenPair before = eigenvalues_2x2(reduced_alice_before(resource).numeric);
    EigenPair after = eigenvalues_2x2(reduced_alice_after(resource).numeric);
    double pq = std::abs(resource.p()) * std::abs(resource.q());
    double r = std::abs(resource.r());

    EntanglementReport report{};
    report.lambda_before = before.lambda_plus;
    report.lambda_after = after.lambda_plus;
    report.lambda_before_formula = 0.5 + pq / 2;
    report.lambda_after_formula = 0.5 + pq * pq * r / 2;
    report.gap = report.lambda_before - report.lambda_after;
    report.gap_formula = 0.5 * pq * (1 - pq * r);
    report.entropy_before = binary_entropy(report.lambda_before);
    report.entropy_after = binary_entropy(report.lambda_after);
    return report;
}

EntanglementReport verify_entanglement_conservation(
    const StateVector &psi1, const StateVector &psi2, const MachineSetup &setup) {
    return verify_entanglement_conservation(build_entangled_resource(psi1, psi2, setup));
}

OrthogonalReplicationRecord demo_orthogonal_replication(size_t m, Cx program_overlap) {
    constexpr size_t kFixedDim = 2 * 2 * 2 * 2 * 3;
    if (m > 20 || (kFixedDim << m) > kMaxMatrixDim) {
        throw ResourceError(
            "demo_orthogonal_replication: m = " + std::to_string(m) + " exceeds the dense operator cap of " +
            std::to_string(kMaxMatrixDim));
    }
    OverlapRegistry registry;
    ProgramPair programs = declare_program_pair(program_overlap, registry, "P0", "P1");
    std::array<std::string, 2> labels{programs.first, programs.second};
    Realization realized = gram_realize(labels, registry);
    const std::array<StateVector, 2> prog{realized.at("P0"), realized.at("P1")};

    std::vector<size_t> dims{2, 2, 2, 2};
    dims.insert(dims.end(), m, 2);
    dims.push_back(3);
    HilbertLayout layout(dims);
    const size_t dim = layout.total_dim();
    const size_t aux_dim = size_t{1} << m;

    // Column k of R_i is |P_i> for k = 0 and its orthogonal complement for k = 1.
    auto prepare = [&](size_t i, size_t row, size_t col) -> Cx {
        const StateVector &v = prog[i];
        if (col == 0) {
            return v[row];
        }
        return row == 0 ? -std::conj(v[1]) : std::conj(v[0]);
    };
    auto advance_control = [](size_t i, size_t c) -> size_t {
        if (c == 0) {
            return 1 + i;
        }
        return c == 1 + i ? 0 : c;
    };
    // Composite index for digits (data, copy, program, program copy, aux, control).
    auto index = [&](size_t d, size_t s, size_t p, size_t pc, size_t aux, size_t c) {
        return ((((d * 2 + s) * 2 + p) * 2 + pc) * aux_dim + aux) * 3 + c;
    };

    Operator copier(dim);
    for (size_t d = 0; d < 2; d++) {
        for (size_t s = 0; s < 2; s++) {
            for (size_t p = 0; p < 2; p++) {
                for (size_t pc = 0; pc < 2; pc++) {
                    for (size_t aux = 0; aux < aux_dim; aux++) {
                        for (size_t c = 0; c < 3; c++) {
                            size_t col = index(d, s, p, pc, aux, c);
                            for (size_t pc_out = 0; pc_out < 2; pc_out++) {
                                copier(index(d, s ^ d, p, pc_out, aux, advance_control(d, c)), col) =
                                    prepare(d, pc_out, pc);
                            }
                        }
                    }
                }
            }
        }
    }

    HilbertLayout qubit{2};
    HilbertLayout qutrit{3};
    auto configuration = [&](size_t i, bool replicated) {
        std::vector<StateVector> factors{
            StateVector::basis(qubit, i),
            StateVector::basis(qubit, replicated ? i : 0),
            prog[i],
            replicated ? prog[i] : blank_state(),
        };
        factors.insert(factors.end(), m, blank_state());
        factors.push_back(StateVector::basis(qutrit, replicated ? 1 + i : 0));
        return tensor_all(factors);
    };

    OrthogonalReplicationRecord record{};
    record.aux_blanks = m;
    record.program_overlap = program_overlap;
    record.dim = dim;
    record.unitarity_error = copier.unitarity_error();

    const double s = std::numbers::sqrt2 / 2;
    const std::array<ReplicationCase, 3> inputs{
        ReplicationCase{"basis-0", 1.0, 0.0, 0, 0, 0},
        ReplicationCase{"basis-1", 0.0, 1.0, 0, 0, 0},
        ReplicationCase{"balanced", s, s, 0, 0, 0},
    };
    constexpr size_t kCopyRegister[] = {1};
    record.pass = record.unitarity_error <= 1e-12;
    for (ReplicationCase c : inputs) {
        KetBuilder input(layout);
        input.add(c.alpha, configuration(0, false)).add(c.beta, configuration(1, false));
        KetBuilder expected(layout);
        expected.add(c.alpha, configuration(0, true)).add(c.beta, configuration(1, true));
        StateVector output = copier.apply(input.require_unit());

        c.amplitude_error = 0;
        for (size_t k = 0; k < dim; k++) {
            c.amplitude_error = std::max(c.amplitude_error, std::abs(output[k] - expected.amplitudes()[k]));
        }
        StateVector xi = StateVector::qubit(c.alpha, c.beta);
        c.copy_fidelity = fidelity_to_pure(partial_trace(output, kCopyRegister), xi);
        c.expected_fidelity = std::pow(std::norm(c.alpha), 2) + std::pow(std::norm(c.beta), 2);
        record.pass = record.pass && c.amplitude_error <= 1e-12 && std::abs(c.copy_fidelity - c.expected_fidelity) <= 1e-12;
        record.cases.push_back(std::move(c));
    }
    return record;
}

}  // namespace qsrm
