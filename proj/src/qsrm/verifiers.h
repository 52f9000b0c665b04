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

#ifndef QSRM_VERIFIERS_H
#define QSRM_VERIFIERS_H

#include <string>
#include <string_view>
#include <vector>

#include "qsrm/linalg.h"
#include "qsrm/machine.h"

namespace qsrm {

/// Overlaps at or below this magnitude count as exactly zero.
inline constexpr double kZeroOverlapTol = 1e-12;
/// |p||q||r| at or above 1 - kBoundaryTol puts a point on the boundary where
/// the no-signalling bracket can vanish; such points are exempt from
/// violation assertions.
inline constexpr double kBoundaryTol = 1e-12;

enum class ConditionClass {
    OrthogonalStates,    // <psi2|psi1> = 0, <P2|P1> != 0
    OrthogonalPrograms,  // <psi2|psi1> != 0, <P2|P1> = 0
    Degenerate,          // both zero
    Violation,
};

std::string_view to_string(ConditionClass c);

/// Which self-replication existence regime (if any) the pair of overlaps falls in.
/// Throws ValidationError when |p| or |q| exceeds 1.
ConditionClass classify_existence_condition(Cx p, Cx q);

/// Programs, control chain and blank bookkeeping shared by both branches.
struct MachineSetup {
    OverlapRegistry registry;
    ProgramPair programs;
    ControlChain controls;
    size_t aux_blanks = 0;    // m
    size_t total_blanks = 0;  // n

    /// Declares programs with <P1|P2> = q and controls with <C1|C2> = r.
    /// Requires n >= 2(m + 1) so that one replication step fits.
    static MachineSetup make(Cx q, Cx r, size_t m, size_t n);

    Cx program_overlap() const;
    Cx control_overlap() const;
    /// Program and control vectors realized from the registry.
    Realization realize() const;
    MachineConfiguration branch(const StateVector &data, int which) const;
};

struct SuperpositionSpec {
    Cx alpha;
    Cx beta;

    /// Requires |alpha|^2 + |beta|^2 = 1 within 1e-12.
    static SuperpositionSpec make(Cx alpha, Cx beta);
};

enum class LinearityVerdict { Consistent, Contradiction };
std::string_view to_string(LinearityVerdict v);

struct LinearityReport {
    double replication_fidelity;
    double ideal_fidelity;
    double deviation;
    /// |alpha|^4 + |beta|^4.
    double expected_fidelity;
    LinearityVerdict verdict;
};

/// Replicates xi = alpha psi1 + beta psi2 by extending the basis-state rule
/// linearly, traces out everything except the parent's data register and
/// compares it with xi. psi1 and psi2 must be orthogonal (UsageError otherwise).
LinearityReport verify_linearity(
    const StateVector &psi1, const StateVector &psi2, const SuperpositionSpec &spec, const MachineSetup &setup);

/// (|0>_A branch1 + |1>_A branch2) / sqrt(2), with Alice's qubit as factor 0.
struct EntangledResource {
    StateVector psi1;
    StateVector psi2;
    MachineSetup setup;
    Realization realization;
    StateVector state;

    Cx p() const;  // <psi1|psi2>
    Cx q() const;  // <P1|P2>
    Cx r() const;  // <C1|C2>
};

EntangledResource build_entangled_resource(const StateVector &psi1, const StateVector &psi2, const MachineSetup &setup);

/// Alice's 2x2 state computed twice: by numeric partial trace and in closed form.
struct CrossCheckedMatrix {
    DensityMatrix numeric;
    DensityMatrix closed_form;
    /// Largest entrywise difference between the two.
    double residual;
};

/// 1/2 [I + |0><1| conj(p q) + |1><0| p q].
DensityMatrix alice_before_closed_form(Cx p, Cx q);
/// 1/2 [I + |0><1| conj(p^2 q^2 r) + |1><0| p^2 q^2 r].
DensityMatrix alice_after_closed_form(Cx p, Cx q, Cx r);

CrossCheckedMatrix reduced_alice_before(const EntangledResource &resource);
/// Applies one replication step to each of Bob's branches, rebuilds the joint
/// state explicitly and traces out Bob.
CrossCheckedMatrix reduced_alice_after(const EntangledResource &resource);

struct SignallingReport {
    CrossCheckedMatrix before;
    CrossCheckedMatrix after;
    double trace_distance;
    ConditionClass condition_class;
    /// |p||q||r| reached 1; the violation assertion does not apply.
    bool boundary;
};

SignallingReport verify_no_signalling(const EntangledResource &resource);
SignallingReport verify_no_signalling(const StateVector &psi1, const StateVector &psi2, const MachineSetup &setup);

struct EntanglementReport {
    double lambda_before;
    double lambda_after;
    double lambda_before_formula;  // 1/2 + |p||q|/2
    double lambda_after_formula;   // 1/2 + |p|^2|q|^2|r|/2
    double gap;
    double gap_formula;  // 1/2 |p||q| (1 - |p||q||r|)
    double entropy_before;
    double entropy_after;
};

EntanglementReport verify_entanglement_conservation(const EntangledResource &resource);
EntanglementReport verify_entanglement_conservation(
    const StateVector &psi1, const StateVector &psi2, const MachineSetup &setup);

struct ReplicationCase {
    std::string name;
    Cx alpha;
    Cx beta;
    /// Fidelity of the copy register with the input data state.
    double copy_fidelity;
    double expected_fidelity;
    /// Max amplitude deviation from the expected output vector (basis rule, or its linear extension).
    double amplitude_error;
};

struct OrthogonalReplicationRecord {
    size_t aux_blanks;
    Cx program_overlap;
    size_t dim;
    double unitarity_error;
    std::vector<ReplicationCase> cases;
    bool pass;
};

/// Explicit copier unitary for the orthogonal data states |0>, |1>.
///
/// Registers: data, copy slot, program, program copy slot, m auxiliary
/// blanks, control qutrit. Basis state |i> with program P_i is mapped to
/// |i>|i>|P_i>|P_i>|0^m>|C_i>; the program pair is realized with overlap
/// `program_overlap`. Throws ResourceError past the dense matrix cap.
OrthogonalReplicationRecord demo_orthogonal_replication(size_t m, Cx program_overlap = 0.5);

}  // namespace qsrm

#endif
