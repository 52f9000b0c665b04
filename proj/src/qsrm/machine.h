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

#ifndef QSRM_MACHINE_H
#define QSRM_MACHINE_H

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qsrm/linalg.h"

namespace qsrm {

enum class QubitKind { Real, Phased };

/// A qubit in one of the two parametrized forms
///   Real:   a|0> + b|1>                a^2 + b^2 = 1, a > 0
///   Phased: c|0> + d e^{i theta}|1>    c^2 + d^2 = 1, c > 0, 0 < theta < pi
class ParamQubit {
   public:
    static ParamQubit real(double a, double b);
    static ParamQubit phased(double c, double d, double theta);
    /// `components` is (a, b) for Real and (c, d, theta) for Phased.
    static ParamQubit make(QubitKind kind, std::span<const double> components);

    QubitKind kind() const {
        return kind_;
    }
    double amp0() const {
        return amp0_;
    }
    double amp1_magnitude() const {
        return amp1_;
    }
    /// Relative phase of the |1> amplitude; 0 for Real.
    double theta() const {
        return theta_;
    }
    StateVector state() const;

   private:
    ParamQubit(QubitKind kind, double amp0, double amp1, double theta)
        : kind_(kind), amp0_(amp0), amp1_(amp1), theta_(theta) {
    }

    QubitKind kind_;
    double amp0_;
    double amp1_;
    double theta_;
};

/// <u|v> of the realized qubits.
Cx state_overlap(const ParamQubit &u, const ParamQubit &v);

/// Pairwise inner products between abstract, labeled factors (programs, control states).
///
/// overlap(i, j) is <i|j>. The diagonal is fixed at 1 and undeclared pairs are 0.
class OverlapRegistry {
   public:
    void add_label(const std::string &label);
    bool has_label(const std::string &label) const;
    const std::vector<std::string> &labels() const {
        return labels_;
    }

    /// Declares <i|j> = value (and so <j|i> = conj(value)). Requires |value| <= 1.
    void set_overlap(const std::string &i, const std::string &j, Cx value);
    Cx overlap(const std::string &i, const std::string &j) const;

    /// Row-major Gram matrix G[a][b] = <labels[a]|labels[b]>.
    std::vector<Cx> gram(std::span<const std::string> labels) const;

   private:
    void require_label(const std::string &label) const;

    std::vector<std::string> labels_;
    std::map<std::pair<std::string, std::string>, Cx> overlaps_;
};

struct ProgramPair {
    std::string first;
    std::string second;
};

struct ControlChain {
    std::string initial;
    std::string branch1;
    std::string branch2;
};

/// Registers two program states with <first|second> = q.
ProgramPair declare_program_pair(
    Cx q, OverlapRegistry &registry, const std::string &first = "P1", const std::string &second = "P2");

/// Registers C, C1, C2 with <C1|C2> = r. Overlaps of C with C1 and C2 stay at 0 unless set later.
ControlChain declare_control_chain(
    Cx r,
    OverlapRegistry &registry,
    const std::string &initial = "C",
    const std::string &branch1 = "C1",
    const std::string &branch2 = "C2");

using Realization = std::map<std::string, StateVector>;

/// Concrete unit vectors reproducing every declared overlap among `labels`.
///
/// Cholesky embedding: G = L L^dagger and vector k has components conj(L[k][j]),
/// so the ambient dimension equals labels.size() and leading entries are real
/// and non-negative. Throws ValidationError for a non-PSD Gram matrix.
Realization gram_realize(std::span<const std::string> labels, const OverlapRegistry &registry);

/// One machine configuration: data, a blank copy slot, the program, m auxiliary
/// blanks and the control unit, followed by a reservoir of blanks.
struct MachineConfiguration {
    StateVector data;
    std::string program;
    size_t aux_blanks = 0;
    std::string control;
    /// Label the control advances to on the next replication step.
    std::string control_successor;
    size_t reservoir = 0;
    size_t depth = 0;

    /// Parent configuration drawing from n blanks in total: reservoir = n - (m + 1).
    static MachineConfiguration initial(
        StateVector data,
        std::string program,
        size_t aux_blanks,
        std::string control,
        std::string control_successor,
        size_t total_blanks);

    size_t blanks_per_step() const {
        return aux_blanks + 1;
    }
};

struct ReplicationOutput {
    StateVector parent_data;
    std::string parent_program;
    MachineConfiguration child;
    size_t depth;
};

/// Rewrites a configuration by one application of the replication rule
///   L[psi 0 P 0^m C] 0^{res} = psi P L[psi 0 P 0^m C'] 0^{res - (m+1)}.
/// Purely formal: L is never built as a matrix.
ReplicationOutput apply_replication_step(const MachineConfiguration &config);

/// <out1|out2> from the factor overlaps, with the child's image under L taking the
/// overlap of the children themselves (L is unitary). Blanks contribute 1.
Cx branch_overlap_after(const ReplicationOutput &out1, const ReplicationOutput &out2, const OverlapRegistry &registry);

/// Blank register |0> in a qubit.
StateVector blank_state();

/// data (x) blank (x) program (x) blank^m (x) control (x) blank^reservoir.
StateVector realize_configuration(const MachineConfiguration &config, const Realization &realization);

/// parent data (x) parent program (x) realize_configuration(child).
///
/// The child's image under L is represented by the child configuration itself.
/// Any unitary acting on that block gives the same overlaps, so this choice is
/// exact for every quantity that depends on inner products or on other parties'
/// reduced states.
StateVector realize_output(const ReplicationOutput &out, const Realization &realization);

}  // namespace qsrm

#endif
