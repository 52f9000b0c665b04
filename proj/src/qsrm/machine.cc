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

#include "qsrm/machine.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace qsrm {

namespace {

constexpr double kParamTol = 1e-12;
constexpr double kOverlapSlack = 1e-12;
// Below this squared pivot a Gram column is treated as linearly dependent.
constexpr double kPivotFloor = 1e-14;
constexpr double kDependentTol = 1e-7;

std::pair<std::string, std::string> ordered_key(const std::string &i, const std::string &j) {
    return i < j ? std::make_pair(i, j) : std::make_pair(j, i);
}

void check_unit_pair(double x, double y, const char *relation) {
    if (!std::isfinite(x) || !std::isfinite(y)) {
        throw ValidationError(std::string("ParamQubit: non-finite component in ") + relation);
    }
    if (std::abs(x * x + y * y - 1.0) > kParamTol) {
        std::stringstream ss;
        ss.precision(17);
        ss << "ParamQubit: " << relation << " violated (" << x << "^2 + " << y << "^2 = " << x * x + y * y << ")";
        throw ValidationError(ss.str());
    }
}

StateVector repeat_blank_into(StateVector acc, size_t count) {
    StateVector b = blank_state();
    for (size_t k = 0; k < count; k++) {
        acc = tensor(acc, b);
    }
    return acc;
}

const StateVector &lookup(const Realization &realization, const std::string &label) {
    auto it = realization.find(label);
    if (it == realization.end()) {
        throw UsageError("no realized vector for label '" + label + "'");
    }
    return it->second;
}

}  // namespace

ParamQubit ParamQubit::real(double a, double b) {
    check_unit_pair(a, b, "a^2 + b^2 = 1");
    if (!(a > 0)) {
        throw ValidationError("ParamQubit: a > 0 violated");
    }
    return ParamQubit(QubitKind::Real, a, b, 0.0);
}

ParamQubit ParamQubit::phased(double c, double d, double theta) {
    check_unit_pair(c, d, "c^2 + d^2 = 1");
    if (!(c > 0)) {
        throw ValidationError("ParamQubit: c > 0 violated");
    }
    if (!(theta > 0 && theta < std::numbers::pi)) {
        throw ValidationError("ParamQubit: 0 < theta < pi violated (theta = " + std::to_string(theta) + ")");
    }
    return ParamQubit(QubitKind::Phased, c, d, theta);
}

ParamQubit ParamQubit::make(QubitKind kind, std::span<const double> components) {
    if (kind == QubitKind::Real) {
        if (components.size() != 2) {
            throw ValidationError("ParamQubit: Real form takes (a, b)");
        }
        return real(components[0], components[1]);
    }
    if (components.size() != 3) {
        throw ValidationError("ParamQubit: Phased form takes (c, d, theta)");
    }
    return phased(components[0], components[1], components[2]);
}

StateVector ParamQubit::state() const {
    return StateVector::qubit(amp0_, std::polar(amp1_, theta_));
}

Cx state_overlap(const ParamQubit &u, const ParamQubit &v) {
    // <u|v> = u0 v0 + u1 v1 e^{i(theta_v - theta_u)} for real u0, v0, u1, v1.
    return u.amp0() * v.amp0() + u.amp1_magnitude() * v.amp1_magnitude() * std::polar(1.0, v.theta() - u.theta());
}

void OverlapRegistry::add_label(const std::string &label) {
    if (label.empty()) {
        throw UsageError("OverlapRegistry: empty label");
    }
    if (!has_label(label)) {
        labels_.push_back(label);
    }
}

bool OverlapRegistry::has_label(const std::string &label) const {
    return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

void OverlapRegistry::require_label(const std::string &label) const {
    if (!has_label(label)) {
        throw UsageError("OverlapRegistry: unknown label '" + label + "'");
    }
}

void OverlapRegistry::set_overlap(const std::string &i, const std::string &j, Cx value) {
    require_label(i);
    require_label(j);
    make_cx(value.real(), value.imag());
    if (i == j) {
        if (std::abs(value - 1.0) > kOverlapSlack) {
            throw ValidationError("OverlapRegistry: self-overlap of '" + i + "' is fixed at 1");
        }
        return;
    }
    if (std::abs(value) > 1 + kOverlapSlack) {
        throw ValidationError(
            "OverlapRegistry: |<" + i + "|" + j + ">| = " + std::to_string(std::abs(value)) + " exceeds 1");
    }
    // Stored as <first|second> for the lexicographically ordered key.
    overlaps_[ordered_key(i, j)] = i < j ? value : std::conj(value);
}

Cx OverlapRegistry::overlap(const std::string &i, const std::string &j) const {
    require_label(i);
    require_label(j);
    if (i == j) {
        return 1.0;
    }
    auto it = overlaps_.find(ordered_key(i, j));
    if (it == overlaps_.end()) {
        return 0.0;
    }
    return i < j ? it->second : std::conj(it->second);
}

std::vector<Cx> OverlapRegistry::gram(std::span<const std::string> labels) const {
    size_t n = labels.size();
    std::vector<Cx> g(n * n);
    for (size_t a = 0; a < n; a++) {
        for (size_t b = 0; b < n; b++) {
            g[a * n + b] = overlap(labels[a], labels[b]);
        }
    }
    return g;
}

ProgramPair declare_program_pair(Cx q, OverlapRegistry &registry, const std::string &first, const std::string &second) {
    if (std::abs(q) > 1 + kOverlapSlack) {
        throw ValidationError("declare_program_pair: |q| = " + std::to_string(std::abs(q)) + " exceeds 1");
    }
    registry.add_label(first);
    registry.add_label(second);
    registry.set_overlap(first, second, q);
    return {first, second};
}

ControlChain declare_control_chain(
    Cx r,
    OverlapRegistry &registry,
    const std::string &initial,
    const std::string &branch1,
    const std::string &branch2) {
    if (std::abs(r) > 1 + kOverlapSlack) {
        throw ValidationError("declare_control_chain: |r| = " + std::to_string(std::abs(r)) + " exceeds 1");
    }
    registry.add_label(initial);
    registry.add_label(branch1);
    registry.add_label(branch2);
    registry.set_overlap(branch1, branch2, r);
    return {initial, branch1, branch2};
}

Realization gram_realize(std::span<const std::string> labels, const OverlapRegistry &registry) {
    size_t n = labels.size();
    if (n == 0) {
        throw UsageError("gram_realize: no labels");
    }
    std::vector<Cx> g = registry.gram(labels);
    std::vector<Cx> low(n * n);
    for (size_t j = 0; j < n; j++) {
        double pivot_sq = g[j * n + j].real();
        for (size_t k = 0; k < j; k++) {
            pivot_sq -= std::norm(low[j * n + k]);
        }
        if (pivot_sq < -kInvariantTol) {
            throw ValidationError("gram_realize: Gram matrix is not positive semidefinite");
        }
        double pivot = pivot_sq > kPivotFloor ? std::sqrt(pivot_sq) : 0.0;
        low[j * n + j] = pivot;
        for (size_t i = j + 1; i < n; i++) {
            Cx v = g[i * n + j];
            for (size_t k = 0; k < j; k++) {
                v -= low[i * n + k] * std::conj(low[j * n + k]);
            }
            if (pivot > 0) {
                low[i * n + j] = v / pivot;
            } else if (std::abs(v) > kDependentTol) {
                throw ValidationError("gram_realize: Gram matrix is not positive semidefinite");
            }
        }
    }
    Realization out;
    HilbertLayout layout{n};
    for (size_t i = 0; i < n; i++) {
        std::vector<Cx> amps(n);
        for (size_t k = 0; k < n; k++) {
            amps[k] = std::conj(low[i * n + k]);
        }
        // Rows of L have unit norm whenever G is a valid Gram matrix with unit diagonal.
        out.insert_or_assign(labels[i], StateVector::from_amplitudes(layout, std::move(amps)));
    }
    return out;
}

MachineConfiguration MachineConfiguration::initial(
    StateVector data,
    std::string program,
    size_t aux_blanks,
    std::string control,
    std::string control_successor,
    size_t total_blanks) {
    if (total_blanks < aux_blanks + 1) {
        throw ResourceError(
            "MachineConfiguration: n = " + std::to_string(total_blanks) + " blanks cannot supply m + 1 = " +
            std::to_string(aux_blanks + 1));
    }
    return MachineConfiguration{
        std::move(data),
        std::move(program),
        aux_blanks,
        std::move(control),
        std::move(control_successor),
        total_blanks - (aux_blanks + 1),
        0};
}

ReplicationOutput apply_replication_step(const MachineConfiguration &config) {
    if (config.reservoir < config.blanks_per_step()) {
        throw ResourceError(
            "apply_replication_step: reservoir holds " + std::to_string(config.reservoir) + " blanks, step needs m + 1 = " +
            std::to_string(config.blanks_per_step()));
    }
    MachineConfiguration child = config;
    child.control = config.control_successor;
    child.reservoir = config.reservoir - config.blanks_per_step();
    child.depth = config.depth + 1;
    return ReplicationOutput{config.data, config.program, std::move(child), config.depth + 1};
}

Cx branch_overlap_after(const ReplicationOutput &out1, const ReplicationOutput &out2, const OverlapRegistry &registry) {
    const auto &c1 = out1.child;
    const auto &c2 = out2.child;
    if (out1.depth != out2.depth || c1.aux_blanks != c2.aux_blanks || c1.reservoir != c2.reservoir ||
        out1.parent_data.layout() != out2.parent_data.layout() || c1.data.layout() != c2.data.layout()) {
        throw UsageError("branch_overlap_after: outputs are not structurally compatible");
    }
    Cx parent = inner_product(out1.parent_data, out2.parent_data) *
                registry.overlap(out1.parent_program, out2.parent_program);
    Cx child = inner_product(c1.data, c2.data) * registry.overlap(c1.program, c2.program) *
               registry.overlap(c1.control, c2.control);
    return parent * child;
}

StateVector blank_state() {
    return StateVector::basis(HilbertLayout{2}, 0);
}

StateVector realize_configuration(const MachineConfiguration &config, const Realization &realization) {
    StateVector acc = tensor(config.data, blank_state());
    acc = tensor(acc, lookup(realization, config.program));
    acc = repeat_blank_into(std::move(acc), config.aux_blanks);
    acc = tensor(acc, lookup(realization, config.control));
    return repeat_blank_into(std::move(acc), config.reservoir);
}

StateVector realize_output(const ReplicationOutput &out, const Realization &realization) {
    StateVector parent = tensor(out.parent_data, lookup(realization, out.parent_program));
    return tensor(parent, realize_configuration(out.child, realization));
}

}  // namespace qsrm
