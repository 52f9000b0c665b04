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

#ifndef QSRM_REPORT_H
#define QSRM_REPORT_H

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "qsrm/verifiers.h"

namespace qsrm {

enum class RunMode { Single, Grid, Demo };
enum class OutputFormat { Json, Csv };
/// How the second data state is formed: c|0> + d e^{i theta}|1>, or the orthogonal complement of psi1.
enum class Psi2Kind { Phased, Complement };

struct IoError : std::runtime_error {
    explicit IoError(const std::string &msg) : std::runtime_error(msg) {
    }
};

/// Axes of a parameter sweep. Points are enumerated a-major, then psi2 choices
/// (every (c, theta) pair, then the complement if enabled), then q, then r.
/// A zero magnitude is paired with the first phase only.
struct GridSpec {
    std::vector<double> a;
    std::vector<double> c;
    std::vector<double> theta;
    bool include_complement = false;
    std::vector<double> q_mag;
    std::vector<double> q_phase;
    std::vector<double> r_mag;
    std::vector<double> r_phase;

    static GridSpec preset(const std::string &name);
    static bool is_preset(const std::string &name);
    /// Reads a JSON object with the same keys; absent keys fall back to the default preset.
    static GridSpec from_json_file(const std::string &path);
    void validate() const;
};

struct RunConfig {
    RunMode mode = RunMode::Grid;
    double a = 0.6;
    double c = 0.6;
    double theta = 1.5707963267948966;
    Psi2Kind psi2 = Psi2Kind::Phased;
    double q_mag = 0.5;
    double q_phase = 0.0;
    double r_mag = 0.5;
    double r_phase = 0.0;
    size_t m = 1;
    size_t n = 4;
    std::string grid = "default";
    OutputFormat format = OutputFormat::Json;
    std::string out_path;
    uint64_t seed = 0;
    double tol = 1e-10;

    /// Throws UsageError naming the offending flag.
    void validate() const;
};

struct PointInput {
    double a;
    Psi2Kind psi2;
    double c;      // unused for Complement
    double theta;  // unused for Complement
    double q_mag;
    double q_phase;
    double r_mag;
    double r_phase;
};

std::vector<PointInput> enumerate_grid(const GridSpec &grid);

struct PointRecord {
    size_t index;
    PointInput input;
    double b;
    double d;
    Cx p;
    Cx q;
    Cx r;
    ConditionClass condition_class;
    bool boundary;
    double linearity_fidelity;
    double linearity_expected;
    double trace_distance;
    EntanglementReport entanglement;
    double residual_before;
    double residual_after;
    double residual_branch_overlap;
    bool pass;
    /// Names of the checks that failed, ';'-separated.
    std::string failures;
};

/// Runs every verifier at one parameter point and checks each invariant at `tol`.
PointRecord evaluate_point(size_t index, const PointInput &input, size_t m, size_t n, double tol);

struct LinearitySweep {
    uint64_t seed;
    size_t samples;
    double max_residual;
};

/// Fidelity law over `samples` seeded random (alpha, beta) pairs with psi1 = |0>, psi2 = |1>.
LinearitySweep run_linearity_sweep(uint64_t seed, size_t samples, size_t m, size_t n);

struct Summary {
    size_t points = 0;
    size_t orthogonal_states = 0;
    size_t orthogonal_programs = 0;
    size_t degenerate = 0;
    size_t violation = 0;
    size_t boundary = 0;
    size_t failed_points = 0;
    double max_residual = 0;
    std::optional<LinearitySweep> linearity_sweep;
    bool pass = true;
};

struct VerdictReport {
    RunConfig config;
    std::vector<PointRecord> points;
    std::optional<OrthogonalReplicationRecord> demo;
    Summary summary;
};

/// Deterministic for a given config: points are kept in enumeration order
/// regardless of how the evaluation is scheduled.
VerdictReport run_verification(const RunConfig &config);

using Field = std::variant<std::monostate, double, int64_t, bool, std::string>;
using Row = std::vector<std::pair<std::string, Field>>;

/// Fields of one per-point record, in output order (shared by JSON and CSV).
Row point_row(const PointRecord &point);
Row demo_case_row(const ReplicationCase &c);

/// Rounds to 12 significant digits.
double round12(double x);

std::string render_json(const VerdictReport &report);
std::string render_csv(const VerdictReport &report);

/// Writes to `path`, or to stdout when empty. On failure the partial file is removed and IoError thrown.
void emit_report(const VerdictReport &report, OutputFormat format, const std::string &path);

}  // namespace qsrm

#endif
