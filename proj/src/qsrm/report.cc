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

#include "qsrm/report.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include "json.hpp"
#include <numbers>
#include <random>
#include <sstream>
#include <thread>

namespace qsrm {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr double kPi = std::numbers::pi;
constexpr size_t kSweepSamples = 100;

std::string_view to_string(RunMode mode) {
    switch (mode) {
        case RunMode::Single:
            return "single";
        case RunMode::Grid:
            return "grid";
        case RunMode::Demo:
            return "demo";
    }
    return "?";
}

std::string_view to_string(Psi2Kind kind) {
    return kind == Psi2Kind::Phased ? "phased" : "complement";
}

void require(bool ok, const std::string &what) {
    if (!ok) {
        throw UsageError(what);
    }
}

void validate_axis(const std::vector<double> &values, const char *name, double lo, double hi, bool open_lo, bool open_hi) {
    for (double v : values) {
        bool ok = std::isfinite(v) && (open_lo ? v > lo : v >= lo) && (open_hi ? v < hi : v <= hi);
        require(ok, std::string("grid axis '") + name + "' has out-of-range value " + std::to_string(v));
    }
}

std::vector<std::pair<double, double>> polar_axis(const std::vector<double> &mags, const std::vector<double> &phases) {
    std::vector<std::pair<double, double>> out;
    if (phases.empty()) {
        return out;
    }
    for (double mag : mags) {
        if (mag == 0) {
            out.emplace_back(0.0, phases.front());
            continue;
        }
        for (double phase : phases) {
            out.emplace_back(mag, phase);
        }
    }
    return out;
}

StateVector psi1_of(const PointInput &in) {
    return ParamQubit::real(in.a, std::sqrt(1 - in.a * in.a)).state();
}

StateVector psi2_of(const PointInput &in) {
    if (in.psi2 == Psi2Kind::Complement) {
        double b = std::sqrt(1 - in.a * in.a);
        return StateVector::qubit(b, -in.a);
    }
    return ParamQubit::phased(in.c, std::sqrt(1 - in.c * in.c), in.theta).state();
}

std::string describe(const PointInput &in) {
    std::stringstream ss;
    ss << "a=" << in.a << " psi2=" << to_string(in.psi2);
    if (in.psi2 == Psi2Kind::Phased) {
        ss << " c=" << in.c << " theta=" << in.theta;
    }
    ss << " q=" << in.q_mag << "@" << in.q_phase << " r=" << in.r_mag << "@" << in.r_phase;
    return ss.str();
}

uint64_t next_bits(std::mt19937_64 &rng) {
    return rng();
}

double unit_uniform(std::mt19937_64 &rng) {
    return static_cast<double>(next_bits(rng) >> 11) * 0x1.0p-53;
}

ordered_json to_json(const Field &f) {
    return std::visit(
        [](const auto &v) -> ordered_json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
                return nullptr;
            } else if constexpr (std::is_same_v<T, double>) {
                return round12(v);
            } else {
                return v;
            }
        },
        f);
}

std::string to_csv(const Field &f) {
    return std::visit(
        [](const auto &v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
                return "";
            } else if constexpr (std::is_same_v<T, double>) {
                char buf[40];
                std::snprintf(buf, sizeof(buf), "%.12g", round12(v));
                return buf;
            } else if constexpr (std::is_same_v<T, bool>) {
                return v ? "true" : "false";
            } else if constexpr (std::is_same_v<T, int64_t>) {
                return std::to_string(v);
            } else {
                return v;
            }
        },
        f);
}

ordered_json row_json(const Row &row) {
    ordered_json obj = ordered_json::object();
    for (const auto &[key, value] : row) {
        obj[key] = to_json(value);
    }
    return obj;
}

std::string rows_csv(const std::vector<Row> &rows, const Row &header_source) {
    std::string out;
    for (size_t k = 0; k < header_source.size(); k++) {
        out += (k ? "," : "") + header_source[k].first;
    }
    out += "\n";
    for (const Row &row : rows) {
        for (size_t k = 0; k < row.size(); k++) {
            out += (k ? "," : "") + to_csv(row[k].second);
        }
        out += "\n";
    }
    return out;
}

}  // namespace

GridSpec GridSpec::preset(const std::string &name) {
    GridSpec g;
    if (name == "default") {
        g.a = {0.3, 0.6, std::numbers::sqrt2 / 2, 0.9, 1.0};
        g.c = g.a;
        g.theta = {kPi / 6, kPi / 2, 5 * kPi / 6};
        g.include_complement = true;
        g.q_mag = {0, 0.25, 0.5, 0.75, 1};
        g.q_phase = {0, kPi / 2};
        g.r_mag = g.q_mag;
        g.r_phase = g.q_phase;
    } else if (name == "small") {
        g.a = {0.6, 1.0};
        g.c = {0.6};
        g.theta = {kPi / 2};
        g.include_complement = true;
        g.q_mag = {0, 0.5};
        g.q_phase = {0};
        g.r_mag = {0.5};
        g.r_phase = {0};
    } else if (name != "empty") {
        throw UsageError("--grid: unknown preset '" + name + "'");
    }
    return g;
}

bool GridSpec::is_preset(const std::string &name) {
    return name == "default" || name == "small" || name == "empty";
}

GridSpec GridSpec::from_json_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw UsageError("--grid: cannot open grid file '" + path + "'");
    }
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception &e) {
        throw UsageError("--grid: '" + path + "' is not valid JSON: " + e.what());
    }
    if (!doc.is_object()) {
        throw UsageError("--grid: '" + path + "' must hold a JSON object");
    }
    GridSpec g = preset("default");
    auto axis = [&](const char *key, std::vector<double> &dst) {
        if (!doc.contains(key)) {
            return;
        }
        try {
            dst = doc.at(key).get<std::vector<double>>();
        } catch (const nlohmann::json::exception &) {
            throw UsageError(std::string("--grid: key '") + key + "' must be an array of numbers");
        }
    };
    static const char *kKnown[] = {"a", "c", "theta", "complement", "q_mag", "q_phase", "r_mag", "r_phase"};
    for (const auto &item : doc.items()) {
        if (std::find(std::begin(kKnown), std::end(kKnown), item.key()) == std::end(kKnown)) {
            throw UsageError("--grid: unknown key '" + item.key() + "'");
        }
    }
    axis("a", g.a);
    axis("c", g.c);
    axis("theta", g.theta);
    axis("q_mag", g.q_mag);
    axis("q_phase", g.q_phase);
    axis("r_mag", g.r_mag);
    axis("r_phase", g.r_phase);
    if (doc.contains("complement")) {
        if (!doc["complement"].is_boolean()) {
            throw UsageError("--grid: key 'complement' must be a boolean");
        }
        g.include_complement = doc["complement"].get<bool>();
    }
    g.validate();
    return g;
}

void GridSpec::validate() const {
    validate_axis(a, "a", 0, 1, true, false);
    validate_axis(c, "c", 0, 1, true, false);
    validate_axis(theta, "theta", 0, kPi, true, true);
    validate_axis(q_mag, "q_mag", 0, 1, false, false);
    validate_axis(r_mag, "r_mag", 0, 1, false, false);
    validate_axis(q_phase, "q_phase", -1e300, 1e300, false, false);
    validate_axis(r_phase, "r_phase", -1e300, 1e300, false, false);
}

void RunConfig::validate() const {
    require(std::isfinite(a) && a > 0 && a <= 1, "--a must lie in (0, 1]");
    require(std::isfinite(c) && c > 0 && c <= 1, "--c must lie in (0, 1]");
    require(std::isfinite(theta) && theta > 0 && theta < kPi, "--theta must satisfy 0 < theta < pi");
    require(std::isfinite(q_mag) && q_mag >= 0 && q_mag <= 1, "--q-mag must lie in [0, 1]");
    require(std::isfinite(r_mag) && r_mag >= 0 && r_mag <= 1, "--r-mag must lie in [0, 1]");
    require(std::isfinite(q_phase), "--q-phase must be finite");
    require(std::isfinite(r_phase), "--r-phase must be finite");
    require(n >= 2 * (m + 1), "--n must satisfy n >= 2(m + 1) = " + std::to_string(2 * (m + 1)));
    require(std::isfinite(tol) && tol > 0, "--tol must be positive");
}

std::vector<PointInput> enumerate_grid(const GridSpec &grid) {
    std::vector<std::tuple<Psi2Kind, double, double>> second;
    for (double c : grid.c) {
        for (double theta : grid.theta) {
            second.emplace_back(Psi2Kind::Phased, c, theta);
        }
    }
    if (grid.include_complement) {
        second.emplace_back(Psi2Kind::Complement, 0.0, 0.0);
    }
    auto qs = polar_axis(grid.q_mag, grid.q_phase);
    auto rs = polar_axis(grid.r_mag, grid.r_phase);
    std::vector<PointInput> out;
    for (double a : grid.a) {
        for (const auto &[kind, c, theta] : second) {
            for (const auto &[qm, qp] : qs) {
                for (const auto &[rm, rp] : rs) {
                    out.push_back(PointInput{a, kind, c, theta, qm, qp, rm, rp});
                }
            }
        }
    }
    return out;
}

PointRecord evaluate_point(size_t index, const PointInput &input, size_t m, size_t n, double tol) {
    PointRecord rec{};
    rec.index = index;
    rec.input = input;
    rec.b = std::sqrt(1 - input.a * input.a);
    rec.d = input.psi2 == Psi2Kind::Phased ? std::sqrt(1 - input.c * input.c) : 0.0;

    StateVector psi1 = psi1_of(input);
    StateVector psi2 = psi2_of(input);
    MachineSetup setup =
        MachineSetup::make(cx_polar(input.q_mag, input.q_phase), cx_polar(input.r_mag, input.r_phase), m, n);
    EntangledResource resource = build_entangled_resource(psi1, psi2, setup);
    rec.p = resource.p();
    rec.q = resource.q();
    rec.r = resource.r();

    SignallingReport signalling = verify_no_signalling(resource);
    rec.condition_class = signalling.condition_class;
    rec.boundary = signalling.boundary;
    rec.trace_distance = signalling.trace_distance;
    rec.residual_before = signalling.before.residual;
    rec.residual_after = signalling.after.residual;
    rec.entanglement = verify_entanglement_conservation(resource);

    ReplicationOutput out1 = apply_replication_step(setup.branch(psi1, 1));
    ReplicationOutput out2 = apply_replication_step(setup.branch(psi2, 2));
    Cx numeric_overlap =
        inner_product(realize_output(out2, resource.realization), realize_output(out1, resource.realization));
    rec.residual_branch_overlap = std::abs(branch_overlap_after(out2, out1, setup.registry) - numeric_overlap);

    // The point's psi1 = a|0> + b|1> is itself the superposition to replicate.
    LinearityReport lin = verify_linearity(
        StateVector::basis(HilbertLayout{2}, 0),
        StateVector::basis(HilbertLayout{2}, 1),
        SuperpositionSpec::make(input.a, rec.b),
        setup);
    rec.linearity_fidelity = lin.replication_fidelity;
    rec.linearity_expected = lin.expected_fidelity;

    const EntanglementReport &e = rec.entanglement;
    double pq = std::abs(rec.p) * std::abs(rec.q);
    std::vector<std::string> failed;
    auto check = [&](bool ok, const char *name) {
        if (!ok) {
            failed.emplace_back(name);
        }
    };
    check(rec.residual_before <= tol, "closed_form_before");
    check(rec.residual_after <= tol, "closed_form_after");
    check(rec.residual_branch_overlap <= tol, "branch_overlap");
    check(std::abs(e.lambda_before - e.lambda_before_formula) <= tol, "lambda_before");
    check(std::abs(e.lambda_after - e.lambda_after_formula) <= tol, "lambda_after");
    check(std::abs(e.gap - e.gap_formula) <= tol, "gap_formula");
    check(std::abs(lin.replication_fidelity - lin.expected_fidelity) <= tol, "linearity");
    if (rec.condition_class != ConditionClass::Violation) {
        check(rec.trace_distance <= tol, "no_signalling");
        check(std::abs(e.gap) <= tol, "gap_zero");
    } else if (!rec.boundary) {
        check(rec.trace_distance > tol, "no_signalling");
        check(pq <= kZeroOverlapTol || e.gap > 0, "gap_positive");
    }
    if (std::abs(e.gap) > tol) {
        check((e.entropy_before < e.entropy_after) == (e.lambda_before > e.lambda_after), "entropy_order");
    }
    for (size_t k = 0; k < failed.size(); k++) {
        rec.failures += (k ? ";" : "") + failed[k];
    }
    rec.pass = failed.empty();
    return rec;
}

LinearitySweep run_linearity_sweep(uint64_t seed, size_t samples, size_t m, size_t n) {
    std::mt19937_64 rng(seed);
    MachineSetup setup = MachineSetup::make(0.5, 0.5, m, n);
    StateVector zero = StateVector::basis(HilbertLayout{2}, 0);
    StateVector one = StateVector::basis(HilbertLayout{2}, 1);
    LinearitySweep sweep{seed, samples, 0.0};
    for (size_t k = 0; k < samples; k++) {
        double angle = unit_uniform(rng) * kPi / 2;
        double phase_a = unit_uniform(rng) * 2 * kPi;
        double phase_b = unit_uniform(rng) * 2 * kPi;
        auto spec = SuperpositionSpec::make(std::polar(std::cos(angle), phase_a), std::polar(std::sin(angle), phase_b));
        LinearityReport lin = verify_linearity(zero, one, spec, setup);
        sweep.max_residual = std::max(sweep.max_residual, std::abs(lin.replication_fidelity - lin.expected_fidelity));
    }
    return sweep;
}

VerdictReport run_verification(const RunConfig &config) {
    config.validate();
    VerdictReport report;
    report.config = config;

    if (config.mode == RunMode::Demo) {
        report.demo = demo_orthogonal_replication(config.m, cx_polar(config.q_mag, config.q_phase));
        report.summary.pass = report.demo->pass;
        report.summary.max_residual = report.demo->unitarity_error;
        for (const auto &c : report.demo->cases) {
            report.summary.max_residual = std::max(
                {report.summary.max_residual, c.amplitude_error, std::abs(c.copy_fidelity - c.expected_fidelity)});
        }
        return report;
    }

    std::vector<PointInput> inputs;
    if (config.mode == RunMode::Single) {
        inputs.push_back(PointInput{
            config.a, config.psi2, config.c, config.theta, config.q_mag, config.q_phase, config.r_mag, config.r_phase});
    } else {
        GridSpec grid = GridSpec::is_preset(config.grid) ? GridSpec::preset(config.grid)
                                                         : GridSpec::from_json_file(config.grid);
        inputs = enumerate_grid(grid);
    }

    std::vector<std::optional<PointRecord>> slots(inputs.size());
    std::vector<std::exception_ptr> errors(inputs.size());
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (size_t k = next++; k < inputs.size(); k = next++) {
            try {
                slots[k] = evaluate_point(k, inputs[k], config.m, config.n, config.tol);
            } catch (...) {
                errors[k] = std::current_exception();
            }
        }
    };
    size_t threads = std::clamp<size_t>(std::thread::hardware_concurrency(), 1, 16);
    threads = std::min(threads, std::max<size_t>(inputs.size(), 1));
    std::vector<std::thread> pool;
    for (size_t t = 1; t < threads; t++) {
        pool.emplace_back(worker);
    }
    worker();
    for (auto &t : pool) {
        t.join();
    }
    for (size_t k = 0; k < inputs.size(); k++) {
        if (!errors[k]) {
            continue;
        }
        std::string where = "point " + std::to_string(k) + " (" + describe(inputs[k]) + "): ";
        try {
            std::rethrow_exception(errors[k]);
        } catch (const ResourceError &e) {
            throw ResourceError(where + e.what());
        } catch (const ValidationError &e) {
            throw ValidationError(where + e.what());
        } catch (const UsageError &e) {
            throw UsageError(where + e.what());
        }
    }

    Summary &s = report.summary;
    for (auto &slot : slots) {
        PointRecord &rec = *slot;
        switch (rec.condition_class) {
            case ConditionClass::OrthogonalStates:
                s.orthogonal_states++;
                break;
            case ConditionClass::OrthogonalPrograms:
                s.orthogonal_programs++;
                break;
            case ConditionClass::Degenerate:
                s.degenerate++;
                break;
            case ConditionClass::Violation:
                s.violation++;
                break;
        }
        s.boundary += rec.boundary;
        s.failed_points += !rec.pass;
        const auto &e = rec.entanglement;
        s.max_residual = std::max({
            s.max_residual,
            rec.residual_before,
            rec.residual_after,
            rec.residual_branch_overlap,
            std::abs(e.lambda_before - e.lambda_before_formula),
            std::abs(e.lambda_after - e.lambda_after_formula),
            std::abs(e.gap - e.gap_formula),
            std::abs(rec.linearity_fidelity - rec.linearity_expected),
        });
        report.points.push_back(std::move(rec));
    }
    s.points = report.points.size();
    s.linearity_sweep = run_linearity_sweep(config.seed, kSweepSamples, config.m, config.n);
    s.pass = s.failed_points == 0 && s.linearity_sweep->max_residual <= config.tol;
    return report;
}

double round12(double x) {
    if (!std::isfinite(x)) {
        return x;
    }
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    double r = std::strtod(buf, nullptr);
    return r == 0 ? 0.0 : r;
}

Row point_row(const PointRecord &pt) {
    const PointInput &in = pt.input;
    const EntanglementReport &e = pt.entanglement;
    bool phased = in.psi2 == Psi2Kind::Phased;
    auto opt = [&](double v) -> Field { return phased ? Field{v} : Field{}; };
    return Row{
        {"index", static_cast<int64_t>(pt.index)},
        {"a", in.a},
        {"b", pt.b},
        {"psi2", std::string(to_string(in.psi2))},
        {"c", opt(in.c)},
        {"d", opt(pt.d)},
        {"theta", opt(in.theta)},
        {"q_mag", in.q_mag},
        {"q_phase", in.q_phase},
        {"r_mag", in.r_mag},
        {"r_phase", in.r_phase},
        {"p_re", pt.p.real()},
        {"p_im", pt.p.imag()},
        {"p_abs", std::abs(pt.p)},
        {"q_re", pt.q.real()},
        {"q_im", pt.q.imag()},
        {"r_re", pt.r.real()},
        {"r_im", pt.r.imag()},
        {"condition_class", std::string(to_string(pt.condition_class))},
        {"boundary", pt.boundary},
        {"linearity_fidelity", pt.linearity_fidelity},
        {"linearity_expected", pt.linearity_expected},
        {"trace_distance", pt.trace_distance},
        {"lambda_before", e.lambda_before},
        {"lambda_after", e.lambda_after},
        {"lambda_before_formula", e.lambda_before_formula},
        {"lambda_after_formula", e.lambda_after_formula},
        {"gap", e.gap},
        {"gap_formula", e.gap_formula},
        {"entropy_before", e.entropy_before},
        {"entropy_after", e.entropy_after},
        {"residual_before", pt.residual_before},
        {"residual_after", pt.residual_after},
        {"residual_branch_overlap", pt.residual_branch_overlap},
        {"pass", pt.pass},
        {"failures", pt.failures},
    };
}

Row demo_case_row(const ReplicationCase &c) {
    return Row{
        {"case", c.name},
        {"alpha_re", c.alpha.real()},
        {"alpha_im", c.alpha.imag()},
        {"beta_re", c.beta.real()},
        {"beta_im", c.beta.imag()},
        {"copy_fidelity", c.copy_fidelity},
        {"expected_fidelity", c.expected_fidelity},
        {"amplitude_error", c.amplitude_error},
    };
}

std::string render_json(const VerdictReport &report) {
    const RunConfig &cfg = report.config;
    const Summary &s = report.summary;
    ordered_json summary = ordered_json::object();
    summary["mode"] = to_string(cfg.mode);
    summary["m"] = cfg.m;
    summary["n"] = cfg.n;
    summary["grid"] = cfg.mode == RunMode::Grid ? ordered_json(cfg.grid) : ordered_json(nullptr);
    summary["seed"] = cfg.seed;
    summary["tol"] = round12(cfg.tol);
    summary["points"] = s.points;
    summary["condition_counts"] = ordered_json{
        {"ORTHOGONAL_STATES", s.orthogonal_states},
        {"ORTHOGONAL_PROGRAMS", s.orthogonal_programs},
        {"DEGENERATE", s.degenerate},
        {"VIOLATION", s.violation},
    };
    summary["boundary_points"] = s.boundary;
    summary["failed_points"] = s.failed_points;
    summary["max_residual"] = round12(s.max_residual);
    if (s.linearity_sweep) {
        summary["linearity_sweep"] = ordered_json{
            {"seed", s.linearity_sweep->seed},
            {"samples", s.linearity_sweep->samples},
            {"max_residual", round12(s.linearity_sweep->max_residual)},
        };
    } else {
        summary["linearity_sweep"] = nullptr;
    }
    summary["pass"] = s.pass;

    ordered_json doc = ordered_json::object();
    doc["summary"] = std::move(summary);
    ordered_json points = ordered_json::array();
    for (const auto &pt : report.points) {
        points.push_back(row_json(point_row(pt)));
    }
    doc["points"] = std::move(points);
    if (report.demo) {
        const auto &d = *report.demo;
        ordered_json cases = ordered_json::array();
        for (const auto &c : d.cases) {
            cases.push_back(row_json(demo_case_row(c)));
        }
        doc["demo"] = ordered_json{
            {"aux_blanks", d.aux_blanks},
            {"program_overlap_re", round12(d.program_overlap.real())},
            {"program_overlap_im", round12(d.program_overlap.imag())},
            {"dim", d.dim},
            {"unitarity_error", round12(d.unitarity_error)},
            {"cases", std::move(cases)},
            {"pass", d.pass},
        };
    }
    return doc.dump(2) + "\n";
}

std::string render_csv(const VerdictReport &report) {
    if (report.demo) {
        std::vector<Row> rows;
        for (const auto &c : report.demo->cases) {
            rows.push_back(demo_case_row(c));
        }
        return rows_csv(rows, demo_case_row(ReplicationCase{}));
    }
    std::vector<Row> rows;
    for (const auto &pt : report.points) {
        rows.push_back(point_row(pt));
    }
    PointRecord blank{};
    return rows_csv(rows, point_row(blank));
}

void emit_report(const VerdictReport &report, OutputFormat format, const std::string &path) {
    std::string text = format == OutputFormat::Json ? render_json(report) : render_csv(report);
    if (path.empty()) {
        std::cout << text << std::flush;
        if (!std::cout) {
            throw IoError("failed writing report to stdout");
        }
        return;
    }
    {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (out) {
            out << text;
            out.flush();
            if (out) {
                return;
            }
        }
    }
    std::remove(path.c_str());
    throw IoError("failed writing report to '" + path + "'");
}

}  // namespace qsrm
