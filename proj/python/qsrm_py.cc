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

#include <iostream>

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qsrm/cli.h"
#include "qsrm/report.h"

namespace py = pybind11;
using namespace qsrm;

namespace {

StateVector qubit_from(const std::vector<Cx> &amps) {
    if (amps.size() != 2) {
        throw UsageError("expected two amplitudes, got " + std::to_string(amps.size()));
    }
    return StateVector::from_amplitudes(HilbertLayout{2}, amps);
}

std::vector<std::vector<Cx>> to_rows(const DensityMatrix &m) {
    size_t d = m.dim();
    std::vector<std::vector<Cx>> rows(d, std::vector<Cx>(d));
    for (size_t i = 0; i < d; i++) {
        for (size_t j = 0; j < d; j++) {
            rows[i][j] = m(i, j);
        }
    }
    return rows;
}

py::dict signalling_dict(const SignallingReport &r) {
    py::dict out;
    out["before"] = to_rows(r.before.numeric);
    out["after"] = to_rows(r.after.numeric);
    out["before_closed_form"] = to_rows(r.before.closed_form);
    out["after_closed_form"] = to_rows(r.after.closed_form);
    out["trace_distance"] = r.trace_distance;
    out["condition_class"] = to_string(r.condition_class);
    out["boundary"] = r.boundary;
    return out;
}

py::dict entanglement_dict(const EntanglementReport &r) {
    py::dict out;
    out["lambda_before"] = r.lambda_before;
    out["lambda_after"] = r.lambda_after;
    out["lambda_before_formula"] = r.lambda_before_formula;
    out["lambda_after_formula"] = r.lambda_after_formula;
    out["gap"] = r.gap;
    out["gap_formula"] = r.gap_formula;
    out["entropy_before"] = r.entropy_before;
    out["entropy_after"] = r.entropy_after;
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Bindings for the qsrm replicating-machine verifiers.";
    py::register_exception<ResourceError>(m, "ResourceError", PyExc_RuntimeError);
    py::register_exception<IoError>(m, "IoError", PyExc_OSError);

    m.def(
        "state_overlap",
        [](const std::vector<Cx> &u, const std::vector<Cx> &v) {
            return inner_product(qubit_from(u), qubit_from(v));
        },
        py::arg("u"), py::arg("v"), "Inner product <u|v> of two normalized qubits.");
    m.def("binary_entropy", &binary_entropy, py::arg("x"), "Entropy in bits of the distribution (x, 1 - x).");
    m.def(
        "classify", [](Cx p, Cx q) { return to_string(classify_existence_condition(p, q)); }, py::arg("p"),
        py::arg("q"));
    m.def(
        "alice_before_closed_form", [](Cx p, Cx q) { return to_rows(alice_before_closed_form(p, q)); },
        py::arg("p"), py::arg("q"));
    m.def(
        "alice_after_closed_form", [](Cx p, Cx q, Cx r) { return to_rows(alice_after_closed_form(p, q, r)); },
        py::arg("p"), py::arg("q"), py::arg("r"));

    m.def(
        "verify_no_signalling",
        [](const std::vector<Cx> &psi1, const std::vector<Cx> &psi2, Cx q, Cx r, size_t m_, size_t n) {
            return signalling_dict(
                verify_no_signalling(qubit_from(psi1), qubit_from(psi2), MachineSetup::make(q, r, m_, n)));
        },
        py::arg("psi1"), py::arg("psi2"), py::arg("q"), py::arg("r"), py::arg("m") = 1, py::arg("n") = 4);
    m.def(
        "verify_entanglement_conservation",
        [](const std::vector<Cx> &psi1, const std::vector<Cx> &psi2, Cx q, Cx r, size_t m_, size_t n) {
            return entanglement_dict(verify_entanglement_conservation(
                qubit_from(psi1), qubit_from(psi2), MachineSetup::make(q, r, m_, n)));
        },
        py::arg("psi1"), py::arg("psi2"), py::arg("q"), py::arg("r"), py::arg("m") = 1, py::arg("n") = 4);
    m.def(
        "verify_linearity",
        [](const std::vector<Cx> &psi1, const std::vector<Cx> &psi2, Cx alpha, Cx beta, Cx q, Cx r, size_t m_,
           size_t n) {
            auto rep = verify_linearity(qubit_from(psi1), qubit_from(psi2), SuperpositionSpec::make(alpha, beta),
                                        MachineSetup::make(q, r, m_, n));
            py::dict out;
            out["replication_fidelity"] = rep.replication_fidelity;
            out["ideal_fidelity"] = rep.ideal_fidelity;
            out["expected_fidelity"] = rep.expected_fidelity;
            out["deviation"] = rep.deviation;
            out["verdict"] = rep.verdict == LinearityVerdict::Contradiction ? "CONTRADICTION" : "CONSISTENT";
            return out;
        },
        py::arg("psi1"), py::arg("psi2"), py::arg("alpha"), py::arg("beta"), py::arg("q") = 0.5,
        py::arg("r") = 0.5, py::arg("m") = 1, py::arg("n") = 4);
    m.def(
        "demo_orthogonal_replication",
        [](size_t m_, Cx q) {
            auto rec = demo_orthogonal_replication(m_, q);
            py::list cases;
            for (const auto &c : rec.cases) {
                py::dict d;
                d["name"] = c.name;
                d["alpha"] = c.alpha;
                d["beta"] = c.beta;
                d["copy_fidelity"] = c.copy_fidelity;
                d["expected_fidelity"] = c.expected_fidelity;
                d["amplitude_error"] = c.amplitude_error;
                cases.append(d);
            }
            py::dict out;
            out["aux_blanks"] = rec.aux_blanks;
            out["program_overlap"] = rec.program_overlap;
            out["dim"] = rec.dim;
            out["unitarity_error"] = rec.unitarity_error;
            out["cases"] = cases;
            out["pass"] = rec.pass;
            return out;
        },
        py::arg("m") = 1, py::arg("q") = Cx(0.5));

    m.def(
        "run_report",
        [](const std::vector<std::string> &args) {
            std::vector<const char *> argv{"qsrm"};
            for (const auto &a : args) {
                argv.push_back(a.c_str());
            }
            RunConfig cfg = parse_args(static_cast<int>(argv.size()), argv.data());
            py::gil_scoped_release release;
            VerdictReport report = run_verification(cfg);
            return cfg.format == OutputFormat::Json ? render_json(report) : render_csv(report);
        },
        py::arg("args") = std::vector<std::string>{},
        "Runs the verifier with command-line style arguments and returns the rendered report.");
    m.def(
        "run_cli",
        [](const std::vector<std::string> &args) {
            std::vector<const char *> argv{"qsrm"};
            for (const auto &a : args) {
                argv.push_back(a.c_str());
            }
            py::gil_scoped_release release;
            return run_cli(static_cast<int>(argv.size()), argv.data(), std::cerr);
        },
        py::arg("args"), "Runs the command-line tool in process and returns its exit code.");
}
