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

#include "qsrm/cli.h"

#include "CLI11.hpp"
#include <map>
#include <ostream>

namespace qsrm {

namespace {

template <typename T>
void add_choice(CLI::App &app, const std::string &flag, T &target, std::map<std::string, T> choices,
                const std::string &help) {
    app.add_option_function<std::string>(
           flag,
           [flag, help, &target, choices](const std::string &value) {
               auto it = choices.find(value);
               if (it == choices.end()) {
                   throw CLI::ValidationError(flag, "'" + value + "' is not one of " + help);
               }
               target = it->second;
           },
           help)
        ->option_text("TEXT");
}

}  // namespace

RunConfig parse_args(int argc, const char *const *argv) {
    RunConfig cfg;
    CLI::App app{"Verifies the no-go arguments against quantum self-replicating machines.", "qsrm"};
    app.allow_extras(false);

    add_choice<RunMode>(
        app, "--mode", cfg.mode,
        {{"single", RunMode::Single}, {"grid", RunMode::Grid}, {"demo", RunMode::Demo}}, "single | grid | demo");
    app.add_option("--a", cfg.a, "psi1 = a|0> + b|1>, 0 < a <= 1");
    app.add_option("--c", cfg.c, "psi2 = c|0> + d e^{i theta}|1>, 0 < c <= 1");
    app.add_option("--theta", cfg.theta, "relative phase of psi2, 0 < theta < pi");
    add_choice<Psi2Kind>(app, "--psi2", cfg.psi2,
                         {{"phased", Psi2Kind::Phased}, {"complement", Psi2Kind::Complement}},
                         "phased | complement");
    app.add_option("--q-mag,--q", cfg.q_mag, "|<P1|P2>|");
    app.add_option("--q-phase", cfg.q_phase, "arg <P1|P2>");
    app.add_option("--r-mag,--r", cfg.r_mag, "|<C1|C2>|");
    app.add_option("--r-phase", cfg.r_phase, "arg <C1|C2>");
    app.add_option("--m", cfg.m, "auxiliary blanks per configuration");
    app.add_option("--n", cfg.n, "total blanks, n >= 2(m + 1)");
    app.add_option("--grid", cfg.grid, "preset (default, small, empty) or JSON grid file");
    add_choice<OutputFormat>(app, "--format", cfg.format,
                             {{"json", OutputFormat::Json}, {"csv", OutputFormat::Csv}}, "json | csv");
    app.add_option("--out", cfg.out_path, "output file (stdout when omitted)");
    app.add_option("--seed", cfg.seed, "seed for the randomized linearity sweep");
    app.add_option("--tol", cfg.tol, "comparison tolerance");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &) {
        throw HelpRequested(app.help());
    } catch (const CLI::ParseError &e) {
        throw UsageError(e.what());
    }
    cfg.validate();
    return cfg;
}

int run_cli(int argc, const char *const *argv, std::ostream &err) {
    RunConfig cfg;
    try {
        cfg = parse_args(argc, argv);
    } catch (const HelpRequested &h) {
        err << h.what();
        return kExitPass;
    } catch (const std::invalid_argument &e) {
        err << "qsrm: " << e.what() << "\n";
        return kExitUsage;
    }
    try {
        VerdictReport report = run_verification(cfg);
        emit_report(report, cfg.format, cfg.out_path);
        if (!report.summary.pass) {
            err << "qsrm: " << report.summary.failed_points << " point(s) failed verification\n";
            return kExitAssertionFailed;
        }
        return kExitPass;
    } catch (const std::invalid_argument &e) {
        err << "qsrm: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ResourceError &e) {
        err << "qsrm: " << e.what() << "\n";
        return kExitResource;
    } catch (const IoError &e) {
        err << "qsrm: " << e.what() << "\n";
        return kExitIo;
    }
}

}  // namespace qsrm
