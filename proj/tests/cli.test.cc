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

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <sys/wait.h>

#include "gtest/gtest.h"

using namespace qsrm;

namespace {

RunConfig parse(std::vector<const char *> args) {
    args.insert(args.begin(), "qsrm");
    return parse_args(static_cast<int>(args.size()), args.data());
}

int run(std::vector<const char *> args) {
    args.insert(args.begin(), "qsrm");
    std::ostringstream err;
    return run_cli(static_cast<int>(args.size()), args.data(), err);
}

int run_binary(const std::string &args) {
    std::string cmd = std::string(QSRM_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(parse_args, examples) {
    RunConfig cfg = parse({"--mode", "single", "--a", "0.6", "--c", "0.6", "--theta", "1.5708", "--q", "0.5", "--r",
                           "0.5", "--m", "1", "--n", "4"});
    ASSERT_EQ(cfg.mode, RunMode::Single);
    ASSERT_EQ(cfg.q_mag, 0.5);
    ASSERT_EQ(cfg.r_mag, 0.5);
    ASSERT_EQ(cfg.theta, 1.5708);

    cfg = parse({"--mode", "grid", "--format", "csv", "--seed", "9", "--tol", "1e-8", "--q-phase", "1", "--r-mag",
                 "0.25", "--psi2", "complement"});
    ASSERT_EQ(cfg.format, OutputFormat::Csv);
    ASSERT_EQ(cfg.seed, 9u);
    ASSERT_EQ(cfg.tol, 1e-8);
    ASSERT_EQ(cfg.q_phase, 1);
    ASSERT_EQ(cfg.r_mag, 0.25);
    ASSERT_EQ(cfg.psi2, Psi2Kind::Complement);

    ASSERT_THROW(parse({"--theta", "4.0"}), UsageError);
    ASSERT_THROW(parse({"--m", "2", "--n", "4"}), UsageError);
    ASSERT_THROW(parse({"--mode", "weird"}), UsageError);
    ASSERT_THROW(parse({"--bogus"}), UsageError);
    ASSERT_THROW(parse({"--a", "x"}), UsageError);
    ASSERT_THROW(parse({"--help"}), HelpRequested);
}

TEST(run_cli, exit_codes) {
    auto out = std::filesystem::temp_directory_path() / "qsrm_cli_test.json";
    std::string out_str = out.string();
    ASSERT_EQ(run({"--mode", "single", "--out", out_str.c_str()}), kExitPass);
    ASSERT_TRUE(std::filesystem::exists(out));
    std::filesystem::remove(out);
    ASSERT_EQ(run({"--theta", "4.0"}), kExitUsage);
    ASSERT_EQ(run({"--grid", "/nonexistent/grid.json"}), kExitUsage);
    ASSERT_EQ(run({"--mode", "demo", "--m", "9", "--n", "20"}), kExitResource);
    ASSERT_EQ(run({"--mode", "single", "--out", "/nonexistent/dir/x.json"}), kExitIo);
    ASSERT_EQ(run({"--help"}), kExitPass);
}

TEST(binary, exit_codes) {
    ASSERT_EQ(run_binary("--mode single"), 0);
    ASSERT_EQ(run_binary("--mode grid --grid small --format csv"), 0);
    ASSERT_EQ(run_binary("--mode demo --m 2 --n 6"), 0);
    ASSERT_EQ(run_binary("--theta 4.0"), 2);
    ASSERT_EQ(run_binary("--m 2 --n 4"), 2);
    ASSERT_EQ(run_binary("--mode demo --m 9 --n 20"), 3);
}
