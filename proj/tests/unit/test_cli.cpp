// Copyright 2026 The qfreeze Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qfreeze/experiment.hpp"
#include "qfreeze/json_io.hpp"

namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code = -1;
  std::string output;
};

Outcome cli(const std::string& args) {
  const std::string command = std::string(QFREEZE_CLI_PATH) + " " + args + " 2>&1";
  Outcome outcome;
  FILE* pipe = popen(command.c_str(), "r");
  if (pipe == nullptr) return outcome;
  std::array<char, 4096> buffer{};
  while (std::fgets(buffer.data(), buffer.size(), pipe) != nullptr) outcome.output += buffer.data();
  const int status = pclose(pipe);
  outcome.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return outcome;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  std::stringstream text;
  text << in.rdbuf();
  return text.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("qfreeze_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string out(const std::string& sub = "") const { return "--out " + (dir_ / sub).string(); }
  fs::path dir_;
};

TEST_F(Cli, HelpListsEverySubcommand) {
  const auto help = cli("--help");
  EXPECT_EQ(help.code, 0);
  for (const char* name : {"gen", "freeze", "compile", "run", "landscape", "cost"}) {
    EXPECT_NE(help.output.find(name), std::string::npos) << name;
  }
}

TEST_F(Cli, GenIsDeterministicAndMatchesTheLibrary) {
  ASSERT_EQ(cli(out("a") + " --seed 7 gen --n 16 --dba 1").code, 0);
  ASSERT_EQ(cli(out("b") + " --seed 7 gen --n 16 --dba 1").code, 0);
  const auto a = slurp(dir_ / "a" / "model.json");
  EXPECT_FALSE(a.empty());
  EXPECT_EQ(a, slurp(dir_ / "b" / "model.json"));
  const auto model = qfreeze::io::model_from_json(qfreeze::io::Json::parse(a));
  EXPECT_EQ(model.num_vars(), 16U);
  EXPECT_EQ(model.quadratic().size(), 15U);
}

TEST_F(Cli, FreezeAndCompileWriteArtifacts) {
  const auto freeze = cli(out() + " freeze --n 10 --m 3");
  ASSERT_EQ(freeze.code, 0) << freeze.output;
  const auto subs = qfreeze::io::read_json_file(dir_ / "subproblems.json");
  EXPECT_EQ(subs.at("subproblems").size(), 4U);
  EXPECT_EQ(subs.at("hotspots").size(), 3U);
  EXPECT_EQ(cli(out() + " freeze --n 10 --m 3 --no-prune").code, 0);
  EXPECT_EQ(qfreeze::io::read_json_file(dir_ / "subproblems.json").at("subproblems").size(), 8U);

  ASSERT_EQ(cli(out() + " compile --n 10 --m 2").code, 0);
  const auto compiled = qfreeze::io::compiled_from_json(qfreeze::io::read_json_file(dir_ / "compiled.json"));
  EXPECT_EQ(compiled.num_logical, 8U);
  EXPECT_EQ(compiled.initial_layout.size(), 8U);
}

TEST_F(Cli, RunWritesReportsAndHonoursConfigFiles) {
  const auto first = cli(out("first") + " run --n 10 --m 0 2 --shots 2000");
  ASSERT_EQ(first.code, 0) << first.output;
  for (const char* file : {"config.json", "report.csv", "solutions.json"}) {
    EXPECT_TRUE(fs::exists(dir_ / "first" / file)) << file;
  }
  const auto replay = cli(out("second") + " --config " + (dir_ / "first" / "config.json").string() +
                          " run --n 5 --m 1");
  ASSERT_EQ(replay.code, 0) << replay.output;
  EXPECT_EQ(slurp(dir_ / "first" / "report.csv"), slurp(dir_ / "second" / "report.csv"));
}

TEST_F(Cli, CostAndLandscapeOutputs) {
  ASSERT_EQ(cli(out() + " cost --n 30").code, 0);
  const auto csv = slurp(dir_ / "cost.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "leg,m,kept_circuits,execution,access,n_batch,runtime_s,eps");
  EXPECT_NE(csv.find("baseline,0,1,no-batching,dedicated,1,92200,"), std::string::npos);
  EXPECT_NE(csv.find("fq10,10,512,batching,dedicated,1,"), std::string::npos);

  ASSERT_EQ(cli(out() + " landscape --n 8 --m 0 1 --rows 4 --cols 4").code, 0);
  EXPECT_TRUE(fs::exists(dir_ / "landscape_m1_ideal.csv"));
  EXPECT_TRUE(fs::exists(dir_ / "landscape_m1.csv"));
}

TEST_F(Cli, ExitCodes) {
  EXPECT_EQ(cli("").code, 2);
  EXPECT_EQ(cli("bogus").code, 2);
  EXPECT_EQ(cli("gen --n notanumber").code, 2);
  EXPECT_EQ(cli(out() + " run --n 8 --m 9").code, 2);
  EXPECT_EQ(cli(out() + " run --n 8 --m 0 --p 0").code, 2);
  EXPECT_EQ(cli(out() + " run --n 30 --m 0 --mode simulate").code, 3);
  EXPECT_EQ(cli(out() + " freeze --n 30 --m 21").code, 3);
  EXPECT_EQ(cli(out() + " gen --model /nonexistent/model.json").code, 2);
}

}  // namespace
