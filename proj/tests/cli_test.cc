// Copyright 2026 The objgoal Authors
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


#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gmock/gmock.h>
#include <gtest/gtest.h>

namespace {

namespace fs = std::filesystem;

int RunCli(const std::string& args) {
  const std::string command =
      std::string(OBJGOAL_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(command.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("objgoal_cli_" + std::string(::testing::UnitTest::GetInstance()
                                             ->current_test_info()
                                             ->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    std::ofstream(dir_ / "tiny.json") << R"({
      "env": "Push-Simple",
      "seeds": [1],
      "schedule": {"epochs": 1, "cycles_per_epoch": 1, "episodes_per_cycle": 2,
                   "updates_per_cycle": 2, "eval_rollouts": 3},
      "agent": {"hidden_width": 8, "hidden_layers": 1, "batch_size": 8},
      "object_stage": {
        "agent": {"hidden_width": 8, "hidden_layers": 1, "batch_size": 8},
        "schedule": {"epochs": 1, "cycles_per_epoch": 1, "episodes_per_cycle": 2,
                     "updates_per_cycle": 2, "eval_rollouts": 3},
        "dataset_episodes": 10, "filter_success": false,
        "imaginer": {"max_epochs": 2}
      }
    })";
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string Path(const std::string& name) const { return (dir_ / name).string(); }
  std::string Config() const { return "--config " + Path("tiny.json"); }

  fs::path dir_;
};

TEST_F(CliTest, HelpExitsZero) {
  EXPECT_EQ(RunCli("--help"), 0);
  EXPECT_EQ(RunCli("train-robot --help"), 0);
}

TEST_F(CliTest, UsageErrorsExitTwo) {
  EXPECT_EQ(RunCli(""), 2);
  EXPECT_EQ(RunCli("no-such-command"), 2);
  EXPECT_EQ(RunCli("train-robot --algo cher"), 2);
  EXPECT_EQ(RunCli("--config " + Path("missing.json") + " train-object"), 2);
  EXPECT_EQ(RunCli("evaluate"), 2);
  std::ofstream(Path("bad.json")) << R"({"env": "PnP-Simple-v1", "epohcs": 3})";
  EXPECT_EQ(RunCli("--config " + Path("bad.json") + " train-robot"), 2);
}

TEST_F(CliTest, ReproV1V2WritesATwoByTwoMatrix) {
  ASSERT_EQ(RunCli(Config() + " repro-v1v2 --out " + Path("m.csv")), 0);
  std::ifstream in(Path("m.csv"));
  std::string header, row1, row2, extra;
  std::getline(in, header);
  std::getline(in, row1);
  std::getline(in, row2);
  EXPECT_FALSE(std::getline(in, extra));
  EXPECT_EQ(header, "trained_on,tested_on_PnP-Simple-v1,tested_on_PnP-Simple-v2");
  EXPECT_THAT(row1, ::testing::StartsWith("PnP-Simple-v1,"));
  EXPECT_THAT(row2, ::testing::StartsWith("PnP-Simple-v2,"));
  EXPECT_EQ(std::count(row1.begin(), row1.end(), ','), 2);
}

TEST_F(CliTest, ObjectStagePipeline) {
  ASSERT_EQ(RunCli(Config() + " train-object --out " + Path("obj")), 0);
  ASSERT_EQ(RunCli(Config() + " gen-dataset --agent " + Path("obj") + " --out " +
                Path("ds.csv")),
            0);
  ASSERT_EQ(RunCli(Config() + " train-imaginer --dataset " + Path("ds.csv") +
                " --out " + Path("im.bin")),
            0);
  ASSERT_EQ(RunCli(Config() + " train-robot --algo fo --imaginer " + Path("im.bin") +
                " --out " + Path("runs")),
            0);
  EXPECT_TRUE(fs::exists(dir_ / "runs" / "Push-Simple_fo_seed1.csv"));
  EXPECT_TRUE(fs::exists(dir_ / "runs" / "curves.svg"));
  ASSERT_EQ(RunCli(Config() + " evaluate --agent " + Path("runs/agent_seed1") +
                " --out " + Path("eval.csv")),
            0);
  EXPECT_TRUE(fs::exists(dir_ / "eval.csv"));
  ASSERT_EQ(RunCli("plot " + Path("runs/Push-Simple_fo_seed1.csv") + " --out " +
                Path("p.svg")),
            0);
  EXPECT_TRUE(fs::exists(dir_ / "p.svg"));
}

}  // namespace
