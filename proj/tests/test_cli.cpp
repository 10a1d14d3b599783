// Copyright 2026 The CRSTIP Authors
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

#include <gtest/gtest.h>

#include <unistd.h>

#include <filesystem>

#include "flow.hpp"

namespace fs = std::filesystem;

namespace crstip {
namespace {

using testing::run_cli;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("crstip-cli-" + std::to_string(::getpid()) + "-" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  static std::string fixture(const std::string& name) { return testing::fixture(name).string(); }

  fs::path dir_;
};

TEST_F(CliTest, ValidateBundledScheme) {
  auto r = run_cli({"validate", (testing::source_dir() / "assets" / "crstip.scheme.json").string()});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "");
  EXPECT_EQ(r.err, "");
  EXPECT_EQ(run_cli({"validate", "builtin:crstip"}).code, 0);
}

TEST_F(CliTest, ValidateBrokenScheme) {
  auto r = run_cli({"validate", fixture("tooling-ranks-1224.scheme.json")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find(":223:19: error: DUPLICATE_RANK"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("NON_CONTIGUOUS_RANKS"), std::string::npos);
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(run_cli({}).code, 2);
  EXPECT_EQ(run_cli({"frobnicate"}).code, 2);
  EXPECT_EQ(run_cli({"report"}).code, 2);
  EXPECT_EQ(run_cli({"report", path("missing.json")}).code, 3);
  EXPECT_EQ(run_cli({"report", fixture("truncated.session.json")}).code, 1);
  EXPECT_EQ(run_cli({"roadmap", fixture("medipedia-before.session.json"), "--target", "tooling=7"})
                .code,
            1);
  EXPECT_EQ(run_cli({"--help"}).code, 0);
}

TEST_F(CliTest, ScriptedAssessMatchesFixture) {
  auto r = run_cli({"assess", "--subject", "Medipedia", "--answers",
                    fixture("medipedia-before.answers"), "--out", path("s.json"), "--id",
                    testing::kBeforeId, "--now", testing::kBeforeNow});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(testing::slurp(path("s.json")),
            testing::slurp(testing::fixture("medipedia-before.session.json")));
}

TEST_F(CliTest, InteractiveAssess) {
  std::string input = "y\nmaybe\ny   keeps a checklist\nskip\n";
  auto r = run_cli({"assess", "--subject", "Medipedia", "--out", path("s.json"), "--json"}, input);
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("please answer y, n, u or skip"), std::string::npos);
  Json session = Json::parse(testing::slurp(path("s.json")));
  EXPECT_EQ(session.at("answers").size(), 2u);
  EXPECT_EQ(session.at("answers").at("compliance.2.2").at("note"), "keeps a checklist");
}

TEST_F(CliTest, ReportAndRoadmapGoldens) {
  std::string session = fixture("medipedia-before.session.json");
  auto report = run_cli({"report", session});
  EXPECT_EQ(report.code, 0);
  EXPECT_EQ(report.out, testing::slurp(testing::golden("medipedia-before.report.txt")));
  EXPECT_EQ(run_cli({"report", session, "--json"}).out,
            testing::slurp(testing::golden("medipedia-before.report.json")));
  auto roadmap = run_cli({"roadmap", session, "--target", "all=4"});
  EXPECT_EQ(roadmap.code, 0);
  EXPECT_EQ(roadmap.out, testing::slurp(testing::golden("medipedia-before.roadmap.txt")));
  std::size_t tooling = roadmap.out.find("Tool support and integration -> level 3");
  std::size_t risk = roadmap.out.find("Security risk assessment -> level 4");
  ASSERT_NE(tooling, std::string::npos);
  EXPECT_LT(tooling, risk);
}

TEST_F(CliTest, CompareIdenticalIsZero) {
  std::string p = fixture("medipedia-before.profile.json");
  auto r = run_cli({"compare", p, p, "--json"});
  ASSERT_EQ(r.code, 0);
  for (const auto& area : Json::parse(r.out).at("areas")) EXPECT_EQ(area.at("delta"), 0);
  auto text = run_cli({"compare", fixture("medipedia-before.profile.json"),
                       fixture("medipedia-after.profile.json")});
  EXPECT_EQ(text.out, testing::slurp(testing::golden("medipedia.compare.txt")));
}

TEST_F(CliTest, RenderGolden) {
  auto r = run_cli({"render", fixture("medipedia-before.profile.json"),
                    fixture("medipedia-after.profile.json"), "--out", path("chart.svg")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(testing::slurp(path("chart.svg")),
            testing::slurp(testing::golden("medipedia.radar.svg")));
  auto stdout_run = run_cli({"render", fixture("medipedia-before.session.json")});
  EXPECT_EQ(stdout_run.code, 0);
  EXPECT_EQ(stdout_run.out.rfind("<?xml", 0), 0u);
  EXPECT_EQ(run_cli({"render", fixture("medipedia-before.profile.json"), "--names", "a,b"}).code,
            1);
}

TEST_F(CliTest, ProfileOutMatchesFixture) {
  auto r = run_cli({"report", fixture("medipedia-after.session.json"), "--profile-out",
                    path("p.json")});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(testing::slurp(path("p.json")),
            testing::slurp(testing::fixture("medipedia-after.profile.json")));
}

}  // namespace
}  // namespace crstip
