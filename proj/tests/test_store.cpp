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

#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <filesystem>
#include <thread>

#include "crstip/codec.hpp"
#include "crstip/error.hpp"
#include "crstip/scheme_parser.hpp"
#include "crstip/store.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;

namespace crstip {
namespace {

class StoreTest : public ::testing::Test {
 protected:
  void SetUp() override {
    root_ = fs::temp_directory_path() /
            ("crstip-store-" + std::to_string(::getpid()) + "-" +
             ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(root_);
  }
  void TearDown() override { fs::remove_all(root_); }

  AssessmentSession fixture_session() {
    return session_from_json(
        Json::parse(testing::slurp(testing::fixture("medipedia-before.session.json"))));
  }

  fs::path root_;
};

std::string error_code(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return "";
}

TEST_F(StoreTest, SessionRoundTrip) {
  ProfileStore store(root_);
  AssessmentSession session = fixture_session();
  EXPECT_EQ(store.save_session(session), session.id);
  EXPECT_EQ(store.load_session(session.id), session);
  EXPECT_EQ(store.list_sessions(), std::vector<std::string>{session.id});
  EXPECT_EQ(testing::slurp(root_ / "sessions" / (session.id + ".json")),
            testing::slurp(testing::fixture("medipedia-before.session.json")));
}

TEST_F(StoreTest, UnknownId) {
  ProfileStore store(root_);
  EXPECT_EQ(error_code([&] { store.load_session("00000000-0000-4000-8000-00000000ffff"); }),
            codes::kNotFound);
  EXPECT_EQ(error_code([&] { store.load_profile("missing"); }), codes::kNotFound);
  EXPECT_EQ(error_code([&] { store.load_session("../etc/passwd"); }), codes::kNotFound);
}

TEST_F(StoreTest, TruncatedDocumentIsCorrupt) {
  ProfileStore store(root_);
  AssessmentSession session = fixture_session();
  std::string full = testing::slurp(testing::fixture("medipedia-before.session.json"));
  std::string cut = testing::slurp(testing::fixture("truncated.session.json"));
  ASSERT_EQ(cut, full.substr(0, 100));
  fs::copy_file(testing::fixture("truncated.session.json"),
                root_ / "sessions" / (session.id + ".json"));
  try {
    store.load_session(session.id);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), codes::kCorruptDocument);
    EXPECT_NE(std::string(e.what()).find(session.id + ".json"), std::string::npos);
  }
}

TEST_F(StoreTest, ProfilesAndSchemes) {
  ProfileStore store(root_);
  Profile before = profile_from_json(
      Json::parse(testing::slurp(testing::fixture("medipedia-before.profile.json"))));
  store.save_profile("medipedia-before", before);
  EXPECT_EQ(store.load_profile("medipedia-before"), before);
  store.save_scheme(builtin_scheme());
  EXPECT_EQ(store.load_scheme("crstip"), builtin_scheme());
  EXPECT_EQ(store.list_schemes(), std::vector<std::string>{"crstip"});
  EXPECT_EQ(testing::slurp(root_ / "schemes" / "crstip.json"),
            std::string(builtin_scheme_text()));
}

TEST_F(StoreTest, NoTemporaryFilesLeft) {
  ProfileStore store(root_);
  for (int i = 0; i < 20; ++i) store.save_session(fixture_session());
  int entries = 0;
  for (const auto& e : fs::directory_iterator(root_ / "sessions")) {
    ++entries;
    EXPECT_EQ(e.path().filename().string()[0] != '.', true);
  }
  EXPECT_EQ(entries, 1);
}

TEST_F(StoreTest, ConcurrentUpdatesAreSerialized) {
  ProfileStore store(root_);
  AssessmentSession session = fixture_session();
  session.answers.clear();
  store.save_session(session);
  std::vector<std::string> ids;
  for (const auto& area : builtin_scheme().areas)
    for (const auto& level : area.levels)
      for (const auto& ind : level.indicators) ids.push_back(ind.id);
  std::vector<std::thread> workers;
  for (std::size_t t = 0; t < ids.size(); ++t) {
    workers.emplace_back([&, t] {
      store.update_session(session.id, [&](AssessmentSession current) {
        return record_answer(builtin_scheme(), std::move(current), ids[t], AnswerValue::kYes,
                             "", system_environment());
      });
    });
  }
  for (auto& w : workers) w.join();
  EXPECT_EQ(store.load_session(session.id).answers.size(), ids.size());
}

TEST_F(StoreTest, KilledWriterLeavesOldOrNewDocument) {
  ProfileStore store(root_);
  AssessmentSession small = fixture_session();
  AssessmentSession large = small;
  large.subject.notes = std::string(1 << 20, 'x');
  store.save_session(small);
  const std::string old_text = testing::slurp(root_ / "sessions" / (small.id + ".json"));
  for (int round = 0; round < 12; ++round) {
    pid_t child = ::fork();
    ASSERT_GE(child, 0);
    if (child == 0) {
      ProfileStore writer(root_);
      for (int i = 0;; ++i) writer.save_session(i % 2 ? small : large);
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(5 + round * 3));
    ::kill(child, SIGKILL);
    int status = 0;
    ::waitpid(child, &status, 0);
    AssessmentSession loaded = store.load_session(small.id);
    EXPECT_TRUE(loaded == small || loaded == large) << "round " << round;
  }
  store.save_session(small);
  EXPECT_EQ(testing::slurp(root_ / "sessions" / (small.id + ".json")), old_text);
  EXPECT_EQ(store.list_sessions().size(), 1u);
}

TEST(DocumentIds, Validity) {
  EXPECT_TRUE(is_valid_document_id("crstip"));
  EXPECT_TRUE(is_valid_document_id("00000000-0000-4000-8000-000000000001"));
  EXPECT_FALSE(is_valid_document_id(""));
  EXPECT_FALSE(is_valid_document_id(".."));
  EXPECT_FALSE(is_valid_document_id("a/b"));
  EXPECT_FALSE(is_valid_document_id(".hidden"));
}

}  // namespace
}  // namespace crstip
