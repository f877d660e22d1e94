/* Copyright 2026 The biasdec Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "cli.h"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "oracles.h"

namespace biasdec {
namespace {

using testing::ProjectData;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun Cli(std::vector<std::string> args) {
  args.insert(args.begin(), "biasdec");
  std::ostringstream out, err;
  int code = RunCli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string Lm() { return ProjectData("instructions-3gram.arpa").string(); }
std::string RedBook() { return ProjectData("sample/red-book.ctcp").string(); }

TEST(CliTest, DecodeWithBias) {
  CliRun r = Cli({"decode", "--logits", RedBook(), "--lm", Lm(), "--bias", "red,book"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out, "bring me the red book\n");
  EXPECT_NE(r.err.find("candidates="), std::string::npos);
}

TEST(CliTest, DecodeBaseNeedsNoLm) {
  CliRun r = Cli({"decode", "--logits", RedBook(), "--mode", "base"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out, "bring me the read book\n");
}

TEST(CliTest, NBest) {
  CliRun r = Cli({"decode", "--logits", RedBook(), "--mode", "base", "--nbest", "2"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::istringstream in(r.out);
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) {
    ++lines;
    EXPECT_NE(line.find('\t'), std::string::npos);
  }
  EXPECT_EQ(lines, 2);
}

TEST(CliTest, LmFromEnvironment) {
  ::setenv("BIASDEC_LM", Lm().c_str(), 1);
  CliRun r = Cli({"decode", "--logits", RedBook(), "--bias", "red"});
  ::unsetenv("BIASDEC_LM");
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out, "bring me the red book\n");
}

TEST(CliTest, MissingLogitsIsUsageError) {
  EXPECT_EQ(Cli({"decode", "--mode", "base"}).code, kExitUsage);
}

TEST(CliTest, MissingLmIsUsageError) {
  EXPECT_EQ(Cli({"decode", "--logits", RedBook()}).code, kExitUsage);
}

TEST(CliTest, UnknownModeIsUsageError) {
  EXPECT_EQ(Cli({"decode", "--logits", RedBook(), "--mode", "nope"}).code, kExitUsage);
}

TEST(CliTest, ConflictingBiasSources) {
  EXPECT_EQ(Cli({"decode", "--logits", RedBook(), "--mode", "base", "--bias", "a",
                 "--bias-file", "x"})
                .code,
            kExitUsage);
}

TEST(CliTest, MissingFileIsUsageError) {
  EXPECT_EQ(Cli({"decode", "--logits", "/nonexistent.ctcp", "--mode", "base"}).code,
            kExitUsage);
}

TEST(CliTest, MalformedLogitsIsDataError) {
  CliRun r = Cli({"decode", "--logits", testing::TestData("toy.arpa").string(),
                  "--mode", "base"});
  EXPECT_EQ(r.code, kExitData);
  EXPECT_NE(r.err.find("error:"), std::string::npos);
}

TEST(CliTest, CorruptLmIsDataError) {
  CliRun r = Cli({"decode", "--logits", RedBook(), "--lm",
               testing::TestData("bad_record.arpa").string()});
  EXPECT_EQ(r.code, kExitData);
  EXPECT_NE(r.err.find("bad_record.arpa:20"), std::string::npos);
}

TEST(CliTest, PrintConfigPrecedence) {
  auto dir = testing::ScratchDir("cli");
  std::ofstream(dir / "c.cfg") << "gamma=2.5\nalpha=0.5\n";
  CliRun r = Cli({"decode", "--mode", "wb", "--config", (dir / "c.cfg").string(),
               "--alpha", "0.25", "--print-config"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("mode=wb"), std::string::npos);
  EXPECT_NE(r.out.find("gamma=2.5"), std::string::npos);
  EXPECT_NE(r.out.find("alpha=0.25"), std::string::npos);
  EXPECT_NE(r.out.find("beta=0.695"), std::string::npos);
}

TEST(CliTest, VersionAndHelp) {
  CliRun v = Cli({"--version"});
  EXPECT_EQ(v.code, kExitOk);
  EXPECT_FALSE(v.out.empty());
  EXPECT_EQ(Cli({"--help"}).code, kExitOk);
  EXPECT_EQ(Cli({}).code, kExitUsage);
}

TEST(CliTest, EvalIsReproducible) {
  std::vector<std::string> args = {"eval", "--count", "6", "--modes", "base,full",
                                   "--lm", Lm()};
  CliRun a = Cli(args);
  args.insert(args.end(), {"--jobs", "2"});
  CliRun b = Cli(args);
  ASSERT_EQ(a.code, kExitOk) << a.err;
  ASSERT_EQ(b.code, kExitOk) << b.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out.rfind("model,wer,werr,ta\nbase,", 0), 0u);
  EXPECT_NE(a.out.find("\nfull,"), std::string::npos);
}

TEST(CliTest, EvalUnknownRun) {
  EXPECT_EQ(Cli({"eval", "--modes", "base,bogus"}).code, kExitUsage);
}

TEST(CliTest, GenWritesLogits) {
  auto dir = testing::ScratchDir("gen");
  CliRun r = Cli({"gen", "--count", "3", "--logits-dir", dir.string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(std::filesystem::exists(dir / "chars.txt"));
  EXPECT_TRUE(std::filesystem::exists(dir / "utt-00000.ctcp"));
  CliRun d = Cli({"decode", "--logits", (dir / "utt-00002.ctcp").string(), "--vocab",
               (dir / "chars.txt").string(), "--mode", "base"});
  EXPECT_EQ(d.code, kExitOk) << d.err;
}

TEST(CliTest, TrieQuery) {
  CliRun r = Cli({"trie", "--bias", "red,read", "--query", "re"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("words=2"), std::string::npos);
  EXPECT_NE(r.out.find("query=re"), std::string::npos);
}

}  // namespace
}  // namespace biasdec
