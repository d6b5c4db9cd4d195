#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "json.hpp"

#ifndef LAMBEK_CLI
#error "LAMBEK_CLI must name the built command-line binary"
#endif

namespace {

struct Run {
  int rc = -1;
  std::string out;
};

std::string quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return q + "'";
}

Run run(const std::string& args) {
  Run r;
  const std::string cmd = std::string(LAMBEK_CLI) + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int st = pclose(p);
  r.rc = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

nlohmann::json js(const Run& r) { return nlohmann::json::parse(r.out); }

std::string temp_file(const std::string& name, const std::string& body) {
  auto path = std::filesystem::temp_directory_path() / ("lambek_cli_" + name);
  std::ofstream(path) << body;
  return path.string();
}

}  // namespace

TEST(Cli, ProveWithRecheck) {
  auto r = run("prove " + quote("=> ~p \\/ p") + " --recheck");
  ASSERT_EQ(r.rc, 0) << r.out;
  auto j = js(r);
  EXPECT_EQ(j["status"], "Proved");
  EXPECT_EQ(j["recheck"], true);
  EXPECT_TRUE(j.contains("proof"));
}

TEST(Cli, ProveRefutedAndUnknown) {
  auto r = run("prove " + quote("=> p"));
  ASSERT_EQ(r.rc, 0) << r.out;
  EXPECT_EQ(js(r)["status"], "Refuted");
  auto u = run("--format text prove " + quote("p o (p \\ q) => q") + " --budget goals:1");
  EXPECT_EQ(u.rc, 2) << u.out;
  EXPECT_NE(u.out.find("Unknown"), std::string::npos);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run("prove --system nope " + quote("p => p")).rc, 1);
  EXPECT_EQ(run("prove " + quote("p => p") + " --budget depth:0").rc, 1);
  EXPECT_EQ(run("prove " + quote("p =>")).rc, 1);
  EXPECT_EQ(run("frobnicate").rc, 1);
  EXPECT_EQ(run("translate --to sideways p").rc, 1);
}

TEST(Cli, Translate) {
  auto r = run("translate --to dagger " + quote("<>p"));
  ASSERT_EQ(r.rc, 0) << r.out;
  EXPECT_EQ(js(r)["output"], "m * p");
  auto t = run("--format text translate --to ddagger " + quote("~(p /\\ q)"));
  ASSERT_EQ(t.rc, 0) << t.out;
  EXPECT_NE(t.out.find("p{p} \\/ p{q}"), std::string::npos) << t.out;
}

TEST(Cli, ProveWithAssumptionFile) {
  auto f = temp_file("phi.txt", "# chain\np => q\nq => r\n");
  auto r = run("prove --assumptions " + f + " " + quote("p => r") + " --recheck");
  ASSERT_EQ(r.rc, 0) << r.out;
  EXPECT_EQ(js(r)["status"], "Proved");
  EXPECT_EQ(js(r)["recheck"], true);
}

TEST(Cli, CheckDerivationFile) {
  auto r = run("prove " + quote("p /\\ q => q"));
  ASSERT_EQ(r.rc, 0);
  auto f = temp_file("proof.json", js(r)["proof"].dump());
  auto c = run("check " + f);
  ASSERT_EQ(c.rc, 0) << c.out;
  EXPECT_EQ(js(c)["valid"], true);
  auto bad = js(r)["proof"];
  bad["rule"] = "top";
  auto g = temp_file("bad.json", bad.dump());
  EXPECT_EQ(js(run("check " + g))["valid"], false);
}

TEST(Cli, ModelcheckAndBuildmodel) {
  auto k = temp_file("k.json", R"({"states":["w","u"],"rel":[["w","u"]],"val":{"p":["u"]}})");
  auto r = run("modelcheck " + k + " " + quote("<>p") + " --state w");
  ASSERT_EQ(r.rc, 0) << r.out;
  EXPECT_EQ(js(r)["holds"], true);
  auto b = run("buildmodel " + k + " --variant plain");
  ASSERT_EQ(b.rc, 0) << b.out;
  auto j = js(b);
  EXPECT_EQ(j["states"].size(), 4u);
  EXPECT_EQ(j["rel"].size(), 1u);
  auto t = temp_file("j.json", b.out);
  auto m = run("modelcheck " + t + " " + quote("m * p") + " --state w_1");
  EXPECT_EQ(js(m)["holds"], true);
  auto u = run("buildmodel " + k + " --variant unit");
  ASSERT_EQ(u.rc, 0) << u.out;
  EXPECT_TRUE(js(u).contains("unit"));
}

TEST(Cli, CountermodelAndKdecide) {
  auto c = run("countermodel " + quote("p * q => q * p"));
  ASSERT_EQ(c.rc, 0) << c.out;
  EXPECT_EQ(js(c)["found"], true);
  EXPECT_EQ(run("countermodel " + quote("=> p \\/ ~p")).rc, 2);
  auto k = run("kdecide " + quote("[]p -> p"));
  ASSERT_EQ(k.rc, 0);
  EXPECT_EQ(js(k)["verdict"], "Invalid");
  EXPECT_EQ(js(run("kdecide " + quote("[](p -> q) -> ([]p -> []q)")))["verdict"], "Valid");
}

TEST(Cli, Pipeline) {
  auto r = run("pipeline " + quote("[](p -> q) -> ([]p -> []q)") + " --run-prover");
  ASSERT_EQ(r.rc, 0) << r.out;
  auto j = js(r);
  EXPECT_EQ(j["status"], "Proved");
  EXPECT_EQ(j["system"], "dfnl-star");
  EXPECT_EQ(js(run("pipeline p --run-prover"))["status"], "Refuted");
}
