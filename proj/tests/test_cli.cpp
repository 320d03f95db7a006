#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "json.hpp"

namespace {

struct Run {
  int status;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + BICAT_CLI_PATH + std::string(" ") + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf;
  while (std::size_t n = fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), n);
  const int st = pclose(p);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

std::string fx(const std::string& n) { return std::string(BICAT_FIXTURE_DIR) + "/" + n; }
const std::string kProbes = std::string("--probes ") + BICAT_PROBE_DIR;

std::string tmp(const std::string& n) {
  return (std::filesystem::temp_directory_path() / ("bicat_cli_test_" + n)).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST(Cli, ValidateSplit) {
  auto r = run("validate " + fx("split.bicat"));
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "bicategory: ok\n");
  r = run("validate " + fx("split.bicat") + " --format json");
  EXPECT_EQ(r.status, 0);
  EXPECT_TRUE(nlohmann::json::parse(r.out).at("bicategory").empty());
}

TEST(Cli, ValidateReportsBrokenAxiom) {
  std::string text = slurp(fx("split.bicat"));
  const auto at = text.find("e . e = e");
  ASSERT_NE(at, std::string::npos);
  text.replace(at, 9, "e . e = id_Y");
  const auto p = tmp("broken.bicat");
  std::ofstream(p) << text;
  auto r = run("validate " + p);
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.out.find("strict-assoc1: s . r . e"), std::string::npos) << r.out;
}

TEST(Cli, ValidatePseudofunctor) {
  auto r = run("validate " + fx("chain.bicat") + " --functor " + fx("chain_to_idem.functor") + " --target " + fx("idem.bicat"));
  EXPECT_EQ(r.status, 0) << r.out;
  EXPECT_NE(r.out.find("pseudofunctor: ok"), std::string::npos);
}

TEST(Cli, LocalizeRejectsUnderClosedSigma) {
  auto r = run("localize " + fx("split.bicat") + " --sigma id_X,id_Y,s,r");
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.out.find("s . r ~ e with e not in sigma"), std::string::npos) << r.out;
}

TEST(Cli, LocalizeCertificateIsDeterministicAndReplays) {
  const auto a = tmp("cert_a.json"), b = tmp("cert_b.json");
  const std::string base = "localize " + fx("split.bicat") + " --max-len 2 --format json " + kProbes;
  ASSERT_EQ(run(base + " --out " + a).status, 0);
  ASSERT_EQ(run(base + " --out " + b).status, 0);
  const std::string ca = slurp(a);
  EXPECT_EQ(ca, slurp(b));
  const auto j = nlohmann::json::parse(ca);
  EXPECT_EQ(j.at("schema_version"), 1);
  EXPECT_TRUE(j.at("complete").get<bool>());
  EXPECT_EQ(j.at("equivalences").size(), 5u);
  for (const char* k : {"three_for_two", "decompositions", "equivalences", "i_functoriality", "probes_used"})
    EXPECT_TRUE(j.contains(k)) << k;
  auto r = run("localize " + fx("split.bicat") + " --replay " + a);
  EXPECT_EQ(r.status, 0) << r.out;

  auto bad = j;
  bool done = false;
  for (auto& e : bad["equivalences"])
    for (auto& c : e["checks"])
      for (auto& s : c["derivation"]["steps"])
        if (!done && s["rule"] != "decompose") {
          s["pos"] = s["pos"].get<int>() + 1;
          done = true;
        }
  ASSERT_TRUE(done);
  const auto p = tmp("cert_bad.json");
  std::ofstream(p) << bad.dump();
  r = run("localize " + fx("split.bicat") + " --replay " + p);
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.out.find("does not apply"), std::string::npos) << r.out;
}

TEST(Cli, ReplayRejectsSwappedWitness) {
  const auto a = tmp("cert_w.json");
  ASSERT_EQ(run("localize " + fx("split.bicat") + " --max-len 2 --format json --out " + a).status, 0);
  auto j = nlohmann::json::parse(slurp(a));
  std::swap(j["equivalences"][0]["unit"], j["equivalences"][0]["counit"]);
  std::ofstream(a) << j.dump();
  EXPECT_EQ(run("localize " + fx("split.bicat") + " --replay " + a).status, 1);
}

TEST(Cli, HoEqVerdictsMapToExitCodes) {
  auto r = run("ho-eq " + fx("split.bicat") + " " + fx("split.htpy") + " \"Hi . H\" e");
  EXPECT_EQ(r.status, 0) << r.out;
  EXPECT_NE(r.out.find("merge-cylinder"), std::string::npos);
  EXPECT_NE(r.out.find("trivial-cylinder"), std::string::npos);
  r = run("ho-eq " + fx("grpd.bicat") + " /dev/null g id_pt " + kProbes);
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.out.find("Distinct"), std::string::npos);
  r = run("ho-eq " + fx("grpd.bicat") + " /dev/null g id_pt --no-self");
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.out.find("Unknown"), std::string::npos);
  r = run("ho-eq " + fx("grpd.bicat") + " /dev/null g id_pt --no-self", "BICAT_PROBE_DIR=" + std::string(BICAT_PROBE_DIR));
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.out.find("probe grpd#0"), std::string::npos) << r.out;
}

TEST(Cli, HoEqUsageErrors) {
  EXPECT_EQ(run("ho-eq " + fx("split.bicat") + " " + fx("split.htpy") + " H id_Y").status, 3);
  EXPECT_EQ(run("ho-eq " + fx("split.bicat") + " " + fx("split.htpy") + " nosuch e").status, 3);
  EXPECT_EQ(run("ho-eq " + fx("split.bicat") + " " + fx("split.htpy") + " H e --budget 0").status, 3);
}

TEST(Cli, Hat) {
  auto r = run("hat " + fx("split.bicat") + " " + fx("split.htpy") + " H --functor " + fx("split_to_iso.functor") + " --target " +
               fx("iso.bicat") + " --format json");
  ASSERT_EQ(r.status, 0) << r.out;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("from"), j.at("to"));
  r = run("hat " + fx("split.bicat") + " " + fx("split.htpy") + " C");
  EXPECT_EQ(r.status, 3);
  EXPECT_NE(r.out.find("not a quasiequivalence"), std::string::npos);
}

TEST(Cli, ExtendProbesAndPseudofunctor) {
  auto r = run("extend " + fx("split.bicat") + " --homotopies " + fx("split.htpy") + " " + kProbes);
  EXPECT_EQ(r.status, 0) << r.out;
  EXPECT_NE(r.out.find("grpd#0"), std::string::npos);
  EXPECT_EQ(r.out.find("violations"), std::string::npos);
  r = run("extend " + fx("split.bicat") + " --homotopies " + fx("split.htpy") + " --functor " + fx("split_to_iso.functor") +
          " --target " + fx("iso.bicat"));
  EXPECT_EQ(r.status, 0) << r.out;
}

TEST(Cli, ElevatorBothSidesOfTheMove) {
  auto r = run("elevator " + fx("square.computad") + " \"1 * b * f ; g2 * a * 1\" \"g * a * 1 ; 1 * b * f2\"");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("equal: yes"), std::string::npos);
  const auto first = r.out.find("normal form: "), second = r.out.find("normal form: ", first + 1);
  ASSERT_NE(second, std::string::npos);
  EXPECT_EQ(r.out.substr(first, r.out.find('\n', first) - first), r.out.substr(second, r.out.find('\n', second) - second));
}

TEST(Cli, UsageAndParseErrors) {
  EXPECT_EQ(run("").status, 3);
  EXPECT_EQ(run("bogus").status, 3);
  EXPECT_EQ(run("localize " + fx("split.bicat") + " --max-len 0").status, 3);
  EXPECT_EQ(run("validate /nonexistent.bicat").status, 3);
  EXPECT_EQ(run("validate " + fx("split.bicat") + " --format xml").status, 3);
  const auto p = tmp("garbage.bicat");
  std::ofstream(p) << "objects: X\narrows:\n  f : X -> Q\n";
  auto r = run("validate " + p);
  EXPECT_EQ(r.status, 3);
  EXPECT_NE(r.out.find("line 3"), std::string::npos) << r.out;
}

TEST(Cli, SigmaCheck) {
  auto r = run("sigma-check " + fx("split.bicat") + " --format json");
  ASSERT_EQ(r.status, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j.at("three_for_two").at("ok").get<bool>());
  bool found = false;
  for (const auto& row : j.at("w_split"))
    if (row.at("arrow") == "e") {
      found = true;
      EXPECT_EQ(row.at("decomposition"), nlohmann::json::array({"s", "r"}));
    }
  EXPECT_TRUE(found);
  EXPECT_EQ(run("sigma-check " + fx("split.bicat") + " --sigma id_X,id_Y,s,r").status, 1);
}
