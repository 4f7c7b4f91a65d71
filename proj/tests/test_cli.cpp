#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "pctlab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = pctlab::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream in(s);
  for (std::string f; std::getline(in, f, ',');) v.push_back(f);
  return v;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("pctlab_test_" + name);
}

}  // namespace

TEST(Cli, SpectrumOfConstantMassOscillator) {
  const auto r = run({"spectrum", "--case", "ho", "--gamma", "0", "--alpha", "1", "--param", "omega=1", "--d", "3",
                      "--ell", "0", "--nr-max", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 4u);
  EXPECT_EQ(ls[0], "case,n_r,ell,d,param_hash,E_reference,E_closed,flag");
  EXPECT_EQ(split(ls[1])[6], "1.5");
  EXPECT_EQ(split(ls[2])[6], "3.5");
  EXPECT_EQ(split(ls[3])[6], "5.5");
}

TEST(Cli, VerifyCoulombPasses) {
  const auto r = run({"verify", "--case", "coulomb", "--gamma", "0", "--alpha", "1", "--param", "A=1", "--d", "3",
                      "--ell", "0", "--nr-max", "1", "--grid-n", "6000"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 3u);
  EXPECT_EQ(ls[0],
            "case,n_r,ell,d,param_hash,E_closed,E_numeric,abs_err,rel_err,residual_l2,norm_defect,flag,passed");
  for (std::size_t i = 1; i < ls.size(); ++i) {
    const auto f = split(ls[i]);
    EXPECT_LE(std::stod(f[8]), 1e-5);
    EXPECT_EQ(f[12], "true");
  }
}

TEST(Cli, MorseBothFlagsReportsTheWinner) {
  const auto r = run({"verify", "--case", "morse-gm2", "--param", "A=2", "--alpha", "1", "--d", "3", "--flag", "both"});
  EXPECT_EQ(r.code, 0) << r.err;
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 3u);
  EXPECT_EQ(split(ls[1])[11], "as-printed");
  EXPECT_EQ(split(ls[1])[12], "false");
  EXPECT_EQ(split(ls[2])[11], "re-derived");
  EXPECT_EQ(split(ls[2])[12], "true");
  EXPECT_NE(r.err.find("re-derived passes"), std::string::npos);
}

TEST(Cli, CasesListsNine) {
  const auto r = run({"cases"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(lines(r.out).size(), 10u);
}

TEST(Cli, OutputIsByteIdentical) {
  const std::vector<std::string> args{"verify", "--case", "kratzer", "--param", "A=1", "--param", "beta=0.5",
                                      "--gamma", "1", "--nr-max", "2", "--ell", "1", "--jobs", "3"};
  const auto a = run(args);
  const auto b = run(args);
  EXPECT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, JobsDoNotChangeRowOrder) {
  std::vector<std::string> args{"verify", "--case", "ho", "--param", "omega=1", "--nr-max", "3"};
  const auto serial = run(args);
  args.insert(args.end(), {"--jobs", "4"});
  const auto parallel = run(args);
  EXPECT_EQ(serial.out, parallel.out);
}

TEST(Cli, JsonMirrorsCsvRows) {
  const auto r = run({"verify", "--case", "hulthen", "--alpha", "0.5", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  ASSERT_TRUE(j.is_array());
  ASSERT_EQ(j.size(), 2u);
  for (const auto& row : j) {
    EXPECT_TRUE(row.is_object());
    for (const auto& [k, v] : row.items()) EXPECT_FALSE(v.is_structured()) << k;
    EXPECT_EQ(row["n_r"], 1);
  }
  EXPECT_EQ(j[0]["flag"], "as-printed");
  EXPECT_EQ(j[1]["passed"], true);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"spectrum", "--case", "ho", "--param", "bogus=1"}).code, 1);
  EXPECT_EQ(run({"spectrum", "--case", "nowhere"}).code, 1);
  EXPECT_EQ(run({"spectrum", "--case", "ho", "--param", "omega=x"}).code, 1);
  EXPECT_EQ(run({"spectrum", "--case", "ho", "--param", "omega=1", "--format", "xml"}).code, 1);
  EXPECT_EQ(run({"spectrum", "--case", "ho", "--param", "omega=1", "--d", "1"}).code, 1);
  EXPECT_EQ(run({"frobnicate"}).code, 1);
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"verify", "--case", "hulthen", "--alpha", "0.5", "--flag", "as-printed"}).code, 2);
  // A window so narrow that the inverse-square wall overflows at the nodes.
  EXPECT_EQ(run({"verify", "--case", "spiked-ho-gm2", "--param", "C=1", "--q-min", "0", "--q-max", "1e-300",
                 "--grid-n", "50"})
                .code,
            3);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, TightToleranceFailsVerification) {
  const auto r = run({"verify", "--case", "ho", "--param", "omega=1", "--tol-energy", "1e-16"});
  EXPECT_EQ(r.code, 2);
}

TEST(Cli, ConfigFileWithCommandLineOverride) {
  const auto path = temp_file("config.txt");
  {
    std::ofstream f(path);
    f << "# oscillator\ncase = ho\nparam = omega=2\nnr_max = 1\nd = 3\n";
  }
  const auto a = run({"spectrum", "--config", path.string()});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(split(lines(a.out)[1])[6], "3");
  const auto b = run({"spectrum", "--config", path.string(), "--param", "omega=1", "--nr-max", "0"});
  ASSERT_EQ(b.code, 0) << b.err;
  ASSERT_EQ(lines(b.out).size(), 2u);
  EXPECT_EQ(split(lines(b.out)[1])[6], "1.5");
  {
    std::ofstream f(path);
    f << "case = ho\ncolour = blue\n";
  }
  EXPECT_EQ(run({"spectrum", "--config", path.string()}).code, 1);
  std::filesystem::remove(path);
}

TEST(Cli, OutFileReceivesTable) {
  const auto path = temp_file("out.csv");
  const auto r = run({"cases", "--out", path.string()});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  EXPECT_EQ(lines(ss.str()).size(), 10u);
  std::filesystem::remove(path);
}

TEST(Cli, WavefunctionAndPotentialTables) {
  const auto w = run({"wavefunction", "--case", "poschl-teller", "--param", "kappa=2", "--param", "tau=3",
                      "--samples", "20"});
  ASSERT_EQ(w.code, 0) << w.err;
  EXPECT_EQ(lines(w.out).size(), 21u);
  const auto p = run({"potential", "--case", "spiked-ho-gm2", "--param", "C=1", "--samples", "15", "--flag", "both"});
  ASSERT_EQ(p.code, 0) << p.err;
  EXPECT_EQ(lines(p.out).size(), 16u);
}

TEST(Cli, DegeneracyTable) {
  const auto r = run({"degeneracy", "--case", "ho", "--param", "omega=1", "--gamma", "1", "--ell", "2", "--d", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 4u);
  EXPECT_EQ(split(ls[1]).back(), "false");
  const auto g0 = run({"degeneracy", "--case", "coulomb", "--param", "A=1", "--ell", "3", "--d", "2"});
  EXPECT_EQ(split(lines(g0.out)[1]).back(), "true");
}

TEST(Cli, PoschlTellerEtaNote) {
  const auto r = run({"spectrum", "--case", "poschl-teller", "--param", "kappa=2", "--param", "tau=3"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.err.find("pt eta printed (7.875, 1.875, -9.25)"), std::string::npos);
}

TEST(ParamHash, CanonicalAndStable) {
  const pctlab::ParamMap a{{"A", 1.0}, {"gamma", 0.0}};
  const pctlab::ParamMap b{{"gamma", 0.0}, {"A", 1.0}};
  EXPECT_EQ(pctlab::cli::param_hash(a), pctlab::cli::param_hash(b));
  EXPECT_NE(pctlab::cli::param_hash(a), pctlab::cli::param_hash({{"A", 1.0}, {"gamma", 0.5}}));
  EXPECT_EQ(pctlab::cli::param_hash({}), "cbf29ce484222325");
  EXPECT_EQ(pctlab::cli::param_hash(a).size(), 16u);
}

TEST(FormatNumber, SeventeenDigits) {
  EXPECT_EQ(pctlab::cli::format_number(0.1), "0.10000000000000001");
  EXPECT_EQ(pctlab::cli::format_number(1.5), "1.5");
}
