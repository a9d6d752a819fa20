#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <nlohmann/json.hpp>
#include <sstream>

#include "cli.hpp"
#include "dglab/errors.hpp"
#include "manifest.hpp"

namespace fs = std::filesystem;
using namespace dglab;
using namespace dglab::cli;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("dglab_cli_" + tag + "_" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

int invoke(std::vector<std::string> args, std::string* out_text = nullptr, std::string* err_text = nullptr) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  if (out_text) *out_text = out.str();
  if (err_text) *err_text = err.str();
  return code;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(is), {}};
}

nlohmann::json manifest_of(const fs::path& dir) { return nlohmann::json::parse(slurp(dir / "manifest.json")); }

}  // namespace

TEST(ParseInit, Examples) {
  const RealCircleField a = parse_init("-sin+0.1sin2");
  EXPECT_NEAR(std::abs(a[1] - cplx(0, 0.5)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(a[2] - cplx(0, -0.05)), 0.0, 1e-15);

  const RealCircleField b = parse_init("1 - cos");
  EXPECT_DOUBLE_EQ(b[0].real(), 1.0);
  EXPECT_DOUBLE_EQ(b[1].real(), -0.5);

  const RealCircleField c = parse_init("0.5*cos 3");
  EXPECT_EQ(c.max_mode(), 3);
  EXPECT_DOUBLE_EQ(c[3].real(), 0.25);
  EXPECT_DOUBLE_EQ(c[1].real(), 0.0);
}

TEST(ParseInit, Malformed) {
  EXPECT_THROW(parse_init(""), InputError);
  EXPECT_THROW(parse_init("sin+"), InputError);
  EXPECT_THROW(parse_init("tan"), InputError);
  EXPECT_THROW(parse_init("*sin"), InputError);
  EXPECT_THROW(parse_init("sin cos"), InputError);
}

TEST(ParseGrid, RangeAndList) {
  const auto g = parse_grid("0.25:0.25:1");
  ASSERT_EQ(g.size(), 4u);
  EXPECT_DOUBLE_EQ(g.back(), 1.0);
  const auto l = parse_grid("1,2.5,3");
  ASSERT_EQ(l.size(), 3u);
  EXPECT_DOUBLE_EQ(l[1], 2.5);
  EXPECT_THROW(parse_grid("1:0:2"), InputError);
  EXPECT_THROW(parse_grid("a,b"), InputError);
}

TEST(ParseConfig, CommentsAndDashes) {
  std::istringstream is("# run settings\nn = 64\n--dt=0.01  # step\n\n");
  const auto m = parse_config(is);
  EXPECT_EQ(m.at("n"), "64");
  EXPECT_EQ(m.at("dt"), "0.01");
  std::istringstream bad("n 64\n");
  EXPECT_THROW(parse_config(bad), InputError);
}

TEST(OutputDir, EnvironmentPrefix) {
  ::setenv("DG_LAB_OUT", "/tmp/dglab_prefix", 1);
  EXPECT_EQ(resolve_output_dir("runs/a"), fs::path("/tmp/dglab_prefix/runs/a"));
  EXPECT_EQ(resolve_output_dir("/abs/b"), fs::path("/abs/b"));
  ::unsetenv("DG_LAB_OUT");
  EXPECT_EQ(resolve_output_dir("runs/a"), fs::path("runs/a"));
}

TEST(Cli, UnknownFlagIsUsageError) {
  TempDir d("flag");
  EXPECT_EQ(invoke({"simulate", "--bogus", "1", "--out", d.path.string()}), kExitUsage);
  EXPECT_EQ(invoke({}), kExitUsage);
  EXPECT_EQ(invoke({"oracle", "--model", "nope", "--init", "cos", "--out", d.path.string()}), kExitUsage);
}

TEST(Cli, MalformedFieldFileIsUsageError) {
  TempDir d("dgf");
  const fs::path bad = d.path / "bad.dgf1";
  std::ofstream(bad) << "not a field file";
  const fs::path out = d.path / "run";
  std::string err;
  EXPECT_EQ(invoke({"invariants", "--input", bad.string(), "--out", out.string()}, nullptr, &err), kExitUsage);
  EXPECT_FALSE(err.empty());
  const auto man = manifest_of(out);
  EXPECT_EQ(man["exit_code"], kExitUsage);
}

TEST(Cli, OracleManifestChecksums) {
  TempDir d("oracle");
  std::string text;
  ASSERT_EQ(invoke({"oracle", "--model", "clm", "--init", "cos", "--t", "0.5", "--out", d.path.string()}, &text),
            kExitOk);
  EXPECT_NE(text.find("blow-up time 2"), std::string::npos);
  const auto man = manifest_of(d.path);
  EXPECT_EQ(man["subcommand"], "oracle");
  EXPECT_EQ(man["exit_code"], 0);
  ASSERT_GE(man["files"].size(), 2u);
  for (const auto& f : man["files"]) {
    const fs::path p = d.path / f["path"].get<std::string>();
    ASSERT_TRUE(fs::exists(p)) << p;
    EXPECT_EQ(f["size"].get<std::uintmax_t>(), fs::file_size(p));
    char hex[16];
    std::snprintf(hex, sizeof hex, "%08x", file_crc32(p));
    EXPECT_EQ(f["crc32"].get<std::string>(), hex);
  }
}

TEST(Cli, OracleTableMatchesSeries) {
  TempDir d("table");
  ASSERT_EQ(invoke({"oracle", "--model", "pushforward", "--init", "sin2", "--t", "1", "--n-out", "128", "--out",
                    d.path.string()}),
            kExitOk);
  std::istringstream is(slurp(d.path / "oracle.csv"));
  std::string line;
  std::getline(is, line);
  EXPECT_EQ(line, "theta,exact,series");
  int rows = 0;
  while (std::getline(is, line)) {
    double th, exact, series;
    ASSERT_EQ(std::sscanf(line.c_str(), "%lf,%lf,%lf", &th, &exact, &series), 3);
    EXPECT_NEAR(exact, series, 1e-12);
    ++rows;
  }
  EXPECT_GT(rows, 0);
}

TEST(Cli, DeterministicOutputs) {
  TempDir a("det_a"), b("det_b");
  const std::vector<std::string> base = {"simulate", "--model", "dg", "--init", "-sin+0.1sin2", "--n", "32",
                                         "--dt", "0.01", "--t", "0.5", "--record-every", "10"};
  auto with_out = [&](const fs::path& p) {
    auto v = base;
    v.push_back("--out");
    v.push_back(p.string());
    return v;
  };
  ASSERT_EQ(invoke(with_out(a.path)), kExitOk);
  ASSERT_EQ(invoke(with_out(b.path)), kExitOk);
  for (const char* f : {"timeseries.csv", "invariants.csv", "final.dgf1"})
    EXPECT_EQ(slurp(a.path / f), slurp(b.path / f)) << f;
}

TEST(Cli, BlowupExitsNumerical) {
  TempDir d("blowup");
  EXPECT_EQ(invoke({"simulate", "--model", "clm", "--init", "cos", "--n", "64", "--dt", "0.01", "--t", "1.5",
                    "--ceiling", "1.2", "--no-invariants", "--out", d.path.string()}),
            kExitNumerical);
  const auto man = manifest_of(d.path);
  EXPECT_EQ(man["exit_code"], kExitNumerical);
}

TEST(Cli, ConfigFileDefaultsYieldToFlags) {
  TempDir d("config");
  const fs::path cfg = d.path / "run.cfg";
  std::ofstream(cfg) << "model = clm\ninit = cos\nt = 0.25\n";
  const fs::path out = d.path / "run";
  ASSERT_EQ(invoke({"oracle", "--config", cfg.string(), "--t", "0.5", "--out", out.string()}), kExitOk);
  const auto man = manifest_of(out);
  EXPECT_EQ(man["config"]["model"], "clm");
  EXPECT_DOUBLE_EQ(man["config"]["t"].get<double>(), 0.5);
}
