#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "commands.hpp"
#include "golden.hpp"

namespace fs = std::filesystem;
using namespace equispectra::cli;

namespace {

struct Outcome {
  int code;
  Json report;
  std::string err;
};

template <typename F>
Outcome capture(F&& f) {
  std::ostringstream out, err;
  const int code = f(out, err);
  return {code, Json::parse(out.str()), err.str()};
}

fs::path scratch(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / ("equispectra_cli_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string write_file(const fs::path& path, const std::string& text) {
  std::ofstream(path, std::ios::binary) << text;
  return path.string();
}

std::string slurp(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), {}};
}

std::string verdict(const Json& report, const std::string& name) {
  for (const auto& v : report["verdicts"])
    if (v["name"] == name) return v["verdict"].get<std::string>();
  return "missing";
}

Json random_matrix(std::size_t n, bool skew, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coeff(-9, 9);
  std::vector<std::vector<int>> m(n, std::vector<int>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const int v = (skew && i == j) ? 0 : coeff(rng);
      m[i][j] = v;
      m[j][i] = skew ? -v : v;
    }
  return Json(m);
}

}  // namespace

TEST(CliTest, MalformedPencilReportsLineAndColumn) {
  const fs::path dir = scratch("malformed");
  const auto path = write_file(dir / "bad.json", "{\"n\": 1,\n \"d\": 1,\n \"matrices\": [[[\"1\"]], ]\n}");
  Outcome r = capture([&](auto& out, auto& err) {
    return run_equivariantize({path, "trivial:1", "", ""}, GlobalOptions{}, out, err);
  });
  EXPECT_EQ(r.code, kInputError);
  EXPECT_EQ(r.report["error_location"]["line"], 3);
  EXPECT_GT(r.report["error_location"]["column"].get<int>(), 1);
  EXPECT_NE(r.err.find("bad.json:3:"), std::string::npos);
}

TEST(CliTest, MissingInputIsInputError) {
  Outcome r = capture([&](auto& out, auto& err) {
    return run_equivariantize({"/nonexistent/pencil.json", "disk-so2", "", ""}, GlobalOptions{}, out, err);
  });
  EXPECT_EQ(r.code, kInputError);
}

TEST(CliTest, EquivariantizeDiskMatchesGolden) {
  Outcome r = capture([&](auto& out, auto& err) {
    return run_equivariantize({"disk", "disk-so2", "", ""}, GlobalOptions{}, out, err);
  });
  ASSERT_EQ(r.code, kSuccess) << r.err;
  EXPECT_EQ(golden_view(r.report["equivariant"]), golden("disk"));
}

TEST(CliTest, EquivariantizeWritesIdenticalDocuments) {
  const fs::path a = scratch("repeat_a"), b = scratch("repeat_b");
  for (const auto& dir : {a, b}) {
    GlobalOptions opts;
    opts.out = dir.string();
    Outcome r = capture([&](auto& out, auto& err) {
      return run_equivariantize({"hermitian", "hermitian-su2", "", ""}, opts, out, err);
    });
    ASSERT_EQ(r.code, kSuccess) << r.err;
    ASSERT_EQ(r.report["outputs"].size(), 1u);
  }
  const std::string first = slurp(a / "equivariant.json");
  EXPECT_FALSE(first.empty());
  EXPECT_EQ(first, slurp(b / "equivariant.json"));
  EXPECT_EQ(first.find("timing"), std::string::npos);
}

TEST(CliTest, EquivarianceCheckOnWrittenDocument) {
  const fs::path dir = scratch("equivariance");
  GlobalOptions opts;
  opts.out = dir.string();
  capture([&](auto& out, auto& err) { return run_equivariantize({"disk", "disk-so2", "", ""}, opts, out, err); });
  Outcome r = capture([&](auto& out, auto& err) {
    return run_check({"equivariance", {(dir / "equivariant.json").string(), "disk-so2"}}, GlobalOptions{}, out, err);
  });
  EXPECT_EQ(r.code, kSuccess);
  EXPECT_EQ(verdict(r.report, "equivariance"), "pass");
}

TEST(CliTest, ReduceDimensionCounts) {
  const fs::path dir = scratch("reduce");
  struct Case {
    std::string family;
    std::size_t n, original, reduced;
  };
  for (const Case& c : {Case{"sym", 3, 6, 3}, Case{"skew", 4, 6, 2}, Case{"skew", 5, 10, 2}}) {
    const auto path = write_file(dir / (c.family + std::to_string(c.n) + ".json"),
                                 random_matrix(c.n, c.family == "skew", c.n).dump());
    GlobalOptions opts;
    opts.out = dir.string();
    Outcome r = capture([&](auto& out, auto& err) { return run_reduce(c.family, c.n, path, opts, out, err); });
    ASSERT_EQ(r.code, kSuccess) << r.err;
    EXPECT_EQ(r.report["savings"], std::to_string(c.original) + " -> " + std::to_string(c.reduced));
    Json doc = Json::parse(slurp(dir / "reduced.json"));
    EXPECT_EQ(doc["original_dim"], c.original);
    EXPECT_EQ(doc["reduced_dim"], c.reduced);
  }
}

TEST(CliTest, ReduceShapeMismatchIsInputError) {
  const fs::path dir = scratch("reduce_shape");
  const auto path = write_file(dir / "m.json", random_matrix(3, false, 1).dump());
  Outcome r = capture([&](auto& out, auto& err) { return run_reduce("sym", 4, path, GlobalOptions{}, out, err); });
  EXPECT_EQ(r.code, kInputError);
  Outcome bad = capture([&](auto& out, auto& err) { return run_reduce("hermitian", 3, path, GlobalOptions{}, out, err); });
  EXPECT_EQ(bad.code, kInputError);
}

TEST(CliTest, CheckHopfPasses) {
  Outcome r = capture([&](auto& out, auto& err) { return run_check({"hopf", {}}, GlobalOptions{}, out, err); });
  EXPECT_EQ(r.code, kSuccess);
  EXPECT_EQ(r.report["witness"], Json({0, 1, 0}));
  EXPECT_EQ(verdict(r.report, "hopf.witness_in_projection"), "pass");
  EXPECT_EQ(verdict(r.report, "hopf.witness_off_section_orbitope"), "pass");
}

TEST(CliTest, CheckSetDiskAgainstMbar) {
  Outcome r = capture([&](auto& out, auto& err) {
    return run_check({"set", {"disk", "disk-mbar"}}, GlobalOptions{}, out, err);
  });
  EXPECT_EQ(r.code, kSuccess);
  EXPECT_EQ(r.report["verdicts"][0]["detail"], "1000/1000");
}

TEST(CliTest, CheckRigidFailsWithWitness) {
  Outcome r = capture([&](auto& out, auto& err) { return run_check({"rigid", {"1 + x1^2"}}, GlobalOptions{}, out, err); });
  EXPECT_EQ(r.code, kCheckFailure);
  EXPECT_EQ(verdict(r.report, "real_zero"), "fail");
  EXPECT_NE(r.report["verdicts"][0]["detail"].get<std::string>().find("direction"), std::string::npos);
}

TEST(CliTest, CheckRigidPassesOnDisk) {
  Outcome r = capture([&](auto& out, auto& err) {
    return run_check({"rigid", {"1 - x1^2 - x2^2"}}, GlobalOptions{}, out, err);
  });
  EXPECT_EQ(r.code, kSuccess);
}

TEST(CliTest, CheckKostantSmallRun) {
  CheckArgs args{"kostant", {}};
  args.instances = 10;
  args.conjugates = 500;
  Outcome r = capture([&](auto& out, auto& err) { return run_check(args, GlobalOptions{}, out, err); });
  EXPECT_EQ(r.code, kSuccess) << r.report.dump();
}

TEST(CliTest, CheckInvarianceDetectsBrokenSymmetry) {
  const fs::path dir = scratch("invariance");
  // [[1 + x1, 0], [0, 1 + x2]] is a square, not a disk: not rotation invariant.
  const auto path = write_file(dir / "square.json", R"({"n": 2, "d": 2, "matrices": [
    [["1", "0"], ["0", "1"]], [["1", "0"], ["0", "0"]], [["0", "0"], ["0", "1"]]]})");
  Outcome r = capture([&](auto& out, auto& err) {
    return run_check({"invariance", {path, "disk-so2"}}, GlobalOptions{}, out, err);
  });
  EXPECT_EQ(r.code, kCheckFailure);
  Outcome stage = capture([&](auto& out, auto& err) {
    return run_equivariantize({path, "disk-so2", "", ""}, GlobalOptions{}, out, err);
  });
  EXPECT_EQ(stage.code, kCheckFailure);
  EXPECT_NE(stage.err.find("invariance"), std::string::npos);
}

TEST(CliTest, UnknownNamesAreInputErrors) {
  Outcome check = capture([&](auto& out, auto& err) { return run_check({"bogus", {}}, GlobalOptions{}, out, err); });
  EXPECT_EQ(check.code, kInputError);
  Outcome example = capture([&](auto& out, auto& err) { return run_examples("bogus", GlobalOptions{}, out, err); });
  EXPECT_EQ(example.code, kInputError);
  Outcome arity = capture([&](auto& out, auto& err) { return run_check({"set", {"disk"}}, GlobalOptions{}, out, err); });
  EXPECT_EQ(arity.code, kInputError);
}

TEST(CliTest, ExamplesAllMatchGolden) {
  Outcome r = capture([&](auto& out, auto& err) { return run_examples("all", GlobalOptions{}, out, err); });
  EXPECT_EQ(r.code, kSuccess) << r.report.dump(2);
  for (const char* name : {"disk.golden", "hermitian.golden", "quartic.golden"}) EXPECT_EQ(verdict(r.report, name), "pass");
}

TEST(CliTest, GoldenMismatchProducesStructuredDiff) {
  Json doc = golden("disk");
  Json produced = doc;
  produced["F"][1] = "x1";
  Json diff = Json::diff(doc, produced);
  ASSERT_EQ(diff.size(), 1u);
  EXPECT_EQ(diff[0]["path"], "/F/1");
}

TEST(CliTest, RunReportVerdictVocabulary) {
  RunReport r;
  r.add("a", true);
  r.add("b", false, "witness");
  r.skip("c", "not applicable");
  Json j = r.to_json();
  for (const auto& v : j["verdicts"]) {
    const std::string s = v["verdict"];
    EXPECT_TRUE(s == "pass" || s == "fail" || s == "skipped");
  }
  EXPECT_FALSE(r.passed());
}

TEST(CliTest, OrthonormalViewIsIdentityAtBasePoint) {
  EquivariantizeArgs args{"hermitian", "hermitian-su2", "", ""};
  args.orthonormal_view = true;
  Outcome r = capture([&](auto& out, auto& err) { return run_equivariantize(args, GlobalOptions{}, out, err); });
  ASSERT_EQ(r.code, kSuccess) << r.err;
  const Json& view = r.report["equivariant"]["Mbar_orthonormal_view"];
  ASSERT_EQ(view.size(), 5u);
  // base point a11 = a22 = 1 in (a11, a12, a22, b12)
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      const double at_base = view[0][i][j].get<double>() + view[1][i][j].get<double>() + view[3][i][j].get<double>();
      EXPECT_NEAR(at_base, i == j ? 1.0 : 0.0, 1e-12);
    }
}
