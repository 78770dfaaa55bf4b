#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "ffbm/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Outcome {
  int status;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "ffbm");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int status = ffbm::cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {status, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("ffbm-cli-" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

const std::vector<std::string> kFast = {
    "--set", "b_iterations=20",     "--set", "theta_iterations=200", "--set", "reduced_iterations=200",
    "--set", "repetitions=2",       "--set", "theta_thinning=5",     "--set", "reduced_thinning=5"};

std::vector<std::string> with(std::vector<std::string> head, const std::vector<std::string>& tail) {
  head.insert(head.end(), tail.begin(), tail.end());
  return head;
}

}  // namespace

TEST_CASE("command line pipeline") {
  const fs::path dir = scratch("pipeline");
  const std::string d = dir.string();

  auto gen = run({"--seed", "3", "--out-dir", d, "generate", "--vertices", "60", "--noise-features", "2"});
  REQUIRE(gen.status == 0);
  CHECK(fs::exists(dir / "edges.txt"));
  CHECK(fs::exists(dir / "features.csv"));
  CHECK(fs::exists(dir / "truth.json"));
  const std::string edges = slurp(dir / "edges.txt");
  run({"--seed", "3", "--out-dir", d, "generate", "--vertices", "60", "--noise-features", "2"});
  CHECK(slurp(dir / "edges.txt") == edges);

  {
    std::ofstream cfg(dir / "run.cfg");
    cfg << "edges = edges.txt\nfeatures = features.csv\nblocks = 3\nreduced_dimension = 3\n";
  }
  const std::string cfg = (dir / "run.cfg").string();

  auto blocks = run(with({"--config", cfg, "--out-dir", d, "sample-blocks"}, kFast));
  REQUIRE(blocks.status == 0);
  CHECK(slurp(dir / "b_samples.csv").rfind("iteration,v0,v1", 0) == 0);
  CHECK(slurp(dir / "s_trace.csv").rfind("iteration,S\n0,", 0) == 0);
  CHECK(slurp(dir / "responsibilities.csv").rfind("vertex,block0,block1,block2\n", 0) == 0);

  auto theta = run(with({"--config", cfg, "--out-dir", d, "sample-theta", "--responsibilities",
                         (dir / "responsibilities.csv").string()},
                        kFast));
  REQUIRE(theta.status == 0);
  CHECK(slurp(dir / "theta_samples.csv").rfind("iteration,0.f0,0.f1,0.f2,0.f3,0.f4,1.f0", 0) == 0);
  CHECK(fs::exists(dir / "u_trace.csv"));
  CHECK(slurp(dir / "theta_summary.json").find("r_alpha") != std::string::npos);

  auto reduce = run(with({"--config", cfg, "--out-dir", d, "reduce"}, kFast));
  REQUIRE(reduce.status == 0);
  CHECK(slurp(dir / "reduced.json").find("c_star") != std::string::npos);
  CHECK(slurp(dir / "feature_scores.csv").rfind("feature,name,score,kept\n", 0) == 0);

  auto too_many = run(with({"--config", cfg, "--out-dir", d, "--set", "reduced_dimension=9", "reduce"}, kFast));
  CHECK(too_many.status != 0);
  CHECK(too_many.err.find("exceeds") != std::string::npos);

  const fs::path a = dir / "a", b = dir / "b";
  REQUIRE(run(with({"--config", cfg, "--seed", "7", "--out-dir", a.string(), "run"}, kFast)).status == 0);
  REQUIRE(run(with({"--config", cfg, "--seed", "7", "--out-dir", b.string(), "--jobs", "2", "run"}, kFast)).status ==
          0);
  CHECK(slurp(a / "report.json") == slurp(b / "report.json"));
  CHECK(slurp(a / "report.json").find("\"L_1_reduced\"") != std::string::npos);

  auto report = run(with({"--config", cfg, "--seed", "7", "--out-dir", (dir / "c").string(), "report"}, kFast));
  REQUIRE(report.status == 0);
  CHECK(report.out.find("S_e = ") != std::string::npos);
  CHECK(slurp(dir / "c" / "report.json") == slurp(a / "report.json"));
}

TEST_CASE("command line errors") {
  CHECK(run({}).status == 1);
  CHECK(run({"frobnicate"}).status == 1);
  CHECK(run({"run", "--no-such-flag"}).status == 1);
  CHECK(run({"--set", "blocks=0", "generate"}).status == 1);
  CHECK(run({"--help"}).status == 0);

  const fs::path dir = scratch("errors");
  {
    std::ofstream e(dir / "edges.txt");
    e << "0 1\n1 x\n";
    std::ofstream f(dir / "features.csv");
    f << "vertex,a\n0,1\n1,0\n";
  }
  auto bad = run({"--set", "edges=" + (dir / "edges.txt").string(), "--set",
                  "features=" + (dir / "features.csv").string(), "--out-dir", dir.string(), "sample-blocks"});
  CHECK(bad.status == 2);
  CHECK(run({"--config", (dir / "missing.cfg").string(), "run"}).status == 1);
}
