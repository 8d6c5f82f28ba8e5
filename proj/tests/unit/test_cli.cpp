#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "masr/cli.hpp"

namespace {

const std::string kRoot = MASR_SOURCE_DIR;

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "masr");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = masr::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string tmpdir(const std::string& name) {
  const auto p = std::filesystem::temp_directory_path() / ("masr_cli_" + name);
  std::filesystem::remove_all(p);
  return p.string();
}

}  // namespace

TEST(Cli, FkEndpoint) {
  const Result r = run({"fk", "--theta", "90,-90,0", "--deg", "--out", tmpdir("fk")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("endpoint x=0.1 y=0.05"), std::string::npos) << r.out;
}

TEST(Cli, BadInputIsUsageError) {
  EXPECT_EQ(run({"fk", "--theta", "a,b"}).code, 2);
  EXPECT_EQ(run({"nonsense"}).code, 2);
}

TEST(Cli, ReplayReportsRecountedTurning) {
  const std::string out = tmpdir("replay");
  const Result r = run({"replay", "--plan", kRoot + "/data/reach_and_return.plan", "--scene",
                        kRoot + "/scenes/narrow_pass.json", "--out", out, "--format", "csv,svg"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("turning_deg 810"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("840"), std::string::npos);
  EXPECT_NE(r.out.find("total_time_s 142"), std::string::npos);
  EXPECT_NE(r.out.find("collision_free true"), std::string::npos);
  EXPECT_TRUE(std::filesystem::exists(out + "/replay.csv"));
  EXPECT_TRUE(std::filesystem::exists(out + "/storyboard.svg"));
}

TEST(Cli, ApproxVerifies) {
  const std::string out = tmpdir("approx");
  const Result r = run({"approx", "--task", "cup", "-m", "1", "--delta", "0.1", "--out", out});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("verified true"), std::string::npos) << r.out;
  EXPECT_TRUE(std::filesystem::exists(out + "/path.plan"));
}

TEST(Cli, SweepBoundsDominate) {
  const std::string out = tmpdir("sweep");
  const Result r = run({"sweep", "--task", kRoot + "/tasks/z.json", "--out", out, "--format", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  std::vector<std::string> cols;
  {
    std::istringstream h(line);
    for (std::string c; std::getline(h, c, ',');) cols.push_back(c);
  }
  auto col = [&](const std::string& name) {
    return std::find(cols.begin(), cols.end(), name) - cols.begin();
  };
  int rows = 0;
  while (std::getline(in, line)) {
    std::vector<std::string> v;
    std::istringstream h(line);
    for (std::string c; std::getline(h, c, ',');) v.push_back(c);
    if (v.size() != cols.size()) continue;
    ++rows;
    EXPECT_EQ(v[col("verified")], "true");
    EXPECT_LE(std::stod(v[col("empirical_pos")]), std::stod(v[col("bound_pos")]) + 1e-9);
    EXPECT_LE(std::stod(v[col("empirical_ori")]), std::stod(v[col("bound_ori")]) + 1e-9);
  }
  EXPECT_EQ(rows, 10);
}
