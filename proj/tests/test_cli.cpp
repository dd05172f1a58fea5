#include "support.hpp"

#include "weylball/cli.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace wb;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "weylball");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& body) {
  const auto path = std::filesystem::temp_directory_path() / ("weylball_test_" + name);
  std::ofstream(path) << body;
  return path.string();
}

const char* kSymmetricPair = R"({"q":1,"moments":[[[[1,0]]],[[[0,0]]],[[[1,0]]]]})";
const char* kDefinite =
    R"({"q":2,"moments":[[[[2,0],[1,0]],[[1,0],[1,0]]],[[[0,0],[0,0]],[[0,0],[0,0]]],[[[2,0],[1,0]],[[1,0],[1,0]]]]})";
const char* kZero = R"({"q":1,"moments":[[[[0,0]]],[[[0,0]]],[[[0,0]]]]})";

double re(const json& m, int i = 0, int k = 0) { return m[i][k][0].get<double>(); }
double im(const json& m, int i = 0, int k = 0) { return m[i][k][1].get<double>(); }

}  // namespace

TEST(Cli, BallOfSymmetricPair) {
  const auto r = run({"ball", "--input", write_temp("f2.json", kSymmetricPair), "--point", "0,1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_NEAR(re(j["center"]), 0.0, 1e-14);
  EXPECT_NEAR(im(j["center"]), 0.75, 1e-14);
  EXPECT_NEAR(re(j["L"]), 0.25, 1e-14);
  EXPECT_NEAR(re(j["R"]), 0.25, 1e-14);
  EXPECT_EQ(j["rank"], 1);
}

TEST(Cli, ClassifyZero) {
  const auto r = run({"classify", "--input", write_temp("zero.json", kZero)});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_TRUE(j["flags"]["hankel_nnd"].get<bool>());
  EXPECT_TRUE(j["flags"]["nnd_extendable"].get<bool>());
  for (const auto& rk : j["parameter_ranks"]) EXPECT_EQ(rk, 0);
}

TEST(Cli, CrosscheckDefinite) {
  const auto r = run({"crosscheck", "--input", write_temp("f5.json", kDefinite), "--point", "0,1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_LE(json::parse(r.out)["max_rel_dev"].get<double>(), 1e-8);
}

TEST(Cli, CrosscheckRefusesDegenerate) {
  const auto r = run({"crosscheck", "--input", write_temp("zero2.json", kZero), "--point", "0,1"});
  EXPECT_EQ(r.code, 3);
}

TEST(Cli, MomentsRoundTrip) {
  const std::string measure =
      R"({"q":2,"atoms":[-1.0,0.25,2.0],"weights":[[[[1,0],[0,0]],[[0,0],[0,0]]],[[[1,0],[0.5,0.5]],[[0.5,-0.5],[1,0]]],[[[0.2,0],[0,0]],[[0,0],[0.3,0]]]]})";
  auto r = run({"moments", "--input", write_temp("mu.json", measure), "--degree", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string moments = write_temp("mu_moments.json", r.out);
  r = run({"classify", "--input", moments});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(json::parse(r.out)["flags"]["nnd_extendable"].get<bool>());
}

TEST(Cli, VerifyIsDeterministic) {
  const std::string in = write_temp("f5v.json", kDefinite);
  const auto a = run({"verify", "--input", in, "--point", "0.3,0.8", "--samples", "16", "--seed", "5"});
  const auto b = run({"verify", "--input", in, "--point", "0.3,0.8", "--samples", "16", "--seed", "5"});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  const json j = json::parse(a.out);
  EXPECT_EQ(j["members"], 16);
}

TEST(Cli, SolveCommandsProduceGrids) {
  const std::string in = write_temp("f2s.json", kSymmetricPair);
  auto r = run({"solve-center", "--input", in, "--point", "0,1", "--samples", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  json j = json::parse(r.out);
  EXPECT_EQ(j["grid"].size(), 5u);
  EXPECT_NEAR(im(j["value_at_w"]), 0.75, 1e-12);
  r = run({"solve-point", "--input", in, "--point", "0,1", "--samples", "3", "--seed", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  j = json::parse(r.out);
  EXPECT_NEAR(re(j["value_at_w"]), re(j["target"]), 1e-10);
  EXPECT_NEAR(im(j["value_at_w"]), im(j["target"]), 1e-10);
}

TEST(Cli, ErrorCodes) {
  EXPECT_EQ(run({"ball", "--input", "/nonexistent.json", "--point", "0,1"}).code, 2);
  EXPECT_EQ(run({"ball", "--input", write_temp("bad.json", "{not json"), "--point", "0,1"}).code, 2);
  const std::string nonherm = R"({"q":2,"moments":[[[[1,0],[1,0]],[[0,0],[1,0]]]]})";
  EXPECT_EQ(run({"classify", "--input", write_temp("nh.json", nonherm)}).code, 2);
  const std::string in = write_temp("f2e.json", kSymmetricPair);
  EXPECT_EQ(run({"ball", "--input", in, "--point", "0,-1"}).code, 3);
  EXPECT_EQ(run({"ball", "--input", in, "--point", "zero"}).code, 2);
  EXPECT_EQ(run({"bogus"}).code, 2);
  const std::string bad_ext = R"({"q":1,"moments":[[[[0,0]]],[[[0,0]]],[[[1,0]]]]})";
  EXPECT_EQ(run({"ball", "--input", write_temp("ne.json", bad_ext), "--point", "0,1"}).code, 3);
}

TEST(Cli, OutputFlagWritesFile) {
  const auto path = std::filesystem::temp_directory_path() / "weylball_test_out.json";
  std::filesystem::remove(path);
  const auto r = run({"params", "--input", write_temp("f2p.json", kSymmetricPair), "--output", path.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  const json j = json::parse(in);
  EXPECT_EQ(j["schur_levels"].size(), 2u);
}
