#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <string>

#include "netcode/io.hpp"

namespace fs = std::filesystem;

namespace {

const std::string kCli = NETCODE_CLI;
const std::string kData = NETCODE_DATA_DIR;

struct CliResult {
  int code = -1;
  std::string out;
};

/// Runs the CLI with stderr discarded and returns its exit status and stdout.
CliResult run(const std::string& args) {
  CliResult r;
  FILE* pipe = popen((kCli + " " + args + " 2>/dev/null").c_str(), "r");
  if (pipe == nullptr) return r;
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), static_cast<int>(buf.size()), pipe) != nullptr) r.out += buf.data();
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("netcode_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string tmp(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, ConstructThenVerifyRoundTrip) {
  const CliResult c = run("construct --gen comb:6,3 --k 5 --modulus X^5+X^2+1 --seed 1 --out " + tmp("code.json"));
  EXPECT_EQ(c.code, 0);
  EXPECT_EQ(run("verify --gen comb:6,3 --code " + tmp("code.json")).code, 0);
}

TEST_F(Cli, MissingNetworkFile) {
  EXPECT_NE(run("construct --net " + tmp("missing.net") + " --k 5").code, 0);
  EXPECT_EQ(run("construct --net " + tmp("missing.net") + " --k 5").code, 2);
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("construct --gen comb:6,3").code, 2);
  EXPECT_EQ(run("construct --gen comb:6,3 --net x --k 5").code, 2);
  EXPECT_EQ(run("construct --gen nope --k 5").code, 2);
  EXPECT_EQ(run("construct --gen comb:6,3 --k 4 --modulus X^5+X^2+1").code, 2);
}

TEST_F(Cli, InfeasibleParameters) {
  EXPECT_EQ(run("construct --gen comb:6,3 --k 5 --h-prime 4").code, 3);
  EXPECT_EQ(run("construct --gen comb:6,3 --k 4").code, 3);
  EXPECT_EQ(run("nec-construct --gen parallel:2 --alpha 1 --k 3").code, 3);
}

TEST_F(Cli, ReduceCombinationCodeA) {
  const CliResult r = run("reduce --net " + kData + "/c63.net --code " + kData + "/c63_A_b1.json --out " + tmp("red.json"));
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("Resultant network code                                      e0=[1,0,0] e1=[0,1,0] e2=[0,0,1] e3=[1,1,1] "
                       "e4=[1,b4,b4^2] e5=[1,b4^2,b4]\n"),
            std::string::npos)
      << r.out;
  EXPECT_EQ(run("verify --net " + kData + "/c63.net --code " + tmp("red.json")).code, 0);
}

TEST_F(Cli, ReduceUnchangedIsSuccess) {
  const CliResult r = run("reduce --net " + kData + "/c63.net --code " + kData + "/c63_B_b2.json");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("None of the form X^(2^i)+X for i <= 4"), std::string::npos);
}

TEST_F(Cli, JsonAndTextAgree) {
  const std::string args = "reduce --net " + kData + "/c63.net --code " + kData + "/c63_A_b2.json --seed 4";
  const CliResult text = run(args);
  const CliResult json = run(args + " --format json");
  ASSERT_EQ(json.code, 0);
  const auto j = netcode::Json::parse(json.out);
  for (const auto& [label, value] : j.at("table").items()) {
    EXPECT_NE(text.out.find(value.get<std::string>()), std::string::npos) << label;
  }
  EXPECT_EQ(j.at("seed").get<int>(), 4);
  EXPECT_NE(text.out.find("seed: 4"), std::string::npos);
}

TEST_F(Cli, ReduceRejectsInvalidCode) {
  auto j = netcode::Json::parse(netcode::read_file(kData + "/c63_A_b1.json"));
  j["source_rows"].erase(5);
  netcode::write_file(tmp("bad.json"), j.dump());
  EXPECT_EQ(run("reduce --net " + kData + "/c63.net --code " + tmp("bad.json")).code, 1);
  EXPECT_EQ(run("verify --net " + kData + "/c63.net --code " + tmp("bad.json")).code, 1);
}

TEST_F(Cli, VerifyGF4ResultantCode) {
  // The reduced (A, b1) code lives in GF(4).
  ASSERT_EQ(run("reduce --net " + kData + "/c63.net --code " + kData + "/c63_A_b1.json --out " + tmp("gf4.json")).code, 0);
  const auto j = netcode::Json::parse(netcode::read_file(tmp("gf4.json")));
  EXPECT_EQ(j.at("field").at("modulus").get<std::string>(), "X^2+X+1");
  EXPECT_EQ(run("verify --gen comb:6,3 --code " + tmp("gf4.json")).code, 0);
}

TEST_F(Cli, NecPipelineOnParallelToy) {
  ASSERT_EQ(run("nec-construct --gen parallel:3 --alpha 1 --k 3 --out " + tmp("nec.json") + " --witnesses " + tmp("w.json")).code, 0);
  const auto w = netcode::Json::parse(netcode::read_file(tmp("w.json")));
  EXPECT_EQ(w.size(), 3U);
  EXPECT_TRUE(w[0].contains("F") && w[0].contains("rank") && w[0].contains("ok"));
  EXPECT_EQ(run("verify --gen parallel:3 --code " + tmp("nec.json") + " --decode-sweep").code, 0);
  EXPECT_EQ(run("nec-reduce --gen parallel:3 --alpha 1 --code " + tmp("nec.json")).code, 0);
}

TEST_F(Cli, NecConstructExampleNetworkWitnessCount) {
  ASSERT_EQ(run("nec-construct --net " + kData + "/two_sink.net --alpha 1 --k 9 --out " + tmp("c.json") + " --witnesses " +
                tmp("w.json"))
                .code,
            0);
  EXPECT_EQ(netcode::Json::parse(netcode::read_file(tmp("w.json"))).size(), 306U);
}

TEST_F(Cli, CorruptedNecCodeFailsVerify) {
  ASSERT_EQ(run("nec-construct --gen parallel:3 --alpha 1 --k 3 --out " + tmp("nec.json")).code, 0);
  auto j = netcode::Json::parse(netcode::read_file(tmp("nec.json")));
  j["source_rows"][0]["row"][0] = "0x0";
  netcode::write_file(tmp("bad.json"), j.dump());
  EXPECT_EQ(run("verify --gen parallel:3 --code " + tmp("bad.json")).code, 1);
}

TEST_F(Cli, GenNetworkRoundTrip) {
  const CliResult r = run("gen-network --gen butterfly");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(netcode::format_network(netcode::parse_network(r.out)), r.out);
  const CliResult j = run("gen-network --gen comb:4,2 --format json");
  EXPECT_EQ(netcode::network_from_json(netcode::Json::parse(j.out)).sinks().size(), 6U);
}
