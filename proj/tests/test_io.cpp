#include <gtest/gtest.h>

#include "netcode/construct.hpp"
#include "netcode/io.hpp"
#include "oracles.hpp"

using namespace netcode;

namespace {

const std::string kData = NETCODE_DATA_DIR;

std::string what(const auto& fn) {
  try {
    fn();
  } catch (const InvalidArgument& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(NetworkText, ParseWithCommentsAndImplicitNodes) {
  const Network net = parse_network(
      "# toy\n"
      "edge 0 s a   # first hop\n"
      "edge 1 a t\n"
      "edge 2 s t\n"
      "source s\n"
      "sink t\n");
  EXPECT_EQ(net.node_count(), 3U);
  EXPECT_EQ(net.edge_count(), 3U);
  EXPECT_EQ(net.name(net.edge(1).tail), "a");
  EXPECT_EQ(validate(net).h, 2);
}

TEST(NetworkText, Errors) {
  EXPECT_NE(what([] { parse_network("edge 1 s t\n"); }).find("line 1"), std::string::npos);
  EXPECT_NE(what([] { parse_network("edge s t\n"); }).find("explicit id"), std::string::npos);
  EXPECT_NE(what([] { parse_network("edge x s t\n"); }).find("line 1"), std::string::npos);
  EXPECT_NE(what([] { parse_network("node a\nnode a\n"); }).find("line 2"), std::string::npos);
  EXPECT_NE(what([] { parse_network("source a\nsource b\n"); }).find("twice"), std::string::npos);
  EXPECT_NE(what([] { parse_network("frobnicate\n"); }).find("unknown directive"), std::string::npos);
  EXPECT_NE(what([] { load_network("/nonexistent/missing.net"); }).find("file not found"), std::string::npos);
}

TEST(NetworkText, RoundTrip) {
  for (const Network& net : {gen_butterfly(), gen_combination_network(5, 2), gen_parallel(3)}) {
    const Network back = parse_network(format_network(net));
    EXPECT_EQ(format_network(back), format_network(net));
    const Network via_json = network_from_json(network_to_json(net));
    EXPECT_EQ(format_network(via_json), format_network(net));
  }
}

TEST(NetworkText, DataFilesLoad) {
  EXPECT_EQ(load_network(kData + "/c63.net").sinks().size(), 20U);
  const Network two = load_network(kData + "/two_sink.net");
  EXPECT_EQ(two.edge_count(), 18U);
  EXPECT_EQ(two.sinks().size(), 2U);
}

TEST(CodeJson, RoundTripAndHex) {
  const Network net = gen_combination_network(4, 2);
  const NetworkCode code = construct_multicast(net, 2, Field::first_primitive(5));
  const Json j = code_to_json(code);
  EXPECT_EQ(j.at("field").at("modulus").get<std::string>(), "X^5+X^2+1");
  EXPECT_EQ(j.at("source_rows")[0].at("row")[0].get<std::string>().rfind("0x", 0), 0U);
  const NetworkCode back = code_from_json(Json::parse(j.dump()));
  EXPECT_EQ(back.source_rows, code.source_rows);
  EXPECT_EQ(back.local_coeffs, code.local_coeffs);
  EXPECT_EQ(back.sink_selectors, code.sink_selectors);
  EXPECT_TRUE(verify_multicast(net, back).ok);
}

TEST(CodeJson, AlternateElementForms) {
  const Json j = Json::parse(R"({"field": {"k": 5, "modulus": "X^5+X^2+1"}, "h_prime": 1,
      "source_rows": [{"edge": 0, "row": ["b^5"]}, {"edge": 1, "row": ["X^2+1"]}],
      "local_coeffs": [[0, 2, "b"]]})");
  const NetworkCode code = code_from_json(j);
  EXPECT_EQ(code.source_rows.at(0), code.source_rows.at(1));
  EXPECT_EQ(code.local_coeffs.at({0, 2}), FieldElem::from_power(code.field, 1));
}

TEST(CodeJson, Rejections) {
  EXPECT_NE(what([] { code_from_json(Json::parse(R"({"field": {"k": 4, "modulus": "X^5+X^2+1"}, "h_prime": 1})")); }).find("does not match"),
            std::string::npos);
  EXPECT_NE(what([] {
              code_from_json(Json::parse(R"({"field": {"modulus": "X^2+X+1"}, "h_prime": 1,
                  "local_coeffs": [[0, 1, "0x1"], [0, 1, "0x2"]]})"));
            }).find("duplicate"),
            std::string::npos);
  EXPECT_NE(what([] { code_from_json(Json::parse(R"({"h_prime": 1})")); }).find("malformed"), std::string::npos);
  EXPECT_NE(what([] { code_from_json(Json::parse(R"({"field": {"modulus": "X^2+1"}, "h_prime": 1})")); }).find("reducible"),
            std::string::npos);
}

TEST(IoProperty, RandomNetworksRoundTrip) {
  oracle::Gen gen(81);
  for (int trial = 0; trial < 100; ++trial) {
    const Network net = gen.dag(gen.between(2, 10), gen.between(5, 30), gen.between(1, 3));
    EXPECT_EQ(format_network(parse_network(format_network(net))), format_network(net));
  }
}
