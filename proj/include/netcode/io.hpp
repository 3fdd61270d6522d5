#pragma once

// Network text/JSON formats and code JSON.
//
// Network text format, one directive per line, '#' starts a comment:
//   node <name>...           declare nodes (optional; edges create missing nodes in order of appearance)
//   edge <id> <tail> <head>  append an edge; ids are explicit and must be dense, in order
//   source <name>
//   sink <name>...           sinks in the given order
//
// Code JSON:
//   {"field": {"k": 5, "modulus": "X^5+X^2+1"}, "h_prime": 3,
//    "source_rows": [{"edge": 0, "row": ["0x1", "0x0", "0x0"]}, ...],
//    "local_coeffs": [[in, out, "0x1c"], ...],
//    "sink_selectors": [[6, 7, 8], ...], "alpha": 1}
// Elements are written as hex residues; "b^e" and polynomials such as "X^2+1" are also accepted on input.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "netcode/code.hpp"
#include "netcode/error.hpp"
#include "netcode/gf2k.hpp"
#include "netcode/network.hpp"

namespace netcode {

using Json = nlohmann::ordered_json;

inline Network parse_network(std::istream& in) {
  Network net;
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) { throw InvalidArgument("network line " + std::to_string(lineno) + ": " + msg); };
  auto ensure = [&](const std::string& name) { return net.has_node(name) ? net.node(name) : net.add_node(name); };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    const std::string& kw = tok[0];
    try {
      if (kw == "node") {
        if (tok.size() < 2) fail("'node' needs at least one name");
        for (std::size_t i = 1; i < tok.size(); ++i) net.add_node(tok[i]);
      } else if (kw == "edge") {
        if (tok.size() == 4) {
          std::size_t used = 0;
          const long id = std::stol(tok[1], &used);
          if (used != tok[1].size()) fail("bad edge id '" + tok[1] + "'");
          if (id != static_cast<long>(net.edge_count())) {
            fail("edge id " + tok[1] + " out of sequence, expected " + std::to_string(net.edge_count()));
          }
          net.add_edge(ensure(tok[2]), ensure(tok[3]));
        } else {
          fail("'edge' takes an explicit id, a tail and a head");
        }
      } else if (kw == "source") {
        if (tok.size() != 2) fail("'source' takes one name");
        if (net.has_source()) fail("source declared twice");
        net.set_source(ensure(tok[1]));
      } else if (kw == "sink") {
        if (tok.size() < 2) fail("'sink' needs at least one name");
        for (std::size_t i = 1; i < tok.size(); ++i) net.add_sink(ensure(tok[i]));
      } else {
        fail("unknown directive '" + kw + "'");
      }
    } catch (const std::logic_error&) {
      fail("bad number in '" + line + "'");
    } catch (const InvalidArgument& e) {
      if (std::string(e.what()).rfind("network line", 0) == 0) throw;
      fail(e.what());
    }
  }
  return net;
}

inline Network parse_network(const std::string& text) {
  std::istringstream in(text);
  return parse_network(in);
}

inline std::string format_network(const Network& net) {
  std::ostringstream os;
  os << "node";
  for (const std::string& n : net.names()) os << ' ' << n;
  os << '\n';
  if (net.has_source()) os << "source " << net.name(net.source()) << '\n';
  if (!net.sinks().empty()) {
    os << "sink";
    for (NodeId t : net.sinks()) os << ' ' << net.name(t);
    os << '\n';
  }
  for (const Edge& e : net.edges()) os << "edge " << e.id << ' ' << net.name(e.tail) << ' ' << net.name(e.head) << '\n';
  return os.str();
}

inline Json network_to_json(const Network& net) {
  Json j;
  j["nodes"] = net.names();
  j["source"] = net.has_source() ? Json(net.name(net.source())) : Json(nullptr);
  Json sinks = Json::array();
  for (NodeId t : net.sinks()) sinks.push_back(net.name(t));
  j["sinks"] = sinks;
  Json edges = Json::array();
  for (const Edge& e : net.edges()) edges.push_back({{"id", e.id}, {"tail", net.name(e.tail)}, {"head", net.name(e.head)}});
  j["edges"] = edges;
  return j;
}

inline Network network_from_json(const Json& j) {
  try {
    Network net;
    for (const auto& n : j.at("nodes")) net.add_node(n.get<std::string>());
    for (const auto& e : j.at("edges")) {
      if (e.contains("id") && e.at("id").get<long>() != static_cast<long>(net.edge_count())) {
        throw InvalidArgument("edge ids must be dense and in order");
      }
      net.add_edge(e.at("tail").get<std::string>(), e.at("head").get<std::string>());
    }
    if (!j.at("source").is_null()) net.set_source(net.node(j.at("source").get<std::string>()));
    for (const auto& t : j.at("sinks")) net.add_sink(net.node(t.get<std::string>()));
    return net;
  } catch (const Json::exception& e) {
    throw InvalidArgument(std::string("malformed network JSON: ") + e.what());
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open '" + path + "': file not found or unreadable");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write '" + path + "'");
  out << text;
  if (!out) throw InvalidArgument("write to '" + path + "' failed");
}

/// Reads either format; a leading '{' selects JSON.
inline Network load_network(const std::string& path) {
  const std::string text = read_file(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    try {
      return network_from_json(Json::parse(text));
    } catch (const Json::parse_error& e) {
      throw InvalidArgument("'" + path + "': " + e.what());
    }
  }
  return parse_network(text);
}

inline Json field_to_json(const Field& f) { return {{"k", f.degree()}, {"modulus", f.modulus().to_string()}}; }

inline Field field_from_json(const Json& j) {
  const Field f = Field::from_modulus(BinPoly::parse(j.at("modulus").get<std::string>()));
  if (j.contains("k") && j.at("k").get<int>() != f.degree()) {
    throw InvalidArgument("field degree " + std::to_string(j.at("k").get<int>()) + " does not match modulus " + f.modulus().to_string());
  }
  return f;
}

inline Json code_to_json(const NetworkCode& code) {
  Json j;
  j["field"] = field_to_json(code.field);
  j["h_prime"] = code.h_prime;
  Json rows = Json::array();
  for (const auto& [e, row] : code.source_rows) {
    Json r = Json::array();
    for (const FieldElem& x : row) r.push_back(x.to_hex());
    rows.push_back({{"edge", e}, {"row", r}});
  }
  j["source_rows"] = rows;
  Json coeffs = Json::array();
  for (const auto& [pair, c] : code.local_coeffs) coeffs.push_back(Json::array({pair.first, pair.second, c.to_hex()}));
  j["local_coeffs"] = coeffs;
  j["sink_selectors"] = code.sink_selectors;
  return j;
}

inline NetworkCode code_from_json(const Json& j) {
  try {
    NetworkCode code(field_from_json(j.at("field")));
    code.h_prime = j.at("h_prime").get<int>();
    auto elem = [&](const Json& x) { return FieldElem::parse(code.field, x.get<std::string>()); };
    for (const auto& r : j.value("source_rows", Json::array())) {
      const EdgeId e = r.at("edge").get<EdgeId>();
      std::vector<FieldElem> row;
      for (const auto& x : r.at("row")) row.push_back(elem(x));
      if (!code.source_rows.emplace(e, std::move(row)).second) throw InvalidArgument("duplicate source row for edge " + std::to_string(e));
    }
    for (const auto& c : j.value("local_coeffs", Json::array())) {
      if (!c.is_array() || c.size() != 3) throw InvalidArgument("local coefficient entries are [in, out, value]");
      const EdgePair pair{c[0].get<EdgeId>(), c[1].get<EdgeId>()};
      if (!code.local_coeffs.emplace(pair, elem(c[2])).second) {
        throw InvalidArgument("duplicate local coefficient (" + std::to_string(pair.first) + ", " + std::to_string(pair.second) + ")");
      }
    }
    if (j.contains("sink_selectors")) code.sink_selectors = j.at("sink_selectors").get<std::vector<std::vector<EdgeId>>>();
    return code;
  } catch (const Json::exception& e) {
    throw InvalidArgument(std::string("malformed code JSON: ") + e.what());
  }
}

inline NetworkCode load_code(const std::string& path) {
  try {
    return code_from_json(Json::parse(read_file(path)));
  } catch (const Json::parse_error& e) {
    throw InvalidArgument("'" + path + "': " + e.what());
  }
}

}  // namespace netcode
