// Command-line front end.
//
//   netcode gen-network   --gen SPEC [--format text|json] [--out FILE]
//   netcode construct     (--net FILE | --gen SPEC) --k K [--modulus POLY] [--h-prime H] [--seed S] [--best-effort] [--out FILE]
//   netcode nec-construct (--net FILE | --gen SPEC) --alpha A --k K [--modulus POLY] [--seed S] [--randomized]
//                         [--best-effort] [--witnesses FILE] [--out FILE]
//   netcode reduce        (--net FILE | --gen SPEC) --code FILE [--cap C] [--format text|json] [--out FILE]
//   netcode nec-reduce    (--net FILE | --gen SPEC) --code FILE --alpha A [--cap C] [--format text|json] [--out FILE]
//   netcode verify        (--net FILE | --gen SPEC) --code FILE [--alpha A] [--decode-sweep] [--witnesses FILE]
//
// SPEC is comb:N,H, butterfly or parallel:M. Exit codes: 0 ok, 1 verification failure, 2 usage error,
// 3 infeasible parameters.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "netcode/netcode.hpp"

using namespace netcode;

namespace {

enum Exit { kOk = 0, kVerifyFailed = 1, kUsage = 2, kInfeasible = 3 };

struct Options {
  std::string net_path;
  std::string gen;
  int k = 0;
  std::string modulus;
  std::uint64_t seed = 1;
  int h_prime = -1;
  int alpha = -1;
  int cap = -1;
  std::string format = "text";
  std::string code_path;
  std::string out;
  std::string witnesses;
  bool best_effort = false;
  bool randomized = false;
  bool decode_sweep = false;
  std::size_t retries = 64;
  bool seed_given = false;
};

int parse_int(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::logic_error&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw InvalidArgument("bad " + what + " '" + s + "'");
  return v;
}

Network generate(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const std::string args = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (kind == "butterfly" && args.empty()) return gen_butterfly();
  if (kind == "parallel" && !args.empty()) return gen_parallel(parse_int(args, "edge count"));
  if (kind == "comb") {
    const auto comma = args.find(',');
    if (comma != std::string::npos) {
      return gen_combination_network(parse_int(args.substr(0, comma), "node count"), parse_int(args.substr(comma + 1), "subset size"));
    }
  }
  throw InvalidArgument("unknown generator '" + spec + "' (expected comb:N,H, butterfly or parallel:M)");
}

Network load(const Options& o) {
  if (o.net_path.empty() == o.gen.empty()) throw InvalidArgument("give exactly one of --net and --gen");
  return o.gen.empty() ? load_network(o.net_path) : generate(o.gen);
}

Field field_of(const Options& o) {
  if (o.modulus.empty()) {
    if (o.k < 1) throw InvalidArgument("--k or --modulus is required");
    return Field::first_primitive(o.k);
  }
  const Field f = Field::from_modulus(BinPoly::parse(o.modulus));
  if (o.k > 0 && o.k != f.degree()) {
    throw InvalidArgument("--k " + std::to_string(o.k) + " does not match the degree of modulus " + f.modulus().to_string());
  }
  return f;
}

/// Writes to --out when given, otherwise to stdout.
void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) std::cout << text;
  else write_file(o.out, text);
}

int cmd_gen(const Options& o) {
  if (o.gen.empty()) throw InvalidArgument("--gen is required");
  const Network net = generate(o.gen);
  emit(o, o.format == "json" ? network_to_json(net).dump(2) + "\n" : format_network(net));
  return kOk;
}

int cmd_construct(const Options& o) {
  const Network net = load(o);
  const Field f = field_of(o);
  const int h = validate(net).h;
  ConstructOptions opts;
  opts.seed = o.seed;
  opts.best_effort = o.best_effort;
  const NetworkCode code = construct_multicast(net, o.h_prime < 0 ? h : o.h_prime, f, opts);
  const MulticastReport rep = verify_multicast(net, code);
  emit(o, code_to_json(code).dump(2) + "\n");
  std::cerr << "netcode " << kToolVersion << " construct: " << f.to_string() << ", seed " << o.seed << ", h' = " << code.h_prime
            << ", " << net.sinks().size() << " sinks, verified: " << (rep.ok ? "yes" : "no") << "\n";
  return rep.ok ? kOk : kVerifyFailed;
}

int cmd_nec_construct(const Options& o) {
  if (o.alpha < 0) throw InvalidArgument("--alpha is required");
  const Network net = load(o);
  const Field f = field_of(o);
  NecOptions opts;
  opts.seed = o.seed;
  opts.best_effort = o.best_effort;
  opts.mode = o.randomized ? NecMode::kRandomized : NecMode::kGreedy;
  opts.retries = o.retries;
  const NecCode nc = construct_nec(net, o.alpha, f, opts);
  Json code = code_to_json(nc.code);
  code["alpha"] = o.alpha;
  emit(o, code.dump(2) + "\n");
  if (!o.witnesses.empty()) write_file(o.witnesses, witnesses_to_json(net, nc.report).dump(2) + "\n");
  std::cerr << "netcode " << kToolVersion << " nec-construct: " << f.to_string() << ", seed " << o.seed << ", alpha = " << o.alpha
            << ", k = " << nc.params.k_msg << ", " << nc.report.witnesses.size() << " witnesses, verified: " << (nc.report.ok ? "yes" : "no")
            << "\n";
  if (const RankWitness* w = nc.report.first_failure()) std::cerr << "  " << format_witness(net, *w) << "\n";
  return nc.report.ok ? kOk : kVerifyFailed;
}

int cmd_reduce(const Options& o, bool nec) {
  if (o.code_path.empty()) throw InvalidArgument("--code is required");
  if (nec && o.alpha < 0) throw InvalidArgument("--alpha is required");
  const Network net = load(o);
  const NetworkCode code = load_code(o.code_path);
  const std::string command = nec ? "nec-reduce" : "reduce";
  ReductionReport rep;
  try {
    rep = nec ? reduce_nec(net, code, o.alpha, o.cap) : reduce_multicast(net, code, o.cap);
  } catch (const InvalidArgument& e) {
    if (std::string(e.what()).find("does not pass") == std::string::npos) throw;
    std::cerr << "netcode: " << e.what() << "\n";
    return kVerifyFailed;
  }
  const RunInfo info{command, o.seed, o.seed_given};
  const std::string text = o.format == "json" ? reduction_to_json(rep, code, info).dump(2) + "\n" : format_reduction_text(rep, code, info);
  std::cout << text;
  if (!o.out.empty()) {
    Json reduced = code_to_json(rep.reduced ? *rep.reduced : code);
    if (nec) reduced["alpha"] = o.alpha;
    write_file(o.out, reduced.dump(2) + "\n");
  }
  return rep.verified ? kOk : kVerifyFailed;
}

int cmd_verify(const Options& o) {
  if (o.code_path.empty()) throw InvalidArgument("--code is required");
  const Network net = load(o);
  const Json code_json = Json::parse(read_file(o.code_path));
  const NetworkCode code = code_from_json(code_json);
  int alpha = o.alpha;
  if (alpha < 0 && code_json.contains("alpha")) alpha = code_json.at("alpha").get<int>();
  bool ok = true;
  if (alpha < 0) {
    const MulticastReport rep = verify_multicast(net, code);
    std::cout << "multicast: " << (rep.ok ? "ok" : "FAILED") << " (ranks";
    for (std::size_t r : rep.ranks) std::cout << " " << r;
    std::cout << ", need " << code.h_prime << ")\n";
    ok = rep.ok;
  } else {
    const NecReport rep = verify_nec(net, code, alpha);
    std::cout << "error correction (alpha = " << alpha << "): " << (rep.ok ? "ok" : "FAILED") << ", " << rep.witnesses.size() << " witnesses\n";
    if (const RankWitness* w = rep.first_failure()) std::cout << "  " << format_witness(net, *w) << "\n";
    if (!o.witnesses.empty()) write_file(o.witnesses, witnesses_to_json(net, rep).dump(2) + "\n");
    ok = rep.ok;
  }
  if (o.decode_sweep) {
    const DecodeSweep sweep = decode_sweep(net, code, alpha < 0 ? 0 : alpha);
    std::cout << "decode sweep: " << (sweep.ok ? "ok" : "FAILED") << "\n";
    for (std::size_t t = 0; t < sweep.sink_ok.size(); ++t) {
      if (!sweep.sink_ok[t]) std::cout << "  sink " << net.name(net.sinks()[t]) << " cannot separate every message\n";
    }
    ok = ok && sweep.ok;
  }
  return ok ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Linear network code construction and field-size reduction"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);
  Options o;

  auto add_net = [&](CLI::App* c) {
    c->add_option("--net", o.net_path, "network file (text or JSON)");
    c->add_option("--gen", o.gen, "generated network: comb:N,H | butterfly | parallel:M");
  };
  auto add_field = [&](CLI::App* c) {
    c->add_option("--k", o.k, "field degree; GF(2^k) with the first primitive modulus")->check(CLI::Range(1, kMaxFieldDegree));
    c->add_option("--modulus", o.modulus, "explicit irreducible modulus, e.g. X^5+X^2+1");
    c->add_option("--seed", o.seed, "seed for the candidate order");
    c->add_flag("--best-effort", o.best_effort, "allow fields below the deterministic size bound");
    c->add_option("--out", o.out, "write the code JSON here instead of stdout");
  };
  auto add_format = [&](CLI::App* c) {
    c->add_option("--format", o.format, "report format")->check(CLI::IsMember({"text", "json"}));
  };

  CLI::App* gen = app.add_subcommand("gen-network", "print a generated network");
  gen->add_option("--gen", o.gen, "comb:N,H | butterfly | parallel:M")->required();
  gen->add_option("--out", o.out, "output file");
  add_format(gen);

  CLI::App* construct = app.add_subcommand("construct", "build a multicast code");
  add_net(construct);
  add_field(construct);
  construct->add_option("--h-prime", o.h_prime, "code dimension (default: the min-cut h)");

  CLI::App* nec_construct = app.add_subcommand("nec-construct", "build an error-correcting code meeting the Singleton bound");
  add_net(nec_construct);
  add_field(nec_construct);
  nec_construct->add_option("--alpha", o.alpha, "number of correctable edge errors")->required();
  nec_construct->add_flag("--randomized", o.randomized, "draw coefficients at random and retry");
  nec_construct->add_option("--retries", o.retries, "attempts in randomized mode");
  nec_construct->add_option("--witnesses", o.witnesses, "write rank witnesses as JSON");

  std::vector<CLI::Option*> seed_opts;
  CLI::App* reduce = app.add_subcommand("reduce", "shrink the field of a multicast code");
  CLI::App* nec_reduce = app.add_subcommand("nec-reduce", "shrink the field of an error-correcting code");
  for (CLI::App* c : {reduce, nec_reduce}) {
    add_net(c);
    add_format(c);
    c->add_option("--code", o.code_path, "code JSON")->required();
    c->add_option("--cap", o.cap, "largest i tried for X^(2^i)+X");
    seed_opts.push_back(c->add_option("--seed", o.seed, "seed recorded in the report (default: pinned)"));
    c->add_option("--out", o.out, "write the resulting code JSON here");
  }
  nec_reduce->add_option("--alpha", o.alpha, "number of correctable edge errors")->required();

  CLI::App* verify = app.add_subcommand("verify", "check a code");
  add_net(verify);
  verify->add_option("--code", o.code_path, "code JSON")->required();
  verify->add_option("--alpha", o.alpha, "check error correction instead of plain multicast");
  verify->add_flag("--decode-sweep", o.decode_sweep, "also run the exhaustive decoder on every message and error");
  verify->add_option("--witnesses", o.witnesses, "write rank witnesses as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }
  for (const CLI::Option* opt : seed_opts) o.seed_given = o.seed_given || opt->count() > 0;

  try {
    if (gen->parsed()) return cmd_gen(o);
    if (construct->parsed()) return cmd_construct(o);
    if (nec_construct->parsed()) return cmd_nec_construct(o);
    if (reduce->parsed()) return cmd_reduce(o, false);
    if (nec_reduce->parsed()) return cmd_reduce(o, true);
    if (verify->parsed()) return cmd_verify(o);
  } catch (const Infeasible& e) {
    std::cerr << "netcode: infeasible: " << e.what() << "\n";
    return kInfeasible;
  } catch (const BudgetExceeded& e) {
    std::cerr << "netcode: infeasible: " << e.what() << "\n";
    return kInfeasible;
  } catch (const ConsistencyError& e) {
    std::cerr << "netcode: " << e.what() << "\n";
    return kVerifyFailed;
  } catch (const Error& e) {
    std::cerr << "netcode: " << e.what() << "\n";
    return kUsage;
  } catch (const Json::exception& e) {
    std::cerr << "netcode: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
