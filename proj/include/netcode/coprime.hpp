#pragma once

// Least-degree irreducible coprime to f(X), filtered through X^(2^i)+X.
//
// X^(2^i)+X is the product of every irreducible whose degree divides i, so while f mod (X^(2^i)+X) is zero
// every irreducible of degree <= i divides f. The first i with a nonzero remainder r is the least degree at
// which a coprime irreducible exists, and any irreducible g of degree i divides X^(2^i)+X, hence
// gcd(g, f) = gcd(g, r). Candidates of that degree are tested against the short remainder only.

#include <optional>
#include <string>
#include <vector>

#include "netcode/binpoly.hpp"

namespace netcode {

struct CoprimeStep {
  int i = 0;
  BinPoly p;          // X^(2^i)+X
  BinPoly remainder;  // f mod p
};

struct CoprimeResult {
  std::optional<BinPoly> g;
  int j = 0;  // degree of g when found
  std::optional<BinPoly> first_nonzero_p;
  std::optional<BinPoly> reduced_remainder;
  int searched_cap = 0;
  std::vector<CoprimeStep> trace;

  bool found() const { return g.has_value(); }
};

struct CoprimeOptions {
  /// Re-test the returned g against the full f as well as the remainder.
  bool verify_against_f = false;
};

inline CoprimeResult least_degree_coprime(const BinPoly& f, int cap, CoprimeOptions opts = {}) {
  if (f.is_zero()) throw InvalidArgument("least_degree_coprime: every polynomial divides 0");
  if (cap < 1) throw InvalidArgument("least_degree_coprime: cap must be >= 1, got " + std::to_string(cap));
  if (cap > kMaxEnumeratedDegree) cap = kMaxEnumeratedDegree;
  CoprimeResult out;
  out.searched_cap = cap;
  for (int i = 1; i <= cap; ++i) {
    const std::size_t n = std::size_t{1} << i;
    CoprimeStep step{i, BinPoly::xn_plus_x(n), fold_mod_xn_plus_x(f, n)};
    out.trace.push_back(step);
    if (step.remainder.is_zero()) continue;
    out.j = i;
    out.first_nonzero_p = step.p;
    out.reduced_remainder = step.remainder;
    for (const BinPoly& candidate : irreducibles_of_degree(i)) {
      if (!coprime(candidate, step.remainder)) continue;
      if (opts.verify_against_f && !coprime(candidate, f)) {
        throw ConsistencyError("coprime candidate " + candidate.to_string() + " fails against the full polynomial");
      }
      out.g = candidate;
      return out;
    }
    // Unreachable for a correct remainder: some degree-i irreducible is coprime once r != 0.
    throw ConsistencyError("no degree-" + std::to_string(i) + " irreducible coprime to remainder " +
                           step.remainder.to_string());
  }
  out.j = 0;
  return out;
}

/// gcd(g, prod fs) == 1, which holds iff g is coprime to each factor.
inline bool product_coprime_check(const std::vector<BinPoly>& fs, const BinPoly& g) {
  if (g.is_zero()) throw InvalidArgument("product_coprime_check: g must be nonzero");
  BinPoly product = BinPoly::one();
  for (const BinPoly& f : fs) {
    if (f.is_zero()) throw InvalidArgument("product_coprime_check: factors must be nonzero");
    product *= f;
  }
  return coprime(g, product);
}

}  // namespace netcode
