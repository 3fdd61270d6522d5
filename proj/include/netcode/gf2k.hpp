#pragma once

// GF(2^k) = F_2[X]/(b(X)) with residues packed in a machine word (k <= 32).

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "netcode/binpoly.hpp"
#include "netcode/error.hpp"

namespace netcode {

inline constexpr int kMaxFieldDegree = 32;

/// A binary extension field described by its irreducible modulus. Cheap to copy.
class Field {
 public:
  /// Field defined by any irreducible modulus of degree 1..32.
  static Field from_modulus(const BinPoly& modulus) {
    const int k = modulus.degree();
    if (k < 1 || k > kMaxFieldDegree) {
      throw InvalidArgument("field modulus must have degree 1.." + std::to_string(kMaxFieldDegree) + ", got " +
                            modulus.to_string());
    }
    if (!is_irreducible(modulus)) throw InvalidArgument("field modulus " + modulus.to_string() + " is reducible");
    return Field(k, modulus.to_bits());
  }

  /// Like from_modulus but additionally requires X to generate the multiplicative group.
  static Field primitive(const BinPoly& modulus) {
    Field f = from_modulus(modulus);
    if (!f.is_primitive()) throw InvalidArgument("field modulus " + modulus.to_string() + " is not primitive");
    return f;
  }

  /// Smallest (by coefficient pattern) primitive polynomial of degree k.
  static Field first_primitive(int k) {
    if (k < 1 || k > kMaxFieldDegree) throw InvalidArgument("field degree out of range: " + std::to_string(k));
    const std::uint64_t lo = std::uint64_t{1} << k;
    for (std::uint64_t bits = lo | 1; bits < (lo << 1); bits += 2) {
      const BinPoly p = BinPoly::from_bits(bits);
      if (!is_irreducible(p)) continue;
      Field f(k, bits);
      if (f.is_primitive()) return f;
    }
    throw Error("no primitive polynomial of degree " + std::to_string(k));
  }

  int degree() const { return k_; }
  std::uint64_t size() const { return std::uint64_t{1} << k_; }
  std::uint64_t modulus_bits() const { return modulus_; }
  BinPoly modulus() const { return BinPoly::from_bits(modulus_); }

  std::uint64_t reduce(std::uint64_t r) const { return detail::mod_u64(r, modulus_); }

  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    const auto [lo, hi] = detail::clmul64(a, b);
    (void)hi;  // k <= 32 keeps the product inside 63 bits
    return reduce(lo);
  }

  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const {
    std::uint64_t r = 1;
    while (e != 0) {
      if (e & 1U) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }

  /// Multiplicative order of the residue class of X.
  std::uint64_t order_of_x() const {
    const std::uint64_t group = size() - 1;
    std::uint64_t order = group;
    const std::uint64_t x = reduce(2);
    for (int p : detail::prime_factors(group)) {
      const auto up = static_cast<std::uint64_t>(p);
      while (order % up == 0 && pow(x, order / up) == 1) order /= up;
    }
    return order;
  }

  bool is_primitive() const { return order_of_x() == size() - 1; }

  std::string to_string() const { return "GF(2^" + std::to_string(k_) + ")/(" + modulus().to_string() + ")"; }

  friend bool operator==(const Field&, const Field&) = default;

 private:
  Field(int k, std::uint64_t modulus) : k_(k), modulus_(modulus) {}

  int k_ = 1;
  std::uint64_t modulus_ = 3;
};

/// An element of a Field, stored as its residue polynomial (degree < k).
class FieldElem {
 public:
  FieldElem(Field field, std::uint64_t residue) : field_(field), residue_(field.reduce(residue)) {}

  static FieldElem zero(Field f) { return {f, 0}; }
  static FieldElem one(Field f) { return {f, 1}; }

  /// beta^e where beta is the residue class of X.
  static FieldElem from_power(Field f, std::uint64_t e) {
    return {f, f.pow(f.reduce(2), e % (f.size() - 1))};
  }

  /// Accepts "0", "1", "b^e", "0x..." (residue bits) or a polynomial such as "X^2+1".
  static FieldElem parse(Field f, std::string_view text);

  const Field& field() const { return field_; }
  std::uint64_t residue() const { return residue_; }
  bool is_zero() const { return residue_ == 0; }
  bool is_one() const { return residue_ == 1; }

  /// The residue as a free polynomial of degree <= k-1.
  BinPoly to_binpoly() const { return BinPoly::from_bits(residue_); }

  FieldElem inverse() const {
    if (residue_ == 0) throw InvalidArgument("inverse of zero in " + field_.to_string());
    return {field_, field_.pow(residue_, field_.size() - 2)};
  }

  FieldElem pow(std::uint64_t e) const { return {field_, field_.pow(residue_, e)}; }

  FieldElem& operator+=(const FieldElem& o) {
    check_same(o);
    residue_ ^= o.residue_;
    return *this;
  }
  FieldElem& operator*=(const FieldElem& o) {
    check_same(o);
    residue_ = field_.mul(residue_, o.residue_);
    return *this;
  }
  friend FieldElem operator+(FieldElem a, const FieldElem& b) { return a += b; }
  friend FieldElem operator-(FieldElem a, const FieldElem& b) { return a += b; }
  friend FieldElem operator*(FieldElem a, const FieldElem& b) { return a *= b; }
  friend FieldElem operator/(const FieldElem& a, const FieldElem& b) { return a * b.inverse(); }

  friend bool operator==(const FieldElem&, const FieldElem&) = default;

  /// Exponent e with beta^e == *this, if X generates this element (searched only for k <= 16).
  std::optional<std::uint64_t> log() const {
    if (residue_ == 0 || field_.degree() > 16) return std::nullopt;
    const std::uint64_t x = field_.reduce(2);
    std::uint64_t acc = 1;
    for (std::uint64_t e = 0; e + 1 < field_.size(); ++e) {
      if (acc == residue_) return e;
      acc = field_.mul(acc, x);
      if (acc == 1) break;
    }
    return std::nullopt;
  }

  /// "0", "1", "b", "b^e", or the hex residue when no power form is available.
  std::string to_string() const {
    if (residue_ == 0) return "0";
    if (residue_ == 1) return "1";
    if (auto e = log()) return *e == 1 ? std::string("b") : "b^" + std::to_string(*e);
    return to_binpoly().to_hex();
  }

  std::string to_hex() const { return to_binpoly().to_hex(); }

 private:
  void check_same(const FieldElem& o) const {
    if (!(field_ == o.field_)) {
      throw InvalidArgument("field mismatch: " + field_.to_string() + " vs " + o.field_.to_string());
    }
  }

  Field field_;
  std::uint64_t residue_;
};

inline FieldElem elem_from_power(Field f, std::uint64_t e) { return FieldElem::from_power(f, e); }

inline BinPoly to_binpoly(const FieldElem& a) { return a.to_binpoly(); }

/// Residue of p modulo an irreducible g, as an element of F_2[X]/(g).
inline FieldElem reduce_into_field(const BinPoly& p, const BinPoly& g) {
  const Field f = Field::from_modulus(g);
  return {f, (p % g).to_bits()};
}

inline FieldElem reduce_into_field(const BinPoly& p, const Field& f) {
  return {f, (p % f.modulus()).to_bits()};
}

inline FieldElem FieldElem::parse(Field f, std::string_view text) {
  std::string s;
  for (char c : text) {
    if (c != ' ') s += c;
  }
  if (s.size() >= 2 && (s[0] == 'b' || s[0] == 'B')) {
    if (s[1] != '^') throw InvalidArgument("bad field element '" + std::string(text) + "'");
    try {
      return from_power(f, std::stoull(s.substr(2)));
    } catch (const std::logic_error&) {
      throw InvalidArgument("bad exponent in field element '" + std::string(text) + "'");
    }
  }
  if (s == "b" || s == "B") return from_power(f, 1);
  const BinPoly p = BinPoly::parse(s);
  if (p.degree() >= f.degree()) {
    throw InvalidArgument("field element '" + std::string(text) + "' is not reduced modulo " + f.modulus().to_string());
  }
  return {f, p.to_bits()};
}

}  // namespace netcode
