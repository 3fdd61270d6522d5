#pragma once

// Polynomials over F_2 packed into 64-bit words, bit i = coefficient of X^i.

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <compare>
#include <cstdint>
#include <mutex>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "netcode/error.hpp"

namespace netcode {

class BinPoly {
 public:
  using Word = std::uint64_t;
  static constexpr int kWordBits = 64;

  BinPoly() = default;

  /// Polynomial whose coefficient bit pattern is `bits` (0x25 -> X^5+X^2+1).
  static BinPoly from_bits(Word bits) {
    BinPoly p;
    if (bits != 0) p.words_.push_back(bits);
    return p;
  }

  static BinPoly one() { return from_bits(1); }

  static BinPoly monomial(std::size_t exponent) {
    BinPoly p;
    p.words_.assign(exponent / kWordBits + 1, 0);
    p.words_.back() = Word{1} << (exponent % kWordBits);
    return p;
  }

  /// X^n + X, the polynomial whose roots are exactly GF(2^m) elements for n = 2^m.
  static BinPoly xn_plus_x(std::size_t n) {
    BinPoly p = monomial(n);
    p.flip(1);
    return p;
  }

  static BinPoly from_words(std::vector<Word> words) {
    BinPoly p;
    p.words_ = std::move(words);
    p.trim();
    return p;
  }

  /// Accepts "X^5+X^2+1" (case-insensitive, spaces ignored, repeated terms cancel) or "0x25".
  static BinPoly parse(std::string_view text);

  bool is_zero() const { return words_.empty(); }
  bool is_one() const { return words_.size() == 1 && words_[0] == 1; }

  /// Degree, or -1 for the zero polynomial.
  int degree() const {
    if (words_.empty()) return -1;
    return static_cast<int>((words_.size() - 1) * kWordBits) + (kWordBits - 1 - std::countl_zero(words_.back()));
  }

  bool coeff(std::size_t i) const {
    const std::size_t w = i / kWordBits;
    return w < words_.size() && ((words_[w] >> (i % kWordBits)) & 1U);
  }

  void flip(std::size_t i) {
    const std::size_t w = i / kWordBits;
    if (w >= words_.size()) words_.resize(w + 1, 0);
    words_[w] ^= Word{1} << (i % kWordBits);
    trim();
  }

  std::size_t popcount() const {
    std::size_t n = 0;
    for (Word w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }

  const std::vector<Word>& words() const { return words_; }

  /// Low 64 coefficients; throws if the polynomial does not fit.
  Word to_bits() const {
    if (words_.size() > 1) throw InvalidArgument("polynomial of degree " + std::to_string(degree()) + " does not fit in 64 bits");
    return words_.empty() ? 0 : words_[0];
  }

  /// Coefficients [offset, offset+len) as a new polynomial (bit offset maps to X^0).
  BinPoly extract(std::size_t offset, std::size_t len) const {
    if (len == 0) return {};
    const std::size_t out_words = (len + kWordBits - 1) / kWordBits;
    std::vector<Word> out(out_words, 0);
    const std::size_t src = offset / kWordBits;
    const unsigned shift = offset % kWordBits;
    for (std::size_t i = 0; i < out_words && src + i < words_.size(); ++i) {
      Word lo = words_[src + i] >> shift;
      Word hi = 0;
      if (shift != 0 && src + i + 1 < words_.size()) hi = words_[src + i + 1] << (kWordBits - shift);
      out[i] = lo | hi;
    }
    if (len % kWordBits != 0) out.back() &= (Word{1} << (len % kWordBits)) - 1;
    return from_words(std::move(out));
  }

  BinPoly& operator+=(const BinPoly& o) {
    if (o.words_.size() > words_.size()) words_.resize(o.words_.size(), 0);
    for (std::size_t i = 0; i < o.words_.size(); ++i) words_[i] ^= o.words_[i];
    trim();
    return *this;
  }

  BinPoly& operator<<=(std::size_t s) {
    if (is_zero() || s == 0) return *this;
    const std::size_t ws = s / kWordBits;
    const unsigned bs = s % kWordBits;
    std::vector<Word> out(words_.size() + ws + 1, 0);
    for (std::size_t i = 0; i < words_.size(); ++i) {
      out[i + ws] |= words_[i] << bs;
      if (bs != 0) out[i + ws + 1] |= words_[i] >> (kWordBits - bs);
    }
    words_ = std::move(out);
    trim();
    return *this;
  }

  BinPoly& operator>>=(std::size_t s) {
    const int d = degree();
    if (d < 0) return *this;
    if (s > static_cast<std::size_t>(d)) {
      words_.clear();
      return *this;
    }
    *this = extract(s, static_cast<std::size_t>(d) + 1 - s);
    return *this;
  }

  friend BinPoly operator+(BinPoly a, const BinPoly& b) { return a += b; }
  friend BinPoly operator-(BinPoly a, const BinPoly& b) { return a += b; }
  friend BinPoly operator<<(BinPoly a, std::size_t s) { return a <<= s; }
  friend BinPoly operator>>(BinPoly a, std::size_t s) { return a >>= s; }
  friend BinPoly operator*(const BinPoly& a, const BinPoly& b);
  BinPoly& operator*=(const BinPoly& o) { return *this = *this * o; }

  friend bool operator==(const BinPoly&, const BinPoly&) = default;

  /// Orders by the integer value of the coefficient pattern.
  friend std::strong_ordering operator<=>(const BinPoly& a, const BinPoly& b) {
    if (a.words_.size() != b.words_.size()) return a.words_.size() <=> b.words_.size();
    for (std::size_t i = a.words_.size(); i-- > 0;) {
      if (a.words_[i] != b.words_[i]) return a.words_[i] <=> b.words_[i];
    }
    return std::strong_ordering::equal;
  }

  /// Descending-power text form, "0" for zero.
  std::string to_string() const {
    if (is_zero()) return "0";
    std::string out;
    for (int i = degree(); i >= 0; --i) {
      if (!coeff(static_cast<std::size_t>(i))) continue;
      if (!out.empty()) out += '+';
      if (i == 0) out += '1';
      else if (i == 1) out += 'X';
      else out += "X^" + std::to_string(i);
    }
    return out;
  }

  std::string to_hex() const {
    if (is_zero()) return "0x0";
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out;
    for (int nib = degree() / 4; nib >= 0; --nib) {
      const auto n = static_cast<std::size_t>(nib);
      out += kDigits[(words_[n / 16] >> ((n % 16) * 4)) & 0xF];
    }
    return "0x" + out;
  }

 private:
  void trim() {
    while (!words_.empty() && words_.back() == 0) words_.pop_back();
  }

  std::vector<Word> words_;
};

namespace detail {

/// 64x64 -> 128 carry-less product, returned as (low, high).
inline std::pair<std::uint64_t, std::uint64_t> clmul64(std::uint64_t a, std::uint64_t b) {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  while (b != 0) {
    const int i = std::countr_zero(b);
    lo ^= a << i;
    if (i != 0) hi ^= a >> (64 - i);
    b &= b - 1;
  }
  return {lo, hi};
}

inline int degree_u64(std::uint64_t a) { return a == 0 ? -1 : 63 - std::countl_zero(a); }

/// a mod m for polynomials that fit in a machine word.
inline std::uint64_t mod_u64(std::uint64_t a, std::uint64_t m) {
  const int dm = degree_u64(m);
  for (int da = degree_u64(a); da >= dm; da = degree_u64(a)) a ^= m << (da - dm);
  return a;
}

}  // namespace detail

inline BinPoly operator*(const BinPoly& a, const BinPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  const auto& aw = a.words();
  const auto& bw = b.words();
  std::vector<BinPoly::Word> out(aw.size() + bw.size(), 0);
  for (std::size_t i = 0; i < aw.size(); ++i) {
    if (aw[i] == 0) continue;
    for (std::size_t j = 0; j < bw.size(); ++j) {
      const auto [lo, hi] = detail::clmul64(aw[i], bw[j]);
      out[i + j] ^= lo;
      out[i + j + 1] ^= hi;
    }
  }
  return BinPoly::from_words(std::move(out));
}

inline BinPoly add(const BinPoly& a, const BinPoly& b) { return a + b; }
inline BinPoly mul(const BinPoly& a, const BinPoly& b) { return a * b; }

struct DivMod {
  BinPoly quotient;
  BinPoly remainder;
};

inline DivMod divmod(const BinPoly& a, const BinPoly& b) {
  if (b.is_zero()) throw InvalidArgument("division by the zero polynomial");
  const int db = b.degree();
  BinPoly r = a;
  std::vector<BinPoly::Word> q;
  for (int dr = r.degree(); dr >= db; dr = r.degree()) {
    const auto shift = static_cast<std::size_t>(dr - db);
    if (q.size() <= shift / 64) q.resize(shift / 64 + 1, 0);
    q[shift / 64] ^= BinPoly::Word{1} << (shift % 64);
    r += b << shift;
  }
  return {BinPoly::from_words(std::move(q)), std::move(r)};
}

inline BinPoly operator%(const BinPoly& a, const BinPoly& b) {
  if (b.is_zero()) throw InvalidArgument("division by the zero polynomial");
  if (a.words().size() <= 1 && b.words().size() <= 1) {
    return BinPoly::from_bits(detail::mod_u64(a.is_zero() ? 0 : a.words()[0], b.words()[0]));
  }
  return divmod(a, b).remainder;
}

inline BinPoly operator/(const BinPoly& a, const BinPoly& b) { return divmod(a, b).quotient; }

inline BinPoly gcd(BinPoly a, BinPoly b) {
  if (a.is_zero() && b.is_zero()) throw InvalidArgument("gcd(0, 0) is undefined");
  while (!b.is_zero()) {
    BinPoly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

inline bool coprime(const BinPoly& a, const BinPoly& b) { return gcd(a, b).is_one(); }

/// (a * b) mod m
inline BinPoly mulmod(const BinPoly& a, const BinPoly& b, const BinPoly& m) { return (a * b) % m; }

/// f mod (X^n + X) by folding: X^e with e >= n maps to X^(e-(n-1)), so the coefficients f_1, f_2, ...
/// are summed in rows of width n-1 while f_0 stays where it is.
inline BinPoly fold_mod_xn_plus_x(const BinPoly& f, std::size_t n) {
  if (n < 2) throw InvalidArgument("fold_mod_xn_plus_x requires n >= 2, got " + std::to_string(n));
  const int d = f.degree();
  if (d < static_cast<int>(n)) return f;
  const std::size_t width = n - 1;
  BinPoly acc;
  for (std::size_t offset = 1; offset <= static_cast<std::size_t>(d); offset += width) {
    acc += f.extract(offset, width);
  }
  acc <<= 1;
  if (f.coeff(0)) acc.flip(0);
  return acc;
}

/// Largest degree served by irreducibles_of_degree (trial-division enumeration).
inline constexpr int kMaxEnumeratedDegree = 16;

namespace detail {

struct IrreducibleTable {
  std::array<std::once_flag, kMaxEnumeratedDegree + 1> once;
  std::array<std::vector<std::uint64_t>, kMaxEnumeratedDegree + 1> by_degree;
};

inline IrreducibleTable& irreducible_table() {
  static IrreducibleTable table;
  return table;
}

inline const std::vector<std::uint64_t>& irreducible_bits(int d) {
  auto& table = irreducible_table();
  std::call_once(table.once[static_cast<std::size_t>(d)], [&table, d] {
    std::vector<std::uint64_t> out;
    const std::uint64_t lo = std::uint64_t{1} << d;
    const std::uint64_t hi = std::uint64_t{1} << (d + 1);
    for (std::uint64_t p = lo; p < hi; ++p) {
      bool irreducible = true;
      for (int e = 1; irreducible && 2 * e <= d; ++e) {
        for (std::uint64_t q : irreducible_bits(e)) {
          if (mod_u64(p, q) == 0) {
            irreducible = false;
            break;
          }
        }
      }
      if (irreducible) out.push_back(p);
    }
    table.by_degree[static_cast<std::size_t>(d)] = std::move(out);
  });
  return table.by_degree[static_cast<std::size_t>(d)];
}

inline std::vector<int> prime_factors(std::uint64_t n) {
  std::vector<int> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(static_cast<int>(p));
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) out.push_back(static_cast<int>(n));
  return out;
}

/// X^(2^i) mod m
inline BinPoly frobenius_power_of_x(std::size_t i, const BinPoly& m) {
  BinPoly x = BinPoly::from_bits(2) % m;
  for (std::size_t j = 0; j < i; ++j) x = mulmod(x, x, m);
  return x;
}

}  // namespace detail

/// All irreducible polynomials of exact degree d, ascending by coefficient pattern.
inline std::vector<BinPoly> irreducibles_of_degree(int d) {
  if (d < 1 || d > kMaxEnumeratedDegree) {
    throw InvalidArgument("irreducible enumeration supports degrees 1.." + std::to_string(kMaxEnumeratedDegree) +
                          ", got " + std::to_string(d));
  }
  std::vector<BinPoly> out;
  for (std::uint64_t bits : detail::irreducible_bits(d)) out.push_back(BinPoly::from_bits(bits));
  return out;
}

/// Trial division up to the enumeration cap; above it, the deterministic Rabin test
/// (X^(2^d) = X mod p and gcd(X^(2^(d/r)) - X, p) = 1 for every prime r | d).
inline bool is_irreducible(const BinPoly& p) {
  const int d = p.degree();
  if (d < 1) throw InvalidArgument("irreducibility is undefined for constant polynomial " + p.to_string());
  if (d <= kMaxEnumeratedDegree) {
    const auto& list = detail::irreducible_bits(d);
    return std::binary_search(list.begin(), list.end(), p.to_bits());
  }
  const auto n = static_cast<std::size_t>(d);
  const BinPoly x = BinPoly::from_bits(2);
  if (detail::frobenius_power_of_x(n, p) != x) return false;
  for (int r : detail::prime_factors(n)) {
    const BinPoly t = detail::frobenius_power_of_x(n / static_cast<std::size_t>(r), p) + x;
    if (!coprime(t, p)) return false;
  }
  return true;
}

inline BinPoly BinPoly::parse(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  }
  if (s.empty()) throw InvalidArgument("empty polynomial text");
  if (s.size() > 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) {
    BinPoly p;
    for (std::size_t i = 2; i < s.size(); ++i) {
      const char c = static_cast<char>(std::tolower(static_cast<unsigned char>(s[i])));
      int v = 0;
      if (c >= '0' && c <= '9') v = c - '0';
      else if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
      else throw InvalidArgument("bad hex digit in polynomial '" + std::string(text) + "'");
      p <<= 4;
      p += from_bits(static_cast<Word>(v));
    }
    return p;
  }
  BinPoly p;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const std::size_t end = std::min(s.find('+', pos), s.size());
    const std::string term = s.substr(pos, end - pos);
    if (term == "1") {
      p.flip(0);
    } else if (term == "0") {
      // explicit zero term contributes nothing
    } else if (term == "X" || term == "x") {
      p.flip(1);
    } else if (term.size() > 2 && (term[0] == 'X' || term[0] == 'x') && term[1] == '^') {
      const std::string digits = term.substr(2);
      if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
        throw InvalidArgument("bad exponent in polynomial term '" + term + "'");
      }
      p.flip(std::stoul(digits));
    } else {
      throw InvalidArgument("bad polynomial term '" + term + "' in '" + std::string(text) + "'");
    }
    if (end == s.size()) break;
    pos = end + 1;
  }
  return p;
}

}  // namespace netcode
