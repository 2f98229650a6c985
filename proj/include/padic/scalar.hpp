#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

#include "padic/errors.hpp"

namespace padic {

/// Exact rational scalar; the computable dense subfield of Q_p. Arithmetic
/// never rounds, so every downstream result is exact.
using Rat = mpq_class;
using Int = mpz_class;

/// The local field K = Q_p: uniformizer pi = p, valuation ring Z_p, residue
/// field F_p of cardinality q = p.
struct FieldConfig {
  long p;

  /// Checks primality by trial division. p is capped below 2^31 so residue
  /// arithmetic stays within 64-bit products.
  explicit FieldConfig(long prime);

  long q() const { return p; }
  bool operator==(const FieldConfig&) const = default;
};

/// An element of Z ∪ {+inf}; valuations, with val(0) = +inf.
class ValInt {
 public:
  static ValInt infinity() { return ValInt(true, 0); }
  static ValInt of(long v) { return ValInt(false, v); }

  bool is_infinite() const { return inf_; }

  long value() const {
    if (inf_) throw std::logic_error("ValInt: value() of +inf");
    return v_;
  }

  friend bool operator==(const ValInt& a, const ValInt& b) {
    return a.inf_ == b.inf_ && (a.inf_ || a.v_ == b.v_);
  }
  friend bool operator<(const ValInt& a, const ValInt& b) {
    if (a.inf_) return false;
    if (b.inf_) return true;
    return a.v_ < b.v_;
  }
  friend bool operator<=(const ValInt& a, const ValInt& b) { return a < b || a == b; }
  friend bool operator>=(const ValInt& a, const ValInt& b) { return b <= a; }

  /// Valuation of a product; +inf absorbs.
  friend ValInt operator+(const ValInt& a, const ValInt& b) {
    if (a.inf_ || b.inf_) return infinity();
    return of(a.v_ + b.v_);
  }

  static ValInt min(const ValInt& a, const ValInt& b) { return a < b ? a : b; }

  std::string str() const { return inf_ ? "inf" : std::to_string(v_); }

 private:
  ValInt(bool inf, long v) : inf_(inf), v_(v) {}
  bool inf_;
  long v_;
};

/// An exact power of q (or zero): absolute values and norms. Stored as the
/// exponent so |x| = q^exponent never materializes a huge rational.
struct QPower {
  bool zero = true;
  long exponent = 0;

  static QPower zero_value() { return QPower{true, 0}; }
  static QPower of(long e) { return QPower{false, e}; }

  Rat rational(const FieldConfig& cfg) const;
  std::string str(const FieldConfig& cfg) const;

  bool operator==(const QPower&) const = default;
  friend bool operator<(const QPower& a, const QPower& b) {
    if (a.zero) return !b.zero;
    if (b.zero) return false;
    return a.exponent < b.exponent;
  }
};

/// Truncated digit expansion x = sum_{i >= start} digits[i] * pi^i with
/// digits in T = {0, ..., p-1}; the first digit is nonzero.
struct DigitExpansion {
  long start = 0;
  std::vector<long> digits;
};

/// p-adic valuation: the exponent m with x = p^m a/b, p coprime to a, b.
ValInt valuation(const Rat& x, const FieldConfig& cfg);

/// |x| = q^{-val(x)}, exactly; 0 for x = 0.
QPower abs_val(const Rat& x, const FieldConfig& cfg);

/// x mod pi as an element of F_p = {0, ..., p-1}. Requires val(x) >= 0.
long residue(const Rat& x, const FieldConfig& cfg);

/// First `count` digits of the unique expansion x = sum_{i>=n} u_i pi^i,
/// computed by repeated residue-and-subtract. x must be nonzero.
DigitExpansion digits(const Rat& x, const FieldConfig& cfg, long count);

/// p^k as an exact integer; k >= 0.
Int pow_p(const FieldConfig& cfg, long k);

/// pi^k = p^k as an exact rational, any sign of k.
Rat pow_pi(const FieldConfig& cfg, long k);

/// The partial digit sum of x over indices < n: the unique y with digits
/// supported on [val(x), n) and val(x - y) >= n. Zero when val(x) >= n.
Rat truncate_below(const Rat& x, long n, const FieldConfig& cfg);

/// Checked field division; the rest of the field arithmetic is Rat's own
/// exact operators.
Rat div_exact(const Rat& a, const Rat& b);

/// Inverse of a modulo m in {1, ..., m-1}; gcd(a, m) must be 1.
long mod_inverse(long a, long m);

/// Parse "a", "a/b" with optional sign. Throws ParseError.
Rat parse_scalar(std::string_view text);

std::string format_scalar(const Rat& x);

}  // namespace padic
