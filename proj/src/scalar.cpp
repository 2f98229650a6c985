#include "padic/scalar.hpp"

#include <algorithm>
#include <cctype>

namespace padic {

namespace {

// Multiplicity of p in n, for n != 0.
long p_multiplicity(const mpz_class& n, long p) {
  mpz_class rest;
  mpz_class pz(p);
  return static_cast<long>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), pz.get_mpz_t()));
}

}  // namespace

FieldConfig::FieldConfig(long prime) : p(prime) {
  if (prime < 2 || prime > 2147483647L)
    fail(Err::InvalidPrime, "p must be a prime in [2, 2^31): got " + std::to_string(prime));
  if (prime % 2 == 0 && prime != 2)
    fail(Err::InvalidPrime, std::to_string(prime) + " is even");
  for (long d = 3; d * d <= prime; d += 2)
    if (prime % d == 0)
      fail(Err::InvalidPrime, std::to_string(prime) + " is divisible by " + std::to_string(d));
}

ValInt valuation(const Rat& x, const FieldConfig& cfg) {
  if (sgn(x) == 0) return ValInt::infinity();
  // num and den are coprime, so at most one of them carries p.
  long vn = p_multiplicity(x.get_num(), cfg.p);
  if (vn > 0) return ValInt::of(vn);
  long vd = p_multiplicity(x.get_den(), cfg.p);
  return ValInt::of(-vd);
}

QPower abs_val(const Rat& x, const FieldConfig& cfg) {
  ValInt v = valuation(x, cfg);
  if (v.is_infinite()) return QPower::zero_value();
  return QPower::of(-v.value());
}

Rat QPower::rational(const FieldConfig& cfg) const {
  if (zero) return Rat(0);
  return pow_pi(cfg, exponent);
}

std::string QPower::str(const FieldConfig& cfg) const {
  return format_scalar(rational(cfg));
}

long residue(const Rat& x, const FieldConfig& cfg) {
  if (mpz_fdiv_ui(x.get_den().get_mpz_t(), cfg.p) == 0)
    fail(Err::NegativeValuation,
         "residue of " + format_scalar(x) + " undefined: val < 0 at p = " + std::to_string(cfg.p));
  unsigned long rn = mpz_fdiv_ui(x.get_num().get_mpz_t(), cfg.p);
  if (rn == 0) return 0;
  unsigned long rd = mpz_fdiv_ui(x.get_den().get_mpz_t(), cfg.p);
  unsigned long inv = static_cast<unsigned long>(mod_inverse(static_cast<long>(rd), cfg.p));
  return static_cast<long>((rn * inv) % static_cast<unsigned long>(cfg.p));
}

DigitExpansion digits(const Rat& x, const FieldConfig& cfg, long count) {
  if (sgn(x) == 0) fail(Err::ZeroInput, "digit expansion of 0 has no leading exponent");
  if (count < 1) fail(Err::ZeroInput, "digit count must be >= 1");
  DigitExpansion out;
  out.start = valuation(x, cfg).value();
  Rat y = x / pow_pi(cfg, out.start);
  out.digits.reserve(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) {
    long d = residue(y, cfg);
    out.digits.push_back(d);
    y = (y - d) / cfg.p;
  }
  return out;
}

Int pow_p(const FieldConfig& cfg, long k) {
  Int r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(cfg.p), static_cast<unsigned long>(k));
  return r;
}

Rat pow_pi(const FieldConfig& cfg, long k) {
  if (k >= 0) return Rat(pow_p(cfg, k));
  Rat r(Int(1), pow_p(cfg, -k));
  r.canonicalize();
  return r;
}

Rat truncate_below(const Rat& x, long n, const FieldConfig& cfg) {
  if (sgn(x) == 0) return Rat(0);
  long m = valuation(x, cfg).value();
  if (m >= n) return Rat(0);
  // x = p^m a/b with a, b coprime to p; the truncation is p^m (a b^{-1} mod p^{n-m}).
  Rat unit = x / pow_pi(cfg, m);
  Int pk = pow_p(cfg, n - m);
  Int binv;
  if (mpz_invert(binv.get_mpz_t(), unit.get_den().get_mpz_t(), pk.get_mpz_t()) == 0)
    throw std::logic_error("truncate_below: denominator not invertible");
  Int c = unit.get_num() * binv;
  mpz_mod(c.get_mpz_t(), c.get_mpz_t(), pk.get_mpz_t());
  return Rat(c) * pow_pi(cfg, m);
}

Rat div_exact(const Rat& a, const Rat& b) {
  if (sgn(b) == 0) fail(Err::DivisionByZero, "division of " + format_scalar(a) + " by zero");
  return a / b;
}

long mod_inverse(long a, long m) {
  long t = 0, new_t = 1;
  long r = m, new_r = ((a % m) + m) % m;
  while (new_r != 0) {
    long q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  if (r != 1) throw std::logic_error("mod_inverse: arguments not coprime");
  return t < 0 ? t + m : t;
}

Rat parse_scalar(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  std::string_view sv = trim(text);
  if (sv.empty()) fail(Err::ParseError, "empty scalar");

  auto parse_int = [&](std::string_view part) {
    std::string_view body = part;
    if (!body.empty() && (body.front() == '+' || body.front() == '-')) body.remove_prefix(1);
    if (body.empty() || !std::all_of(body.begin(), body.end(), [](unsigned char c) {
          return std::isdigit(c);
        }))
      fail(Err::ParseError, "bad integer literal '" + std::string(part) + "'");
    return Int(std::string(part), 10);
  };

  std::size_t slash = sv.find('/');
  Int num, den;
  if (slash == std::string_view::npos) {
    num = parse_int(sv);
    den = 1;
  } else {
    num = parse_int(trim(sv.substr(0, slash)));
    den = parse_int(trim(sv.substr(slash + 1)));
    if (sgn(den) == 0) fail(Err::ParseError, "zero denominator in '" + std::string(text) + "'");
  }
  Rat r(num, den);
  r.canonicalize();
  return r;
}

std::string format_scalar(const Rat& x) {
  std::string s = x.get_num().get_str();
  if (x.get_den() != 1) s += "/" + x.get_den().get_str();
  return s;
}

}  // namespace padic
