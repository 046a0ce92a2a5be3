#include "lolasym/rational.hpp"

#include <cctype>

namespace lolasym {

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

std::optional<Rational> parse_rational(const std::string& text) {
  std::string s = text;
  bool neg = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    neg = s[0] == '-';
    s = s.substr(1);
  }
  if (s.empty()) return std::nullopt;

  Rational q;
  auto slash = s.find('/');
  auto dot = s.find('.');
  // Base 10 must be explicit: the default base-0 constructor would read a
  // leading zero ("09375" from a decimal fraction) as octal and throw.
  if (slash != std::string::npos) {
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) return std::nullopt;
    mpz_class d(den, 10);
    if (d == 0) return std::nullopt;
    q = Rational(mpz_class(num, 10), d);
    q.canonicalize();
  } else if (dot != std::string::npos) {
    std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
    if (ip.empty()) ip = "0";
    if (!all_digits(ip) || (!fp.empty() && !all_digits(fp))) return std::nullopt;
    mpz_class scale = 1;
    for (size_t i = 0; i < fp.size(); ++i) scale *= 10;
    mpz_class whole(ip, 10);
    mpz_class frac = fp.empty() ? mpz_class(0) : mpz_class(fp, 10);
    q = Rational(whole * scale + frac, scale);
    q.canonicalize();
  } else {
    if (!all_digits(s)) return std::nullopt;
    q = Rational(mpz_class(s, 10));
  }
  if (neg) q = -q;
  return q;
}

std::string rat_to_string(const Rational& q) { return q.get_str(); }

std::string rat_to_cell(const Rational& q) {
  mpz_class den = q.get_den();
  // Peel off factors of 2 and 5; a pure 2^a*5^b denominator has an exact
  // decimal expansion of a known width.
  mpz_class d = den;
  int twos = 0, fives = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++twos;
  }
  while (d % 5 == 0) {
    d /= 5;
    ++fives;
  }
  if (d != 1) return q.get_str();
  if (den == 1) return q.get_num().get_str();
  int digits = twos > fives ? twos : fives;
  mpz_class scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  mpz_class scaled = q.get_num() * (scale / den);
  bool neg = scaled < 0;
  if (neg) scaled = -scaled;
  std::string body = scaled.get_str();
  while ((int)body.size() <= digits) body.insert(body.begin(), '0');
  body.insert(body.size() - digits, ".");
  return (neg ? "-" : "") + body;
}

}  // namespace lolasym
