#include "mereology/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace mereology {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

mpz_class pow10(std::size_t n) {
  mpz_class r = 1;
  for (std::size_t i = 0; i < n; ++i) r *= 10;
  return r;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  value_ = mpq_class(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
  value_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  mpq_class v;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    auto num = body.substr(0, slash);
    auto den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) throw std::invalid_argument("malformed rational: " + std::string(text));
    mpz_class d{std::string(den)};
    if (d == 0) throw std::invalid_argument("zero denominator: " + std::string(text));
    v = mpq_class(mpz_class(std::string(num)), d);
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    auto whole = body.substr(0, dot);
    auto frac = body.substr(dot + 1);
    if (!all_digits(whole) || !all_digits(frac)) throw std::invalid_argument("malformed decimal: " + std::string(text));
    mpz_class scale = pow10(frac.size());
    v = mpq_class(mpz_class(std::string(whole)) * scale + mpz_class(std::string(frac)), scale);
  } else {
    if (!all_digits(body)) throw std::invalid_argument("malformed number: " + std::string(text));
    v = mpq_class(mpz_class(std::string(body)));
  }
  v.canonicalize();
  if (negative) v = -v;
  return Rational(v);
}

std::string Rational::to_string() const { return value_.get_str(); }

bool Rational::is_integer() const { return value_.get_den() == 1; }

std::int64_t Rational::to_int64() const {
  if (!is_integer() || !value_.get_num().fits_slong_p()) throw std::range_error("rational is not a machine integer: " + to_string());
  return value_.get_num().get_si();
}

Rational Rational::abs() const { return Rational(mpq_class(::abs(value_))); }

Rational operator/(const Rational& a, const Rational& b) {
  if (b.is_zero()) throw std::domain_error("division by zero");
  return Rational(mpq_class(a.value_ / b.value_));
}

std::size_t Rational::hash() const { return std::hash<std::string>{}(to_string()); }

}  // namespace mereology
