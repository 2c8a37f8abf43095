#include "ioopt/dense.hpp"

#include <charconv>
#include <cctype>
#include <cmath>

namespace ioopt {

double to_double(const Rational& x) {
  const int sign = sgn(x);
  if (sign == 0) return 0.0;
  mpz_class n = abs(x.get_num());
  mpz_class d = x.get_den();
  const long shift = 55 - (static_cast<long>(mpz_sizeinbase(n.get_mpz_t(), 2)) -
                           static_cast<long>(mpz_sizeinbase(d.get_mpz_t(), 2)));
  if (shift > 0)
    n <<= shift;
  else
    d <<= -shift;
  mpz_class q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  const long extra = static_cast<long>(mpz_sizeinbase(q.get_mpz_t(), 2)) - 53;
  const long exponent = extra - shift;
  if (exponent + 53 < -1021) return x.get_d();  // subnormal range
  mpz_class low = q & ((mpz_class(1) << extra) - 1);
  q >>= extra;
  const mpz_class half = mpz_class(1) << (extra - 1);
  if (low > half || (low == half && (r != 0 || mpz_odd_p(q.get_mpz_t())))) ++q;
  const double magnitude = std::ldexp(q.get_d(), static_cast<int>(exponent));
  return sign < 0 ? -magnitude : magnitude;
}

Matrix<double> to_double(const Matrix<Rational>& m) {
  Matrix<double> out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = to_double(m(i, j));
  return out;
}

Vector<double> to_double(std::span<const Rational> v) {
  Vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = to_double(v[i]);
  return out;
}

Matrix<Rational> to_rational(const Matrix<double>& m) {
  Matrix<Rational> out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = Rational(m(i, j));
  return out;
}

Vector<Rational> to_rational(std::span<const double> v) {
  Vector<Rational> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = Rational(v[i]);
  return out;
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double sum(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

mpz_class pow10(unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

}  // namespace

std::optional<Rational> parse_exact(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) return std::nullopt;

  bool negative = false;
  if (text.front() == '+' || text.front() == '-') {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = text.substr(0, slash);
    auto den = text.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) return std::nullopt;
    mpz_class d{std::string(den), 10};
    if (d == 0) return std::nullopt;
    Rational q{mpz_class{std::string(num), 10}, d};
    q.canonicalize();
    return negative ? Rational(-q) : q;
  }

  long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    auto exp_text = text.substr(e + 1);
    bool exp_negative = false;
    if (!exp_text.empty() && (exp_text.front() == '+' || exp_text.front() == '-')) {
      exp_negative = exp_text.front() == '-';
      exp_text.remove_prefix(1);
    }
    if (!all_digits(exp_text) || exp_text.size() > 6) return std::nullopt;
    std::from_chars(exp_text.data(), exp_text.data() + exp_text.size(), exponent);
    if (exp_negative) exponent = -exponent;
    text = text.substr(0, e);
  }

  std::string_view int_part = text;
  std::string_view frac_part;
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    int_part = text.substr(0, dot);
    frac_part = text.substr(dot + 1);
  }
  if (int_part.empty() && frac_part.empty()) return std::nullopt;
  if (!int_part.empty() && !all_digits(int_part)) return std::nullopt;
  if (!frac_part.empty() && !all_digits(frac_part)) return std::nullopt;

  std::string digits = std::string(int_part) + std::string(frac_part);
  mpz_class mantissa(digits.empty() ? std::string("0") : digits, 10);
  long scale = static_cast<long>(frac_part.size()) - exponent;
  Rational q;
  if (scale >= 0) {
    q = Rational(mantissa, pow10(static_cast<unsigned long>(scale)));
  } else {
    q = Rational(mantissa * pow10(static_cast<unsigned long>(-scale)));
  }
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

std::string format_double(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) return "nan";
  return std::string(buf, end);
}

std::string format_exact(const Rational& x) {
  mpz_class den = x.get_den();
  unsigned long twos = 0, fives = 0;
  while (mpz_divisible_ui_p(den.get_mpz_t(), 2)) {
    den /= 2;
    ++twos;
  }
  while (mpz_divisible_ui_p(den.get_mpz_t(), 5)) {
    den /= 5;
    ++fives;
  }
  if (den != 1) return x.get_str();

  const unsigned long places = std::max(twos, fives);
  mpz_class scaled = x.get_num() * pow10(places) / x.get_den();
  const bool negative = scaled < 0;
  if (negative) scaled = -scaled;
  std::string digits = scaled.get_str();
  if (places > 0) {
    if (digits.size() <= places) digits.insert(0, places - digits.size() + 1, '0');
    digits.insert(digits.size() - places, ".");
  }
  return negative ? "-" + digits : digits;
}

Vector<Rational> characteristic_polynomial(const Matrix<Rational>& m) {
  if (!m.square()) throw std::invalid_argument("characteristic polynomial of non-square matrix");
  const std::size_t n = m.rows();
  Vector<Rational> c(n + 1);
  c[n] = 1;
  Matrix<Rational> mk(n, n);  // M_0 = 0
  for (std::size_t k = 1; k <= n; ++k) {
    Matrix<Rational> next = m * mk;
    for (std::size_t i = 0; i < n; ++i) next(i, i) += c[n - k + 1];
    mk = std::move(next);
    Matrix<Rational> amk = m * mk;
    Rational trace = 0;
    for (std::size_t i = 0; i < n; ++i) trace += amk(i, i);
    c[n - k] = -trace / Rational(static_cast<long>(k));
  }
  return c;
}

}  // namespace ioopt
