// Copyright 2026 The corrquery Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "corrquery/rational.h"

#include <cctype>
#include <string>

#include "corrquery/errors.h"

namespace corrquery {
namespace {

bool IsDigits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

BigInt ParseBigInt(std::string_view text) {
  std::string_view body = text;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    body.remove_prefix(1);
  }
  if (!IsDigits(body)) {
    throw UsageError("not an integer: '" + std::string(text) + "'");
  }
  std::string s(text);
  if (s.front() == '+') s.erase(0, 1);
  return BigInt(s, 10);
}

Rational ParseRational(std::string_view text) {
  if (text.empty()) throw UsageError("empty rational");
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    BigInt num = ParseBigInt(text.substr(0, slash));
    std::string_view den_text = text.substr(slash + 1);
    if (!IsDigits(den_text)) {
      throw UsageError("bad denominator in '" + std::string(text) + "'");
    }
    BigInt den(std::string(den_text), 10);
    if (den == 0) throw UsageError("zero denominator in '" + std::string(text) + "'");
    Rational r(num, den);
    r.canonicalize();
    return r;
  }

  // Decimal: sign, integer part, optional fraction, optional exponent.
  std::string_view rest = text;
  bool negative = false;
  if (rest.front() == '-' || rest.front() == '+') {
    negative = rest.front() == '-';
    rest.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = rest.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_text = rest.substr(e + 1);
    BigInt exp_value = ParseBigInt(exp_text);
    if (!exp_value.fits_slong_p() || abs(exp_value) > 4096) {
      throw UsageError("exponent out of range in '" + std::string(text) + "'");
    }
    exponent = exp_value.get_si();
    rest = rest.substr(0, e);
  }
  std::string digits;
  if (auto dot = rest.find('.'); dot != std::string_view::npos) {
    std::string_view whole = rest.substr(0, dot);
    std::string_view frac = rest.substr(dot + 1);
    if ((!whole.empty() && !IsDigits(whole)) || (!frac.empty() && !IsDigits(frac)) ||
        (whole.empty() && frac.empty())) {
      throw UsageError("not a number: '" + std::string(text) + "'");
    }
    digits = std::string(whole) + std::string(frac);
    exponent -= static_cast<long>(frac.size());
  } else {
    if (!IsDigits(rest)) throw UsageError("not a number: '" + std::string(text) + "'");
    digits = std::string(rest);
  }
  Rational r(BigInt(digits, 10));
  BigInt scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  if (exponent < 0) {
    r /= scale;
  } else {
    r *= scale;
  }
  r.canonicalize();
  return negative ? Rational(-r) : r;
}

std::string ToString(const Rational& value) {
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::string ToString(const BigInt& value) { return value.get_str(); }

double ToDouble(const Rational& value) { return value.get_d(); }

BigInt Floor(const Rational& value) {
  BigInt out;
  mpz_fdiv_q(out.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return out;
}

Rational LimitDenominator(const Rational& value, const BigInt& max_denominator) {
  if (max_denominator < 1) throw UsageError("max_denominator must be >= 1");
  if (value.get_den() <= max_denominator) return value;

  // Same scheme as Python's fractions.Fraction.limit_denominator.
  BigInt p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  BigInt n = value.get_num(), d = value.get_den();
  while (true) {
    BigInt a;
    mpz_fdiv_q(a.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    BigInt q2 = q0 + a * q1;
    if (q2 > max_denominator) break;
    BigInt p_next = p0 + a * p1;
    p0 = p1;
    q0 = q1;
    p1 = p_next;
    q1 = q2;
    BigInt r = n - a * d;
    n = d;
    d = r;
  }
  BigInt k;
  mpz_fdiv_q(k.get_mpz_t(), BigInt(max_denominator - q0).get_mpz_t(), q1.get_mpz_t());
  Rational bound1(p0 + k * p1, q0 + k * q1);
  Rational bound2(p1, q1);
  bound1.canonicalize();
  bound2.canonicalize();
  return abs(bound2 - value) <= abs(bound1 - value) ? bound2 : bound1;
}

Rational SqrtApprox(const Rational& value) {
  if (value < 0) throw UsageError("square root of a negative rational");
  if (value == 0) return Rational(0);
  // Integer square root of value * 4^k with enough guard bits.
  constexpr unsigned kBits = 256;
  BigInt scaled_num = value.get_num() << (2 * kBits);
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), scaled_num.get_mpz_t(), value.get_den_mpz_t());
  BigInt root;
  mpz_sqrt(root.get_mpz_t(), q.get_mpz_t());
  Rational out(root, PowerOfTwo(kBits));
  out.canonicalize();
  return out;
}

BigInt PowerOfTwo(unsigned k) {
  BigInt out;
  mpz_ui_pow_ui(out.get_mpz_t(), 2, k);
  return out;
}

}  // namespace corrquery
