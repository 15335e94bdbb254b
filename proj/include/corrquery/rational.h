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

#ifndef CORRQUERY_RATIONAL_H_
#define CORRQUERY_RATIONAL_H_

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace corrquery {

using BigInt = mpz_class;
using Rational = mpq_class;

// Accepts "p/q", an integer "p", or a plain decimal "0.05" / "1e-3".
// Decimals are converted exactly (0.05 == 1/20).
Rational ParseRational(std::string_view text);
BigInt ParseBigInt(std::string_view text);

// Canonical "p/q" form; integers are written "p/1".
std::string ToString(const Rational& value);
std::string ToString(const BigInt& value);

double ToDouble(const Rational& value);

// Largest integer not exceeding `value`.
BigInt Floor(const Rational& value);

// Closest fraction to `value` with denominator at most `max_denominator`
// (best rational approximation via continued fractions).
Rational LimitDenominator(const Rational& value, const BigInt& max_denominator);

// Rational approximation of sqrt(value) good to well below 2^-200, for
// feeding LimitDenominator.
Rational SqrtApprox(const Rational& value);

// 2^k as a big integer.
BigInt PowerOfTwo(unsigned k);

}  // namespace corrquery

#endif  // CORRQUERY_RATIONAL_H_
