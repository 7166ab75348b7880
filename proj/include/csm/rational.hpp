// Copyright 2026 The CSM Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CSM_RATIONAL_HPP_
#define CSM_RATIONAL_HPP_

#include <gmpxx.h>

#include <string>

namespace csm {

using Rational = mpq_class;

// Accepts "p/q", integers and plain decimals such as "0.25"; no exponents.
// Throws std::invalid_argument on malformed text.
Rational parse_rational(const std::string& text);

// Canonical text: "p/q" in lowest terms, or "p" when the denominator is 1.
std::string to_string(const Rational& value);

}  // namespace csm

#endif  // CSM_RATIONAL_HPP_
