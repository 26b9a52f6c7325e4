// Copyright (c) 2026 The geoleo-rsma Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <span>
#include <vector>

namespace rsma {

// Coefficients in ascending order: c[0] + c[1] x + ... + c[n] x^n.
using Polynomial = std::vector<double>;

double evaluate_polynomial(std::span<const double> ascending, double x);
long double evaluate_polynomial_exact(std::span<const double> ascending, long double x);

// Distinct real roots in increasing order. Leading zero coefficients are
// dropped, so a cubic with vanishing leading term is solved as a quadratic
// (and so on). Roots come from the eigenvalues of the companion matrix and
// are polished by Newton steps in extended precision; near-real conjugate
// pairs produced by repeated roots are merged into one root.
// Throws std::invalid_argument for the identically zero polynomial.
std::vector<double> real_roots(std::span<const double> ascending);

// Product of two polynomials.
Polynomial multiply(const Polynomial& a, const Polynomial& b);

} // namespace rsma
