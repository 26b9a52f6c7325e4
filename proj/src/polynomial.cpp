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

#include "rsma/polynomial.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rsma {

namespace {

constexpr double kImagTolerance = 1e-6;
constexpr double kMergeTolerance = 1e-7;
constexpr int kPolishSteps = 60;

long double evaluate_derivative_exact(std::span<const double> c, long double x) {
    long double acc = 0.0L;
    for (std::size_t i = c.size(); i-- > 1;) acc = acc * x + static_cast<long double>(i) * c[i];
    return acc;
}

double polish(std::span<const double> c, double start) {
    long double x = start;
    long double best_x = x;
    long double best_r = std::fabs(evaluate_polynomial_exact(c, x));
    for (int it = 0; it < kPolishSteps && best_r > 0.0L; ++it) {
        const long double d = evaluate_derivative_exact(c, x);
        if (d == 0.0L) break;
        x -= evaluate_polynomial_exact(c, x) / d;
        const long double r = std::fabs(evaluate_polynomial_exact(c, x));
        if (!std::isfinite(static_cast<double>(x))) break;
        if (r < best_r) {
            best_r = r;
            best_x = x;
        } else if (it > 8) {
            break;
        }
    }
    return static_cast<double>(best_x);
}

} // namespace

double evaluate_polynomial(std::span<const double> c, double x) {
    double acc = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
    return acc;
}

long double evaluate_polynomial_exact(std::span<const double> c, long double x) {
    long double acc = 0.0L;
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
    return acc;
}

Polynomial multiply(const Polynomial& a, const Polynomial& b) {
    if (a.empty() || b.empty()) return {};
    Polynomial out(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

std::vector<double> real_roots(std::span<const double> ascending) {
    std::size_t n = ascending.size();
    while (n > 0 && ascending[n - 1] == 0.0) --n;
    if (n == 0) throw std::invalid_argument("real_roots: identically zero polynomial");
    const std::span<const double> c = ascending.first(n);

    std::vector<double> roots;
    // Exact zero roots are deflated so the companion matrix stays regular.
    std::size_t lead_zeros = 0;
    while (lead_zeros < n - 1 && c[lead_zeros] == 0.0) ++lead_zeros;
    if (lead_zeros > 0) roots.push_back(0.0);
    const std::span<const double> reduced = c.subspan(lead_zeros);
    const std::size_t degree = reduced.size() - 1;

    if (degree == 1) {
        roots.push_back(-reduced[0] / reduced[1]);
    } else if (degree >= 2) {
        Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(degree, degree);
        for (std::size_t i = 1; i < degree; ++i) companion(i, i - 1) = 1.0;
        for (std::size_t i = 0; i < degree; ++i)
            companion(i, degree - 1) = -reduced[i] / reduced[degree];
        Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
        const auto& ev = solver.eigenvalues();
        for (Eigen::Index i = 0; i < ev.size(); ++i) {
            const double re = ev[i].real();
            const double im = ev[i].imag();
            if (std::fabs(im) <= kImagTolerance * std::max(1.0, std::fabs(re))) {
                roots.push_back(polish(reduced, re));
            }
        }
    }

    std::sort(roots.begin(), roots.end());
    std::vector<double> distinct;
    for (double r : roots) {
        if (!distinct.empty() &&
            std::fabs(r - distinct.back()) <= kMergeTolerance * std::max(1.0, std::fabs(r))) {
            // Keep whichever representative has the smaller residual.
            if (std::fabs(evaluate_polynomial_exact(c, r)) <
                std::fabs(evaluate_polynomial_exact(c, distinct.back()))) {
                distinct.back() = r;
            }
            continue;
        }
        distinct.push_back(r);
    }
    return distinct;
}

} // namespace rsma
