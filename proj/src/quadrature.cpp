// Copyright 2026 The nlm Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "nlm/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "nlm/error.hpp"

namespace nlm {

QuadratureRule gauss_legendre(int n, double a, double b) {
  if (n < 1) throw Error(ErrorCode::kCoupling, "quadrature needs at least one point");
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  // Newton iteration on P_n from the Tricomi initial guess; roots are
  // symmetric so only the upper half is solved.
  const int m = (n + 1) / 2;
  for (int i = 1; i <= m; ++i) {
    double z = std::cos(std::numbers::pi * (i - 0.25) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0;
      double p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      dp = n * (z * p1 - p2) / (z * z - 1.0);
      const double z_prev = z;
      z = z_prev - p1 / dp;
      if (std::fabs(z - z_prev) <= 1e-15) {
        // One more evaluation of the derivative at the converged root.
        p1 = 1.0;
        p2 = 0.0;
        for (int j = 1; j <= n; ++j) {
          const double p3 = p2;
          p2 = p1;
          p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
        }
        dp = n * (z * p1 - p2) / (z * z - 1.0);
        break;
      }
    }
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.nodes[i - 1] = mid - half * z;
    rule.nodes[n - i] = mid + half * z;
    rule.weights[i - 1] = half * w;
    rule.weights[n - i] = half * w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = mid;
  return rule;
}

}  // namespace nlm
