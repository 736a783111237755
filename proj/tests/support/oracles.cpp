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

#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace nlm::oracle {

namespace {

constexpr double kPi = std::numbers::pi;

// int_0^L sin(k pi x / L) dx, including k <= 0.
double sine_integral(int k, double length) {
  if (k == 0) return 0.0;
  if (k < 0) return -sine_integral(-k, length);
  return k % 2 == 1 ? 2.0 * length / (k * kPi) : 0.0;
}

}  // namespace

double sss(int i, int j, int k, double length) {
  return 0.25 * (sine_integral(i + j - k, length) + sine_integral(i - j + k, length) -
                 sine_integral(i + j + k, length) - sine_integral(i - j - k, length));
}

double scc(int i, int j, int k, double length) {
  return 0.25 * (sine_integral(i + j - k, length) + sine_integral(i - j + k, length) +
                 sine_integral(i + j + k, length) + sine_integral(i - j - k, length));
}

double reference_H(int pm, int pn, int qm, int qn, int rm, int rn, double lx, double ly) {
  // With Phi = sin(a x) sin(b y):
  //   L(Phi_q, Phi_r) = (a_q^2 b_r^2 + b_q^2 a_r^2) sin sin * sin sin
  //                     - 2 a_q b_q a_r b_r cos cos * cos cos
  const double aq = qm * kPi / lx, bq = qn * kPi / ly;
  const double ar = rm * kPi / lx, br = rn * kPi / ly;
  const double even = (aq * aq * br * br + bq * bq * ar * ar) * sss(pm, qm, rm, lx) * sss(pn, qn, rn, ly);
  const double odd = 2.0 * aq * bq * ar * br * scc(pm, qm, rm, lx) * scc(pn, qn, rn, ly);
  return even - odd;
}

Eigen::ArrayXd brute_force_plate_force(const std::vector<double>& h, std::size_t inplane,
                                       std::size_t modes, const std::vector<double>& zeta4,
                                       const std::vector<double>& inplane_norm_sq,
                                       const Eigen::ArrayXd& norm_sq, double gain,
                                       const Eigen::ArrayXd& q) {
  const auto at = [&](std::size_t n, std::size_t a, std::size_t b) {
    return static_cast<long double>(h[(n * modes + a) * modes + b]);
  };
  std::vector<long double> qt(modes);
  for (std::size_t k = 0; k < modes; ++k) qt[k] = static_cast<long double>(q[k]) / norm_sq[k];
  Eigen::ArrayXd force(static_cast<Eigen::Index>(modes));
  for (std::size_t s = 0; s < modes; ++s) {
    long double total = 0.0L;
    for (std::size_t n = 0; n < inplane; ++n) {
      long double inner = 0.0L;
      for (std::size_t p = 0; p < modes; ++p) {
        for (std::size_t a = 0; a < modes; ++a) {
          for (std::size_t b = 0; b < modes; ++b) {
            inner += at(n, s, p) * at(n, a, b) * qt[p] * qt[a] * qt[b];
          }
        }
      }
      total += inner / (static_cast<long double>(zeta4[n]) * inplane_norm_sq[n]);
    }
    force[static_cast<Eigen::Index>(s)] = static_cast<double>(gain * total);
  }
  return force;
}

double damped_impulse_response(double omega, double gamma, double t) {
  const double damped = std::sqrt(omega * omega - gamma * gamma);
  return std::exp(-gamma * t) * std::sin(damped * t) / damped;
}

double modal_omega(double bending_stiffness, double tension, double density, double lambda) {
  return std::sqrt((bending_stiffness * lambda * lambda + tension * lambda) / density);
}

double windowed_dtft(const std::vector<double>& x, std::size_t start, std::size_t length,
                     double sample_rate, double f) {
  double re = 0.0, im = 0.0;
  const double step = 2.0 * kPi * f / sample_rate;
  for (std::size_t k = 0; k < length; ++k) {
    const double window = 0.5 - 0.5 * std::cos(2.0 * kPi * k / (length - 1));
    const double v = window * x[start + k];
    re += v * std::cos(step * k);
    im -= v * std::sin(step * k);
  }
  return std::hypot(re, im);
}

double spectral_peak(const std::vector<double>& x, std::size_t start, std::size_t length,
                     double sample_rate, double f_lo, double f_hi, double tolerance) {
  const int grid = 400;
  double best_f = f_lo, best = -1.0;
  for (int i = 0; i <= grid; ++i) {
    const double f = f_lo + (f_hi - f_lo) * i / grid;
    const double m = windowed_dtft(x, start, length, sample_rate, f);
    if (m > best) best = m, best_f = f;
  }
  const double cell = (f_hi - f_lo) / grid;
  double a = std::max(f_lo, best_f - cell), b = std::min(f_hi, best_f + cell);
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - ratio * (b - a), d = a + ratio * (b - a);
  double fc = windowed_dtft(x, start, length, sample_rate, c);
  double fd = windowed_dtft(x, start, length, sample_rate, d);
  while (b - a > tolerance) {
    if (fc > fd) {
      b = d, d = c, fd = fc;
      c = b - ratio * (b - a);
      fc = windowed_dtft(x, start, length, sample_rate, c);
    } else {
      a = c, c = d, fc = fd;
      d = a + ratio * (b - a);
      fd = windowed_dtft(x, start, length, sample_rate, d);
    }
  }
  return 0.5 * (a + b);
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i], sy += y[i], sxx += x[i] * x[i], sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double relative_l2(const std::vector<double>& actual, const std::vector<double>& expected) {
  long double num = 0.0L, den = 0.0L;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    const long double d = static_cast<long double>(actual[i]) - expected[i];
    num += d * d;
    den += static_cast<long double>(expected[i]) * expected[i];
  }
  return static_cast<double>(std::sqrt(num / den));
}

}  // namespace nlm::oracle
