// Copyright 2026 The Hardy Lab Authors
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

#include "hardy/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hardy/errors.hpp"
#include "hardy/linalg.hpp"

namespace hardy::analytics {

namespace numerics {

Extremum golden_section_maximize(const std::function<double(double)>& f, double lo,
                                 double hi, double x_tol) {
  if (!(hi > lo)) throw std::invalid_argument("golden section needs lo < hi");
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  // Each step shrinks the bracket by 1/phi and reuses one interior point.
  while (b - a > x_tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
    if (c == d) break;  // bracket collapsed to adjacent doubles
  }
  return fc >= fd ? Extremum{c, fc} : Extremum{d, fd};
}

namespace {

double simpson_panel(const std::function<double(double)>& f, double a, double fa, double b,
                     double fb, double m, double fm, double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return simpson_panel(f, a, fa, m, fm, lm, flm, left, tol / 2.0, depth - 1) +
         simpson_panel(f, m, fm, b, fb, rm, frm, right, tol / 2.0, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double abs_tol, int max_depth) {
  if (!(abs_tol > 0.0)) throw std::invalid_argument("abs_tol must be positive");
  if (!(b > a)) throw std::invalid_argument("integration needs a < b");
  // Start from a uniform split so a narrow peak cannot hide between the
  // first five sample points.
  constexpr int kInitialPanels = 32;
  const double h = (b - a) / kInitialPanels;
  double total = 0.0;
  for (int i = 0; i < kInitialPanels; ++i) {
    const double lo = a + h * i;
    const double hi = (i + 1 == kInitialPanels) ? b : a + h * (i + 1);
    const double mid = 0.5 * (lo + hi);
    const double flo = f(lo), fhi = f(hi), fmid = f(mid);
    const double whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
    total += simpson_panel(f, lo, flo, hi, fhi, mid, fmid, whole, abs_tol / kInitialPanels,
                           max_depth);
  }
  return total;
}

}  // namespace numerics

double p_nonlocal_general(const TransformCoefficients& coeffs) {
  coeffs.require_nondegenerate();
  const double a2 = coeffs.a_omega_sq();
  const double gap = 1.0 - a2;
  if (!(gap > 0.0)) throw DegenerateTransformError("1 - |A_Omega|^2 must be positive");
  double ratio_sum = 0.0;
  for (std::size_t k = 1; k <= coeffs.size(); ++k) {
    ratio_sum += std::norm(coeffs.b(k)) / std::norm(coeffs.a(k));
  }
  return a2 - a2 * a2 / gap * ratio_sum;
}

double p_nonlocal_equal(std::size_t n, double a) {
  if (n < 2) throw std::invalid_argument("n must be at least 2");
  if (!(a > 0.0 && a < 1.0)) throw std::invalid_argument("A must lie in (0, 1)");
  const double nd = static_cast<double>(n);
  const double log_t = 2.0 * std::log(a);
  const double t = a * a;
  const double x = std::exp(nd * log_t);          // a^(2n)
  const double one_minus_x = -std::expm1(nd * log_t);
  const double one_minus_t = (1.0 - a) * (1.0 + a);
  return x - nd * (x * x / t) * one_minus_t / one_minus_x;
}

double p_nonlocal_equal_closed(std::size_t n, double a) {
  if (a <= 0.0 || a >= 1.0) return 0.0;
  return p_nonlocal_equal(n, a);
}

Optimum optimize_A(std::size_t n) {
  if (n < 2) throw std::invalid_argument("n must be at least 2");
  constexpr int kGrid = 10000;
  int best = 1;
  double best_p = p_nonlocal_equal(n, 1.0 / kGrid);
  for (int i = 2; i < kGrid; ++i) {
    const double p = p_nonlocal_equal(n, static_cast<double>(i) / kGrid);
    if (p > best_p) {
      best_p = p;
      best = i;
    }
  }
  const double lo = static_cast<double>(best - 1) / kGrid;
  const double hi = static_cast<double>(best + 1) / kGrid;
  const auto refined = numerics::golden_section_maximize(
      [n](double a) { return p_nonlocal_equal_closed(n, a); }, lo, hi, 1e-12);
  if (refined.fx < best_p) return {static_cast<double>(best) / kGrid, best_p};
  return {refined.x, refined.fx};
}

double asymptote_functional(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  return x + x * x * std::log(x) / (1.0 - x);
}

Asymptote asymptote() {
  constexpr int kGrid = 10000;
  int best = 1;
  double best_f = asymptote_functional(1.0 / kGrid);
  for (int i = 2; i < kGrid; ++i) {
    const double f = asymptote_functional(static_cast<double>(i) / kGrid);
    if (f > best_f) {
      best_f = f;
      best = i;
    }
  }
  const auto refined = numerics::golden_section_maximize(
      asymptote_functional, static_cast<double>(best - 1) / kGrid,
      static_cast<double>(best + 1) / kGrid, 1e-12);
  return {refined.x, refined.fx};
}

double integrate_P(std::size_t n, double abs_tol) {
  if (n < 2) throw std::invalid_argument("n must be at least 2");
  return numerics::adaptive_simpson([n](double a) { return p_nonlocal_equal_closed(n, a); },
                                    0.0, 1.0, abs_tol);
}

linalg::SiteSet Bipartition::left_sites(std::size_t n) const {
  if (n < 2) throw std::invalid_argument("bipartition needs n >= 2");
  if (kind == Kind::kHalfChain) return linalg::SiteSet::range(1, n / 2);
  if (site < 1 || site > n) throw std::out_of_range("one-vs-rest site out of range");
  return linalg::SiteSet{site};
}

std::string Bipartition::label() const {
  return kind == Kind::kHalfChain ? "half" : "one-vs-rest:" + std::to_string(site);
}

double entropy(const TransformCoefficients& coeffs, Bipartition bipartition) {
  const auto psi = state::uv_amplitudes(coeffs);
  return linalg::von_neumann_entropy(
      linalg::schmidt_spectrum(psi.vector(), bipartition.left_sites(coeffs.size())));
}

double negativity(const TransformCoefficients& coeffs, Bipartition bipartition) {
  const auto psi = state::uv_amplitudes(coeffs);
  return linalg::negativity(psi.vector(), bipartition.left_sites(coeffs.size()));
}

std::string kind_name(AnalyticsResult::Kind kind) {
  switch (kind) {
    case AnalyticsResult::Kind::kPNonlocal: return "P_NONLOCAL";
    case AnalyticsResult::Kind::kOptimum: return "OPTIMUM";
    case AnalyticsResult::Kind::kIntegral: return "INTEGRAL";
    case AnalyticsResult::Kind::kEntropy: return "ENTROPY";
    case AnalyticsResult::Kind::kNegativity: return "NEGATIVITY";
    case AnalyticsResult::Kind::kAsymptote: return "ASYMPTOTE";
  }
  return "UNKNOWN";
}

}  // namespace hardy::analytics
