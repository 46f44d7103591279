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

#include "hardy/hardy_state.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "hardy/errors.hpp"

namespace hardy::state {

namespace {

constexpr double kCoefficientTol = 1e-12;

void check_finite(const Complex& z, const char* what) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw std::invalid_argument(std::string(what) + " must be finite");
  }
}

// Kronecker product over sites 1..n of per-site pairs (bit0, bit1); site 1
// ends up as the most significant bit.
template <typename PairFn>
std::vector<Complex> kron_sites(std::size_t n, PairFn pair_of_site) {
  std::vector<Complex> out{1.0};
  out.reserve(std::size_t{1} << n);
  for (std::size_t k = 1; k <= n; ++k) {
    const auto [f0, f1] = pair_of_site(k);
    std::vector<Complex> next(out.size() * 2);
    for (std::size_t j = 0; j < out.size(); ++j) {
      next[2 * j] = out[j] * f0;
      next[2 * j + 1] = out[j] * f1;
    }
    out = std::move(next);
  }
  return out;
}

void check_register(std::size_t n) {
  if (n > linalg::kMaxSites) {
    throw std::invalid_argument("at most 24 sites are supported");
  }
}

void check_site(const TransformCoefficients& coeffs, std::size_t k) {
  if (k < 1 || k > coeffs.size()) {
    throw std::out_of_range("site " + std::to_string(k) + " outside 1.." +
                            std::to_string(coeffs.size()));
  }
}

}  // namespace

TransformCoefficients::TransformCoefficients(std::vector<Complex> a, std::vector<Complex> b)
    : a_(std::move(a)), b_(std::move(b)) {
  if (a_.size() != b_.size()) throw std::invalid_argument("A and B must have equal length");
  if (a_.size() < 2) throw std::invalid_argument("need at least two sites");
  if (a_.size() > 32) throw std::invalid_argument("at most 32 sites are supported");
  for (std::size_t i = 0; i < a_.size(); ++i) {
    check_finite(a_[i], "A_k");
    check_finite(b_[i], "B_k");
    if (std::abs(std::norm(a_[i]) + std::norm(b_[i]) - 1.0) > kCoefficientTol) {
      throw std::invalid_argument("|A_k|^2 + |B_k|^2 must equal 1 (site " +
                                  std::to_string(i + 1) + ")");
    }
  }
}

TransformCoefficients TransformCoefficients::equal_real(std::size_t n, double a) {
  std::vector<double> as(n, a);
  return from_real(as);
}

TransformCoefficients TransformCoefficients::from_real(std::span<const double> a) {
  std::vector<Complex> av, bv;
  for (double x : a) {
    if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("real A_k must lie in [0, 1]");
    av.emplace_back(x);
    bv.emplace_back(std::sqrt((1.0 - x) * (1.0 + x)));
  }
  return {std::move(av), std::move(bv)};
}

Complex TransformCoefficients::a_product(const SiteSet& sites) const {
  Complex p = 1.0;
  for (auto k : sites.members()) p *= a(k);
  return p;
}

Complex TransformCoefficients::b_product(const SiteSet& sites) const {
  Complex p = 1.0;
  for (auto k : sites.members()) p *= b(k);
  return p;
}

bool TransformCoefficients::is_nondegenerate() const {
  for (std::size_t i = 0; i < a_.size(); ++i) {
    if (std::abs(a_[i]) == 0.0 || std::abs(b_[i]) == 0.0) return false;
  }
  return true;
}

void TransformCoefficients::require_nondegenerate() const {
  if (!is_nondegenerate()) {
    throw DegenerateTransformError(
        "every |A_k| must lie strictly inside (0, 1) for a paradox construction");
  }
}

HardyState::HardyState(TransformCoefficients coeffs, double normalization, Frame frame,
                       Statevector vector)
    : coeffs_(std::move(coeffs)),
      normalization_(normalization),
      frame_(frame),
      vector_(std::move(vector)) {
  if (vector_.num_sites() != coeffs_.size()) {
    throw std::invalid_argument("statevector size does not match the coefficients");
  }
  if (frame_.kind == Frame::Kind::kMixed && (frame_.site < 1 || frame_.site > coeffs_.size())) {
    throw std::out_of_range("mixed-frame site out of range");
  }
}

double normalization(const TransformCoefficients& coeffs) {
  coeffs.require_nondegenerate();
  const double gap = 1.0 - coeffs.a_omega_sq();
  if (!(gap > 0.0)) throw DegenerateTransformError("1 - |A_Omega|^2 must be positive");
  return 1.0 / std::sqrt(gap);
}

std::pair<SingleQubitGate, SingleQubitGate> transform_matrices(
    const TransformCoefficients& coeffs, std::size_t k) {
  check_site(coeffs, k);
  const Complex a = coeffs.a(k);
  const Complex b = coeffs.b(k);
  SingleQubitGate cd_to_uv(b, std::conj(a), a, -std::conj(b));
  return {cd_to_uv, cd_to_uv.adjoint()};
}

HardyState uv_amplitudes(const TransformCoefficients& coeffs) {
  const double norm = normalization(coeffs);
  const std::size_t n = coeffs.size();
  check_register(n);
  auto amps = kron_sites(n, [&](std::size_t k) {
    return std::pair{coeffs.b(k), coeffs.a(k)};
  });
  for (auto& z : amps) z *= norm;
  amps.back() = 0.0;  // all-u term cancels exactly
  return {coeffs, norm, Frame::uv(), Statevector(n, std::move(amps))};
}

HardyState mixed_amplitudes(const TransformCoefficients& coeffs, std::size_t k) {
  check_site(coeffs, k);
  const double norm = normalization(coeffs);
  const std::size_t n = coeffs.size();
  check_register(n);
  // Site k contributes <c_k|c_k> = 1, <d_k|c_k> = 0 to the |c...c> part.
  auto amps = kron_sites(n, [&](std::size_t j) {
    return j == k ? std::pair<Complex, Complex>{1.0, 0.0}
                  : std::pair<Complex, Complex>{coeffs.b(j), coeffs.a(j)};
  });
  for (auto& z : amps) z *= norm;
  const SiteSet rest = SiteSet{k}.complement(n);
  const std::size_t all_ones = amps.size() - 1;
  const std::size_t k_bit = std::size_t{1} << (n - k);
  // u...c_k...u and u...d_k...u pick up the -A_Omega |u...u> term.
  amps[all_ones & ~k_bit] = norm * std::norm(coeffs.b(k)) * coeffs.a_product(rest);
  amps[all_ones] = norm * coeffs.b(k) * coeffs.a_omega();
  return {coeffs, norm, Frame::mixed(k), Statevector(n, std::move(amps))};
}

HardyState cd_amplitudes(const TransformCoefficients& coeffs) {
  const double norm = normalization(coeffs);
  const std::size_t n = coeffs.size();
  check_register(n);
  // (A_k* |c_k> - B_k |d_k>)^{(x) n}, scaled by -A_Omega, plus |c...c>.
  auto amps = kron_sites(n, [&](std::size_t k) {
    return std::pair{std::conj(coeffs.a(k)), -coeffs.b(k)};
  });
  const Complex a_omega = coeffs.a_omega();
  for (auto& z : amps) z *= -norm * a_omega;
  amps[0] = norm * (1.0 - coeffs.a_omega_sq());
  return {coeffs, norm, Frame::cd(), Statevector(n, std::move(amps))};
}

Statevector product_state(const TransformCoefficients& coeffs) {
  check_register(coeffs.size());
  auto amps = kron_sites(coeffs.size(), [&](std::size_t k) {
    return std::pair{coeffs.b(k), coeffs.a(k)};
  });
  return {coeffs.size(), std::move(amps)};
}

}  // namespace hardy::state
