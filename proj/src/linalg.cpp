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

#include "hardy/linalg.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <bit>
#include <cmath>
#include <optional>
#include <random>
#include <stdexcept>

namespace hardy::linalg {

SiteSet::SiteSet(std::initializer_list<std::size_t> sites) {
  for (auto s : sites) insert(s);
}

SiteSet::SiteSet(std::span<const std::size_t> sites) {
  for (auto s : sites) insert(s);
}

SiteSet SiteSet::range(std::size_t first, std::size_t last) {
  SiteSet s;
  for (std::size_t k = first; k <= last; ++k) s.insert(k);
  return s;
}

void SiteSet::insert(std::size_t site) {
  if (site < 1 || site > 32) {
    throw std::out_of_range("site index must lie in 1..32");
  }
  mask_ |= 1U << (site - 1);
}

std::size_t SiteSet::size() const {
  return static_cast<std::size_t>(std::popcount(mask_));
}

std::size_t SiteSet::max_site() const {
  return mask_ == 0 ? 0 : static_cast<std::size_t>(32 - std::countl_zero(mask_));
}

SiteSet SiteSet::complement(std::size_t num_sites) const {
  return from_mask(all(num_sites).mask_ & ~mask_);
}

std::vector<std::size_t> SiteSet::members() const {
  std::vector<std::size_t> out;
  for (std::size_t k = 1; k <= 32; ++k) {
    if (contains(k)) out.push_back(k);
  }
  return out;
}

SingleQubitGate::SingleQubitGate(Complex m00, Complex m01, Complex m10, Complex m11)
    : m_{m00, m01, m10, m11} {
  for (const auto& z : m_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw std::invalid_argument("gate entries must be finite");
    }
  }
  // U^dagger U == I, entrywise.
  const Complex d00 = std::norm(m00) + std::norm(m10);
  const Complex d11 = std::norm(m01) + std::norm(m11);
  const Complex d01 = std::conj(m00) * m01 + std::conj(m10) * m11;
  if (std::abs(d00 - 1.0) > kUnitaryTol || std::abs(d11 - 1.0) > kUnitaryTol ||
      std::abs(d01) > kUnitaryTol) {
    throw std::invalid_argument("gate is not unitary within 1e-12");
  }
}

SingleQubitGate SingleQubitGate::identity() { return {1.0, 0.0, 0.0, 1.0}; }

SingleQubitGate SingleQubitGate::ry(double theta) {
  if (!std::isfinite(theta)) throw std::invalid_argument("rotation angle must be finite");
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  return {c, -s, s, c};
}

SingleQubitGate SingleQubitGate::adjoint() const {
  return {std::conj(m_[0]), std::conj(m_[2]), std::conj(m_[1]), std::conj(m_[3])};
}

SingleQubitGate SingleQubitGate::operator*(const SingleQubitGate& rhs) const {
  const auto& a = m_;
  return {a[0] * rhs(0, 0) + a[1] * rhs(1, 0), a[0] * rhs(0, 1) + a[1] * rhs(1, 1),
          a[2] * rhs(0, 0) + a[3] * rhs(1, 0), a[2] * rhs(0, 1) + a[3] * rhs(1, 1)};
}

Statevector::Statevector(std::size_t num_sites) : num_sites_(num_sites) {
  if (num_sites < 1 || num_sites > kMaxSites) {
    throw std::invalid_argument("statevector size must lie in 1..24 sites");
  }
  amplitudes_.assign(std::size_t{1} << num_sites, Complex{});
  amplitudes_[0] = 1.0;
}

Statevector::Statevector(std::size_t num_sites, std::vector<Complex> amplitudes)
    : num_sites_(num_sites), amplitudes_(std::move(amplitudes)) {
  if (num_sites < 1 || num_sites > kMaxSites) {
    throw std::invalid_argument("statevector size must lie in 1..24 sites");
  }
  if (amplitudes_.size() != (std::size_t{1} << num_sites)) {
    throw std::invalid_argument("amplitude array length must be 2^num_sites");
  }
  for (const auto& z : amplitudes_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw std::invalid_argument("amplitudes must be finite");
    }
  }
}

double Statevector::squared_norm() const {
  double acc = 0.0;
  for (const auto& z : amplitudes_) acc += std::norm(z);
  return acc;
}

bool Statevector::is_normalized(double tol) const {
  return std::abs(squared_norm() - 1.0) <= tol;
}

void Statevector::normalize() {
  const double nrm = std::sqrt(squared_norm());
  if (!(nrm > 0.0)) throw std::domain_error("cannot normalize the zero vector");
  for (auto& z : amplitudes_) z /= nrm;
}

std::vector<double> Statevector::probabilities() const {
  std::vector<double> p(amplitudes_.size());
  std::transform(amplitudes_.begin(), amplitudes_.end(), p.begin(),
                 [](const Complex& z) { return std::norm(z); });
  return p;
}

void Statevector::check_site(std::size_t site) const {
  if (site < 1 || site > num_sites_) {
    throw std::out_of_range("site " + std::to_string(site) + " outside 1.." +
                            std::to_string(num_sites_));
  }
}

std::size_t Statevector::bit_of_site(std::size_t site) const {
  check_site(site);
  return num_sites_ - site;
}

void Statevector::apply(const SingleQubitGate& gate, std::size_t site) {
  const std::size_t stride = std::size_t{1} << bit_of_site(site);
  const Complex g00 = gate(0, 0), g01 = gate(0, 1), g10 = gate(1, 0), g11 = gate(1, 1);
  const std::size_t dim = amplitudes_.size();
  for (std::size_t base = 0; base < dim; base += 2 * stride) {
    for (std::size_t i = base; i < base + stride; ++i) {
      const Complex a0 = amplitudes_[i];
      const Complex a1 = amplitudes_[i + stride];
      amplitudes_[i] = g00 * a0 + g01 * a1;
      amplitudes_[i + stride] = g10 * a0 + g11 * a1;
    }
  }
}

void Statevector::apply_mcx(const SiteSet& controls, std::size_t target) {
  check_site(target);
  if (controls.contains(target)) {
    throw std::invalid_argument("target site must not be a control");
  }
  if (controls.max_site() > num_sites_) {
    throw std::out_of_range("control site outside the register");
  }
  std::size_t control_mask = 0;
  for (auto s : controls.members()) control_mask |= std::size_t{1} << bit_of_site(s);
  const std::size_t target_mask = std::size_t{1} << bit_of_site(target);
  for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
    if ((i & control_mask) == control_mask && (i & target_mask) == 0) {
      std::swap(amplitudes_[i], amplitudes_[i | target_mask]);
    }
  }
}

Statevector apply_single_qubit_gate(Statevector state, std::size_t site,
                                    const SingleQubitGate& gate) {
  state.apply(gate, site);
  return state;
}

Statevector apply_multi_controlled_x(Statevector state, const SiteSet& controls,
                                     std::size_t target) {
  state.apply_mcx(controls, target);
  return state;
}

namespace {

void check_bipartition(const Statevector& state, const SiteSet& left) {
  if (left.empty()) throw std::invalid_argument("left site set must be nonempty");
  if (left.max_site() > state.num_sites()) {
    throw std::out_of_range("left site set exceeds the register");
  }
  if (left.size() == state.num_sites()) {
    throw std::invalid_argument("left site set must be a proper subset");
  }
}

// Randomized range finder for matrices of small numerical rank. The residual
// |M - QQ^H M|_F is measured directly, and the result is only accepted when
// everything discarded lies far below the eigenvalue floor; otherwise the
// caller falls back to a full SVD.
std::optional<Eigen::VectorXd> low_rank_singular_values(const Eigen::MatrixXcd& mat) {
  constexpr double kResidualTol = 1e-12;  // relative; squared this is 1e-24 << 1e-14
  const Eigen::Index nr = mat.rows(), nc = mat.cols();
  const double total = mat.norm();
  if (total == 0.0) return Eigen::VectorXd::Zero(nr);
  std::mt19937_64 rng(0x5eed);  // fixed: the spectrum must not depend on call order
  std::normal_distribution<double> gauss;
  for (Eigen::Index k = 8; 4 * k <= nr; k *= 2) {
    Eigen::MatrixXcd omega(nc, k);
    for (Eigen::Index j = 0; j < k; ++j) {
      for (Eigen::Index i = 0; i < nc; ++i) omega(i, j) = Complex(gauss(rng), gauss(rng));
    }
    const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(mat * omega);
    const Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(nr, k);
    const Eigen::MatrixXcd b = q.adjoint() * mat;
    double resid2 = 0.0;
    constexpr Eigen::Index kBlock = 256;
    for (Eigen::Index c0 = 0; c0 < nc; c0 += kBlock) {
      const Eigen::Index w = std::min(kBlock, nc - c0);
      resid2 += (mat.middleCols(c0, w) - q * b.middleCols(c0, w)).squaredNorm();
    }
    if (std::sqrt(resid2) <= kResidualTol * total) {
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(b);
      Eigen::VectorXd out = Eigen::VectorXd::Zero(nr);
      out.head(svd.singularValues().size()) = svd.singularValues();
      return out;
    }
  }
  return std::nullopt;
}

// Singular values of the reshaped amplitude matrix, descending.
Eigen::VectorXd reshaped_singular_values(const Statevector& state, const SiteSet& left) {
  const std::size_t m = state.num_sites();
  const auto left_sites = left.members();
  const auto right_sites = left.complement(m).members();
  const std::size_t rows = std::size_t{1} << left_sites.size();
  const std::size_t cols = std::size_t{1} << right_sites.size();

  // Scatter tables: row/col index -> contribution to the amplitude index.
  auto scatter = [&](const std::vector<std::size_t>& sites) {
    std::vector<std::size_t> table(std::size_t{1} << sites.size(), 0);
    for (std::size_t r = 0; r < table.size(); ++r) {
      std::size_t idx = 0;
      for (std::size_t j = 0; j < sites.size(); ++j) {
        // First listed site is the most significant digit of r.
        if ((r >> (sites.size() - 1 - j)) & 1U) {
          idx |= std::size_t{1} << state.bit_of_site(sites[j]);
        }
      }
      table[r] = idx;
    }
    return table;
  };
  const auto row_idx = scatter(left_sites);
  const auto col_idx = scatter(right_sites);

  // Keep the matrix wide-or-square; the spectrum is the same either way.
  const bool transpose = rows > cols;
  const auto nr = static_cast<Eigen::Index>(transpose ? cols : rows);
  const auto nc = static_cast<Eigen::Index>(transpose ? rows : cols);
  Eigen::MatrixXcd mat(nr, nc);
  const auto amps = state.amplitudes();
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const Complex z = amps[row_idx[r] | col_idx[c]];
      if (transpose) {
        mat(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(r)) = z;
      } else {
        mat(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = z;
      }
    }
  }
  if (nr <= 16) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(mat);
    return svd.singularValues();
  }
  if (auto sv = low_rank_singular_values(mat)) return *sv;
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(mat);
  return svd.singularValues();
}

}  // namespace

Spectrum schmidt_spectrum(const Statevector& state, const SiteSet& left_sites) {
  check_bipartition(state, left_sites);
  const Eigen::VectorXd sv = reshaped_singular_values(state, left_sites);
  Spectrum out;
  out.dimension = std::size_t{1} << left_sites.size();
  out.eigenvalues.assign(out.dimension, 0.0);
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    out.eigenvalues[static_cast<std::size_t>(i)] = std::clamp(sv[i] * sv[i], 0.0, 1.0);
  }
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end(), std::greater<>());
  return out;
}

std::vector<double> schmidt_coefficients(const Spectrum& spectrum) {
  std::vector<double> out;
  for (double lam : spectrum.eigenvalues) {
    if (lam > 0.0) out.push_back(std::sqrt(lam));
  }
  return out;
}

double von_neumann_entropy(const Spectrum& spectrum) {
  double s = 0.0;
  for (double lam : spectrum.eigenvalues) {
    if (lam < kSpectrumFloor) continue;
    s -= lam * std::log2(lam);
  }
  return std::max(s, 0.0);
}

double negativity(const Statevector& state, const SiteSet& left_sites) {
  // ((sum sigma)^2 - 1) / 2 equals sum_{i<j} sigma_i sigma_j for a unit
  // vector; the pairwise form avoids cancellation when one term dominates.
  const auto coeffs = schmidt_coefficients(schmidt_spectrum(state, left_sites));
  double prefix = 0.0, pairs = 0.0;
  for (double sigma : coeffs) {
    pairs += sigma * prefix;
    prefix += sigma;
  }
  return pairs;
}

std::string format_bitstring(std::size_t index, std::size_t width) {
  std::string s(width, '0');
  for (std::size_t j = 0; j < width; ++j) {
    if ((index >> (width - 1 - j)) & 1U) s[j] = '1';
  }
  return s;
}

}  // namespace hardy::linalg
