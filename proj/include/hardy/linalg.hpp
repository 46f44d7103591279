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

#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace hardy::linalg {

using Complex = std::complex<double>;

// Dense statevectors are supported up to this many sites (2^24 amplitudes).
inline constexpr std::size_t kMaxSites = 24;

// Tolerance used for unitarity and normalization checks.
inline constexpr double kUnitaryTol = 1e-12;

// Eigenvalues below this are treated as exact zeros before taking logarithms.
inline constexpr double kSpectrumFloor = 1e-14;

// A subset of the 1-based sites {1..m}, stored as a bitmask (bit k-1 <=> site k).
class SiteSet {
 public:
  SiteSet() = default;
  SiteSet(std::initializer_list<std::size_t> sites);
  explicit SiteSet(std::span<const std::size_t> sites);

  static SiteSet range(std::size_t first, std::size_t last);  // inclusive
  static SiteSet all(std::size_t num_sites) { return range(1, num_sites); }
  static SiteSet from_mask(std::uint32_t mask) {
    SiteSet s;
    s.mask_ = mask;
    return s;
  }

  void insert(std::size_t site);
  bool contains(std::size_t site) const {
    return site >= 1 && site <= 32 && ((mask_ >> (site - 1)) & 1U) != 0;
  }
  std::size_t size() const;
  bool empty() const { return mask_ == 0; }
  std::uint32_t mask() const { return mask_; }
  // Largest member, 0 when empty.
  std::size_t max_site() const;

  SiteSet complement(std::size_t num_sites) const;
  bool intersects(const SiteSet& other) const { return (mask_ & other.mask_) != 0; }
  bool is_subset_of(const SiteSet& other) const {
    return (mask_ & ~other.mask_) == 0;
  }

  // Members in ascending order.
  std::vector<std::size_t> members() const;

  friend bool operator==(const SiteSet&, const SiteSet&) = default;

 private:
  std::uint32_t mask_ = 0;
};

// 2x2 unitary, row-major. Construction validates unitarity within kUnitaryTol.
class SingleQubitGate {
 public:
  SingleQubitGate(Complex m00, Complex m01, Complex m10, Complex m11);

  static SingleQubitGate identity();
  // RY(theta) = [[cos t/2, -sin t/2], [sin t/2, cos t/2]].
  static SingleQubitGate ry(double theta);

  Complex operator()(std::size_t row, std::size_t col) const {
    return m_[row * 2 + col];
  }
  SingleQubitGate adjoint() const;
  SingleQubitGate operator*(const SingleQubitGate& rhs) const;

 private:
  std::array<Complex, 4> m_;
};

// Dense amplitude array over m sites.
//
// Index convention: site k (1-based) is bit (m - k) of the amplitude index,
// so writing the index in binary with m digits gives the bitstring with
// site 1 leftmost. Index 0b110 on three sites is "110".
class Statevector {
 public:
  // |0...0>.
  explicit Statevector(std::size_t num_sites);
  Statevector(std::size_t num_sites, std::vector<Complex> amplitudes);

  std::size_t num_sites() const { return num_sites_; }
  std::size_t dimension() const { return amplitudes_.size(); }
  std::span<const Complex> amplitudes() const { return amplitudes_; }
  Complex amplitude(std::size_t index) const { return amplitudes_.at(index); }
  Complex& operator[](std::size_t index) { return amplitudes_[index]; }
  Complex operator[](std::size_t index) const { return amplitudes_[index]; }

  double squared_norm() const;
  bool is_normalized(double tol = kUnitaryTol) const;
  // Rescales to unit norm. Throws std::domain_error on the zero vector.
  void normalize();

  // |amplitude|^2 for every index.
  std::vector<double> probabilities() const;

  // Bit position of a 1-based site inside an amplitude index.
  std::size_t bit_of_site(std::size_t site) const;

  // In-place gate application; the free functions below are the value forms.
  void apply(const SingleQubitGate& gate, std::size_t site);
  void apply_mcx(const SiteSet& controls, std::size_t target);

 private:
  void check_site(std::size_t site) const;

  std::size_t num_sites_;
  std::vector<Complex> amplitudes_;
};

Statevector apply_single_qubit_gate(Statevector state, std::size_t site,
                                    const SingleQubitGate& gate);
Statevector apply_multi_controlled_x(Statevector state, const SiteSet& controls,
                                     std::size_t target);

// Reduced-state spectrum on a bipartition. `eigenvalues` is descending,
// clipped to [0, 1] and padded with zeros to `dimension` = 2^|left| entries.
struct Spectrum {
  std::size_t dimension = 0;
  std::vector<double> eigenvalues;
};

// Squared singular values of the amplitude tensor reshaped to
// (2^|left|) x (2^|rest|). Never forms a density matrix.
Spectrum schmidt_spectrum(const Statevector& state, const SiteSet& left_sites);

// Schmidt coefficients (square roots of the nonzero-clipped spectrum).
std::vector<double> schmidt_coefficients(const Spectrum& spectrum);

// -sum lambda log2 lambda, ignoring entries below kSpectrumFloor.
double von_neumann_entropy(const Spectrum& spectrum);

// Pure-state negativity ((sum_i sigma_i)^2 - 1) / 2.
double negativity(const Statevector& state, const SiteSet& left_sites);

// Bitstring of `index` over `width` sites, site 1 leftmost.
std::string format_bitstring(std::size_t index, std::size_t width);

}  // namespace hardy::linalg
