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

#include "hardy/circuit.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hardy/errors.hpp"

namespace hardy::circuit {

namespace {

constexpr double kPostselectFloor = 1e-12;

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Draws `shots` indices from `probabilities` by inverse-CDF lookup.
std::vector<std::uint64_t> draw_counts(const std::vector<double>& probabilities,
                                       std::uint64_t shots, CounterRng& rng) {
  std::vector<double> cdf(probabilities.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    acc += probabilities[i];
    cdf[i] = acc;
  }
  std::vector<std::uint64_t> counts(probabilities.size(), 0);
  // Last outcome with positive mass absorbs the rounding tail of the CDF.
  std::size_t last = 0;
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    if (probabilities[i] > 0.0) last = i;
  }
  for (std::uint64_t s = 0; s < shots; ++s) {
    const double u = rng.uniform() * acc;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    std::size_t idx = static_cast<std::size_t>(it - cdf.begin());
    if (idx > last) idx = last;
    ++counts[idx];
  }
  return counts;
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : key_(splitmix64(splitmix64(seed) ^ (stream * 0xd1b54a32d192ed03ULL))) {}

CounterRng::result_type CounterRng::operator()() {
  return splitmix64(key_ ^ splitmix64(counter_++));
}

double CounterRng::uniform() {
  return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

double theta_of_A(double a) {
  if (!(a > 0.0 && a < 1.0)) throw std::invalid_argument("A must lie in (0, 1)");
  return 2.0 * std::asin(a);
}

void CircuitSpec::validate() const {
  if (num_data_sites < 1) throw std::invalid_argument("circuit needs at least one data site");
  const std::size_t m = num_sites();
  if (m > linalg::kMaxSites) throw std::invalid_argument("circuit exceeds 24 sites");
  for (const auto& g : gates) {
    if (const auto* ry = std::get_if<RyGate>(&g)) {
      if (ry->site < 1 || ry->site > m) throw std::invalid_argument("RY site out of range");
      if (!std::isfinite(ry->theta)) throw std::invalid_argument("RY angle must be finite");
    } else {
      const auto& x = std::get<McxGate>(g);
      if (x.target < 1 || x.target > m || x.controls.max_site() > m) {
        throw std::invalid_argument("MCX site out of range");
      }
      if (x.controls.contains(x.target)) {
        throw std::invalid_argument("MCX target overlaps its controls");
      }
    }
  }
  if (postselect) {
    if (!has_ancilla || postselect->site != m) {
      throw std::invalid_argument("post-selection must act on the ancilla");
    }
    if (postselect->required_bit != 0 && postselect->required_bit != 1) {
      throw std::invalid_argument("post-selection bit must be 0 or 1");
    }
  }
}

CircuitSpec build_circuit(std::size_t n, const std::vector<double>& thetas, Mode mode) {
  if (n < 2) throw std::invalid_argument("n must be at least 2");
  if (n + 1 > linalg::kMaxSites) throw std::invalid_argument("n must be at most 23");
  if (thetas.size() != n) throw std::invalid_argument("need one angle per data site");
  for (double t : thetas) {
    if (!(t > 0.0 && t < std::numbers::pi)) {
      throw std::invalid_argument("angles must lie in (0, pi)");
    }
  }
  if (mode.kind == Mode::Kind::kMixed && (mode.site < 1 || mode.site > n)) {
    throw std::invalid_argument("mixed-mode site out of range");
  }

  CircuitSpec c;
  c.num_data_sites = n;
  c.has_ancilla = true;
  for (std::size_t k = 1; k <= n; ++k) c.gates.emplace_back(RyGate{thetas[k - 1], k});
  c.gates.emplace_back(McxGate{SiteSet::all(n), n + 1});
  c.postselect = Postselect{n + 1, 0};

  switch (mode.kind) {
    case Mode::Kind::kPrepare:
      break;
    case Mode::Kind::kMixed:
      c.gates.emplace_back(RyGate{-thetas[mode.site - 1], mode.site});
      break;
    case Mode::Kind::kFullCD:
      for (std::size_t k = 1; k <= n; ++k) c.gates.emplace_back(RyGate{-thetas[k - 1], k});
      break;
  }
  return c;
}

double Histogram::probability(const std::string& bits) const {
  if (bits.size() != n) throw std::invalid_argument("bitstring length must equal n");
  std::size_t idx = 0;
  for (char ch : bits) {
    if (ch != '0' && ch != '1') throw std::invalid_argument("bitstring must be 0/1");
    idx = (idx << 1) | static_cast<std::size_t>(ch == '1');
  }
  return probabilities.at(idx);
}

double Histogram::nonlocal_sum() const {
  double s = 0.0;
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    if (std::popcount(i) >= 2) s += probabilities[i];
  }
  return s;
}

linalg::Statevector simulate(const CircuitSpec& circuit) {
  circuit.validate();
  linalg::Statevector psi(circuit.num_sites());
  for (const auto& g : circuit.gates) {
    if (const auto* ry = std::get_if<RyGate>(&g)) {
      psi.apply(linalg::SingleQubitGate::ry(ry->theta), ry->site);
    } else {
      const auto& x = std::get<McxGate>(g);
      psi.apply_mcx(x.controls, x.target);
    }
  }
  return psi;
}

linalg::Statevector postselected_state(const CircuitSpec& circuit) {
  const linalg::Statevector psi = simulate(circuit);
  if (!circuit.has_ancilla) return psi;
  if (!circuit.postselect) {
    throw std::invalid_argument("circuit has an ancilla but no post-selection rule");
  }
  const auto want = static_cast<std::size_t>(circuit.postselect->required_bit);
  std::vector<linalg::Complex> data(std::size_t{1} << circuit.num_data_sites);
  const auto amps = psi.amplitudes();
  double kept = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    data[i] = amps[(i << 1) | want];
    kept += std::norm(data[i]);
  }
  if (kept < kPostselectFloor) throw PostselectionError("post-selection annihilated the state");
  linalg::Statevector out(circuit.num_data_sites, std::move(data));
  out.normalize();
  return out;
}

Histogram run_exact(const CircuitSpec& circuit) {
  const linalg::Statevector psi = simulate(circuit);
  Histogram h;
  h.n = circuit.num_data_sites;
  h.probabilities.assign(std::size_t{1} << h.n, 0.0);

  const auto amps = psi.amplitudes();
  if (circuit.has_ancilla) {
    // Ancilla is the last site, i.e. the least significant bit.
    const std::size_t want =
        circuit.postselect ? static_cast<std::size_t>(circuit.postselect->required_bit) : 0;
    double kept = 0.0;
    for (std::size_t i = 0; i < amps.size(); ++i) {
      const double p = std::norm(amps[i]);
      if (!circuit.postselect || (i & 1U) == want) {
        h.probabilities[i >> 1] += p;
        kept += p;
      }
    }
    if (circuit.postselect) {
      if (kept < kPostselectFloor) {
        throw PostselectionError("post-selection annihilated the state");
      }
      for (auto& p : h.probabilities) p /= kept;
      h.postselect_success = kept;
    }
  } else {
    for (std::size_t i = 0; i < amps.size(); ++i) h.probabilities[i] = std::norm(amps[i]);
  }
  return h;
}

Histogram sample_shots(const Histogram& exact, std::uint64_t shots, std::uint64_t seed,
                       std::uint64_t stream) {
  if (shots == 0) throw std::invalid_argument("shots must be at least 1");
  if (exact.probabilities.empty()) throw std::invalid_argument("empty histogram");
  CounterRng rng(seed, stream);
  Histogram h;
  h.n = exact.n;
  h.postselect_success = exact.postselect_success;
  h.counts = draw_counts(exact.probabilities, shots, rng);
  h.probabilities.resize(h.counts.size());
  for (std::size_t i = 0; i < h.counts.size(); ++i) {
    h.probabilities[i] = static_cast<double>(h.counts[i]) / static_cast<double>(shots);
  }
  h.shots = shots;
  h.seed = seed;
  h.stream = stream;
  return h;
}

Histogram sample_with_discard(const CircuitSpec& circuit, std::uint64_t shots,
                              std::uint64_t seed, std::uint64_t stream) {
  if (shots == 0) throw std::invalid_argument("shots must be at least 1");
  const auto raw = simulate(circuit).probabilities();
  CounterRng rng(seed, stream);
  const auto raw_counts = draw_counts(raw, shots, rng);

  Histogram h;
  h.n = circuit.num_data_sites;
  h.counts.assign(std::size_t{1} << h.n, 0);
  std::uint64_t kept = 0;
  for (std::size_t i = 0; i < raw_counts.size(); ++i) {
    if (!circuit.has_ancilla) {
      h.counts[i] += raw_counts[i];
      kept += raw_counts[i];
      continue;
    }
    const bool keep = !circuit.postselect ||
                      (i & 1U) == static_cast<std::size_t>(circuit.postselect->required_bit);
    if (keep) {
      h.counts[i >> 1] += raw_counts[i];
      kept += raw_counts[i];
    }
  }
  if (kept == 0) throw PostselectionError("post-selection discarded every shot");
  h.probabilities.resize(h.counts.size());
  for (std::size_t i = 0; i < h.counts.size(); ++i) {
    h.probabilities[i] = static_cast<double>(h.counts[i]) / static_cast<double>(kept);
  }
  h.postselect_success = static_cast<double>(kept) / static_cast<double>(shots);
  h.shots = shots;
  h.seed = seed;
  h.stream = stream;
  return h;
}

}  // namespace hardy::circuit
