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

#include "hardy/verify.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "hardy/analytics.hpp"
#include "hardy/circuit.hpp"

namespace hardy::verify {

namespace {

using state::Frame;

// Amplitude-index bit of a 1-based site among n.
std::size_t site_bit(std::size_t n, std::size_t site) { return std::size_t{1} << (n - site); }

linalg::SiteSet set_of_index(std::size_t n, std::size_t index) {
  linalg::SiteSet s;
  for (std::size_t k = 1; k <= n; ++k) {
    if (index & site_bit(n, k)) s.insert(k);
  }
  return s;
}

}  // namespace

bool ParadoxReport::certified() const {
  if (!condition1.pass) return false;
  for (const auto& r : condition2) {
    if (!r.pass) return false;
  }
  return condition3.pass;
}

Condition1Record check_condition1(const HardyState& uv, double tol) {
  if (uv.frame() != Frame::uv()) throw std::invalid_argument("condition 1 needs the UV frame");
  Condition1Record r;
  r.p_all_u = uv.probability(uv.vector().dimension() - 1);
  r.pass = r.p_all_u <= tol;
  return r;
}

Condition2Record check_condition2(const HardyState& mixed, double tol) {
  if (mixed.frame().kind != Frame::Kind::kMixed) {
    throw std::invalid_argument("condition 2 needs a MIXED(k) frame");
  }
  const std::size_t n = mixed.n();
  const std::size_t k = mixed.frame().site;
  const std::size_t k_bit = site_bit(n, k);
  const std::size_t all_ones = mixed.vector().dimension() - 1;

  Condition2Record r;
  r.site = k;
  for (std::size_t i = 0; i < mixed.vector().dimension(); ++i) {
    if (i & k_bit) r.p_d += mixed.probability(i);
  }
  const double joint = mixed.probability(all_ones);
  r.conditional = r.p_d > 0.0 ? joint / r.p_d : 0.0;

  const auto& c = mixed.coeffs();
  const double nrm = mixed.normalization();
  r.p_d_expected = nrm * nrm * std::norm(c.b(k)) * c.a_omega_sq();
  r.p_d_consistent = std::abs(r.p_d - r.p_d_expected) <= tol;
  r.pass = r.p_d > 0.0 && r.conditional >= 1.0 - tol;
  return r;
}

Condition2Record check_condition2(const TransformCoefficients& coeffs, std::size_t k,
                                  double tol) {
  return check_condition2(state::mixed_amplitudes(coeffs, k), tol);
}

Condition3Summary check_condition3(const TransformCoefficients& coeffs,
                                   double closed_form_tol) {
  const auto cd = state::cd_amplitudes(coeffs);
  const auto uv = state::uv_amplitudes(coeffs);
  const std::size_t n = coeffs.size();
  const double p_all_u = uv.probability(uv.vector().dimension() - 1);

  Condition3Summary s;
  s.expected_count = (std::size_t{1} << n) - n - 1;
  // Pairwise marginals P(D_k D_l), indexed [k-1][l-1].
  std::vector<double> pair(n * n, 0.0);
  for (std::size_t i = 0; i < cd.vector().dimension(); ++i) {
    if (std::popcount(i) < 2) continue;
    const double p = cd.probability(i);
    Condition3Record r;
    r.beta = set_of_index(n, i);
    r.bitstring = linalg::format_bitstring(i, n);
    r.probability = p;
    r.positive = p > 0.0;
    if (r.positive) ++s.positive_count;
    s.total += p;
    const auto members = r.beta.members();
    for (std::size_t x = 0; x < members.size(); ++x) {
      for (std::size_t y = x + 1; y < members.size(); ++y) {
        pair[(members[x] - 1) * n + (members[y] - 1)] += p;
      }
    }
    s.records.push_back(std::move(r));
  }
  s.closed_form = analytics::p_nonlocal_general(coeffs);
  s.count_ok = s.positive_count == s.expected_count && s.records.size() == s.expected_count;
  s.matches_closed_form = std::abs(s.total - s.closed_form) <= closed_form_tol;

  bool margins_ok = true;
  for (std::size_t k = 1; k <= n; ++k) {
    for (std::size_t l = k + 1; l <= n; ++l) {
      LhvMargin m{k, l, pair[(k - 1) * n + (l - 1)], p_all_u, 0.0};
      m.margin = m.p_dd - m.p_all_u;
      margins_ok = margins_ok && m.margin > 0.0;
      s.lhv.push_back(m);
    }
  }
  s.pass = s.count_ok && s.matches_closed_form && margins_ok && s.total > 0.0;
  return s;
}

ParadoxReport certify(const TransformCoefficients& coeffs, double tol) {
  ParadoxReport rep;
  rep.n = coeffs.size();
  rep.tolerance = tol;
  for (std::size_t k = 1; k <= rep.n; ++k) {
    rep.abs_a.push_back(std::abs(coeffs.a(k)));
    rep.abs_b.push_back(std::abs(coeffs.b(k)));
  }
  rep.normalization = state::normalization(coeffs);
  rep.condition1 = check_condition1(state::uv_amplitudes(coeffs), tol);
  for (std::size_t k = 1; k <= rep.n; ++k) {
    rep.condition2.push_back(check_condition2(coeffs, k, tol));
  }
  rep.condition3 = check_condition3(coeffs, std::max(tol, 1e-12));
  return rep;
}

CrossValidation cross_validate(const TransformCoefficients& coeffs, double tol) {
  coeffs.require_nondegenerate();
  const std::size_t n = coeffs.size();
  std::vector<double> thetas;
  for (std::size_t k = 1; k <= n; ++k) {
    thetas.push_back(circuit::theta_of_A(std::abs(coeffs.a(k))));
  }

  CrossValidation cv;
  auto compare = [&](const circuit::Mode& mode, const state::HardyState& analytic,
                     const std::string& label) {
    const auto hist = circuit::run_exact(circuit::build_circuit(n, thetas, mode));
    for (std::size_t i = 0; i < hist.probabilities.size(); ++i) {
      const double dev = std::abs(hist.probabilities[i] - analytic.probability(i));
      if (dev > cv.max_deviation || cv.worst_mode.empty()) {
        cv.max_deviation = dev;
        cv.worst_mode = label;
      }
    }
  };
  compare(circuit::Mode::prepare(), state::uv_amplitudes(coeffs), "prepare");
  for (std::size_t k = 1; k <= n; ++k) {
    compare(circuit::Mode::mixed(k), state::mixed_amplitudes(coeffs, k),
            "mixed:" + std::to_string(k));
  }
  compare(circuit::Mode::full_cd(), state::cd_amplitudes(coeffs), "full-cd");
  cv.passed = cv.max_deviation < tol;
  return cv;
}

std::string to_json(const ParadoxReport& report) {
  using nlohmann::json;
  json j;
  j["n"] = report.n;
  j["abs_a"] = report.abs_a;
  j["abs_b"] = report.abs_b;
  j["normalization"] = report.normalization;
  j["tolerance"] = report.tolerance;
  j["condition1"] = {{"p_all_u", report.condition1.p_all_u}, {"pass", report.condition1.pass}};
  json c2 = json::array();
  for (const auto& r : report.condition2) {
    c2.push_back({{"site", r.site},
                  {"p_d", r.p_d},
                  {"p_d_expected", r.p_d_expected},
                  {"conditional", r.conditional},
                  {"p_d_consistent", r.p_d_consistent},
                  {"pass", r.pass}});
  }
  j["condition2"] = std::move(c2);
  const auto& s = report.condition3;
  json recs = json::array();
  for (const auto& r : s.records) {
    recs.push_back({{"beta", r.beta.members()},
                    {"bitstring", r.bitstring},
                    {"probability", r.probability},
                    {"positive", r.positive}});
  }
  json lhv = json::array();
  for (const auto& m : s.lhv) {
    lhv.push_back({{"k", m.k},
                   {"l", m.l},
                   {"p_dd", m.p_dd},
                   {"p_all_u", m.p_all_u},
                   {"margin", m.margin}});
  }
  j["condition3"] = {{"records", std::move(recs)},
                     {"total", s.total},
                     {"closed_form", s.closed_form},
                     {"expected_count", s.expected_count},
                     {"positive_count", s.positive_count},
                     {"count_ok", s.count_ok},
                     {"matches_closed_form", s.matches_closed_form},
                     {"pass", s.pass}};
  j["lhv_contradiction"] = std::move(lhv);
  j["certified"] = report.certified();
  return j.dump();
}

}  // namespace hardy::verify
