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

#include "hardy/hardy.h"

#include <cstring>
#include <exception>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>

#include "hardy/analytics.hpp"
#include "hardy/circuit.hpp"
#include "hardy/errors.hpp"
#include "hardy/hardy_state.hpp"
#include "hardy/parallel.hpp"
#include "hardy/verify.hpp"

struct hardy_coeffs {
  hardy::state::TransformCoefficients value;
};

struct hardy_state {
  hardy::state::HardyState value;
};

struct hardy_circuit {
  hardy::circuit::CircuitSpec value;
};

struct hardy_histogram {
  hardy::circuit::Histogram value;
};

struct hardy_report {
  hardy::verify::ParadoxReport value;
  std::string json;
};

namespace {

thread_local std::string g_last_error;

hardy_status fail(hardy_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

template <typename F>
hardy_status guarded(F&& body) {
  try {
    body();
    return HARDY_OK;
  } catch (const hardy::DegenerateTransformError& e) {
    return fail(HARDY_ERR_DEGENERATE, e.what());
  } catch (const hardy::PostselectionError& e) {
    return fail(HARDY_ERR_POSTSELECTION, e.what());
  } catch (const std::out_of_range& e) {
    return fail(HARDY_ERR_OUT_OF_RANGE, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(HARDY_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::domain_error& e) {
    return fail(HARDY_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::length_error& e) {
    return fail(HARDY_ERR_BUFFER_TOO_SMALL, e.what());
  } catch (const std::exception& e) {
    return fail(HARDY_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(HARDY_ERR_INTERNAL, "unknown error");
  }
}

void require(bool cond, const char* message) {
  if (!cond) throw std::invalid_argument(message);
}

hardy_status copy_string(const std::string& s, char* buf, size_t len, size_t* needed) {
  if (needed != nullptr) *needed = s.size() + 1;
  if (buf == nullptr || len < s.size() + 1) {
    return fail(HARDY_ERR_BUFFER_TOO_SMALL, "buffer too small");
  }
  std::memcpy(buf, s.c_str(), s.size() + 1);
  return HARDY_OK;
}

hardy::analytics::Bipartition to_bipartition(hardy_bipartition part, size_t site) {
  switch (part) {
    case HARDY_BIPARTITION_HALF_CHAIN:
      return hardy::analytics::Bipartition::half_chain();
    case HARDY_BIPARTITION_ONE_VS_REST:
      return hardy::analytics::Bipartition::one_vs_rest(site);
  }
  throw std::invalid_argument("unknown bipartition");
}

std::vector<double> equal_thetas(size_t n, double a) {
  return std::vector<double>(n, hardy::circuit::theta_of_A(a));
}

}  // namespace

extern "C" {

const char* hardy_last_error(void) { return g_last_error.c_str(); }

const char* hardy_status_name(hardy_status status) {
  switch (status) {
    case HARDY_OK: return "ok";
    case HARDY_ERR_INVALID_ARGUMENT: return "invalid argument";
    case HARDY_ERR_OUT_OF_RANGE: return "out of range";
    case HARDY_ERR_DEGENERATE: return "degenerate transform";
    case HARDY_ERR_POSTSELECTION: return "post-selection failure";
    case HARDY_ERR_BUFFER_TOO_SMALL: return "buffer too small";
    case HARDY_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void hardy_set_max_threads(size_t cap) { hardy::parallel::set_max_threads(cap); }

hardy_status hardy_coeffs_create(size_t n, const double* a_re, const double* a_im,
                                 const double* b_re, const double* b_im, hardy_coeffs** out) {
  return guarded([&] {
    require(out != nullptr && a_re != nullptr && b_re != nullptr, "null argument");
    std::vector<hardy::linalg::Complex> a, b;
    for (size_t i = 0; i < n; ++i) {
      a.emplace_back(a_re[i], a_im != nullptr ? a_im[i] : 0.0);
      b.emplace_back(b_re[i], b_im != nullptr ? b_im[i] : 0.0);
    }
    *out = new hardy_coeffs{{std::move(a), std::move(b)}};
  });
}

hardy_status hardy_coeffs_create_real(size_t n, const double* a, hardy_coeffs** out) {
  return guarded([&] {
    require(out != nullptr && a != nullptr, "null argument");
    *out = new hardy_coeffs{
        hardy::state::TransformCoefficients::from_real(std::span<const double>(a, n))};
  });
}

hardy_status hardy_coeffs_create_equal(size_t n, double a, hardy_coeffs** out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = new hardy_coeffs{hardy::state::TransformCoefficients::equal_real(n, a)};
  });
}

void hardy_coeffs_destroy(hardy_coeffs* coeffs) { delete coeffs; }

size_t hardy_coeffs_size(const hardy_coeffs* coeffs) {
  return coeffs == nullptr ? 0 : coeffs->value.size();
}

hardy_status hardy_state_create(const hardy_coeffs* coeffs, hardy_frame frame,
                                size_t mixed_site, hardy_state** out) {
  return guarded([&] {
    require(coeffs != nullptr && out != nullptr, "null argument");
    switch (frame) {
      case HARDY_FRAME_UV:
        *out = new hardy_state{hardy::state::uv_amplitudes(coeffs->value)};
        return;
      case HARDY_FRAME_MIXED:
        *out = new hardy_state{hardy::state::mixed_amplitudes(coeffs->value, mixed_site)};
        return;
      case HARDY_FRAME_CD:
        *out = new hardy_state{hardy::state::cd_amplitudes(coeffs->value)};
        return;
    }
    throw std::invalid_argument("unknown frame");
  });
}

void hardy_state_destroy(hardy_state* state) { delete state; }

size_t hardy_state_dimension(const hardy_state* state) {
  return state == nullptr ? 0 : state->value.vector().dimension();
}

double hardy_state_normalization(const hardy_state* state) {
  return state == nullptr ? 0.0 : state->value.normalization();
}

hardy_status hardy_state_amplitudes(const hardy_state* state, double* re, double* im,
                                    size_t len) {
  return guarded([&] {
    require(state != nullptr && re != nullptr && im != nullptr, "null argument");
    const auto amps = state->value.vector().amplitudes();
    if (len < amps.size()) throw std::length_error("buffer too small");
    for (size_t i = 0; i < amps.size(); ++i) {
      re[i] = amps[i].real();
      im[i] = amps[i].imag();
    }
  });
}

hardy_status hardy_state_probabilities(const hardy_state* state, double* out, size_t len) {
  return guarded([&] {
    require(state != nullptr && out != nullptr, "null argument");
    const auto p = state->value.probabilities();
    if (len < p.size()) throw std::length_error("buffer too small");
    std::copy(p.begin(), p.end(), out);
  });
}

hardy_status hardy_theta_of_a(double a, double* theta) {
  return guarded([&] {
    require(theta != nullptr, "null argument");
    *theta = hardy::circuit::theta_of_A(a);
  });
}

hardy_status hardy_circuit_build(size_t n, const double* thetas, hardy_mode mode,
                                 size_t mixed_site, hardy_circuit** out) {
  return guarded([&] {
    require(thetas != nullptr && out != nullptr, "null argument");
    hardy::circuit::Mode m;
    switch (mode) {
      case HARDY_MODE_PREPARE: m = hardy::circuit::Mode::prepare(); break;
      case HARDY_MODE_MIXED: m = hardy::circuit::Mode::mixed(mixed_site); break;
      case HARDY_MODE_FULL_CD: m = hardy::circuit::Mode::full_cd(); break;
      default: throw std::invalid_argument("unknown mode");
    }
    *out = new hardy_circuit{
        hardy::circuit::build_circuit(n, std::vector<double>(thetas, thetas + n), m)};
  });
}

void hardy_circuit_destroy(hardy_circuit* circuit) { delete circuit; }

size_t hardy_circuit_gate_count(const hardy_circuit* circuit) {
  return circuit == nullptr ? 0 : circuit->value.gates.size();
}

hardy_status hardy_circuit_describe(const hardy_circuit* circuit, char* buf, size_t len,
                                    size_t* needed) {
  std::string text;
  const hardy_status st = guarded([&] {
    require(circuit != nullptr, "null argument");
    std::ostringstream os;
    os.precision(12);
    for (const auto& g : circuit->value.gates) {
      if (const auto* ry = std::get_if<hardy::circuit::RyGate>(&g)) {
        os << "RY(" << ry->theta << ") q" << ry->site << "\n";
      } else {
        const auto& x = std::get<hardy::circuit::McxGate>(g);
        os << "MCX";
        for (auto c : x.controls.members()) os << " q" << c;
        os << " -> q" << x.target << "\n";
      }
    }
    if (circuit->value.postselect) {
      os << "POSTSELECT q" << circuit->value.postselect->site << " = "
         << circuit->value.postselect->required_bit << "\n";
    }
    text = os.str();
  });
  if (st != HARDY_OK) return st;
  return copy_string(text, buf, len, needed);
}

hardy_status hardy_run_exact(const hardy_circuit* circuit, hardy_histogram** out) {
  return guarded([&] {
    require(circuit != nullptr && out != nullptr, "null argument");
    *out = new hardy_histogram{hardy::circuit::run_exact(circuit->value)};
  });
}

hardy_status hardy_sample_shots(const hardy_histogram* exact, uint64_t shots, uint64_t seed,
                                uint64_t stream, hardy_histogram** out) {
  return guarded([&] {
    require(exact != nullptr && out != nullptr, "null argument");
    *out = new hardy_histogram{hardy::circuit::sample_shots(exact->value, shots, seed, stream)};
  });
}

void hardy_histogram_destroy(hardy_histogram* hist) { delete hist; }

size_t hardy_histogram_sites(const hardy_histogram* hist) {
  return hist == nullptr ? 0 : hist->value.n;
}

double hardy_histogram_postselect_success(const hardy_histogram* hist) {
  return hist == nullptr ? 0.0 : hist->value.postselect_success;
}

uint64_t hardy_histogram_shots(const hardy_histogram* hist) {
  return hist == nullptr ? 0 : hist->value.shots.value_or(0);
}

hardy_status hardy_histogram_probabilities(const hardy_histogram* hist, double* out,
                                           size_t len) {
  return guarded([&] {
    require(hist != nullptr && out != nullptr, "null argument");
    const auto& p = hist->value.probabilities;
    if (len < p.size()) throw std::length_error("buffer too small");
    std::copy(p.begin(), p.end(), out);
  });
}

hardy_status hardy_histogram_counts(const hardy_histogram* hist, uint64_t* out, size_t len) {
  return guarded([&] {
    require(hist != nullptr && out != nullptr, "null argument");
    require(hist->value.is_sampled(), "histogram is exact; it has no counts");
    const auto& c = hist->value.counts;
    if (len < c.size()) throw std::length_error("buffer too small");
    std::copy(c.begin(), c.end(), out);
  });
}

double hardy_histogram_nonlocal_sum(const hardy_histogram* hist) {
  return hist == nullptr ? 0.0 : hist->value.nonlocal_sum();
}

hardy_status hardy_p_nonlocal_general(const hardy_coeffs* coeffs, hardy_analytics_result* out) {
  return guarded([&] {
    require(coeffs != nullptr && out != nullptr, "null argument");
    *out = {HARDY_RESULT_P_NONLOCAL, coeffs->value.size(),
            hardy::analytics::p_nonlocal_general(coeffs->value), 0.0, 0, 1e-12};
  });
}

hardy_status hardy_p_nonlocal_equal(size_t n, double a, hardy_analytics_result* out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = {HARDY_RESULT_P_NONLOCAL, n, hardy::analytics::p_nonlocal_equal(n, a), 0.0, 0, 1e-13};
  });
}

hardy_status hardy_optimize_a(size_t n, hardy_analytics_result* out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    const auto opt = hardy::analytics::optimize_A(n);
    *out = {HARDY_RESULT_OPTIMUM, n, opt.p_star, opt.a_star, 1, 1e-8};
  });
}

hardy_status hardy_asymptote(hardy_analytics_result* out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    const auto asy = hardy::analytics::asymptote();
    *out = {HARDY_RESULT_ASYMPTOTE, 0, asy.p_inf, asy.x_star, 1, 1e-10};
  });
}

hardy_status hardy_integrate_p(size_t n, double abs_tol, hardy_analytics_result* out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = {HARDY_RESULT_INTEGRAL, n, hardy::analytics::integrate_P(n, abs_tol), 0.0, 0,
            abs_tol};
  });
}

hardy_status hardy_entropy(const hardy_coeffs* coeffs, hardy_bipartition part, size_t site,
                           hardy_analytics_result* out) {
  return guarded([&] {
    require(coeffs != nullptr && out != nullptr, "null argument");
    *out = {HARDY_RESULT_ENTROPY, coeffs->value.size(),
            hardy::analytics::entropy(coeffs->value, to_bipartition(part, site)), 0.0, 0, 1e-10};
  });
}

hardy_status hardy_negativity(const hardy_coeffs* coeffs, hardy_bipartition part, size_t site,
                              hardy_analytics_result* out) {
  return guarded([&] {
    require(coeffs != nullptr && out != nullptr, "null argument");
    *out = {HARDY_RESULT_NEGATIVITY, coeffs->value.size(),
            hardy::analytics::negativity(coeffs->value, to_bipartition(part, site)), 0.0, 0,
            1e-9};
  });
}

hardy_status hardy_batch_p_nonlocal_equal(size_t n, const double* a, size_t count,
                                          double* p_out) {
  return guarded([&] {
    require(a != nullptr && p_out != nullptr, "null argument");
    const auto values = hardy::parallel::parallel_map(
        count, [&](size_t i) { return hardy::analytics::p_nonlocal_equal(n, a[i]); });
    std::copy(values.begin(), values.end(), p_out);
  });
}

hardy_status hardy_batch_sampled_nonlocal(size_t n, const double* a, size_t count,
                                          uint64_t shots, uint64_t seed, uint64_t first_stream,
                                          double* p_out) {
  return guarded([&] {
    require(a != nullptr && p_out != nullptr, "null argument");
    const auto values = hardy::parallel::parallel_map(count, [&](size_t i) {
      const auto circ =
          hardy::circuit::build_circuit(n, equal_thetas(n, a[i]), hardy::circuit::Mode::full_cd());
      const auto exact = hardy::circuit::run_exact(circ);
      return hardy::circuit::sample_shots(exact, shots, seed, first_stream + i).nonlocal_sum();
    });
    std::copy(values.begin(), values.end(), p_out);
  });
}

hardy_status hardy_batch_entanglement(size_t n, const double* a, size_t count,
                                      hardy_bipartition part, size_t site, double* entropy_out,
                                      double* negativity_out) {
  return guarded([&] {
    require(a != nullptr && entropy_out != nullptr && negativity_out != nullptr,
            "null argument");
    const auto bip = to_bipartition(part, site);
    struct Pair {
      double s = 0.0, neg = 0.0;
    };
    const auto values = hardy::parallel::parallel_map(count, [&](size_t i) {
      const auto psi =
          hardy::state::uv_amplitudes(hardy::state::TransformCoefficients::equal_real(n, a[i]));
      const auto left = bip.left_sites(n);
      const auto spec = hardy::linalg::schmidt_spectrum(psi.vector(), left);
      return Pair{hardy::linalg::von_neumann_entropy(spec),
                  hardy::linalg::negativity(psi.vector(), left)};
    });
    for (size_t i = 0; i < count; ++i) {
      entropy_out[i] = values[i].s;
      negativity_out[i] = values[i].neg;
    }
  });
}

hardy_status hardy_certify(const hardy_coeffs* coeffs, double tol, hardy_report** out) {
  return guarded([&] {
    require(coeffs != nullptr && out != nullptr, "null argument");
    require(tol >= 0.0, "tolerance must be nonnegative");
    auto rep = hardy::verify::certify(coeffs->value, tol);
    auto json = hardy::verify::to_json(rep);
    *out = new hardy_report{std::move(rep), std::move(json)};
  });
}

void hardy_report_destroy(hardy_report* report) { delete report; }

int hardy_report_certified(const hardy_report* report) {
  return report != nullptr && report->value.certified() ? 1 : 0;
}

double hardy_report_condition3_total(const hardy_report* report) {
  return report == nullptr ? 0.0 : report->value.condition3.total;
}

hardy_status hardy_report_json(const hardy_report* report, char* buf, size_t len,
                               size_t* needed) {
  if (report == nullptr) return fail(HARDY_ERR_INVALID_ARGUMENT, "null argument");
  return copy_string(report->json, buf, len, needed);
}

hardy_status hardy_cross_validate(const hardy_coeffs* coeffs, double tol, int* passed,
                                  double* max_deviation) {
  return guarded([&] {
    require(coeffs != nullptr && passed != nullptr && max_deviation != nullptr,
            "null argument");
    const auto cv = hardy::verify::cross_validate(coeffs->value, tol);
    *passed = cv.passed ? 1 : 0;
    *max_deviation = cv.max_deviation;
  });
}

}  // extern "C"
