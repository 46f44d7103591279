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

// hardy_lab: command-line front end over the hardy C API.
//
//   hardy_lab sweep      --n-range 2..6 [--a-step 0.005] [--shots N --seed S | --no-sample]
//   hardy_lab histogram  --n 3 --a 0.9 --mode prepare|mixed:<k>|full-cd
//   hardy_lab optimize   --n-range 2..50
//   hardy_lab integrate  --n-range 2..12 [--abs-tol 1e-9]
//   hardy_lab entropy    --n-range 2..11 [--a 0.1,0.5 | --a-step 0.05] [--bipartition ...]
//   hardy_lab asymptote
//   hardy_lab verify     --n 3 --a 0.9 [--tol 1e-10]
//
// Every subcommand writes into --out (default ".") in the formats listed by
// --format (csv,json,svg). Exit codes: 0 ok, 1 usage, 2 verification
// failure, 3 I/O error.

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hardy/hardy.h"
#include "output.hpp"
#include "svg.hpp"

namespace {

using nlohmann::json;
using hardy_lab::CsvTable;
using hardy_lab::format_number;

enum ExitCode : int { kOk = 0, kUsage = 1, kVerifyFailed = 2, kIo = 3 };

class UsageError : public std::runtime_error {
 public:
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

void check(hardy_status st) {
  if (st != HARDY_OK) {
    throw UsageError(std::string(hardy_status_name(st)) + ": " + hardy_last_error());
  }
}

struct CoeffsDeleter {
  void operator()(hardy_coeffs* p) const { hardy_coeffs_destroy(p); }
};
struct CircuitDeleter {
  void operator()(hardy_circuit* p) const { hardy_circuit_destroy(p); }
};
struct HistogramDeleter {
  void operator()(hardy_histogram* p) const { hardy_histogram_destroy(p); }
};
struct ReportDeleter {
  void operator()(hardy_report* p) const { hardy_report_destroy(p); }
};
using CoeffsPtr = std::unique_ptr<hardy_coeffs, CoeffsDeleter>;
using CircuitPtr = std::unique_ptr<hardy_circuit, CircuitDeleter>;
using HistogramPtr = std::unique_ptr<hardy_histogram, HistogramDeleter>;
using ReportPtr = std::unique_ptr<hardy_report, ReportDeleter>;

// Raw flag values as typed on the command line.
struct Flags {
  std::optional<std::size_t> n;
  std::string n_range;
  std::string a;
  double a_step = 0.005;
  std::string mode = "prepare";
  std::uint64_t shots = 20000;
  std::uint64_t seed = 42;
  std::string bipartition = "half";
  std::string out = ".";
  std::string format = "csv,json";
  double tol = 1e-10;
  double circuit_tol = 1e-9;
  double abs_tol = 1e-9;
  bool no_sample = false;
};

struct ModeChoice {
  hardy_mode mode = HARDY_MODE_PREPARE;
  std::size_t site = 0;
  std::string label;  // file-name friendly
};

struct BipartitionChoice {
  hardy_bipartition part = HARDY_BIPARTITION_HALF_CHAIN;
  std::size_t site = 0;
  std::string label;
};

std::size_t parse_size(const std::string& s, const char* what) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &pos);
  } catch (const std::exception&) {
    throw UsageError(std::string("invalid ") + what + ": '" + s + "'");
  }
  if (pos != s.size()) throw UsageError(std::string("invalid ") + what + ": '" + s + "'");
  return static_cast<std::size_t>(v);
}

double parse_double(const std::string& s, const char* what) {
  std::size_t pos = 0;
  double v = 0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw UsageError(std::string("invalid ") + what + ": '" + s + "'");
  }
  if (pos != s.size()) throw UsageError(std::string("invalid ") + what + ": '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, sep)) out.push_back(item);
  return out;
}

std::vector<std::size_t> resolve_ns(const Flags& f) {
  std::vector<std::size_t> ns;
  if (!f.n_range.empty()) {
    const auto dots = f.n_range.find("..");
    if (dots == std::string::npos) throw UsageError("--n-range must look like a..b");
    const auto lo = parse_size(f.n_range.substr(0, dots), "--n-range");
    const auto hi = parse_size(f.n_range.substr(dots + 2), "--n-range");
    if (lo > hi) throw UsageError("--n-range must satisfy a <= b");
    for (auto n = lo; n <= hi; ++n) ns.push_back(n);
  } else if (f.n) {
    ns.push_back(*f.n);
  } else {
    throw UsageError("give --n or --n-range");
  }
  for (auto n : ns) {
    if (n < 2) throw UsageError("n must be at least 2");
  }
  return ns;
}

std::vector<double> parse_a_list(const std::string& s) {
  std::vector<double> out;
  for (const auto& item : split(s, ',')) {
    const double a = parse_double(item, "--a");
    if (!(a > 0.0 && a < 1.0)) throw UsageError("A values must lie in (0, 1)");
    out.push_back(a);
  }
  if (out.empty()) throw UsageError("--a is empty");
  return out;
}

// Open grid step, 2*step, ... strictly inside (0, 1), rounded to 12 decimals.
std::vector<double> a_grid(double step) {
  if (!(step > 0.0 && step < 0.5)) throw UsageError("--a-step must lie in (0, 0.5)");
  const double ratio = 1.0 / step;
  const auto whole = static_cast<long long>(std::llround(ratio));
  const long long count =
      std::abs(ratio - static_cast<double>(whole)) < 1e-9 ? whole - 1
                                                          : static_cast<long long>(ratio);
  std::vector<double> grid;
  for (long long i = 1; i <= count; ++i) {
    const double a = std::round(static_cast<double>(i) * step * 1e12) / 1e12;
    if (a > 0.0 && a < 1.0) grid.push_back(a);
  }
  return grid;
}

ModeChoice parse_mode(const std::string& s) {
  if (s == "prepare") return {HARDY_MODE_PREPARE, 0, "prepare"};
  if (s == "full-cd") return {HARDY_MODE_FULL_CD, 0, "full-cd"};
  if (s.rfind("mixed:", 0) == 0) {
    const auto k = parse_size(s.substr(6), "--mode site");
    return {HARDY_MODE_MIXED, k, "mixed" + std::to_string(k)};
  }
  throw UsageError("--mode must be prepare, mixed:<k> or full-cd");
}

BipartitionChoice parse_bipartition(const std::string& s) {
  if (s == "half") return {HARDY_BIPARTITION_HALF_CHAIN, 0, "half"};
  if (s.rfind("one-vs-rest:", 0) == 0) {
    const auto k = parse_size(s.substr(12), "--bipartition site");
    return {HARDY_BIPARTITION_ONE_VS_REST, k, "one-vs-rest:" + std::to_string(k)};
  }
  throw UsageError("--bipartition must be half or one-vs-rest:<k>");
}

std::set<std::string> parse_formats(const std::string& s) {
  std::set<std::string> out;
  for (const auto& f : split(s, ',')) {
    if (f != "csv" && f != "json" && f != "svg") {
      throw UsageError("--format entries must be csv, json or svg");
    }
    out.insert(f);
  }
  if (out.empty()) throw UsageError("--format is empty");
  return out;
}

// Per-site A values: one value is broadcast to all n sites.
std::vector<double> per_site(const std::vector<double>& a, std::size_t n) {
  if (a.size() == 1) return std::vector<double>(n, a.front());
  if (a.size() != n) throw UsageError("--a needs 1 or n comma-separated values");
  return a;
}

json result_json(const hardy_analytics_result& r, const char* kind, json inputs) {
  json j{{"kind", kind}, {"n", r.n}, {"inputs", std::move(inputs)}, {"value", r.value},
         {"tolerance", r.tolerance}};
  j["secondary_value"] = r.has_secondary ? json(r.secondary_value) : json(nullptr);
  return j;
}

// Collects the files of one subcommand and writes them in a fixed order.
class Outputs {
 public:
  Outputs(std::filesystem::path dir, std::set<std::string> formats)
      : dir_(std::move(dir)), formats_(std::move(formats)) {}

  bool wants(const std::string& fmt) const { return formats_.count(fmt) != 0; }
  void csv(const std::string& name, const CsvTable& t) {
    if (wants("csv")) hardy_lab::write_text(dir_, name, t.str());
  }
  void json_file(const std::string& name, const json& config, const json& results) {
    if (wants("json")) hardy_lab::write_text(dir_, name, hardy_lab::json_document(config, results));
  }
  void svg(const std::string& name, const std::string& body) {
    if (wants("svg")) hardy_lab::write_text(dir_, name, body);
  }

 private:
  std::filesystem::path dir_;
  std::set<std::string> formats_;
};

json base_config(const std::string& subcommand, const Flags& f) {
  return json{{"subcommand", subcommand}, {"format", f.format}};
}

int cmd_sweep(const Flags& f, Outputs& out) {
  const auto ns = resolve_ns(f);
  const auto grid = a_grid(f.a_step);
  if (f.shots < 1) throw UsageError("--shots must be at least 1");
  const bool sampled = !f.no_sample;

  CsvTable rows({"n", "A", "p_analytic", "p_sampled", "shots", "seed"});
  CsvTable optimum({"n", "A_star", "P_star"});
  json curves = json::array();
  json optima = json::array();
  std::vector<hardy_lab::svg::Series> series;
  hardy_lab::svg::Series peak{"max P (A*)", {}, {}, true};

  std::uint64_t stream = 0;
  for (auto n : ns) {
    std::vector<double> p(grid.size());
    check(hardy_batch_p_nonlocal_equal(n, grid.data(), grid.size(), p.data()));
    std::vector<double> ps(grid.size(), std::nan(""));
    if (sampled) {
      check(hardy_batch_sampled_nonlocal(n, grid.data(), grid.size(), f.shots, f.seed, stream,
                                         ps.data()));
      stream += grid.size();
    }
    json points = json::array();
    for (std::size_t i = 0; i < grid.size(); ++i) {
      rows.add_row({std::to_string(n), format_number(grid[i]), format_number(p[i]),
                    format_number(ps[i]), sampled ? std::to_string(f.shots) : "",
                    sampled ? std::to_string(f.seed) : ""});
      json pt{{"A", grid[i]}, {"p_analytic", p[i]}};
      pt["p_sampled"] = sampled ? json(ps[i]) : json(nullptr);
      points.push_back(std::move(pt));
    }
    curves.push_back({{"n", n}, {"points", std::move(points)}});

    hardy_analytics_result opt{};
    check(hardy_optimize_a(n, &opt));
    optimum.add_row({std::to_string(n), format_number(opt.secondary_value),
                     format_number(opt.value)});
    optima.push_back(result_json(opt, "OPTIMUM", json{{"n", n}}));
    peak.x.push_back(opt.secondary_value);
    peak.y.push_back(opt.value);

    series.push_back({"n=" + std::to_string(n), grid, p, false});
    if (sampled) series.push_back({"sampled n=" + std::to_string(n), grid, ps, true});
  }
  series.push_back(peak);

  json config = base_config("sweep", f);
  config["n"] = ns;
  config["a_step"] = f.a_step;
  config["sampled"] = sampled;
  config["shots"] = sampled ? json(f.shots) : json(nullptr);
  config["seed"] = sampled ? json(f.seed) : json(nullptr);
  out.csv("sweep.csv", rows);
  out.csv("sweep_optimum.csv", optimum);
  out.json_file("sweep.json", config, json{{"curves", curves}, {"optimum", optima}});
  out.svg("sweep.svg", hardy_lab::svg::line_chart(
                           {"Nonlocal probability vs A", "A", "P_nonlocal", false, false}, series));
  return kOk;
}

int cmd_histogram(const Flags& f, Outputs& out) {
  const std::size_t n = f.n.value_or(3);
  if (n < 2) throw UsageError("n must be at least 2");
  const auto a = per_site(parse_a_list(f.a.empty() ? "0.9" : f.a), n);
  const auto mode = parse_mode(f.mode);
  if (f.shots < 1) throw UsageError("--shots must be at least 1");

  std::vector<double> thetas(n);
  for (std::size_t k = 0; k < n; ++k) check(hardy_theta_of_a(a[k], &thetas[k]));
  hardy_circuit* raw_circ = nullptr;
  check(hardy_circuit_build(n, thetas.data(), mode.mode, mode.site, &raw_circ));
  CircuitPtr circ(raw_circ);
  hardy_histogram* raw_exact = nullptr;
  check(hardy_run_exact(circ.get(), &raw_exact));
  HistogramPtr exact(raw_exact);
  hardy_histogram* raw_sampled = nullptr;
  check(hardy_sample_shots(exact.get(), f.shots, f.seed, 0, &raw_sampled));
  HistogramPtr sampled(raw_sampled);

  const std::size_t dim = std::size_t{1} << n;
  std::vector<double> p(dim), ps(dim);
  std::vector<std::uint64_t> counts(dim);
  check(hardy_histogram_probabilities(exact.get(), p.data(), dim));
  check(hardy_histogram_probabilities(sampled.get(), ps.data(), dim));
  check(hardy_histogram_counts(sampled.get(), counts.data(), dim));
  const double success = hardy_histogram_postselect_success(exact.get());

  size_t needed = 0;
  hardy_circuit_describe(circ.get(), nullptr, 0, &needed);
  std::string listing(needed, '\0');
  check(hardy_circuit_describe(circ.get(), listing.data(), listing.size(), &needed));
  listing.resize(needed - 1);

  CsvTable rows({"bitstring", "p_exact", "count", "p_sampled", "postselect_success"});
  json exact_json = json::object(), counts_json = json::object();
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < dim; ++i) {
    std::string bits(n, '0');
    for (std::size_t j = 0; j < n; ++j) {
      if ((i >> (n - 1 - j)) & 1U) bits[j] = '1';
    }
    rows.add_row({bits, format_number(p[i]), std::to_string(counts[i]), format_number(ps[i]),
                  format_number(success)});
    exact_json[bits] = p[i];
    counts_json[bits] = counts[i];
    labels.push_back(bits);
  }

  json config = base_config("histogram", f);
  config["n"] = n;
  config["a"] = a;
  config["mode"] = f.mode;
  config["shots"] = f.shots;
  config["seed"] = f.seed;
  json results{{"mode", f.mode},
               {"circuit", listing},
               {"postselect_success", success},
               {"exact", exact_json},
               {"nonlocal_sum_exact", hardy_histogram_nonlocal_sum(exact.get())},
               {"sampled",
                {{"shots", f.shots},
                 {"seed", f.seed},
                 {"stream", 0},
                 {"counts", counts_json},
                 {"nonlocal_sum", hardy_histogram_nonlocal_sum(sampled.get())}}}};
  const std::string stem = "histogram_" + mode.label;
  out.csv(stem + ".csv", rows);
  out.json_file(stem + ".json", config, results);
  out.svg(stem + ".svg",
          hardy_lab::svg::bar_chart({"Outcome probabilities (" + f.mode + ")", "outcome",
                                     "probability", false, false},
                                    labels, p, ps));
  return kOk;
}

int cmd_optimize(const Flags& f, Outputs& out) {
  const auto ns = resolve_ns(f);
  CsvTable rows({"n", "A_star", "P_star"});
  json results = json::array();
  hardy_lab::svg::Series curve{"max P_nonlocal", {}, {}, true};
  for (auto n : ns) {
    hardy_analytics_result r{};
    check(hardy_optimize_a(n, &r));
    rows.add_row({std::to_string(n), format_number(r.secondary_value), format_number(r.value)});
    results.push_back(result_json(r, "OPTIMUM", json{{"n", n}}));
    curve.x.push_back(static_cast<double>(n));
    curve.y.push_back(r.value);
  }
  hardy_analytics_result asy{};
  check(hardy_asymptote(&asy));
  hardy_lab::svg::Series limit{"large-n limit", {curve.x.front(), curve.x.back()},
                               {asy.value, asy.value}, false};

  json config = base_config("optimize", f);
  config["n"] = ns;
  out.csv("optimize.csv", rows);
  out.json_file("optimize.json", config, results);
  out.svg("optimize.svg", hardy_lab::svg::line_chart({"Optimal nonlocal probability", "n",
                                                      "P*", false, false},
                                                     {curve, limit}));
  return kOk;
}

int cmd_integrate(const Flags& f, Outputs& out) {
  const auto ns = resolve_ns(f);
  if (!(f.abs_tol > 0.0)) throw UsageError("--abs-tol must be positive");
  CsvTable rows({"n", "integral"});
  json results = json::array();
  hardy_lab::svg::Series curve{"total nonlocal probability", {}, {}, true};
  for (auto n : ns) {
    hardy_analytics_result r{};
    check(hardy_integrate_p(n, f.abs_tol, &r));
    rows.add_row({std::to_string(n), format_number(r.value)});
    results.push_back(result_json(r, "INTEGRAL", json{{"n", n}, {"abs_tol", f.abs_tol}}));
    curve.x.push_back(static_cast<double>(n));
    curve.y.push_back(r.value);
  }
  json config = base_config("integrate", f);
  config["n"] = ns;
  config["abs_tol"] = f.abs_tol;
  out.csv("integrate.csv", rows);
  out.json_file("integrate.json", config, results);
  out.svg("integrate.svg", hardy_lab::svg::line_chart({"Integrated nonlocal probability", "n",
                                                       "integral", true, true},
                                                      {curve}));
  return kOk;
}

int cmd_entropy(const Flags& f, Outputs& out) {
  const auto ns = resolve_ns(f);
  const auto bip = parse_bipartition(f.bipartition);
  const std::vector<double> grid = f.a.empty() ? a_grid(f.a_step) : parse_a_list(f.a);

  CsvTable rows({"n", "A", "entropy", "negativity", "p_nonlocal", "at_optimum"});
  json results = json::array();
  std::vector<hardy_lab::svg::Series> series;
  hardy_lab::svg::Series at_opt{"at optimal A", {}, {}, true};
  for (auto n : ns) {
    if (n > 24) throw UsageError("entropy supports n <= 24");
    hardy_analytics_result opt{};
    check(hardy_optimize_a(n, &opt));
    std::vector<double> as = grid;
    as.push_back(opt.secondary_value);
    std::vector<double> s(as.size()), neg(as.size()), p(as.size());
    check(hardy_batch_entanglement(n, as.data(), as.size(), bip.part, bip.site, s.data(),
                                   neg.data()));
    check(hardy_batch_p_nonlocal_equal(n, as.data(), as.size(), p.data()));
    hardy_lab::svg::Series curve{"n=" + std::to_string(n), {}, {}, false};
    for (std::size_t i = 0; i < as.size(); ++i) {
      const bool is_opt = i + 1 == as.size();
      rows.add_row({std::to_string(n), format_number(as[i]), format_number(s[i]),
                    format_number(neg[i]), format_number(p[i]), is_opt ? "1" : "0"});
      json inputs{{"A", as[i]}, {"bipartition", bip.label}, {"at_optimum", is_opt}};
      results.push_back({{"kind", "ENTROPY"}, {"n", n}, {"inputs", inputs}, {"value", s[i]},
                         {"secondary_value", nullptr}, {"tolerance", 1e-10}});
      results.push_back({{"kind", "NEGATIVITY"}, {"n", n}, {"inputs", inputs},
                         {"value", neg[i]}, {"secondary_value", nullptr}, {"tolerance", 1e-9}});
      if (is_opt) {
        at_opt.x.push_back(as[i]);
        at_opt.y.push_back(s[i]);
      } else {
        curve.x.push_back(as[i]);
        curve.y.push_back(s[i]);
      }
    }
    series.push_back(std::move(curve));
  }
  series.push_back(at_opt);

  json config = base_config("entropy", f);
  config["n"] = ns;
  config["bipartition"] = bip.label;
  if (f.a.empty()) {
    config["a_step"] = f.a_step;
  } else {
    config["a"] = grid;
  }
  out.csv("entropy.csv", rows);
  out.json_file("entropy.json", config, results);
  out.svg("entropy.svg", hardy_lab::svg::line_chart({"Entanglement entropy (" + bip.label + ")",
                                                     "A", "S (bits)", false, false},
                                                    series));
  return kOk;
}

int cmd_asymptote(const Flags& f, Outputs& out) {
  hardy_analytics_result r{};
  check(hardy_asymptote(&r));
  CsvTable rows({"x_star", "P_inf"});
  rows.add_row({format_number(r.secondary_value), format_number(r.value)});
  out.csv("asymptote.csv", rows);
  out.json_file("asymptote.json", base_config("asymptote", f),
                json::array({result_json(r, "ASYMPTOTE", json::object())}));
  return kOk;
}

int cmd_verify(const Flags& f, Outputs& out) {
  const std::size_t n = f.n.value_or(3);
  if (n < 2) throw UsageError("n must be at least 2");
  const auto a = per_site(parse_a_list(f.a.empty() ? "0.9" : f.a), n);
  if (!(f.tol >= 0.0) || !(f.circuit_tol >= 0.0)) throw UsageError("tolerances must be >= 0");

  hardy_coeffs* raw = nullptr;
  check(hardy_coeffs_create_real(n, a.data(), &raw));
  CoeffsPtr coeffs(raw);
  hardy_report* raw_rep = nullptr;
  check(hardy_certify(coeffs.get(), f.tol, &raw_rep));
  ReportPtr report(raw_rep);
  std::size_t needed = 0;
  hardy_report_json(report.get(), nullptr, 0, &needed);
  std::string text(needed, '\0');
  check(hardy_report_json(report.get(), text.data(), text.size(), &needed));
  text.resize(needed - 1);
  const json rep = json::parse(text);

  int cv_passed = 0;
  double cv_dev = 0.0;
  check(hardy_cross_validate(coeffs.get(), f.circuit_tol, &cv_passed, &cv_dev));
  const bool certified = hardy_report_certified(report.get()) == 1;
  const bool ok = certified && cv_passed == 1;

  CsvTable rows({"check", "subject", "value", "pass"});
  auto flag = [](bool b) { return std::string(b ? "1" : "0"); };
  rows.add_row({"condition1", "P(U_all)", format_number(rep["condition1"]["p_all_u"]),
                flag(rep["condition1"]["pass"])});
  for (const auto& r : rep["condition2"]) {
    rows.add_row({"condition2", "P(U_rest|D_" + std::to_string(r["site"].get<int>()) + ")",
                  format_number(r["conditional"]), flag(r["pass"])});
  }
  for (const auto& r : rep["condition3"]["records"]) {
    rows.add_row({"condition3", "P(D=" + r["bitstring"].get<std::string>() + ")",
                  format_number(r["probability"]), flag(r["positive"])});
  }
  rows.add_row({"condition3_total", "sum", format_number(rep["condition3"]["total"]),
                flag(rep["condition3"]["pass"])});
  for (const auto& m : rep["lhv_contradiction"]) {
    const double margin = m["margin"];
    rows.add_row({"lhv_margin",
                  "P(D_" + std::to_string(m["k"].get<int>()) + "D_" +
                      std::to_string(m["l"].get<int>()) + ")-P(U_all)",
                  format_number(margin), flag(margin > 0.0)});
  }
  rows.add_row({"cross_validation", "max_deviation", format_number(cv_dev), flag(cv_passed == 1)});

  json config = base_config("verify", f);
  config["n"] = n;
  config["a"] = a;
  config["tol"] = f.tol;
  config["circuit_tol"] = f.circuit_tol;
  json results{{"report", rep},
               {"cross_validation",
                {{"passed", cv_passed == 1}, {"max_deviation", cv_dev}, {"tol", f.circuit_tol}}},
               {"certified", ok}};
  out.csv("verify.csv", rows);
  out.json_file("verify.json", config, results);

  std::cout << (ok ? "paradox certified" : "verification FAILED") << " (n=" << n
            << ", nonlocal total " << format_number(rep["condition3"]["total"])
            << ", circuit max deviation " << format_number(cv_dev) << ")\n";
  return ok ? kOk : kVerifyFailed;
}

void apply_thread_cap() {
  const char* env = std::getenv("HARDY_LAB_THREADS");
  if (env == nullptr || *env == '\0') return;
  const auto cap = parse_size(env, "HARDY_LAB_THREADS");
  if (cap == 0) throw UsageError("HARDY_LAB_THREADS must be positive");
  hardy_set_max_threads(cap);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hardy-paradox simulation and analysis toolkit"};
  app.require_subcommand(1);
  Flags flags;

  auto add_out = [&](CLI::App* sub) {
    sub->add_option("--out", flags.out, "Output directory");
    sub->add_option("--format", flags.format, "Comma-separated subset of csv,json,svg");
  };
  auto add_ns = [&](CLI::App* sub) {
    sub->add_option("--n", flags.n, "Number of particles");
    sub->add_option("--n-range", flags.n_range, "Inclusive range a..b");
  };

  auto* sweep = app.add_subcommand("sweep", "P_nonlocal(A) curves and their maxima");
  add_ns(sweep);
  sweep->add_option("--a-step", flags.a_step, "A-grid step");
  sweep->add_option("--shots", flags.shots, "Shots per sampled point");
  sweep->add_option("--seed", flags.seed, "Sampling seed");
  sweep->add_flag("--no-sample", flags.no_sample, "Skip the sampled estimates");
  add_out(sweep);

  auto* histogram = app.add_subcommand("histogram", "Outcome tables of one protocol circuit");
  histogram->add_option("--n", flags.n, "Number of particles (default 3)");
  histogram->add_option("--a", flags.a, "A, or n comma-separated values (default 0.9)");
  histogram->add_option("--mode", flags.mode, "prepare | mixed:<k> | full-cd");
  histogram->add_option("--shots", flags.shots, "Shots");
  histogram->add_option("--seed", flags.seed, "Sampling seed");
  add_out(histogram);

  auto* optimize = app.add_subcommand("optimize", "Maximize P_nonlocal over A");
  add_ns(optimize);
  add_out(optimize);

  auto* integrate = app.add_subcommand("integrate", "Integral of P_nonlocal over A");
  add_ns(integrate);
  integrate->add_option("--abs-tol", flags.abs_tol, "Quadrature tolerance");
  add_out(integrate);

  auto* entropy = app.add_subcommand("entropy", "Entanglement entropy and negativity");
  add_ns(entropy);
  entropy->add_option("--a", flags.a, "Comma-separated A values (default: grid)");
  entropy->add_option("--a-step", flags.a_step, "A-grid step");
  entropy->add_option("--bipartition", flags.bipartition, "half | one-vs-rest:<k>");
  add_out(entropy);

  auto* asymptote = app.add_subcommand("asymptote", "Large-n limit of the optimum");
  add_out(asymptote);

  auto* verify = app.add_subcommand("verify", "Certify the three nonlocality conditions");
  verify->add_option("--n", flags.n, "Number of particles (default 3)");
  verify->add_option("--a", flags.a, "A, or n comma-separated values (default 0.9)");
  verify->add_option("--tol", flags.tol, "Analytic tolerance");
  verify->add_option("--circuit-tol", flags.circuit_tol, "Circuit cross-check tolerance");
  add_out(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    apply_thread_cap();
    Outputs out(flags.out, parse_formats(flags.format));
    if (sweep->parsed()) return cmd_sweep(flags, out);
    if (histogram->parsed()) return cmd_histogram(flags, out);
    if (optimize->parsed()) return cmd_optimize(flags, out);
    if (integrate->parsed()) return cmd_integrate(flags, out);
    if (entropy->parsed()) return cmd_entropy(flags, out);
    if (asymptote->parsed()) return cmd_asymptote(flags, out);
    if (verify->parsed()) return cmd_verify(flags, out);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const hardy_lab::IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
