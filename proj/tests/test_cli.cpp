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

// Runs the hardy_lab binary end to end and inspects the files it writes.
#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

namespace fs = std::filesystem;

namespace {

using Row = std::vector<std::string>;

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("hardy_lab_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + HARDY_LAB_BIN + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::vector<Row> csv(const fs::path& p) {
  std::vector<Row> rows;
  std::istringstream in(slurp(p));
  std::string line;
  while (std::getline(in, line)) {
    Row row;
    std::string field;
    std::istringstream ls(line);
    while (std::getline(ls, field, ',')) row.push_back(field);
    if (!line.empty() && line.back() == ',') row.push_back("");
    rows.push_back(row);
  }
  return rows;
}

const Row* find_row(const std::vector<Row>& rows, const std::string& c0, const std::string& c1) {
  for (const auto& r : rows) {
    if (r.size() > 1 && r[0] == c0 && r[1] == c1) return &r;
  }
  return nullptr;
}

}  // namespace

TEST(Cli, SweepTable) {
  const auto dir = scratch("sweep");
  ASSERT_EQ(run("sweep --n-range 2..4 --a-step 0.01 --shots 2000 --out " + dir.string()), 0);
  const auto rows = csv(dir / "sweep.csv");
  ASSERT_EQ(rows.size(), 1u + 3 * 99);
  EXPECT_EQ(rows[0], (Row{"n", "A", "p_analytic", "p_sampled", "shots", "seed"}));
  const Row* r = find_row(rows, "3", "0.9");
  ASSERT_NE(r, nullptr);
  EXPECT_NEAR(std::stod((*r)[2]), 0.1073, 5e-5);
  EXPECT_EQ((*r)[4], "2000");
  EXPECT_EQ((*r)[5], "42");
  const auto opt = csv(dir / "sweep_optimum.csv");
  ASSERT_EQ(opt.size(), 4u);
  EXPECT_EQ(opt[1][0], "2");
  EXPECT_NEAR(std::stod(opt[1][2]), 0.09017, 1e-5);

  const auto doc = nlohmann::json::parse(slurp(dir / "sweep.json"));
  EXPECT_EQ(doc["schema_version"], 1);
  EXPECT_TRUE(doc.contains("config"));
  EXPECT_EQ(doc["results"]["curves"].size(), 3u);
}

TEST(Cli, SweepWithoutSamplingLeavesColumnsEmpty) {
  const auto dir = scratch("nosample");
  ASSERT_EQ(run("sweep --n 2 --a-step 0.25 --no-sample --out " + dir.string()), 0);
  const auto rows = csv(dir / "sweep.csv");
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[1], (Row{"2", "0.25", rows[1][2], "", "", ""}));
}

TEST(Cli, ByteIdenticalReruns) {
  const auto a = scratch("rerun_a"), b = scratch("rerun_b");
  const std::string args = "sweep --n-range 2..3 --a-step 0.05 --shots 1000 --format csv,json,svg";
  ASSERT_EQ(run(args + " --out " + a.string(), "HARDY_LAB_THREADS=1"), 0);
  ASSERT_EQ(run(args + " --out " + b.string(), "HARDY_LAB_THREADS=3"), 0);
  for (const char* f : {"sweep.csv", "sweep_optimum.csv", "sweep.json", "sweep.svg"}) {
    const auto x = slurp(a / f);
    EXPECT_FALSE(x.empty()) << f;
    EXPECT_EQ(x, slurp(b / f)) << f;
  }
  for (const char* cmd : {"histogram --mode full-cd --format csv,json,svg",
                          "entropy --n-range 2..4 --a-step 0.1 --format csv,json,svg"}) {
    const auto c = scratch("rerun_c"), d = scratch("rerun_d");
    ASSERT_EQ(run(std::string(cmd) + " --out " + c.string()), 0);
    ASSERT_EQ(run(std::string(cmd) + " --out " + d.string()), 0);
    for (const auto& entry : fs::directory_iterator(c)) {
      EXPECT_EQ(slurp(entry.path()), slurp(d / entry.path().filename())) << entry.path();
    }
  }
}

TEST(Cli, HistogramModes) {
  const auto dir = scratch("hist");
  ASSERT_EQ(run("histogram --n 3 --a 0.9 --mode mixed:2 --out " + dir.string()), 0);
  ASSERT_EQ(run("histogram --n 3 --a 0.9 --mode full-cd --out " + dir.string()), 0);
  ASSERT_EQ(run("histogram --n 3 --a 0.9 --mode prepare --out " + dir.string()), 0);
  const auto mixed = csv(dir / "histogram_mixed2.csv");
  ASSERT_EQ(mixed.size(), 9u);
  EXPECT_EQ(mixed[0], (Row{"bitstring", "p_exact", "count", "p_sampled", "postselect_success"}));
  EXPECT_EQ(mixed[8][0], "111");
  EXPECT_NEAR(std::stod(mixed[8][1]), 0.2155, 5e-4);
  const auto prep = csv(dir / "histogram_prepare.csv");
  EXPECT_LE(std::stod(prep[8][1]), 1e-12);
  const auto full = csv(dir / "histogram_full-cd.csv");
  double nonlocal = 0;
  long total = 0;
  for (std::size_t i = 1; i < full.size(); ++i) {
    const auto& bits = full[i][0];
    if (std::count(bits.begin(), bits.end(), '1') >= 2) nonlocal += std::stod(full[i][1]);
    total += std::stol(full[i][2]);
  }
  EXPECT_NEAR(nonlocal, 0.1073, 5e-4);
  EXPECT_EQ(total, 20000);
}

TEST(Cli, AnalyzeCommands) {
  const auto dir = scratch("analyze");
  ASSERT_EQ(run("optimize --n 50 --out " + dir.string()), 0);
  const auto opt = csv(dir / "optimize.csv");
  ASSERT_EQ(opt.size(), 2u);
  EXPECT_GE(std::stod(opt[1][2]), 0.150);
  EXPECT_LE(std::stod(opt[1][2]), 0.157);

  ASSERT_EQ(run("integrate --n-range 2..12 --format csv,svg --out " + dir.string()), 0);
  const auto integ = csv(dir / "integrate.csv");
  ASSERT_EQ(integ.size(), 12u);
  EXPECT_NEAR(std::stod(integ[1][1]), M_PI / 2 - 23.0 / 15.0, 1e-7);
  EXPECT_TRUE(fs::exists(dir / "integrate.svg"));
  EXPECT_FALSE(fs::exists(dir / "integrate.json"));

  ASSERT_EQ(run("asymptote --out " + dir.string()), 0);
  const auto asy = csv(dir / "asymptote.csv");
  EXPECT_EQ(asy[0], (Row{"x_star", "P_inf"}));
  EXPECT_NEAR(std::stod(asy[1][1]), 0.1562, 5e-5);
}

TEST(Cli, EntropyColumnRises) {
  const auto dir = scratch("entropy");
  ASSERT_EQ(run("entropy --n 11 --a-step 0.1 --out " + dir.string()), 0);
  const auto rows = csv(dir / "entropy.csv");
  EXPECT_EQ(rows[0], (Row{"n", "A", "entropy", "negativity", "p_nonlocal", "at_optimum"}));
  ASSERT_EQ(rows.size(), 1u + 9 + 1);
  double prev = -1;
  for (std::size_t i = 1; i <= 9; ++i) {
    const double s = std::stod(rows[i][2]);
    // Spectra below the 1e-14 floor read as zero; past that the column rises strictly.
    if (prev > 0) {
      EXPECT_GT(s, prev) << rows[i][1];
    } else {
      EXPECT_GE(s, prev) << rows[i][1];
    }
    prev = s;
  }
  EXPECT_EQ(rows.back()[5], "1");
}

TEST(Cli, VerifyExitCodes) {
  const auto dir = scratch("verify");
  ASSERT_EQ(run("verify --n 3 --a 0.9 --out " + dir.string()), 0);
  const auto doc = nlohmann::json::parse(slurp(dir / "verify.json"));
  EXPECT_TRUE(doc["results"]["certified"].get<bool>());
  EXPECT_EQ(doc["results"]["report"]["condition3"]["records"].size(), 4u);
  EXPECT_EQ(csv(dir / "verify.csv")[0], (Row{"check", "subject", "value", "pass"}));
  EXPECT_EQ(run("verify --n 4 --a 0.5,0.6,0.7,0.8 --out " + dir.string()), 0);
  EXPECT_EQ(run("verify --n 3 --a 0.9 --circuit-tol 0 --out " + dir.string()), 2);
}

TEST(Cli, UsageAndIoErrors) {
  const auto dir = scratch("errors");
  EXPECT_EQ(run("--help"), 0);
  EXPECT_EQ(run(""), 1);
  EXPECT_EQ(run("sweep --out " + dir.string()), 1);
  EXPECT_EQ(run("sweep --n-range 4..2 --out " + dir.string()), 1);
  EXPECT_EQ(run("histogram --mode sideways --out " + dir.string()), 1);
  EXPECT_EQ(run("histogram --a 1.5 --out " + dir.string()), 1);
  EXPECT_EQ(run("entropy --n 3 --bipartition one-vs-rest:9 --out " + dir.string()), 1);
  EXPECT_EQ(run("asymptote --format pdf --out " + dir.string()), 1);
  EXPECT_EQ(run("sweep --n 2 --bogus"), 1);
  EXPECT_EQ(run("asymptote --out " + dir.string(), "HARDY_LAB_THREADS=zero"), 1);
  std::ofstream(dir / "file") << "x";
  EXPECT_EQ(run("asymptote --out " + (dir / "file" / "sub").string()), 3);
}
