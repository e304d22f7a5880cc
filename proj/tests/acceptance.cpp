// Copyright 2026 The edplab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Acceptance suite: one PASS/FAIL line per criterion. Exit status is 0
// only when every criterion passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "edplab/random.hpp"
#include "edplab/verify.hpp"

namespace {

using namespace edplab;
using Clock = std::chrono::steady_clock;

// Pinned tolerances and limits.
constexpr double kRandomPairTol = 1e-12;
constexpr double kRandomPairSeconds = 10.0;
constexpr double kFirstPairTol = 1e-10;
constexpr double kOptimizerTol = 1e-6;
constexpr double kOptimizerSecondsPerRun = 300.0;
constexpr double kLemmaSeconds = 60.0;
constexpr double kSplittingTol = 1e-9;
constexpr double kFidelityTol = 1e-9;
constexpr int kRandomSplittingProtocols = 200;
constexpr int kRandomNegFidelityProtocols = 100;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* format, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return buf;
}

Outcome criterion_random_pair() {
  const auto t0 = Clock::now();
  double worst = 0.0;
  int cases = 0;
  for (int n = 1; n <= 5; ++n) {
    const Protocol p = make_random_pair(n);
    for (int r = 0; r <= n; ++r) {
      const double f = protocol_fidelity(p, ErrorModel(MeasureR{n, r})).value;
      worst = std::max(worst, std::abs(f - (1.0 - r / (2.0 * n))));
      ++cases;
    }
  }
  const double elapsed = seconds_since(t0);
  return {worst <= kRandomPairTol && elapsed < kRandomPairSeconds,
          fmt("%d cases, max |F - (1 - r/2n)| = %.3g (tol %.0e), %.2f s (limit %.0f s)", cases,
              worst, kRandomPairTol, elapsed, kRandomPairSeconds)};
}

Outcome criterion_first_pair() {
  double worst = 0.0;
  int cases = 0;
  for (int n = 1; n <= 3; ++n) {
    const Protocol p = make_first_pair(n);
    for (int step = 0; step <= 10; ++step) {
      const double prob = step / 10.0;
      const double f = protocol_fidelity(p, ErrorModel(Depolarization{n, prob})).value;
      worst = std::max(worst, std::abs(f - (1.0 - 0.75 * prob)));
      ++cases;
    }
  }
  return {worst <= kFirstPairTol,
          fmt("%d cases, max |F - (1 - 3p/4)| = %.3g (tol %.0e)", cases, worst, kFirstPairTol)};
}

Outcome criterion_optimizer() {
  OptimizerConfig cfg;  // 32 restarts
  int runs = 0;
  int violations = 0;
  double worst_excess = -1.0;
  double slowest = 0.0;
  auto check = [&](const BoundReport& r, double elapsed) {
    ++runs;
    slowest = std::max(slowest, elapsed);
    worst_excess = std::max(worst_excess, r.achieved - r.bound);
    if (r.achieved > r.bound + kOptimizerTol) ++violations;
  };
  for (int n = 1; n <= 2; ++n) {
    for (int a = 0; a <= 2; ++a) {
      for (int r = 0; r <= n; ++r) {
        const auto t0 = Clock::now();
        const BoundReport rep = optimize_0bit_measure_r(n, r, a, cfg);
        check(rep, seconds_since(t0));
      }
      for (double p : {0.1, 0.4, 0.7, 1.0}) {
        const auto t0 = Clock::now();
        const BoundReport rep = optimize_0bit_depolarization(n, p, a, cfg);
        check(rep, seconds_since(t0));
      }
    }
  }
  return {violations == 0 && slowest < kOptimizerSecondsPerRun,
          fmt("%d runs (n<=2, ancillas<=2, %d restarts), %d above bound + %.0e, "
              "max(best - bound) = %.3g, slowest run %.2f s (limit %.0f s)",
              runs, cfg.restarts, violations, kOptimizerTol, worst_excess, slowest,
              kOptimizerSecondsPerRun)};
}

Outcome criterion_lemmas() {
  const auto t0 = Clock::now();
  LemmaSuiteConfig cfg;  // 1000 instances per lemma
  const auto rows = lemma_suite(cfg);
  const double elapsed = seconds_since(t0);
  int violations = 0;
  std::string worst;
  for (const auto& r : rows) {
    for (const auto& [k, v] : r.params) {
      if (k == "violations") violations += static_cast<int>(v);
    }
    worst += fmt(" %s=%.3g", r.theorem.c_str(), r.achieved);
  }
  return {all_pass(rows) && violations == 0 && elapsed < kLemmaSeconds,
          fmt("%zu lemmas x %d instances, %d violations, %.2f s (limit %.0f s); extremes:%s",
              rows.size(), cfg.instances, violations, elapsed, kLemmaSeconds, worst.c_str())};
}

Outcome criterion_splitting() {
  int checked = 0;
  int failures = 0;
  double min_eig = 0.0;
  double min_squeeze = 1.0;
  auto consider = [&](const Protocol& p) {
    const SplittingReport rep = verify_splitting(p, kSplittingTol);
    ++checked;
    min_eig = std::min(min_eig, rep.min_eigenvalue);
    min_squeeze = std::min(min_squeeze, rep.q - rep.required_q());
    if (!rep.holds()) ++failures;
  };
  for (int n = 1; n <= 3; ++n) {
    for (int s = 0; s <= 3 && s < n; ++s) consider(make_simple_random_hash(n, s));
  }
  for (int i = 0; i < kRandomSplittingProtocols; ++i) {
    const int n = 1 + i % 3;
    const int s = 1 + (i / 3) % 3;
    consider(random_protocol(n, s, split_seed(20260101, static_cast<std::uint64_t>(i))));
  }
  return {failures == 0,
          fmt("%d protocols (hash s<n<=3 plus %d random), %d failures, worst node eigenvalue "
              "%.3g, min(q - p^2/2^s) = %.3g (tol %.0e)",
              checked, kRandomSplittingProtocols, failures, min_eig, min_squeeze, kSplittingTol)};
}

Outcome criterion_conditional_fidelity() {
  int pos_rows = 0;
  int pos_fail = 0;
  double pos_margin = 1.0;
  for (int n = 1; n <= 4; ++n) {
    for (int s = 1; s <= 3 && s < n; ++s) {
      for (double eps : {0.1, 0.25}) {
        BoundReport r = verify_pos_fidelity(n, s, eps);
        r.tolerance = kFidelityTol;
        ++pos_rows;
        pos_margin = std::min(pos_margin, r.margin());
        if (!r.pass()) ++pos_fail;
      }
    }
  }
  std::vector<Protocol> tested;
  for (int n = 1; n <= 3; ++n) {
    tested.push_back(make_first_pair(n));
    tested.push_back(make_random_pair(n));
    tested.push_back(make_random_permutation(n));
    for (int s = 0; s < n; ++s) tested.push_back(make_simple_random_hash(n, s));
  }
  tested.push_back(make_simple_random_hash(4, 3));
  for (int i = 0; i < kRandomNegFidelityProtocols; ++i) {
    const int n = 1 + i % 3;
    const int s = 1 + (i / 3) % 3;
    tested.push_back(random_protocol(n, s, split_seed(77, static_cast<std::uint64_t>(i))));
  }
  int neg_rows = 0;
  int neg_fail = 0;
  double neg_margin = 1.0;
  for (const Protocol& p : tested) {
    for (double eps : {0.1, 0.25}) {
      BoundReport r = verify_neg_fidelity(p, eps);
      if (r.skipped) continue;
      r.tolerance = kFidelityTol;
      ++neg_rows;
      neg_margin = std::min(neg_margin, r.margin());
      if (!r.pass()) ++neg_fail;
    }
  }
  return {pos_fail == 0 && neg_fail == 0,
          fmt("lower bound: %d rows, %d failures, min margin %.3g; upper bound: %d rows over "
              "%zu protocols, %d failures, min margin %.3g (tol %.0e)",
              pos_rows, pos_fail, pos_margin, neg_rows, tested.size(), neg_fail, neg_margin,
              kFidelityTol)};
}

Outcome criterion_counting() {
  const CountingConfig cfg{6, 5, 8, 3};
  const auto rows = verify_counting(cfg);
  std::string failed;
  for (const auto& r : rows) {
    if (!r.pass()) failed += " " + r.theorem;
  }
  return {all_pass(rows),
          fmt("%zu identities (binary n<=%d, extended n<=%d, mixture n<=%d)%s%s", rows.size(),
              cfg.binary_n_max, cfg.extended_n_max, cfg.mixture_n_max,
              failed.empty() ? "" : ", failed:", failed.c_str())};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Outcome criterion_determinism() {
  const auto dir = std::filesystem::temp_directory_path() / "edplab_acceptance";
  std::filesystem::create_directories(dir);
  const std::string cli = EDPLAB_CLI_PATH;
  const std::vector<std::string> commands{
      "lemmas --seed 42 --instances 300",
      "lemmas --seed 42 --instances 300 --counting --format csv",
      "bounds --model measure_r --n 1..2 --ancillas 0..1 --restarts 8 --seed 3",
      "bounds --model depolarization --n 2 --p 0..1:0.5 --restarts 8 --seed 3 --format csv",
      "bounds --model fidelity --n 3 --s 1..2 --epsilon 0.25",
      "sweep --model fidelity --n 2..3 --s 1..2 --epsilon 0.1,0.25",
      "sweep --model measure_r --n 1..3",
      "protocol --spec " + std::string(EDPLAB_SOURCE_DIR) +
          "/configs/first_pair.json --model fidelity --n 2 --epsilon 0.2 --samples 5 --seed 9",
  };
  int identical = 0;
  std::string first_diff;
  for (std::size_t i = 0; i < commands.size(); ++i) {
    std::string outputs[2];
    for (int rep = 0; rep < 2; ++rep) {
      const auto file = dir / ("run" + std::to_string(i) + "_" + std::to_string(rep));
      // The second repetition runs single-threaded to cover scheduling order.
      const std::string cmd = cli + " " + commands[i] + " --out " + file.string() +
                              (rep == 1 ? " --threads 1" : "");
      const int status = std::system(cmd.c_str());
      if (status == -1 || WEXITSTATUS(status) >= 2) {
        outputs[rep] = "<error " + std::to_string(status) + ">";
      } else {
        outputs[rep] = slurp(file);
      }
    }
    if (outputs[0] == outputs[1] && !outputs[0].empty() && outputs[0][0] != '<') {
      ++identical;
    } else if (first_diff.empty()) {
      first_diff = commands[i];
    }
  }
  return {identical == static_cast<int>(commands.size()),
          fmt("%d/%zu CLI commands byte-identical across repeated runs%s%s", identical,
              commands.size(), first_diff.empty() ? "" : "; first mismatch: ",
              first_diff.c_str())};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "random pair over measure-r is exactly 1 - r/2n", criterion_random_pair},
      {2, "first pair over depolarization is 1 - 3p/4", criterion_first_pair},
      {3, "0-bit optimizer stays below the measure-r and depolarization bounds",
       criterion_optimizer},
      {4, "lemma property suites", criterion_lemmas},
      {5, "splitting dominance and q >= p^2/2^s", criterion_splitting},
      {6, "two-sided conditional-fidelity bounds on the witness",
       criterion_conditional_fidelity},
      {7, "counting identities and random-corrupt mixture", criterion_counting},
      {8, "deterministic CLI output", criterion_determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s criterion %d: %s | %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str(), seconds_since(t0));
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
