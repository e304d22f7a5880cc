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

#include "edplab/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <CLI11.hpp>

#include "edplab/json_io.hpp"
#include "edplab/verify.hpp"

namespace edplab::cli {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in(s);
  while (std::getline(in, part, sep)) parts.push_back(trim(part));
  return parts;
}

int to_int(const std::string& s) {
  std::size_t used = 0;
  const int v = std::stoi(s, &used);
  if (used != s.size()) throw std::invalid_argument("not an integer: " + s);
  return v;
}

double to_real(const std::string& s) {
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw std::invalid_argument("not a number: " + s);
  return v;
}

std::string canonical_model(const std::string& name) {
  if (name == "measure_r" || name == "measure-r") return "measure_r";
  if (name == "depolarization" || name == "depolar") return "depolarization";
  if (name == "fidelity") return "fidelity";
  throw ParameterError("unknown model \"" + name + "\"");
}

std::vector<int> ints_or(const std::string& text, std::vector<int> fallback) {
  return text.empty() ? fallback : parse_int_range(text);
}

std::vector<double> reals_or(const std::string& text, const std::string& fallback) {
  return parse_real_range(text.empty() ? fallback : text);
}

// A grid cell yields one or more report rows.
using Cell = std::function<std::vector<BoundReport>()>;

// Runs cells on a worker pool. Rows come back in grid order whatever the
// completion order; the first failing cell in grid order is rethrown.
std::vector<BoundReport> run_cells(const std::vector<Cell>& cells, int threads) {
  std::vector<std::vector<BoundReport>> results(cells.size());
  std::vector<std::exception_ptr> errors(cells.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      try {
        results[i] = cells[i]();
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::size_t count = threads > 0 ? static_cast<std::size_t>(threads)
                                  : std::max(1u, std::thread::hardware_concurrency());
  count = std::min(count, std::max<std::size_t>(cells.size(), 1));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < count; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  std::vector<BoundReport> rows;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    for (auto& r : results[i]) rows.push_back(std::move(r));
  }
  return rows;
}

BoundReport skipped_row(std::string theorem,
                        std::vector<std::pair<std::string, double>> params,
                        std::string note) {
  BoundReport r = make_report(std::move(theorem), std::move(params), 0.0, 0.0,
                              Direction::Lower, 0.0);
  r.skipped = true;
  r.note = std::move(note);
  return r;
}

std::vector<Cell> bounds_cells(const ExperimentConfig& c, const std::string& model) {
  std::vector<Cell> cells;
  const auto ns = ints_or(c.n, {2});
  const auto ancillas = ints_or(c.ancillas, {0});
  OptimizerConfig opt;
  opt.restarts = c.restarts;
  opt.seed = c.seed;
  if (model == "measure_r") {
    for (int n : ns) {
      std::vector<int> rs;
      if (c.r.empty()) {
        for (int r = 0; r <= n; ++r) rs.push_back(r);
      } else {
        rs = parse_int_range(c.r);
      }
      for (int r : rs) {
        for (int a : ancillas) {
          cells.push_back([=] { return std::vector{optimize_0bit_measure_r(n, r, a, opt)}; });
        }
      }
    }
  } else if (model == "depolarization") {
    const auto ps = reals_or(c.p, "0..1:0.1");
    for (int n : ns) {
      for (double p : ps) {
        for (int a : ancillas) {
          cells.push_back(
              [=] { return std::vector{optimize_0bit_depolarization(n, p, a, opt)}; });
        }
      }
    }
  } else {
    const auto ss = ints_or(c.s, {1, 2, 3});
    const auto eps = reals_or(c.epsilon, "0.1,0.25");
    for (int n : ns) {
      for (int s : ss) {
        for (double e : eps) {
          cells.push_back([=]() -> std::vector<BoundReport> {
            if (s >= n) {
              return {skipped_row("neg_fidelity", {{"n", n}, {"s", s}, {"epsilon", e}},
                                  "hash protocol needs s < n")};
            }
            const Protocol hash = make_simple_random_hash(n, s);
            std::vector<BoundReport> rows{verify_neg_fidelity(hash, e)};
            for (auto& row : verify_splitting(hash).to_reports()) rows.push_back(row);
            return rows;
          });
        }
      }
    }
  }
  return cells;
}

std::vector<Cell> sweep_cells(const ExperimentConfig& c, const std::string& model) {
  std::vector<Cell> cells;
  const auto ns = ints_or(c.n, {2});
  if (model == "measure_r") {
    for (int n : ns) {
      std::vector<int> rs;
      if (c.r.empty()) {
        for (int r = 0; r <= n; ++r) rs.push_back(r);
      } else {
        rs = parse_int_range(c.r);
      }
      for (int r : rs) {
        cells.push_back([=] {
          const double f =
              protocol_fidelity(make_random_pair(n), ErrorModel(MeasureR{n, r})).value;
          return std::vector{make_report("random_pair_value", {{"n", n}, {"r", r}},
                                         1.0 - r / (2.0 * n), f, Direction::Equal,
                                         1e-12)};
        });
      }
    }
  } else if (model == "depolarization") {
    const auto ps = reals_or(c.p, "0..1:0.1");
    for (int n : ns) {
      for (double p : ps) {
        cells.push_back([=] {
          const double f =
              protocol_fidelity(make_first_pair(n), ErrorModel(Depolarization{n, p})).value;
          BoundReport row = make_report("first_pair_value", {{"n", n}, {"p", p}},
                                        1.0 - 0.75 * p, f, Direction::Equal,
                                        kStructuralTol);
          row.note = "upper bound 1 - p/2 for 0-bit protocols";
          return std::vector{row};
        });
      }
    }
  } else {
    const auto ss = ints_or(c.s, {1, 2, 3});
    const auto eps = reals_or(c.epsilon, "0.1,0.25");
    for (int n : ns) {
      for (int s : ss) {
        for (double e : eps) {
          cells.push_back([=] { return std::vector{verify_pos_fidelity(n, s, e)}; });
        }
      }
    }
  }
  return cells;
}

// Writes to the --out file, or to `out` when no path is set.
int emit(const ExperimentConfig& c, const std::string& text, std::ostream& out,
         std::ostream& err) {
  if (c.out.empty()) {
    out << text;
    return kExitPass;
  }
  std::ofstream file(c.out, std::ios::binary | std::ios::trunc);
  if (!file) {
    err << "error: cannot write " << c.out << "\n";
    return kExitIo;
  }
  file << text;
  file.flush();
  if (!file) {
    err << "error: write to " << c.out << " failed\n";
    return kExitIo;
  }
  return kExitPass;
}

int emit_reports(const ExperimentConfig& c, std::vector<BoundReport> rows,
                 std::ostream& out, std::ostream& err) {
  if (c.tolerance) {
    for (auto& r : rows) r.tolerance = *c.tolerance;
  }
  const std::string text = c.format == Format::Csv
                               ? reports_to_csv(rows)
                               : reports_to_json(rows).dump(2) + "\n";
  const int io = emit(c, text, out, err);
  if (io != kExitPass) return io;
  return all_pass(rows) ? kExitPass : kExitFail;
}

ErrorModel model_from_flags(const ExperimentConfig& c, const std::string& model) {
  if (!c.model_file.empty()) return model_from_json(read_json_file(c.model_file));
  auto single = [](const std::string& text, const char* name) {
    if (text.empty()) throw ParameterError(std::string("--") + name + " is required");
    return text;
  };
  Json j{{"model", model}, {"n", to_int(single(c.n, "n"))}};
  if (model == "measure_r") j["r"] = to_int(single(c.r, "r"));
  if (model == "depolarization") j["p"] = to_real(single(c.p, "p"));
  if (model == "fidelity") j["epsilon"] = to_real(single(c.epsilon, "epsilon"));
  return model_from_json(j);
}

int protocol_command(const ExperimentConfig& c, const std::string& model_name,
                     std::ostream& out, std::ostream& err) {
  if (c.spec.empty()) throw ParameterError("--spec is required");
  const ErrorModel model = model_from_flags(c, model_name);
  Json spec = read_json_file(c.spec);
  if (spec.is_object() && spec.contains("builtin") && !spec.contains("n")) {
    spec["n"] = model.n();
  }
  const Protocol protocol = protocol_from_json(spec);
  if (protocol.n != model.n()) {
    throw ParameterError("protocol acts on " + std::to_string(protocol.n) +
                         " pairs but the model has " + std::to_string(model.n()));
  }
  const ModelEvaluation plain = protocol_fidelity(protocol, model, c.samples, c.seed);
  std::optional<ModelEvaluation> cond;
  try {
    cond = conditional_fidelity(protocol, model, c.samples, c.seed);
  } catch (const Error&) {
    cond.reset();  // never accepts on any model state
  }
  const double ideal = ideal_success_probability(protocol);

  std::string text;
  if (c.format == Format::Csv) {
    char buf[160];
    std::ostringstream row;
    row << "protocol,model,n,fidelity,conditional_fidelity,ideal_success_probability,"
           "states_evaluated\n";
    std::snprintf(buf, sizeof buf, "%.12g,", plain.value);
    row << protocol.name << ',' << model.kind() << ',' << model.n() << ',' << buf;
    if (cond) {
      std::snprintf(buf, sizeof buf, "%.12g", cond->value);
      row << buf;
    }
    std::snprintf(buf, sizeof buf, ",%.12g,", ideal);
    row << buf << plain.states_evaluated << '\n';
    text = row.str();
  } else {
    Json j{{"protocol", protocol.name},
           {"rounds", protocol.rounds()},
           {"model", model_to_json(model)},
           {"fidelity", plain.value},
           {"worst_state", plain.worst_state},
           {"conditional_fidelity", cond ? Json(cond->value) : Json(nullptr)},
           {"ideal_success_probability", ideal},
           {"states_evaluated", plain.states_evaluated},
           {"seed", c.seed}};
    text = j.dump(2) + "\n";
  }
  return emit(c, text, out, err);
}

}  // namespace

std::vector<int> parse_int_range(const std::string& text) {
  std::vector<int> out;
  for (const std::string& part : split(text, ',')) {
    if (part.empty()) throw std::invalid_argument("empty range element in \"" + text + "\"");
    const auto dots = part.find("..");
    if (dots == std::string::npos) {
      out.push_back(to_int(part));
      continue;
    }
    const int lo = to_int(trim(part.substr(0, dots)));
    const int hi = to_int(trim(part.substr(dots + 2)));
    if (hi < lo) throw std::invalid_argument("descending range \"" + part + "\"");
    for (int v = lo; v <= hi; ++v) out.push_back(v);
  }
  return out;
}

std::vector<double> parse_real_range(const std::string& text) {
  std::vector<double> out;
  for (const std::string& part : split(text, ',')) {
    if (part.empty()) throw std::invalid_argument("empty range element in \"" + text + "\"");
    const auto dots = part.find("..");
    if (dots == std::string::npos) {
      out.push_back(to_real(part));
      continue;
    }
    const auto colon = part.find(':', dots);
    if (colon == std::string::npos) {
      throw std::invalid_argument("real range needs a step: \"" + part + "\"");
    }
    const double lo = to_real(trim(part.substr(0, dots)));
    const double hi = to_real(trim(part.substr(dots + 2, colon - dots - 2)));
    const double step = to_real(trim(part.substr(colon + 1)));
    if (!(step > 0.0) || hi < lo) throw std::invalid_argument("bad range \"" + part + "\"");
    const auto count = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
    for (long i = 0; i <= count; ++i) {
      // Round to 12 digits so 0.1 * 3 prints as 0.3.
      const double v = lo + static_cast<double>(i) * step;
      out.push_back(std::round(v * 1e12) / 1e12);
    }
  }
  return out;
}

std::map<std::string, std::string> parse_config_text(const std::string& text) {
  std::map<std::string, std::string> out;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::runtime_error("config line " + std::to_string(number) +
                               ": expected key = value");
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
    }
    if (key.empty()) {
      throw std::runtime_error("config line " + std::to_string(number) + ": empty key");
    }
    out[key] = value;
  }
  return out;
}

int execute(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
  try {
    const std::string model = canonical_model(config.model);
    switch (config.command) {
      case Command::Lemmas: {
        LemmaSuiteConfig lc;
        lc.seed = config.seed;
        lc.instances = config.instances;
        if (config.tolerance) {
          lc.equality_tolerance = *config.tolerance;
          lc.inequality_tolerance = *config.tolerance;
        }
        auto rows = lemma_suite(lc);
        if (config.counting) {
          for (auto& r : verify_counting()) rows.push_back(std::move(r));
        }
        return emit_reports(config, std::move(rows), out, err);
      }
      case Command::Bounds:
        return emit_reports(config, run_cells(bounds_cells(config, model), config.threads),
                            out, err);
      case Command::Sweep:
        return emit_reports(config, run_cells(sweep_cells(config, model), config.threads),
                            out, err);
      case Command::Protocol:
        return protocol_command(config, model, out, err);
    }
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entanglement distillation protocol simulator and bound checker", "edplab"};
  app.require_subcommand(1, 1);

  ExperimentConfig c;
  std::string format = "json";
  std::string config_file;
  double tolerance = 0.0;

  // Options live on the top-level app so every subcommand and the config
  // file share one set of keys.
  std::map<std::string, CLI::Option*> options;
  auto add = [&](const std::string& key, auto& target, const std::string& help) {
    options[key] = app.add_option("--" + key, target, help);
  };
  add("model", c.model, "measure_r | depolarization | fidelity (aliases measure-r, depolar)");
  add("n", c.n, "number of pairs: 2, 1..3 or 1,3");
  add("r", c.r, "measure-r error count (range)");
  add("p", c.p, "depolarization probability: 0.4, 0.1,0.3 or 0..1:0.1");
  add("epsilon", c.epsilon, "fidelity model epsilon (list or range)");
  add("s", c.s, "hash rounds (range)");
  add("ancillas", c.ancillas, "ancilla qubits per party for the optimizer (range)");
  add("seed", c.seed, "64-bit master seed");
  add("restarts", c.restarts, "optimizer restarts");
  add("instances", c.instances, "random instances per lemma");
  add("tolerance", tolerance, "override the pass tolerance of every row");
  add("format", format, "json | csv");
  add("out", c.out, "output file (default stdout)");
  add("spec", c.spec, "protocol description JSON");
  add("model-file", c.model_file, "error model JSON (overrides --model and friends)");
  add("samples", c.samples, "extra random fidelity-model states");
  add("threads", c.threads, "worker threads (0: all cores)");
  options["counting"] = app.add_flag("--counting", c.counting,
                                     "also run the counting identities (lemmas)");
  app.add_option("--config", config_file, "flat key = value file; flags win");
  options["format"]->check(CLI::IsMember({"json", "csv"}));

  app.add_subcommand("lemmas", "run the seeded lemma property suites")->fallthrough();
  app.add_subcommand("bounds", "probe upper bounds with the unitary optimizer")
      ->fallthrough();
  app.add_subcommand("protocol", "evaluate a protocol file on an error model")
      ->fallthrough();
  app.add_subcommand("sweep", "evaluate protocols over a parameter grid")->fallthrough();

  try {
    app.parse(argc, argv);
    if (!config_file.empty()) {
      std::ifstream in(config_file, std::ios::binary);
      if (!in) {
        err << "error: cannot read " << config_file << "\n";
        return kExitIo;
      }
      std::stringstream buf;
      buf << in.rdbuf();
      for (const auto& [key, value] : parse_config_text(buf.str())) {
        const auto it = options.find(key);
        if (it == options.end()) throw CLI::ValidationError("config key \"" + key + "\"",
                                                            "unknown key");
        if (it->second->count() > 0) continue;  // the command line wins
        if (key == "counting") {
          c.counting = value == "true" || value == "1";
          continue;
        }
        it->second->clear();
        it->second->add_result(value);
        it->second->run_callback();
      }
    }
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitPass;
    }
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  const std::string sub = app.get_subcommands().front()->get_name();
  c.command = sub == "lemmas"     ? Command::Lemmas
              : sub == "bounds"   ? Command::Bounds
              : sub == "protocol" ? Command::Protocol
                                  : Command::Sweep;
  c.format = format == "csv" ? Format::Csv : Format::Json;
  if (options["tolerance"]->count() > 0 || tolerance != 0.0) c.tolerance = tolerance;
  return execute(c, out, err);
}

}  // namespace edplab::cli
