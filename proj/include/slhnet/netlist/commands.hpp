// Copyright 2026 The slhnet Authors
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

#pragma once

// In-process implementations of the CLI commands. Each takes the netlist
// source and options and returns the rendered output plus diagnostics, so
// the binary in tools/ only deals with argument parsing and file I/O.

#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "slhnet/dynamics.hpp"
#include "slhnet/netlist/compiler.hpp"
#include "slhnet/netlist/json_io.hpp"
#include "slhnet/parallel.hpp"

namespace slhnet::netlist {

/// Stable process exit codes.
enum ExitCode : int { kExitOk = 0, kExitDiagnostics = 1, kExitNumerical = 2 };

struct CommandOptions {
  std::optional<double> dt;
  std::optional<double> T;
  std::optional<double> tol;
  std::vector<std::string> observables;
  std::optional<std::string> op;
  std::optional<std::uint64_t> channel;  // 1-based
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> runs;
  std::string format;                     // empty: command default
  std::string measure = "physical";       // filter record law: physical | reference
  std::optional<std::string> record_text;  // filter: replay this record (CSV)
  bool want_record = false;                // filter: also emit the generated record
  std::size_t workers = worker_count();
};

struct CommandResult {
  int exit_code = kExitOk;
  std::string output;
  std::optional<std::string> record;  // filter record CSV when requested
  std::vector<Diagnostic> diagnostics;
};

namespace command_detail {

struct Abort {
  int code;
  std::string message;
};

/// Shortest text that reads back to the same double.
inline std::string format_number(double v) {
  std::array<char, 32> buf{};
  const auto r = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), r.ptr);
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += (c == '"') ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

inline const CompiledNetlist& compiled(const std::string& source, CommandResult& res,
                                       std::optional<CompiledNetlist>& holder) {
  CompileResult c = compile_source(source);
  res.diagnostics = std::move(c.diagnostics);
  if (!c.netlist || has_errors(res.diagnostics)) throw Abort{kExitDiagnostics, ""};
  holder = std::move(c.netlist);
  return *holder;
}

inline Operator expression(const CompiledNetlist& net, const std::string& text, const char* what) {
  ExpressionResult parsed = parse_expression(text, net.document);
  if (!parsed.ok()) {
    std::string msg = std::string("invalid ") + what + " '" + text + "'";
    for (const auto& d : parsed.diagnostics) {
      if (d.severity == Severity::error) {
        msg += ": column " + std::to_string(d.column) + ": " + d.message;
        break;
      }
    }
    throw Abort{kExitDiagnostics, msg};
  }
  try {
    return Evaluator(net).eval(*parsed.expr);
  } catch (const Evaluator::Failure& f) {
    throw Abort{kExitDiagnostics, std::string("invalid ") + what + " '" + text + "': " + f.message};
  }
}

template <typename T>
T require(const std::optional<T>& cli, const std::optional<T>& file, const char* name) {
  if (cli) return *cli;
  if (file) return *file;
  throw Abort{kExitDiagnostics, std::string("missing run parameter '") + name + "' (use --" + name +
                                    " or a run {} block)"};
}

template <typename T>
T pick(const std::optional<T>& cli, const std::optional<T>& file, T fallback) {
  return cli ? *cli : file ? *file : fallback;
}

inline std::string format_or(const CommandOptions& o, const char* fallback, std::initializer_list<const char*> allowed) {
  const std::string f = o.format.empty() ? fallback : o.format;
  for (const char* a : allowed) {
    if (f == a) return f;
  }
  throw Abort{kExitDiagnostics, "unsupported --format '" + f + "' for this command"};
}

inline const Operator& require_state(const CompiledNetlist& net) {
  if (!net.state) throw Abort{kExitDiagnostics, "this command needs a state declaration"};
  return *net.state;
}

inline std::vector<Observable> observables(const CompiledNetlist& net, const CommandOptions& o) {
  std::vector<Observable> out;
  for (const auto& text : o.observables) out.push_back({text, expression(net, text, "observable")});
  if (out.empty()) {
    for (const auto& name : net.space_order) {
      const auto& s = net.spaces.at(name);
      if (s.factor.kind == SpaceKind::fock) out.push_back({"n(" + name + ")", number(s.factor)});
    }
  }
  return out;
}

inline void check_time_grid(double dt, double t_final) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw Abort{kExitDiagnostics, "dt must be positive"};
  if (!(t_final >= dt) || !std::isfinite(t_final)) throw Abort{kExitDiagnostics, "T must be at least dt"};
  if (t_final / dt > 1e8) throw Abort{kExitDiagnostics, "T/dt exceeds 1e8 steps"};
}

inline MeasurementRecord parse_record(const std::string& text, double dt) {
  MeasurementRecord rec{dt, {}};
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (lineno == 1 && line.find_first_of("abcdefghijklmnopqrstuvwxyz") != std::string::npos) continue;  // header
    const auto comma = line.find(',');
    const std::string field = comma == std::string::npos ? line : line.substr(comma + 1);
    try {
      std::size_t used = 0;
      const double v = std::stod(field, &used);
      if (!std::isfinite(v)) throw std::invalid_argument("non-finite");
      rec.increments.push_back(v);
    } catch (const std::exception&) {
      throw Abort{kExitDiagnostics, "record line " + std::to_string(lineno) + ": cannot read increment '" + field + "'"};
    }
  }
  if (rec.increments.empty()) throw Abort{kExitDiagnostics, "record contains no increments"};
  return rec;
}

inline std::string record_csv(const MeasurementRecord& rec) {
  std::ostringstream os;
  os << "t,dy\n";
  for (std::size_t k = 0; k < rec.increments.size(); ++k) {
    os << format_number(static_cast<double>(k) * rec.dt) << ',' << format_number(rec.increments[k]) << '\n';
  }
  return os.str();
}

// ---- commands ------------------------------------------------------------

inline void reduce_cmd(const CompiledNetlist& net, const CommandOptions& o, CommandResult& res) {
  format_or(o, "json", {"json"});
  const ReducedNetwork red = reduce(net.network);
  res.output = triple_to_json(red.triple, &red.chain_report).dump() + "\n";
}

inline void heisenberg_cmd(const CompiledNetlist& net, const CommandOptions& o, CommandResult& res) {
  format_or(o, "json", {"json"});
  std::string text;
  if (o.op) {
    text = *o.op;
  } else if (o.observables.size() == 1) {
    text = o.observables.front();
  } else {
    throw Abort{kExitDiagnostics, "heisenberg needs an operator (--op EXPR)"};
  }
  const Operator x = expression(net, text, "operator");
  const SlhTriple g = reduce(net.network).triple;
  const HeisenbergCoefficients c = heisenberg_coefficients(g, x);
  Json da_dag = Json::array();
  Json da = Json::array();
  for (std::size_t j = 0; j < g.channels(); ++j) {
    da_dag.push_back(matrix_to_json(c.dA_dagger_coeff.at(j, 0).matrix()));
    da.push_back(matrix_to_json(c.dA_coeff.at(0, j).matrix()));
  }
  const Json out = {{"format", "slhnet.heisenberg.v1"},
                    {"operator", text},
                    {"channels", g.channels()},
                    {"signature", signature_to_json(c.drift.signature())},
                    {"drift", matrix_to_json(c.drift.matrix())},
                    {"dA_dagger_coeff", da_dag},
                    {"dA_coeff", da},
                    {"gauge_coeff", operator_matrix_to_json(c.gauge_coeff)}};
  res.output = out.dump() + "\n";
}

inline void simulate_cmd(const CompiledNetlist& net, const CommandOptions& o, CommandResult& res) {
  const std::string fmt = format_or(o, "csv", {"csv", "json"});
  const double dt = require(o.dt, net.run.dt, "dt");
  const double t_final = require(o.T, net.run.T, "T");
  check_time_grid(dt, t_final);
  const auto obs = observables(net, o);
  const Trajectory traj = evolve_master(reduce(net.network).triple, require_state(net), dt, t_final, obs);
  std::ostringstream os;
  if (fmt == "csv") {
    os << 't';
    for (const auto& name : traj.names) os << ',' << csv_field(name + ".re") << ',' << csv_field(name + ".im");
    os << '\n';
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
      os << format_number(traj.times[k]);
      for (const auto& e : traj.expectations) os << ',' << format_number(e[k].real()) << ',' << format_number(e[k].imag());
      os << '\n';
    }
  } else {
    Json series = Json::object();
    for (std::size_t j = 0; j < traj.names.size(); ++j) {
      Json re = Json::array();
      Json im = Json::array();
      for (const auto& z : traj.expectations[j]) {
        re.push_back(z.real());
        im.push_back(z.imag());
      }
      series[traj.names[j]] = {{"re", re}, {"im", im}};
    }
    os << Json{{"format", "slhnet.trajectory.v1"}, {"t", traj.times}, {"trace", traj.norms}, {"observables", series}}
              .dump()
       << '\n';
  }
  res.output = os.str();
}

struct FilterRun {
  MeasurementRecord record;
  Trajectory trajectory;
};

inline void filter_cmd(const CompiledNetlist& net, const CommandOptions& o, CommandResult& res) {
  const std::string fmt = format_or(o, "csv", {"csv", "json"});
  const double dt = require(o.dt, net.run.dt, "dt");
  const std::uint64_t channel1 = pick<std::uint64_t>(o.channel, net.run.channel, 1);
  const std::uint64_t seed = pick<std::uint64_t>(o.seed, net.run.seed, 0);
  const std::uint64_t runs = pick<std::uint64_t>(o.runs, net.run.runs, 1);
  if (runs < 1) throw Abort{kExitDiagnostics, "--runs must be at least 1"};
  if (o.measure != "physical" && o.measure != "reference") {
    throw Abort{kExitDiagnostics, "--measure must be 'physical' or 'reference'"};
  }
  const RecordMeasure measure = o.measure == "physical" ? RecordMeasure::physical : RecordMeasure::reference;
  const SlhTriple g = reduce(net.network).triple;
  if (channel1 < 1 || channel1 > g.channels()) {
    throw Abort{kExitDiagnostics, "--channel " + std::to_string(channel1) + " out of range; the reduced network has " +
                                      std::to_string(g.channels()) + " channel(s)"};
  }
  const std::size_t channel = channel1 - 1;
  const Operator& rho0 = require_state(net);
  const auto obs = observables(net, o);

  std::vector<FilterRun> results;
  if (o.record_text) {
    if (runs != 1) throw Abort{kExitDiagnostics, "a replayed record allows only --runs 1"};
    MeasurementRecord rec = parse_record(*o.record_text, dt);
    Trajectory traj = evolve_zakai(g, channel, rho0, rec, obs);
    results.push_back({std::move(rec), std::move(traj)});
  } else {
    const double t_final = require(o.T, net.run.T, "T");
    check_time_grid(dt, t_final);
    results = parallel_map(
        runs,
        [&](std::size_t task) {
          MeasurementRecord rec = simulate_record(g, rho0, channel, dt, t_final, seed, measure, task);
          Trajectory traj = evolve_zakai(g, channel, rho0, rec, obs);
          return FilterRun{std::move(rec), std::move(traj)};
        },
        o.workers);
  }
  if (o.want_record) {
    if (results.size() != 1) throw Abort{kExitDiagnostics, "--record-out needs --runs 1"};
    res.record = record_csv(results.front().record);
  }

  const Trajectory& first = results.front().trajectory;
  const std::size_t steps = first.times.size();
  std::ostringstream os;
  if (results.size() == 1) {
    const auto& dy = results.front().record.increments;
    if (fmt == "csv") {
      os << "t,dy,sigma1";
      for (const auto& name : first.names) os << ',' << csv_field(name + ".re") << ',' << csv_field(name + ".im");
      os << '\n';
      for (std::size_t k = 0; k < steps; ++k) {
        os << format_number(first.times[k]) << ',' << (k == 0 ? std::string("0") : format_number(dy[k - 1])) << ','
           << format_number(first.norms[k]);
        for (const auto& e : first.expectations) os << ',' << format_number(e[k].real()) << ',' << format_number(e[k].imag());
        os << '\n';
      }
    } else {
      Json series = Json::object();
      for (std::size_t j = 0; j < first.names.size(); ++j) {
        Json re = Json::array();
        Json im = Json::array();
        for (const auto& z : first.expectations[j]) {
          re.push_back(z.real());
          im.push_back(z.imag());
        }
        series[first.names[j]] = {{"re", re}, {"im", im}};
      }
      os << Json{{"format", "slhnet.filter.v1"}, {"t", first.times}, {"dy", dy}, {"sigma1", first.norms},
                 {"estimates", series}}
                .dump()
         << '\n';
    }
    res.output = os.str();
    return;
  }

  // Ensemble summary over runs.
  const double count = static_cast<double>(results.size());
  std::vector<double> mean(steps, 0.0);
  std::vector<double> stderr_(steps, 0.0);
  std::vector<std::vector<Complex>> obs_mean(first.names.size(), std::vector<Complex>(steps));
  for (std::size_t k = 0; k < steps; ++k) {
    double s = 0.0;
    double s2 = 0.0;
    for (const auto& r : results) {
      s += r.trajectory.norms[k];
      s2 += r.trajectory.norms[k] * r.trajectory.norms[k];
      for (std::size_t j = 0; j < obs_mean.size(); ++j) obs_mean[j][k] += r.trajectory.expectations[j][k] / count;
    }
    mean[k] = s / count;
    const double var = std::max(0.0, (s2 - count * mean[k] * mean[k]) / (count - 1.0));
    stderr_[k] = std::sqrt(var / count);
  }
  if (fmt == "csv") {
    os << "t,sigma1.mean,sigma1.stderr";
    for (const auto& name : first.names) {
      os << ',' << csv_field(name + ".mean.re") << ',' << csv_field(name + ".mean.im");
    }
    os << '\n';
    for (std::size_t k = 0; k < steps; ++k) {
      os << format_number(first.times[k]) << ',' << format_number(mean[k]) << ',' << format_number(stderr_[k]);
      for (const auto& e : obs_mean) os << ',' << format_number(e[k].real()) << ',' << format_number(e[k].imag());
      os << '\n';
    }
  } else {
    Json series = Json::object();
    for (std::size_t j = 0; j < first.names.size(); ++j) {
      Json re = Json::array();
      Json im = Json::array();
      for (const auto& z : obs_mean[j]) {
        re.push_back(z.real());
        im.push_back(z.imag());
      }
      series[first.names[j]] = {{"re", re}, {"im", im}};
    }
    os << Json{{"format", "slhnet.filter-ensemble.v1"}, {"runs", results.size()}, {"t", first.times},
               {"sigma1_mean", mean}, {"sigma1_stderr", stderr_}, {"estimate_means", series}}
              .dump()
       << '\n';
  }
  res.output = os.str();
}

struct CheckItem {
  enum class Status { ok, warn, fail };
  std::string subject;
  std::string property;
  std::optional<double> value;  // empty for structural checks
  Status status;

  std::string describe() const {
    return subject + ": " + property + (value ? " = " + format_number(*value) : std::string());
  }
};

inline std::string_view status_text(CheckItem::Status s) {
  switch (s) {
    case CheckItem::Status::ok:
      return "ok";
    case CheckItem::Status::warn:
      return "warn";
    case CheckItem::Status::fail:
      return "fail";
  }
  return "fail";
}

inline void check_cmd(const CompiledNetlist& net, const CommandOptions& o, CommandResult& res) {
  using Status = CheckItem::Status;
  const std::string fmt = format_or(o, "text", {"text", "json"});
  const double tol = pick<double>(o.tol, net.run.tol, kDefaultTol);
  std::vector<CheckItem> items;
  auto bound = [&](double v, bool soft) { return v <= tol ? Status::ok : soft ? Status::warn : Status::fail; };
  // Grid embeddings carry a Hamiltonian that is Hermitian only away from the
  // boundary rows; that deviation is reported as a warning.
  auto triple_items = [&](const std::string& who, const SlhTriple& g, bool grid) {
    const InvariantReport r = g.check();
    items.push_back({who, "S unitarity error", r.unitarity_error, bound(r.unitarity_error, false)});
    items.push_back({who, grid ? "H self-adjointness error (grid boundary rows)" : "H self-adjointness error",
                     r.hermiticity_error, bound(r.hermiticity_error, grid)});
  };
  bool any_grid = false;
  for (std::size_t k = 0; k < net.components.size(); ++k) {
    const auto& decl = net.document.components.at(k);
    const bool grid = decl.builtin && *decl.builtin == "classical_sde";
    any_grid = any_grid || grid;
    triple_items(net.components[k].name, net.components[k].triple, grid);
  }
  try {
    const ReducedNetwork red = reduce(net.network);
    items.push_back({"network",
                     "reducible (" + std::to_string(red.chain_report.chains.size()) + " chain(s), " +
                         std::to_string(red.chain_report.unconnected.size()) + " unconnected)",
                     std::nullopt, Status::ok});
    triple_items("reduced network", red.triple, any_grid);
  } catch (const Error& e) {
    items.push_back({"network", std::string("not reducible: ") + e.what(), std::nullopt, Status::fail});
  }
  if (net.state) {
    const DensityReport d = check_density(*net.state);
    items.push_back({"state", "trace error", d.trace_error, bound(d.trace_error, false)});
    items.push_back({"state", "hermiticity error", d.hermiticity_error, bound(d.hermiticity_error, false)});
    items.push_back({"state", "minimum eigenvalue", d.min_eigenvalue,
                     d.min_eigenvalue >= -tol ? Status::ok : Status::fail});
  }
  bool all_ok = true;
  for (const auto& it : items) all_ok = all_ok && it.status != Status::fail;

  std::ostringstream os;
  if (fmt == "json") {
    Json arr = Json::array();
    for (const auto& it : items) {
      Json item = {{"subject", it.subject}, {"property", it.property}};
      item["value"] = it.value ? Json(*it.value) : Json(nullptr);
      item["status"] = std::string(status_text(it.status));
      arr.push_back(std::move(item));
    }
    os << Json{{"format", "slhnet.check.v1"}, {"tolerance", tol}, {"ok", all_ok}, {"items", arr}}.dump() << '\n';
  } else {
    for (const auto& it : items) {
      std::string tag(status_text(it.status));
      tag.resize(6, ' ');
      os << tag << it.describe() << '\n';
    }
    os << (all_ok ? "check passed" : "check failed") << " (tolerance " << format_number(tol) << ")\n";
  }
  res.output = os.str();
  for (const auto& it : items) {
    if (it.status == Status::ok) continue;
    res.diagnostics.push_back(
        Diagnostic::general(it.status == Status::fail ? Severity::error : Severity::warning,
                            it.describe() + (it.value ? " exceeds tolerance " + format_number(tol) : std::string())));
  }
  if (!all_ok) res.exit_code = kExitDiagnostics;
}

}  // namespace command_detail

inline const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"reduce", "heisenberg", "simulate", "filter", "check"};
  return names;
}

/// Runs one command on netlist source text.
inline CommandResult run_command(const std::string& command, const std::string& source,
                                 const CommandOptions& options = {}) {
  using namespace command_detail;
  CommandResult res;
  std::optional<CompiledNetlist> holder;
  try {
    const CompiledNetlist& net = compiled(source, res, holder);
    if (command == "reduce") {
      reduce_cmd(net, options, res);
    } else if (command == "heisenberg") {
      heisenberg_cmd(net, options, res);
    } else if (command == "simulate") {
      simulate_cmd(net, options, res);
    } else if (command == "filter") {
      filter_cmd(net, options, res);
    } else if (command == "check") {
      check_cmd(net, options, res);
    } else {
      throw Abort{kExitDiagnostics, "unknown command '" + command + "'"};
    }
  } catch (const Abort& a) {
    res.exit_code = a.code;
    if (!a.message.empty()) res.diagnostics.push_back(Diagnostic::general(Severity::error, a.message));
  } catch (const NumericalError& e) {
    res.exit_code = kExitNumerical;
    res.diagnostics.push_back(Diagnostic::general(Severity::error, e.what()));
  } catch (const Error& e) {
    res.exit_code = kExitDiagnostics;
    res.diagnostics.push_back(Diagnostic::general(Severity::error, e.what()));
  }
  if (res.exit_code != kExitOk && command != "check") res.output.clear();
  return res;
}

}  // namespace slhnet::netlist
