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


// slhnet: reduce, analyse and simulate netlists of open quantum systems.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "slhnet/netlist/commands.hpp"

namespace {

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

bool write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  return static_cast<bool>(out);
}

template <typename T>
void set_optional(CLI::App& app, std::optional<T>& target, const std::string& name, const std::string& help) {
  app.add_option_function<T>(name, [&target](const T& v) { target = v; }, help);
}

}  // namespace

int main(int argc, char** argv) {
  using namespace slhnet::netlist;

  CLI::App app{"slhnet: reduce and simulate networks of open quantum systems"};
  app.set_version_flag("--version", "slhnet 0.1.0");

  std::string command;
  std::string file;
  CommandOptions opts;
  std::string out_path;
  std::string record_in;
  std::string record_out;

  app.add_option("command", command, "reduce | heisenberg | simulate | filter | check")
      ->required()
      ->check(CLI::IsMember(command_names()));
  app.add_option("file", file, "netlist file ('-' reads standard input)")->required();
  set_optional(app, opts.dt, "--dt", "time step");
  set_optional(app, opts.T, "--T", "final time");
  app.add_option("--obs", opts.observables, "observable expression (repeatable)")->allow_extra_args(false);
  set_optional(app, opts.op, "--op", "operator expression for heisenberg");
  set_optional(app, opts.channel, "--channel", "measured output channel for filter (1-based)");
  set_optional(app, opts.seed, "--seed", "random seed for filter records");
  set_optional(app, opts.runs, "--runs", "number of filter records");
  set_optional(app, opts.tol, "--tol", "tolerance for check");
  app.add_option("--out", out_path, "write the result here instead of standard output");
  app.add_option("--format", opts.format, "json | csv (text | json for check)");
  app.add_option("--measure", opts.measure, "filter record law: physical | reference")
      ->check(CLI::IsMember({"physical", "reference"}));
  app.add_option("--record", record_in, "filter: replay a recorded increment CSV");
  app.add_option("--record-out", record_out, "filter: save the generated increments as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitDiagnostics;
  }

  std::string source;
  if (file == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    source = ss.str();
  } else if (!read_file(file, source)) {
    std::cerr << file << ": error: cannot read file\n";
    return kExitDiagnostics;
  }
  if (!record_in.empty()) {
    std::string text;
    if (!read_file(record_in, text)) {
      std::cerr << record_in << ": error: cannot read record\n";
      return kExitDiagnostics;
    }
    opts.record_text = std::move(text);
  }
  opts.want_record = !record_out.empty();

  const CommandResult res = run_command(command, source, opts);
  for (const auto& d : res.diagnostics) std::cerr << d.format(file) << '\n';

  if (!res.output.empty()) {
    if (out_path.empty()) {
      std::cout << res.output;
    } else if (!write_file(out_path, res.output)) {
      std::cerr << out_path << ": error: cannot write output\n";
      return kExitDiagnostics;
    }
  }
  if (res.record && !write_file(record_out, *res.record)) {
    std::cerr << record_out << ": error: cannot write record\n";
    return kExitDiagnostics;
  }
  return res.exit_code;
}
