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


#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "slhnet/netlist/commands.hpp"
#include "support/assertions.hpp"
#include "support/netlist_inputs.hpp"
#include "support/random_slh.hpp"

namespace slhnet::netlist {
namespace {

using slhnet::testing::make_rng;
using slhnet::testing::pick;
using slhnet::testing::triples_near;

const char* const kSeriesExample = slhnet::testing::kSeriesExampleNetlist;

SlhTriple expected_series_example(const SpaceFactor& c) {
  Matrix s(2, 2);
  s << 0.8, -0.6, 0.6, 0.8;
  const Operator a = annihilation(c);
  return SlhTriple(OperatorMatrix::scalars(s, {c}),
                   OperatorMatrix::column({std::sqrt(2.0) * a, Operator::zero({c})}), 0.5 * number(c));
}

bool mentions_line(const std::vector<Diagnostic>& diags, int line) {
  for (const auto& d : diags) {
    if (d.line == line && d.severity == Severity::error) return true;
  }
  return false;
}

TEST(Parser, SeriesExampleStructure) {
  const ParseResult r = parse_netlist(kSeriesExample);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r.document.components.size(), 3u);
  EXPECT_EQ(r.document.connection_count(), 1u);
  EXPECT_EQ(r.document.spaces.size(), 1u);
  EXPECT_EQ(r.document.params.size(), 4u);
  EXPECT_EQ(r.document.states.size(), 1u);
}

TEST(Parser, EmptyInput) {
  for (const char* text : {"", "\n\n", "# only a comment\n", "   \t"}) {
    const ParseResult r = parse_netlist(text);
    EXPECT_TRUE(r.diagnostics.empty()) << "input: '" << text << "'";
    EXPECT_TRUE(r.document.components.empty());
  }
}

TEST(Parser, UndeclaredConnectionEndpoint) {
  const ParseResult r = parse_netlist("space c fock 3\ncomponent C = cavity(c, 1, 0)\n\nconnect X -> C\n");
  EXPECT_FALSE(r.ok());
  EXPECT_TRUE(mentions_line(r.diagnostics, 4));
  bool named = false;
  for (const auto& d : r.diagnostics) named = named || d.message.find("'X'") != std::string::npos;
  EXPECT_TRUE(named);
}

TEST(Parser, DiagnosticsCarryPositions) {
  const ParseResult r = parse_netlist("space c fock 4\ncomponent C = cavity(c, 1, 0\ncomponent D = warp(c)\nstate $\n");
  EXPECT_FALSE(r.ok());
  EXPECT_TRUE(mentions_line(r.diagnostics, 3));
  EXPECT_TRUE(mentions_line(r.diagnostics, 4));
  for (const auto& d : r.diagnostics) {
    EXPECT_GE(d.line, 1);
    EXPECT_GE(d.column, 1);
  }
  EXPECT_NE(r.diagnostics.front().format("net.slh").find("net.slh:"), std::string::npos);
}

TEST(Parser, LiteralComponentAndExpressions) {
  const char* text = R"(space q dim 2
space c fock 3
component G {
  S = [[1, 0], [0, exp(2i)]]
  L = [sqrt(2) * a(c), 0.5 * adag(c)']
  H = n(c) + (1 - 2i) * a(c) + (1 + 2i) * adag(c)
}
)";
  const CompileResult r = compile_source(text);
  ASSERT_TRUE(r.ok()) << (r.diagnostics.empty() ? "" : r.diagnostics.front().format());
  const SlhTriple& g = r.netlist->components.at(0).triple;
  EXPECT_EQ(g.channels(), 2u);
  EXPECT_TRUE(g.check().ok());
  const SpaceFactor c = r.netlist->spaces.at("c").factor;
  EXPECT_LE(distance(g.L(1), 0.5 * annihilation(c)), 1e-15);
  EXPECT_LE(std::abs(g.S().at(1, 1).matrix()(0, 0) - std::exp(2.0 * kI)), 1e-15);
}

TEST(Compiler, SeriesExampleReduces) {
  const CompileResult r = compile_source(kSeriesExample);
  ASSERT_TRUE(r.ok());
  const SpaceFactor c = r.netlist->spaces.at("c").factor;
  EXPECT_TRUE(triples_near(reduce(r.netlist->network).triple, expected_series_example(c), 1e-12));
  EXPECT_TRUE(check_density(*r.netlist->state).ok());
}

TEST(Compiler, GroupMemberRules) {
  const char* base = "space c fock 3\ncomponent M = beamsplitter(0.6, 0.8)\ncomponent C = cavity(c, 1, 0)\n"
                     "component N = passthrough(1)\n";
  EXPECT_FALSE(compile_source(std::string(base) + "connect M -> C\n").ok());
  EXPECT_FALSE(compile_source(std::string(base) + "connect M -> (C, N)\nconnect (C, N) -> M\n").ok());
  EXPECT_TRUE(compile_source(std::string(base) + "connect M -> (C, N)\n").ok());
}

TEST(Compiler, SemanticErrors) {
  EXPECT_FALSE(compile_source("component M = beamsplitter(0.6, 0.8i)\n").ok());
  EXPECT_FALSE(compile_source("space c fock 3\ncomponent C = cavity(c, -1, 0)\n").ok());
  EXPECT_FALSE(compile_source("space c fock 3\ncomponent A = cavity(c, 1, 0)\nconnect A -> A\n").ok());
  EXPECT_FALSE(compile_source("space q dim 2\ncomponent G { S=[[1]] L=[a(q)] H=0 }\n").ok());
}

TEST(Compiler, TotalDimensionCap) {
  EXPECT_TRUE(compile_source("space a fock 40\nspace b fock 40\n").ok());
  const CompileResult big = compile_source("space a fock 100\nspace b fock 100\n");
  ASSERT_FALSE(big.ok());
  EXPECT_EQ(big.diagnostics.front().line, 2);
}

TEST(Compiler, GridPositionObservable) {
  const CompileResult res = compile_source("space line grid -1 1 5\ncomponent G { S=[[1]] L=[0] H=pos(line) }\n");
  ASSERT_TRUE(res.ok());
  const Matrix h = reduce(res.netlist->network).triple.H().matrix();
  EXPECT_NEAR(h(0, 0).real(), -1.0, 1e-15);
  EXPECT_NEAR(h(2, 2).real(), 0.0, 1e-15);
  EXPECT_NEAR(h(4, 4).real(), 1.0, 1e-15);
  EXPECT_EQ(max_abs(h - Matrix(h.diagonal().asDiagonal())), 0.0);
  EXPECT_FALSE(compile_source("space c fock 3\ncomponent G { S=[[1]] L=[0] H=pos(c) }\n").ok());
}

TEST(JsonIo, ReduceRoundTripIsBitExact) {
  const CommandResult res = run_command("reduce", kSeriesExample, {});
  ASSERT_EQ(res.exit_code, kExitOk);
  const Json j = Json::parse(res.output);
  EXPECT_EQ(j.at("format"), kReducedFormat);
  EXPECT_EQ(j.at("channels"), 2);
  SpaceRegistry reg;
  const SlhTriple back = triple_from_json(j, reg);
  Json stripped = j;
  stripped.erase("chain_report");
  EXPECT_EQ(triple_to_json(back).dump(), stripped.dump());

  const CompileResult compiled = compile_source(kSeriesExample);
  const SlhTriple original = reduce(compiled.netlist->network).triple;
  EXPECT_TRUE((original.S().blocks().array() == back.S().blocks().array()).all());
  EXPECT_TRUE((original.L().blocks().array() == back.L().blocks().array()).all());
  EXPECT_TRUE((original.H().matrix().array() == back.H().matrix().array()).all());
  EXPECT_TRUE(triples_near(back, expected_series_example(*reg.find("c")), 1e-12));
}

TEST(JsonIo, RandomTriplesSurviveTextRoundTrip) {
  slhnet::testing::SpacePool pool;
  auto rng = make_rng(501);
  for (int trial = 0; trial < 50; ++trial) {
    const SlhTriple g = slhnet::testing::random_triple(rng, pool.random_signature(rng), pick(rng, 1, 3));
    const std::string text = triple_to_json(g).dump();
    SpaceRegistry reg;
    const SlhTriple back = triple_from_json(Json::parse(text), reg);
    ASSERT_EQ(back.channels(), g.channels());
    EXPECT_TRUE((back.H().matrix().array() == g.H().matrix().array()).all());
    EXPECT_EQ(triple_to_json(back).dump(), text);
  }
}

TEST(JsonIo, MalformedInputIsRejected) {
  SpaceRegistry reg;
  EXPECT_THROW(triple_from_json(Json::parse("{}"), reg), InvalidArgument);
  EXPECT_THROW(triple_from_json(Json::parse(R"({"channels":1,"signature":[],"S":[[[[1]]]],"L":[[[[0,0]]]],"H":[[[0,0]]]})"), reg),
               InvalidArgument);
}

TEST(Commands, HeisenbergCavityDrift) {
  CommandOptions o;
  o.op = "a(c)";
  const CommandResult res =
      run_command("heisenberg", "space c fock 6\ncomponent C = cavity(c, 1.5, 0.25)\n", o);
  ASSERT_EQ(res.exit_code, kExitOk);
  const Json j = Json::parse(res.output);
  const Json& drift = j.at("drift");
  for (std::size_t k = 0; k + 1 < 6; ++k) {
    const double amp = std::sqrt(static_cast<double>(k + 1));
    EXPECT_NEAR(drift[k][k + 1][0].get<double>(), -0.75 * amp, 1e-12);
    EXPECT_NEAR(drift[k][k + 1][1].get<double>(), -0.25 * amp, 1e-12);
  }
}

TEST(Commands, CheckReportsNonUnitaryScattering) {
  const CommandResult res = run_command("check", "component G { S=[[2]] L=[0] H=0 }\n", {});
  EXPECT_EQ(res.exit_code, kExitDiagnostics);
  EXPECT_NE(res.output.find("fail"), std::string::npos);
  EXPECT_TRUE(has_errors(res.diagnostics));
}

TEST(Commands, ExitCodes) {
  EXPECT_EQ(run_command("reduce", "connect A -> B\n", {}).exit_code, kExitDiagnostics);
  CommandOptions coarse;
  coarse.dt = 0.5;
  coarse.T = 5.0;
  const CommandResult diverged =
      run_command("simulate", "space c fock 6\ncomponent C = cavity(c, 80, 0)\nstate coherent(c, 1, 0)\n", coarse);
  EXPECT_EQ(diverged.exit_code, kExitNumerical);
  EXPECT_TRUE(diverged.output.empty());
  EXPECT_EQ(run_command("simulate", "space c fock 3\ncomponent C = cavity(c, 1, 0)\n", {}).exit_code,
            kExitDiagnostics);
}

TEST(Commands, SimulateCsvLayout) {
  CommandOptions o;
  o.dt = 0.01;
  o.T = 0.05;
  o.observables = {"n(c)", "a(c)"};
  const CommandResult res = run_command("simulate", kSeriesExample, o);
  ASSERT_EQ(res.exit_code, kExitOk);
  std::istringstream in(res.output);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "t,n(c).re,n(c).im,a(c).re,a(c).im");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 6);
}

TEST(Commands, FilterIsDeterministicAcrossWorkerCounts) {
  CommandOptions o;
  o.dt = 0.01;
  o.T = 0.2;
  o.runs = 6;
  o.seed = 77;
  o.workers = 1;
  const std::string serial = run_command("filter", kSeriesExample, o).output;
  o.workers = 3;
  const CommandResult parallel = run_command("filter", kSeriesExample, o);
  ASSERT_EQ(parallel.exit_code, kExitOk);
  EXPECT_EQ(serial, parallel.output);
}

TEST(Commands, FilterReplaysItsOwnRecord) {
  CommandOptions o;
  o.dt = 0.01;
  o.T = 0.2;
  o.seed = 5;
  o.want_record = true;
  const CommandResult first = run_command("filter", kSeriesExample, o);
  ASSERT_EQ(first.exit_code, kExitOk);
  ASSERT_TRUE(first.record.has_value());
  CommandOptions replay = o;
  replay.want_record = false;
  replay.seed.reset();
  replay.record_text = *first.record;
  EXPECT_EQ(run_command("filter", kSeriesExample, replay).output, first.output);
}

TEST(Fuzz, ParserAndCompilerNeverCrash) {
  auto rng = make_rng(503);
  std::size_t accepted = 0;
  for (int k = 0; k < 10000; ++k) {
    const std::string text = slhnet::testing::fuzz_input(rng);
    const ParseResult parsed = parse_netlist(text);
    for (const auto& d : parsed.diagnostics) {
      ASSERT_GE(d.line, 1);
      ASSERT_FALSE(d.message.empty());
    }
    if (!parsed.ok()) continue;
    const CompileResult compiled = compile(parsed.document);
    if (compiled.ok()) ++accepted;
  }
  EXPECT_GT(accepted, 0u);
}

TEST(Fuzz, DeeplyNestedExpressionsAreDiagnosed) {
  const std::string deep = "param p = " + std::string(100000, '(') + "1" + std::string(100000, ')') + "\n";
  EXPECT_FALSE(parse_netlist(deep).ok());
  std::string chain = "param p = 1";
  for (int k = 0; k < 50000; ++k) chain += "+1";
  EXPECT_FALSE(parse_netlist(chain + "\n").ok());
}

}  // namespace
}  // namespace slhnet::netlist
