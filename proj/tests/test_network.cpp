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

#include <algorithm>

#include "support/assertions.hpp"
#include "support/random_slh.hpp"

namespace slhnet {
namespace {

using testing::make_rng;
using testing::random_triple;
using testing::triples_near;

struct FourComponents : ::testing::Test {
  SpaceRegistry reg;
  SpaceFactor q = reg.register_space("q", SpaceKind::generic, 2);
  testing::Rng rng = make_rng(101);
  SlhTriple g1 = random_triple(rng, {q}, 1);
  SlhTriple g2 = random_triple(rng, {q}, 2);
  SlhTriple g3 = random_triple(rng, {q}, 2);
  SlhTriple g4 = random_triple(rng, {q}, 2);

  NetworkSpec spec() const {
    NetworkSpec s;
    s.add_component("G1", g1);
    s.add_component("G2", g2);
    s.add_component("G3", g3);
    s.add_component("G4", g4);
    return s;
  }
};

TEST_F(FourComponents, ChainReduction) {
  NetworkSpec s = spec();
  s.add_connection("G2", "G3");
  s.add_connection("G3", "G4");
  const ReducedNetwork r = reduce(s);
  EXPECT_TRUE(triples_near(r.triple, concatenate(g1, series(g4, series(g3, g2))), 1e-12));
  EXPECT_EQ(r.chain_report.unconnected, std::vector<std::string>{"G1"});
  ASSERT_EQ(r.chain_report.chains.size(), 1u);
  EXPECT_EQ(r.chain_report.chains[0], (std::vector<std::string>{"G2", "G3", "G4"}));
  ASSERT_EQ(r.chain_report.blocks.size(), 2u);
  EXPECT_EQ(r.chain_report.blocks[1].first_channel, 1u);
  EXPECT_EQ(r.chain_report.blocks[1].channels, 2u);
}

TEST_F(FourComponents, InsertionOrderDoesNotMatter) {
  NetworkSpec a = spec();
  a.add_connection("G2", "G3");
  a.add_connection("G3", "G4");
  NetworkSpec b = spec();
  b.add_connection("G3", "G4");
  b.add_connection("G2", "G3");
  EXPECT_TRUE(triples_near(reduce(a).triple, reduce(b).triple, 0.0));
  EXPECT_EQ(reduce(a).chain_report.chains, reduce(b).chain_report.chains);
}

TEST_F(FourComponents, SingleUseRule) {
  NetworkSpec s = spec();
  s.add_connection("G2", "G3");
  EXPECT_THROW(s.add_connection("G2", "G3"), NetworkError);
  EXPECT_THROW(s.add_connection("G2", "G4"), NetworkError);
  EXPECT_THROW(s.add_connection("G4", "G3"), NetworkError);
}

TEST_F(FourComponents, LoopsAreRejected) {
  NetworkSpec s = spec();
  EXPECT_THROW(s.add_connection("G2", "G2"), NetworkError);
  s.add_connection("G2", "G3");
  s.add_connection("G3", "G4");
  try {
    s.add_connection("G4", "G2");
    FAIL() << "cycle accepted";
  } catch (const NetworkError& e) {
    EXPECT_NE(std::string(e.what()).find("not reducible"), std::string::npos);
  }
}

TEST_F(FourComponents, ValidationErrors) {
  NetworkSpec s = spec();
  EXPECT_THROW(s.add_component("G1", g1), NetworkError);
  EXPECT_THROW(s.add_component("", g1), NetworkError);
  EXPECT_THROW(s.add_connection("G1", "missing"), NetworkError);
  EXPECT_THROW(s.add_connection("G1", "G2"), NetworkError);
}

TEST_F(FourComponents, NoConnectionsIsPlainConcatenation) {
  const ReducedNetwork r = reduce(spec());
  EXPECT_TRUE(triples_near(r.triple, concatenate(concatenate(g1, g2), concatenate(g3, g4)), 1e-14));
  EXPECT_TRUE(r.chain_report.chains.empty());
  EXPECT_EQ(r.chain_report.unconnected.size(), 4u);
}

TEST(Network, BeamsplitterFeedingPaddedCavity) {
  SpaceRegistry reg;
  const SpaceFactor c = reg.register_space("c", SpaceKind::fock, 10);
  const double alpha = 0.6;
  const double beta = 0.8;
  const double gamma = 2.0;
  const double delta = 0.5;
  NetworkSpec s;
  s.add_component("M", beamsplitter(alpha, beta));
  s.add_component("CN", concatenate(cavity(c, gamma, delta), passthrough(1)));
  s.add_connection("M", "CN");
  Matrix sm(2, 2);
  sm << beta, -alpha, alpha, beta;
  const Operator a = annihilation(c);
  const SlhTriple expected(OperatorMatrix::scalars(sm, {c}),
                           OperatorMatrix::column({std::sqrt(gamma) * a, Operator::zero({c})}),
                           delta * number(c));
  EXPECT_TRUE(triples_near(reduce(s).triple, expected, 1e-12));
}

TEST(Network, PureChainIsIteratedSeries) {
  SpaceRegistry reg;
  const SpaceFactor q = reg.register_space("q", SpaceKind::generic, 3);
  auto rng = make_rng(103);
  for (int trial = 0; trial < 20; ++trial) {
    const auto length = testing::pick(rng, 2, 6);
    const auto n = testing::pick(rng, 1, 2);
    std::vector<SlhTriple> chain;
    NetworkSpec s;
    for (std::size_t k = 0; k < length; ++k) {
      chain.push_back(random_triple(rng, {q}, n));
      s.add_component("G" + std::to_string(k), chain.back());
    }
    std::vector<std::size_t> order(length - 1);
    for (std::size_t k = 0; k + 1 < length; ++k) order[k] = k;
    std::shuffle(order.begin(), order.end(), rng);
    for (auto k : order) s.add_connection("G" + std::to_string(k), "G" + std::to_string(k + 1));
    SlhTriple folded = chain[0];
    for (std::size_t k = 1; k < length; ++k) folded = series(chain[k], folded);
    EXPECT_TRUE(triples_near(reduce(s).triple, folded, 1e-12));
  }
}

TEST(Network, DirectCouplingHamiltonian) {
  SpaceRegistry reg;
  const SpaceFactor q = reg.register_space("q", SpaceKind::generic, 3);
  auto rng = make_rng(107);
  NetworkSpec s;
  Operator k = Operator::zero({q});
  for (int j = 0; j < 3; ++j) {
    const Operator m = testing::random_operator(rng, {q});
    const Operator n = testing::random_operator(rng, {q});
    s.add_direct_coupling(m, n);
    k = k + kI * (n.adjoint() * m - m.adjoint() * n);
  }
  EXPECT_LE(hermiticity_error(s.direct_hamiltonian()), 1e-13);
  const ReducedNetwork r = reduce(s);
  EXPECT_EQ(r.triple.channels(), 0u);
  EXPECT_LE(distance(r.triple.H(), k), 1e-13);
  EXPECT_EQ(r.chain_report.direct_couplings, 3u);
}

}  // namespace
}  // namespace slhnet
