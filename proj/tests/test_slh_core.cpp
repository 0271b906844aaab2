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

#include <cmath>

#include "support/assertions.hpp"
#include "support/random_slh.hpp"

namespace slhnet {
namespace {

using testing::make_rng;
using testing::operators_near;
using testing::pick;
using testing::random_triple;
using testing::SpacePool;
using testing::triples_near;
using testing::uniform;

struct CavityFixture : ::testing::Test {
  SpaceRegistry reg;
  SpaceFactor c = reg.register_space("c", SpaceKind::fock, 8);
  Operator a = annihilation(c);
  Operator n = number(c);
};

using Concatenate = CavityFixture;

TEST_F(Concatenate, AugmentsCavityWithPassThrough) {
  const double gamma = 1.7;
  const double delta = 0.3;
  const SlhTriple g = concatenate(cavity(c, gamma, delta), passthrough(1));
  ASSERT_EQ(g.channels(), 2u);
  EXPECT_LE(distance(g.S(), OperatorMatrix::identity({c}, 2)), 1e-15);
  EXPECT_TRUE(operators_near(g.L(0), std::sqrt(gamma) * a, 1e-15));
  EXPECT_TRUE(operators_near(g.L(1), Operator::zero({c}), 0.0));
  EXPECT_TRUE(operators_near(g.H(), delta * n, 1e-15));
}

TEST_F(Concatenate, ZeroChannelTripleIsNeutral) {
  const SlhTriple g = cavity(c, 2.0, 0.5);
  EXPECT_TRUE(triples_near(concatenate(g, SlhTriple::hamiltonian(Operator::scalar(0.0))), g, 0.0));
  EXPECT_TRUE(triples_near(concatenate(SlhTriple(), g), g, 0.0));
}

TEST_F(Concatenate, HamiltonianOnlyTriplesAdd) {
  const SlhTriple h1 = SlhTriple::hamiltonian(2.0 * n);
  const SlhTriple h2 = SlhTriple::hamiltonian(a + a.adjoint());
  const SlhTriple sum = concatenate(h1, h2);
  EXPECT_EQ(sum.channels(), 0u);
  EXPECT_TRUE(operators_near(sum.H(), 2.0 * n + a + a.adjoint(), 1e-15));
}

TEST(ConcatenateProperty, BlockStructure) {
  SpacePool pool;
  auto rng = make_rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto n1 = pick(rng, 1, 2);
    const auto n2 = pick(rng, 1, 2);
    const SlhTriple g1 = random_triple(rng, pool.random_signature(rng), n1);
    const SlhTriple g2 = random_triple(rng, pool.random_signature(rng), n2);
    const SlhTriple g = concatenate(g1, g2);
    const auto [e1, e2] = unified(g1, g2);
    ASSERT_EQ(g.channels(), n1 + n2);
    for (std::size_t i = 0; i < n1 + n2; ++i) {
      for (std::size_t j = 0; j < n1 + n2; ++j) {
        Operator expected = Operator::zero(g.signature());
        if (i < n1 && j < n1) expected = e1.S().at(i, j);
        if (i >= n1 && j >= n1) expected = e2.S().at(i - n1, j - n1);
        EXPECT_LE(distance(g.S().at(i, j), expected), 0.0);
      }
      EXPECT_LE(distance(g.L(i), i < n1 ? e1.L(i) : e2.L(i - n1)), 0.0);
    }
    EXPECT_LE(distance(g.H(), e1.H() + e2.H()), 1e-15);
  }
}

using Series = CavityFixture;

TEST_F(Series, AllOpticalFeedbackLoop) {
  auto rng = make_rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const double theta = uniform(rng, -M_PI, M_PI);
    const double gamma = uniform(rng, 0.1, 5.0);
    const SlhTriple arm = cavity(c, gamma, 0.0);
    const SlhTriple loop = series_chain({arm, phase_shift(theta), arm});
    const Complex e = std::exp(kI * theta);
    const SlhTriple expected(OperatorMatrix::scalars(Matrix::Constant(1, 1, e), {c}),
                             OperatorMatrix::column({(1.0 + e) * std::sqrt(gamma) * a}),
                             gamma * std::sin(theta) * n);
    EXPECT_TRUE(triples_near(loop, expected, 1e-12)) << "theta=" << theta << " gamma=" << gamma;
  }
}

TEST_F(Series, IdentityElement) {
  const SlhTriple g = cavity(c, 1.3, -0.4);
  const SlhTriple id = passthrough(1);
  EXPECT_TRUE(triples_near(series(id, g), g, 1e-15));
  EXPECT_TRUE(triples_near(series(g, id), g, 1e-15));
}

TEST_F(Series, QuadratureFeedbackForm) {
  auto rng = make_rng(5);
  const Signature sig{c};
  const Operator f = testing::random_self_adjoint(rng, sig);
  const Operator l = testing::random_operator(rng, sig);
  const Operator h0 = testing::random_self_adjoint(rng, sig);
  const SlhTriple plant(OperatorMatrix::identity(sig, 1), OperatorMatrix::column({l}), h0);
  const SlhTriple fb(OperatorMatrix::identity(sig, 1), OperatorMatrix::column({-kI * f}), Operator::zero(sig));
  const SlhTriple expected(OperatorMatrix::identity(sig, 1), OperatorMatrix::column({l - kI * f}),
                           h0 + 0.5 * (f * l + l.adjoint() * f));
  EXPECT_TRUE(triples_near(series(fb, plant), expected, 1e-12));
}

TEST_F(Series, RejectsChannelMismatch) {
  EXPECT_THROW(series(passthrough(2), cavity(c, 1.0, 0.0)), ChannelMismatch);
  EXPECT_THROW(exchange_right(passthrough(2), cavity(c, 1.0, 0.0)), ChannelMismatch);
}

TEST_F(Series, MatchesExpandedFormula) {
  auto rng = make_rng(17);
  const Signature sig{c};
  for (int trial = 0; trial < 20; ++trial) {
    const SlhTriple g1 = random_triple(rng, sig, 2);
    const SlhTriple g2 = random_triple(rng, sig, 2);
    const SlhTriple g = series(g2, g1);
    Operator cross = Operator::zero(sig);
    Operator cross_back = Operator::zero(sig);
    for (std::size_t j = 0; j < 2; ++j) {
      for (std::size_t k = 0; k < 2; ++k) {
        cross = cross + g2.L(j).adjoint() * g2.S().at(j, k) * g1.L(k);
        cross_back = cross_back + g1.L(k).adjoint() * g2.S().at(j, k).adjoint() * g2.L(j);
      }
    }
    const Operator h = g1.H() + g2.H() + (1.0 / (2.0 * kI)) * (cross - cross_back);
    EXPECT_TRUE(operators_near(g.H(), h, 1e-12));
  }
}

using Exchange = CavityFixture;

TEST_F(Exchange, NothingToExchange) {
  auto rng = make_rng(23);
  const SlhTriple g2 = random_triple(rng, {c}, 2);
  EXPECT_TRUE(triples_near(exchange_right(SlhTriple::trivial(2, {c}), g2), g2, 1e-14));
}

TEST_F(Exchange, BeamsplitterPastCavity) {
  const Complex alpha(0.6, 0.0);
  const Complex beta(0.8, 0.0);
  const double gamma = 2.0;
  const double delta = 0.5;
  const SlhTriple m = beamsplitter(alpha, beta);
  const SlhTriple cn = concatenate(cavity(c, gamma, delta), passthrough(1));
  const SlhTriple swapped = exchange_right(m, cn);

  const SlhTriple c_prime(OperatorMatrix::identity({c}, 1),
                          OperatorMatrix::column({std::conj(beta) * std::sqrt(gamma) * a}), delta * n);
  const SlhTriple n_prime(OperatorMatrix::identity({c}, 1),
                          OperatorMatrix::column({-std::conj(alpha) * std::sqrt(gamma) * a}), Operator::zero({c}));
  EXPECT_TRUE(triples_near(swapped, concatenate(c_prime, n_prime), 1e-12));
  EXPECT_TRUE(triples_near(series(cn, m), series(m, swapped), 1e-12));
}

TEST(ExchangeProperty, RoundTrip) {
  SpacePool pool;
  auto rng = make_rng(29);
  for (int trial = 0; trial < 100; ++trial) {
    const auto n = pick(rng, 1, 3);
    const SlhTriple g1 = random_triple(rng, pool.random_signature(rng), n);
    const SlhTriple g2 = random_triple(rng, pool.random_signature(rng), n);
    const SlhTriple g2p = exchange_right(g1, g2);
    EXPECT_TRUE(triples_near(series(g2, g1), series(g1, g2p), 1e-10)) << "trial " << trial;
    EXPECT_LE(unitarity_error(g2p.S()), 1e-10);
    EXPECT_LE(hermiticity_error(g2p.H()), 1e-10);
  }
}

using MoveScattering = CavityFixture;

TEST_F(MoveScattering, IdentityScatteringLeavesTailUnchanged) {
  const SlhTriple g = cavity(c, 1.0, 0.2);
  const auto [head, tail] = move_scattering(g);
  EXPECT_TRUE(triples_near(head, SlhTriple::trivial(1, {c}), 0.0));
  EXPECT_TRUE(triples_near(tail, g, 1e-15));
}

TEST_F(MoveScattering, PhaseShiftedCavity) {
  const double theta = 0.9;
  const double gamma = 3.0;
  const SlhTriple g(OperatorMatrix::scalars(Matrix::Constant(1, 1, std::exp(kI * theta)), {c}),
                    OperatorMatrix::column({std::sqrt(gamma) * a}), Operator::zero({c}));
  const auto [head, tail] = move_scattering(g);
  EXPECT_TRUE(operators_near(tail.L(0), std::exp(-kI * theta) * std::sqrt(gamma) * a, 1e-14));
  EXPECT_TRUE(triples_near(series(head, tail), g, 1e-14));
}

TEST(MoveScatteringProperty, BothFactorizationsRecompose) {
  SpacePool pool;
  auto rng = make_rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const auto n = pick(rng, 1, 3);
    const SlhTriple g = random_triple(rng, pool.random_signature(rng), n);
    const auto [head, tail] = move_scattering(g);
    const SlhTriple front(OperatorMatrix::identity(g.signature(), n), g.L(), g.H());
    const SlhTriple back(g.S(), OperatorMatrix(g.signature(), n, 1), Operator::zero(g.signature()));
    EXPECT_TRUE(triples_near(series(head, tail), g, 1e-10));
    EXPECT_TRUE(triples_near(series(front, back), g, 1e-10));
  }
}

using Plumbing = CavityFixture;

TEST_F(Plumbing, PadMatchesConcatenation) {
  const SlhTriple g = cavity(c, 2.0, 0.5);
  EXPECT_TRUE(triples_near(pad(g, 0), g, 0.0));
  EXPECT_TRUE(triples_near(pad(g, 1), concatenate(g, passthrough(1)), 0.0));
  EXPECT_EQ(pad(g, 3).channels(), 4u);
}

TEST_F(Plumbing, PermutationIdentityAndInverse) {
  auto rng = make_rng(37);
  const SlhTriple g = random_triple(rng, {c}, 3);
  EXPECT_TRUE(triples_near(permute_channels(g, {0, 1, 2}), g, 0.0));
  const std::vector<std::size_t> sigma{2, 0, 1};
  const std::vector<std::size_t> inverse{1, 2, 0};
  EXPECT_TRUE(triples_near(permute_channels(permute_channels(g, sigma), inverse), g, 0.0));
}

TEST_F(Plumbing, PermutationAgreesWithScatteringSeries) {
  auto rng = make_rng(41);
  const SlhTriple g = random_triple(rng, {c}, 3);
  const std::vector<std::size_t> sigma{1, 2, 0};
  const SlhTriple p(OperatorMatrix::scalars(permutation_matrix(sigma)), OperatorMatrix(Signature{}, 3, 1),
                    Operator::scalar(0.0));
  EXPECT_TRUE(triples_near(permute_channels(g, sigma), series(p, g), 1e-14));
  for (std::size_t i = 0; i < 3; ++i) EXPECT_LE(distance(permute_channels(g, sigma).L(i), g.L(sigma[i])), 0.0);
}

TEST_F(Plumbing, RejectsInvalidPermutation) {
  const SlhTriple g = pad(cavity(c, 1.0, 0.0), 1);
  EXPECT_THROW(permute_channels(g, {0, 0}), InvalidArgument);
  EXPECT_THROW(permute_channels(g, {0, 2}), InvalidArgument);
  EXPECT_THROW(permute_channels(g, {0}), InvalidArgument);
}

using Ito = CavityFixture;

TEST_F(Ito, TrivialTripleHasZeroBlocks) {
  const ItoCoefficients k = ito_coefficients(SlhTriple::trivial(2, {c}));
  EXPECT_LE(max_abs(k.g00.matrix()), 0.0);
  EXPECT_LE(distance(k.g10, OperatorMatrix({c}, 2, 1)), 0.0);
  EXPECT_LE(distance(k.g01, OperatorMatrix({c}, 1, 2)), 0.0);
  EXPECT_LE(distance(k.g11, OperatorMatrix({c}, 2, 2)), 0.0);
}

TEST_F(Ito, CavityBlocks) {
  const double gamma = 1.5;
  const double delta = 0.7;
  const ItoCoefficients k = ito_coefficients(cavity(c, gamma, delta));
  EXPECT_TRUE(operators_near(k.g00, -kI * delta * n - (gamma / 2.0) * n, 1e-14));
  EXPECT_TRUE(operators_near(k.g10.at(0, 0), std::sqrt(gamma) * a, 1e-14));
  EXPECT_TRUE(operators_near(k.g01.at(0, 0), -std::sqrt(gamma) * a.adjoint(), 1e-14));
  EXPECT_TRUE(operators_near(k.g11.at(0, 0), Operator::zero({c}), 0.0));
}

TEST(ItoProperty, RoundTrip) {
  SpacePool pool;
  auto rng = make_rng(43);
  for (int trial = 0; trial < 100; ++trial) {
    const SlhTriple g = random_triple(rng, pool.random_signature(rng), pick(rng, 1, 3));
    EXPECT_TRUE(triples_near(coefficients_to_slh(ito_coefficients(g)), g, 1e-12));
  }
}

TEST(ItoProperty, ComposeWithZero) {
  SpacePool pool;
  auto rng = make_rng(47);
  const SlhTriple g = random_triple(rng, pool.random_signature(rng), 2);
  const ItoCoefficients k = ito_coefficients(g);
  const ItoCoefficients zero = ito_coefficients(SlhTriple::trivial(2, g.signature()));
  EXPECT_TRUE(triples_near(coefficients_to_slh(ito_compose(k, zero)), g, 1e-14));
  EXPECT_TRUE(triples_near(coefficients_to_slh(ito_compose(zero, k)), g, 1e-14));
}

TEST(ItoProperty, CompositionMatchesSeriesProduct) {
  SpacePool pool;
  auto rng = make_rng(53);
  for (int trial = 0; trial < 100; ++trial) {
    const auto n = pick(rng, 1, 3);
    const SlhTriple g1 = random_triple(rng, pool.random_signature(rng), n);
    const SlhTriple g2 = random_triple(rng, pool.random_signature(rng), n);
    const auto [e2, e1] = unified(g2, g1);
    const SlhTriple via_ito = coefficients_to_slh(ito_compose(ito_coefficients(e2), ito_coefficients(e1)));
    EXPECT_TRUE(triples_near(via_ito, series(g2, g1), 1e-10)) << "trial " << trial;
  }
}

TEST_F(Ito, CascadeHamiltonian) {
  auto rng = make_rng(59);
  const Signature sig{c};
  const Operator l1 = testing::random_operator(rng, sig);
  const Operator l2 = testing::random_operator(rng, sig);
  const SlhTriple g1(OperatorMatrix::identity(sig, 1), OperatorMatrix::column({l1}), Operator::zero(sig));
  const SlhTriple g2(OperatorMatrix::identity(sig, 1), OperatorMatrix::column({l2}), Operator::zero(sig));
  const SlhTriple cascade = coefficients_to_slh(ito_compose(ito_coefficients(g2), ito_coefficients(g1)));
  EXPECT_TRUE(operators_near(cascade.H(), im_part(l2.adjoint() * l1), 1e-12));
  EXPECT_TRUE(operators_near(cascade.L(0), l1 + l2, 1e-12));
}

TEST_F(Ito, RejectsInvalidBlocks) {
  ItoCoefficients k = ito_coefficients(cavity(c, 1.0, 0.0));
  ItoCoefficients bad_s = k;
  bad_s.g11 = OperatorMatrix::scalars(Matrix::Constant(1, 1, 0.5), {c});
  EXPECT_THROW(coefficients_to_slh(bad_s), InvalidArgument);
  ItoCoefficients bad_h = k;
  bad_h.g00 = k.g00 + a;
  EXPECT_THROW(coefficients_to_slh(bad_h), InvalidArgument);
  ItoCoefficients bad_g01 = k;
  bad_g01.g01 = OperatorMatrix({c}, 1, 1);
  EXPECT_THROW(coefficients_to_slh(bad_g01), InvalidArgument);
  EXPECT_THROW(ito_compose(k, ito_coefficients(passthrough(2))), ChannelMismatch);
}

TEST(AlgebraProperty, AssociativityAndClosure) {
  SpacePool pool;
  auto rng = make_rng(61);
  for (int trial = 0; trial < 200; ++trial) {
    const auto n = pick(rng, 1, 3);
    const SlhTriple g1 = random_triple(rng, pool.random_signature(rng), n);
    const SlhTriple g2 = random_triple(rng, pool.random_signature(rng), n);
    const SlhTriple g3 = random_triple(rng, pool.random_signature(rng), n);
    const SlhTriple left = series(g3, series(g2, g1));
    const SlhTriple right = series(series(g3, g2), g1);
    EXPECT_TRUE(triples_near(left, right, 1e-10));
    EXPECT_TRUE(left.check().ok(1e-10));
    EXPECT_TRUE(concatenate(g1, g2).check().ok(1e-10));
  }
}

}  // namespace
}  // namespace slhnet
