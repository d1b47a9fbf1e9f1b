// Copyright 2026 The choikit Authors
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

#include <random>

#include "choikit/channel.hpp"
#include "choikit/random.hpp"
#include "oracles.hpp"

namespace choikit {
namespace {

const SystemList kA{{"A", 2}};
const SystemList kB{{"B", 2}};

LabeledOperator state_on(const SystemList& s, std::mt19937_64& rng) {
  return LabeledOperator::square(oracle::random_density(s.total_dim(), rng), s);
}

Matrix ket_bra(std::size_t d, std::size_t i, std::size_t j) { return oracle::unit(d, i, j); }

TEST(ChoiFromKraus, IdentityGivesGamma) {
  const ChoiRep c = choi_from_kraus(identity_channel(kA, kB));
  EXPECT_EQ(c.matrix(), gamma_operator({"A", 2}, {"B", 2}).matrix());
}

TEST(ChoiFromKraus, TraceThenPrepareZero) {
  const KrausRep k({ket_bra(2, 0, 0), ket_bra(2, 0, 1)}, kA, kB);
  const Matrix expected = oracle::kron(Matrix::Identity(2, 2), ket_bra(2, 0, 0));
  EXPECT_LE((choi_from_kraus(k).matrix() - expected).norm(), 1e-15);
}

TEST(ChoiFromKraus, RankBoundedByKrausCount) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const KrausRep k = random_channel(3, 3, 3, seed);
    EXPECT_LE(numeric_rank(choi_from_kraus(k).op()), 3u);
  }
}

TEST(ChoiFromKraus, MatchesDefinition) {
  const KrausRep k = random_channel(2, 3, 2, 99);
  const oracle::LinearMap map = [&](const Matrix& x) {
    Matrix y = Matrix::Zero(3, 3);
    for (const auto& op : k.ops()) y += op.matrix() * x * op.matrix().adjoint();
    return y;
  };
  EXPECT_LE((choi_from_kraus(k).matrix() - oracle::choi(map, 2)).norm(), 1e-13);
}

TEST(KrausFromChoi, GammaGivesOneUnitaryOperator) {
  const KrausRep k = kraus_from_choi(ChoiRep(gamma_operator({"A", 2}, {"B", 2}).matrix(), kA, kB));
  ASSERT_EQ(k.size(), 1u);
  const Matrix& m = k.ops()[0].matrix();
  const Complex phase = m(0, 0);
  EXPECT_NEAR(std::abs(phase), 1.0, 1e-12);
  EXPECT_LE((m - phase * Matrix::Identity(2, 2)).norm(), 1e-12);
}

TEST(KrausFromChoi, FullRankDepolarizingNeedsFour) {
  const ChoiRep c(Matrix::Identity(4, 4) / 2.0, kA, kB);
  EXPECT_EQ(kraus_from_choi(c).size(), 4u);
}

TEST(KrausFromChoi, RoundTripPreservesAction) {
  std::mt19937_64 rng(1);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const KrausRep k = random_channel(2, 3, 3, seed);
    const ChoiRep c = choi_from_kraus(k);
    const KrausRep back = kraus_from_choi(c);
    EXPECT_EQ(back.size(), numeric_rank(c.op()));
    for (int t = 0; t < 20; ++t) {
      const LabeledOperator rho = state_on(k.input(), rng);
      const Matrix diff = apply_channel(k, rho).matrix() - apply_channel(back, rho).matrix();
      EXPECT_LE(diff.norm(), 1e-10);
    }
  }
}

TEST(KrausFromChoi, RejectsNonPositive) {
  const Matrix j = gamma_operator({"A", 2}, {"B", 2}).matrix() - 0.1 * Matrix::Identity(4, 4);
  EXPECT_THROW(kraus_from_choi(ChoiRep(j, kA, kB)), NotPSD);
}

TEST(Stinespring, IdentityHasTrivialEnvironment) {
  const StinespringRep s = stinespring_from_kraus(identity_channel(kA, kB));
  EXPECT_EQ(s.env().dim, 1u);
  EXPECT_EQ(s.isometry().matrix(), Matrix::Identity(2, 2));
  EXPECT_EQ(s.isometry().out_systems().labels(), (std::vector<std::string>{"B", "E"}));
}

TEST(Stinespring, ShapeFromKrausCount) {
  const KrausRep k = random_channel(2, 2, 2, 4);
  const StinespringRep s = stinespring_from_kraus(k);
  EXPECT_EQ(s.env().dim, 2u);
  EXPECT_EQ(s.isometry().rows(), 4u);
  EXPECT_EQ(s.isometry().cols(), 2u);
  const Matrix& v = s.isometry().matrix();
  EXPECT_LE((v.adjoint() * v - Matrix::Identity(2, 2)).norm(), 1e-12);
}

TEST(Stinespring, DilationReproducesAction) {
  std::mt19937_64 rng(2);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const KrausRep k = random_channel(3, 2, 4, seed);
    const StinespringRep s = stinespring_from_kraus(k);
    const LabeledOperator rho = state_on(k.input(), rng);
    const LabeledOperator big(s.isometry().matrix() * rho.matrix() *
                                  s.isometry().matrix().adjoint(),
                              s.isometry().out_systems(), s.isometry().out_systems());
    const Matrix lhs = partial_trace(big, {s.env().label}).matrix();
    EXPECT_LE((lhs - apply_channel(k, rho).matrix()).norm(), 1e-10);
  }
}

TEST(Stinespring, RejectsNonTracePreserving) {
  const KrausRep k({2.0 * Matrix::Identity(2, 2)}, kA, kB);
  EXPECT_THROW(stinespring_from_kraus(k), NotTP);
  EXPECT_THROW(kraus_from_stinespring(StinespringRep(2.0 * Matrix::Identity(2, 2), kA, kB,
                                                     {"E", 1})),
               NotIsometry);
}

TEST(Stinespring, KrausRoundTrip) {
  const StinespringRep s = stinespring_from_kraus(identity_channel(kA, kB));
  const KrausRep k = kraus_from_stinespring(s);
  ASSERT_EQ(k.size(), 1u);
  EXPECT_EQ(k.ops()[0].matrix(), Matrix::Identity(2, 2));
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const KrausRep r = random_channel(2, 3, 3, seed);
    const KrausRep back = kraus_from_stinespring(stinespring_from_kraus(r));
    EXPECT_EQ(back.size(), 3u);
    EXPECT_LE((choi_from_kraus(back).matrix() - choi_from_kraus(r).matrix()).norm(), 1e-12);
  }
}

TEST(Stinespring, ReturnsEveryEnvironmentLevel) {
  // Environment of dimension 3 where one level is never populated.
  Matrix v = Matrix::Zero(6, 2);
  v(0, 0) = 1.0;  // |0>_B |0>_E
  v(4, 1) = 1.0;  // |1>_B |1>_E
  const KrausRep k = kraus_from_stinespring(StinespringRep(v, kA, kB, {"E", 3}));
  ASSERT_EQ(k.size(), 3u);
  EXPECT_EQ(k.ops()[2].matrix().norm(), 0.0);
}

TEST(Liouville, IdentityAndUnitary) {
  EXPECT_EQ(liouville_from_kraus(identity_channel(kA, kB)).matrix(), Matrix::Identity(4, 4));
  Rng rng(6);
  const Matrix u = random_unitary(2, rng);
  const LiouvilleRep l = liouville_from_kraus(unitary_channel(u, kA, kB));
  EXPECT_LE((l.matrix() - oracle::kron(u.conjugate(), u)).norm(), 1e-15);
}

TEST(Liouville, ActsOnVectorizedStates) {
  std::mt19937_64 rng(3);
  const KrausRep k = random_channel(2, 3, 2, 8);
  const LiouvilleRep l = liouville_from_kraus(k);
  for (int t = 0; t < 20; ++t) {
    const LabeledOperator rho = state_on(k.input(), rng);
    const Matrix lhs = l.matrix() * vec(rho).matrix();
    const Matrix rhs = vec(apply_channel(k, rho)).matrix();
    EXPECT_LE((lhs - rhs).norm(), 1e-10);
  }
  // Reindexing back and forth between Choi and Liouville is lossless.
  EXPECT_LE((choi_from_liouville(l).matrix() - choi_from_kraus(k).matrix()).norm(), 1e-13);
  EXPECT_EQ(liouville_from_choi(choi_from_liouville(l)).matrix(), l.matrix());
}

TEST(ValidateChannel, Verdicts) {
  const Matrix g = gamma_operator({"A", 2}, {"B", 2}).matrix();
  const ChannelValidityReport ok = validate_channel(ChoiRep(g, kA, kB));
  EXPECT_TRUE(ok.cp && ok.tp && ok.hermitian && ok.valid());
  const ChannelValidityReport neg = validate_channel(ChoiRep(g - 0.1 * Matrix::Identity(4, 4), kA, kB));
  EXPECT_FALSE(neg.cp);
  EXPECT_LT(neg.min_eigenvalue, 0.0);
  const ChannelValidityReport twice = validate_channel(ChoiRep(2.0 * g, kA, kB));
  EXPECT_TRUE(twice.cp);
  EXPECT_FALSE(twice.tp);
  EXPECT_NEAR(twice.tp_deviation, std::sqrt(2.0), 1e-12);
  Matrix nh = g;
  nh(0, 1) = 1.0;
  EXPECT_FALSE(validate_channel(ChoiRep(nh, kA, kB)).hermitian);
}

TEST(ApplyChannel, SimpleChannels) {
  std::mt19937_64 rng(4);
  const LabeledOperator rho = state_on(kA, rng);
  const Matrix out = apply_channel(identity_channel(kA, kB), rho).matrix();
  EXPECT_LE((out - rho.matrix()).norm(), 1e-15);
  const LabeledOperator sigma = state_on(SystemList{{"B", 3}}, rng);
  const ChoiRep tp = trace_and_prepare(kA, sigma);
  for (int t = 0; t < 5; ++t) {
    EXPECT_LE((apply_channel(tp, state_on(kA, rng)).matrix() - sigma.matrix()).norm(), 1e-14);
  }
  EXPECT_THROW(apply_channel(tp, state_on(SystemList{{"A", 3}}, rng)), DimensionMismatch);
}

TEST(ApplyChannel, AllRepresentationsAgree) {
  std::mt19937_64 rng(5);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const std::size_t din = 1 + seed % 3, dout = 1 + (seed / 3) % 3;
    const std::size_t rank = std::max<std::size_t>((din + dout - 1) / dout, 1 + seed % (din * dout));
    const KrausRep k = random_channel(din, dout, rank, seed);
    const std::vector<AnyChannel> reps{choi_from_kraus(k), k, stinespring_from_kraus(k),
                                       liouville_from_kraus(k)};
    const LabeledOperator rho = state_on(k.input(), rng);
    const Matrix ref = oracle::apply_choi(choi_from_kraus(k).matrix(), rho.matrix(), dout);
    for (const auto& r : reps) {
      EXPECT_LE((apply_channel(r, rho).matrix() - ref).norm(), 1e-10);
    }
  }
}

TEST(Conversions, CycleReturnsStartingChoi) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const ChoiRep c = choi_from_kraus(random_channel(3, 2, 4, seed));
    const ChoiRep back = to_choi(kraus_from_stinespring(
        stinespring_from_kraus(kraus_from_choi(c))));
    EXPECT_LE((back.matrix() - c.matrix()).norm(), 1e-10 * c.matrix().norm());
    EXPECT_LE((to_choi(to_liouville(c)).matrix() - c.matrix()).norm(), 1e-12);
    EXPECT_LE((to_choi(to_stinespring(c)).matrix() - c.matrix()).norm(), 1e-10);
  }
}

TEST(Conversions, UnitTraceAgainstProductInputs) {
  std::mt19937_64 rng(6);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const ChoiRep c = choi_from_kraus(random_channel(2, 3, 2, seed));
    const LabeledOperator rho = state_on(c.input(), rng);
    const LabeledOperator probe = kron(rho, LabeledOperator::identity(c.output()));
    EXPECT_NEAR(trace(probe * c.op()).real(), 1.0, 1e-10);
  }
}

TEST(LinkProduct, BornRule) {
  std::mt19937_64 rng(7);
  const LabeledOperator rho = state_on(kA, rng);
  const Matrix g = oracle::random_matrix(2, 2, rng);
  const LabeledOperator m = LabeledOperator::square(g + g.adjoint(), kA);
  const LabeledOperator r = link_product(rho, m.transpose());
  ASSERT_TRUE(r.is_scalar());
  EXPECT_NEAR(std::abs(r.matrix()(0, 0) - (rho.matrix() * m.matrix()).trace()), 0.0, 1e-12);
}

TEST(LinkProduct, IdentityChannelsAndTraces) {
  const LabeledOperator j1 = gamma_operator({"A", 2}, {"B", 2});
  const LabeledOperator j2 = gamma_operator({"B", 2}, {"C", 2});
  const LabeledOperator r = link_product(j1, j2);
  EXPECT_EQ(r.out_systems().labels(), (std::vector<std::string>{"A", "C"}));
  EXPECT_LE((r.matrix() - gamma_operator({"A", 2}, {"C", 2}).matrix()).norm(), 1e-15);
  const ChoiRep c = choi_from_kraus(random_channel(2, 3, 2, 1));
  const LabeledOperator t = link_product(c.op(), LabeledOperator::identity(c.output()));
  EXPECT_LE((t.matrix() - Matrix::Identity(2, 2)).norm(), 1e-12);
}

TEST(LinkProduct, CommutesUpToOrdering) {
  std::mt19937_64 rng(8);
  const SystemList ab{{"A", 2}, {"B", 3}}, bc{{"B", 3}, {"C", 2}};
  const Matrix x = oracle::random_matrix(6, 6, rng), y = oracle::random_matrix(6, 6, rng);
  const LabeledOperator m = LabeledOperator::square(x, ab), n = LabeledOperator::square(y, bc);
  const LabeledOperator mn = link_product(m, n);
  const LabeledOperator nm = permute_systems(link_product(n, m), {"A", "C"});
  EXPECT_LE((mn.matrix() - nm.matrix()).norm(), 1e-12);
  EXPECT_THROW(link_product(m, LabeledOperator::square(y, SystemList{{"B", 2}, {"C", 3}})),
               DimensionMismatch);
}

TEST(ComposeChannels, Identities) {
  const ChoiRep id = choi_from_kraus(identity_channel(kA, kB));
  EXPECT_LE((compose_channels(id, id).matrix() - id.matrix()).norm(), 1e-15);
  Rng rng(9);
  const Matrix u = random_unitary(2, rng);
  const ChoiRep cu = choi_from_kraus(unitary_channel(u, kA, kB));
  const ChoiRep cud = choi_from_kraus(unitary_channel(u.adjoint(), kA, kB));
  EXPECT_LE((compose_channels(cu, cud).matrix() - id.matrix()).norm(), 1e-12);
}

TEST(ComposeChannels, MatchesChaining) {
  std::mt19937_64 rng(10);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const KrausRep e1 = random_channel(2, 3, 2, seed);
    const KrausRep e2 = random_channel(SystemList{{"C", 3}}, SystemList{{"D", 2}}, 3, seed + 100);
    const ChoiRep c = compose_channels(choi_from_kraus(e2), choi_from_kraus(e1));
    EXPECT_EQ(c.input(), e1.input());
    EXPECT_EQ(c.output(), e2.output());
    for (int t = 0; t < 20; ++t) {
      const LabeledOperator rho = state_on(e1.input(), rng);
      const LabeledOperator mid = LabeledOperator::square(apply_channel(e1, rho).matrix(),
                                                          e2.input());
      const Matrix chained = apply_channel(e2, mid).matrix();
      EXPECT_LE((apply_channel(c, rho).matrix() - chained).norm(), 1e-10);
    }
  }
  EXPECT_THROW(compose_channels(choi_from_kraus(random_channel(2, 2, 1, 0)),
                                choi_from_kraus(random_channel(2, 3, 1, 0))),
               DimensionMismatch);
}

TEST(GeneralizedChoi, Variants) {
  const ChoiRep c = choi_from_kraus(random_channel(2, 3, 2, 12));
  const auto I = ChoiVariant::kIdentity, T = ChoiVariant::kTranspose;
  EXPECT_EQ(generalized_choi(c, I, I).matrix(), c.matrix());
  const ChoiRep g(gamma_operator({"A", 2}, {"B", 2}).matrix(), kA, kB);
  Matrix swap = Matrix::Zero(4, 4);
  swap(0, 0) = swap(3, 3) = swap(1, 2) = swap(2, 1) = 1.0;
  EXPECT_EQ(generalized_choi(g, I, T).matrix(), swap);

  // Oracle: apply f and g literally to the defining sum.
  const KrausRep k = kraus_from_choi(c);
  const oracle::LinearMap map = [&](const Matrix& x) {
    Matrix y = Matrix::Zero(3, 3);
    for (const auto& op : k.ops()) y += op.matrix() * x * op.matrix().adjoint();
    return y;
  };
  const oracle::LinearMap map_t = [&](const Matrix& x) { return map(x.transpose()); };
  EXPECT_LE((generalized_choi(c, I, T).matrix() - oracle::choi(map_t, 2)).norm(), 1e-12);
  EXPECT_LE((generalized_choi(c, T, I).matrix() - oracle::choi(map, 2).transpose()).norm(), 1e-12);
  EXPECT_LE((generalized_choi(c, T, T).matrix() - oracle::choi(map_t, 2).transpose()).norm(),
            1e-12);
  for (auto f : {I, T}) {
    for (auto gv : {I, T}) {
      const ChoiRep back =
          generalized_choi_inverse(generalized_choi(c, f, gv), f, gv, c.input(), c.output());
      EXPECT_EQ(back.matrix(), c.matrix());
    }
  }
}

TEST(RandomChannel, ValidDeterministicAndRanked) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const KrausRep k = random_channel(3, 2, 2, seed);
    EXPECT_LE(kraus_completeness_deviation(k), 1e-12);
    EXPECT_TRUE(validate_channel(choi_from_kraus(k)).valid());
  }
  const KrausRep a = random_channel(2, 2, 3, 77), b = random_channel(2, 2, 3, 77);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(a.ops()[i].matrix(), b.ops()[i].matrix());
  const KrausRep iso = random_channel(2, 3, 1, 5);
  const Matrix& v = iso.ops()[0].matrix();
  EXPECT_LE((v.adjoint() * v - Matrix::Identity(2, 2)).norm(), 1e-12);
  EXPECT_THROW(random_channel(2, 2, 0, 1), InvalidArgument);
  EXPECT_THROW(random_channel(2, 2, 5, 1), InvalidArgument);
  EXPECT_THROW(random_channel(3, 1, 1, 1), InvalidArgument);
}

}  // namespace
}  // namespace choikit
