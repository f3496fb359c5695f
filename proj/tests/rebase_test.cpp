// Copyright 2026 The th-rebase Authors
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

#include <random>

#include "gtest/gtest.h"
#include "test_support.hpp"
#include "threbase/threbase.hpp"

namespace threbase {
namespace {

using passes::rebase_circuit;
using passes::rebase_exact;

const sk::Net& kitaev_net() {
  static const sk::Net net = sk::build_net(sk::kitaev_set(), 6);
  return net;
}

TEST(RebaseExact, Examples) {
  const auto cz = rebase_exact(gates::CZ(0, 1));
  ASSERT_TRUE(cz);
  EXPECT_EQ(*cz, (std::vector<Gate>{gates::CS(0, 1), gates::CS(0, 1)}));
  EXPECT_EQ(circuit_unitary(Circuit(2, *cz)), CMatrix::diagonal({1, 1, 1, -1}));

  EXPECT_EQ(*rebase_exact(gates::CS(0, 1)), (std::vector<Gate>{gates::CS(0, 1)}));
  EXPECT_FALSE(rebase_exact(gates::X(0)));
  EXPECT_FALSE(rebase_exact(gates::Z(0)));
  EXPECT_FALSE(rebase_exact(gates::S(0)));
  EXPECT_FALSE(rebase_exact(Gate(GateKind::SDG, {0})));
  EXPECT_FALSE(rebase_exact(Gate::generic(gate_matrix(GateKind::H), {0})));
}

TEST(RebaseExact, TableComposesToSource) {
  const std::vector<Gate> sources{gates::H(1),        gates::CS(2, 0),   gates::CZ(0, 2),
                                  gates::CNOT(2, 1),  Gate(GateKind::CSDG, {1, 2}), gates::CCX(2, 0, 1),
                                  gates::CCX(0, 1, 2)};
  for (const Gate& g : sources) {
    const auto seq = rebase_exact(g);
    ASSERT_TRUE(seq) << g.name();
    for (const auto& e : *seq) EXPECT_TRUE(e.kind() == GateKind::H || e.kind() == GateKind::CS);
    EXPECT_LE(dist(circuit_unitary(Circuit(3, *seq)), embed(g, 3)), 1e-12) << g.name();
    EXPECT_LE(max_abs_diff(circuit_unitary(Circuit(3, *seq)), embed(g, 3)), 1e-12) << g.name();
  }
}

TEST(RebaseExact, NoShortKitaevWordIsXTensorI) {
  // Exhaustive search over all words of length <= 6 in {CS, H⊗I, I⊗H}.
  const sk::GateSet gs = sk::kitaev_set();
  const CMatrix target = kron(gate_matrix(GateKind::X), CMatrix::identity(2));
  double closest = 1e9;
  std::vector<CMatrix> level{CMatrix::identity(4)};
  for (int len = 1; len <= 6; ++len) {
    std::vector<CMatrix> next;
    for (const auto& m : level)
      for (std::size_t g = 0; g < gs.size(); ++g) next.push_back(gs.matrix(g) * m);
    for (const auto& m : next) closest = std::min(closest, unitary_distance(m, target));
    level = std::move(next);
  }
  EXPECT_GT(closest, 1e-3);
}

TEST(RebaseCircuit, ExactOnlyInputsHaveZeroError) {
  Circuit c(3, {gates::CZ(0, 1), gates::CNOT(1, 2), gates::CNOT(2, 0), gates::CZ(2, 1)});
  const auto r = rebase_circuit(c, kitaev_net(), 1e-3);
  EXPECT_EQ(r.report.error_bound, 0.0);
  for (const auto& g : r.circuit.gates()) EXPECT_TRUE(g.kind() == GateKind::H || g.kind() == GateKind::CS);
  EXPECT_LE(verify::check_exact(c, r.circuit).max_deviation, 1e-12);
}

TEST(RebaseCircuit, KitaevInputUnchanged) {
  std::mt19937_64 rng(51);
  const Circuit c = testing::random_kitaev_circuit(rng, 3, 20);
  const auto r = rebase_circuit(c, kitaev_net(), 1e-2);
  EXPECT_EQ(r.circuit, c);
  EXPECT_EQ(r.report.error_bound, 0.0);
}

TEST(RebaseCircuit, GenericControlledSFoundInNet) {
  Circuit c(2, {Gate::generic(CMatrix::diagonal({1, 1, 1, cplx(0, 1)}), {0, 1})});
  const auto r = rebase_circuit(c, kitaev_net(), 1e-6);
  EXPECT_EQ(r.circuit.gates(), (std::vector<Gate>{gates::CS(0, 1)}));
  EXPECT_LE(r.report.error_bound, 1e-12);
}

TEST(RebaseCircuit, ApproximatedOperandsAreMapped) {
  // CZ-on-(2,0) as a GENERIC gate: found as CS,CS on the same operands.
  Circuit c(3, {Gate::generic(gate_matrix(GateKind::CZ), {2, 0})});
  const auto r = rebase_circuit(c, kitaev_net(), 1e-6);
  EXPECT_EQ(r.circuit.gates(), (std::vector<Gate>{gates::CS(2, 0), gates::CS(2, 0)}));
}

TEST(RebaseCircuit, BudgetFailureCarriesBestDistance) {
  Circuit c(2, {gates::X(0)});
  try {
    rebase_circuit(c, kitaev_net(), 1e-2);
    FAIL() << "expected a budget error";
  } catch (const passes::RebaseBudgetError& e) {
    EXPECT_EQ(e.gate_index(), 0u);
    EXPECT_GT(e.best_distance(), 1e-2);
    const CMatrix target = kron(gate_matrix(GateKind::X), CMatrix::identity(2));
    EXPECT_NEAR(e.best_distance(), sk::nearest(kitaev_net(), target).distance, 1e-12);
  }
}

TEST(RebaseCircuit, ErrorBoundIsSumOfAchieved) {
  // A loose budget lets single-qubit gates through; the bound must cover the true error.
  Circuit c(2, {gates::X(0), gates::S(1)});
  const auto r = rebase_circuit(c, kitaev_net(), 10.0);
  EXPECT_GT(r.report.error_bound, 0.0);
  EXPECT_LE(verify::check_exact(c, r.circuit).max_deviation, r.report.error_bound + 1e-9);
}

TEST(RebaseCircuit, Errors) {
  EXPECT_THROW(rebase_circuit(Circuit(2), kitaev_net(), 0.0), ValidationError);
  Circuit big(3, {Gate::generic(CMatrix::identity(8), {0, 1, 2})});
  EXPECT_THROW(rebase_circuit(big, kitaev_net(), 1.0), ValidationError);
  const sk::Net wrong = sk::build_net(sk::demo_set(), 2);
  EXPECT_THROW(rebase_circuit(Circuit(2, {gates::X(0)}), wrong, 1.0), ValidationError);
  EXPECT_NO_THROW(rebase_circuit(Circuit(2, {gates::CZ(0, 1)}), wrong, 1.0));
  EXPECT_THROW(rebase_circuit(Circuit(1, {gates::X(0)}), kitaev_net(), 10.0), ValidationError);
}

}  // namespace
}  // namespace threbase
