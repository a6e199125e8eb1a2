#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "coeffspec/oracle.hpp"
#include "coeffspec/verify.hpp"

using namespace coeffspec;

namespace {

using Seq = CharacterSeq;

ConcreteModel e1() {
  return ConcreteModel(GroundSet(3), PartialInjection(3, {{0, 1}, {1, 2}}),
                       Partition::singletons(3));
}

ConcreteModel e2() {
  return ConcreteModel(GroundSet(2), PartialInjection(2, {{0, 1}, {1, 0}}),
                       Partition::singletons(2));
}

ConcreteModel e3() {
  return ConcreteModel(GroundSet(3), PartialInjection(3, {{0, 2}}),
                       Partition(3, {{0, 1}, {2}}));
}

DiagonalElement diag(std::vector<Rational> v) { return DiagonalElement{std::move(v)}; }

}  // namespace

TEST_CASE("delta shifts values along sigma") {
  ConcreteModel m = e1();
  CHECK(delta_apply(m, diag({5, 7, 9})) == diag({0, 5, 7}));
  CHECK(delta_star_apply(m, diag({5, 7, 9}), 0) == diag({5, 7, 9}));
  CHECK(delta_star_apply(m, diag({5, 7, 9}), 1) == diag({7, 9, 0}));
  CHECK(delta_star_apply(m, diag({5, 7, 9}), 2) == diag({9, 0, 0}));
  CHECK(delta_star_apply(m, diag({5, 7, 9}), 3) == DiagonalElement::zero(3));

  ConcreteModel cyc = e2();
  CHECK(delta_apply(cyc, diag({1, 2})) == diag({2, 1}));
  CHECK(delta_star_apply(cyc, diag({1, 2}), 1) == diag({2, 1}));
  CHECK(delta_star_apply(cyc, diag({1, 2}), 2) == diag({1, 2}));

  CHECK_THROWS_AS(delta_apply(m, diag({1})), std::invalid_argument);
  CHECK_THROWS_AS(delta_star_apply(m, diag({1, 2, 3}), -1), std::invalid_argument);
}

TEST_CASE("atoms of a singleton partition are the singletons") {
  AtomPartition ap = coefficient_atoms(e1());
  CHECK(ap.atoms == Partition::singletons(3));
  CHECK(ap.generation_depth == 1);
}

TEST_CASE("atoms split the merged block in one refinement round") {
  AtomPartition ap = coefficient_atoms(e3());
  CHECK(ap.atoms == Partition::singletons(3));
  CHECK(ap.generation_depth == 2);
}

TEST_CASE("atoms can stay coarse when sigma respects the blocks") {
  ConcreteModel m(GroundSet(4), PartialInjection(4, {{0, 2}, {1, 3}}),
                  Partition(4, {{0, 1}, {2, 3}}));
  AtomPartition ap = coefficient_atoms(m);
  CHECK(ap.atoms == m.partition);
  CHECK(ap.generation_depth == 1);

  OracleSpectrum spec = character_sequences(m);
  CHECK(spec.sequences == std::vector<Seq>{Seq::finite({0, 1}), Seq::finite({1})});

  // Here the oracle characters coincide with the predicted hat chains.
  AbstractPDS pds = induced_system(m);
  SpectrumDescription d = predicted_spectrum(pds, delta_ladder(pds));
  std::vector<Seq> predicted;
  for (const auto& [n, chains] : d.hat.levels)
    predicted.insert(predicted.end(), chains.begin(), chains.end());
  std::sort(predicted.begin(), predicted.end());
  std::vector<Seq> oracle = spec.sequences;
  std::sort(oracle.begin(), oracle.end());
  CHECK(predicted == oracle);
}

TEST_CASE("character sequences of the truncated shift") {
  OracleSpectrum spec = character_sequences(e1());
  CHECK(spec.atoms.atoms == Partition::singletons(3));
  CHECK(spec.sequences == std::vector<Seq>{Seq::finite({0, 1, 2}),
                                           Seq::finite({1, 2}), Seq::finite({2})});
}

TEST_CASE("character sequences of the 2-cycle are periodic") {
  OracleSpectrum spec = character_sequences(e2());
  CHECK(spec.sequences ==
        std::vector<Seq>{Seq::infinite({}, {0, 1}), Seq::infinite({}, {1, 0})});
}

TEST_CASE("character sequences of the merged-block example") {
  OracleSpectrum spec = character_sequences(e3());
  // Coordinates are blocks of the model partition: B0_1 = 0, B2 = 1.
  CHECK(spec.sequences == std::vector<Seq>{Seq::finite({0, 1}), Seq::finite({0}),
                                           Seq::finite({1})});
}

TEST_CASE("coefficient sums evaluate exactly on atoms") {
  ConcreteModel m = e1();
  AtomPartition ap = coefficient_atoms(m);
  std::vector<DiagonalElement> ones(3, DiagonalElement::constant(3, Rational(1)));

  CHECK(evaluate_sum(m, ones, ap, 0) == Rational(3));
  CHECK(evaluate_sum(m, ones, ap, 1) == Rational(2));
  CHECK(evaluate_sum(m, ones, ap, 2) == Rational(1));

  std::vector<DiagonalElement> halves(2, DiagonalElement::constant(3, Rational(1, 2)));
  CHECK(evaluate_sum(m, halves, ap, 0) == Rational(1));
  CHECK(evaluate_sum(m, halves, ap, 2) == Rational(1, 2));

  CHECK(evaluate_sum(m, {}, ap, 0) == Rational(0));
  CHECK_THROWS_AS(evaluate_sum(m, ones, ap, 3), std::invalid_argument);
  CHECK_THROWS_AS(evaluate_sum(m, {diag({1, 2})}, ap, 0), std::invalid_argument);

  // Coefficients must come from A: an indicator splitting a block is out.
  ConcreteModel merged = e3();
  AtomPartition merged_ap = coefficient_atoms(merged);
  CHECK_THROWS_AS(
      evaluate_sum(merged, {DiagonalElement::indicator(3, {0})}, merged_ap, 0),
      std::invalid_argument);
  CHECK(evaluate_sum(merged, {DiagonalElement::indicator(3, {0, 1})}, merged_ap, 0) ==
        Rational(1));
}

TEST_CASE("coefficient axioms hold on the computed atoms") {
  for (const ConcreteModel& m : {e1(), e2(), e3()}) {
    CoefficientAxiomReport rep = check_coefficient_axioms(m, coefficient_atoms(m));
    CHECK(rep.all_ok());
    CHECK(rep.delta_invariance.witness.empty());
  }
}

TEST_CASE("the unrefined partition fails the transfer-invariance axiom") {
  ConcreteModel m = e3();
  AtomPartition coarse{m.partition, 0};
  CoefficientAxiomReport rep = check_coefficient_axioms(m, coarse);
  CHECK(rep.delta_invariance.ok);
  CHECK_FALSE(rep.delta_star_invariance.ok);
  CHECK(rep.delta_star_invariance.witness == "atom B2");
  CHECK_FALSE(rep.all_ok());
}

TEST_CASE("random models satisfy the axioms and the atom fixpoint") {
  ModelGenerator gen(97, 8, FuzzConfig::PartitionStrategy::RandomCompatible);
  for (int trial = 0; trial < 200; ++trial) {
    ConcreteModel m = gen.next();
    AtomPartition ap = coefficient_atoms(m);
    CHECK(ap.atoms.refines(m.partition));
    CHECK(check_coefficient_axioms(m, ap).all_ok());

    // The atoms are a fixpoint: refining the refined model changes nothing.
    ConcreteModel refined(m.ground, m.sigma, ap.atoms);
    AtomPartition again = coefficient_atoms(refined);
    CHECK(again.atoms == ap.atoms);
    CHECK(again.generation_depth == 1);

    // Sequences are aligned with atoms and constant across each atom.
    OracleSpectrum spec = character_sequences(m);
    CHECK(static_cast<int>(spec.sequences.size()) == ap.atoms.block_count());
  }
}
