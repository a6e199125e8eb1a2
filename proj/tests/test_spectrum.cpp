#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "coeffspec/spectrum.hpp"
#include "test_util.hpp"

using namespace coeffspec;

namespace {

using Seq = CharacterSeq;
using Chains = std::vector<CharacterSeq>;

AbstractPDS shift_pds() {
  return induced_system(ConcreteModel(GroundSet(3),
                                      PartialInjection(3, {{0, 1}, {1, 2}}),
                                      Partition::singletons(3)));
}

AbstractPDS cycle_pds() {
  return induced_system(ConcreteModel(GroundSet(2),
                                      PartialInjection(2, {{0, 1}, {1, 0}}),
                                      Partition::singletons(2)));
}

AbstractPDS merged_pds() {
  return induced_system(ConcreteModel(GroundSet(3), PartialInjection(3, {{0, 2}}),
                                      Partition(3, {{0, 1}, {2}})));
}

AbstractPDS two_point_pds() { return AbstractPDS({"a", "b"}, {0, 1}, {0, 0}); }

SpectrumDescription spectrum_of(const AbstractPDS& pds) {
  return upper_spectrum(pds, delta_ladder(pds));
}

}  // namespace

TEST_CASE("character sequences are canonical") {
  Seq s = Seq::finite({0, 1, 2});
  CHECK(s.is_finite());
  CHECK(s.length_index() == 2);
  CHECK(s.chain() == std::vector<int>{0, 1, 2});
  CHECK(s.at(0) == 0);
  CHECK(s.at(2) == 2);
  CHECK(s.at(3) == std::nullopt);
  CHECK(s.at(-1) == std::nullopt);
  CHECK_THROWS_AS(s.period(), std::logic_error);

  Seq t = Seq::infinite({2}, {0, 1, 0, 1});
  CHECK_FALSE(t.is_finite());
  CHECK(t.preperiod() == std::vector<int>{2});
  CHECK(t.period() == std::vector<int>{0, 1});  // primitive root
  CHECK(t.at(0) == 2);
  CHECK(t.at(1) == 0);
  CHECK(t.at(2) == 1);
  CHECK(t.at(100) == 1);
  CHECK(t.expand(5) == std::vector<int>{2, 0, 1, 0, 1});
  CHECK_THROWS_AS(t.length_index(), std::logic_error);
  CHECK_THROWS_AS(t.chain(), std::logic_error);

  // A preperiod that already follows the cycle is absorbed into it.
  CHECK(Seq::infinite({0, 1}, {0, 1}) == Seq::infinite({}, {0, 1}));
  CHECK(Seq::infinite({1, 0}, {1, 0}) == Seq::infinite({}, {1, 0}));
  CHECK(Seq::infinite({0}, {1, 0}) == Seq::infinite({}, {0, 1}));
  CHECK(Seq::infinite({}, {0, 1}) != Seq::infinite({}, {1, 0}));
  CHECK(Seq::finite({0}) != Seq::infinite({}, {0}));

  CHECK_THROWS_AS(Seq::finite({}), std::invalid_argument);
  CHECK_THROWS_AS(Seq::infinite({0}, {}), std::invalid_argument);
}

TEST_CASE("chains grow from roots by iterating alpha") {
  AbstractPDS pds = shift_pds();
  CHECK(chain_from_root(pds, 2, 0).chain() == std::vector<int>{2});
  CHECK(chain_from_root(pds, 2, 2).chain() == std::vector<int>{0, 1, 2});

  try {
    chain_from_root(pds, 2, 3);
    FAIL("root outside Delta_3 must throw");
  } catch (const ChainRootError& e) {
    CHECK(e.depth() == 2);
  }
  try {
    chain_from_root(pds, 0, 1);
    FAIL("root outside Delta_1 must throw");
  } catch (const ChainRootError& e) {
    CHECK(e.depth() == 0);
  }
  CHECK_THROWS_AS(chain_from_root(pds, 9, 0), std::invalid_argument);
  CHECK_THROWS_AS(chain_from_root(pds, 0, -1), std::invalid_argument);
}

TEST_CASE("spectrum of the truncated shift") {
  SpectrumDescription d = spectrum_of(shift_pds());

  CHECK(d.hat.tail_from == 3);
  CHECK(d.hat.levels.at(0) == Chains{Seq::finite({2})});
  CHECK(d.hat.levels.at(1) == Chains{Seq::finite({1, 2})});
  CHECK(d.hat.levels.at(2) == Chains{Seq::finite({0, 1, 2})});
  CHECK(d.hat.tail_roots.empty());
  CHECK(d.hat.infinite.empty());

  REQUIRE(d.upper.has_value());
  CHECK(d.upper->levels.at(0) ==
        Chains{Seq::finite({0}), Seq::finite({1}), Seq::finite({2})});
  CHECK(d.upper->levels.at(1) == Chains{Seq::finite({0, 1}), Seq::finite({1, 2})});
  CHECK(d.upper->levels.at(2) == Chains{Seq::finite({0, 1, 2})});
  CHECK(d.upper->tail_roots.empty());
  CHECK(d.upper->infinite.empty());
}

TEST_CASE("spectrum of the 2-cycle") {
  SpectrumDescription d = spectrum_of(cycle_pds());

  // Every finite chain extends, so the hat families are empty and the
  // whole space is the two periodic chains.
  CHECK(d.hat.tail_from == 1);
  CHECK(d.hat.levels.at(0).empty());
  CHECK(d.hat.tail_roots.empty());
  CHECK(d.hat.infinite ==
        Chains{Seq::infinite({}, {0, 1}), Seq::infinite({}, {1, 0})});

  CHECK(d.upper->levels.at(0) == Chains{Seq::finite({0}), Seq::finite({1})});
  CHECK(d.upper->tail_roots == IndexSet{0, 1});
  CHECK(d.upper->infinite == d.hat.infinite);
}

TEST_CASE("spectrum of the merged-block example") {
  SpectrumDescription d = spectrum_of(merged_pds());

  CHECK(d.hat.tail_from == 2);
  CHECK(d.hat.levels.at(0) == Chains{Seq::finite({1})});
  CHECK(d.hat.levels.at(1) == Chains{Seq::finite({0, 1})});
  CHECK(d.hat.tail_roots.empty());
  CHECK(d.hat.infinite.empty());

  CHECK(d.upper->levels.at(0) == Chains{Seq::finite({0}), Seq::finite({1})});
  CHECK(d.upper->levels.at(1) == Chains{Seq::finite({0, 1})});
}

TEST_CASE("spectrum of the abstract two-point system") {
  AbstractPDS pds = two_point_pds();
  SpectrumDescription d = spectrum_of(pds);

  CHECK(d.hat.tail_from == 1);
  CHECK(d.hat.levels.at(0) == Chains{Seq::finite({1})});
  CHECK(d.hat.tail_roots == IndexSet{1});  // b roots a chain at every level
  CHECK(d.hat.infinite == Chains{Seq::infinite({}, {0})});

  CHECK(d.upper->tail_roots == IndexSet{0, 1});

  SpectrumFamilies wide = expand_levels(pds, d.hat, 3);
  CHECK(wide.tail_from == 4);
  CHECK(wide.levels.at(1) == Chains{Seq::finite({0, 1})});
  CHECK(wide.levels.at(2) == Chains{Seq::finite({0, 0, 1})});
  CHECK(wide.levels.at(3) == Chains{Seq::finite({0, 0, 0, 1})});
  CHECK(wide.tail_roots == d.hat.tail_roots);
  // Expanding below the current tail is a no-op.
  CHECK(expand_levels(pds, d.hat, 0) == d.hat);
}

TEST_CASE("expanded levels of the 2-cycle enumerate both roots per level") {
  AbstractPDS pds = cycle_pds();
  SpectrumFamilies up = expand_levels(pds, spectrum_of(pds).upper.value(), 2);
  CHECK(up.levels.at(1) == Chains{Seq::finite({0, 1}), Seq::finite({1, 0})});
  CHECK(up.levels.at(2) == Chains{Seq::finite({0, 1, 0}), Seq::finite({1, 0, 1})});
  CHECK(up.tail_from == 3);
}

TEST_CASE("neighborhoods compare coefficient values at one coordinate") {
  // Center: the constant chain (a,a,a,...); coefficient: indicator of b.
  NeighborhoodSpec spec;
  spec.center = Seq::infinite({}, {0});
  spec.coeffs = {{Rational(0), Rational(1)}};
  spec.epsilon = Rational(1, 2);

  spec.level = 0;
  CHECK(neighborhood_contains(spec, Seq::infinite({}, {0})));
  // (a,...,a,b) has coordinate a at level 0 once N >= 1.
  CHECK_FALSE(neighborhood_contains(spec, Seq::finite({1})));
  CHECK(neighborhood_contains(spec, Seq::finite({0, 1})));

  spec.level = 2;
  CHECK_FALSE(neighborhood_contains(spec, Seq::finite({0, 1})));  // no x_2
  CHECK(neighborhood_contains(spec, Seq::finite({0, 0, 0, 1})));

  // A wide epsilon stops separating a from b.
  spec.epsilon = Rational(2);
  CHECK(neighborhood_contains(spec, Seq::finite({0, 1, 1})));

  spec.epsilon = Rational(0);
  CHECK_THROWS_AS(neighborhood_contains(spec, Seq::finite({0})), std::invalid_argument);
  spec.epsilon = Rational(1, 2);
  spec.level = -1;
  CHECK_THROWS_AS(neighborhood_contains(spec, Seq::finite({0})), std::invalid_argument);
}

TEST_CASE("neighborhoods of a finite center live inside its own level") {
  NeighborhoodSpec spec;
  spec.center = Seq::finite({0, 1});
  spec.coeffs = {{Rational(1), Rational(0), Rational(0)}};
  spec.epsilon = Rational(1, 3);
  spec.level = 7;  // ignored for finite centers

  CHECK(neighborhood_contains(spec, Seq::finite({0, 1})));
  CHECK(neighborhood_contains(spec, Seq::finite({0, 2})));       // same value at x_1
  CHECK_FALSE(neighborhood_contains(spec, Seq::finite({1, 0})));  // differs at x_1
  CHECK_FALSE(neighborhood_contains(spec, Seq::finite({0, 1, 2})));  // wrong length
  CHECK_FALSE(neighborhood_contains(spec, Seq::finite({0})));
  CHECK_FALSE(neighborhood_contains(spec, Seq::infinite({}, {0, 1})));

  // No coefficients: the whole level is one neighborhood.
  spec.coeffs.clear();
  CHECK(neighborhood_contains(spec, Seq::finite({1, 0})));
  CHECK_FALSE(neighborhood_contains(spec, Seq::finite({1, 0, 1})));
}

TEST_CASE("the hat chains converge to the periodic chain coordinatewise") {
  AbstractPDS pds = two_point_pds();
  SpectrumDescription d = spectrum_of(pds);
  SpectrumFamilies wide = expand_levels(pds, d.hat, 50);

  NeighborhoodSpec spec;
  spec.center = d.hat.infinite.front();  // (a,a,a,...)
  spec.coeffs = {{Rational(0), Rational(1)}};
  spec.epsilon = Rational(1, 2);

  for (int n : {0, 1, 2, 3, 10}) {
    spec.level = n;
    for (int N = 0; N <= 50; ++N) {
      REQUIRE(wide.levels.at(N).size() == 1);
      const Seq& cN = wide.levels.at(N).front();
      CHECK(neighborhood_contains(spec, cN) == (N > n));
    }
  }
}

TEST_CASE("infinite chains match the backward tree search") {
  for (const AbstractPDS& pds :
       {shift_pds(), cycle_pds(), merged_pds(), two_point_pds()}) {
    DeltaLadder ladder = delta_ladder(pds);
    CHECK(predicted_spectrum(pds, ladder).hat.infinite ==
          testutil::tree_search_m_infinity(pds));
  }

  std::mt19937_64 rng(271828);
  for (int trial = 0; trial < 120; ++trial) {
    AbstractPDS pds = testutil::random_pds(rng, 10);
    DeltaLadder ladder = delta_ladder(pds);
    Chains predicted = predicted_spectrum(pds, ladder).hat.infinite;
    Chains searched = testutil::tree_search_m_infinity(pds);
    CHECK(predicted == searched);
    // Infinite chains are purely periodic and based at core points.
    for (const Seq& s : predicted) {
      CHECK(s.preperiod().empty());
      CHECK(set_contains(ladder.core, *s.at(0)));
    }
    CHECK(predicted.size() == ladder.core.size());
  }
}
