#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "coeffspec/model.hpp"
#include "coeffspec/verify.hpp"

using namespace coeffspec;

namespace {

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

}  // namespace

TEST_CASE("ground set rejects non-positive sizes") {
  CHECK_THROWS_AS(GroundSet(0), ModelError);
  CHECK_THROWS_AS(GroundSet(-2), ModelError);
  CHECK(GroundSet(1).size == 1);
}

TEST_CASE("partial injection construction is strict") {
  CHECK_THROWS_AS(PartialInjection(3, {{0, 1}, {0, 2}}), ModelError);  // dup source
  CHECK_THROWS_AS(PartialInjection(3, {{0, 1}, {2, 1}}), ModelError);  // dup target
  CHECK_THROWS_AS(PartialInjection(3, {{3, 0}}), ModelError);          // source range
  CHECK_THROWS_AS(PartialInjection(3, {{0, 3}}), ModelError);          // target range
  CHECK_THROWS_AS(PartialInjection(0, {}), ModelError);
}

TEST_CASE("partial injection powers and ranges on the truncated shift") {
  PartialInjection s(3, {{0, 1}, {1, 2}});
  CHECK(s.apply(0) == 1);
  CHECK(s.apply(2) == std::nullopt);
  CHECK(s.preimage(1) == 0);
  CHECK(s.preimage(0) == std::nullopt);
  CHECK(s.apply_power(0, 0) == 0);
  CHECK(s.apply_power(0, 2) == 2);
  CHECK(s.apply_power(0, 3) == std::nullopt);
  CHECK(s.preimage_power(2, 2) == 0);
  CHECK(s.domain() == IndexSet{0, 1});
  CHECK(s.range() == IndexSet{1, 2});
  CHECK(s.power_domain(2) == IndexSet{0});
  CHECK(s.power_range(2) == IndexSet{2});
  CHECK(s.power_domain(3).empty());
  CHECK(s.power_domain(0) == IndexSet{0, 1, 2});
  CHECK_FALSE(s.is_total());
  CHECK_FALSE(s.is_onto());
  CHECK_FALSE(s.is_empty());
  CHECK(s.pairs() == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}});
  CHECK(PartialInjection::empty(2).is_empty());
  CHECK(PartialInjection::identity(2).is_total());
  CHECK(PartialInjection::identity(2).is_onto());
}

TEST_CASE("partition canonical form") {
  CHECK_THROWS_AS(Partition(3, {{0, 1}}), ModelError);          // misses 2
  CHECK_THROWS_AS(Partition(3, {{0, 1}, {1, 2}}), ModelError);  // overlap
  CHECK_THROWS_AS(Partition(3, {{1, 0}, {2}}), ModelError);     // block unsorted
  CHECK_THROWS_AS(Partition(3, {{0}, {}, {1, 2}}), ModelError); // empty block
  CHECK_THROWS_AS(Partition(3, {{0}, {1, 3}}), ModelError);     // out of range

  // Block order is canonicalized by least element.
  Partition p(4, {{2, 3}, {0, 1}});
  CHECK(p.block_count() == 2);
  CHECK(p.block(0) == IndexSet{0, 1});
  CHECK(p.block(1) == IndexSet{2, 3});
  CHECK(p.block_of(3) == 1);
  CHECK(p.label(0) == "B0_1");
  CHECK(p.label(1) == "B2_3");
  CHECK(p == Partition(4, {{0, 1}, {2, 3}}));
}

TEST_CASE("partition from assignment and refinement order") {
  Partition p = Partition::from_assignment({7, 7, 3, 7});
  CHECK(p.block_count() == 2);
  CHECK(p.block(0) == IndexSet{0, 1, 3});
  CHECK(p.block(1) == IndexSet{2});

  Partition fine = Partition::singletons(4);
  Partition coarse(4, {{0, 1, 2, 3}});
  CHECK(fine.refines(coarse));
  CHECK_FALSE(coarse.refines(fine));
  CHECK(fine.refines(fine));
  CHECK(p.refines(coarse));
  CHECK_FALSE(p.refines(Partition(4, {{0, 1}, {2, 3}})));
}

TEST_CASE("refine_by_key splits blocks along key classes only") {
  Partition coarse(4, {{0, 1, 2, 3}});
  Partition split = coarse.refine_by_key([](int j) { return static_cast<long long>(j % 2); });
  CHECK(split == Partition(4, {{0, 2}, {1, 3}}));
  // Keys are only compared inside a block: equal keys across different
  // blocks must not merge them.
  Partition two(4, {{0, 1}, {2, 3}});
  Partition same = two.refine_by_key([](int) { return 0LL; });
  CHECK(same == two);
}

TEST_CASE("diagonal elements are exact") {
  DiagonalElement a{{Rational(1, 2), Rational(1, 3)}};
  DiagonalElement b{{Rational(1, 2), Rational(2, 3)}};
  CHECK((a + b).values == std::vector<Rational>{Rational(1), Rational(1)});
  CHECK((a * b).values == std::vector<Rational>{Rational(1, 4), Rational(2, 9)});
  CHECK(DiagonalElement::indicator(3, {0, 2}).values ==
        std::vector<Rational>{Rational(1), Rational(0), Rational(1)});
  CHECK(DiagonalElement::constant(2, Rational(5)).values ==
        std::vector<Rational>{Rational(5), Rational(5)});

  Partition p(3, {{0, 1}, {2}});
  CHECK(DiagonalElement{{Rational(4), Rational(4), Rational(9)}}.in_algebra(p));
  CHECK_FALSE(DiagonalElement{{Rational(4), Rational(5), Rational(9)}}.in_algebra(p));
}

TEST_CASE("model construction checks cross sizes") {
  CHECK_THROWS_AS(ConcreteModel(GroundSet(3), PartialInjection::empty(2),
                                Partition::singletons(3)),
                  ModelError);
  CHECK_THROWS_AS(ConcreteModel(GroundSet(3), PartialInjection::empty(3),
                                Partition::singletons(2)),
                  ModelError);
}

TEST_CASE("validation of the three concrete examples") {
  ValidationReport r1 = validate_concrete(e1());
  CHECK(r1.model_valid());
  CHECK(r1.all_ok());

  ValidationReport r2 = validate_concrete(e2());
  CHECK(r2.all_ok());

  // dom(sigma) = {0} splits the block {0,1}: the model stays usable but
  // the domain projection is outside the algebra.
  ValidationReport r3 = validate_concrete(e3());
  CHECK(r3.model_valid());
  CHECK_FALSE(r3.all_ok());
  CHECK_FALSE(r3.domain_projection_in_algebra.ok);
  CHECK(r3.domain_projection_in_algebra.witness ==
        "dom(sigma) is not a union of blocks");
  CHECK(r3.delta_compatibility.ok);
}

TEST_CASE("delta incompatibility is detected with a witness") {
  // range(sigma) = {0} splits the only block {0,1}.
  ConcreteModel bad(GroundSet(2), PartialInjection(2, {{0, 0}}), Partition(2, {{0, 1}}));
  ValidationReport r = validate_concrete(bad);
  CHECK_FALSE(r.delta_compatibility.ok);
  CHECK_FALSE(r.delta_compatibility.witness.empty());
  CHECK_FALSE(r.model_valid());
  CHECK_THROWS_AS(require_valid(bad), std::invalid_argument);
}

TEST_CASE("preimage straddling blocks breaks delta compatibility") {
  // The block {2,3} pulls back to {0,1}, which straddles the two blocks
  // {0} and {1}, so delta of its indicator leaves the algebra.
  ConcreteModel bad(GroundSet(4), PartialInjection(4, {{0, 2}, {1, 3}}),
                    Partition(4, {{0}, {1}, {2, 3}}));
  ValidationReport r = validate_concrete(bad);
  CHECK_FALSE(r.delta_compatibility.ok);
}

TEST_CASE("domain union of blocks flag") {
  CHECK(domain_is_union_of_blocks(e1()));
  CHECK(domain_is_union_of_blocks(e2()));
  CHECK_FALSE(domain_is_union_of_blocks(e3()));
}

TEST_CASE("extension to A1 absorbs the domain projection") {
  ConcreteModel ext = extend_to_A1(e3());
  CHECK(ext.partition == Partition::singletons(3));
  CHECK(domain_is_union_of_blocks(ext));
  CHECK(validate_concrete(ext).all_ok());

  // Models that already contain U*U are untouched.
  CHECK(extend_to_A1(e1()).partition == e1().partition);
  CHECK(extend_to_A1(e2()).partition == e2().partition);

  // Extending twice changes nothing further.
  ConcreteModel twice = extend_to_A1(ext);
  CHECK(twice.partition == ext.partition);
}

TEST_CASE("operator classification") {
  CHECK(classify_operator(e1()) == OperatorClass::ProperPartial);
  CHECK(classify_operator(e2()) == OperatorClass::Unitary);
  CHECK(classify_operator(ConcreteModel(GroundSet(2), PartialInjection::empty(2),
                                        Partition::singletons(2))) == OperatorClass::Zero);
  CHECK(classify_operator(ConcreteModel(GroundSet(2), PartialInjection::identity(2),
                                        Partition::singletons(2))) ==
        OperatorClass::Unitary);
  CHECK(to_string(OperatorClass::ProperPartial) == "proper-partial");
}

TEST_CASE("random generated models satisfy the standing hypotheses") {
  ModelGenerator gen(99, 9, FuzzConfig::PartitionStrategy::RandomCompatible);
  for (int i = 0; i < 200; ++i) {
    ConcreteModel m = gen.next();
    ValidationReport r = validate_concrete(m);
    CHECK(r.model_valid());
    ConcreteModel ext = extend_to_A1(m);
    CHECK(domain_is_union_of_blocks(ext));
    CHECK(ext.partition.refines(m.partition));
    CHECK(validate_concrete(ext).all_ok());
  }
}

TEST_CASE("generator is deterministic per seed") {
  ModelGenerator a(1234, 6, FuzzConfig::PartitionStrategy::RandomCompatible);
  ModelGenerator b(1234, 6, FuzzConfig::PartitionStrategy::RandomCompatible);
  for (int i = 0; i < 50; ++i) {
    ConcreteModel ma = a.next();
    ConcreteModel mb = b.next();
    CHECK(ma.ground.size == mb.ground.size);
    CHECK(ma.sigma == mb.sigma);
    CHECK(ma.partition == mb.partition);
  }
}
