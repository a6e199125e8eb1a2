#ifndef COEFFSPEC_MODEL_HPP
#define COEFFSPEC_MODEL_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "coeffspec/rational.hpp"
#include "coeffspec/sets.hpp"

namespace coeffspec {

/// Structural malformation of a model (index out of range, duplicate
/// sigma source/target, broken partition). Distinct from a failed
/// validation verdict: a verdict describes a well-formed model that
/// fails a hypothesis, this exception describes garbage input.
class ModelError : public std::runtime_error {
 public:
  explicit ModelError(const std::string& what) : std::runtime_error(what) {}
};

/// Index range 0..size-1, standing for an orthonormal basis of a
/// finite-dimensional space.
struct GroundSet {
  int size = 1;

  explicit GroundSet(int n) : size(n) {
    if (n < 1) throw ModelError("ground set size must be >= 1");
  }
};

/// A partial injection sigma on {0,...,size-1}. Encodes the operator U
/// via U e_j = e_{sigma(j)} on the domain and U e_j = 0 off it; U* is
/// the inverse injection. U U* is the 0/1 diagonal indicator of the
/// range, U* U of the domain.
class PartialInjection {
 public:
  PartialInjection(int size, const std::vector<std::pair<int, int>>& pairs);

  static PartialInjection empty(int size) { return PartialInjection(size, {}); }
  static PartialInjection identity(int size);

  int size() const { return static_cast<int>(to_.size()); }

  std::optional<int> apply(int j) const;
  std::optional<int> preimage(int k) const;

  /// sigma^n applied to j; n = 0 is the identity.
  std::optional<int> apply_power(int j, int n) const;
  std::optional<int> preimage_power(int k, int n) const;

  IndexSet domain() const;
  IndexSet range() const;
  IndexSet power_domain(int n) const;  // dom(sigma^n)
  IndexSet power_range(int n) const;   // range(sigma^n)

  bool is_total() const;
  bool is_onto() const;
  bool is_empty() const;

  /// Pairs (source, target) sorted by source; the canonical listing.
  std::vector<std::pair<int, int>> pairs() const;

  bool operator==(const PartialInjection& o) const { return to_ == o.to_; }

 private:
  std::vector<int> to_;    // -1 = outside the domain
  std::vector<int> from_;  // inverse; -1 = outside the range
};

/// Disjoint nonempty blocks covering 0..size-1. Canonical form: each
/// block sorted ascending, blocks ordered by least element. A block is
/// one maximal ideal (character) of the diagonal algebra attached to it.
class Partition {
 public:
  Partition(int ground_size, std::vector<IndexSet> blocks);

  static Partition singletons(int ground_size);
  /// Rebuild from a per-index label vector (labels arbitrary ints).
  static Partition from_assignment(const std::vector<int>& label);

  int ground_size() const { return static_cast<int>(block_of_.size()); }
  int block_count() const { return static_cast<int>(blocks_.size()); }
  const std::vector<IndexSet>& blocks() const { return blocks_; }
  const IndexSet& block(int b) const { return blocks_.at(b); }
  int block_of(int j) const { return block_of_.at(j); }

  /// Display id of a block: "B" + elements joined by "_", e.g. "B0_1".
  std::string label(int b) const;

  /// True if every block of *this lies inside a single block of
  /// `other`, i.e. *this is the finer partition.
  bool refines(const Partition& other) const;

  /// Split every block along key equality; key(j) == key(k) keeps j,k
  /// together. Result is canonical.
  template <typename KeyFn>
  Partition refine_by_key(KeyFn key) const {
    std::vector<int> lab(block_of_.size());
    std::vector<std::pair<long long, int>> seen;  // (key, fresh label) per block
    int next = 0;
    for (const auto& blk : blocks_) {
      seen.clear();
      for (int j : blk) {
        long long k = key(j);
        int lj = -1;
        for (auto& [kk, ll] : seen)
          if (kk == k) { lj = ll; break; }
        if (lj < 0) { lj = next++; seen.emplace_back(k, lj); }
        lab[j] = lj;
      }
    }
    return from_assignment(lab);
  }

  bool operator==(const Partition& o) const { return blocks_ == o.blocks_; }

 private:
  std::vector<IndexSet> blocks_;
  std::vector<int> block_of_;
};

/// A diagonal operator given by its exact diagonal. Membership in the
/// algebra of a partition means being constant on each block.
struct DiagonalElement {
  std::vector<Rational> values;

  static DiagonalElement zero(int n) { return {std::vector<Rational>(static_cast<size_t>(n), Rational(0))}; }
  static DiagonalElement constant(int n, const Rational& c) { return {std::vector<Rational>(static_cast<size_t>(n), c)}; }
  static DiagonalElement indicator(int n, const IndexSet& support);

  int size() const { return static_cast<int>(values.size()); }
  bool in_algebra(const Partition& p) const;

  DiagonalElement operator*(const DiagonalElement& o) const;
  DiagonalElement operator+(const DiagonalElement& o) const;
  bool operator==(const DiagonalElement& o) const { return values == o.values; }
};

/// The standing pair (A, U) in finite concrete form: A is the diagonal
/// algebra of `partition`, U the partial permutation of `sigma`.
struct ConcreteModel {
  GroundSet ground;
  PartialInjection sigma;
  Partition partition;

  ConcreteModel(GroundSet g, PartialInjection s, Partition p);
};

struct CheckResult {
  bool ok = true;
  std::string witness;  // nonempty iff !ok
};

/// Verdicts for the standing hypotheses. `domain_projection_in_algebra`
/// (U*U in A) is informational: it selects the equality-vs-extension
/// route and is allowed to be false on a usable model.
struct ValidationReport {
  CheckResult partial_isometry;             // (UU*)^2 = UU*
  CheckResult power_partial_isometry;       // each U^n, n <= size
  CheckResult delta_compatibility;          // delta(A) subset of A
  CheckResult domain_projection_commutes;   // U*U in A'
  CheckResult domain_projection_in_algebra; // U*U in A
  CheckResult intertwining;                 // U a = delta(a) U on block indicators

  bool model_valid() const {
    return partial_isometry.ok && power_partial_isometry.ok &&
           delta_compatibility.ok && domain_projection_commutes.ok &&
           intertwining.ok;
  }
  bool all_ok() const { return model_valid() && domain_projection_in_algebra.ok; }
};

enum class OperatorClass { Zero, Isometry, Coisometry, Unitary, ProperPartial };

std::string to_string(OperatorClass c);

ValidationReport validate_concrete(const ConcreteModel& model);

/// Throws std::invalid_argument unless validate_concrete reports valid.
void require_valid(const ConcreteModel& model);

/// Refine the partition by dom(sigma), i.e. pass to A1 = <A, U*U>.
/// Identity on models that already have U*U in A.
ConcreteModel extend_to_A1(const ConcreteModel& model);

OperatorClass classify_operator(const ConcreteModel& model);

/// dom(sigma) is a union of blocks, the Gelfand form of U*U in A.
bool domain_is_union_of_blocks(const ConcreteModel& model);

}  // namespace coeffspec

#endif  // COEFFSPEC_MODEL_HPP
