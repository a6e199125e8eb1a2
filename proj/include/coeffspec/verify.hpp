#ifndef COEFFSPEC_VERIFY_HPP
#define COEFFSPEC_VERIFY_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "coeffspec/model.hpp"
#include "coeffspec/oracle.hpp"
#include "coeffspec/spectrum.hpp"

namespace coeffspec {

enum class Verdict { Pass, Fail, NotApplicable };

std::string to_string(Verdict v);

/// Outcome of one theorem check. witness is nonempty exactly on Fail;
/// note explains a NotApplicable verdict.
struct TheoremReport {
  std::string theorem;
  Verdict verdict = Verdict::Pass;
  std::string witness;
  std::string note;
  std::map<std::string, long long> stats;

  bool failed() const { return verdict == Verdict::Fail; }
};

/// Injectivity of the atom -> sequence map, membership of every oracle
/// sequence in the unrestricted families, and zero-tail permanence.
TheoremReport verify_embedding(const ConcreteModel& model);

/// Every predicted chain (all hat families and the infinite chains) is
/// an oracle sequence.
TheoremReport verify_lower_bound(const ConcreteModel& model);

/// Exact two-sided match of predicted and oracle chain sets, plus
/// family disjointness. NotApplicable unless U*U is in A.
TheoremReport verify_equality(const ConcreteModel& model);

/// Equality after passing to A1, plus invariance of the atoms under the
/// extension. NotApplicable when U*U is already in A.
TheoremReport verify_via_extension(const ConcreteModel& model);

/// For isometries: alpha surjective, hat families empty, spectrum equal
/// to the infinite chains. NotApplicable unless dom(sigma) is everything.
TheoremReport verify_isometry_corollary(const ConcreteModel& model);

/// Intertwining on block indicators, monotonicity of both projection
/// families, and the Gelfand form of the Delta_n criterion.
TheoremReport verify_operator_identities(const ConcreteModel& model);

/// All six reports in a fixed order.
std::vector<TheoremReport> verify_all(const ConcreteModel& model);

struct FuzzConfig {
  enum class PartitionStrategy { Singletons, RandomCompatible };
  enum class Granularity { Summary, PerModel };

  int count = 100;
  int max_size = 8;
  std::uint64_t seed = 0;
  PartitionStrategy strategy = PartitionStrategy::RandomCompatible;
  Granularity granularity = Granularity::Summary;
};

struct TheoremTally {
  long long pass = 0;
  long long fail = 0;
  long long not_applicable = 0;
};

struct FuzzReport {
  FuzzConfig config;
  int models_run = 0;
  int singleton_fallbacks = 0;
  std::map<std::string, TheoremTally> tallies;
  // Strictness bookkeeping: how often the oracle sits strictly inside
  // the unrestricted families, strictly above the predicted ones, or both.
  long long upper_strict_models = 0;
  long long lower_strict_models = 0;
  long long both_strict_models = 0;
  std::optional<ConcreteModel> both_strict_example;
  std::optional<ConcreteModel> minimal_failure;
  std::vector<std::string> minimal_failure_theorems;
  std::vector<std::string> model_lines;

  bool all_passed() const;
};

/// Deterministic stream of random models from the seed; runs the whole
/// verify_all suite on each and aggregates. Failing models are shrunk by
/// dropping sigma pairs before being recorded.
FuzzReport fuzz(const FuzzConfig& config);

/// The model generator behind fuzz(), exposed for reuse in tests.
class ModelGenerator {
 public:
  ModelGenerator(std::uint64_t seed, int max_size, FuzzConfig::PartitionStrategy strategy);
  ConcreteModel next(bool* used_singleton_fallback = nullptr);

 private:
  std::mt19937_64 rng_;
  int max_size_;
  FuzzConfig::PartitionStrategy strategy_;

  int bounded(int n);  // uniform draw from [0, n), bias-free
};

}  // namespace coeffspec

#endif  // COEFFSPEC_VERIFY_HPP
