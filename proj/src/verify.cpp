#include "coeffspec/verify.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "coeffspec/oracle.hpp"
#include "coeffspec/pds.hpp"

namespace coeffspec {

namespace {

std::string seq_str(const AbstractPDS& pds, const CharacterSeq& s) {
  std::ostringstream out;
  auto names = [&](const std::vector<int>& xs) {
    std::string t = "(";
    for (size_t i = 0; i < xs.size(); ++i) {
      if (i) t += ",";
      t += pds.points.at(static_cast<size_t>(xs[i]));
    }
    return t + ")";
  };
  if (s.is_finite()) {
    out << names(s.chain());
  } else {
    out << "pre=" << names(s.preperiod()) << " per=" << names(s.period());
  }
  return out.str();
}

std::string set_str(const AbstractPDS& pds, const IndexSet& xs) {
  std::string t = "{";
  for (size_t i = 0; i < xs.size(); ++i) {
    if (i) t += ",";
    t += pds.points.at(static_cast<size_t>(xs[i]));
  }
  return t + "}";
}

void fail(TheoremReport& r, const std::string& witness) {
  if (r.verdict == Verdict::Fail) return;  // keep the first witness
  r.verdict = Verdict::Fail;
  r.witness = witness;
}

std::vector<CharacterSeq> materialized_chains(const SpectrumFamilies& fam) {
  std::vector<CharacterSeq> all;
  for (const auto& [n, chains] : fam.levels)
    all.insert(all.end(), chains.begin(), chains.end());
  all.insert(all.end(), fam.infinite.begin(), fam.infinite.end());
  return all;
}

// Chain property and ladder membership for one sequence; empty string on
// success, else a witness.
std::string check_chain_shape(const AbstractPDS& pds, const DeltaLadder& ladder,
                              const CharacterSeq& s) {
  const IndexSet& core = ladder.core;
  if (s.is_finite()) {
    const auto& c = s.chain();
    for (size_t n = 0; n < c.size(); ++n) {
      if (!set_contains(ladder.delta(static_cast<long long>(n)), c[n]))
        return "coordinate " + std::to_string(n) + " of " + seq_str(pds, s) +
               " is outside its ladder set";
      if (n > 0) {
        auto up = pds.apply(c[n]);
        if (!up || *up != c[n - 1])
          return "broken chain step " + std::to_string(n) + " in " + seq_str(pds, s);
      }
    }
  } else {
    int count = static_cast<int>(s.preperiod().size() + 2 * s.period().size()) + 1;
    std::vector<int> c = s.expand(count);
    for (size_t n = 0; n < c.size(); ++n) {
      if (!set_contains(core, c[n]))
        return "coordinate " + std::to_string(n) + " of " + seq_str(pds, s) +
               " leaves the core";
      if (n > 0) {
        auto up = pds.apply(c[n]);
        if (!up || *up != c[n - 1])
          return "broken chain step " + std::to_string(n) + " in " + seq_str(pds, s);
      }
    }
  }
  return "";
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::NotApplicable: return "not-applicable";
  }
  return "?";
}

TheoremReport verify_embedding(const ConcreteModel& model) {
  require_valid(model);
  TheoremReport r;
  r.theorem = "embedding";

  OracleSpectrum oracle = character_sequences(model);
  AbstractPDS pds = induced_system(model);
  DeltaLadder ladder = delta_ladder(pds);

  long long finite_n = 0, infinite_n = 0;
  for (const auto& s : oracle.sequences) (s.is_finite() ? finite_n : infinite_n)++;
  r.stats["atoms"] = static_cast<long long>(oracle.sequences.size());
  r.stats["finite_sequences"] = finite_n;
  r.stats["infinite_sequences"] = infinite_n;

  // Injectivity: distinct atoms give distinct characters.
  std::set<CharacterSeq> seen;
  for (size_t i = 0; i < oracle.sequences.size(); ++i) {
    if (!seen.insert(oracle.sequences[i]).second) {
      size_t first = 0;
      while (!(oracle.sequences[first] == oracle.sequences[i])) ++first;
      fail(r, "atoms " + oracle.atoms.atoms.label(static_cast<int>(first)) + " and " +
                  oracle.atoms.atoms.label(static_cast<int>(i)) +
                  " share the character sequence " + seq_str(pds, oracle.sequences[i]));
    }
  }

  // Every character lands in the unrestricted families: a finite one is
  // a backward chain with root in Delta_N, an infinite one lives in the
  // core; both must satisfy the chain property.
  for (const auto& s : oracle.sequences) {
    std::string w = check_chain_shape(pds, ladder, s);
    if (!w.empty()) fail(r, w);
  }

  // Zero-tail permanence in the matrix model: once delta_*^n kills an
  // atom it stays dead.
  for (size_t i = 0; i < oracle.sequences.size(); ++i) {
    const auto& s = oracle.sequences[i];
    if (!s.is_finite()) continue;
    int rep = oracle.atoms.atoms.block(static_cast<int>(i)).front();
    int n_len = s.length_index();
    for (int n = 0; n <= n_len; ++n) {
      if (!model.sigma.apply_power(rep, n))
        fail(r, "atom " + oracle.atoms.atoms.label(static_cast<int>(i)) +
                    " dies at power " + std::to_string(n) +
                    " although its sequence reaches index " + std::to_string(n_len));
    }
    for (int n = n_len + 1; n <= n_len + model.ground.size + 1; ++n) {
      if (model.sigma.apply_power(rep, n))
        fail(r, "atom " + oracle.atoms.atoms.label(static_cast<int>(i)) +
                    " revives at power " + std::to_string(n) +
                    " after its zero tail began at " + std::to_string(n_len + 1));
    }
  }

  return r;
}

TheoremReport verify_lower_bound(const ConcreteModel& model) {
  require_valid(model);
  TheoremReport r;
  r.theorem = "lower_bound";

  OracleSpectrum oracle = character_sequences(model);
  AbstractPDS pds = induced_system(model);
  DeltaLadder ladder = delta_ladder(pds);
  SpectrumDescription spec = predicted_spectrum(pds, ladder);

  std::set<CharacterSeq> characters(oracle.sequences.begin(), oracle.sequences.end());

  long long predicted_finite = 0;
  for (const auto& [n, chains] : spec.hat.levels) {
    predicted_finite += static_cast<long long>(chains.size());
    for (const auto& c : chains) {
      if (!characters.count(c))
        fail(r, "predicted chain " + seq_str(pds, c) + " at level " + std::to_string(n) +
                    " is not a character of the coefficient algebra");
    }
  }
  if (!spec.hat.tail_roots.empty())
    fail(r, "hat families stay nonempty from level " + std::to_string(spec.hat.tail_from) +
                " on (roots " + set_str(pds, spec.hat.tail_roots) +
                "), which a finite character set cannot carry");
  for (const auto& c : spec.hat.infinite) {
    if (!characters.count(c))
      fail(r, "predicted infinite chain " + seq_str(pds, c) +
                  " is not a character of the coefficient algebra");
  }

  r.stats["predicted_finite"] = predicted_finite;
  r.stats["predicted_infinite"] = static_cast<long long>(spec.hat.infinite.size());
  r.stats["oracle_atoms"] = static_cast<long long>(oracle.sequences.size());
  return r;
}

TheoremReport verify_equality(const ConcreteModel& model) {
  require_valid(model);
  TheoremReport r;
  r.theorem = "equality";

  if (!domain_is_union_of_blocks(model)) {
    r.verdict = Verdict::NotApplicable;
    r.note = "the domain projection is outside the algebra; use the via_extension route";
    return r;
  }

  OracleSpectrum oracle = character_sequences(model);
  AbstractPDS pds = induced_system(model);
  DeltaLadder ladder = delta_ladder(pds);
  SpectrumDescription spec = predicted_spectrum(pds, ladder);

  if (!spec.hat.tail_roots.empty())
    fail(r, "hat families stay nonempty from level " + std::to_string(spec.hat.tail_from) +
                " on (roots " + set_str(pds, spec.hat.tail_roots) +
                "), so the predicted space is infinite while the algebra has finitely"
                " many characters");

  std::vector<CharacterSeq> predicted = materialized_chains(spec.hat);
  std::set<CharacterSeq> predicted_set(predicted.begin(), predicted.end());
  if (predicted_set.size() != predicted.size())
    fail(r, "predicted families overlap: some chain appears at two levels");

  std::set<CharacterSeq> characters(oracle.sequences.begin(), oracle.sequences.end());
  for (const auto& c : predicted)
    if (!characters.count(c))
      fail(r, "predicted chain " + seq_str(pds, c) + " is not a character");
  for (const auto& s : oracle.sequences)
    if (!predicted_set.count(s))
      fail(r, "character " + seq_str(pds, s) + " is outside the predicted spectrum");

  long long predicted_finite = 0;
  for (const auto& [n, chains] : spec.hat.levels)
    predicted_finite += static_cast<long long>(chains.size());
  r.stats["atoms"] = static_cast<long long>(oracle.sequences.size());
  r.stats["predicted_finite"] = predicted_finite;
  r.stats["predicted_infinite"] = static_cast<long long>(spec.hat.infinite.size());
  return r;
}

TheoremReport verify_via_extension(const ConcreteModel& model) {
  require_valid(model);
  TheoremReport r;
  r.theorem = "via_extension";

  if (domain_is_union_of_blocks(model)) {
    r.verdict = Verdict::NotApplicable;
    r.note = "the domain projection is already in the algebra; equality applies directly";
    return r;
  }

  ConcreteModel extended = extend_to_A1(model);
  TheoremReport inner = verify_equality(extended);
  if (inner.verdict == Verdict::NotApplicable)
    throw std::logic_error("extension failed to absorb the domain projection");
  if (inner.verdict == Verdict::Fail)
    fail(r, "equality over the extended algebra failed: " + inner.witness);

  // The coefficient algebra is insensitive to the extension, so its
  // atoms must not move.
  AtomPartition before = coefficient_atoms(model);
  AtomPartition after = coefficient_atoms(extended);
  if (!(before.atoms == after.atoms))
    fail(r, "the coefficient atoms changed when the domain projection was adjoined");

  r.stats = inner.stats;
  r.stats["a_blocks"] = static_cast<long long>(model.partition.block_count());
  r.stats["a1_blocks"] = static_cast<long long>(extended.partition.block_count());
  return r;
}

TheoremReport verify_isometry_corollary(const ConcreteModel& model) {
  require_valid(model);
  TheoremReport r;
  r.theorem = "isometry_corollary";

  if (!model.sigma.is_total()) {
    r.verdict = Verdict::NotApplicable;
    r.note = "U is not an isometry on this model";
    return r;
  }

  AbstractPDS pds = induced_system(model);
  DeltaLadder ladder = delta_ladder(pds);
  SpectrumDescription spec = predicted_spectrum(pds, ladder);
  OracleSpectrum oracle = character_sequences(model);

  // alpha is onto when U is an isometry.
  IndexSet image;
  for (int p : pds.domain)
    if (auto q = pds.apply(p)) image.push_back(*q);
  image = set_sorted_unique(image);
  if (static_cast<int>(image.size()) != pds.point_count()) {
    for (int p = 0; p < pds.point_count(); ++p)
      if (!set_contains(image, p)) {
        fail(r, "alpha misses the point " + pds.points[static_cast<size_t>(p)]);
        break;
      }
  }

  for (const auto& [n, chains] : spec.hat.levels)
    if (!chains.empty())
      fail(r, "hat family at level " + std::to_string(n) +
                  " is nonempty although U is an isometry");
  if (!spec.hat.tail_roots.empty())
    fail(r, "hat tail roots " + set_str(pds, spec.hat.tail_roots) +
                " are nonempty although U is an isometry");

  std::set<CharacterSeq> characters(oracle.sequences.begin(), oracle.sequences.end());
  std::set<CharacterSeq> inf(spec.hat.infinite.begin(), spec.hat.infinite.end());
  for (const auto& s : characters)
    if (s.is_finite()) {
      fail(r, "character " + seq_str(pds, s) + " terminates although U is an isometry");
      break;
    }
  if (r.verdict == Verdict::Pass && characters != inf)
    fail(r, "characters and infinite chains disagree in the isometric case");

  r.stats["points"] = pds.point_count();
  r.stats["core"] = static_cast<long long>(ladder.core.size());
  r.stats["atoms"] = static_cast<long long>(oracle.sequences.size());
  return r;
}

TheoremReport verify_operator_identities(const ConcreteModel& model) {
  require_valid(model);
  TheoremReport r;
  r.theorem = "operator_identities";

  const int size = model.ground.size;

  // U a = delta(a) U on every block indicator, entry by entry.
  for (int b = 0; b < model.partition.block_count(); ++b) {
    DiagonalElement a = DiagonalElement::indicator(size, model.partition.block(b));
    DiagonalElement da = delta_apply(model, a);
    for (int j = 0; j < size; ++j) {
      auto k = model.sigma.apply(j);
      if (!k) continue;
      if (a.values[static_cast<size_t>(j)] != da.values[static_cast<size_t>(*k)]) {
        fail(r, "U a != delta(a) U at column " + std::to_string(j) + " for the indicator of " +
                    model.partition.label(b));
      }
    }
  }

  // Both projection families decrease with the power.
  for (int n = 0; n <= size; ++n) {
    if (!set_subset(model.sigma.power_domain(n + 1), model.sigma.power_domain(n)))
      fail(r, "dom(sigma^" + std::to_string(n + 1) + ") is not inside dom(sigma^" +
                  std::to_string(n) + ")");
    if (!set_subset(model.sigma.power_range(n + 1), model.sigma.power_range(n)))
      fail(r, "range(sigma^" + std::to_string(n + 1) + ") is not inside range(sigma^" +
                  std::to_string(n) + ")");
  }

  // The iterated ladder agrees with the direct description: Delta_n is
  // exactly the set of blocks inside range(sigma^n).
  AbstractPDS pds = induced_system(model);
  DeltaLadder ladder = delta_ladder(pds);
  for (int n = 0; n <= ladder.stab_forward + 1; ++n) {
    IndexSet direct;
    IndexSet rng = model.sigma.power_range(n);
    for (int b = 0; b < model.partition.block_count(); ++b)
      if (set_subset(model.partition.block(b), rng)) direct.push_back(b);
    if (direct != ladder.delta(n))
      fail(r, "Delta_" + std::to_string(n) + " from the ladder is " +
                  set_str(pds, ladder.delta(n)) + " but the projection criterion gives " +
                  set_str(pds, direct));
  }

  r.stats["checked_powers"] = size + 1;
  r.stats["blocks"] = model.partition.block_count();
  return r;
}

std::vector<TheoremReport> verify_all(const ConcreteModel& model) {
  return {verify_embedding(model),        verify_lower_bound(model),
          verify_equality(model),         verify_via_extension(model),
          verify_isometry_corollary(model), verify_operator_identities(model)};
}

bool FuzzReport::all_passed() const {
  for (const auto& [name, t] : tallies)
    if (t.fail > 0) return false;
  return true;
}

ModelGenerator::ModelGenerator(std::uint64_t seed, int max_size,
                               FuzzConfig::PartitionStrategy strategy)
    : rng_(seed), max_size_(max_size), strategy_(strategy) {
  if (max_size < 1) throw std::invalid_argument("max_size must be >= 1");
}

int ModelGenerator::bounded(int n) {
  if (n <= 1) return 0;
  const std::uint64_t un = static_cast<std::uint64_t>(n);
  const std::uint64_t limit = ~0ull - ~0ull % un;
  std::uint64_t x;
  do {
    x = rng_();
  } while (x >= limit);
  return static_cast<int>(x % un);
}

ConcreteModel ModelGenerator::next(bool* used_singleton_fallback) {
  if (used_singleton_fallback) *used_singleton_fallback = false;
  const int size = 1 + bounded(max_size_);

  // Each index keeps an image with probability 1/2; images are a random
  // sample without repetition, so sigma is automatically injective.
  std::vector<int> sources;
  for (int j = 0; j < size; ++j)
    if (rng_() & 1u) sources.push_back(j);
  std::vector<int> perm(static_cast<size_t>(size));
  for (int j = 0; j < size; ++j) perm[static_cast<size_t>(j)] = j;
  for (int j = size - 1; j > 0; --j)
    std::swap(perm[static_cast<size_t>(j)], perm[static_cast<size_t>(bounded(j + 1))]);
  std::vector<std::pair<int, int>> pairs;
  for (size_t i = 0; i < sources.size(); ++i) pairs.emplace_back(sources[i], perm[i]);

  GroundSet ground(size);
  PartialInjection sigma(size, pairs);

  if (strategy_ == FuzzConfig::PartitionStrategy::Singletons)
    return ConcreteModel(ground, sigma, Partition::singletons(size));

  for (int attempt = 0; attempt < 32; ++attempt) {
    int nblocks = 1 + bounded(size);
    std::vector<int> label(static_cast<size_t>(size));
    for (int j = 0; j < size; ++j) label[static_cast<size_t>(j)] = bounded(nblocks);
    ConcreteModel candidate(ground, sigma, Partition::from_assignment(label));
    if (validate_concrete(candidate).model_valid()) return candidate;
  }
  if (used_singleton_fallback) *used_singleton_fallback = true;
  return ConcreteModel(ground, sigma, Partition::singletons(size));
}

namespace {

std::vector<std::string> failing_theorems(const std::vector<TheoremReport>& reports) {
  std::vector<std::string> out;
  for (const auto& r : reports)
    if (r.failed()) out.push_back(r.theorem);
  return out;
}

// Drop sigma pairs one at a time while some theorem still fails.
ConcreteModel shrink_failure(const ConcreteModel& model) {
  ConcreteModel shrunk = model;
  bool improved = true;
  while (improved) {
    improved = false;
    auto pairs = shrunk.sigma.pairs();
    for (size_t drop = 0; drop < pairs.size(); ++drop) {
      std::vector<std::pair<int, int>> fewer;
      for (size_t i = 0; i < pairs.size(); ++i)
        if (i != drop) fewer.push_back(pairs[i]);
      ConcreteModel candidate(shrunk.ground, PartialInjection(shrunk.ground.size, fewer),
                              shrunk.partition);
      if (!validate_concrete(candidate).model_valid()) continue;
      if (!failing_theorems(verify_all(candidate)).empty()) {
        shrunk = candidate;
        improved = true;
        break;
      }
    }
  }
  return shrunk;
}

// Is the oracle strictly inside the unrestricted families, or strictly
// above the hat prediction?
void strictness(const ConcreteModel& model, bool* upper_strict, bool* lower_strict) {
  AbstractPDS pds = induced_system(model);
  DeltaLadder ladder = delta_ladder(pds);
  SpectrumDescription spec = upper_spectrum(pds, ladder);
  OracleSpectrum oracle = character_sequences(model);

  std::set<CharacterSeq> characters(oracle.sequences.begin(), oracle.sequences.end());
  std::vector<CharacterSeq> predicted = materialized_chains(spec.hat);
  std::set<CharacterSeq> predicted_set(predicted.begin(), predicted.end());

  *lower_strict = false;
  for (const auto& s : characters)
    if (!predicted_set.count(s)) *lower_strict = true;

  *upper_strict = false;
  const SpectrumFamilies& upper = *spec.upper;
  for (const auto& [n, chains] : upper.levels)
    for (const auto& c : chains)
      if (!characters.count(c)) *upper_strict = true;
  // A nonempty tail means chains at every level from there on; finitely
  // many characters cannot meet them all.
  if (!upper.tail_roots.empty()) *upper_strict = true;
}

}  // namespace

FuzzReport fuzz(const FuzzConfig& config) {
  if (config.count < 1) throw std::invalid_argument("fuzz count must be >= 1");
  if (config.max_size < 1) throw std::invalid_argument("fuzz max_size must be >= 1");
  FuzzReport report;
  report.config = config;
  for (const char* name : {"embedding", "lower_bound", "equality", "via_extension",
                           "isometry_corollary", "operator_identities"})
    report.tallies[name];

  ModelGenerator gen(config.seed, config.max_size, config.strategy);
  for (int i = 0; i < config.count; ++i) {
    bool fallback = false;
    ConcreteModel model = gen.next(&fallback);
    if (fallback) report.singleton_fallbacks++;
    report.models_run++;

    std::vector<TheoremReport> reports = verify_all(model);
    for (const auto& r : reports) {
      TheoremTally& t = report.tallies[r.theorem];
      switch (r.verdict) {
        case Verdict::Pass: t.pass++; break;
        case Verdict::Fail: t.fail++; break;
        case Verdict::NotApplicable: t.not_applicable++; break;
      }
    }

    bool upper_strict = false, lower_strict = false;
    strictness(model, &upper_strict, &lower_strict);
    if (upper_strict) report.upper_strict_models++;
    if (lower_strict) report.lower_strict_models++;
    if (upper_strict && lower_strict) {
      report.both_strict_models++;
      if (!report.both_strict_example) report.both_strict_example = model;
    }

    std::vector<std::string> fails = failing_theorems(reports);
    if (!fails.empty()) {
      ConcreteModel shrunk = shrink_failure(model);
      bool better = !report.minimal_failure ||
                    shrunk.sigma.pairs().size() < report.minimal_failure->sigma.pairs().size() ||
                    (shrunk.sigma.pairs().size() == report.minimal_failure->sigma.pairs().size() &&
                     shrunk.ground.size < report.minimal_failure->ground.size);
      if (better) {
        report.minimal_failure = shrunk;
        report.minimal_failure_theorems = failing_theorems(verify_all(shrunk));
      }
    }

    if (config.granularity == FuzzConfig::Granularity::PerModel) {
      std::ostringstream line;
      line << "model " << i << " size=" << model.ground.size
           << " sigma_pairs=" << model.sigma.pairs().size()
           << " blocks=" << model.partition.block_count();
      for (const auto& r : reports) line << " " << r.theorem << "=" << to_string(r.verdict);
      report.model_lines.push_back(line.str());
    }
  }
  return report;
}

}  // namespace coeffspec
