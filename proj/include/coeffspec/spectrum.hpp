#ifndef COEFFSPEC_SPECTRUM_HPP
#define COEFFSPEC_SPECTRUM_HPP

#include <compare>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "coeffspec/pds.hpp"
#include "coeffspec/rational.hpp"

namespace coeffspec {

/// The sequence form of a character: a finite backward-orbit chain
/// (x_0,...,x_N) followed by a zero tail, or an infinite eventually
/// periodic chain stored as preperiod + period. Coordinates are point
/// indices of an AbstractPDS.
///
/// Infinite chains are kept canonical: primitive period, shortest
/// preperiod. Equality of canonical forms is equality of sequences.
class CharacterSeq {
 public:
  static CharacterSeq finite(std::vector<int> chain);
  static CharacterSeq infinite(std::vector<int> preperiod, std::vector<int> period);

  bool is_finite() const { return finite_; }
  /// Length index N of a finite chain (chain has N+1 coordinates).
  int length_index() const;
  const std::vector<int>& chain() const;
  const std::vector<int>& preperiod() const { return pre_; }
  const std::vector<int>& period() const;

  /// Coordinate x_n; nullopt on the zero tail of a finite chain.
  std::optional<int> at(long long n) const;
  /// First `count` coordinates of an infinite chain.
  std::vector<int> expand(int count) const;

  bool operator==(const CharacterSeq& o) const = default;
  std::strong_ordering operator<=>(const CharacterSeq& o) const = default;

 private:
  CharacterSeq() = default;
  bool finite_ = true;
  std::vector<int> pre_;   // finite: the whole chain; infinite: preperiod
  std::vector<int> per_;   // empty iff finite
};

/// One family bundle: materialized levels, the eventually-constant tail
/// root set, and the infinite chains.
struct SpectrumFamilies {
  std::map<int, std::vector<CharacterSeq>> levels;  // N -> chains, N < tail_from
  int tail_from = 1;
  IndexSet tail_roots;  // root set for every N >= tail_from
  std::vector<CharacterSeq> infinite;

  bool operator==(const SpectrumFamilies& o) const = default;
};

/// Predicted maximal ideal space: the hat families (roots excluded from
/// Delta_{-1}) plus the infinite chains; `upper` optionally carries the
/// unrestricted families with roots all of Delta_N.
struct SpectrumDescription {
  SpectrumFamilies hat;
  std::optional<SpectrumFamilies> upper;

  bool operator==(const SpectrumDescription& o) const = default;
};

/// Root x was not in Delta_N: alpha^depth(x) already falls outside the
/// domain while depth < N.
class ChainRootError : public std::invalid_argument {
 public:
  ChainRootError(int depth, const std::string& what)
      : std::invalid_argument(what), depth_(depth) {}
  int depth() const { return depth_; }

 private:
  int depth_;
};

/// A base neighborhood O(a_1,...,a_k, n, eps) around `center`. For a
/// finite center the comparing coordinate is its own length index and
/// `level` is ignored; for an infinite center it is `level`. coeffs are
/// functions on M, one rational per point.
struct NeighborhoodSpec {
  std::vector<std::vector<Rational>> coeffs;
  int level = 0;
  Rational epsilon = Rational(1);
  CharacterSeq center = CharacterSeq::finite({0});
};

/// The chain (alpha^N(x),...,alpha(x),x); throws ChainRootError if x is
/// outside Delta_N.
CharacterSeq chain_from_root(const AbstractPDS& pds, int x, int n);

SpectrumDescription predicted_spectrum(const AbstractPDS& pds, const DeltaLadder& ladder);

/// The same family with levels materialized up to `up_to` inclusive
/// (tail_from moves past them). Levels inside the tail are generated
/// from the constant root set, so the value is unchanged as a whole.
SpectrumFamilies expand_levels(const AbstractPDS& pds, const SpectrumFamilies& fam, int up_to);

/// Same layout with the unrestricted families filled into `upper`
/// (hat stays as predicted, so the hat-within-upper inclusion is by
/// construction part of the value).
SpectrumDescription upper_spectrum(const AbstractPDS& pds, const DeltaLadder& ladder);

bool neighborhood_contains(const NeighborhoodSpec& spec, const CharacterSeq& y);

}  // namespace coeffspec

#endif  // COEFFSPEC_SPECTRUM_HPP
