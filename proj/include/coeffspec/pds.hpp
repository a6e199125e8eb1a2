#ifndef COEFFSPEC_PDS_HPP
#define COEFFSPEC_PDS_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "coeffspec/model.hpp"
#include "coeffspec/sets.hpp"

namespace coeffspec {

/// A finite partial dynamical system: point set M, clopen domain
/// Delta_1, single-valued alpha: Delta_1 -> M. Points carry string ids
/// (block labels for systems induced from concrete models). Clopenness
/// is automatic for finite discrete M.
struct AbstractPDS {
  std::vector<std::string> points;
  IndexSet domain;           // indices into points, sorted
  std::vector<int> alpha;    // per point; -1 outside the domain

  AbstractPDS(std::vector<std::string> pts, IndexSet dom, std::vector<int> al);

  int point_count() const { return static_cast<int>(points.size()); }
  bool in_domain(int p) const { return alpha.at(p) >= 0; }
  std::optional<int> apply(int p) const {
    int q = alpha.at(p);
    return q >= 0 ? std::optional<int>(q) : std::nullopt;
  }
  std::optional<int> find_point(const std::string& id) const;
};

/// The families Delta_n = dom(alpha^n) and Delta_{-n} = alpha^n(Delta_n),
/// stored up to stabilization. Both chains are decreasing and constant
/// from their stabilization index on; core is the stabilized backward
/// set, i.e. the intersection of all Delta_{-n}.
///
/// forward[n] = Delta_n for 0 <= n <= stab_forward, and Delta_n =
/// forward[stab_forward] beyond. Likewise backward[n] = Delta_{-n}
/// (backward[0] = M).
struct DeltaLadder {
  std::vector<IndexSet> forward;
  std::vector<IndexSet> backward;
  int stab_forward = 0;
  int stab_backward = 0;
  IndexSet core;

  /// Delta_n for any integer n (negative = backward family).
  const IndexSet& delta(long long n) const;
};

/// Both mutually inverse restrictions when the transfer map U* a U is
/// an endomorphism of A as well: alpha: Delta_1 -> Delta_{-1} and its
/// inverse. Keys and values are point indices.
struct DualEndomorphismWitness {
  std::map<int, int> alpha_restricted;  // Delta_1 -> Delta_{-1}
  std::map<int, int> alpha_inverse;     // Delta_{-1} -> Delta_1
};

/// Gelfand-dual system of a concrete model: points = partition blocks,
/// domain = blocks inside range(sigma), alpha(B) = the block containing
/// the sigma-preimage of B.
AbstractPDS induced_system(const ConcreteModel& model);

DeltaLadder delta_ladder(const AbstractPDS& pds);

/// Present iff dom(sigma) is a union of blocks and sigma maps each block
/// inside the domain into a single block (the transfer map preserves A).
std::optional<DualEndomorphismWitness> dual_endomorphism_case(const ConcreteModel& model);

}  // namespace coeffspec

#endif  // COEFFSPEC_PDS_HPP
