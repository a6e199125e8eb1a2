#ifndef COEFFSPEC_ORACLE_HPP
#define COEFFSPEC_ORACLE_HPP

#include <string>
#include <vector>

#include "coeffspec/model.hpp"
#include "coeffspec/spectrum.hpp"

namespace coeffspec {

/// Minimal-projection decomposition of the coefficient algebra: the
/// finest partition reached by refining the model partition along
/// sigma-power domains and pullbacks. Each atom is one character.
struct AtomPartition {
  Partition atoms;
  int generation_depth = 0;  // refinement rounds run, final quiet round included
};

/// Ground truth: per atom, the character in sequence form, obtained by
/// direct sigma-iteration inside the matrix model. Coordinates index
/// the blocks of the model partition.
struct OracleSpectrum {
  AtomPartition atoms;
  std::vector<CharacterSeq> sequences;  // aligned with atoms.atoms.blocks()
};

/// delta(a) = U a U*: value a(sigma^-1(k)) on the range, zero off it.
DiagonalElement delta_apply(const ConcreteModel& model, const DiagonalElement& a);

/// delta_*^n(a) = U*^n a U^n: value a(sigma^n(j)) on dom(sigma^n), zero
/// off it; n = 0 is the identity.
DiagonalElement delta_star_apply(const ConcreteModel& model, const DiagonalElement& a, int n);

AtomPartition coefficient_atoms(const ConcreteModel& model);

OracleSpectrum character_sequences(const ConcreteModel& model);

/// b = sum_i delta_*^i(a_i) evaluated on an atom, cross-checked against
/// the coordinate sum a_0(x_0)+...+a_N(x_N) over the defined
/// coordinates of the atom's sequence. Each a_i must lie in A.
Rational evaluate_sum(const ConcreteModel& model,
                      const std::vector<DiagonalElement>& coeffs,
                      const AtomPartition& atoms, int atom_index);

struct CoefficientAxiomReport {
  CheckResult delta_invariance;        // delta(E_*) in E_*
  CheckResult delta_star_invariance;   // delta_*(E_*) in E_*
  CheckResult intertwining;            // U b = delta(b) U on atom indicators
  CheckResult delta_multiplicative;
  CheckResult delta_star_multiplicative;

  bool all_ok() const {
    return delta_invariance.ok && delta_star_invariance.ok && intertwining.ok &&
           delta_multiplicative.ok && delta_star_multiplicative.ok;
  }
};

CoefficientAxiomReport check_coefficient_axioms(const ConcreteModel& model,
                                                const AtomPartition& atoms);

}  // namespace coeffspec

#endif  // COEFFSPEC_ORACLE_HPP
