#include "coeffspec/oracle.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace coeffspec {

DiagonalElement delta_apply(const ConcreteModel& model, const DiagonalElement& a) {
  if (a.size() != model.ground.size)
    throw std::invalid_argument("diagonal element size mismatch");
  DiagonalElement out = DiagonalElement::zero(model.ground.size);
  for (int k = 0; k < model.ground.size; ++k)
    if (auto j = model.sigma.preimage(k))
      out.values[static_cast<size_t>(k)] = a.values[static_cast<size_t>(*j)];
  return out;
}

DiagonalElement delta_star_apply(const ConcreteModel& model, const DiagonalElement& a, int n) {
  if (a.size() != model.ground.size)
    throw std::invalid_argument("diagonal element size mismatch");
  if (n < 0) throw std::invalid_argument("delta_* power must be >= 0");
  DiagonalElement out = DiagonalElement::zero(model.ground.size);
  for (int j = 0; j < model.ground.size; ++j)
    if (auto k = model.sigma.apply_power(j, n))
      out.values[static_cast<size_t>(j)] = a.values[static_cast<size_t>(*k)];
  return out;
}

AtomPartition coefficient_atoms(const ConcreteModel& model) {
  require_valid(model);
  const int n = model.ground.size;
  Partition atoms = model.partition;
  int rounds = 0;
  for (;;) {
    ++rounds;
    bool changed = false;
    for (int p = 1; p <= n; ++p) {
      // Split by dom(sigma^p) (= the support of delta_*^p(1)) and by the
      // block of the sigma^p image, both against the current partition.
      Partition next = atoms.refine_by_key([&](int j) -> long long {
        auto img = model.sigma.apply_power(j, p);
        return img ? atoms.block_of(*img) : -1;
      });
      if (!(next == atoms)) {
        atoms = std::move(next);
        changed = true;
      }
    }
    if (!changed) break;
  }
  return AtomPartition{std::move(atoms), rounds};
}

namespace {

// Sequence of one basis index: block of sigma^n(j) while defined. By
// injectivity the orbit either leaves the domain or returns to j, so the
// infinite case is a pure cycle.
CharacterSeq index_sequence(const ConcreteModel& model, int j) {
  std::vector<int> blocks{model.partition.block_of(j)};
  int cur = j;
  for (int steps = 0; steps <= model.ground.size + 1; ++steps) {
    auto next = model.sigma.apply(cur);
    if (!next) return CharacterSeq::finite(std::move(blocks));
    cur = *next;
    if (cur == j) return CharacterSeq::infinite({}, std::move(blocks));
    blocks.push_back(model.partition.block_of(cur));
  }
  throw std::logic_error("sigma orbit neither exits nor cycles");
}

}  // namespace

OracleSpectrum character_sequences(const ConcreteModel& model) {
  OracleSpectrum spec{coefficient_atoms(model), {}};
  for (const auto& atom : spec.atoms.atoms.blocks()) {
    CharacterSeq seq = index_sequence(model, atom.front());
    // Every index of the atom must generate the same sequence; anything
    // else means the refinement fixpoint is wrong.
    for (int j : atom)
      if (!(index_sequence(model, j) == seq))
        throw std::logic_error("atom indices disagree on their character sequence");
    spec.sequences.push_back(std::move(seq));
  }
  return spec;
}

Rational evaluate_sum(const ConcreteModel& model,
                      const std::vector<DiagonalElement>& coeffs,
                      const AtomPartition& atoms, int atom_index) {
  for (const auto& a : coeffs)
    if (a.size() != model.ground.size || !a.in_algebra(model.partition))
      throw std::invalid_argument("coefficient is not an element of A");
  if (atom_index < 0 || atom_index >= atoms.atoms.block_count())
    throw std::invalid_argument("atom index out of range");

  DiagonalElement b = DiagonalElement::zero(model.ground.size);
  for (size_t i = 0; i < coeffs.size(); ++i)
    b = b + delta_star_apply(model, coeffs[i], static_cast<int>(i));

  const IndexSet& atom = atoms.atoms.block(atom_index);
  const Rational& value = b.values[static_cast<size_t>(atom.front())];
  for (int j : atom)
    if (b.values[static_cast<size_t>(j)] != value)
      throw std::logic_error("coefficient sum is not constant on the atom");

  // Cross-check against the sequence form: the sum of a_i at the defined
  // coordinates x_i, truncated at the zero tail.
  Rational by_sequence(0);
  int rep = atom.front();
  for (size_t i = 0; i < coeffs.size(); ++i) {
    auto img = model.sigma.apply_power(rep, static_cast<int>(i));
    if (!img) break;
    const IndexSet& blk = model.partition.block(model.partition.block_of(*img));
    by_sequence += coeffs[i].values[static_cast<size_t>(blk.front())];
  }
  if (by_sequence != value)
    throw std::logic_error("operator sum disagrees with the coordinate sum");
  return value;
}

CoefficientAxiomReport check_coefficient_axioms(const ConcreteModel& model,
                                                const AtomPartition& atoms) {
  CoefficientAxiomReport rep;
  const Partition& alg = atoms.atoms;
  const int n = model.ground.size;

  auto atom_indicator = [&](int b) {
    return DiagonalElement::indicator(n, alg.block(b));
  };

  for (int b = 0; b < alg.block_count(); ++b) {
    DiagonalElement p = atom_indicator(b);
    if (rep.delta_invariance.ok && !delta_apply(model, p).in_algebra(alg))
      rep.delta_invariance = {false, "atom " + alg.label(b)};
    if (rep.delta_star_invariance.ok && !delta_star_apply(model, p, 1).in_algebra(alg))
      rep.delta_star_invariance = {false, "atom " + alg.label(b)};
    if (rep.intertwining.ok) {
      DiagonalElement dp = delta_apply(model, p);
      for (int j = 0; j < n; ++j) {
        auto k = model.sigma.apply(j);
        if (!k) continue;
        if (p.values[static_cast<size_t>(j)] != dp.values[static_cast<size_t>(*k)]) {
          rep.intertwining = {false, "atom " + alg.label(b) + " at index " + std::to_string(j)};
          break;
        }
      }
    }
  }

  for (int b = 0; b < alg.block_count() && rep.delta_multiplicative.ok; ++b)
    for (int c = 0; c < alg.block_count(); ++c) {
      DiagonalElement p = atom_indicator(b), q = atom_indicator(c);
      if (!(delta_apply(model, p * q) == delta_apply(model, p) * delta_apply(model, q))) {
        rep.delta_multiplicative = {false, alg.label(b) + "," + alg.label(c)};
        break;
      }
    }
  for (int b = 0; b < alg.block_count() && rep.delta_star_multiplicative.ok; ++b)
    for (int c = 0; c < alg.block_count(); ++c) {
      DiagonalElement p = atom_indicator(b), q = atom_indicator(c);
      if (!(delta_star_apply(model, p * q, 1) ==
            delta_star_apply(model, p, 1) * delta_star_apply(model, q, 1))) {
        rep.delta_star_multiplicative = {false, alg.label(b) + "," + alg.label(c)};
        break;
      }
    }

  return rep;
}

}  // namespace coeffspec
