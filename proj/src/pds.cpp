#include "coeffspec/pds.hpp"

#include <algorithm>
#include <stdexcept>

namespace coeffspec {

AbstractPDS::AbstractPDS(std::vector<std::string> pts, IndexSet dom,
                         std::vector<int> al)
    : points(std::move(pts)), domain(std::move(dom)), alpha(std::move(al)) {
  const int n = point_count();
  if (n == 0) throw ModelError("pds needs at least one point");
  {
    auto sorted = points;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw ModelError("pds point ids must be distinct");
  }
  if (static_cast<int>(alpha.size()) != n)
    throw ModelError("alpha must assign a value per point");
  if (!std::is_sorted(domain.begin(), domain.end()) ||
      std::adjacent_find(domain.begin(), domain.end()) != domain.end())
    throw ModelError("pds domain must be sorted and duplicate-free");
  for (int p : domain)
    if (p < 0 || p >= n) throw ModelError("pds domain point out of range");
  for (int p = 0; p < n; ++p) {
    bool in = set_contains(domain, p);
    if (in && (alpha[p] < 0 || alpha[p] >= n))
      throw ModelError("alpha undefined or out of range on domain point " + points[p]);
    if (!in && alpha[p] != -1)
      throw ModelError("alpha defined outside the domain at " + points[p]);
  }
}

std::optional<int> AbstractPDS::find_point(const std::string& id) const {
  for (int p = 0; p < point_count(); ++p)
    if (points[p] == id) return p;
  return std::nullopt;
}

AbstractPDS induced_system(const ConcreteModel& model) {
  require_valid(model);
  const Partition& part = model.partition;
  std::vector<std::string> pts;
  for (int b = 0; b < part.block_count(); ++b) pts.push_back(part.label(b));

  IndexSet range = model.sigma.range();
  IndexSet dom;
  std::vector<int> alpha(static_cast<size_t>(part.block_count()), -1);
  for (int b = 0; b < part.block_count(); ++b) {
    const IndexSet& blk = part.block(b);
    // UU* = delta(1) is constant on blocks for valid models, so one
    // representative decides membership.
    if (!set_contains(range, blk.front())) continue;
    dom.push_back(b);
    alpha[b] = part.block_of(*model.sigma.preimage(blk.front()));
  }
  return AbstractPDS(std::move(pts), std::move(dom), std::move(alpha));
}

DeltaLadder delta_ladder(const AbstractPDS& pds) {
  DeltaLadder ladder;
  IndexSet all;
  for (int p = 0; p < pds.point_count(); ++p) all.push_back(p);

  // Delta_{n+1} = Delta_1 cap alpha^{-1}(Delta_n); stop at first repeat.
  ladder.forward.push_back(all);
  for (;;) {
    const IndexSet& prev = ladder.forward.back();
    IndexSet next;
    for (int p : pds.domain)
      if (set_contains(prev, *pds.apply(p))) next.push_back(p);
    if (next == prev) break;
    ladder.forward.push_back(std::move(next));
  }
  ladder.stab_forward = static_cast<int>(ladder.forward.size()) - 1;

  // Delta_{-(n+1)} = alpha(Delta_{-n} cap Delta_1), which agrees with
  // alpha^{n+1}(Delta_{n+1}) and makes first-repeat stabilization sound.
  ladder.backward.push_back(all);
  for (;;) {
    const IndexSet& prev = ladder.backward.back();
    IndexSet next;
    for (int p : set_intersect(prev, pds.domain)) next.push_back(*pds.apply(p));
    next = set_sorted_unique(std::move(next));
    if (next == prev) break;
    ladder.backward.push_back(std::move(next));
  }
  ladder.stab_backward = static_cast<int>(ladder.backward.size()) - 1;
  ladder.core = ladder.backward.back();
  return ladder;
}

const IndexSet& DeltaLadder::delta(long long n) const {
  if (n >= 0) {
    size_t i = std::min<long long>(n, stab_forward);
    return forward[static_cast<size_t>(i)];
  }
  size_t i = std::min<long long>(-n, stab_backward);
  return backward[static_cast<size_t>(i)];
}

std::optional<DualEndomorphismWitness> dual_endomorphism_case(const ConcreteModel& model) {
  require_valid(model);
  if (!domain_is_union_of_blocks(model)) return std::nullopt;
  const Partition& part = model.partition;
  IndexSet dom = model.sigma.domain();
  // sigma must carry each block inside the domain into a single block,
  // else the transfer map leaves A.
  for (const auto& blk : part.blocks()) {
    if (!set_contains(dom, blk.front())) continue;
    int target = part.block_of(*model.sigma.apply(blk.front()));
    for (int j : blk)
      if (part.block_of(*model.sigma.apply(j)) != target) return std::nullopt;
  }

  AbstractPDS pds = induced_system(model);
  DeltaLadder ladder = delta_ladder(pds);
  DualEndomorphismWitness w;
  for (int p : ladder.delta(1)) w.alpha_restricted[p] = *pds.apply(p);
  for (int b = 0; b < part.block_count(); ++b) {
    if (!set_contains(dom, part.block(b).front())) continue;
    w.alpha_inverse[b] = part.block_of(*model.sigma.apply(part.block(b).front()));
  }
  // Mutual inversity is part of the witness contract.
  for (auto [p, q] : w.alpha_restricted)
    if (!w.alpha_inverse.count(q) || w.alpha_inverse.at(q) != p)
      throw std::logic_error("dual endomorphism maps fail to invert each other");
  for (auto [p, q] : w.alpha_inverse)
    if (!w.alpha_restricted.count(q) || w.alpha_restricted.at(q) != p)
      throw std::logic_error("dual endomorphism maps fail to invert each other");
  return w;
}

}  // namespace coeffspec
