#include "coeffspec/spectrum.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace coeffspec {

namespace {

// Shortest word w with v = w^k.
std::vector<int> primitive_root(const std::vector<int>& v) {
  const size_t n = v.size();
  for (size_t d = 1; d <= n / 2; ++d) {
    if (n % d != 0) continue;
    bool ok = true;
    for (size_t i = d; i < n && ok; ++i) ok = v[i] == v[i - d];
    if (ok) return std::vector<int>(v.begin(), v.begin() + static_cast<long>(d));
  }
  return v;
}

}  // namespace

CharacterSeq CharacterSeq::finite(std::vector<int> chain) {
  if (chain.empty()) throw std::invalid_argument("a finite chain has at least x_0");
  CharacterSeq s;
  s.finite_ = true;
  s.pre_ = std::move(chain);
  return s;
}

CharacterSeq CharacterSeq::infinite(std::vector<int> preperiod, std::vector<int> period) {
  if (period.empty()) throw std::invalid_argument("an infinite chain needs a nonempty period");
  period = primitive_root(period);
  // Absorb preperiod letters that already agree with the period cycling:
  // (u a, v^inf) with a = last of v equals (u, rot(v)^inf).
  while (!preperiod.empty() && preperiod.back() == period.back()) {
    preperiod.pop_back();
    std::rotate(period.rbegin(), period.rbegin() + 1, period.rend());
  }
  CharacterSeq s;
  s.finite_ = false;
  s.pre_ = std::move(preperiod);
  s.per_ = std::move(period);
  return s;
}

int CharacterSeq::length_index() const {
  if (!finite_) throw std::logic_error("length_index on an infinite chain");
  return static_cast<int>(pre_.size()) - 1;
}

const std::vector<int>& CharacterSeq::chain() const {
  if (!finite_) throw std::logic_error("chain() on an infinite chain");
  return pre_;
}

const std::vector<int>& CharacterSeq::period() const {
  if (finite_) throw std::logic_error("period() on a finite chain");
  return per_;
}

std::optional<int> CharacterSeq::at(long long n) const {
  if (n < 0) return std::nullopt;
  if (finite_) {
    if (n >= static_cast<long long>(pre_.size())) return std::nullopt;
    return pre_[static_cast<size_t>(n)];
  }
  if (n < static_cast<long long>(pre_.size())) return pre_[static_cast<size_t>(n)];
  return per_[static_cast<size_t>((n - pre_.size()) % per_.size())];
}

std::vector<int> CharacterSeq::expand(int count) const {
  std::vector<int> out;
  for (int n = 0; n < count; ++n) {
    auto x = at(n);
    if (!x) break;
    out.push_back(*x);
  }
  return out;
}

CharacterSeq chain_from_root(const AbstractPDS& pds, int x, int n) {
  if (x < 0 || x >= pds.point_count())
    throw std::invalid_argument("chain root is not a point of the system");
  if (n < 0) throw std::invalid_argument("chain length index must be >= 0");
  std::vector<int> rev{x};
  int cur = x;
  for (int d = 0; d < n; ++d) {
    auto next = pds.apply(cur);
    if (!next)
      throw ChainRootError(d, "root " + pds.points[x] + " is outside Delta_" +
                                  std::to_string(n) + ": alpha^" + std::to_string(d) +
                                  " lands outside the domain");
    cur = *next;
    rev.push_back(cur);
  }
  std::reverse(rev.begin(), rev.end());
  return CharacterSeq::finite(std::move(rev));
}

namespace {

// Infinite backward chains of a finite system all live inside the core,
// where alpha restricts to a bijection; each core point is the base of
// exactly one such chain, obtained by following the inverse around its
// cycle. The depth-2|M| tree-search oracle for this shortcut lives in
// the test suite.
std::vector<CharacterSeq> infinite_chains(const AbstractPDS& pds, const DeltaLadder& ladder) {
  const IndexSet& core = ladder.core;
  std::vector<int> inv(static_cast<size_t>(pds.point_count()), -1);
  for (int p : core) {
    auto q = pds.apply(p);
    if (!q || !set_contains(core, *q))
      throw std::logic_error("core point maps outside the core");
    if (inv[static_cast<size_t>(*q)] != -1)
      throw std::logic_error("alpha is not injective on the core");
    inv[static_cast<size_t>(*q)] = p;
  }
  for (int p : core)
    if (inv[static_cast<size_t>(p)] == -1)
      throw std::logic_error("alpha is not onto the core");

  std::vector<CharacterSeq> out;
  for (int x0 : core) {
    std::vector<int> cycle{x0};
    for (int cur = inv[static_cast<size_t>(x0)]; cur != x0;
         cur = inv[static_cast<size_t>(cur)])
      cycle.push_back(cur);
    out.push_back(CharacterSeq::infinite({}, std::move(cycle)));
  }
  std::sort(out.begin(), out.end());
  return out;
}

SpectrumFamilies build_families(const AbstractPDS& pds, const DeltaLadder& ladder,
                                bool exclude_backward_image) {
  SpectrumFamilies fam;
  auto roots_at = [&](int n) {
    IndexSet r = ladder.delta(n);
    if (exclude_backward_image) r = set_minus(r, ladder.delta(-1));
    return r;
  };
  // Root sets are constant once Delta_N is; M_0 is always materialized.
  fam.tail_from = std::max(1, ladder.stab_forward);
  for (int n = 0; n < fam.tail_from; ++n) {
    std::vector<CharacterSeq> chains;
    for (int x : roots_at(n)) chains.push_back(chain_from_root(pds, x, n));
    std::sort(chains.begin(), chains.end());
    fam.levels[n] = std::move(chains);
  }
  fam.tail_roots = roots_at(fam.tail_from);
  fam.infinite = infinite_chains(pds, ladder);
  return fam;
}

}  // namespace

SpectrumDescription predicted_spectrum(const AbstractPDS& pds, const DeltaLadder& ladder) {
  SpectrumDescription desc;
  desc.hat = build_families(pds, ladder, /*exclude_backward_image=*/true);
  return desc;
}

SpectrumFamilies expand_levels(const AbstractPDS& pds, const SpectrumFamilies& fam,
                               int up_to) {
  SpectrumFamilies out = fam;
  for (int n = out.tail_from; n <= up_to; ++n) {
    std::vector<CharacterSeq> chains;
    for (int x : out.tail_roots) chains.push_back(chain_from_root(pds, x, n));
    std::sort(chains.begin(), chains.end());
    out.levels[n] = std::move(chains);
  }
  if (up_to >= out.tail_from) out.tail_from = up_to + 1;
  return out;
}

SpectrumDescription upper_spectrum(const AbstractPDS& pds, const DeltaLadder& ladder) {
  SpectrumDescription desc;
  desc.hat = build_families(pds, ladder, /*exclude_backward_image=*/true);
  desc.upper = build_families(pds, ladder, /*exclude_backward_image=*/false);
  return desc;
}

bool neighborhood_contains(const NeighborhoodSpec& spec, const CharacterSeq& y) {
  if (spec.epsilon <= Rational(0))
    throw std::invalid_argument("neighborhood epsilon must be positive");
  long long n;
  if (spec.center.is_finite()) {
    // O(a_1,...,a_k,eps) lives inside M_N: same length, compare at N.
    if (!y.is_finite() || y.length_index() != spec.center.length_index()) return false;
    n = spec.center.length_index();
  } else {
    if (spec.level < 0) throw std::invalid_argument("neighborhood level must be >= 0");
    n = spec.level;
  }
  auto xn = spec.center.at(n);
  auto yn = y.at(n);
  if (!yn) return false;  // y has no n-th coordinate: outside the base set
  for (const auto& coeff : spec.coeffs) {
    const Rational& cx = coeff.at(static_cast<size_t>(*xn));
    const Rational& cy = coeff.at(static_cast<size_t>(*yn));
    if (!(rational_abs(cx - cy) < spec.epsilon)) return false;
  }
  return true;
}

}  // namespace coeffspec
