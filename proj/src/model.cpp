#include "coeffspec/model.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace coeffspec {

// ---------------------------------------------------------------- PartialInjection

PartialInjection::PartialInjection(int size,
                                   const std::vector<std::pair<int, int>>& pairs) {
  if (size < 1) throw ModelError("partial injection needs ground size >= 1");
  to_.assign(static_cast<size_t>(size), -1);
  from_.assign(static_cast<size_t>(size), -1);
  for (auto [j, k] : pairs) {
    if (j < 0 || j >= size)
      throw ModelError("sigma source " + std::to_string(j) + " out of range");
    if (k < 0 || k >= size)
      throw ModelError("sigma target " + std::to_string(k) + " out of range");
    if (to_[j] != -1)
      throw ModelError("duplicate sigma source " + std::to_string(j));
    if (from_[k] != -1)
      throw ModelError("duplicate sigma target " + std::to_string(k));
    to_[j] = k;
    from_[k] = j;
  }
}

PartialInjection PartialInjection::identity(int size) {
  std::vector<std::pair<int, int>> p;
  for (int j = 0; j < size; ++j) p.emplace_back(j, j);
  return PartialInjection(size, p);
}

std::optional<int> PartialInjection::apply(int j) const {
  if (j < 0 || j >= size() || to_[j] < 0) return std::nullopt;
  return to_[j];
}

std::optional<int> PartialInjection::preimage(int k) const {
  if (k < 0 || k >= size() || from_[k] < 0) return std::nullopt;
  return from_[k];
}

std::optional<int> PartialInjection::apply_power(int j, int n) const {
  if (j < 0 || j >= size()) return std::nullopt;
  int cur = j;
  for (int i = 0; i < n; ++i) {
    if (to_[cur] < 0) return std::nullopt;
    cur = to_[cur];
  }
  return cur;
}

std::optional<int> PartialInjection::preimage_power(int k, int n) const {
  if (k < 0 || k >= size()) return std::nullopt;
  int cur = k;
  for (int i = 0; i < n; ++i) {
    if (from_[cur] < 0) return std::nullopt;
    cur = from_[cur];
  }
  return cur;
}

IndexSet PartialInjection::domain() const { return power_domain(1); }
IndexSet PartialInjection::range() const { return power_range(1); }

IndexSet PartialInjection::power_domain(int n) const {
  IndexSet out;
  for (int j = 0; j < size(); ++j)
    if (apply_power(j, n)) out.push_back(j);
  return out;
}

IndexSet PartialInjection::power_range(int n) const {
  IndexSet out;
  for (int k = 0; k < size(); ++k)
    if (preimage_power(k, n)) out.push_back(k);
  return out;
}

bool PartialInjection::is_total() const {
  return std::none_of(to_.begin(), to_.end(), [](int t) { return t < 0; });
}

bool PartialInjection::is_onto() const {
  return std::none_of(from_.begin(), from_.end(), [](int t) { return t < 0; });
}

bool PartialInjection::is_empty() const {
  return std::all_of(to_.begin(), to_.end(), [](int t) { return t < 0; });
}

std::vector<std::pair<int, int>> PartialInjection::pairs() const {
  std::vector<std::pair<int, int>> p;
  for (int j = 0; j < size(); ++j)
    if (to_[j] >= 0) p.emplace_back(j, to_[j]);
  return p;
}

// ---------------------------------------------------------------------- Partition

Partition::Partition(int ground_size, std::vector<IndexSet> blocks) {
  if (ground_size < 1) throw ModelError("partition needs ground size >= 1");
  block_of_.assign(static_cast<size_t>(ground_size), -1);
  for (auto& blk : blocks) {
    if (blk.empty()) throw ModelError("empty partition block");
    for (size_t i = 0; i < blk.size(); ++i) {
      int j = blk[i];
      if (j < 0 || j >= ground_size)
        throw ModelError("partition index " + std::to_string(j) + " out of range");
      if (i > 0 && blk[i] <= blk[i - 1])
        throw ModelError("partition block not sorted ascending");
      if (block_of_[j] != -1)
        throw ModelError("partition blocks overlap at index " + std::to_string(j));
      block_of_[j] = 0;  // mark seen; real ids assigned below
    }
  }
  for (int j = 0; j < ground_size; ++j)
    if (block_of_[j] == -1)
      throw ModelError("partition misses index " + std::to_string(j));
  std::sort(blocks.begin(), blocks.end(),
            [](const IndexSet& a, const IndexSet& b) { return a.front() < b.front(); });
  blocks_ = std::move(blocks);
  for (int b = 0; b < block_count(); ++b)
    for (int j : blocks_[b]) block_of_[j] = b;
}

Partition Partition::singletons(int ground_size) {
  std::vector<IndexSet> blocks;
  for (int j = 0; j < ground_size; ++j) blocks.push_back({j});
  return Partition(ground_size, std::move(blocks));
}

Partition Partition::from_assignment(const std::vector<int>& label) {
  std::map<int, IndexSet> by_label;
  for (size_t j = 0; j < label.size(); ++j)
    by_label[label[j]].push_back(static_cast<int>(j));
  std::vector<IndexSet> blocks;
  for (auto& [l, blk] : by_label) blocks.push_back(std::move(blk));
  return Partition(static_cast<int>(label.size()), std::move(blocks));
}

std::string Partition::label(int b) const {
  std::ostringstream os;
  os << "B";
  bool first = true;
  for (int j : blocks_.at(b)) {
    if (!first) os << "_";
    os << j;
    first = false;
  }
  return os.str();
}

bool Partition::refines(const Partition& other) const {
  if (ground_size() != other.ground_size()) return false;
  for (const auto& blk : blocks_) {
    int target = other.block_of(blk.front());
    for (int j : blk)
      if (other.block_of(j) != target) return false;
  }
  return true;
}

// --------------------------------------------------------------- DiagonalElement

DiagonalElement DiagonalElement::indicator(int n, const IndexSet& support) {
  DiagonalElement d = zero(n);
  for (int j : support) d.values.at(static_cast<size_t>(j)) = Rational(1);
  return d;
}

bool DiagonalElement::in_algebra(const Partition& p) const {
  if (size() != p.ground_size()) return false;
  for (const auto& blk : p.blocks()) {
    const Rational& v = values[static_cast<size_t>(blk.front())];
    for (int j : blk)
      if (values[static_cast<size_t>(j)] != v) return false;
  }
  return true;
}

DiagonalElement DiagonalElement::operator*(const DiagonalElement& o) const {
  DiagonalElement out = *this;
  for (size_t i = 0; i < values.size(); ++i) out.values[i] *= o.values[i];
  return out;
}

DiagonalElement DiagonalElement::operator+(const DiagonalElement& o) const {
  DiagonalElement out = *this;
  for (size_t i = 0; i < values.size(); ++i) out.values[i] += o.values[i];
  return out;
}

// ----------------------------------------------------------------- ConcreteModel

ConcreteModel::ConcreteModel(GroundSet g, PartialInjection s, Partition p)
    : ground(g), sigma(std::move(s)), partition(std::move(p)) {
  if (sigma.size() != ground.size)
    throw ModelError("sigma is over a different ground size than the model");
  if (partition.ground_size() != ground.size)
    throw ModelError("partition is over a different ground size than the model");
}

bool domain_is_union_of_blocks(const ConcreteModel& model) {
  IndexSet dom = model.sigma.domain();
  for (const auto& blk : model.partition.blocks()) {
    bool in = set_contains(dom, blk.front());
    for (int j : blk)
      if (set_contains(dom, j) != in) return false;
  }
  return true;
}

namespace {

// delta(a) = U a U* evaluated directly on basis vectors: value a(sigma^-1(k))
// on the range, zero elsewhere.
DiagonalElement conjugate_by_u(const ConcreteModel& m, const DiagonalElement& a) {
  DiagonalElement out = DiagonalElement::zero(m.ground.size);
  for (int k = 0; k < m.ground.size; ++k)
    if (auto j = m.sigma.preimage(k))
      out.values[static_cast<size_t>(k)] = a.values[static_cast<size_t>(*j)];
  return out;
}

std::string index_witness(const char* what, int j) {
  return std::string(what) + " at basis index " + std::to_string(j);
}

}  // namespace

ValidationReport validate_concrete(const ConcreteModel& model) {
  ValidationReport rep;
  const int n = model.ground.size;

  // (a) (UU*)^2 = UU*: the range indicator is idempotent entrywise.
  DiagonalElement uu = DiagonalElement::indicator(n, model.sigma.range());
  if (!(uu * uu == uu))
    rep.partial_isometry = {false, "range indicator not idempotent"};

  // (b) each U^m, m <= size: (U^m U*^m)^2 = U^m U*^m.
  for (int m = 1; m <= n && rep.power_partial_isometry.ok; ++m) {
    DiagonalElement p = DiagonalElement::indicator(n, model.sigma.power_range(m));
    if (!(p * p == p))
      rep.power_partial_isometry = {false, "power " + std::to_string(m)};
  }

  // (c) delta(A) in A: range(sigma) is a union of blocks and each block
  // inside the range pulls back into a single block.
  {
    IndexSet range = model.sigma.range();
    for (const auto& blk : model.partition.blocks()) {
      bool in = set_contains(range, blk.front());
      for (int k : blk) {
        if (set_contains(range, k) != in) {
          rep.delta_compatibility = {false, index_witness("range splits a block", k)};
          break;
        }
      }
      if (!rep.delta_compatibility.ok) break;
      if (!in) continue;
      int target = -1;
      for (int k : blk) {
        int j = *model.sigma.preimage(k);
        int b = model.partition.block_of(j);
        if (target == -1) target = b;
        if (b != target) {
          rep.delta_compatibility = {false, index_witness("preimage straddles blocks", k)};
          break;
        }
      }
      if (!rep.delta_compatibility.ok) break;
    }
  }

  // (d) U*U in A': commutation with every block indicator on basis vectors.
  {
    DiagonalElement du = DiagonalElement::indicator(n, model.sigma.domain());
    for (int b = 0; b < model.partition.block_count() && rep.domain_projection_commutes.ok; ++b) {
      DiagonalElement p = DiagonalElement::indicator(n, model.partition.block(b));
      if (!(du * p == p * du))
        rep.domain_projection_commutes = {false, "block " + model.partition.label(b)};
    }
  }

  // (e) U*U in A: the domain is a union of blocks.
  if (!domain_is_union_of_blocks(model))
    rep.domain_projection_in_algebra = {false, "dom(sigma) is not a union of blocks"};

  // (f) U a = delta(a) U for every block indicator a, on basis vectors:
  // for j in dom both sides send e_j to a_j e_{sigma(j)}.
  for (int b = 0; b < model.partition.block_count() && rep.intertwining.ok; ++b) {
    DiagonalElement a = DiagonalElement::indicator(n, model.partition.block(b));
    DiagonalElement da = conjugate_by_u(model, a);
    for (int j = 0; j < n; ++j) {
      auto k = model.sigma.apply(j);
      if (!k) continue;  // both sides kill e_j
      if (a.values[static_cast<size_t>(j)] != da.values[static_cast<size_t>(*k)]) {
        rep.intertwining = {false, index_witness("U a != delta(a) U", j)};
        break;
      }
    }
  }

  return rep;
}

void require_valid(const ConcreteModel& model) {
  ValidationReport rep = validate_concrete(model);
  if (rep.model_valid()) return;
  std::string why;
  auto add = [&](const char* name, const CheckResult& c) {
    if (!c.ok) why += std::string(why.empty() ? "" : "; ") + name + ": " + c.witness;
  };
  add("partial_isometry", rep.partial_isometry);
  add("power_partial_isometry", rep.power_partial_isometry);
  add("delta_compatibility", rep.delta_compatibility);
  add("domain_projection_commutes", rep.domain_projection_commutes);
  add("intertwining", rep.intertwining);
  throw std::invalid_argument("invalid model: " + why);
}

ConcreteModel extend_to_A1(const ConcreteModel& model) {
  require_valid(model);
  if (domain_is_union_of_blocks(model)) return model;
  IndexSet dom = model.sigma.domain();
  Partition refined = model.partition.refine_by_key([&](int j) -> long long {
    return 2LL * model.partition.block_of(j) + (set_contains(dom, j) ? 1 : 0);
  });
  return ConcreteModel(model.ground, model.sigma, refined);
}

OperatorClass classify_operator(const ConcreteModel& model) {
  require_valid(model);
  bool total = model.sigma.is_total();
  bool onto = model.sigma.is_onto();
  if (model.sigma.is_empty()) return OperatorClass::Zero;
  if (total && onto) return OperatorClass::Unitary;
  if (total) return OperatorClass::Isometry;
  if (onto) return OperatorClass::Coisometry;
  return OperatorClass::ProperPartial;
}

std::string to_string(OperatorClass c) {
  switch (c) {
    case OperatorClass::Zero: return "zero";
    case OperatorClass::Isometry: return "isometry";
    case OperatorClass::Coisometry: return "coisometry";
    case OperatorClass::Unitary: return "unitary";
    case OperatorClass::ProperPartial: return "proper-partial";
  }
  return "?";
}

}  // namespace coeffspec
