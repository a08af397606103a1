#include "csgame/structures.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

#include "csgame/errors.hpp"

namespace csgame {

Vocabulary Vocabulary::merge(const Vocabulary& a, const Vocabulary& b) {
  Vocabulary out = a;
  for (const auto& [name, arity] : b.relations) {
    auto [it, inserted] = out.relations.emplace(name, arity);
    if (!inserted && it->second != arity) {
      throw ContractError("relation '" + name + "' has conflicting arities");
    }
  }
  out.constants.insert(b.constants.begin(), b.constants.end());
  return out;
}

Vocabulary Vocabulary::intersect(const Vocabulary& a, const Vocabulary& b) {
  Vocabulary out;
  for (const auto& [name, arity] : a.relations) {
    auto it = b.relations.find(name);
    if (it != b.relations.end() && it->second == arity) out.relations.emplace(name, arity);
  }
  std::set_intersection(a.constants.begin(), a.constants.end(), b.constants.begin(),
                        b.constants.end(), std::inserter(out.constants, out.constants.end()));
  return out;
}

Relation::Relation(int arity, int universe_size) : arity_(arity), universe_size_(universe_size) {
  if (arity < 1) throw ContractError("relation arity must be at least 1");
  std::size_t cells = 1;
  for (int i = 0; i < arity; ++i) {
    cells *= static_cast<std::size_t>(std::max(universe_size, 1));
    if (cells > (std::size_t{1} << 26)) throw ResourceLimitError("relation table too large");
  }
  table_.assign(cells, 0);
}

std::size_t Relation::index(std::span<const Element> tuple) const {
  std::size_t idx = 0;
  for (Element e : tuple) idx = idx * static_cast<std::size_t>(universe_size_) + static_cast<std::size_t>(e);
  return idx;
}

void Relation::insert(std::span<const Element> tuple) {
  if (static_cast<int>(tuple.size()) != arity_) throw ContractError("tuple length does not match arity");
  for (Element e : tuple) {
    if (e < 0 || e >= universe_size_) throw ContractError("tuple element outside the universe");
  }
  table_[index(tuple)] = 1;
  tuples_.emplace(tuple.begin(), tuple.end());
}

Structure::Structure(int size, std::string name) : size_(size), name_(std::move(name)) {
  if (size < 1) throw ContractError("a structure needs a nonempty universe");
  labels_.resize(static_cast<std::size_t>(size));
  std::iota(labels_.begin(), labels_.end(), 0);
}

void Structure::add_relation(const std::string& name, int arity) {
  if (name.empty()) throw ContractError("relation names must be nonempty");
  if (name == "=") throw ContractError("'=' is built in");
  auto it = relations_.find(name);
  if (it != relations_.end()) {
    if (it->second.arity() != arity) throw ContractError("relation '" + name + "' redeclared");
    return;
  }
  relations_.emplace(name, Relation(arity, size_));
}

void Structure::add_tuple(const std::string& name, std::vector<Element> tuple) {
  auto it = relations_.find(name);
  if (it == relations_.end()) {
    add_relation(name, static_cast<int>(tuple.size()));
    it = relations_.find(name);
  }
  it->second.insert(tuple);
}

void Structure::set_constant(const std::string& name, Element e) {
  if (e < 0 || e >= size_) throw ContractError("constant '" + name + "' outside the universe");
  constants_[name] = e;
}

bool Structure::holds(std::string_view relation, std::span<const Element> tuple) const {
  auto it = relations_.find(relation);
  if (it == relations_.end()) return false;
  if (static_cast<int>(tuple.size()) != it->second.arity()) return false;
  return it->second.holds(tuple);
}

const Relation* Structure::relation(std::string_view name) const {
  auto it = relations_.find(name);
  return it == relations_.end() ? nullptr : &it->second;
}

std::optional<Element> Structure::constant(std::string_view name) const {
  auto it = constants_.find(name);
  if (it == constants_.end()) return std::nullopt;
  return it->second;
}

Vocabulary Structure::vocabulary() const {
  Vocabulary v;
  for (const auto& [name, rel] : relations_) v.relations.emplace(name, rel.arity());
  for (const auto& [name, e] : constants_) v.constants.insert(name);
  return v;
}

void Structure::set_labels(std::vector<int> labels) {
  if (static_cast<int>(labels.size()) != size_) throw ContractError("label count must equal universe size");
  std::vector<int> sorted = labels;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw ContractError("element ids must be unique");
  }
  labels_ = std::move(labels);
}

bool Structure::operator==(const Structure& other) const {
  if (size_ != other.size_ || constants_ != other.constants_) return false;
  if (relations_.size() != other.relations_.size()) return false;
  for (const auto& [name, rel] : relations_) {
    const Relation* o = other.relation(name);
    if (!o || o->arity() != rel.arity() || o->tuples() != rel.tuples()) return false;
  }
  return true;
}

Structure make_linear_order(int n, bool with_successor) {
  if (n < 0) throw ContractError("linear order length must be nonnegative");
  Structure s(n + 1, "A_" + std::to_string(n));
  s.add_relation("<", 2);
  if (with_successor) s.add_relation("succ", 2);
  for (int a = 0; a <= n; ++a) {
    for (int b = a + 1; b <= n; ++b) s.add_tuple("<", {a, b});
    if (with_successor && a < n) s.add_tuple("succ", {a, a + 1});
  }
  s.set_constant("min", 0);
  s.set_constant("max", n);
  s.linear_order_ = true;
  return s;
}

StructurePtr linear_order(int n, bool with_successor) {
  return std::make_shared<const Structure>(make_linear_order(n, with_successor));
}

void check_variable(int var) {
  if (var < 0 || var >= kMaxVariables) {
    throw ContractError("variable index " + std::to_string(var) + " out of range");
  }
}

Element Assignment::at(int var) const {
  check_variable(var);
  if (values_[var] == kUnassigned) throw ContractError("variable x" + std::to_string(var) + " is unassigned");
  return values_[var];
}

Assignment Assignment::with(int var, Element e) const {
  check_variable(var);
  Assignment out = *this;
  out.values_[var] = e;
  return out;
}

VarMask Assignment::domain() const {
  VarMask m = 0;
  for (int j = 0; j < kMaxVariables; ++j) {
    if (values_[j] != kUnassigned) m |= var_bit(j);
  }
  return m;
}

std::vector<int> Assignment::domain_list() const {
  std::vector<int> out;
  for (int j = 0; j < kMaxVariables; ++j) {
    if (values_[j] != kUnassigned) out.push_back(j);
  }
  return out;
}

namespace {

void normalize(std::vector<Assignment>& members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
}

}  // namespace

Family::Family(StructurePtr structure, VarMask dom, std::vector<Assignment> members)
    : structure_(std::move(structure)), dom_(dom), members_(std::move(members)) {
  if (!structure_) throw ContractError("family without a structure");
  if (dom_ >= var_bit(kMaxVariables)) throw ContractError("family domain uses too many variables");
  for (const Assignment& a : members_) {
    if (a.domain() != dom_) throw ContractError("family member domain differs from the family domain");
    for (int j = 0; j < kMaxVariables; ++j) {
      Element e = a.get(j);
      if (e != kUnassigned && (e < 0 || e >= structure_->size())) {
        throw ContractError("assignment value outside the universe");
      }
    }
  }
  normalize(members_);
}

Family::Family(Trusted, StructurePtr structure, VarMask dom, std::vector<Assignment> members)
    : structure_(std::move(structure)), dom_(dom), members_(std::move(members)) {
  normalize(members_);
}

Family make_trusted_family(StructurePtr structure, VarMask dom, std::vector<Assignment> members) {
  return Family(Family::Trusted{}, std::move(structure), dom, std::move(members));
}

Family Family::sentence(StructurePtr structure) {
  return Family(std::move(structure), 0, {Assignment{}});
}

Family Family::empty(StructurePtr structure, VarMask dom) {
  return Family(std::move(structure), dom, {});
}

bool Family::contains(const Assignment& a) const {
  return std::binary_search(members_.begin(), members_.end(), a);
}

bool Family::subset_of(const Family& other) const {
  return structure_ == other.structure_ && dom_ == other.dom_ &&
         std::includes(other.members_.begin(), other.members_.end(), members_.begin(), members_.end());
}

Family Family::select(const std::vector<bool>& keep) const {
  if (keep.size() != members_.size()) throw ContractError("selection mask size mismatch");
  std::vector<Assignment> out;
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (keep[i]) out.push_back(members_[i]);
  }
  return make_trusted_family(structure_, dom_, std::move(out));
}

KChoiceFunction::KChoiceFunction(const Family& family, std::vector<std::vector<Element>> tuples)
    : k_(0), tuples_(std::move(tuples)) {
  if (tuples_.size() != family.size()) {
    throw InvalidChoiceError("k-choice function must be defined on exactly the family members");
  }
  if (tuples_.empty()) return;
  k_ = static_cast<int>(tuples_.front().size());
  if (k_ < 1) throw InvalidChoiceError("k-choice function needs k >= 1");
  if (k_ > family.structure().size()) {
    throw InvalidChoiceError("no k-choice function exists when k exceeds the universe size");
  }
  for (const auto& t : tuples_) {
    if (static_cast<int>(t.size()) != k_) throw InvalidChoiceError("k-choice tuples differ in length");
    std::vector<Element> sorted = t;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw InvalidChoiceError("k-choice elements must be pairwise distinct");
    }
    for (Element e : t) {
      if (e < 0 || e >= family.structure().size()) throw InvalidChoiceError("choice outside the universe");
    }
  }
}

Family change(const Family& family, std::span<const Element> choice, int var) {
  check_variable(var);
  if (choice.size() != family.size()) throw InvalidChoiceError("choice function undefined on some member");
  std::vector<Assignment> out;
  out.reserve(family.size());
  for (std::size_t i = 0; i < family.size(); ++i) {
    Element e = choice[i];
    if (e < 0 || e >= family.structure().size()) throw InvalidChoiceError("choice outside the universe");
    out.push_back(family.members()[i].with(var, e));
  }
  return make_trusted_family(family.structure_ptr(), family.dom() | var_bit(var), std::move(out));
}

Family multiply(const Family& family, int var) {
  check_variable(var);
  std::vector<Assignment> out;
  out.reserve(family.size() * static_cast<std::size_t>(family.structure().size()));
  for (const Assignment& a : family.members()) {
    for (Element e = 0; e < family.structure().size(); ++e) out.push_back(a.with(var, e));
  }
  return make_trusted_family(family.structure_ptr(), family.dom() | var_bit(var), std::move(out));
}

Family k_change(const Family& family, const KChoiceFunction& choice, int var) {
  check_variable(var);
  if (choice.tuples().size() != family.size()) throw InvalidChoiceError("k-choice function built for another family");
  std::vector<Assignment> out;
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (Element e : choice.tuples()[i]) {
      if (e < 0 || e >= family.structure().size()) throw InvalidChoiceError("choice outside the universe");
      out.push_back(family.members()[i].with(var, e));
    }
  }
  return make_trusted_family(family.structure_ptr(), family.dom() | var_bit(var), std::move(out));
}

Family k_multiply(const Family& family, int var, int k, const std::vector<std::vector<Element>>& exclusions) {
  check_variable(var);
  if (k < 1) throw InvalidSelectionError("k must be at least 1");
  if (exclusions.size() != family.size()) throw InvalidSelectionError("one exclusion set per member required");
  const int n = family.structure().size();
  const VarMask dom = family.dom() | var_bit(var);
  for (const auto& ex : exclusions) {
    if (static_cast<int>(ex.size()) > k - 1) throw InvalidSelectionError("exclusion set larger than k-1");
    for (Element e : ex) {
      if (e < 0 || e >= n) throw InvalidSelectionError("excluded element outside the universe");
    }
  }
  if (n < k) return make_trusted_family(family.structure_ptr(), dom, {});
  std::vector<Assignment> out;
  std::vector<char> excluded(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < family.size(); ++i) {
    std::fill(excluded.begin(), excluded.end(), 0);
    for (Element e : exclusions[i]) excluded[static_cast<std::size_t>(e)] = 1;
    for (Element e = 0; e < n; ++e) {
      if (!excluded[static_cast<std::size_t>(e)]) out.push_back(family.members()[i].with(var, e));
    }
  }
  return make_trusted_family(family.structure_ptr(), dom, std::move(out));
}

std::vector<Family> enumerate_k_multiplications_naive(const Family& family, int var, int k,
                                                      NaiveLimits limits) {
  check_variable(var);
  const int n = family.structure().size();
  const std::size_t members = family.size();
  if (n > limits.max_universe || members > limits.max_members || k > limits.max_k || k < 1) {
    throw ResourceLimitError("naive k-multiplication limits exceeded");
  }
  const std::size_t bits = members * static_cast<std::size_t>(n);
  if (bits > 24) throw ResourceLimitError("naive k-multiplication state space too large");

  // Ordered k-tuples of distinct elements.
  std::vector<std::vector<Element>> tuples;
  std::vector<Element> cur;
  auto gen = [&](auto&& self) -> void {
    if (static_cast<int>(cur.size()) == k) {
      tuples.push_back(cur);
      return;
    }
    for (Element e = 0; e < n; ++e) {
      if (std::find(cur.begin(), cur.end(), e) != cur.end()) continue;
      cur.push_back(e);
      self(self);
      cur.pop_back();
    }
  };
  gen(gen);

  // A family is a bitmask over (member, element) extensions. Start from the empty union.
  std::vector<std::uint32_t> reach{0};
  std::vector<char> seen(std::size_t{1} << bits, 0);

  // Iterate over every k-choice function G^k (one tuple index per member).
  std::vector<std::size_t> pick(members, 0);
  const bool any_function = !tuples.empty() || members == 0;
  bool done = !any_function;
  while (!done) {
    // Options: every selection (one coordinate per member) of G^k.
    std::vector<std::uint32_t> options{0};
    for (std::size_t m = 0; m < members; ++m) {
      std::vector<std::uint32_t> next;
      for (std::uint32_t o : options) {
        for (Element e : tuples[pick[m]]) {
          next.push_back(o | (std::uint32_t{1} << (m * static_cast<std::size_t>(n) + static_cast<std::size_t>(e))));
        }
      }
      options = std::move(next);
    }
    std::vector<std::uint32_t> next_reach;
    for (std::uint32_t r : reach) {
      for (std::uint32_t o : options) {
        std::uint32_t u = r | o;
        if (!seen[u]) {
          seen[u] = 1;
          next_reach.push_back(u);
        }
      }
    }
    for (std::uint32_t u : next_reach) seen[u] = 0;
    reach = std::move(next_reach);

    std::size_t m = 0;
    while (m < members && ++pick[m] == tuples.size()) pick[m++] = 0;
    if (m == members) done = true;
  }

  std::vector<Family> out;
  out.reserve(reach.size());
  for (std::uint32_t mask : reach) {
    std::vector<Assignment> ext;
    for (std::size_t m = 0; m < members; ++m) {
      for (Element e = 0; e < n; ++e) {
        if (mask & (std::uint32_t{1} << (m * static_cast<std::size_t>(n) + static_cast<std::size_t>(e)))) {
          ext.push_back(family.members()[m].with(var, e));
        }
      }
    }
    out.push_back(make_trusted_family(family.structure_ptr(), family.dom() | var_bit(var), std::move(ext)));
  }
  std::sort(out.begin(), out.end(), [](const Family& a, const Family& b) { return a.members() < b.members(); });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace csgame
