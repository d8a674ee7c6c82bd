#include "fmachina/base.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>
#include <sstream>

namespace fmachina {

namespace {

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

/// Union-find over element indices, used for quotients and congruence
/// closure.
class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(static_cast<size_t>(n)) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  int find(int i) {
    while (parent_[static_cast<size_t>(i)] != i) {
      parent_[static_cast<size_t>(i)] = parent_[static_cast<size_t>(parent_[static_cast<size_t>(i)])];
      i = parent_[static_cast<size_t>(i)];
    }
    return i;
  }

  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (a > b) std::swap(a, b);  // keep the least index as root
    parent_[static_cast<size_t>(b)] = a;
    return true;
  }

 private:
  std::vector<int> parent_;
};

Partition partition_from_uf(const BaseObject& carrier, UnionFind& uf) {
  std::vector<int> rep(static_cast<size_t>(carrier.size()));
  for (int i = 0; i < carrier.size(); ++i) rep[static_cast<size_t>(i)] = uf.find(i);
  return Partition(carrier, std::move(rep));
}

/// Smallest equivalence containing the given pairs that is also closed under
/// the action: whenever a ~ b, also m.a ~ m.b for every monoid element.
Partition congruence_closure(const BaseObject& carrier, std::deque<std::pair<int, int>> pairs) {
  UnionFind uf(carrier.size());
  const int msize = carrier.is_mset() ? carrier.base().monoid->size() : 0;
  while (!pairs.empty()) {
    auto [a, b] = pairs.front();
    pairs.pop_front();
    if (!uf.unite(a, b)) continue;
    for (int m = 0; m < msize; ++m) pairs.emplace_back(carrier.act(m, a), carrier.act(m, b));
  }
  return partition_from_uf(carrier, uf);
}

}  // namespace

// ---------------------------------------------------------------------------
// Size guards
// ---------------------------------------------------------------------------

SizeGuard& size_guard() {
  static SizeGuard guard;
  return guard;
}

long long clamped_pow(long long base, long long exp, long long cap) {
  long long result = 1;
  for (long long i = 0; i < exp; ++i) {
    if (base != 0 && result > cap / base) return cap + 1;
    result *= base;
    if (result > cap) return cap + 1;
  }
  return result;
}

void guard_object_size(long long n, const std::string& what) {
  const long long bound = size_guard().object_bound;
  if (n > bound) {
    throw SizeLimitError(what + " would have " + std::to_string(n) +
                         " elements, exceeding the object bound of " + std::to_string(bound));
  }
}

// ---------------------------------------------------------------------------
// Canonical element encodings
// ---------------------------------------------------------------------------

std::string pair_name(const std::string& a, const std::string& b) {
  return "(" + a + "," + b + ")";
}

std::string tuple_name(const std::vector<std::string>& parts) {
  if (parts.size() < 2) throw InternalError("tuple_name needs at least two components");
  return "(" + join(parts, ",") + ")";
}

std::string table_name(const std::vector<std::string>& images) {
  return "[" + join(images, ",") + "]";
}

std::string tagged_name(const std::string& tag, const std::string& x) {
  return tag + "(" + x + ")";
}

// ---------------------------------------------------------------------------
// FiniteMonoid
// ---------------------------------------------------------------------------

FiniteMonoid::FiniteMonoid(std::vector<std::string> elements, const std::string& unit,
                           const std::vector<std::vector<std::string>>& mult_rows)
    : elements_(std::move(elements)) {
  if (elements_.empty()) throw ValidationError("monoid needs at least a unit element");
  for (size_t i = 0; i < elements_.size(); ++i) {
    if (!index_.emplace(elements_[i], static_cast<int>(i)).second) {
      throw ValidationError("monoid: duplicate element '" + elements_[i] + "'");
    }
  }
  auto it = index_.find(unit);
  if (it == index_.end()) throw ValidationError("monoid: unit '" + unit + "' is not an element");
  unit_ = it->second;

  const size_t n = elements_.size();
  if (mult_rows.size() != n) throw ValidationError("monoid: multiplication table must have one row per element");
  mult_.assign(n, std::vector<int>(n, 0));
  for (size_t a = 0; a < n; ++a) {
    if (mult_rows[a].size() != n) {
      throw ValidationError("monoid: row for '" + elements_[a] + "' must list one product per element");
    }
    for (size_t b = 0; b < n; ++b) {
      auto jt = index_.find(mult_rows[a][b]);
      if (jt == index_.end()) {
        throw ValidationError("monoid: product entry '" + mult_rows[a][b] + "' is not an element");
      }
      mult_[a][b] = jt->second;
    }
  }

  for (size_t a = 0; a < n; ++a) {
    if (mult_[static_cast<size_t>(unit_)][a] != static_cast<int>(a) ||
        mult_[a][static_cast<size_t>(unit_)] != static_cast<int>(a)) {
      throw ValidationError("monoid: unit law fails at '" + elements_[a] + "'");
    }
  }
  for (size_t a = 0; a < n; ++a) {
    for (size_t b = 0; b < n; ++b) {
      for (size_t c = 0; c < n; ++c) {
        const int left = mult_[static_cast<size_t>(mult_[a][b])][c];
        const int right = mult_[a][static_cast<size_t>(mult_[b][c])];
        if (left != right) {
          throw ValidationError("monoid: associativity fails at ('" + elements_[a] + "','" +
                                elements_[b] + "','" + elements_[c] + "')");
        }
      }
    }
  }
}

std::shared_ptr<const FiniteMonoid> FiniteMonoid::trivial() {
  static std::shared_ptr<const FiniteMonoid> one =
      std::make_shared<FiniteMonoid>(std::vector<std::string>{"e"}, "e",
                                     std::vector<std::vector<std::string>>{{"e"}});
  return one;
}

int FiniteMonoid::index_of(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw ValidationError("monoid has no element '" + name + "'");
  return it->second;
}

std::optional<int> FiniteMonoid::find(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool FiniteMonoid::operator==(const FiniteMonoid& other) const {
  if (this == &other) return true;
  return elements_ == other.elements_ && unit_ == other.unit_ && mult_ == other.mult_;
}

// ---------------------------------------------------------------------------
// MonoidHom
// ---------------------------------------------------------------------------

MonoidHom::MonoidHom(MonoidPtr dom, MonoidPtr cod, const std::map<std::string, std::string>& table)
    : dom_(std::move(dom)), cod_(std::move(cod)) {
  if (!dom_ || !cod_) throw ValidationError("monoid homomorphism needs both monoids");
  table_.resize(static_cast<size_t>(dom_->size()));
  for (const auto& [key, value] : table) {
    if (!dom_->find(key)) throw ValidationError("monoid homomorphism: unknown source element '" + key + "'");
  }
  for (int i = 0; i < dom_->size(); ++i) {
    auto it = table.find(dom_->element(i));
    if (it == table.end()) {
      throw ValidationError("monoid homomorphism: missing image for '" + dom_->element(i) + "'");
    }
    table_[static_cast<size_t>(i)] = cod_->index_of(it->second);
  }
  if (table_[static_cast<size_t>(dom_->unit_index())] != cod_->unit_index()) {
    throw ValidationError("monoid homomorphism: unit is not preserved");
  }
  for (int a = 0; a < dom_->size(); ++a) {
    for (int b = 0; b < dom_->size(); ++b) {
      const int lhs = table_[static_cast<size_t>(dom_->mult(a, b))];
      const int rhs = cod_->mult(table_[static_cast<size_t>(a)], table_[static_cast<size_t>(b)]);
      if (lhs != rhs) {
        throw ValidationError("monoid homomorphism: multiplication not preserved at ('" +
                              dom_->element(a) + "','" + dom_->element(b) + "')");
      }
    }
  }
}

const std::string& MonoidHom::apply(const std::string& x) const {
  return cod_->element(table_[static_cast<size_t>(dom_->index_of(x))]);
}

bool MonoidHom::operator==(const MonoidHom& other) const {
  return *dom_ == *other.dom_ && *cod_ == *other.cod_ && table_ == other.table_;
}

// ---------------------------------------------------------------------------
// BaseCategory
// ---------------------------------------------------------------------------

bool BaseCategory::operator==(const BaseCategory& other) const {
  if (monoid == other.monoid) return true;
  if (!monoid || !other.monoid) return false;
  return *monoid == *other.monoid;
}

std::string BaseCategory::describe() const {
  if (!monoid) return "finite sets";
  return "finite M-sets (|M| = " + std::to_string(monoid->size()) + ")";
}

// ---------------------------------------------------------------------------
// BaseObject
// ---------------------------------------------------------------------------

struct BaseObject::Impl {
  std::vector<std::string> elements;
  std::map<std::string, int> index;
  BaseCategory base;
  std::vector<std::vector<int>> action;  // [monoid element][set element]
};

namespace {

std::shared_ptr<const BaseObject::Impl> make_impl(std::vector<std::string> elements, MonoidPtr monoid,
                                                  std::vector<std::vector<int>> action) {
  guard_object_size(static_cast<long long>(elements.size()), "object");
  auto impl = std::make_shared<BaseObject::Impl>();
  impl->elements = std::move(elements);
  for (size_t i = 0; i < impl->elements.size(); ++i) {
    if (!impl->index.emplace(impl->elements[i], static_cast<int>(i)).second) {
      throw ValidationError("object: duplicate element '" + impl->elements[i] + "'");
    }
  }
  impl->base = BaseCategory{std::move(monoid)};
  impl->action = std::move(action);

  if (impl->base.is_mset()) {
    const auto& monoid_ref = *impl->base.monoid;
    const size_t n = impl->elements.size();
    if (impl->action.size() != static_cast<size_t>(monoid_ref.size())) {
      throw ValidationError("object: action table must have one row per monoid element");
    }
    for (int m = 0; m < monoid_ref.size(); ++m) {
      const auto& row = impl->action[static_cast<size_t>(m)];
      if (row.size() != n) {
        throw ValidationError("object: action row for '" + monoid_ref.element(m) +
                              "' must cover every element");
      }
      for (int v : row) {
        if (v < 0 || static_cast<size_t>(v) >= n) {
          throw InternalError("object: action entry out of range");
        }
      }
    }
    const auto& unit_row = impl->action[static_cast<size_t>(monoid_ref.unit_index())];
    for (size_t x = 0; x < n; ++x) {
      if (unit_row[x] != static_cast<int>(x)) {
        throw ValidationError("object: unit must act as the identity, but moves '" +
                              impl->elements[x] + "'");
      }
    }
    for (int a = 0; a < monoid_ref.size(); ++a) {
      for (int b = 0; b < monoid_ref.size(); ++b) {
        const int ab = monoid_ref.mult(a, b);
        for (size_t x = 0; x < n; ++x) {
          const int stepwise = impl->action[static_cast<size_t>(a)]
                                           [static_cast<size_t>(impl->action[static_cast<size_t>(b)][x])];
          const int combined = impl->action[static_cast<size_t>(ab)][x];
          if (stepwise != combined) {
            throw ValidationError("object: action is not associative at ('" + monoid_ref.element(a) +
                                  "','" + monoid_ref.element(b) + "','" + impl->elements[x] + "')");
          }
        }
      }
    }
  } else if (!impl->action.empty()) {
    throw InternalError("object: plain set carries an action table");
  }
  return impl;
}

}  // namespace

BaseObject BaseObject::plain(std::vector<std::string> elements) {
  return BaseObject(make_impl(std::move(elements), nullptr, {}));
}

BaseObject BaseObject::with_action(std::vector<std::string> elements, MonoidPtr monoid,
                                   std::vector<std::vector<int>> action_rows) {
  if (!monoid) throw ValidationError("object: monoid action needs a monoid");
  return BaseObject(make_impl(std::move(elements), std::move(monoid), std::move(action_rows)));
}

BaseObject BaseObject::with_action_table(
    std::vector<std::string> elements, MonoidPtr monoid,
    const std::map<std::string, std::map<std::string, std::string>>& action) {
  if (!monoid) throw ValidationError("object: monoid action needs a monoid");
  std::map<std::string, int> index;
  for (size_t i = 0; i < elements.size(); ++i) {
    if (!index.emplace(elements[i], static_cast<int>(i)).second) {
      throw ValidationError("object: duplicate element '" + elements[i] + "'");
    }
  }
  for (const auto& [m, row] : action) {
    if (!monoid->find(m)) throw ValidationError("object: action row for unknown monoid element '" + m + "'");
    for (const auto& [x, y] : row) {
      if (!index.count(x)) throw ValidationError("object: action moves unknown element '" + x + "'");
      if (!index.count(y)) throw ValidationError("object: action sends '" + x + "' to unknown element '" + y + "'");
    }
  }
  std::vector<std::vector<int>> rows(static_cast<size_t>(monoid->size()),
                                     std::vector<int>(elements.size(), 0));
  for (int m = 0; m < monoid->size(); ++m) {
    auto row_it = action.find(monoid->element(m));
    if (row_it == action.end()) {
      throw ValidationError("object: missing action row for monoid element '" + monoid->element(m) + "'");
    }
    for (size_t x = 0; x < elements.size(); ++x) {
      auto cell = row_it->second.find(elements[x]);
      if (cell == row_it->second.end()) {
        throw ValidationError("object: action of '" + monoid->element(m) + "' is missing '" +
                              elements[x] + "'");
      }
      rows[static_cast<size_t>(m)][x] = index.at(cell->second);
    }
  }
  return with_action(std::move(elements), std::move(monoid), std::move(rows));
}

int BaseObject::size() const { return static_cast<int>(impl_->elements.size()); }

const std::vector<std::string>& BaseObject::elements() const { return impl_->elements; }

const std::string& BaseObject::element(int i) const {
  if (i < 0 || i >= size()) throw InternalError("object: element index out of range");
  return impl_->elements[static_cast<size_t>(i)];
}

int BaseObject::index_of(const std::string& name) const {
  auto it = impl_->index.find(name);
  if (it == impl_->index.end()) {
    throw ValidationError("object " + describe() + " has no element '" + name + "'");
  }
  return it->second;
}

std::optional<int> BaseObject::find(const std::string& name) const {
  auto it = impl_->index.find(name);
  if (it == impl_->index.end()) return std::nullopt;
  return it->second;
}

const BaseCategory& BaseObject::base() const { return impl_->base; }

int BaseObject::act(int m, int x) const {
  if (!is_mset()) throw InternalError("object: plain set has no action");
  return impl_->action[static_cast<size_t>(m)][static_cast<size_t>(x)];
}

bool BaseObject::operator==(const BaseObject& other) const {
  if (impl_ == other.impl_) return true;
  return impl_->base == other.impl_->base && impl_->elements == other.impl_->elements &&
         impl_->action == other.impl_->action;
}

std::string BaseObject::describe() const {
  std::ostringstream out;
  out << "{";
  const size_t shown = std::min<size_t>(impl_->elements.size(), 8);
  for (size_t i = 0; i < shown; ++i) {
    if (i) out << ",";
    out << impl_->elements[i];
  }
  if (impl_->elements.size() > shown) out << ",... (" << impl_->elements.size() << " elements)";
  out << "}";
  return out.str();
}

// ---------------------------------------------------------------------------
// BaseMorphism
// ---------------------------------------------------------------------------

BaseMorphism::BaseMorphism(BaseObject dom, BaseObject cod, std::vector<int> table)
    : dom_(std::move(dom)), cod_(std::move(cod)) {
  if (!(dom_.base() == cod_.base())) {
    throw DiagramError("morphism endpoints live in different base categories");
  }
  if (table.size() != static_cast<size_t>(dom_.size())) {
    throw ValidationError("morphism: table must cover every element of the domain");
  }
  for (int v : table) {
    if (v < 0 || v >= cod_.size()) throw InternalError("morphism: image index out of range");
  }
  if (dom_.is_mset()) {
    const int msize = dom_.base().monoid->size();
    for (int m = 0; m < msize; ++m) {
      for (int x = 0; x < dom_.size(); ++x) {
        const int lhs = table[static_cast<size_t>(dom_.act(m, x))];
        const int rhs = cod_.act(m, table[static_cast<size_t>(x)]);
        if (lhs != rhs) {
          throw ValidationError("morphism is not equivariant: '" + dom_.base().monoid->element(m) +
                                "' acting on '" + dom_.element(x) + "' maps to '" +
                                cod_.element(lhs) + "' but should reach '" + cod_.element(rhs) + "'");
        }
      }
    }
  }
  table_ = std::make_shared<const std::vector<int>>(std::move(table));
}

BaseMorphism BaseMorphism::from_table(const BaseObject& dom, const BaseObject& cod,
                                      const std::map<std::string, std::string>& table,
                                      const std::string& what) {
  for (const auto& [key, value] : table) {
    if (!dom.contains(key)) {
      throw ValidationError(what + ": source '" + key + "' is not an element of the domain " +
                            dom.describe());
    }
    if (!cod.contains(value)) {
      throw ValidationError(what + ": image '" + value + "' is not an element of the codomain " +
                            cod.describe());
    }
  }
  std::vector<int> indices(static_cast<size_t>(dom.size()));
  for (int i = 0; i < dom.size(); ++i) {
    auto it = table.find(dom.element(i));
    if (it == table.end()) {
      throw ValidationError(what + ": missing image for '" + dom.element(i) + "'");
    }
    indices[static_cast<size_t>(i)] = cod.index_of(it->second);
  }
  return BaseMorphism(dom, cod, std::move(indices));
}

BaseMorphism BaseMorphism::identity(const BaseObject& x) {
  std::vector<int> table(static_cast<size_t>(x.size()));
  std::iota(table.begin(), table.end(), 0);
  return BaseMorphism(x, x, std::move(table));
}

BaseMorphism BaseMorphism::empty(const BaseObject& dom, const BaseObject& cod) {
  if (dom.size() != 0) throw DiagramError("empty morphism needs an empty domain");
  return BaseMorphism(dom, cod, {});
}

const std::string& BaseMorphism::apply(const std::string& x) const {
  return cod_.element(apply_index(dom_.index_of(x)));
}

bool BaseMorphism::operator==(const BaseMorphism& other) const {
  return dom_ == other.dom_ && cod_ == other.cod_ &&
         (table_ == other.table_ || *table_ == *other.table_);
}

std::map<std::string, std::string> BaseMorphism::named_table() const {
  std::map<std::string, std::string> out;
  for (int i = 0; i < dom_.size(); ++i) out[dom_.element(i)] = cod_.element(apply_index(i));
  return out;
}

BaseMorphism compose(const BaseMorphism& g, const BaseMorphism& f) {
  if (!(f.cod() == g.dom())) {
    throw DiagramError("cannot compose: codomain " + f.cod().describe() + " differs from domain " +
                       g.dom().describe());
  }
  std::vector<int> table(static_cast<size_t>(f.dom().size()));
  for (int i = 0; i < f.dom().size(); ++i) {
    table[static_cast<size_t>(i)] = g.apply_index(f.apply_index(i));
  }
  return BaseMorphism(f.dom(), g.cod(), std::move(table));
}

namespace {

bool table_is_equivariant(const BaseObject& x, const BaseObject& y, const std::vector<int>& table) {
  if (!x.is_mset()) return true;
  const int msize = x.base().monoid->size();
  for (int m = 0; m < msize; ++m) {
    for (int i = 0; i < x.size(); ++i) {
      if (table[static_cast<size_t>(x.act(m, i))] != y.act(m, table[static_cast<size_t>(i)])) {
        return false;
      }
    }
  }
  return true;
}

/// Runs `visit` over all |Y|^|X| tables in lexicographic order (first
/// element's image most significant), keeping only equivariant ones.
template <typename Visit>
void for_each_hom(const BaseObject& x, const BaseObject& y, Visit visit) {
  if (!(x.base() == y.base())) {
    throw DiagramError("hom-set endpoints live in different base categories");
  }
  const long long bound = size_guard().enumeration_bound;
  const long long total = clamped_pow(y.size(), x.size(), bound);
  if (total > bound) {
    throw SizeLimitError("hom-set enumeration from " + x.describe() + " to " + y.describe() +
                         " exceeds the bound of " + std::to_string(bound) + " tables");
  }
  if (x.size() == 0) {
    visit(std::vector<int>{});
    return;
  }
  if (y.size() == 0) return;
  std::vector<int> table(static_cast<size_t>(x.size()), 0);
  while (true) {
    if (table_is_equivariant(x, y, table)) visit(table);
    int pos = x.size() - 1;
    while (pos >= 0) {
      if (++table[static_cast<size_t>(pos)] < y.size()) break;
      table[static_cast<size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
}

}  // namespace

std::vector<BaseMorphism> enumerate_hom(const BaseObject& x, const BaseObject& y) {
  std::vector<BaseMorphism> out;
  for_each_hom(x, y, [&](const std::vector<int>& table) { out.emplace_back(x, y, table); });
  return out;
}

long long hom_count(const BaseObject& x, const BaseObject& y) {
  if (!x.is_mset()) {
    if (!(x.base() == y.base())) {
      throw DiagramError("hom-set endpoints live in different base categories");
    }
    const long long cap = std::numeric_limits<long long>::max() - 1;
    const long long total = clamped_pow(y.size(), x.size(), cap);
    if (total > cap) throw SizeLimitError("hom-set count overflows");
    return total;
  }
  long long count = 0;
  for_each_hom(x, y, [&](const std::vector<int>&) { ++count; });
  return count;
}

// ---------------------------------------------------------------------------
// Partition
// ---------------------------------------------------------------------------

Partition::Partition(BaseObject carrier, std::vector<int> rep_of) : carrier_(std::move(carrier)) {
  const size_t n = static_cast<size_t>(carrier_.size());
  if (rep_of.size() != n) throw ValidationError("partition: representative table must cover the carrier");
  for (int v : rep_of) {
    if (v < 0 || static_cast<size_t>(v) >= n) throw InternalError("partition: representative out of range");
  }
  UnionFind uf(static_cast<int>(n));
  for (size_t i = 0; i < n; ++i) uf.unite(static_cast<int>(i), rep_of[i]);
  rep_.resize(n);
  for (size_t i = 0; i < n; ++i) rep_[i] = uf.find(static_cast<int>(i));
  blocks_ = 0;
  for (size_t i = 0; i < n; ++i) {
    if (rep_[i] == static_cast<int>(i)) ++blocks_;
  }
}

Partition Partition::discrete(const BaseObject& carrier) {
  std::vector<int> rep(static_cast<size_t>(carrier.size()));
  std::iota(rep.begin(), rep.end(), 0);
  return Partition(carrier, std::move(rep));
}

Partition Partition::indiscrete(const BaseObject& carrier) {
  std::vector<int> rep(static_cast<size_t>(carrier.size()), 0);
  if (carrier.size() == 0) return Partition(carrier, {});
  return Partition(carrier, std::move(rep));
}

Partition Partition::from_pairs(const BaseObject& carrier,
                                const std::vector<std::pair<int, int>>& pairs) {
  UnionFind uf(carrier.size());
  for (const auto& [a, b] : pairs) {
    if (a < 0 || a >= carrier.size() || b < 0 || b >= carrier.size()) {
      throw InternalError("partition: pair index out of range");
    }
    uf.unite(a, b);
  }
  std::vector<int> rep(static_cast<size_t>(carrier.size()));
  for (int i = 0; i < carrier.size(); ++i) rep[static_cast<size_t>(i)] = uf.find(i);
  return Partition(carrier, std::move(rep));
}

Partition Partition::kernel(const BaseMorphism& f) {
  std::map<int, int> first_with_image;
  std::vector<int> rep(static_cast<size_t>(f.dom().size()));
  for (int i = 0; i < f.dom().size(); ++i) {
    auto [it, inserted] = first_with_image.emplace(f.apply_index(i), i);
    rep[static_cast<size_t>(i)] = it->second;
  }
  return Partition(f.dom(), std::move(rep));
}

const std::string& Partition::block_of(const std::string& x) const {
  return carrier_.element(rep_[static_cast<size_t>(carrier_.index_of(x))]);
}

std::vector<std::vector<std::string>> Partition::blocks() const {
  std::map<int, std::vector<std::string>> by_rep;
  for (int i = 0; i < carrier_.size(); ++i) {
    by_rep[rep_[static_cast<size_t>(i)]].push_back(carrier_.element(i));
  }
  std::vector<std::vector<std::string>> out;
  out.reserve(by_rep.size());
  for (auto& [rep, members] : by_rep) out.push_back(std::move(members));
  return out;
}

bool Partition::refines(const Partition& coarser) const {
  if (!(carrier_ == coarser.carrier_)) throw DiagramError("partitions live on different carriers");
  for (int i = 0; i < carrier_.size(); ++i) {
    if (!coarser.same_block(i, rep_[static_cast<size_t>(i)])) return false;
  }
  return true;
}

Partition Partition::meet(const Partition& other) const {
  if (!(carrier_ == other.carrier_)) throw DiagramError("partitions live on different carriers");
  std::map<std::pair<int, int>, int> first_with_pair;
  std::vector<int> rep(static_cast<size_t>(carrier_.size()));
  for (int i = 0; i < carrier_.size(); ++i) {
    const std::pair<int, int> key{rep_[static_cast<size_t>(i)], other.rep_[static_cast<size_t>(i)]};
    auto [it, inserted] = first_with_pair.emplace(key, i);
    rep[static_cast<size_t>(i)] = it->second;
  }
  return Partition(carrier_, std::move(rep));
}

bool Partition::operator==(const Partition& other) const {
  return carrier_ == other.carrier_ && rep_ == other.rep_;
}

// ---------------------------------------------------------------------------
// Limits
// ---------------------------------------------------------------------------

namespace {

void require_same_base(const BaseObject& x, const BaseObject& y, const std::string& what) {
  if (!(x.base() == y.base())) {
    throw DiagramError(what + ": objects live in different base categories");
  }
}

/// Restricts the carrier to the elements whose index satisfies `keep`,
/// retaining names and the action. Throws when the subset is not closed.
BaseObject subobject(const BaseObject& parent, const std::vector<bool>& keep,
                     const std::string& what) {
  std::vector<std::string> elements;
  std::vector<int> new_index(static_cast<size_t>(parent.size()), -1);
  for (int i = 0; i < parent.size(); ++i) {
    if (keep[static_cast<size_t>(i)]) {
      new_index[static_cast<size_t>(i)] = static_cast<int>(elements.size());
      elements.push_back(parent.element(i));
    }
  }
  if (!parent.is_mset()) return BaseObject::plain(std::move(elements));
  const int msize = parent.base().monoid->size();
  std::vector<std::vector<int>> rows(static_cast<size_t>(msize),
                                     std::vector<int>(elements.size(), 0));
  for (int m = 0; m < msize; ++m) {
    for (int i = 0; i < parent.size(); ++i) {
      if (!keep[static_cast<size_t>(i)]) continue;
      const int target = parent.act(m, i);
      if (!keep[static_cast<size_t>(target)]) {
        throw InternalError(what + ": subset is not closed under the action at '" +
                            parent.element(i) + "'");
      }
      rows[static_cast<size_t>(m)][static_cast<size_t>(new_index[static_cast<size_t>(i)])] =
          new_index[static_cast<size_t>(target)];
    }
  }
  return BaseObject::with_action(std::move(elements), parent.base().monoid, std::move(rows));
}

BaseMorphism inclusion(const BaseObject& sub, const BaseObject& parent) {
  std::vector<int> table(static_cast<size_t>(sub.size()));
  for (int i = 0; i < sub.size(); ++i) {
    table[static_cast<size_t>(i)] = parent.index_of(sub.element(i));
  }
  return BaseMorphism(sub, parent, std::move(table));
}

}  // namespace

LimitCone wide_product_cone(const std::vector<BaseObject>& factors) {
  if (factors.empty()) throw DiagramError("product needs at least one factor");
  for (const auto& f : factors) require_same_base(factors.front(), f, "product");
  if (factors.size() == 1) {
    return LimitCone{factors.front(), {BaseMorphism::identity(factors.front())}};
  }

  long long total = 1;
  for (const auto& f : factors) total = (f.size() == 0) ? 0 : total;
  if (total != 0) {
    for (const auto& f : factors) {
      total *= f.size();
      guard_object_size(total, "product");
    }
  }

  const size_t arity = factors.size();
  std::vector<std::vector<int>> coords;  // per apex element, component indices
  std::vector<std::string> names;
  if (total > 0) {
    std::vector<int> digits(arity, 0);
    while (true) {
      std::vector<std::string> parts(arity);
      for (size_t k = 0; k < arity; ++k) {
        parts[k] = factors[k].element(digits[k]);
      }
      names.push_back(tuple_name(parts));
      coords.push_back(digits);
      size_t pos = arity - 1;
      while (true) {
        if (++digits[pos] < factors[pos].size()) break;
        digits[pos] = 0;
        if (pos == 0) goto done;
        --pos;
      }
    }
  done:;
  }

  BaseObject apex = BaseObject::plain({});
  if (factors.front().is_mset()) {
    const auto monoid = factors.front().base().monoid;
    const int msize = monoid->size();
    std::map<std::vector<int>, int> apex_index;
    for (size_t i = 0; i < coords.size(); ++i) apex_index[coords[i]] = static_cast<int>(i);
    std::vector<std::vector<int>> rows(static_cast<size_t>(msize), std::vector<int>(coords.size(), 0));
    for (int m = 0; m < msize; ++m) {
      for (size_t i = 0; i < coords.size(); ++i) {
        std::vector<int> moved(arity);
        for (size_t k = 0; k < arity; ++k) moved[k] = factors[k].act(m, coords[i][k]);
        rows[static_cast<size_t>(m)][i] = apex_index.at(moved);
      }
    }
    apex = BaseObject::with_action(std::move(names), monoid, std::move(rows));
  } else {
    apex = BaseObject::plain(std::move(names));
  }

  std::vector<BaseMorphism> legs;
  legs.reserve(arity);
  for (size_t k = 0; k < arity; ++k) {
    std::vector<int> table(coords.size());
    for (size_t i = 0; i < coords.size(); ++i) table[i] = coords[i][k];
    legs.emplace_back(apex, factors[k], std::move(table));
  }
  return LimitCone{std::move(apex), std::move(legs)};
}

LimitCone product_cone(const BaseObject& x, const BaseObject& y) {
  return wide_product_cone({x, y});
}

LimitCone equalizer_cone(const BaseMorphism& f, const BaseMorphism& g) {
  if (!(f.dom() == g.dom()) || !(f.cod() == g.cod())) {
    throw DiagramError("equalizer needs a parallel pair of morphisms");
  }
  std::vector<bool> keep(static_cast<size_t>(f.dom().size()));
  for (int i = 0; i < f.dom().size(); ++i) {
    keep[static_cast<size_t>(i)] = f.apply_index(i) == g.apply_index(i);
  }
  BaseObject apex = subobject(f.dom(), keep, "equalizer");
  BaseMorphism leg = inclusion(apex, f.dom());
  return LimitCone{std::move(apex), {std::move(leg)}};
}

LimitCone pullback_cone(const BaseMorphism& f, const BaseMorphism& g) {
  if (!(f.cod() == g.cod())) {
    throw DiagramError("pullback needs morphisms with a common codomain");
  }
  LimitCone prod = product_cone(f.dom(), g.dom());
  std::vector<bool> keep(static_cast<size_t>(prod.apex.size()));
  for (int i = 0; i < prod.apex.size(); ++i) {
    keep[static_cast<size_t>(i)] =
        f.apply_index(prod.legs[0].apply_index(i)) == g.apply_index(prod.legs[1].apply_index(i));
  }
  BaseObject apex = subobject(prod.apex, keep, "pullback");
  BaseMorphism into_product = inclusion(apex, prod.apex);
  BaseMorphism p1 = compose(prod.legs[0], into_product);
  BaseMorphism p2 = compose(prod.legs[1], into_product);
  return LimitCone{std::move(apex), {std::move(p1), std::move(p2)}};
}

LimitCone terminal_cone(const BaseCategory& base) {
  if (!base.is_mset()) return LimitCone{BaseObject::plain({"*"}), {}};
  std::vector<std::vector<int>> rows(static_cast<size_t>(base.monoid->size()), std::vector<int>{0});
  return LimitCone{BaseObject::with_action({"*"}, base.monoid, std::move(rows)), {}};
}

// ---------------------------------------------------------------------------
// Colimits
// ---------------------------------------------------------------------------

ColimitCocone coproduct_cocone(const BaseObject& x, const BaseObject& y) {
  require_same_base(x, y, "coproduct");
  guard_object_size(static_cast<long long>(x.size()) + y.size(), "coproduct");
  std::vector<std::string> names;
  names.reserve(static_cast<size_t>(x.size() + y.size()));
  for (int i = 0; i < x.size(); ++i) names.push_back(tagged_name("inl", x.element(i)));
  for (int i = 0; i < y.size(); ++i) names.push_back(tagged_name("inr", y.element(i)));

  BaseObject apex = BaseObject::plain({});
  if (x.is_mset()) {
    const auto monoid = x.base().monoid;
    const int msize = monoid->size();
    std::vector<std::vector<int>> rows(static_cast<size_t>(msize),
                                       std::vector<int>(names.size(), 0));
    for (int m = 0; m < msize; ++m) {
      for (int i = 0; i < x.size(); ++i) rows[static_cast<size_t>(m)][static_cast<size_t>(i)] = x.act(m, i);
      for (int i = 0; i < y.size(); ++i) {
        rows[static_cast<size_t>(m)][static_cast<size_t>(x.size() + i)] = x.size() + y.act(m, i);
      }
    }
    apex = BaseObject::with_action(std::move(names), monoid, std::move(rows));
  } else {
    apex = BaseObject::plain(std::move(names));
  }

  std::vector<int> left(static_cast<size_t>(x.size()));
  std::iota(left.begin(), left.end(), 0);
  std::vector<int> right(static_cast<size_t>(y.size()));
  std::iota(right.begin(), right.end(), x.size());
  BaseMorphism inl(x, apex, std::move(left));
  BaseMorphism inr(y, apex, std::move(right));
  return ColimitCocone{std::move(apex), {std::move(inl), std::move(inr)}};
}

ColimitCocone quotient_cocone(const Partition& p) {
  const BaseObject& carrier = p.carrier();
  std::deque<std::pair<int, int>> pairs;
  for (int i = 0; i < carrier.size(); ++i) pairs.emplace_back(i, p.representative_index(i));
  const Partition closed = congruence_closure(carrier, std::move(pairs));

  std::vector<bool> keep(static_cast<size_t>(carrier.size()));
  for (int i = 0; i < carrier.size(); ++i) {
    keep[static_cast<size_t>(i)] = closed.representative_index(i) == i;
  }
  std::vector<std::string> names;
  std::vector<int> apex_index(static_cast<size_t>(carrier.size()), -1);
  for (int i = 0; i < carrier.size(); ++i) {
    if (keep[static_cast<size_t>(i)]) {
      apex_index[static_cast<size_t>(i)] = static_cast<int>(names.size());
      names.push_back(carrier.element(i));
    }
  }

  BaseObject apex = BaseObject::plain({});
  if (carrier.is_mset()) {
    const auto monoid = carrier.base().monoid;
    const int msize = monoid->size();
    std::vector<std::vector<int>> rows(static_cast<size_t>(msize),
                                       std::vector<int>(names.size(), 0));
    for (int m = 0; m < msize; ++m) {
      for (int i = 0; i < carrier.size(); ++i) {
        if (!keep[static_cast<size_t>(i)]) continue;
        const int target = closed.representative_index(carrier.act(m, i));
        rows[static_cast<size_t>(m)][static_cast<size_t>(apex_index[static_cast<size_t>(i)])] =
            apex_index[static_cast<size_t>(target)];
      }
    }
    apex = BaseObject::with_action(std::move(names), monoid, std::move(rows));
  } else {
    apex = BaseObject::plain(std::move(names));
  }

  std::vector<int> table(static_cast<size_t>(carrier.size()));
  for (int i = 0; i < carrier.size(); ++i) {
    table[static_cast<size_t>(i)] = apex_index[static_cast<size_t>(closed.representative_index(i))];
  }
  BaseMorphism q(carrier, apex, std::move(table));
  return ColimitCocone{std::move(apex), {std::move(q)}};
}

ColimitCocone coequalizer_cocone(const BaseMorphism& f, const BaseMorphism& g) {
  if (!(f.dom() == g.dom()) || !(f.cod() == g.cod())) {
    throw DiagramError("coequalizer needs a parallel pair of morphisms");
  }
  std::deque<std::pair<int, int>> pairs;
  for (int i = 0; i < f.dom().size(); ++i) pairs.emplace_back(f.apply_index(i), g.apply_index(i));
  return quotient_cocone(congruence_closure(f.cod(), std::move(pairs)));
}

ColimitCocone initial_cocone(const BaseCategory& base) {
  if (!base.is_mset()) return ColimitCocone{BaseObject::plain({}), {}};
  std::vector<std::vector<int>> rows(static_cast<size_t>(base.monoid->size()));
  return ColimitCocone{BaseObject::with_action({}, base.monoid, std::move(rows)), {}};
}

// ---------------------------------------------------------------------------
// Kind-dispatched entry points
// ---------------------------------------------------------------------------

LimitCone base_limit(LimitKind kind, const LimitDiagram& diagram) {
  switch (kind) {
    case LimitKind::product:
      if (diagram.objects.empty()) throw DiagramError("product needs at least one object");
      return wide_product_cone(diagram.objects);
    case LimitKind::equalizer:
      if (diagram.morphisms.size() != 2) throw DiagramError("equalizer needs exactly two morphisms");
      return equalizer_cone(diagram.morphisms[0], diagram.morphisms[1]);
    case LimitKind::pullback:
      if (diagram.morphisms.size() != 2) throw DiagramError("pullback needs exactly two morphisms");
      return pullback_cone(diagram.morphisms[0], diagram.morphisms[1]);
    case LimitKind::terminal:
      if (!diagram.base) throw DiagramError("terminal object needs a base category");
      return terminal_cone(*diagram.base);
  }
  throw InternalError("unknown limit kind");
}

ColimitCocone base_colimit(ColimitKind kind, const ColimitDiagram& diagram) {
  switch (kind) {
    case ColimitKind::coproduct:
      if (diagram.objects.size() != 2) throw DiagramError("coproduct needs exactly two objects");
      return coproduct_cocone(diagram.objects[0], diagram.objects[1]);
    case ColimitKind::coequalizer:
      if (diagram.morphisms.size() != 2) throw DiagramError("coequalizer needs exactly two morphisms");
      return coequalizer_cocone(diagram.morphisms[0], diagram.morphisms[1]);
    case ColimitKind::initial:
      if (!diagram.base) throw DiagramError("initial object needs a base category");
      return initial_cocone(*diagram.base);
    case ColimitKind::quotient:
      if (!diagram.partition) throw DiagramError("quotient needs a partition");
      return quotient_cocone(*diagram.partition);
  }
  throw InternalError("unknown colimit kind");
}

// ---------------------------------------------------------------------------
// Mediating morphisms
// ---------------------------------------------------------------------------

BaseMorphism pair_into_cone(const LimitCone& cone,
                            const std::vector<BaseMorphism>& components,
                            const std::string& what) {
  if (components.empty()) throw DiagramError(what + ": no components given");
  if (components.size() != cone.legs.size())
    throw DiagramError(what + ": expected " + std::to_string(cone.legs.size()) +
                       " components, got " + std::to_string(components.size()));
  const BaseObject& dom = components[0].dom();
  for (size_t i = 0; i < components.size(); ++i) {
    if (components[i].dom() != dom)
      throw DiagramError(what + ": components do not share a domain");
    if (components[i].cod() != cone.legs[i].cod())
      throw DiagramError(what + ": component " + std::to_string(i) +
                         " does not match the cone leg's codomain");
  }

  std::map<std::vector<int>, int> by_image;
  std::vector<int> key(cone.legs.size());
  for (int p = 0; p < cone.apex.size(); ++p) {
    for (size_t i = 0; i < cone.legs.size(); ++i) key[i] = cone.legs[i].apply_index(p);
    if (!by_image.emplace(key, p).second)
      throw InternalError(what + ": cone legs are not jointly injective at " +
                          cone.apex.element(p));
  }

  std::vector<int> table(static_cast<size_t>(dom.size()));
  for (int a = 0; a < dom.size(); ++a) {
    for (size_t i = 0; i < components.size(); ++i) key[i] = components[i].apply_index(a);
    auto it = by_image.find(key);
    if (it == by_image.end()) {
      std::string values;
      for (size_t i = 0; i < components.size(); ++i) {
        if (i) values += ", ";
        values += components[i].cod().element(key[i]);
      }
      throw DiagramError(what + ": no apex element matches (" + values + ") for " +
                         dom.element(a));
    }
    table[static_cast<size_t>(a)] = it->second;
  }
  return BaseMorphism(dom, cone.apex, std::move(table));
}

BaseMorphism factor_through(const BaseMorphism& inclusion, const BaseMorphism& g,
                            const std::string& what) {
  if (inclusion.cod() != g.cod())
    throw DiagramError(what + ": codomains differ");
  std::vector<int> back(static_cast<size_t>(inclusion.cod().size()), -1);
  for (int s = 0; s < inclusion.dom().size(); ++s) {
    int x = inclusion.apply_index(s);
    if (back[static_cast<size_t>(x)] != -1)
      throw InternalError(what + ": the inclusion is not injective at " +
                          inclusion.cod().element(x));
    back[static_cast<size_t>(x)] = s;
  }
  std::vector<int> table(static_cast<size_t>(g.dom().size()));
  for (int a = 0; a < g.dom().size(); ++a) {
    int x = g.apply_index(a);
    if (back[static_cast<size_t>(x)] == -1)
      throw DiagramError(what + ": value " + g.cod().element(x) + " of " +
                         g.dom().element(a) + " lies outside the image");
    table[static_cast<size_t>(a)] = back[static_cast<size_t>(x)];
  }
  return BaseMorphism(g.dom(), inclusion.dom(), std::move(table));
}

}  // namespace fmachina
