// Finite base categories: finite sets and finite M-sets given by tables,
// with composition, hom-set enumeration and the finite limits/colimits the
// rest of the library is built on.
//
// A third base instance would have to supply what these two do: objects with
// a fixed, duplicate-free, finite element order; morphisms as total tables
// validated at construction; structural object equality; and the
// constructions below (binary/wide products, equalizers, pullbacks, terminal,
// coproducts, coequalizers, quotients by a partition, initial) with
// deterministic element encodings. Nothing else in the library inspects
// objects in any other way.
#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fmachina {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

/// Base class of everything thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input data: partial tables, broken laws, unknown names.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Structurally incompatible diagram: endpoint mismatch, non-parallel pair.
class DiagramError : public Error {
 public:
  using Error::Error;
};

/// An enumeration or materialized object exceeded a configured bound.
class SizeLimitError : public Error {
 public:
  using Error::Error;
};

/// A guaranteed internal invariant failed; indicates a bug, not bad input.
class InternalError : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Size guards
// ---------------------------------------------------------------------------

struct SizeGuard {
  long long enumeration_bound = 1'000'000;  // cap on |Y|^|X| when enumerating hom-sets
  long long object_bound = 100'000;         // cap on materialized object cardinality
};

/// Process-wide guard configuration. Set once at startup (the CLI reads
/// FMACHINA_SIZE_GUARD); read-only afterwards.
SizeGuard& size_guard();

/// |base|^|exp| clamped to `cap + 1` so callers can compare against `cap`
/// without overflow.
long long clamped_pow(long long base, long long exp, long long cap);

/// Throws SizeLimitError when n exceeds the object bound.
void guard_object_size(long long n, const std::string& what);

// ---------------------------------------------------------------------------
// Canonical element encodings
// ---------------------------------------------------------------------------

std::string pair_name(const std::string& a, const std::string& b);
std::string tuple_name(const std::vector<std::string>& parts);  // arity >= 2
std::string table_name(const std::vector<std::string>& images);
std::string tagged_name(const std::string& tag, const std::string& x);

// ---------------------------------------------------------------------------
// FiniteMonoid / MonoidHom
// ---------------------------------------------------------------------------

/// A finite monoid given by its full multiplication table. Unit laws and
/// associativity are checked at construction.
class FiniteMonoid {
 public:
  FiniteMonoid(std::vector<std::string> elements, const std::string& unit,
               const std::vector<std::vector<std::string>>& mult_rows);

  static std::shared_ptr<const FiniteMonoid> trivial();

  int size() const { return static_cast<int>(elements_.size()); }
  const std::vector<std::string>& elements() const { return elements_; }
  const std::string& element(int i) const { return elements_.at(static_cast<size_t>(i)); }
  int unit_index() const { return unit_; }
  int mult(int a, int b) const { return mult_[static_cast<size_t>(a)][static_cast<size_t>(b)]; }
  int index_of(const std::string& name) const;  // throws ValidationError if absent
  std::optional<int> find(const std::string& name) const;

  bool operator==(const FiniteMonoid& other) const;

 private:
  std::vector<std::string> elements_;
  std::map<std::string, int> index_;
  int unit_ = 0;
  std::vector<std::vector<int>> mult_;
};

using MonoidPtr = std::shared_ptr<const FiniteMonoid>;

/// Monoid homomorphism; preservation of unit and multiplication is checked
/// on the full table at construction.
class MonoidHom {
 public:
  MonoidHom(MonoidPtr dom, MonoidPtr cod, const std::map<std::string, std::string>& table);

  const MonoidPtr& dom() const { return dom_; }
  const MonoidPtr& cod() const { return cod_; }
  int apply_index(int i) const { return table_[static_cast<size_t>(i)]; }
  const std::string& apply(const std::string& x) const;
  bool operator==(const MonoidHom& other) const;

 private:
  MonoidPtr dom_, cod_;
  std::vector<int> table_;
};

// ---------------------------------------------------------------------------
// BaseCategory
// ---------------------------------------------------------------------------

/// Which concrete category objects live in: finite sets (monoid == nullptr)
/// or finite M-sets for a fixed finite monoid.
struct BaseCategory {
  MonoidPtr monoid;  // null means plain finite sets

  bool is_mset() const { return monoid != nullptr; }
  bool operator==(const BaseCategory& other) const;
  std::string describe() const;
};

// ---------------------------------------------------------------------------
// BaseObject
// ---------------------------------------------------------------------------

/// An object of the base category: an ordered finite set of distinct element
/// identifiers, optionally with a monoid action given by a full table.
/// Immutable; copies share storage.
class BaseObject {
 public:
  /// Plain finite set.
  static BaseObject plain(std::vector<std::string> elements);

  /// Finite M-set; `action_rows[m][x]` is the index of m.x. Unit law and
  /// mixed associativity are checked.
  static BaseObject with_action(std::vector<std::string> elements, MonoidPtr monoid,
                                std::vector<std::vector<int>> action_rows);

  /// As above, but with the action given by element names; every
  /// (monoid element, set element) entry must be present.
  static BaseObject with_action_table(
      std::vector<std::string> elements, MonoidPtr monoid,
      const std::map<std::string, std::map<std::string, std::string>>& action);

  int size() const;
  const std::vector<std::string>& elements() const;
  const std::string& element(int i) const;
  int index_of(const std::string& name) const;  // throws ValidationError if absent
  std::optional<int> find(const std::string& name) const;
  bool contains(const std::string& name) const { return find(name).has_value(); }

  const BaseCategory& base() const;
  bool is_mset() const { return base().is_mset(); }
  /// Index of m.x; only valid for monoid-action objects.
  int act(int m, int x) const;

  bool operator==(const BaseObject& other) const;
  bool operator!=(const BaseObject& other) const { return !(*this == other); }

  /// "{a,b,c}"; used in error messages.
  std::string describe() const;

  struct Impl;

 private:
  explicit BaseObject(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

// ---------------------------------------------------------------------------
// BaseMorphism
// ---------------------------------------------------------------------------

/// A morphism of the base category: a total mapping table dom -> cod.
/// Totality is structural; equivariance is checked at construction whenever
/// both endpoints carry an action.
class BaseMorphism {
 public:
  BaseMorphism(BaseObject dom, BaseObject cod, std::vector<int> table);

  /// Builds from a name -> name table, reporting missing or unknown entries.
  static BaseMorphism from_table(const BaseObject& dom, const BaseObject& cod,
                                 const std::map<std::string, std::string>& table,
                                 const std::string& what = "morphism");

  static BaseMorphism identity(const BaseObject& x);

  /// The unique morphism out of an empty object.
  static BaseMorphism empty(const BaseObject& dom, const BaseObject& cod);

  const BaseObject& dom() const { return dom_; }
  const BaseObject& cod() const { return cod_; }
  int apply_index(int i) const { return (*table_)[static_cast<size_t>(i)]; }
  const std::string& apply(const std::string& x) const;
  const std::vector<int>& table() const { return *table_; }

  bool operator==(const BaseMorphism& other) const;
  bool operator!=(const BaseMorphism& other) const { return !(*this == other); }

  /// Mapping table keyed by element name, for reports and serialization.
  std::map<std::string, std::string> named_table() const;

 private:
  BaseObject dom_, cod_;
  std::shared_ptr<const std::vector<int>> table_;
};

/// g after f; endpoints must agree structurally.
BaseMorphism compose(const BaseMorphism& g, const BaseMorphism& f);

/// All morphisms X -> Y, in lexicographic order over tables (first element's
/// image most significant). For M-sets only the equivariant tables are kept,
/// in the same order. Throws SizeLimitError when |Y|^|X| exceeds the
/// enumeration bound.
std::vector<BaseMorphism> enumerate_hom(const BaseObject& x, const BaseObject& y);

/// Number of morphisms enumerate_hom would return, without materializing.
long long hom_count(const BaseObject& x, const BaseObject& y);

// ---------------------------------------------------------------------------
// Partition
// ---------------------------------------------------------------------------

/// An equivalence relation on a carrier. Block identifiers are the least
/// element (in carrier order) of each block.
class Partition {
 public:
  /// `rep_of[i]` = any chosen member of i's block; representatives are
  /// canonicalized to the least index per block.
  Partition(BaseObject carrier, std::vector<int> rep_of);

  static Partition discrete(const BaseObject& carrier);
  static Partition indiscrete(const BaseObject& carrier);
  /// Kernel of f: x ~ y iff f(x) = f(y).
  static Partition kernel(const BaseMorphism& f);
  /// Smallest equivalence relating each given pair of element indices.
  static Partition from_pairs(const BaseObject& carrier,
                              const std::vector<std::pair<int, int>>& pairs);

  const BaseObject& carrier() const { return carrier_; }
  int representative_index(int i) const { return rep_[static_cast<size_t>(i)]; }
  const std::string& block_of(const std::string& x) const;
  bool same_block(int i, int j) const { return rep_[static_cast<size_t>(i)] == rep_[static_cast<size_t>(j)]; }
  int block_count() const { return blocks_; }
  /// Blocks in order of their representatives; elements in carrier order.
  std::vector<std::vector<std::string>> blocks() const;

  /// True when every block of *this is contained in a block of `coarser`.
  bool refines(const Partition& coarser) const;
  /// Common refinement (meet) of two partitions on the same carrier.
  Partition meet(const Partition& other) const;

  bool operator==(const Partition& other) const;

 private:
  BaseObject carrier_;
  std::vector<int> rep_;
  int blocks_ = 0;
};

// ---------------------------------------------------------------------------
// Limits and colimits
// ---------------------------------------------------------------------------

struct LimitCone {
  BaseObject apex;
  std::vector<BaseMorphism> legs;  // projections / inclusion
};

struct ColimitCocone {
  BaseObject apex;
  std::vector<BaseMorphism> legs;  // injections / quotient map
};

/// Binary product; apex elements are "(x,y)" in x-major order, action
/// pointwise.
LimitCone product_cone(const BaseObject& x, const BaseObject& y);

/// Wide product of one or more factors. A single factor is returned
/// unwrapped with the identity projection; two or more factors yield flat
/// "(x1,...,xn)" tuples.
LimitCone wide_product_cone(const std::vector<BaseObject>& factors);

/// Equalizer of a parallel pair; the apex reuses the parent's element names.
LimitCone equalizer_cone(const BaseMorphism& f, const BaseMorphism& g);

/// Pullback of f : X -> Z, g : Y -> Z; apex {(x,y) : f(x) = g(y)}.
LimitCone pullback_cone(const BaseMorphism& f, const BaseMorphism& g);

/// One-element object "*" with the trivial action.
LimitCone terminal_cone(const BaseCategory& base);

/// Tagged disjoint union with elements "inl(x)", "inr(y)".
ColimitCocone coproduct_cocone(const BaseObject& x, const BaseObject& y);

/// Coequalizer of a parallel pair: the quotient of the codomain by the
/// generated equivalence (closed under the action for M-sets).
ColimitCocone coequalizer_cocone(const BaseMorphism& f, const BaseMorphism& g);

/// Quotient by a partition; for M-sets the partition is first closed into a
/// congruence. Apex elements are block representatives; the leg sends each
/// element to its representative.
ColimitCocone quotient_cocone(const Partition& p);

/// Empty object.
ColimitCocone initial_cocone(const BaseCategory& base);

// Kind-dispatched entry points mirroring the construction lists above.

enum class LimitKind { product, equalizer, pullback, terminal };
enum class ColimitKind { coproduct, coequalizer, initial, quotient };

struct LimitDiagram {
  std::vector<BaseObject> objects;
  std::vector<BaseMorphism> morphisms;
  std::optional<BaseCategory> base;  // required for terminal
};

struct ColimitDiagram {
  std::vector<BaseObject> objects;
  std::vector<BaseMorphism> morphisms;
  std::optional<Partition> partition;  // required for quotient
  std::optional<BaseCategory> base;    // required for initial
};

LimitCone base_limit(LimitKind kind, const LimitDiagram& diagram);
ColimitCocone base_colimit(ColimitKind kind, const ColimitDiagram& diagram);

/// The mediating morphism into a cone whose legs are jointly injective: the
/// unique u with legs[i] ∘ u = components[i]. Throws DiagramError (tagged by
/// `what`) when some tuple of component values hits no apex element.
BaseMorphism pair_into_cone(const LimitCone& cone,
                            const std::vector<BaseMorphism>& components,
                            const std::string& what = "pairing");

/// Factors g through an injective morphism: the unique u with
/// inclusion ∘ u = g. Throws DiagramError (tagged by `what`) when some value
/// of g lies outside the image.
BaseMorphism factor_through(const BaseMorphism& inclusion, const BaseMorphism& g,
                            const std::string& what = "factorization");

}  // namespace fmachina
