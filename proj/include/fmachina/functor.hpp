// Endofunctors with chosen right adjoints, represented by their transpose
// bijections Hom(FX, Y) = Hom(X, RY). Built-in families: the identity, pairing
// with a fixed input object (right adjoint: tables over that object),
// composites, iterates, and the three base-change adjunctions along a monoid
// homomorphism.
#pragma once

#include "fmachina/base.hpp"

namespace fmachina {

using MonoidHomPtr = std::shared_ptr<const MonoidHom>;

// ---------------------------------------------------------------------------
// Functor
// ---------------------------------------------------------------------------

class Functor {
 public:
  virtual ~Functor() = default;
  virtual const BaseCategory& source() const = 0;
  virtual const BaseCategory& target() const = 0;
  virtual BaseObject apply(const BaseObject& x) const = 0;
  virtual BaseMorphism apply(const BaseMorphism& f) const = 0;
  virtual std::string describe() const = 0;
};

using FunctorPtr = std::shared_ptr<const Functor>;

// ---------------------------------------------------------------------------
// AdjunctionSpec
// ---------------------------------------------------------------------------

struct AdjunctionSpec;
using AdjunctionSpecPtr = std::shared_ptr<const AdjunctionSpec>;

/// Serializable description of a built-in adjunction; the one place derived
/// constructions (products, quotients, ...) copy their functor identity from.
struct AdjunctionSpec {
  enum class Kind {
    identity,
    input_product,          // X -> X x I over finite sets
    composite,              // outer after inner
    iterate,                // n-fold self-composite
    base_change_lower,      // extension along a monoid homomorphism
    base_change_upper,      // restriction, right adjoint by equivariant maps
    base_change_comonadic,  // extension after restriction, as one endofunctor
  };

  Kind kind = Kind::identity;
  std::optional<BaseCategory> base;  // identity
  std::optional<BaseObject> input;   // input_product
  AdjunctionSpecPtr outer, inner;    // composite
  AdjunctionSpecPtr of;              // iterate
  int power = 0;                     // iterate
  MonoidHomPtr hom;                  // base_change_*
};

bool spec_equal(const AdjunctionSpec& a, const AdjunctionSpec& b);
std::string spec_describe(const AdjunctionSpec& spec);

// ---------------------------------------------------------------------------
// Adjunction
// ---------------------------------------------------------------------------

/// A functor F with right adjoint R, given by the transpose bijection and its
/// inverse. F goes source -> target; R goes target -> source.
class Adjunction {
 public:
  virtual ~Adjunction() = default;

  virtual const FunctorPtr& left() const = 0;
  virtual const FunctorPtr& right() const = 0;
  virtual const AdjunctionSpec& spec() const = 0;

  /// Transpose of f : FX -> Y, yielding X -> RY. The objects X and Y are
  /// passed explicitly since they cannot be recovered from f alone.
  virtual BaseMorphism transpose(const BaseObject& x, const BaseObject& y,
                                 const BaseMorphism& f) const = 0;

  /// Inverse transpose of g : X -> RY, yielding FX -> Y.
  virtual BaseMorphism transpose_inv(const BaseObject& x, const BaseObject& y,
                                     const BaseMorphism& g) const = 0;

  const BaseCategory& source() const { return left()->source(); }
  const BaseCategory& target() const { return left()->target(); }
  bool is_endo() const { return source() == target(); }
  std::string describe() const { return spec_describe(spec()); }
};

using AdjunctionPtr = std::shared_ptr<const Adjunction>;

// ---------------------------------------------------------------------------
// Built-in adjunctions
// ---------------------------------------------------------------------------

AdjunctionPtr identity_adjunction(const BaseCategory& base);

/// F X = X x I with F(f) acting on the left component; R Y = tables I -> Y.
/// Only available over finite sets.
AdjunctionPtr product_exponential_adjunction(const BaseObject& input);

/// F = outer.F after inner.F, R = inner.R after outer.R.
AdjunctionPtr compose_adjunctions(const AdjunctionPtr& outer, const AdjunctionPtr& inner);

/// n-fold self-composite of an endo adjunction; power 0 is the identity.
AdjunctionPtr iterate_adjunction(const AdjunctionPtr& of, int power);

/// Along f : M -> N. Left: extension of M-sets to N-sets; right: restriction.
AdjunctionPtr base_change_lower(const MonoidHomPtr& hom);

/// Along f : M -> N. Left: restriction of N-sets; right: takes an M-set X to
/// the N-set of equivariant maps from N (acting through f) into X.
AdjunctionPtr base_change_upper(const MonoidHomPtr& hom);

/// The endofunctor on N-sets given by extension after restriction, with
/// right adjoint given by the equivariant-map construction after restriction.
AdjunctionPtr base_change_comonadic(const MonoidHomPtr& hom);

/// Rebuilds an adjunction from its description.
AdjunctionPtr build_adjunction(const AdjunctionSpec& spec);

// ---------------------------------------------------------------------------
// Unit and counit
// ---------------------------------------------------------------------------

/// X -> RFX, the transpose of the identity on FX.
BaseMorphism unit(const Adjunction& adj, const BaseObject& x);

/// FRY -> Y, the inverse transpose of the identity on RY.
BaseMorphism counit(const Adjunction& adj, const BaseObject& y);

}  // namespace fmachina
