// Machines split into a transition algebra and an output leg, plus the
// behavior functor into the slice over the terminal behavior and its left
// adjoint. Maps into the terminal behavior are represented intensionally by
// the moore machines that compute them; equality of such maps is behavior
// equivalence.
#pragma once

#include "fmachina/behavior.hpp"

namespace fmachina {

// ---------------------------------------------------------------------------
// Algebras and output legs
// ---------------------------------------------------------------------------

/// A structure map F(carrier) -> carrier for an endofunctor adjunction.
class FAlgebra {
 public:
  FAlgebra(AdjunctionPtr adjunction, BaseObject carrier, BaseMorphism structure);

  const AdjunctionPtr& adjunction() const { return adjunction_; }
  const BaseObject& carrier() const { return carrier_; }
  const BaseMorphism& structure() const { return structure_; }

  bool operator==(const FAlgebra& other) const;

 private:
  AdjunctionPtr adjunction_;
  BaseObject carrier_;
  BaseMorphism structure_;
};

/// The output side of a machine, detached from its transitions: a map
/// F(carrier) -> output for mealy flavor, carrier -> output for moore.
class SliceLeg {
 public:
  SliceLeg(Flavor flavor, AdjunctionPtr adjunction, BaseObject carrier, BaseObject output,
           BaseMorphism map);

  Flavor flavor() const { return flavor_; }
  const AdjunctionPtr& adjunction() const { return adjunction_; }
  const BaseObject& carrier() const { return carrier_; }
  const BaseObject& output() const { return output_; }
  const BaseMorphism& map() const { return map_; }

  bool operator==(const SliceLeg& other) const;

 private:
  Flavor flavor_;
  AdjunctionPtr adjunction_;
  BaseObject carrier_, output_;
  BaseMorphism map_;
};

struct Decomposition {
  FAlgebra algebra;
  SliceLeg leg;
};

/// Splits a machine into its transition algebra and its output leg.
Decomposition decompose(const FMachine& m);

/// Reassembles a machine; the algebra and the leg must agree on the carrier
/// and the adjunction, on the nose.
MachinePtr recompose(const FAlgebra& algebra, const SliceLeg& leg);

/// structure2 ∘ F(f) = f ∘ structure1 elementwise. False, never a throw, on
/// mismatched adjunctions or endpoints.
bool algebra_morphism_valid(const BaseMorphism& f, const FAlgebra& a1, const FAlgebra& a2);

/// leg2 absorbs f: leg2 ∘ F(f) = leg1 for mealy legs, leg2 ∘ f = leg1 for
/// moore legs. False, never a throw, on mismatched interfaces or endpoints.
bool slice_leg_morphism_valid(const BaseMorphism& f, const SliceLeg& leg1,
                              const SliceLeg& leg2);

// ---------------------------------------------------------------------------
// Maps into the terminal behavior
// ---------------------------------------------------------------------------

/// A moore machine standing for the unique algebra map from its carrier into
/// the terminal behavior. The representation is faithful: two states induce
/// the same behavior exactly when refinement cannot separate them.
class IntensionalBehaviorMap {
 public:
  /// The machine must be moore flavored.
  explicit IntensionalBehaviorMap(MachinePtr machine);

  const MachinePtr& machine() const { return machine_; }
  /// The transition algebra under the map.
  FAlgebra algebra() const;

  bool operator==(const IntensionalBehaviorMap& other) const;

 private:
  MachinePtr machine_;
};

/// An algebra morphism between the underlying transition algebras whose
/// behavior triangle commutes: every state of the source is behavior-equal
/// to its image. False, never a throw, on mismatched interfaces.
bool slice_morphism_valid(const IntensionalBehaviorMap& x, const IntensionalBehaviorMap& y,
                          const BaseMorphism& f);

/// A validated slice morphism; the constructor throws ValidationError when
/// slice_morphism_valid rejects the map.
class SliceMorphism {
 public:
  SliceMorphism(IntensionalBehaviorMap src, IntensionalBehaviorMap dst, BaseMorphism map);

  const IntensionalBehaviorMap& src() const { return src_; }
  const IntensionalBehaviorMap& dst() const { return dst_; }
  const BaseMorphism& map() const { return map_; }

 private:
  IntensionalBehaviorMap src_, dst_;
  BaseMorphism map_;
};

SliceMorphism compose(const SliceMorphism& g, const SliceMorphism& f);

// ---------------------------------------------------------------------------
// The behavior functor and its left adjoint
// ---------------------------------------------------------------------------

/// Repackages a moore machine as the intensional map it computes. Throws
/// DiagramError on mealy machines.
IntensionalBehaviorMap functor_B(const MachinePtr& m);

/// Morphism action: the identity on the underlying map, revalidated as a
/// slice morphism. Every valid moore machine morphism passes.
SliceMorphism functor_B(const MachineMorphism& f);

/// Reads the intensional map back as the moore machine carrying it, so the
/// composite with functor_B is the identity on objects.
MachinePtr functor_L(const IntensionalBehaviorMap& x);

/// Morphism action: the identity on the underlying map.
MachineMorphism functor_L(const SliceMorphism& f);

// ---------------------------------------------------------------------------
// Hom-set bijection
// ---------------------------------------------------------------------------

struct HomsetReport {
  bool ok = false;
  /// Moore machine morphisms functor_L(x) -> m.
  std::vector<BaseMorphism> machine_side;
  /// Slice morphisms x -> functor_B(m).
  std::vector<BaseMorphism> slice_side;
  std::vector<std::string> failures;
};

/// Enumerates both hom-sets. The two transports leave the underlying map
/// unchanged, so the correspondence is realized directly at the hom-set
/// level: the verdict is ok iff the enumerations produce the same maps.
/// Machines over different adjunctions or outputs have both sides empty.
/// Throws ValidationError when a carrier exceeds the bound and DiagramError
/// when m is not moore flavored.
HomsetReport homset_bijection_check(const IntensionalBehaviorMap& x, const MachinePtr& m,
                                    int bound);

}  // namespace fmachina
