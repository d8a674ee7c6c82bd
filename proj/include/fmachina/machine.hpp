// Machines for an endofunctor F with a chosen right adjoint: a carrier E, a
// transition d : FE -> E, and an output map s (FE -> O for mealy flavor,
// E -> O for moore flavor). Classical machines arise from the input-product
// adjunction.
#pragma once

#include "fmachina/functor.hpp"

namespace fmachina {

enum class Flavor { mealy, moore };

std::string flavor_name(Flavor flavor);
Flavor flavor_from_name(const std::string& name);

// ---------------------------------------------------------------------------
// FMachine
// ---------------------------------------------------------------------------

class FMachine {
 public:
  /// Endpoint conditions are checked: d : FE -> E, and s : FE -> O (mealy)
  /// or s : E -> O (moore). The adjunction must be an endofunctor on the
  /// carrier's base category.
  FMachine(Flavor flavor, AdjunctionPtr adjunction, BaseObject carrier, BaseObject output,
           BaseMorphism d, BaseMorphism s);

  Flavor flavor() const { return flavor_; }
  const AdjunctionPtr& adjunction() const { return adjunction_; }
  const BaseObject& carrier() const { return carrier_; }
  const BaseObject& output() const { return output_; }
  const BaseMorphism& d() const { return d_; }
  const BaseMorphism& s() const { return s_; }
  /// F applied to the carrier, computed once at construction.
  const BaseObject& f_carrier() const { return f_carrier_; }
  const BaseCategory& base() const { return carrier_.base(); }

  /// Same flavor, structurally equal adjunction description, equal output.
  /// The compatibility requirement for every cross-machine construction.
  bool same_interface(const FMachine& other) const;

  bool operator==(const FMachine& other) const;

 private:
  Flavor flavor_;
  AdjunctionPtr adjunction_;
  BaseObject carrier_, output_, f_carrier_;
  BaseMorphism d_, s_;
};

using MachinePtr = std::shared_ptr<const FMachine>;

// ---------------------------------------------------------------------------
// Machine morphisms
// ---------------------------------------------------------------------------

struct MorphismReport {
  bool ok = false;
  /// Structural incompatibilities: flavor, adjunction, output, endpoints.
  std::vector<std::string> problems;
  /// Elements of F(src carrier) where h(d(x)) differs from d'(F(h)(x)).
  std::vector<std::string> transition_failures;
  /// Elements where the output condition fails: s'(F(h)(x)) vs s(x) for
  /// mealy, s'(h(e)) vs s(e) for moore.
  std::vector<std::string> output_failures;
};

MorphismReport validate_morphism(const FMachine& src, const FMachine& dst, const BaseMorphism& h);

/// A validated morphism; the constructor throws ValidationError when the
/// report is not clean.
class MachineMorphism {
 public:
  MachineMorphism(MachinePtr src, MachinePtr dst, BaseMorphism map);

  const MachinePtr& src() const { return src_; }
  const MachinePtr& dst() const { return dst_; }
  const BaseMorphism& map() const { return map_; }

 private:
  MachinePtr src_, dst_;
  BaseMorphism map_;
};

MachineMorphism identity_morphism(const MachinePtr& m);
MachineMorphism compose(const MachineMorphism& g, const MachineMorphism& f);

// ---------------------------------------------------------------------------
// Classical machines
// ---------------------------------------------------------------------------

/// Builds a machine over the input-product adjunction for I. The d table is
/// keyed by the pair encoding "(state,input)"; the s table is keyed the same
/// way for mealy and by state for moore.
FMachine mk_classical(Flavor flavor, const BaseObject& input, const BaseObject& output,
                      const std::vector<std::string>& states,
                      const std::map<std::string, std::string>& d_table,
                      const std::map<std::string, std::string>& s_table);

// ---------------------------------------------------------------------------
// Word semantics (input-product machines only)
// ---------------------------------------------------------------------------

struct RunResult {
  std::string final_state;
  std::string output;  // mealy: output of the last step; moore: output of the final state
};

/// Folds d over the word from the given state. Mealy machines require a
/// nonempty word; moore machines accept the empty word.
RunResult run_word(const FMachine& m, const std::string& state,
                   const std::vector<std::string>& word);

// ---------------------------------------------------------------------------
// Coalgebraic presentation
// ---------------------------------------------------------------------------

struct CoalgebraForm {
  BaseMorphism d_bar;                 // E -> RE, the transpose of d
  std::optional<BaseMorphism> s_bar1; // E -> RO for mealy, the transpose of s
};

CoalgebraForm coalgebra_form(const FMachine& m);

// ---------------------------------------------------------------------------
// Coproduct assembly
// ---------------------------------------------------------------------------

struct MachineCoproduct {
  MachinePtr machine;
  BaseMorphism inl, inr;  // carrier-level injections; valid machine morphisms
};

/// Disjoint union of two machines over the same interface. F applied to the
/// coproduct carrier is split through the canonical isomorphism with the
/// coproduct of the images, inverted elementwise.
MachineCoproduct coproduct_machine(const FMachine& m1, const FMachine& m2);

}  // namespace fmachina
