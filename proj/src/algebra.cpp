#include "fmachina/algebra.hpp"

#include <sstream>

namespace fmachina {
namespace {

std::string map_text(const BaseMorphism& f) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (const auto& [from, to] : f.named_table()) {
    if (!first) os << ", ";
    os << from << "->" << to;
    first = false;
  }
  os << "}";
  return os.str();
}

}  // namespace

FAlgebra::FAlgebra(AdjunctionPtr adjunction, BaseObject carrier, BaseMorphism structure)
    : adjunction_(std::move(adjunction)),
      carrier_(std::move(carrier)),
      structure_(std::move(structure)) {
  if (!adjunction_->is_endo())
    throw DiagramError("algebra: adjunction must be an endofunctor, got " +
                       adjunction_->describe());
  if (!(carrier_.base() == adjunction_->source()))
    throw DiagramError("algebra: carrier lives in " + carrier_.base().describe() +
                       " but the adjunction acts on " + adjunction_->source().describe());
  BaseObject f_carrier = adjunction_->left()->apply(carrier_);
  if (!(structure_.dom() == f_carrier))
    throw DiagramError("algebra: structure map domain is " + structure_.dom().describe() +
                       ", expected " + f_carrier.describe());
  if (!(structure_.cod() == carrier_))
    throw DiagramError("algebra: structure map codomain is " +
                       structure_.cod().describe() + ", expected " + carrier_.describe());
}

bool FAlgebra::operator==(const FAlgebra& other) const {
  return spec_equal(adjunction_->spec(), other.adjunction_->spec()) &&
         carrier_ == other.carrier_ && structure_ == other.structure_;
}

SliceLeg::SliceLeg(Flavor flavor, AdjunctionPtr adjunction, BaseObject carrier,
                   BaseObject output, BaseMorphism map)
    : flavor_(flavor),
      adjunction_(std::move(adjunction)),
      carrier_(std::move(carrier)),
      output_(std::move(output)),
      map_(std::move(map)) {
  if (!adjunction_->is_endo())
    throw DiagramError("leg: adjunction must be an endofunctor, got " +
                       adjunction_->describe());
  const BaseObject dom = flavor_ == Flavor::mealy ? adjunction_->left()->apply(carrier_)
                                                  : carrier_;
  if (!(map_.dom() == dom))
    throw DiagramError("leg: map domain is " + map_.dom().describe() + ", expected " +
                       dom.describe());
  if (!(map_.cod() == output_))
    throw DiagramError("leg: map codomain is " + map_.cod().describe() + ", expected " +
                       output_.describe());
}

bool SliceLeg::operator==(const SliceLeg& other) const {
  return flavor_ == other.flavor_ &&
         spec_equal(adjunction_->spec(), other.adjunction_->spec()) &&
         carrier_ == other.carrier_ && output_ == other.output_ && map_ == other.map_;
}

Decomposition decompose(const FMachine& m) {
  return {FAlgebra(m.adjunction(), m.carrier(), m.d()),
          SliceLeg(m.flavor(), m.adjunction(), m.carrier(), m.output(), m.s())};
}

MachinePtr recompose(const FAlgebra& algebra, const SliceLeg& leg) {
  if (!spec_equal(algebra.adjunction()->spec(), leg.adjunction()->spec()))
    throw DiagramError("recompose: the algebra is over " +
                       algebra.adjunction()->describe() + " but the leg is over " +
                       leg.adjunction()->describe());
  if (!(algebra.carrier() == leg.carrier()))
    throw DiagramError("recompose: the algebra carrier " + algebra.carrier().describe() +
                       " and the leg carrier " + leg.carrier().describe() + " differ");
  return std::make_shared<const FMachine>(leg.flavor(), algebra.adjunction(),
                                          algebra.carrier(), leg.output(),
                                          algebra.structure(), leg.map());
}

bool algebra_morphism_valid(const BaseMorphism& f, const FAlgebra& a1, const FAlgebra& a2) {
  if (!spec_equal(a1.adjunction()->spec(), a2.adjunction()->spec())) return false;
  if (!(f.dom() == a1.carrier()) || !(f.cod() == a2.carrier())) return false;
  BaseMorphism ff = a1.adjunction()->left()->apply(f);
  return compose(a2.structure(), ff) == compose(f, a1.structure());
}

bool slice_leg_morphism_valid(const BaseMorphism& f, const SliceLeg& leg1,
                              const SliceLeg& leg2) {
  if (leg1.flavor() != leg2.flavor()) return false;
  if (!spec_equal(leg1.adjunction()->spec(), leg2.adjunction()->spec())) return false;
  if (!(leg1.output() == leg2.output())) return false;
  if (!(f.dom() == leg1.carrier()) || !(f.cod() == leg2.carrier())) return false;
  if (leg1.flavor() == Flavor::mealy)
    return compose(leg2.map(), leg1.adjunction()->left()->apply(f)) == leg1.map();
  return compose(leg2.map(), f) == leg1.map();
}

IntensionalBehaviorMap::IntensionalBehaviorMap(MachinePtr machine)
    : machine_(std::move(machine)) {
  if (!machine_) throw ValidationError("behavior map: no machine given");
  if (machine_->flavor() != Flavor::moore)
    throw DiagramError("behavior map: expected a moore machine, got " +
                       flavor_name(machine_->flavor()));
}

FAlgebra IntensionalBehaviorMap::algebra() const {
  return FAlgebra(machine_->adjunction(), machine_->carrier(), machine_->d());
}

bool IntensionalBehaviorMap::operator==(const IntensionalBehaviorMap& other) const {
  return *machine_ == *other.machine_;
}

bool slice_morphism_valid(const IntensionalBehaviorMap& x, const IntensionalBehaviorMap& y,
                          const BaseMorphism& f) {
  if (!x.machine()->same_interface(*y.machine())) return false;
  if (!algebra_morphism_valid(f, x.algebra(), y.algebra())) return false;
  MachineCoproduct sum = coproduct_machine(*x.machine(), *y.machine());
  Partition partition = behavior_partition(*sum.machine);
  for (int e = 0; e < x.machine()->carrier().size(); ++e) {
    if (!partition.same_block(sum.inl.apply_index(e),
                              sum.inr.apply_index(f.apply_index(e))))
      return false;
  }
  return true;
}

SliceMorphism::SliceMorphism(IntensionalBehaviorMap src, IntensionalBehaviorMap dst,
                             BaseMorphism map)
    : src_(std::move(src)), dst_(std::move(dst)), map_(std::move(map)) {
  if (!slice_morphism_valid(src_, dst_, map_))
    throw ValidationError("slice morphism: " + map_text(map_) +
                          " is not an algebra morphism with a commuting behavior triangle");
}

SliceMorphism compose(const SliceMorphism& g, const SliceMorphism& f) {
  if (!(f.dst() == g.src()))
    throw DiagramError("slice morphisms do not compose: the middle objects differ");
  return SliceMorphism(f.src(), g.dst(), compose(g.map(), f.map()));
}

IntensionalBehaviorMap functor_B(const MachinePtr& m) { return IntensionalBehaviorMap(m); }

SliceMorphism functor_B(const MachineMorphism& f) {
  return SliceMorphism(IntensionalBehaviorMap(f.src()), IntensionalBehaviorMap(f.dst()),
                       f.map());
}

MachinePtr functor_L(const IntensionalBehaviorMap& x) { return x.machine(); }

MachineMorphism functor_L(const SliceMorphism& f) {
  return MachineMorphism(f.src().machine(), f.dst().machine(), f.map());
}

HomsetReport homset_bijection_check(const IntensionalBehaviorMap& x, const MachinePtr& m,
                                    int bound) {
  if (x.machine()->carrier().size() > bound)
    throw ValidationError("hom-set check: the source has " +
                          std::to_string(x.machine()->carrier().size()) +
                          " states, above the bound " + std::to_string(bound));
  if (m->carrier().size() > bound)
    throw ValidationError("hom-set check: the target has " +
                          std::to_string(m->carrier().size()) + " states, above the bound " +
                          std::to_string(bound));
  IntensionalBehaviorMap bm = functor_B(m);

  HomsetReport report;
  if (!x.machine()->same_interface(*m)) {
    report.ok = true;
    return report;
  }
  const MachinePtr lx = functor_L(x);
  for (const auto& h : enumerate_hom(lx->carrier(), m->carrier())) {
    const bool on_machine_side = validate_morphism(*lx, *m, h).ok;
    const bool on_slice_side = slice_morphism_valid(x, bm, h);
    if (on_machine_side) report.machine_side.push_back(h);
    if (on_slice_side) report.slice_side.push_back(h);
    if (on_machine_side != on_slice_side && report.failures.size() < 8) {
      report.failures.push_back("hom-set check: " + map_text(h) + " is a " +
                                (on_machine_side ? "machine morphism without a slice counterpart"
                                                 : "slice morphism without a machine counterpart"));
    }
  }
  report.ok = report.machine_side == report.slice_side;
  return report;
}

}  // namespace fmachina
