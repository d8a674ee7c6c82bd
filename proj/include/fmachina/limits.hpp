// Limits and colimits of machines: binary products realized on behavior-equal
// state pairs, connected limits and all colimits computed on the carriers, and
// a brute-force oracle that counts mediating morphisms over enumerated
// competitor machines.
#pragma once

#include "fmachina/behavior.hpp"

namespace fmachina {

struct MachineProduct {
  MachinePtr machine;
  MachineMorphism p1, p2;
};

/// Product carrier = pairs of behavior-equivalent states, transition and
/// output induced componentwise. Throws InternalError if the transition ever
/// leaves the carrier (it cannot, but the construction asserts it).
MachineProduct machine_product(const MachinePtr& m1, const MachinePtr& m2);

/// Pairs of states whose mates agree at every depth up to n (mealy depths
/// start at 1, moore at 0). Decreasing in n; stabilizes to the product
/// carrier once n reaches the product of the carrier sizes.
BaseObject level_pullback(const FMachine& m1, const FMachine& m2, int n);

/// The unique mediating morphism z -> P with p1 ∘ w = u and p2 ∘ w = v.
MachineMorphism pair_into_product(const MachineProduct& product, const MachineMorphism& u,
                                  const MachineMorphism& v);

struct MachineEqualizer {
  MachinePtr machine;
  MachineMorphism include;
};

MachineEqualizer machine_equalizer(const MachineMorphism& h1, const MachineMorphism& h2);

struct MachinePullback {
  MachinePtr machine;
  MachineMorphism p1, p2;
};

MachinePullback machine_pullback(const MachineMorphism& h1, const MachineMorphism& h2);

struct MachineSum {
  MachinePtr machine;
  MachineMorphism inl, inr;
};

MachineSum machine_coproduct(const MachinePtr& m1, const MachinePtr& m2);

struct MachineCoequalizer {
  MachinePtr machine;
  MachineMorphism project;
};

MachineCoequalizer machine_coequalizer(const MachineMorphism& h1, const MachineMorphism& h2);

/// The machine on the empty carrier.
MachinePtr machine_initial(const AdjunctionPtr& adj, const BaseObject& output, Flavor flavor);

// ---------------------------------------------------------------------------
// Universal-property oracle
// ---------------------------------------------------------------------------

enum class UniversalKind { product, coproduct, equalizer, pullback, coequalizer, initial };

std::string universal_kind_name(UniversalKind kind);
UniversalKind universal_kind_from_name(const std::string& name);

/// The construction under test. `legs` are its projections, injections,
/// inclusion, or quotient map; `diagram` holds the defining parallel pair or
/// cospan for equalizers, coequalizers, and pullbacks.
struct UniversalData {
  MachinePtr apex;
  std::vector<MachineMorphism> legs;
  std::vector<MachineMorphism> diagram;
};

struct CompetitorVerdict {
  std::string competitor;
  long long cones = 0;
  long long existence_failures = 0;
  long long uniqueness_failures = 0;
};

struct ConeReport {
  std::string kind;
  MachinePtr apex;
  std::vector<BaseMorphism> legs;
  bool ok = false;
  long long competitors = 0;  // machines whose (co)cones were enumerated
  long long cones = 0;        // valid (co)cones over all competitors
  std::vector<CompetitorVerdict> verdicts;  // competitors with cones or failures
  std::vector<std::string> failures;        // first few failure descriptions
};

/// All machines over the given interface with at most max_states states
/// ("z0", "z1", ...), every action when the base has one, every transition
/// and output table.
std::vector<MachinePtr> enumerate_small_machines(const AdjunctionPtr& adj,
                                                 const BaseObject& output, Flavor flavor,
                                                 int max_states);

/// Counts mediating morphisms for every valid (co)cone over every competitor:
/// the given fixtures plus all machines on carriers of up to two states over
/// the same interface. Verdict ok iff the count is exactly one everywhere.
/// Competitors and construction carriers larger than `bound` states are
/// rejected or skipped respectively.
ConeReport check_universal(UniversalKind kind, const UniversalData& data,
                           const std::vector<MachinePtr>& fixtures, int bound);

}  // namespace fmachina
