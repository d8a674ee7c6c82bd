// Observation of machines over increasing depth: skip maps, their mates,
// behavior equivalence as a partition-refinement fixpoint, minimization, and
// finite truncations of the terminal machine carrier.
#pragma once

#include "fmachina/machine.hpp"

namespace fmachina {

/// n-step observation F^nE -> O: the composite of s with F^k d for k below n.
/// Mealy levels start at 1 (level 1 is s itself); moore levels start at 0
/// (level 0 is s, level 1 is s after d, and so on).
BaseMorphism skip_map(const FMachine& m, int n);

/// Mate E -> R^nO of skip_map(m, n) under the n-fold iterated adjunction.
BaseMorphism behavior_mate(const FMachine& m, int n);

struct RefinementTrace {
  Partition partition;  // the stabilized partition: states equal under every mate
  int rounds;           // refinement rounds executed, fixpoint confirmation included
};

/// Partition refinement: start from the kernel of the first mate (mealy) or
/// of s (moore), then repeatedly split by the transposed transition map
/// composed with the current quotient. Stabilizes within |E| rounds.
RefinementTrace refine_behavior(const FMachine& m);

Partition behavior_partition(const FMachine& m);

struct Minimization {
  MachinePtr machine;
  MachineMorphism quotient;
};

/// Quotient by behavior_partition; the induced structure maps are read off
/// preimages and checked for consistency.
Minimization minimize(const MachinePtr& m);

/// True when the two states are identified by every mate, decided on the
/// coproduct machine.
bool equivalent(const FMachine& m1, const FMachine& m2, const std::string& e1,
                const std::string& e2);

struct TerminalTruncation {
  BaseObject apex;                        // product of the R^nO levels
  std::vector<int> levels;                // mate depth of each factor
  std::vector<BaseMorphism> projections;  // apex -> R^nO, one per level
  BaseMorphism s_leg;                     // F(apex) -> O for mealy, apex -> O for moore
  BaseObject reduced;                     // the truncation one level shallower
  BaseMorphism d_leg;                     // F(apex) -> reduced; consumes the deepest level
};

/// Finite approximation of the terminal carrier: the product of R^nO for
/// n in [1..N] (mealy) or [0..N] (moore). The transition leg lands in the
/// (N-1)-truncation, so one level of observation is consumed per step.
TerminalTruncation terminal_truncation(const AdjunctionPtr& adj, const BaseObject& output,
                                       int n, Flavor flavor);

}  // namespace fmachina
