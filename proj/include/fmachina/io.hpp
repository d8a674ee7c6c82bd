// JSON machine documents and morphism files. Parsing validates everything
// before returning; serialization is canonical (sorted keys, fixed element
// order, two-space indent), so parse then serialize then parse is the
// identity on documents.
#pragma once

#include "fmachina/machine.hpp"

namespace fmachina {

/// Parses a machine document. Syntax errors carry line and column; semantic
/// errors name the violated condition and the offending entry.
MachinePtr parse_machine(const std::string& text);

/// Canonical document text for a machine. Machines whose adjunction has no
/// document form (iterates, one-sided base changes) are rejected with
/// ValidationError.
std::string serialize_machine(const FMachine& m);

/// Reads a morphism file, a state-mapping table {"map": {...}}, as a base
/// morphism between the two carriers. No machine-morphism validation.
BaseMorphism parse_morphism_map(const std::string& text, const BaseObject& dom,
                                const BaseObject& cod);

std::string serialize_morphism_map(const BaseMorphism& f);

}  // namespace fmachina
