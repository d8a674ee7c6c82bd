// Small machines shared across the test suite.
#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "fmachina/machine.hpp"

namespace fx {

using namespace fmachina;

inline BaseObject bits() { return BaseObject::plain({"0", "1"}); }

/// Parity: two states, both transition and output are xor of state and input.
inline MachinePtr parity_mealy() {
  std::map<std::string, std::string> d{{"(p0,0)", "p0"},
                                       {"(p0,1)", "p1"},
                                       {"(p1,0)", "p1"},
                                       {"(p1,1)", "p0"}};
  std::map<std::string, std::string> s{
      {"(p0,0)", "0"}, {"(p0,1)", "1"}, {"(p1,0)", "1"}, {"(p1,1)", "0"}};
  return std::make_shared<const FMachine>(
      mk_classical(Flavor::mealy, bits(), bits(), {"p0", "p1"}, d, s));
}

/// One state, constant output "0".
inline MachinePtr constant_moore() {
  std::map<std::string, std::string> d{{"(e,0)", "e"}, {"(e,1)", "e"}};
  std::map<std::string, std::string> s{{"e", "0"}};
  return std::make_shared<const FMachine>(
      mk_classical(Flavor::moore, bits(), bits(), {"e"}, d, s));
}

/// Two states that behave identically: everything moves to b, output "0".
inline MachinePtr sink_mealy() {
  std::map<std::string, std::string> d{
      {"(a,0)", "b"}, {"(a,1)", "b"}, {"(b,0)", "b"}, {"(b,1)", "b"}};
  std::map<std::string, std::string> s{
      {"(a,0)", "0"}, {"(a,1)", "0"}, {"(b,0)", "0"}, {"(b,1)", "0"}};
  return std::make_shared<const FMachine>(
      mk_classical(Flavor::mealy, bits(), bits(), {"a", "b"}, d, s));
}

/// Moore counterpart of sink_mealy.
inline MachinePtr sink_moore() {
  std::map<std::string, std::string> d{
      {"(a,0)", "b"}, {"(a,1)", "b"}, {"(b,0)", "b"}, {"(b,1)", "b"}};
  std::map<std::string, std::string> s{{"a", "0"}, {"b", "0"}};
  return std::make_shared<const FMachine>(
      mk_classical(Flavor::moore, bits(), bits(), {"a", "b"}, d, s));
}

/// Three-state mealy with one pair of behaviorally equal states (q0 and q2)
/// and one genuinely different state q1.
inline MachinePtr redundant_mealy() {
  std::map<std::string, std::string> d{{"(q0,0)", "q0"}, {"(q0,1)", "q1"},
                                       {"(q1,0)", "q2"}, {"(q1,1)", "q1"},
                                       {"(q2,0)", "q0"}, {"(q2,1)", "q1"}};
  std::map<std::string, std::string> s{{"(q0,0)", "0"}, {"(q0,1)", "1"},
                                       {"(q1,0)", "1"}, {"(q1,1)", "0"},
                                       {"(q2,0)", "0"}, {"(q2,1)", "1"}};
  return std::make_shared<const FMachine>(
      mk_classical(Flavor::mealy, bits(), bits(), {"q0", "q1", "q2"}, d, s));
}

inline MonoidPtr z2_monoid() {
  return std::make_shared<const FiniteMonoid>(
      std::vector<std::string>{"e", "g"}, "e",
      std::vector<std::vector<std::string>>{{"e", "g"}, {"g", "e"}});
}

inline MonoidPtr one_monoid() {
  return std::make_shared<const FiniteMonoid>(std::vector<std::string>{"e"}, "e",
                                              std::vector<std::vector<std::string>>{{"e"}});
}

inline MonoidHomPtr into_z2() {
  return std::make_shared<const MonoidHom>(one_monoid(), z2_monoid(),
                                           std::map<std::string, std::string>{{"e", "e"}});
}

/// Moore machine in Z2-sets for the comonadic adjunction along 1 -> Z2:
/// the carrier is the regular Z2-set, the output carries the trivial action.
inline MachinePtr swap_moore() {
  MonoidPtr z2 = z2_monoid();
  AdjunctionPtr adj = base_change_comonadic(into_z2());
  BaseObject carrier =
      BaseObject::with_action({"x0", "x1"}, z2, {{0, 1}, {1, 0}});
  BaseObject output = BaseObject::with_action({"0", "1"}, z2, {{0, 1}, {0, 1}});
  BaseObject fe = adj->left()->apply(carrier);
  std::map<std::string, std::string> d_table{{"(e,x0)", "x0"},
                                             {"(e,x1)", "x0"},
                                             {"(g,x0)", "x1"},
                                             {"(g,x1)", "x1"}};
  BaseMorphism d = BaseMorphism::from_table(fe, carrier, d_table, "d table");
  BaseMorphism s = BaseMorphism::from_table(carrier, output,
                                            {{"x0", "0"}, {"x1", "0"}}, "s table");
  return std::make_shared<const FMachine>(Flavor::moore, adj, carrier, output, d, s);
}

/// All words over {"0","1"} of length up to `max_len`, shortest first.
inline std::vector<std::vector<std::string>> short_words(int max_len,
                                                         bool include_empty) {
  std::vector<std::vector<std::string>> words;
  if (include_empty) words.push_back({});
  std::vector<std::vector<std::string>> frontier{{}};
  for (int len = 1; len <= max_len; ++len) {
    std::vector<std::vector<std::string>> next;
    for (const auto& w : frontier) {
      for (const std::string& a : {"0", "1"}) {
        auto extended = w;
        extended.push_back(a);
        next.push_back(extended);
        words.push_back(std::move(extended));
      }
    }
    frontier = std::move(next);
  }
  return words;
}

}  // namespace fx
