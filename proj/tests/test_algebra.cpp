#include "fmachina/algebra.hpp"

#include <doctest.h>

#include <algorithm>

#include "fmachina/limits.hpp"
#include "fixtures.hpp"

using namespace fmachina;

namespace {

/// Identity transitions with two observably different states.
MachinePtr two_tone_moore() {
  std::map<std::string, std::string> d{
      {"(u,0)", "u"}, {"(u,1)", "u"}, {"(v,0)", "v"}, {"(v,1)", "v"}};
  std::map<std::string, std::string> s{{"u", "0"}, {"v", "1"}};
  return std::make_shared<const FMachine>(
      mk_classical(Flavor::moore, fx::bits(), fx::bits(), {"u", "v"}, d, s));
}

bool contains(const std::vector<BaseMorphism>& maps, const BaseMorphism& f) {
  return std::find(maps.begin(), maps.end(), f) != maps.end();
}

}  // namespace

TEST_CASE("decompose splits a machine and recompose restores it") {
  for (const MachinePtr& m :
       {fx::parity_mealy(), fx::constant_moore(), fx::swap_moore()}) {
    Decomposition parts = decompose(*m);
    CHECK(parts.algebra.structure() == m->d());
    CHECK(parts.leg.map() == m->s());
    CHECK(parts.leg.flavor() == m->flavor());
    CHECK(*recompose(parts.algebra, parts.leg) == *m);
  }
}

TEST_CASE("recompose rejects mismatched pieces") {
  Decomposition sink = decompose(*fx::sink_mealy());
  std::map<std::string, std::string> d{
      {"(x,0)", "y"}, {"(x,1)", "y"}, {"(y,0)", "y"}, {"(y,1)", "y"}};
  std::map<std::string, std::string> s{
      {"(x,0)", "0"}, {"(x,1)", "0"}, {"(y,0)", "0"}, {"(y,1)", "0"}};
  MachinePtr renamed = std::make_shared<const FMachine>(
      mk_classical(Flavor::mealy, fx::bits(), fx::bits(), {"x", "y"}, d, s));
  Decomposition other = decompose(*renamed);
  CHECK_THROWS_WITH_AS(recompose(sink.algebra, other.leg),
                       doctest::Contains("differ"), DiagramError);

  Decomposition mset = decompose(*fx::swap_moore());
  CHECK_THROWS_AS(recompose(sink.algebra, mset.leg), DiagramError);
}

TEST_CASE("machine morphisms are exactly algebra plus leg morphisms") {
  std::vector<std::pair<MachinePtr, MachinePtr>> pairs{
      {fx::parity_mealy(), fx::parity_mealy()},
      {fx::sink_mealy(), fx::parity_mealy()},
      {fx::sink_mealy(), fx::sink_mealy()},
      {fx::sink_moore(), fx::constant_moore()},
  };
  for (const auto& [src, dst] : pairs) {
    Decomposition from = decompose(*src);
    Decomposition to = decompose(*dst);
    for (const auto& h : enumerate_hom(src->carrier(), dst->carrier())) {
      const bool machine = validate_morphism(*src, *dst, h).ok;
      const bool split = algebra_morphism_valid(h, from.algebra, to.algebra) &&
                         slice_leg_morphism_valid(h, from.leg, to.leg);
      CHECK(machine == split);
    }
  }

  MachinePtr parity = fx::parity_mealy();
  Decomposition parts = decompose(*parity);
  BaseMorphism swap(parity->carrier(), parity->carrier(), {1, 0});
  CHECK(algebra_morphism_valid(swap, parts.algebra, parts.algebra));
  CHECK_FALSE(slice_leg_morphism_valid(swap, parts.leg, parts.leg));

  MachinePtr sink = fx::sink_mealy();
  Decomposition sink_parts = decompose(*sink);
  BaseMorphism into_a(sink->carrier(), sink->carrier(), {0, 0});
  CHECK(slice_leg_morphism_valid(into_a, sink_parts.leg, sink_parts.leg));
  CHECK_FALSE(algebra_morphism_valid(into_a, sink_parts.algebra, sink_parts.algebra));
}

TEST_CASE("algebra morphism validity is the structure square") {
  MachinePtr sink = fx::sink_mealy();
  Decomposition parts = decompose(*sink);
  CHECK(algebra_morphism_valid(BaseMorphism::identity(sink->carrier()), parts.algebra,
                               parts.algebra));

  Minimization min = minimize(sink);
  Decomposition quotient_parts = decompose(*min.machine);
  CHECK(algebra_morphism_valid(min.quotient.map(), parts.algebra,
                               quotient_parts.algebra));

  CHECK_FALSE(algebra_morphism_valid(BaseMorphism::identity(fx::bits()), parts.algebra,
                                     parts.algebra));
}

TEST_CASE("the behavior functor wraps moore machines") {
  MachinePtr constant = fx::constant_moore();
  IntensionalBehaviorMap b = functor_B(constant);
  CHECK(*b.machine() == *constant);
  CHECK(b.algebra().structure() == constant->d());
  CHECK_THROWS_AS(functor_B(fx::parity_mealy()), DiagramError);

  Minimization min = minimize(fx::sink_moore());
  SliceMorphism bq = functor_B(min.quotient);
  CHECK(bq.map() == min.quotient.map());

  SliceMorphism composed = compose(functor_B(identity_morphism(min.machine)), bq);
  CHECK(composed.map() == functor_B(compose(identity_morphism(min.machine),
                                            min.quotient)).map());
}

TEST_CASE("valid moore morphisms are exactly the commuting triangles") {
  Minimization min = minimize(fx::sink_moore());
  std::vector<std::pair<MachinePtr, MachinePtr>> pairs{
      {fx::sink_moore(), fx::sink_moore()},
      {fx::sink_moore(), min.machine},
      {fx::swap_moore(), fx::swap_moore()},
      {two_tone_moore(), two_tone_moore()},
  };
  for (const auto& [src, dst] : pairs) {
    IntensionalBehaviorMap bx = functor_B(src);
    IntensionalBehaviorMap by = functor_B(dst);
    for (const auto& h : enumerate_hom(src->carrier(), dst->carrier())) {
      CHECK(validate_morphism(*src, *dst, h).ok == slice_morphism_valid(bx, by, h));
    }
  }
}

TEST_CASE("the left adjoint reads the machine back") {
  MachinePtr constant = fx::constant_moore();
  CHECK(*functor_L(functor_B(constant)) == *constant);

  MachinePtr sink = fx::sink_moore();
  CHECK(functor_L(functor_B(sink))->carrier() == sink->carrier());

  Minimization min = minimize(sink);
  MachineMorphism back = functor_L(functor_B(min.quotient));
  CHECK(back.map() == min.quotient.map());
  CHECK(*back.src() == *sink);
}

TEST_CASE("slice morphisms reject broken squares and broken triangles") {
  MachinePtr sink = fx::sink_moore();
  IntensionalBehaviorMap bs = functor_B(sink);
  BaseMorphism into_a(sink->carrier(), sink->carrier(), {0, 0});
  CHECK_FALSE(slice_morphism_valid(bs, bs, into_a));
  CHECK_THROWS_AS(SliceMorphism(bs, bs, into_a), ValidationError);

  MachinePtr tones = two_tone_moore();
  IntensionalBehaviorMap bt = functor_B(tones);
  BaseMorphism swap(tones->carrier(), tones->carrier(), {1, 0});
  Decomposition parts = decompose(*tones);
  CHECK(algebra_morphism_valid(swap, parts.algebra, parts.algebra));
  CHECK_FALSE(slice_morphism_valid(bt, bt, swap));
  CHECK_THROWS_WITH_AS(SliceMorphism(bt, bt, swap), doctest::Contains("{u->v, v->u}"),
                       ValidationError);
}

TEST_CASE("hom-sets across the adjunction coincide") {
  MachinePtr constant = fx::constant_moore();
  HomsetReport one = homset_bijection_check(functor_B(constant), constant, 4);
  CHECK(one.ok);
  CHECK(one.machine_side.size() == 1);
  CHECK(one.slice_side.size() == 1);
  CHECK(one.machine_side[0] == BaseMorphism::identity(constant->carrier()));

  MachinePtr sink = fx::sink_moore();
  Minimization min = minimize(sink);
  HomsetReport onto = homset_bijection_check(functor_B(sink), min.machine, 4);
  CHECK(onto.ok);
  CHECK(onto.machine_side == std::vector<BaseMorphism>{min.quotient.map()});
  CHECK(onto.slice_side == onto.machine_side);

  MachinePtr none = machine_initial(constant->adjunction(), constant->output(),
                                    Flavor::moore);
  HomsetReport empty = homset_bijection_check(functor_B(none), constant, 4);
  CHECK(empty.ok);
  CHECK(empty.machine_side.size() == 1);

  MachinePtr swap = fx::swap_moore();
  HomsetReport regular = homset_bijection_check(functor_B(swap), swap, 4);
  CHECK(regular.ok);
  // The transition forces h(x0) = x0, so of the two equivariant self-maps
  // only the identity qualifies.
  CHECK(regular.machine_side.size() == 1);
  CHECK(regular.machine_side[0] == BaseMorphism::identity(swap->carrier()));

  HomsetReport vacuous = homset_bijection_check(functor_B(constant), swap, 4);
  CHECK(vacuous.ok);
  CHECK(vacuous.machine_side.empty());
  CHECK(vacuous.slice_side.empty());

  CHECK_THROWS_AS(homset_bijection_check(functor_B(sink), constant, 1), ValidationError);
  CHECK_THROWS_AS(homset_bijection_check(functor_B(constant), fx::parity_mealy(), 4),
                  DiagramError);
}

TEST_CASE("the hom-set correspondence is natural in the machine") {
  MachinePtr sink = fx::sink_moore();
  Minimization min = minimize(sink);
  IntensionalBehaviorMap x = functor_B(sink);
  HomsetReport before = homset_bijection_check(x, sink, 4);
  HomsetReport after = homset_bijection_check(x, min.machine, 4);
  CHECK(before.ok);
  CHECK(after.ok);
  for (const auto& h : before.machine_side) {
    BaseMorphism pushed = compose(min.quotient.map(), h);
    CHECK(contains(after.machine_side, pushed));
    CHECK(contains(after.slice_side, pushed));
  }
}

TEST_CASE("hom-sets coincide on every ordered fixture pair") {
  Minimization min = minimize(fx::sink_moore());
  std::vector<MachinePtr> fixtures{fx::constant_moore(), fx::sink_moore(), min.machine,
                                   fx::swap_moore()};
  for (const auto& a : fixtures) {
    for (const auto& b : fixtures) {
      CHECK(homset_bijection_check(functor_B(a), b, 4).ok);
    }
  }
}
