#include "fmachina/limits.hpp"

#include <doctest.h>

#include <algorithm>

#include "fixtures.hpp"

using namespace fmachina;

namespace {

/// Two constant-output states with identity transitions; every state is
/// behavior-equal to every other.
MachinePtr flat_pair() {
  std::map<std::string, std::string> d{
      {"(c0,0)", "c0"}, {"(c0,1)", "c0"}, {"(c1,0)", "c1"}, {"(c1,1)", "c1"}};
  std::map<std::string, std::string> s{
      {"(c0,0)", "0"}, {"(c0,1)", "0"}, {"(c1,0)", "0"}, {"(c1,1)", "0"}};
  return std::make_shared<const FMachine>(
      mk_classical(Flavor::mealy, fx::bits(), fx::bits(), {"c0", "c1"}, d, s));
}

bool subset(const std::vector<std::string>& inner, const std::vector<std::string>& outer) {
  return std::all_of(inner.begin(), inner.end(), [&](const std::string& x) {
    return std::find(outer.begin(), outer.end(), x) != outer.end();
  });
}

}  // namespace

TEST_CASE("products keep exactly the behavior-equal pairs") {
  MachinePtr parity = fx::parity_mealy();
  MachineProduct prod = machine_product(parity, parity);
  CHECK(prod.machine->carrier().elements() ==
        std::vector<std::string>{"(p0,p0)", "(p1,p1)"});
  CHECK(prod.p1.map().apply("(p0,p0)") == "p0");
  CHECK(prod.p2.map().apply("(p1,p1)") == "p1");

  const auto& functor = *parity->adjunction()->left();
  CHECK(compose(parity->s(), functor.apply(prod.p1.map())) ==
        compose(parity->s(), functor.apply(prod.p2.map())));
}

TEST_CASE("products of indistinguishable machines keep every pair") {
  MachineProduct prod = machine_product(fx::sink_mealy(), flat_pair());
  CHECK(prod.machine->carrier().size() == 4);
  MachineProduct one = machine_product(fx::constant_moore(), fx::constant_moore());
  CHECK(one.machine->carrier().size() == 1);
  CHECK_THROWS_AS(machine_product(fx::parity_mealy(), fx::constant_moore()), DiagramError);
}

TEST_CASE("products exist over monoid-action bases") {
  MachinePtr swap = fx::swap_moore();
  MachineProduct prod = machine_product(swap, swap);
  CHECK(prod.machine->carrier().is_mset());
  CHECK(prod.machine->carrier().size() == 4);  // both states behave alike
}

TEST_CASE("level pullbacks shrink to the product carrier") {
  MachinePtr parity = fx::parity_mealy();
  BaseObject p1 = level_pullback(*parity, *parity, 1);
  CHECK(p1.elements() == std::vector<std::string>{"(p0,p0)", "(p1,p1)"});

  std::vector<std::pair<MachinePtr, MachinePtr>> pairs{
      {parity, parity},
      {fx::sink_mealy(), flat_pair()},
      {fx::sink_mealy(), fx::parity_mealy()},
      {fx::redundant_mealy(), parity},
  };
  for (const auto& [m1, m2] : pairs) {
    const int stable = m1->carrier().size() * m2->carrier().size();
    std::vector<std::string> previous;
    for (int n = 1; n <= stable; ++n) {
      BaseObject level = level_pullback(*m1, *m2, n);
      if (n > 1) CHECK(subset(level.elements(), previous));
      previous = level.elements();
    }
    MachineProduct prod = machine_product(m1, m2);
    CHECK(level_pullback(*m1, *m2, stable).elements() ==
          prod.machine->carrier().elements());
  }

  MachinePtr redundant = fx::redundant_mealy();
  for (int n = 1; n <= 2; ++n) {
    std::vector<BaseMorphism> mates1, mates2;
    std::vector<BaseObject> factors;
    for (int k = 1; k <= n; ++k) {
      mates1.push_back(behavior_mate(*redundant, k));
      mates2.push_back(behavior_mate(*parity, k));
      factors.push_back(mates1.back().cod());
    }
    LimitCone cone = wide_product_cone(factors);
    BaseMorphism f = pair_into_cone(cone, mates1);
    BaseMorphism g = pair_into_cone(cone, mates2);
    CHECK(level_pullback(*redundant, *parity, n).elements() ==
          pullback_cone(f, g).apex.elements());
  }

  CHECK_THROWS_AS(level_pullback(*parity, *parity, 0), ValidationError);
  MachinePtr moore = fx::constant_moore();
  CHECK(level_pullback(*moore, *moore, 0).size() == 1);
}

TEST_CASE("pairing into a product hits the matched pair") {
  MachinePtr parity = fx::parity_mealy();
  MachineProduct prod = machine_product(parity, parity);
  MachineMorphism diag =
      pair_into_product(prod, identity_morphism(parity), identity_morphism(parity));
  CHECK(diag.map().apply("p0") == "(p0,p0)");
  CHECK(diag.map().apply("p1") == "(p1,p1)");
  CHECK(compose(prod.p1, diag).map() == BaseMorphism::identity(parity->carrier()));

  MachinePtr sink = fx::sink_mealy();
  MachinePtr point = minimize(sink).machine;
  MachineProduct sinks = machine_product(sink, sink);
  MachineMorphism u(point, sink, BaseMorphism::from_table(point->carrier(),
                                                          sink->carrier(), {{"a", "b"}}));
  MachineMorphism w = pair_into_product(sinks, u, u);
  CHECK(w.map().apply("a") == "(b,b)");
}

TEST_CASE("equalizers cut out the agreement subobject") {
  MachinePtr sink = fx::sink_mealy();
  MachineMorphism id = identity_morphism(sink);
  MachineEqualizer whole = machine_equalizer(id, id);
  CHECK(whole.machine->carrier().elements() == sink->carrier().elements());

  MachineMorphism collapse(sink, sink,
                           BaseMorphism(sink->carrier(), sink->carrier(), {1, 1}));
  MachineEqualizer fixed = machine_equalizer(id, collapse);
  CHECK(fixed.machine->carrier().elements() == std::vector<std::string>{"b"});
  CHECK(fixed.include.map().apply("b") == "b");

  MachinePtr flat = flat_pair();
  MachineMorphism const0(flat, flat,
                         BaseMorphism(flat->carrier(), flat->carrier(), {0, 0}));
  MachineMorphism const1(flat, flat,
                         BaseMorphism(flat->carrier(), flat->carrier(), {1, 1}));
  MachineEqualizer empty = machine_equalizer(const0, const1);
  CHECK(empty.machine->carrier().size() == 0);
  CHECK(empty.machine->f_carrier().size() == 0);

  CHECK_THROWS_AS(machine_equalizer(id, identity_morphism(fx::parity_mealy())),
                  DiagramError);
}

TEST_CASE("pullbacks agree with the base construction") {
  MachinePtr parity = fx::parity_mealy();
  MachineMorphism id = identity_morphism(parity);
  MachinePullback diag = machine_pullback(id, id);
  CHECK(diag.machine->carrier().elements() ==
        std::vector<std::string>{"(p0,p0)", "(p1,p1)"});
  CHECK(pullback_cone(id.map(), id.map()).apex == diag.machine->carrier());

  MachinePtr flat = flat_pair();
  MachineMorphism const0(flat, flat,
                         BaseMorphism(flat->carrier(), flat->carrier(), {0, 0}));
  MachineMorphism const1(flat, flat,
                         BaseMorphism(flat->carrier(), flat->carrier(), {1, 1}));
  MachinePullback empty = machine_pullback(const0, const1);
  CHECK(empty.machine->carrier().size() == 0);
}

TEST_CASE("coproducts and coequalizers are quotient-side duals") {
  MachinePtr parity = fx::parity_mealy();
  MachineSum sum = machine_coproduct(parity, parity);
  CHECK(sum.machine->carrier().size() == 4);
  CHECK(sum.inl.map().apply("p0") == "inl(p0)");
  CHECK(sum.inr.map().apply("p0") == "inr(p0)");

  MachinePtr sink = fx::sink_mealy();
  MachineMorphism id = identity_morphism(sink);
  MachineCoequalizer same = machine_coequalizer(id, id);
  CHECK(same.machine->carrier().size() == sink->carrier().size());

  MachineMorphism collapse(sink, sink,
                           BaseMorphism(sink->carrier(), sink->carrier(), {1, 1}));
  MachineCoequalizer glued = machine_coequalizer(id, collapse);
  CHECK(glued.machine->carrier().size() == 1);
  CHECK(validate_morphism(*sink, *glued.machine, glued.project.map()).ok);
}

TEST_CASE("the initial machine is empty and maps uniquely everywhere") {
  MachinePtr parity = fx::parity_mealy();
  MachinePtr zero = machine_initial(parity->adjunction(), parity->output(), Flavor::mealy);
  CHECK(zero->carrier().size() == 0);
  UniversalData data{zero, {}, {}};
  ConeReport report =
      check_universal(UniversalKind::initial, data, {parity, fx::sink_mealy()}, 4);
  CHECK(report.ok);
  CHECK(report.competitors > 0);
  CHECK(report.failures.empty());
}

TEST_CASE("small-machine enumeration is exhaustive") {
  MachinePtr parity = fx::parity_mealy();
  auto mealies = enumerate_small_machines(parity->adjunction(), parity->output(),
                                          Flavor::mealy, 2);
  CHECK(mealies.size() == 261);  // 1 + 1·4 + 16·16 over carriers of size 0, 1, 2
  auto moores = enumerate_small_machines(parity->adjunction(), parity->output(),
                                         Flavor::moore, 2);
  CHECK(moores.size() == 67);  // 1 + 1·2 + 16·4

  MachinePtr swap = fx::swap_moore();
  auto msets = enumerate_small_machines(swap->adjunction(), swap->output(),
                                        Flavor::moore, 2);
  CHECK(msets.size() == 27);  // 1 + 1·2 + (16 + 8) over the two lawful actions
}

TEST_CASE("the oracle certifies the shipped constructions") {
  MachinePtr parity = fx::parity_mealy();
  MachinePtr sink = fx::sink_mealy();
  std::vector<MachinePtr> fixtures{parity, sink};

  MachineProduct prod = machine_product(parity, parity);
  ConeReport product_report = check_universal(
      UniversalKind::product, {prod.machine, {prod.p1, prod.p2}, {}}, fixtures, 4);
  CHECK(product_report.ok);
  CHECK(product_report.cones > 0);

  MachineSum sum = machine_coproduct(parity, sink);
  ConeReport coproduct_report = check_universal(
      UniversalKind::coproduct, {sum.machine, {sum.inl, sum.inr}, {}}, fixtures, 4);
  CHECK(coproduct_report.ok);

  MachineMorphism id = identity_morphism(sink);
  MachineMorphism collapse(sink, sink,
                           BaseMorphism(sink->carrier(), sink->carrier(), {1, 1}));
  MachineEqualizer eq = machine_equalizer(id, collapse);
  ConeReport equalizer_report = check_universal(
      UniversalKind::equalizer, {eq.machine, {eq.include}, {id, collapse}}, fixtures, 4);
  CHECK(equalizer_report.ok);

  MachinePullback pb = machine_pullback(id, collapse);
  ConeReport pullback_report = check_universal(
      UniversalKind::pullback, {pb.machine, {pb.p1, pb.p2}, {id, collapse}}, fixtures, 4);
  CHECK(pullback_report.ok);

  MachineCoequalizer coeq = machine_coequalizer(id, collapse);
  ConeReport coequalizer_report = check_universal(
      UniversalKind::coequalizer, {coeq.machine, {coeq.project}, {id, collapse}},
      fixtures, 4);
  CHECK(coequalizer_report.ok);
}

TEST_CASE("the oracle flags corrupted legs") {
  MachinePtr sink = fx::sink_mealy();
  MachineProduct prod = machine_product(sink, sink);
  MachineMorphism collapse(sink, sink,
                           BaseMorphism(sink->carrier(), sink->carrier(), {1, 1}));
  MachineMorphism corrupted = compose(collapse, prod.p1);
  ConeReport report = check_universal(
      UniversalKind::product, {prod.machine, {corrupted, prod.p2}, {}}, {sink}, 4);
  CHECK_FALSE(report.ok);
  REQUIRE_FALSE(report.failures.empty());
  CHECK(report.failures[0].find("competitor") != std::string::npos);
}

TEST_CASE("the oracle works over monoid-action bases") {
  MachinePtr swap = fx::swap_moore();
  MachineSum sum = machine_coproduct(swap, swap);
  ConeReport report = check_universal(UniversalKind::coproduct,
                                      {sum.machine, {sum.inl, sum.inr}, {}}, {swap}, 4);
  CHECK(report.ok);
  CHECK(report.cones > 0);
}

TEST_CASE("the oracle rejects oversized input") {
  MachinePtr parity = fx::parity_mealy();
  MachineProduct prod = machine_product(parity, parity);
  CHECK_THROWS_AS(
      check_universal(UniversalKind::product, {prod.machine, {prod.p1, prod.p2}, {}},
                      {parity}, 1),
      ValidationError);
}
