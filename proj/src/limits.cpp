#include "fmachina/limits.hpp"

#include <sstream>

namespace fmachina {
namespace {

/// The unique map through a surjection: result ∘ onto = f, with the value on
/// each class read off any preimage and checked for consistency.
BaseMorphism induced_along(const BaseMorphism& onto, const BaseMorphism& f,
                           const std::string& what) {
  if (onto.dom() != f.dom()) throw DiagramError(what + ": domains differ");
  std::vector<int> table(static_cast<size_t>(onto.cod().size()), -1);
  for (int x = 0; x < onto.dom().size(); ++x) {
    int y = onto.apply_index(x);
    int v = f.apply_index(x);
    if (table[static_cast<size_t>(y)] == -1)
      table[static_cast<size_t>(y)] = v;
    else if (table[static_cast<size_t>(y)] != v)
      throw InternalError(what + ": value is not constant on the class of " +
                          onto.cod().element(y));
  }
  for (int y = 0; y < onto.cod().size(); ++y) {
    if (table[static_cast<size_t>(y)] == -1)
      throw InternalError(what + ": " + onto.cod().element(y) + " has no preimage");
  }
  return BaseMorphism(onto.cod(), f.cod(), std::move(table));
}

std::vector<BaseMorphism> machine_homs(const FMachine& src, const FMachine& dst) {
  if (!src.same_interface(dst) || !(src.base() == dst.base())) return {};
  std::vector<BaseMorphism> out;
  for (auto& h : enumerate_hom(src.carrier(), dst.carrier()))
    if (validate_morphism(src, dst, h).ok) out.push_back(std::move(h));
  return out;
}

}  // namespace

MachineProduct machine_product(const MachinePtr& m1, const MachinePtr& m2) {
  if (!m1->same_interface(*m2))
    throw DiagramError("product: machines disagree on flavor, adjunction, or output");
  MachineCoproduct sum = coproduct_machine(*m1, *m2);
  Partition partition = behavior_partition(*sum.machine);
  ColimitCocone classes = quotient_cocone(partition);
  BaseMorphism left_class = compose(classes.legs[0], sum.inl);
  BaseMorphism right_class = compose(classes.legs[0], sum.inr);
  LimitCone cone = pullback_cone(left_class, right_class);
  const BaseMorphism& p1 = cone.legs[0];
  const BaseMorphism& p2 = cone.legs[1];

  const auto& functor = *m1->adjunction()->left();
  BaseMorphism fp1 = functor.apply(p1);
  BaseMorphism fp2 = functor.apply(p2);
  BaseMorphism d_p = [&] {
    try {
      return pair_into_cone(cone, {compose(m1->d(), fp1), compose(m2->d(), fp2)},
                            "product transition");
    } catch (const DiagramError& e) {
      throw InternalError(std::string("product: transition leaves the carrier (") +
                          e.what() + ")");
    }
  }();
  BaseMorphism s_p = m1->flavor() == Flavor::mealy ? compose(m1->s(), fp1)
                                                   : compose(m1->s(), p1);

  MachinePtr machine = std::make_shared<const FMachine>(
      m1->flavor(), m1->adjunction(), cone.apex, m1->output(), std::move(d_p),
      std::move(s_p));
  return {machine, MachineMorphism(machine, m1, p1), MachineMorphism(machine, m2, p2)};
}

BaseObject level_pullback(const FMachine& m1, const FMachine& m2, int n) {
  if (!m1.same_interface(m2))
    throw DiagramError("level pullback: machines disagree on flavor, adjunction, or output");
  const int lowest = m1.flavor() == Flavor::mealy ? 1 : 0;
  if (n < lowest)
    throw ValidationError("level pullback: " + flavor_name(m1.flavor()) +
                          " depths start at " + std::to_string(lowest) + ", got " +
                          std::to_string(n));
  // States agree on mates up to level n exactly when n - lowest refinement
  // rounds fail to separate them: each round extends agreement by one level
  // because the next mate factors as R(previous mate) after the transition.
  MachineCoproduct sum = coproduct_machine(m1, m2);
  CoalgebraForm forms = coalgebra_form(*sum.machine);
  Partition current = m1.flavor() == Flavor::mealy
                          ? Partition::kernel(*forms.s_bar1)
                          : Partition::kernel(sum.machine->s());
  const auto& right = *m1.adjunction()->right();
  for (int r = 0; r < n - lowest; ++r) {
    ColimitCocone quotient = quotient_cocone(current);
    BaseMorphism step = compose(right.apply(quotient.legs[0]), forms.d_bar);
    Partition next = current.meet(Partition::kernel(step));
    if (next == current) break;
    current = std::move(next);
  }
  ColimitCocone classes = quotient_cocone(current);
  return pullback_cone(compose(classes.legs[0], sum.inl),
                       compose(classes.legs[0], sum.inr))
      .apex;
}

MachineMorphism pair_into_product(const MachineProduct& product, const MachineMorphism& u,
                                  const MachineMorphism& v) {
  if (!(*u.src() == *v.src()))
    throw DiagramError("pairing: the morphisms have different sources");
  if (!(*u.dst() == *product.p1.dst()) || !(*v.dst() == *product.p2.dst()))
    throw DiagramError("pairing: the morphisms do not target the product's factors");
  BaseMorphism w = [&] {
    try {
      return pair_into_cone(
          LimitCone{product.machine->carrier(), {product.p1.map(), product.p2.map()}},
          {u.map(), v.map()}, "product pairing");
    } catch (const DiagramError& e) {
      throw InternalError(std::string("pairing: image misses the product carrier (") +
                          e.what() + ")");
    }
  }();
  return MachineMorphism(u.src(), product.machine, std::move(w));
}

MachineEqualizer machine_equalizer(const MachineMorphism& h1, const MachineMorphism& h2) {
  if (!(*h1.src() == *h2.src()) || !(*h1.dst() == *h2.dst()))
    throw DiagramError("equalizer: the morphisms are not a parallel pair");
  const MachinePtr& m = h1.src();
  LimitCone cone = equalizer_cone(h1.map(), h2.map());
  const BaseMorphism& include = cone.legs[0];
  const auto& functor = *m->adjunction()->left();
  BaseMorphism f_include = functor.apply(include);
  BaseMorphism d_s = [&] {
    try {
      return factor_through(include, compose(m->d(), f_include), "equalizer transition");
    } catch (const DiagramError& e) {
      throw InternalError(std::string("equalizer: transition leaves the subobject (") +
                          e.what() + ")");
    }
  }();
  BaseMorphism s_s = m->flavor() == Flavor::mealy ? compose(m->s(), f_include)
                                                  : compose(m->s(), include);
  MachinePtr machine = std::make_shared<const FMachine>(
      m->flavor(), m->adjunction(), cone.apex, m->output(), std::move(d_s), std::move(s_s));
  return {machine, MachineMorphism(machine, m, include)};
}

MachinePullback machine_pullback(const MachineMorphism& h1, const MachineMorphism& h2) {
  if (!(*h1.dst() == *h2.dst()))
    throw DiagramError("pullback: the morphisms have different codomains");
  const MachinePtr& m1 = h1.src();
  const MachinePtr& m2 = h2.src();
  LimitCone cone = pullback_cone(h1.map(), h2.map());
  const BaseMorphism& p1 = cone.legs[0];
  const BaseMorphism& p2 = cone.legs[1];
  const auto& functor = *m1->adjunction()->left();
  BaseMorphism fp1 = functor.apply(p1);
  BaseMorphism fp2 = functor.apply(p2);
  BaseMorphism d_p = [&] {
    try {
      return pair_into_cone(cone, {compose(m1->d(), fp1), compose(m2->d(), fp2)},
                            "pullback transition");
    } catch (const DiagramError& e) {
      throw InternalError(std::string("pullback: transition leaves the carrier (") +
                          e.what() + ")");
    }
  }();
  BaseMorphism s_p = m1->flavor() == Flavor::mealy ? compose(m1->s(), fp1)
                                                   : compose(m1->s(), p1);
  MachinePtr machine = std::make_shared<const FMachine>(
      m1->flavor(), m1->adjunction(), cone.apex, m1->output(), std::move(d_p),
      std::move(s_p));
  return {machine, MachineMorphism(machine, m1, p1), MachineMorphism(machine, m2, p2)};
}

MachineSum machine_coproduct(const MachinePtr& m1, const MachinePtr& m2) {
  MachineCoproduct sum = coproduct_machine(*m1, *m2);
  return {sum.machine, MachineMorphism(m1, sum.machine, sum.inl),
          MachineMorphism(m2, sum.machine, sum.inr)};
}

MachineCoequalizer machine_coequalizer(const MachineMorphism& h1, const MachineMorphism& h2) {
  if (!(*h1.src() == *h2.src()) || !(*h1.dst() == *h2.dst()))
    throw DiagramError("coequalizer: the morphisms are not a parallel pair");
  const MachinePtr& m = h1.dst();
  ColimitCocone cocone = coequalizer_cocone(h1.map(), h2.map());
  const BaseMorphism& project = cocone.legs[0];
  const auto& functor = *m->adjunction()->left();
  BaseMorphism f_project = functor.apply(project);
  BaseMorphism d_q = induced_along(f_project, compose(project, m->d()),
                                   "coequalizer transition");
  BaseMorphism s_q = m->flavor() == Flavor::mealy
                         ? induced_along(f_project, m->s(), "coequalizer output")
                         : induced_along(project, m->s(), "coequalizer output");
  MachinePtr machine = std::make_shared<const FMachine>(
      m->flavor(), m->adjunction(), cocone.apex, m->output(), std::move(d_q),
      std::move(s_q));
  return {machine, MachineMorphism(m, machine, project)};
}

MachinePtr machine_initial(const AdjunctionPtr& adj, const BaseObject& output,
                           Flavor flavor) {
  BaseObject carrier = initial_cocone(output.base()).apex;
  BaseObject f_carrier = adj->left()->apply(carrier);
  if (f_carrier.size() != 0)
    throw InternalError("initial: the functor does not preserve the empty carrier");
  BaseMorphism d = BaseMorphism::empty(f_carrier, carrier);
  BaseMorphism s = flavor == Flavor::mealy ? BaseMorphism::empty(f_carrier, output)
                                           : BaseMorphism::empty(carrier, output);
  return std::make_shared<const FMachine>(flavor, adj, carrier, output, std::move(d),
                                          std::move(s));
}

// ---------------------------------------------------------------------------
// Universal-property oracle
// ---------------------------------------------------------------------------

std::string universal_kind_name(UniversalKind kind) {
  switch (kind) {
    case UniversalKind::product: return "product";
    case UniversalKind::coproduct: return "coproduct";
    case UniversalKind::equalizer: return "equalizer";
    case UniversalKind::pullback: return "pullback";
    case UniversalKind::coequalizer: return "coequalizer";
    case UniversalKind::initial: return "initial";
  }
  throw InternalError("unknown universal kind");
}

UniversalKind universal_kind_from_name(const std::string& name) {
  if (name == "product") return UniversalKind::product;
  if (name == "coproduct") return UniversalKind::coproduct;
  if (name == "equalizer") return UniversalKind::equalizer;
  if (name == "pullback") return UniversalKind::pullback;
  if (name == "coequalizer") return UniversalKind::coequalizer;
  if (name == "initial") return UniversalKind::initial;
  throw ValidationError("unknown construction kind '" + name + "'");
}

std::vector<MachinePtr> enumerate_small_machines(const AdjunctionPtr& adj,
                                                 const BaseObject& output, Flavor flavor,
                                                 int max_states) {
  const BaseCategory& base = adj->source();
  std::vector<BaseObject> carriers;
  for (int n = 0; n <= max_states; ++n) {
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back("z" + std::to_string(i));
    if (!base.is_mset()) {
      carriers.push_back(BaseObject::plain(names));
      continue;
    }
    const int msize = base.monoid->size();
    const long long cells = static_cast<long long>(msize) * n;
    std::vector<int> flat(static_cast<size_t>(cells), 0);
    for (;;) {
      std::vector<std::vector<int>> rows(static_cast<size_t>(msize),
                                         std::vector<int>(static_cast<size_t>(n)));
      for (int m = 0; m < msize; ++m)
        for (int i = 0; i < n; ++i)
          rows[static_cast<size_t>(m)][static_cast<size_t>(i)] =
              flat[static_cast<size_t>(m * n + i)];
      try {
        carriers.push_back(BaseObject::with_action(names, base.monoid, rows));
      } catch (const ValidationError&) {
      }
      int pos = static_cast<int>(cells) - 1;
      while (pos >= 0 && flat[static_cast<size_t>(pos)] == n - 1)
        flat[static_cast<size_t>(pos--)] = 0;
      if (pos < 0) break;
      ++flat[static_cast<size_t>(pos)];
    }
  }

  std::vector<MachinePtr> out;
  for (const auto& carrier : carriers) {
    BaseObject context = adj->left()->apply(carrier);
    const BaseObject& s_dom = flavor == Flavor::mealy ? context : carrier;
    for (const auto& d : enumerate_hom(context, carrier)) {
      for (const auto& s : enumerate_hom(s_dom, output)) {
        out.push_back(
            std::make_shared<const FMachine>(flavor, adj, carrier, output, d, s));
      }
    }
  }
  return out;
}

ConeReport check_universal(UniversalKind kind, const UniversalData& data,
                           const std::vector<MachinePtr>& fixtures, int bound) {
  if (!data.apex) throw ValidationError("oracle: no apex machine given");
  const FMachine& apex = *data.apex;
  auto check_bound = [&](const FMachine& m, const std::string& role) {
    if (m.carrier().size() > bound)
      throw ValidationError("oracle: the " + role + " has " +
                            std::to_string(m.carrier().size()) +
                            " states, above the bound " + std::to_string(bound));
  };
  check_bound(apex, "apex");
  for (const auto& leg : data.legs) {
    check_bound(*leg.src(), "construction");
    check_bound(*leg.dst(), "construction");
  }

  const size_t legs_expected = [&] {
    switch (kind) {
      case UniversalKind::product:
      case UniversalKind::pullback: return size_t{2};
      case UniversalKind::coproduct: return size_t{2};
      case UniversalKind::equalizer:
      case UniversalKind::coequalizer: return size_t{1};
      case UniversalKind::initial: return size_t{0};
    }
    throw InternalError("unknown universal kind");
  }();
  if (data.legs.size() != legs_expected)
    throw ValidationError("oracle: " + universal_kind_name(kind) + " takes " +
                          std::to_string(legs_expected) + " legs, got " +
                          std::to_string(data.legs.size()));
  const bool needs_diagram = kind == UniversalKind::equalizer ||
                             kind == UniversalKind::coequalizer ||
                             kind == UniversalKind::pullback;
  if (needs_diagram && data.diagram.size() != 2)
    throw ValidationError("oracle: " + universal_kind_name(kind) +
                          " needs its two defining morphisms");
  const bool cocone_kind =
      kind == UniversalKind::coproduct || kind == UniversalKind::coequalizer;
  for (const auto& leg : data.legs) {
    const FMachine& attached = cocone_kind ? *leg.dst() : *leg.src();
    if (!(attached == apex))
      throw ValidationError("oracle: a leg is not attached to the apex machine");
  }

  ConeReport report;
  report.kind = universal_kind_name(kind);
  report.apex = data.apex;
  for (const auto& leg : data.legs) report.legs.push_back(leg.map());
  report.ok = true;

  std::vector<std::pair<std::string, MachinePtr>> competitors;
  for (size_t i = 0; i < fixtures.size(); ++i) {
    if (fixtures[i]->carrier().size() > bound) continue;
    competitors.emplace_back(
        "fixture[" + std::to_string(i) + "]" + fixtures[i]->carrier().describe(),
        fixtures[i]);
  }
  std::vector<MachinePtr> small =
      enumerate_small_machines(apex.adjunction(), apex.output(), apex.flavor(),
                               std::min(bound, 2));
  for (size_t i = 0; i < small.size(); ++i)
    competitors.emplace_back(
        "small[" + std::to_string(i) + "]" + small[i]->carrier().describe(), small[i]);

  auto record = [&](CompetitorVerdict& verdict, const std::string& cone_desc,
                    long long count) {
    ++verdict.cones;
    ++report.cones;
    if (count == 1) return;
    report.ok = false;
    if (count == 0)
      ++verdict.existence_failures;
    else
      ++verdict.uniqueness_failures;
    if (report.failures.size() < 8) {
      std::ostringstream os;
      os << report.kind << ": competitor " << verdict.competitor << ", " << cone_desc
         << " has " << count << " mediating morphisms";
      report.failures.push_back(os.str());
    }
  };

  for (const auto& [name, z] : competitors) {
    ++report.competitors;
    CompetitorVerdict verdict;
    verdict.competitor = name;
    switch (kind) {
      case UniversalKind::product: {
        const FMachine& m1 = *data.legs[0].dst();
        const FMachine& m2 = *data.legs[1].dst();
        auto mediators = machine_homs(*z, apex);
        auto us = machine_homs(*z, m1);
        auto vs = machine_homs(*z, m2);
        for (const auto& u : us) {
          for (const auto& v : vs) {
            long long count = 0;
            for (const auto& w : mediators) {
              if (compose(data.legs[0].map(), w) == u &&
                  compose(data.legs[1].map(), w) == v)
                ++count;
            }
            record(verdict, "cone #" + std::to_string(verdict.cones), count);
          }
        }
        break;
      }
      case UniversalKind::pullback: {
        const FMachine& m1 = *data.legs[0].dst();
        const FMachine& m2 = *data.legs[1].dst();
        auto mediators = machine_homs(*z, apex);
        auto us = machine_homs(*z, m1);
        auto vs = machine_homs(*z, m2);
        for (const auto& u : us) {
          for (const auto& v : vs) {
            if (compose(data.diagram[0].map(), u) != compose(data.diagram[1].map(), v))
              continue;
            long long count = 0;
            for (const auto& w : mediators) {
              if (compose(data.legs[0].map(), w) == u &&
                  compose(data.legs[1].map(), w) == v)
                ++count;
            }
            record(verdict, "cone #" + std::to_string(verdict.cones), count);
          }
        }
        break;
      }
      case UniversalKind::equalizer: {
        const FMachine& m1 = *data.diagram[0].src();
        auto mediators = machine_homs(*z, apex);
        for (const auto& u : machine_homs(*z, m1)) {
          if (compose(data.diagram[0].map(), u) != compose(data.diagram[1].map(), u))
            continue;
          long long count = 0;
          for (const auto& w : mediators) {
            if (compose(data.legs[0].map(), w) == u) ++count;
          }
          record(verdict, "cone #" + std::to_string(verdict.cones), count);
        }
        break;
      }
      case UniversalKind::coproduct: {
        const FMachine& m1 = *data.legs[0].src();
        const FMachine& m2 = *data.legs[1].src();
        auto mediators = machine_homs(apex, *z);
        auto us = machine_homs(m1, *z);
        auto vs = machine_homs(m2, *z);
        for (const auto& u : us) {
          for (const auto& v : vs) {
            long long count = 0;
            for (const auto& w : mediators) {
              if (compose(w, data.legs[0].map()) == u &&
                  compose(w, data.legs[1].map()) == v)
                ++count;
            }
            record(verdict, "cocone #" + std::to_string(verdict.cones), count);
          }
        }
        break;
      }
      case UniversalKind::coequalizer: {
        const FMachine& m2 = *data.diagram[0].dst();
        auto mediators = machine_homs(apex, *z);
        for (const auto& u : machine_homs(m2, *z)) {
          if (compose(u, data.diagram[0].map()) != compose(u, data.diagram[1].map()))
            continue;
          long long count = 0;
          for (const auto& w : mediators) {
            if (compose(w, data.legs[0].map()) == u) ++count;
          }
          record(verdict, "cocone #" + std::to_string(verdict.cones), count);
        }
        break;
      }
      case UniversalKind::initial: {
        record(verdict, "empty cocone",
               static_cast<long long>(machine_homs(apex, *z).size()));
        break;
      }
    }
    if (verdict.cones > 0 || verdict.existence_failures > 0 ||
        verdict.uniqueness_failures > 0)
      report.verdicts.push_back(std::move(verdict));
  }
  return report;
}

}  // namespace fmachina
