#include "fmachina/machine.hpp"

#include <sstream>

namespace fmachina {
namespace {

std::string endpoint_error(const std::string& what, const BaseObject& got,
                           const BaseObject& want) {
  std::ostringstream os;
  os << "machine: " << what << " has endpoint " << got.describe() << ", expected "
     << want.describe();
  return os.str();
}

}  // namespace

std::string flavor_name(Flavor flavor) {
  return flavor == Flavor::mealy ? "mealy" : "moore";
}

Flavor flavor_from_name(const std::string& name) {
  if (name == "mealy") return Flavor::mealy;
  if (name == "moore") return Flavor::moore;
  throw ValidationError("machine: unknown flavor '" + name + "'");
}

FMachine::FMachine(Flavor flavor, AdjunctionPtr adjunction, BaseObject carrier,
                   BaseObject output, BaseMorphism d, BaseMorphism s)
    : flavor_(flavor),
      adjunction_(std::move(adjunction)),
      carrier_(std::move(carrier)),
      output_(std::move(output)),
      f_carrier_(adjunction_->left()->apply(carrier_)),
      d_(std::move(d)),
      s_(std::move(s)) {
  if (!adjunction_->is_endo())
    throw DiagramError("machine: adjunction must be an endofunctor, got " +
                       adjunction_->describe());
  if (!(carrier_.base() == adjunction_->source()))
    throw DiagramError("machine: carrier lives in " + carrier_.base().describe() +
                       " but the adjunction acts on " + adjunction_->source().describe());
  if (!(output_.base() == carrier_.base()))
    throw DiagramError("machine: output lives in " + output_.base().describe() +
                       " but the carrier lives in " + carrier_.base().describe());
  if (!(d_.dom() == f_carrier_))
    throw DiagramError(endpoint_error("transition map domain", d_.dom(), f_carrier_));
  if (!(d_.cod() == carrier_))
    throw DiagramError(endpoint_error("transition map codomain", d_.cod(), carrier_));
  const BaseObject& s_dom = flavor_ == Flavor::mealy ? f_carrier_ : carrier_;
  if (!(s_.dom() == s_dom))
    throw DiagramError(endpoint_error("output map domain", s_.dom(), s_dom));
  if (!(s_.cod() == output_))
    throw DiagramError(endpoint_error("output map codomain", s_.cod(), output_));
}

bool FMachine::same_interface(const FMachine& other) const {
  return flavor_ == other.flavor_ && output_ == other.output_ &&
         spec_equal(adjunction_->spec(), other.adjunction_->spec());
}

bool FMachine::operator==(const FMachine& other) const {
  return same_interface(other) && carrier_ == other.carrier_ && d_ == other.d_ &&
         s_ == other.s_;
}

MorphismReport validate_morphism(const FMachine& src, const FMachine& dst,
                                 const BaseMorphism& h) {
  MorphismReport report;
  if (src.flavor() != dst.flavor())
    report.problems.push_back("flavor mismatch: " + flavor_name(src.flavor()) + " vs " +
                              flavor_name(dst.flavor()));
  if (!spec_equal(src.adjunction()->spec(), dst.adjunction()->spec()))
    report.problems.push_back("adjunction mismatch: " + src.adjunction()->describe() +
                              " vs " + dst.adjunction()->describe());
  if (!(src.output() == dst.output()))
    report.problems.push_back("output mismatch: " + src.output().describe() + " vs " +
                              dst.output().describe());
  if (!(h.dom() == src.carrier()))
    report.problems.push_back("map domain is " + h.dom().describe() +
                              ", expected the source carrier " + src.carrier().describe());
  if (!(h.cod() == dst.carrier()))
    report.problems.push_back("map codomain is " + h.cod().describe() +
                              ", expected the target carrier " + dst.carrier().describe());
  if (!report.problems.empty()) return report;

  const BaseMorphism fh = src.adjunction()->left()->apply(h);
  const BaseObject& fe = src.f_carrier();
  for (int x = 0; x < fe.size(); ++x) {
    if (h.apply_index(src.d().apply_index(x)) != dst.d().apply_index(fh.apply_index(x)))
      report.transition_failures.push_back(fe.element(x));
  }
  if (src.flavor() == Flavor::mealy) {
    for (int x = 0; x < fe.size(); ++x) {
      if (src.s().apply_index(x) != dst.s().apply_index(fh.apply_index(x)))
        report.output_failures.push_back(fe.element(x));
    }
  } else {
    for (int e = 0; e < src.carrier().size(); ++e) {
      if (src.s().apply_index(e) != dst.s().apply_index(h.apply_index(e)))
        report.output_failures.push_back(src.carrier().element(e));
    }
  }
  report.ok = report.transition_failures.empty() && report.output_failures.empty();
  return report;
}

MachineMorphism::MachineMorphism(MachinePtr src, MachinePtr dst, BaseMorphism map)
    : src_(std::move(src)), dst_(std::move(dst)), map_(std::move(map)) {
  MorphismReport report = validate_morphism(*src_, *dst_, map_);
  if (report.ok) return;
  std::ostringstream os;
  os << "machine morphism is invalid:";
  for (const auto& p : report.problems) os << " " << p << ";";
  if (!report.transition_failures.empty()) {
    os << " transition square fails at";
    for (const auto& x : report.transition_failures) os << " " << x;
    os << ";";
  }
  if (!report.output_failures.empty()) {
    os << " output condition fails at";
    for (const auto& x : report.output_failures) os << " " << x;
    os << ";";
  }
  throw ValidationError(os.str());
}

MachineMorphism identity_morphism(const MachinePtr& m) {
  return MachineMorphism(m, m, BaseMorphism::identity(m->carrier()));
}

MachineMorphism compose(const MachineMorphism& g, const MachineMorphism& f) {
  if (!(*f.dst() == *g.src()))
    throw DiagramError("machine morphisms do not compose: middle machines differ");
  return MachineMorphism(f.src(), g.dst(), compose(g.map(), f.map()));
}

FMachine mk_classical(Flavor flavor, const BaseObject& input, const BaseObject& output,
                      const std::vector<std::string>& states,
                      const std::map<std::string, std::string>& d_table,
                      const std::map<std::string, std::string>& s_table) {
  AdjunctionPtr adj = product_exponential_adjunction(input);
  BaseObject carrier = BaseObject::plain(states);
  BaseObject pairs = adj->left()->apply(carrier);
  BaseMorphism d = BaseMorphism::from_table(pairs, carrier, d_table, "d table");
  const BaseObject& s_dom = flavor == Flavor::mealy ? pairs : carrier;
  BaseMorphism s = BaseMorphism::from_table(s_dom, output, s_table, "s table");
  return FMachine(flavor, std::move(adj), std::move(carrier), output, std::move(d),
                  std::move(s));
}

RunResult run_word(const FMachine& m, const std::string& state,
                   const std::vector<std::string>& word) {
  const AdjunctionSpec& spec = m.adjunction()->spec();
  if (spec.kind != AdjunctionSpec::Kind::input_product)
    throw ValidationError("run: word semantics is only defined for input-product machines");
  if (m.flavor() == Flavor::mealy && word.empty())
    throw ValidationError("run: mealy machines consume nonempty words");
  const BaseObject& input = *spec.input;
  auto cur = m.carrier().find(state);
  if (!cur) throw ValidationError("run: unknown state '" + state + "'");
  int at = *cur;
  int last_pair = -1;
  for (const auto& letter : word) {
    auto i = input.find(letter);
    if (!i) throw ValidationError("run: unknown input '" + letter + "'");
    last_pair = at * input.size() + *i;
    at = m.d().apply_index(last_pair);
  }
  RunResult result;
  result.final_state = m.carrier().element(at);
  if (m.flavor() == Flavor::mealy)
    result.output = m.output().element(m.s().apply_index(last_pair));
  else
    result.output = m.output().element(m.s().apply_index(at));
  return result;
}

CoalgebraForm coalgebra_form(const FMachine& m) {
  CoalgebraForm form{m.adjunction()->transpose(m.carrier(), m.carrier(), m.d()),
                     std::nullopt};
  if (m.flavor() == Flavor::mealy)
    form.s_bar1 = m.adjunction()->transpose(m.carrier(), m.output(), m.s());
  return form;
}

MachineCoproduct coproduct_machine(const FMachine& m1, const FMachine& m2) {
  if (!m1.same_interface(m2))
    throw DiagramError("coproduct: machines disagree on flavor, adjunction, or output");
  ColimitCocone sum = coproduct_cocone(m1.carrier(), m2.carrier());
  const BaseMorphism& inl = sum.legs[0];
  const BaseMorphism& inr = sum.legs[1];
  const auto& functor = *m1.adjunction()->left();
  BaseObject fc = functor.apply(sum.apex);
  BaseMorphism f_inl = functor.apply(inl);
  BaseMorphism f_inr = functor.apply(inr);

  // F preserves coproducts, so [F(inl), F(inr)] is a bijection; invert it
  // elementwise and check that it really is one.
  std::vector<int> side(static_cast<size_t>(fc.size()), -1);
  std::vector<int> pre(static_cast<size_t>(fc.size()), -1);
  auto mark = [&](const BaseMorphism& leg, int which) {
    for (int x = 0; x < leg.dom().size(); ++x) {
      int y = leg.apply_index(x);
      if (side[static_cast<size_t>(y)] != -1)
        throw InternalError("coproduct: image overlap at " + fc.element(y));
      side[static_cast<size_t>(y)] = which;
      pre[static_cast<size_t>(y)] = x;
    }
  };
  mark(f_inl, 0);
  mark(f_inr, 1);
  for (int y = 0; y < fc.size(); ++y) {
    if (side[static_cast<size_t>(y)] == -1)
      throw InternalError("coproduct: " + fc.element(y) + " is not in either image");
  }

  std::vector<int> d_table(static_cast<size_t>(fc.size()));
  for (int y = 0; y < fc.size(); ++y) {
    int x = pre[static_cast<size_t>(y)];
    d_table[static_cast<size_t>(y)] = side[static_cast<size_t>(y)] == 0
                                          ? inl.apply_index(m1.d().apply_index(x))
                                          : inr.apply_index(m2.d().apply_index(x));
  }
  BaseMorphism d(fc, sum.apex, std::move(d_table));

  BaseMorphism s = [&] {
    if (m1.flavor() == Flavor::mealy) {
      std::vector<int> table(static_cast<size_t>(fc.size()));
      for (int y = 0; y < fc.size(); ++y) {
        int x = pre[static_cast<size_t>(y)];
        table[static_cast<size_t>(y)] = side[static_cast<size_t>(y)] == 0
                                            ? m1.s().apply_index(x)
                                            : m2.s().apply_index(x);
      }
      return BaseMorphism(fc, m1.output(), std::move(table));
    }
    std::vector<int> table(static_cast<size_t>(sum.apex.size()));
    for (int e = 0; e < m1.carrier().size(); ++e)
      table[static_cast<size_t>(inl.apply_index(e))] = m1.s().apply_index(e);
    for (int e = 0; e < m2.carrier().size(); ++e)
      table[static_cast<size_t>(inr.apply_index(e))] = m2.s().apply_index(e);
    return BaseMorphism(sum.apex, m1.output(), std::move(table));
  }();

  MachineCoproduct result{
      std::make_shared<const FMachine>(m1.flavor(), m1.adjunction(), sum.apex, m1.output(),
                                       std::move(d), std::move(s)),
      inl, inr};
  if (!validate_morphism(m1, *result.machine, result.inl).ok ||
      !validate_morphism(m2, *result.machine, result.inr).ok)
    throw InternalError("coproduct: an injection is not a machine morphism");
  return result;
}

}  // namespace fmachina
