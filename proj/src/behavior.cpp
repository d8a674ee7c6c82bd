#include "fmachina/behavior.hpp"

namespace fmachina {
namespace {

/// F^k applied to a morphism.
BaseMorphism functor_power(const Functor& f, int k, BaseMorphism g) {
  for (int i = 0; i < k; ++i) g = f.apply(g);
  return g;
}

}  // namespace

BaseMorphism skip_map(const FMachine& m, int n) {
  const auto& functor = *m.adjunction()->left();
  BaseMorphism t = [&] {
    if (m.flavor() == Flavor::mealy) {
      if (n < 1)
        throw ValidationError("skip map: mealy observation depth starts at 1, got " +
                              std::to_string(n));
      return m.s();
    }
    if (n < 0)
      throw ValidationError("skip map: moore observation depth starts at 0, got " +
                            std::to_string(n));
    if (n == 0) return m.s();
    return compose(m.s(), m.d());
  }();
  if (m.flavor() == Flavor::moore && n == 0) return t;
  for (int k = 1; k < n; ++k) t = compose(t, functor_power(functor, k, m.d()));
  return t;
}

BaseMorphism behavior_mate(const FMachine& m, int n) {
  BaseMorphism sn = skip_map(m, n);
  AdjunctionPtr iterated = iterate_adjunction(m.adjunction(), n);
  return iterated->transpose(m.carrier(), m.output(), sn);
}

RefinementTrace refine_behavior(const FMachine& m) {
  Partition current = m.flavor() == Flavor::mealy
                          ? Partition::kernel(*coalgebra_form(m).s_bar1)
                          : Partition::kernel(m.s());
  if (m.carrier().size() == 0) return {current, 0};
  const BaseMorphism d_bar = coalgebra_form(m).d_bar;
  const auto& right = *m.adjunction()->right();
  int rounds = 0;
  for (;;) {
    ColimitCocone quotient = quotient_cocone(current);
    BaseMorphism step = compose(right.apply(quotient.legs[0]), d_bar);
    Partition next = current.meet(Partition::kernel(step));
    ++rounds;
    if (next == current) break;
    current = std::move(next);
  }
  return {current, rounds};
}

Partition behavior_partition(const FMachine& m) { return refine_behavior(m).partition; }

Minimization minimize(const MachinePtr& m) {
  Partition partition = behavior_partition(*m);
  ColimitCocone quotient = quotient_cocone(partition);
  const BaseObject& q_carrier = quotient.apex;
  const BaseMorphism& q = quotient.legs[0];
  const auto& functor = *m->adjunction()->left();
  BaseMorphism fq = functor.apply(q);
  const BaseObject& q_context = fq.cod();

  std::vector<int> d_table(static_cast<size_t>(q_context.size()), -1);
  std::vector<int> s_context(static_cast<size_t>(q_context.size()), -1);
  for (int x = 0; x < fq.dom().size(); ++x) {
    int y = fq.apply_index(x);
    int d_val = q.apply_index(m->d().apply_index(x));
    if (d_table[static_cast<size_t>(y)] == -1)
      d_table[static_cast<size_t>(y)] = d_val;
    else if (d_table[static_cast<size_t>(y)] != d_val)
      throw InternalError("minimize: transition is not constant on classes at " +
                          q_context.element(y));
    if (m->flavor() == Flavor::mealy) {
      int s_val = m->s().apply_index(x);
      if (s_context[static_cast<size_t>(y)] == -1)
        s_context[static_cast<size_t>(y)] = s_val;
      else if (s_context[static_cast<size_t>(y)] != s_val)
        throw InternalError("minimize: output is not constant on classes at " +
                            q_context.element(y));
    }
  }
  for (int y = 0; y < q_context.size(); ++y) {
    if (d_table[static_cast<size_t>(y)] == -1)
      throw InternalError("minimize: " + q_context.element(y) +
                          " has no preimage under the mapped quotient");
  }
  BaseMorphism d_q(q_context, q_carrier, std::move(d_table));

  BaseMorphism s_q = [&] {
    if (m->flavor() == Flavor::mealy)
      return BaseMorphism(q_context, m->output(), std::move(s_context));
    std::vector<int> table(static_cast<size_t>(q_carrier.size()), -1);
    for (int e = 0; e < m->carrier().size(); ++e) {
      int b = q.apply_index(e);
      int v = m->s().apply_index(e);
      if (table[static_cast<size_t>(b)] == -1)
        table[static_cast<size_t>(b)] = v;
      else if (table[static_cast<size_t>(b)] != v)
        throw InternalError("minimize: output is not constant on classes at " +
                            q_carrier.element(b));
    }
    return BaseMorphism(q_carrier, m->output(), std::move(table));
  }();

  MachinePtr minimized = std::make_shared<const FMachine>(
      m->flavor(), m->adjunction(), q_carrier, m->output(), std::move(d_q), std::move(s_q));
  return {minimized, MachineMorphism(m, minimized, q)};
}

bool equivalent(const FMachine& m1, const FMachine& m2, const std::string& e1,
                const std::string& e2) {
  auto i1 = m1.carrier().find(e1);
  if (!i1) throw ValidationError("equivalent: unknown state '" + e1 + "' in the first machine");
  auto i2 = m2.carrier().find(e2);
  if (!i2)
    throw ValidationError("equivalent: unknown state '" + e2 + "' in the second machine");
  MachineCoproduct sum = coproduct_machine(m1, m2);
  Partition partition = behavior_partition(*sum.machine);
  return partition.same_block(sum.inl.apply_index(*i1), sum.inr.apply_index(*i2));
}

TerminalTruncation terminal_truncation(const AdjunctionPtr& adj, const BaseObject& output,
                                       int n, Flavor flavor) {
  if (!adj->is_endo())
    throw DiagramError("truncation: adjunction must be an endofunctor, got " +
                       adj->describe());
  if (!(output.base() == adj->source()))
    throw DiagramError("truncation: output lives in " + output.base().describe() +
                       " but the adjunction acts on " + adj->source().describe());
  const int lowest = flavor == Flavor::mealy ? 1 : 0;
  if (n < lowest)
    throw ValidationError("truncation: " + flavor_name(flavor) + " levels start at " +
                          std::to_string(lowest) + ", got " + std::to_string(n));

  const auto& right = *adj->right();
  std::vector<BaseObject> powers{output};  // powers[k] = R^k output
  for (int k = 1; k <= n; ++k) powers.push_back(right.apply(powers.back()));

  TerminalTruncation result = [&] {
    std::vector<BaseObject> factors;
    std::vector<int> levels;
    for (int k = lowest; k <= n; ++k) {
      factors.push_back(powers[static_cast<size_t>(k)]);
      levels.push_back(k);
    }
    LimitCone cone = wide_product_cone(factors);

    BaseMorphism s_leg = [&] {
      if (flavor == Flavor::moore) return cone.legs[0];
      BaseMorphism to_ro = adj->left()->apply(cone.legs[0]);
      return compose(counit(*adj, output), to_ro);
    }();

    if (n == lowest) {
      BaseObject reduced = terminal_cone(output.base()).apex;
      BaseObject f_apex = adj->left()->apply(cone.apex);
      BaseMorphism d_leg(f_apex, reduced,
                         std::vector<int>(static_cast<size_t>(f_apex.size()), 0));
      return TerminalTruncation{cone.apex,   std::move(levels), std::move(cone.legs),
                                std::move(s_leg), std::move(reduced), std::move(d_leg)};
    }

    std::vector<BaseObject> reduced_factors(factors.begin(), factors.end() - 1);
    LimitCone reduced_cone = wide_product_cone(reduced_factors);
    BaseObject r_reduced = right.apply(reduced_cone.apex);

    // The canonical comparison R(∏ levels below) -> ∏(levels above the
    // lowest); bijective because the right adjoint preserves products.
    std::vector<BaseObject> upper_factors(factors.begin() + 1, factors.end());
    LimitCone upper_cone = wide_product_cone(upper_factors);
    std::vector<BaseMorphism> r_legs;
    for (const auto& leg : reduced_cone.legs) r_legs.push_back(right.apply(leg));
    BaseMorphism comparison = pair_into_cone(upper_cone, r_legs, "truncation comparison");
    if (r_reduced.size() != upper_cone.apex.size())
      throw InternalError("truncation: comparison endpoints have different sizes");
    std::vector<int> inverse(static_cast<size_t>(upper_cone.apex.size()), -1);
    for (int r = 0; r < r_reduced.size(); ++r) {
      int w = comparison.apply_index(r);
      if (inverse[static_cast<size_t>(w)] != -1)
        throw InternalError("truncation: comparison map is not injective at " +
                            upper_cone.apex.element(w));
      inverse[static_cast<size_t>(w)] = r;
    }

    std::vector<BaseMorphism> upper_projections(cone.legs.begin() + 1, cone.legs.end());
    BaseMorphism drop = pair_into_cone(upper_cone, upper_projections, "truncation shift");
    std::vector<int> sigma_table(static_cast<size_t>(cone.apex.size()));
    for (int a = 0; a < cone.apex.size(); ++a)
      sigma_table[static_cast<size_t>(a)] =
          inverse[static_cast<size_t>(drop.apply_index(a))];
    BaseMorphism sigma(cone.apex, r_reduced, std::move(sigma_table));
    BaseMorphism d_leg = adj->transpose_inv(cone.apex, reduced_cone.apex, sigma);

    return TerminalTruncation{cone.apex,        std::move(levels),
                              std::move(cone.legs), std::move(s_leg),
                              std::move(reduced_cone.apex), std::move(d_leg)};
  }();
  return result;
}

}  // namespace fmachina
