#include "fmachina/io.hpp"

#include <json.hpp>

namespace fmachina {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw ValidationError("document: " + msg); }

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    size_t line = 1, column = 1;
    const size_t stop = e.byte > 0 ? e.byte - 1 : 0;
    for (size_t i = 0; i < stop && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ValidationError("syntax error at line " + std::to_string(line) + ", column " +
                          std::to_string(column));
  }
}

const json& field(const json& obj, const std::string& path, const std::string& key) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(path + " is missing the key '" + key + "'");
  return *it;
}

void check_keys(const json& obj, const std::string& path,
                const std::vector<std::string>& allowed) {
  if (!obj.is_object()) fail(path + " must be an object");
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (const auto& a : allowed) known = known || key == a;
    if (!known) fail(path + " has an unknown key '" + key + "'");
  }
}

std::string str(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path + " must be a string");
  return j.get<std::string>();
}

std::vector<std::string> str_list(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path + " must be an array of strings");
  std::vector<std::string> out;
  for (size_t i = 0; i < j.size(); ++i) out.push_back(str(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

std::map<std::string, std::string> str_map(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path + " must be an object of strings");
  std::map<std::string, std::string> out;
  for (const auto& [key, value] : j.items()) out[key] = str(value, path + "." + key);
  return out;
}

MonoidPtr parse_monoid(const json& j, const std::string& path) {
  check_keys(j, path, {"elements", "mult", "unit"});
  std::vector<std::string> elements = str_list(field(j, path, "elements"), path + ".elements");
  std::string unit = str(field(j, path, "unit"), path + ".unit");
  const json& mult = field(j, path, "mult");
  if (!mult.is_array()) fail(path + ".mult must be an array of rows");
  std::vector<std::vector<std::string>> rows;
  for (size_t i = 0; i < mult.size(); ++i)
    rows.push_back(str_list(mult[i], path + ".mult[" + std::to_string(i) + "]"));
  return std::make_shared<const FiniteMonoid>(std::move(elements), unit, rows);
}

std::map<std::string, std::map<std::string, std::string>> parse_action(
    const json& j, const std::string& path) {
  if (!j.is_object()) fail(path + " must be an object keyed by monoid elements");
  std::map<std::string, std::map<std::string, std::string>> out;
  for (const auto& [key, value] : j.items()) out[key] = str_map(value, path + "." + key);
  return out;
}

AdjunctionPtr parse_adjunction(const json& j, const std::string& path,
                               const BaseCategory& base) {
  const std::string kind = str(field(j, path, "kind"), path + ".kind");
  if (kind == "identity") {
    check_keys(j, path, {"kind"});
    return identity_adjunction(base);
  }
  if (kind == "product-exponential") {
    check_keys(j, path, {"kind", "input"});
    if (base.is_mset()) fail(path + ": product-exponential requires the finset base");
    return product_exponential_adjunction(
        BaseObject::plain(str_list(field(j, path, "input"), path + ".input")));
  }
  if (kind == "composite") {
    check_keys(j, path, {"kind", "parts"});
    const json& parts = field(j, path, "parts");
    if (!parts.is_array() || parts.size() != 2)
      fail(path + ".parts must list the outer and the inner adjunction");
    return compose_adjunctions(parse_adjunction(parts[0], path + ".parts[0]", base),
                               parse_adjunction(parts[1], path + ".parts[1]", base));
  }
  if (kind == "base-change-comonadic") {
    check_keys(j, path, {"kind", "hom"});
    if (!base.is_mset()) fail(path + ": base-change-comonadic requires a monoid-action base");
    const json& hom = field(j, path, "hom");
    check_keys(hom, path + ".hom", {"map", "source"});
    MonoidPtr source = parse_monoid(field(hom, path + ".hom", "source"), path + ".hom.source");
    auto hom_ptr = std::make_shared<const MonoidHom>(
        source, base.monoid, str_map(field(hom, path + ".hom", "map"), path + ".hom.map"));
    return base_change_comonadic(hom_ptr);
  }
  fail(path + ": unknown adjunction kind '" + kind + "'");
}

json monoid_to_json(const FiniteMonoid& m) {
  json rows = json::array();
  for (int a = 0; a < m.size(); ++a) {
    json row = json::array();
    for (int b = 0; b < m.size(); ++b) row.push_back(m.element(m.mult(a, b)));
    rows.push_back(std::move(row));
  }
  return json{{"elements", m.elements()}, {"mult", std::move(rows)},
              {"unit", m.element(m.unit_index())}};
}

json spec_to_json(const AdjunctionSpec& spec) {
  switch (spec.kind) {
    case AdjunctionSpec::Kind::identity:
      return json{{"kind", "identity"}};
    case AdjunctionSpec::Kind::input_product:
      return json{{"kind", "product-exponential"}, {"input", spec.input->elements()}};
    case AdjunctionSpec::Kind::composite:
      return json{{"kind", "composite"},
                  {"parts", json::array({spec_to_json(*spec.outer), spec_to_json(*spec.inner)})}};
    case AdjunctionSpec::Kind::base_change_comonadic: {
      const FiniteMonoid& source = *spec.hom->dom();
      json map = json::object();
      for (const auto& name : source.elements()) map[name] = spec.hom->apply(name);
      return json{{"kind", "base-change-comonadic"},
                  {"hom", json{{"map", std::move(map)}, {"source", monoid_to_json(source)}}}};
    }
    default:
      throw ValidationError("document: the adjunction " + spec_describe(spec) +
                            " has no document form");
  }
}

json action_to_json(const BaseObject& x) {
  json out = json::object();
  const FiniteMonoid& monoid = *x.base().monoid;
  for (int m = 0; m < monoid.size(); ++m) {
    json row = json::object();
    for (int i = 0; i < x.size(); ++i) row[x.element(i)] = x.element(x.act(m, i));
    out[monoid.element(m)] = std::move(row);
  }
  return out;
}

}  // namespace

MachinePtr parse_machine(const std::string& text) {
  json doc = parse_json(text);
  check_keys(doc, "document", {"actions", "adjunction", "base", "machine", "output"});

  const json& base_json = field(doc, "document", "base");
  const std::string base_kind = str(field(base_json, "base", "kind"), "base.kind");
  BaseCategory base;
  if (base_kind == "finset") {
    check_keys(base_json, "base", {"kind"});
  } else if (base_kind == "mset") {
    check_keys(base_json, "base", {"kind", "monoid"});
    base.monoid = parse_monoid(field(base_json, "base", "monoid"), "base.monoid");
  } else {
    fail("base.kind must be 'finset' or 'mset', got '" + base_kind + "'");
  }

  if (base.is_mset() && !doc.contains("actions"))
    fail("actions are required for a monoid-action base");
  if (!base.is_mset() && doc.contains("actions"))
    fail("actions are only allowed for a monoid-action base");

  std::vector<std::string> output_names = str_list(field(doc, "document", "output"), "output");
  const json& machine = field(doc, "document", "machine");
  check_keys(machine, "machine", {"d", "flavor", "s", "states"});
  Flavor flavor = flavor_from_name(str(field(machine, "machine", "flavor"), "machine.flavor"));
  std::vector<std::string> states = str_list(field(machine, "machine", "states"),
                                             "machine.states");

  BaseObject output = BaseObject::plain(output_names);
  BaseObject carrier = BaseObject::plain(states);
  if (base.is_mset()) {
    const json& actions = doc["actions"];
    check_keys(actions, "actions", {"output", "states"});
    output = BaseObject::with_action_table(
        output_names, base.monoid,
        parse_action(field(actions, "actions", "output"), "actions.output"));
    carrier = BaseObject::with_action_table(
        states, base.monoid,
        parse_action(field(actions, "actions", "states"), "actions.states"));
  }

  AdjunctionPtr adjunction =
      parse_adjunction(field(doc, "document", "adjunction"), "adjunction", base);
  BaseObject context = adjunction->left()->apply(carrier);
  BaseMorphism d = BaseMorphism::from_table(
      context, carrier, str_map(field(machine, "machine", "d"), "machine.d"), "d table");
  const BaseObject& s_dom = flavor == Flavor::mealy ? context : carrier;
  BaseMorphism s = BaseMorphism::from_table(
      s_dom, output, str_map(field(machine, "machine", "s"), "machine.s"), "s table");
  return std::make_shared<const FMachine>(flavor, std::move(adjunction), std::move(carrier),
                                          std::move(output), std::move(d), std::move(s));
}

std::string serialize_machine(const FMachine& m) {
  json doc;
  doc["base"] = m.base().is_mset()
                    ? json{{"kind", "mset"}, {"monoid", monoid_to_json(*m.base().monoid)}}
                    : json{{"kind", "finset"}};
  doc["adjunction"] = spec_to_json(m.adjunction()->spec());
  doc["output"] = m.output().elements();
  doc["machine"] = json{{"d", m.d().named_table()},
                        {"flavor", flavor_name(m.flavor())},
                        {"s", m.s().named_table()},
                        {"states", m.carrier().elements()}};
  if (m.base().is_mset())
    doc["actions"] = json{{"output", action_to_json(m.output())},
                          {"states", action_to_json(m.carrier())}};
  return doc.dump(2) + "\n";
}

BaseMorphism parse_morphism_map(const std::string& text, const BaseObject& dom,
                                const BaseObject& cod) {
  json doc = parse_json(text);
  check_keys(doc, "morphism file", {"map"});
  return BaseMorphism::from_table(dom, cod, str_map(field(doc, "morphism file", "map"), "map"),
                                  "morphism file");
}

std::string serialize_morphism_map(const BaseMorphism& f) {
  return json{{"map", f.named_table()}}.dump(2) + "\n";
}

}  // namespace fmachina
