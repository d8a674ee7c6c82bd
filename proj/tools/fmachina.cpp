// Command-line surface: every construction on machine documents, reported as
// deterministic JSON on standard output. Exit codes: 0 success or property
// holds, 1 property fails, 2 input error, 3 size guard exceeded.
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "fmachina/algebra.hpp"
#include "fmachina/io.hpp"
#include "fmachina/limits.hpp"

namespace {

using fmachina::BaseMorphism;
using fmachina::Flavor;
using fmachina::MachineMorphism;
using fmachina::MachinePtr;
using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw fmachina::ValidationError("cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

MachinePtr load(const std::string& path) {
  return fmachina::parse_machine(read_file(path));
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw fmachina::ValidationError("cannot write '" + path + "'");
  out << text;
}

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> out;
  if (text.empty()) return out;
  size_t start = 0;
  for (;;) {
    size_t comma = text.find(',', start);
    if (comma == std::string::npos) {
      out.push_back(text.substr(start));
      return out;
    }
    out.push_back(text.substr(start, comma - start));
    start = comma + 1;
  }
}

void report(const json& j) { std::cout << j.dump(2) << "\n"; }

json machine_json(const fmachina::FMachine& m) {
  return json::parse(fmachina::serialize_machine(m));
}

MachineMorphism load_morphism(const std::string& path, const MachinePtr& src,
                              const MachinePtr& dst) {
  BaseMorphism map =
      fmachina::parse_morphism_map(read_file(path), src->carrier(), dst->carrier());
  return MachineMorphism(src, dst, std::move(map));
}

void emit_machine(const fmachina::FMachine& m, json& body, const std::string& out_path) {
  body["machine"] = machine_json(m);
  if (!out_path.empty()) write_file(out_path, fmachina::serialize_machine(m));
}

int run_equivalent(const MachinePtr& m1, const MachinePtr& m2, const std::string& states) {
  std::vector<std::string> pair = split_commas(states);
  if (pair.size() != 2)
    throw fmachina::ValidationError("equivalent: --states wants two comma-separated names");
  if (fmachina::equivalent(*m1, *m2, pair[0], pair[1])) {
    report({{"equivalent", true}});
    return 0;
  }
  const int lowest = m1->flavor() == Flavor::mealy ? 1 : 0;
  const int stable = m1->carrier().size() * m2->carrier().size();
  const std::string name = fmachina::pair_name(pair[0], pair[1]);
  for (int n = lowest; n <= stable; ++n) {
    if (!fmachina::level_pullback(*m1, *m2, n).contains(name)) {
      report({{"equivalent", false}, {"separating_depth", n}});
      return 1;
    }
  }
  throw fmachina::InternalError("equivalent: inequivalent states never separated");
}

int run_check_universal(const std::string& kind_name, const std::vector<std::string>& files,
                        int bound) {
  fmachina::UniversalKind kind = fmachina::universal_kind_from_name(kind_name);
  const size_t needed = kind == fmachina::UniversalKind::initial ? 1 : 2;
  if (kind != fmachina::UniversalKind::initial &&
      kind != fmachina::UniversalKind::product && kind != fmachina::UniversalKind::coproduct)
    throw fmachina::ValidationError(
        "check-universal: kind '" + kind_name +
        "' needs morphism data; supported here: product, coproduct, initial");
  if (files.size() < needed)
    throw fmachina::ValidationError("check-universal: " + kind_name + " wants at least " +
                                    std::to_string(needed) + " machine files");
  std::vector<MachinePtr> fixtures;
  for (const auto& path : files) fixtures.push_back(load(path));

  fmachina::UniversalData data = [&] {
    switch (kind) {
      case fmachina::UniversalKind::product: {
        fmachina::MachineProduct prod = machine_product(fixtures[0], fixtures[1]);
        return fmachina::UniversalData{prod.machine, {prod.p1, prod.p2}, {}};
      }
      case fmachina::UniversalKind::coproduct: {
        fmachina::MachineSum sum = machine_coproduct(fixtures[0], fixtures[1]);
        return fmachina::UniversalData{sum.machine, {sum.inl, sum.inr}, {}};
      }
      default: {
        MachinePtr zero = machine_initial(fixtures[0]->adjunction(), fixtures[0]->output(),
                                          fixtures[0]->flavor());
        return fmachina::UniversalData{zero, {}, {}};
      }
    }
  }();
  fmachina::ConeReport result = check_universal(kind, data, fixtures, bound);
  report({{"kind", result.kind},
          {"ok", result.ok},
          {"competitors", result.competitors},
          {"cones", result.cones},
          {"failures", result.failures}});
  return result.ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* env = std::getenv("FMACHINA_SIZE_GUARD")) {
    try {
      fmachina::size_guard().enumeration_bound = std::stoll(env);
    } catch (...) {
      report({{"error", "FMACHINA_SIZE_GUARD must be a number"}});
      return 2;
    }
  }

  CLI::App app{"Machines for an endofunctor with a chosen right adjoint"};
  app.require_subcommand(1);

  std::string file, file2, dst_file, mor1, mor2, out_path;
  std::string state, word, states, kind;
  std::vector<std::string> files;
  int depth = 0;
  int bound = 4;
  int code = 0;

  CLI::App* validate = app.add_subcommand("validate", "Parse and validate a machine document");
  validate->add_option("file", file)->required();
  validate->callback([&] {
    MachinePtr m = load(file);
    report({{"flavor", flavor_name(m->flavor())},
            {"states", m->carrier().size()},
            {"valid", true}});
  });

  CLI::App* run = app.add_subcommand("run", "Fold the transition map over a word");
  run->add_option("file", file)->required();
  run->add_option("--state", state)->required();
  run->add_option("--word", word);
  run->callback([&] {
    fmachina::RunResult r = run_word(*load(file), state, split_commas(word));
    report({{"final_state", r.final_state}, {"output", r.output}});
  });

  CLI::App* behavior = app.add_subcommand("behavior", "Mate table at one depth");
  behavior->add_option("file", file)->required();
  behavior->add_option("--depth", depth)->required();
  behavior->callback([&] {
    BaseMorphism mate = behavior_mate(*load(file), depth);
    report({{"depth", depth}, {"mates", mate.named_table()}});
  });

  CLI::App* minimize = app.add_subcommand("minimize", "Quotient by behavioral equivalence");
  minimize->add_option("file", file)->required();
  minimize->add_option("-o,--out", out_path);
  minimize->callback([&] {
    MachinePtr m = load(file);
    fmachina::Minimization result = fmachina::minimize(m);
    json body{{"classes", result.quotient.map().named_table()},
              {"states_before", m->carrier().size()},
              {"states_after", result.machine->carrier().size()}};
    emit_machine(*result.machine, body, out_path);
    report(body);
  });

  CLI::App* equivalent = app.add_subcommand("equivalent", "Compare two states by behavior");
  equivalent->add_option("file1", file)->required();
  equivalent->add_option("file2", file2)->required();
  equivalent->add_option("--states", states)->required();
  equivalent->callback([&] { code = run_equivalent(load(file), load(file2), states); });

  CLI::App* product = app.add_subcommand("product", "Product of two machines");
  product->add_option("file1", file)->required();
  product->add_option("file2", file2)->required();
  product->add_option("-o,--out", out_path);
  product->callback([&] {
    fmachina::MachineProduct prod = machine_product(load(file), load(file2));
    json body{{"p1", prod.p1.map().named_table()}, {"p2", prod.p2.map().named_table()}};
    emit_machine(*prod.machine, body, out_path);
    report(body);
  });

  CLI::App* coproduct = app.add_subcommand("coproduct", "Coproduct of two machines");
  coproduct->add_option("file1", file)->required();
  coproduct->add_option("file2", file2)->required();
  coproduct->add_option("-o,--out", out_path);
  coproduct->callback([&] {
    fmachina::MachineSum sum = machine_coproduct(load(file), load(file2));
    json body{{"inl", sum.inl.map().named_table()}, {"inr", sum.inr.map().named_table()}};
    emit_machine(*sum.machine, body, out_path);
    report(body);
  });

  CLI::App* equalizer = app.add_subcommand("equalizer", "Equalizer of two parallel morphisms");
  equalizer->add_option("file", file)->required();
  equalizer->add_option("mor1", mor1)->required();
  equalizer->add_option("mor2", mor2)->required();
  equalizer->add_option("--dst", dst_file, "Target machine; defaults to the source file");
  equalizer->add_option("-o,--out", out_path);
  equalizer->callback([&] {
    MachinePtr m = load(file);
    MachinePtr target = dst_file.empty() ? m : load(dst_file);
    fmachina::MachineEqualizer eq = machine_equalizer(load_morphism(mor1, m, target),
                                                      load_morphism(mor2, m, target));
    json body{{"include", eq.include.map().named_table()}};
    emit_machine(*eq.machine, body, out_path);
    report(body);
  });

  CLI::App* pullback = app.add_subcommand("pullback", "Pullback of two morphisms into --dst");
  pullback->add_option("file1", file)->required();
  pullback->add_option("file2", file2)->required();
  pullback->add_option("mor1", mor1)->required();
  pullback->add_option("mor2", mor2)->required();
  pullback->add_option("--dst", dst_file)->required();
  pullback->add_option("-o,--out", out_path);
  pullback->callback([&] {
    MachinePtr m1 = load(file);
    MachinePtr m2 = load(file2);
    MachinePtr target = load(dst_file);
    fmachina::MachinePullback pb = machine_pullback(load_morphism(mor1, m1, target),
                                                    load_morphism(mor2, m2, target));
    json body{{"p1", pb.p1.map().named_table()}, {"p2", pb.p2.map().named_table()}};
    emit_machine(*pb.machine, body, out_path);
    report(body);
  });

  CLI::App* check_morphism =
      app.add_subcommand("check-morphism", "Validate a state map as a machine morphism");
  check_morphism->add_option("file1", file)->required();
  check_morphism->add_option("file2", file2)->required();
  check_morphism->add_option("morfile", mor1)->required();
  check_morphism->callback([&] {
    MachinePtr m1 = load(file);
    MachinePtr m2 = load(file2);
    BaseMorphism map =
        fmachina::parse_morphism_map(read_file(mor1), m1->carrier(), m2->carrier());
    fmachina::MorphismReport r = validate_morphism(*m1, *m2, map);
    report({{"ok", r.ok},
            {"problems", r.problems},
            {"transition_failures", r.transition_failures},
            {"output_failures", r.output_failures}});
    code = r.ok ? 0 : 1;
  });

  CLI::App* check_universal = app.add_subcommand(
      "check-universal", "Count mediating morphisms over enumerated competitors");
  check_universal->add_option("kind", kind)->required();
  check_universal->add_option("files", files)->required();
  check_universal->add_option("--bound", bound);
  check_universal->callback([&] { code = run_check_universal(kind, files, bound); });

  CLI::App* decompose = app.add_subcommand("decompose", "Split into algebra and output leg");
  decompose->add_option("file", file)->required();
  decompose->callback([&] {
    MachinePtr m = load(file);
    fmachina::Decomposition parts = fmachina::decompose(*m);
    MachinePtr restored = recompose(parts.algebra, parts.leg);
    report({{"algebra", {{"structure", parts.algebra.structure().named_table()}}},
            {"leg", {{"map", parts.leg.map().named_table()}}},
            {"flavor", flavor_name(parts.leg.flavor())},
            {"restores", *restored == *m}});
    code = *restored == *m ? 0 : 1;
  });

  CLI::App* check_adjunction = app.add_subcommand(
      "check-adjunction", "Hom-set bijection between machine and slice morphisms");
  check_adjunction->add_option("file1", file)->required();
  check_adjunction->add_option("file2", file2)->required();
  check_adjunction->add_option("--bound", bound);
  check_adjunction->callback([&] {
    fmachina::HomsetReport r =
        homset_bijection_check(functor_B(load(file)), load(file2), bound);
    report({{"ok", r.ok},
            {"machine_side", r.machine_side.size()},
            {"slice_side", r.slice_side.size()},
            {"failures", r.failures}});
    code = r.ok ? 0 : 1;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const fmachina::SizeLimitError& e) {
    report({{"error", e.what()}});
    return 3;
  } catch (const fmachina::Error& e) {
    report({{"error", e.what()}});
    return 2;
  } catch (const std::exception& e) {
    report({{"error", e.what()}});
    return 2;
  }
  return code;
}
