// Copyright 2026 The cmlkg Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "cmlkg/bisim/bisim.hpp"
#include "cmlkg/checker/model_check.hpp"
#include "cmlkg/cml/formula.hpp"
#include "cmlkg/compiler/compiled_net.hpp"
#include "cmlkg/error.hpp"
#include "cmlkg/evalrank/evalrank.hpp"
#include "cmlkg/kg/triple_store.hpp"
#include "cmlkg/labeling/labeling.hpp"
#include "cmlkg/synthgen/synthgen.hpp"

namespace fs = std::filesystem;
using namespace cmlkg;

namespace {

struct Flags {
  std::string kg;
  std::vector<std::string> kgs;
  std::string preds;
  std::string formula;
  std::string bind;
  std::string labeling = "none";
  std::string run_labeling = "query";
  std::string head;
  std::uint32_t degree = 1;
  std::uint32_t rounds = 3;
  std::uint64_t seed = 0;
  std::string relation;
  std::uint32_t instances = 100;
  std::optional<std::uint64_t> noise;
  bool decoys = false;
  std::string out;
  std::string g1 = "top";
  std::string g2 = "top";
  std::string combinator = "and";
};

void require_exists(const fs::path& p) {
  if (!fs::exists(p))
    throw Error("cannot open '" + p.string() + "': file not found");
}

void write_out(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << text;
}

std::string read_formula(const std::string& path) {
  require_exists(path);
  std::string text = read_text_file(path);
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r'))
    text.pop_back();
  return text;
}

TripleStore load_kg(const Flags& f) {
  require_exists(f.kg);
  if (!f.preds.empty()) require_exists(f.preds);
  return load_store_files(f.kg, f.preds.empty() ? std::nullopt
                                                 : std::optional<std::string>(f.preds));
}

fs::path dataset_dir(const std::string& kg) {
  const fs::path p(kg);
  require_exists(p);
  return fs::is_directory(p) ? p : p.parent_path();
}

Labeling build_labeling(const TripleStore& store, const Flags& f) {
  Labeling manual = parse_bindings(store, f.bind);
  const auto mode = evalrank::parse_mode(f.labeling);
  if (mode == evalrank::LabelingMode::kNone) return manual;
  std::optional<EntityId> h;
  if (!f.head.empty()) h = store.entity_id(f.head);
  else if (manual.bound(kQueryConstant)) h = manual.resolve(kQueryConstant);
  if (!h) throw Error("labeling " + f.labeling + " needs a query head (--head or --bind h=...)");
  Labeling auto_lab = mode == evalrank::LabelingMode::kQuery
                          ? query_label(*h)
                          : el_label(store, f.degree, *h);
  Labeling out;
  for (const auto& [name, v] : auto_lab.bindings())
    if (!manual.bound(name)) out.bind(name, v, *auto_lab.origin(name));
  return out.merged(manual);
}

int cmd_gen(const Flags& f) {
  synthgen::SynthConfig cfg;
  cfg.kind = synthgen::parse_rule_kind(f.relation);
  cfg.instances = f.instances;
  cfg.noise = f.noise;
  cfg.seed = f.seed;
  cfg.decoys = f.decoys;
  const auto data = synthgen::gen_dataset(cfg);
  synthgen::write_dataset(data, f.out);
  std::cout << synthgen::format_config(data);
  return 0;
}

int cmd_compile(const Flags& f) {
  cml::FormulaArena arena;
  const auto root = cml::parse(arena, read_formula(f.formula));
  const auto net = compiler::compile(arena, root);
  if (!f.out.empty()) write_out(f.out, compiler::serialize(net));
  std::cout << "formula " << net.formula << "\n"
            << "L " << net.dim << "  layers " << net.layers << "  output column "
            << net.out_index << "\n"
            << compiler::explain(net);
  return 0;
}

int cmd_check(const Flags& f) {
  const TripleStore store = load_kg(f);
  cml::FormulaArena arena;
  const auto root = cml::parse(arena, read_formula(f.formula));
  const Labeling lab = build_labeling(store, f);
  std::vector<std::uint8_t> bits(store.num_entities(), 0);
  for (const Labeling& g : ground_constants(cml::constants_of(arena, root), lab, store)) {
    const auto row = checker::model_check(store, arena, root, g).root_row();
    for (std::size_t v = 0; v < bits.size(); ++v) bits[v] |= row[v];
  }
  std::string text;
  for (EntityId v = 0; v < store.num_entities(); ++v)
    text += store.entity_name(v) + "\t" + (bits[v] ? "1" : "0") + "\n";
  if (!f.out.empty()) write_out(f.out, text);
  else std::cout << text;
  return 0;
}

evalrank::Table2Options table_options(const Flags& f) {
  evalrank::Table2Options opt;
  opt.degree = f.degree;
  opt.era.g1 = f.g1;
  opt.era.g2 = f.g2;
  opt.era.combinator = evalrank::parse_combinator(f.combinator);
  if (!f.formula.empty()) opt.formula = read_formula(f.formula);
  return opt;
}

int cmd_run(const Flags& f) {
  const auto dir = dataset_dir(f.kg);
  const auto report =
      evalrank::table2_run(dir, evalrank::parse_mode(f.run_labeling), table_options(f));
  const std::string text = evalrank::serialize(report);
  if (!f.out.empty()) write_out(fs::path(f.out) / "report.json", text);
  else std::cout << text;
  return 0;
}

int cmd_bisim(const Flags& f) {
  const TripleStore store = load_kg(f);
  const Labeling lab = build_labeling(store, f);
  const auto colors = bisim::color_refine(store, lab, f.rounds);
  const std::string text = bisim::format_colors(store, colors);
  if (!f.out.empty()) write_out(f.out, text);
  else std::cout << text;
  return 0;
}

int cmd_report(const Flags& f) {
  const std::vector<std::string>& dirs = f.kgs;
  const auto opt = table_options(f);
  std::vector<evalrank::RankReport> reports;
  for (auto mode : {evalrank::LabelingMode::kNone, evalrank::LabelingMode::kQuery,
                    evalrank::LabelingMode::kEntity}) {
    for (const auto& d : dirs) {
      reports.push_back(evalrank::table2_run(dataset_dir(d), mode, opt));
      if (!f.out.empty()) {
        const auto& r = reports.back();
        write_out(fs::path(f.out) / ("report_" + r.relation + "_" +
                                     std::string(evalrank::mode_name(mode)) + ".json"),
                  evalrank::serialize(r));
      }
    }
  }
  std::cout << evalrank::render_table2(reports);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cmlkg: counting modal logic on knowledge graphs"};
  app.require_subcommand(1);
  Flags f;

  auto* gen = app.add_subcommand("gen", "generate a synthetic dataset");
  gen->add_option("--relation", f.relation, "C, I or U")->required()
      ->check(CLI::IsMember({"C", "I", "U"}));
  gen->add_option("--instances", f.instances, "rule instances")->capture_default_str();
  gen->add_option("--noise", f.noise, "noise triples (default: twice the support triples)");
  gen->add_option("--seed", f.seed, "RNG seed")->capture_default_str();
  gen->add_flag("--decoys", f.decoys, "add a bisimilar decoy per U instance");
  gen->add_option("--out", f.out, "output directory")->required();

  auto* comp = app.add_subcommand("compile", "compile a formula into a network");
  comp->add_option("--formula", f.formula, "formula file")->required();
  comp->add_option("--out", f.out, "network output file");

  auto* check = app.add_subcommand("check", "model-check a formula on a graph");
  check->add_option("--kg", f.kg, "triples TSV")->required();
  check->add_option("--preds", f.preds, "predicates TSV");
  check->add_option("--formula", f.formula, "formula file")->required();
  check->add_option("--bind", f.bind, "constant bindings k=v,...");
  check->add_option("--labeling", f.labeling, "none, query or el")
      ->capture_default_str()->check(CLI::IsMember({"none", "query", "el"}));
  check->add_option("--head", f.head, "query head entity");
  check->add_option("--degree", f.degree, "EL out-degree threshold")->capture_default_str();
  check->add_option("--out", f.out, "output file");

  auto* run = app.add_subcommand("run", "rank the test split of a dataset");
  run->add_option("--kg", f.kg, "dataset directory")->required();
  run->add_option("--formula", f.formula, "formula file (default: canonical)");
  run->add_option("--labeling", f.run_labeling, "none, query or el")
      ->capture_default_str()->check(CLI::IsMember({"none", "query", "el"}));
  run->add_option("--degree", f.degree, "EL out-degree threshold")->capture_default_str();
  run->add_option("--g1", f.g1, "ERA head formula (labeling none)")->capture_default_str();
  run->add_option("--g2", f.g2, "ERA tail formula (labeling none)")->capture_default_str();
  run->add_option("--combinator", f.combinator, "and, not-left or or")
      ->capture_default_str()->check(CLI::IsMember({"and", "not-left", "or"}));
  run->add_option("--out", f.out, "output directory");

  auto* bis = app.add_subcommand("bisim", "color refinement");
  bis->add_option("--kg", f.kg, "triples TSV")->required();
  bis->add_option("--preds", f.preds, "predicates TSV");
  bis->add_option("--bind", f.bind, "constant bindings k=v,...");
  bis->add_option("--labeling", f.labeling, "none, query or el")
      ->capture_default_str()->check(CLI::IsMember({"none", "query", "el"}));
  bis->add_option("--head", f.head, "query head entity");
  bis->add_option("--degree", f.degree, "EL out-degree threshold")->capture_default_str();
  bis->add_option("--rounds", f.rounds, "refinement rounds")->capture_default_str();
  bis->add_option("--out", f.out, "output file");

  auto* rep = app.add_subcommand("report", "Hit@1 table across labeling modes");
  rep->add_option("--kg", f.kgs, "dataset directories")->required();
  rep->add_option("--degree", f.degree, "EL out-degree threshold")->capture_default_str();
  rep->add_option("--g1", f.g1, "ERA head formula")->capture_default_str();
  rep->add_option("--g2", f.g2, "ERA tail formula")->capture_default_str();
  rep->add_option("--combinator", f.combinator, "and, not-left or or")
      ->capture_default_str()->check(CLI::IsMember({"and", "not-left", "or"}));
  rep->add_option("--out", f.out, "directory for per-run reports");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*gen) return cmd_gen(f);
    if (*comp) return cmd_compile(f);
    if (*check) return cmd_check(f);
    if (*run) return cmd_run(f);
    if (*bis) return cmd_bisim(f);
    if (*rep) return cmd_report(f);
  } catch (const cmlkg::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
