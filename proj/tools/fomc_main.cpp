// fomc: model checking and complexity classification for fixed finite structures.
//
// Exit codes: 0 success or true, 1 false, 2 usage or input error, 3 budget or size limit.

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fomc/classifier.hpp"
#include "fomc/cores.hpp"
#include "fomc/error.hpp"
#include "fomc/evaluator.hpp"
#include "fomc/gadgets.hpp"
#include "fomc/lattice.hpp"

using json = nlohmann::ordered_json;
using namespace fomc;

namespace {

constexpr int kFalse = 1;
constexpr int kUsage = 2;
constexpr int kBudget = 3;

struct Options {
  std::string structure;
  std::string sentence;
  std::string fragment;
  std::vector<std::string> relativize;
  std::vector<std::string> check_relativisation;
  std::optional<std::uint64_t> seed;
  std::size_t budget = 1'000'000;
  int samples = 500;
  int n = 2;
  int m = -1;
  std::string name;
  std::string params;
  std::string kind = "ux";
  bool json = false;
  bool force = false;
  bool trace = false;
  bool export_lattice = false;
};

json structure_json(const std::string& name, const Structure& s) {
  json rels = json::array();
  for (std::size_t i = 0; i < s.signature().size(); ++i) {
    json tuples = json::array();
    for (const Tuple& t : s.relation(i).tuples()) tuples.push_back(t);
    rels.push_back({{"name", s.signature()[i].name}, {"arity", s.signature()[i].arity}, {"tuples", tuples}});
  }
  return {{"name", name}, {"domain", s.size()}, {"relations", rels}};
}

json set_json(ElementSet s) { return s.elements(); }

json trace_json(const TraceNode& t) {
  json out = json::object();
  if (t.choice >= 0) out["choice"] = t.choice;
  if (!t.children.empty()) {
    json kids = json::array();
    for (const TraceNode& c : t.children) kids.push_back(trace_json(c));
    out["children"] = kids;
  }
  return out;
}

// "U={0,1}" -> {0,1}
ElementSet parse_named_set(const std::string& text, char name) {
  if (text.size() < 2 || text[0] != name || text[1] != '=')
    throw Error(std::string("expected ") + name + "=<set>, got '" + text + "'");
  return parse_element_set(text.substr(2));
}

std::vector<int> parse_params(const std::string& text) {
  std::vector<int> out;
  if (text.empty()) return out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    int v = std::stoi(item, &used);
    if (used != item.size()) throw Error("bad parameter '" + item + "'");
    out.push_back(v);
  }
  return out;
}

void check_range(const Structure& s, ElementSet set, const char* what) {
  if (set.empty() || !set.subset_of(s.domain())) throw Error(std::string(what) + " must be a nonempty subset of the domain");
}

int run_eval(const Options& o) {
  NamedStructure ns = read_structure_file(o.structure);
  const Structure& s = ns.structure;
  if (!o.check_relativisation.empty()) {
    if (!o.seed) throw CLI::ValidationError("--check-relativisation needs an explicit --seed");
    ElementSet u = parse_element_set(o.check_relativisation[0]);
    ElementSet x = parse_element_set(o.check_relativisation[1]);
    check_range(s, u, "U");
    check_range(s, x, "X");
    auto report = check_relativisation(s, u, x, o.samples, *o.seed);
    if (o.json) {
      json fails = json::array();
      for (const auto& f : report.failures)
        fails.push_back({{"sentence", f.sentence}, {"mode", mode_name(f.mode)}, {"plain", f.plain},
                         {"relativised", f.relativised}});
      std::cout << json{{"samples", report.samples}, {"failures", fails}}.dump(2) << "\n";
    } else {
      std::cout << report.samples << " samples, " << report.failures.size() << " disagreements\n";
      for (const auto& f : report.failures)
        std::cout << mode_name(f.mode) << ": " << f.sentence << " (plain " << (f.plain ? "true" : "false")
                  << ", relativised " << (f.relativised ? "true" : "false") << ")\n";
    }
    return report.failures.empty() ? 0 : kFalse;
  }
  if (o.sentence.empty()) throw CLI::ValidationError("eval needs --sentence");
  Formula f = read_formula_file(o.sentence);
  check_signature(f, s.signature());
  if (!o.relativize.empty()) {
    ElementSet u = parse_named_set(o.relativize[0], 'U');
    ElementSet x = parse_named_set(o.relativize[1], 'X');
    check_range(s, u, "U");
    check_range(s, x, "X");
    f = relativise(to_nnf(f), u, x, RelativiseMode::both);
  }
  Trace t;
  if (o.trace) t = evaluate_with_trace(s, f);
  else t.value = evaluate(s, f);
  if (o.json) {
    json out{{"value", t.value}, {"sentence", render(f)}, {"fragment", fragment_name(fragment_of(f))}};
    if (o.trace) out["trace"] = trace_json(t.root);
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << (t.value ? "true" : "false") << "\n";
    if (o.trace) std::cout << trace_json(t.root).dump() << "\n";
  }
  return t.value ? 0 : kFalse;
}

int run_classify(const Options& o) {
  NamedStructure ns = read_structure_file(o.structure);
  FragmentKey key = parse_fragment_key(o.fragment.empty() ? "pos-eqfree" : o.fragment);
  Verdict v = classify_fragment(ns.structure, key);
  if (o.json) {
    json ev = json::object();
    for (const auto& [k, val] : v.evidence) ev[k] = val;
    json out{{"fragment", fragment_name(v.fragment)}, {"class", class_name(v.cls)}, {"evidence", ev}};
    if (v.open != OpenTag::none) out["open"] = open_tag_name(v.open);
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << class_name(v.cls) << "\n";
    if (v.open != OpenTag::none) std::cout << "open: " << open_tag_name(v.open) << "\n";
    for (const auto& [k, val] : v.evidence) std::cout << k << ": " << val << "\n";
  }
  return 0;
}

int run_core(const Options& o) {
  NamedStructure ns = read_structure_file(o.structure);
  const std::string core_name = ns.name + "_core";
  if (o.kind == "classical") {
    ClassicalCore c = classical_core(ns.structure);
    if (o.json) {
      std::cout << json{{"kind", "classical"}, {"image", set_json(c.image)},
                        {"retraction", c.retraction.to_string()}, {"core", structure_json(core_name, c.core)}}
                       .dump(2)
                << "\n";
    } else {
      std::cout << "image " << c.image.to_string() << "\nretraction " << c.retraction.to_string() << "\n";
      write_structure(std::cout, core_name, c.core);
    }
    return 0;
  }
  if (o.kind == "eqfree") {
    EqfreeCore c = eqfree_core(ns.structure);
    if (o.json) {
      std::cout << json{{"kind", "eqfree"}, {"classes", c.classes}, {"core", structure_json(core_name, c.core)}}
                       .dump(2)
                << "\n";
    } else {
      std::cout << "classes";
      for (int k : c.classes) std::cout << " " << k;
      std::cout << "\n";
      write_structure(std::cout, core_name, c.core);
    }
    return 0;
  }
  if (o.kind != "ux") throw CLI::ValidationError("--kind must be ux, classical or eqfree");
  UXCore c = ux_core(ns.structure);
  if (o.json) {
    std::cout << json{{"kind", "ux"},
                      {"u", set_json(c.u)},
                      {"x", set_json(c.x)},
                      {"core_u", set_json(c.core_u)},
                      {"core_x", set_json(c.core_x)},
                      {"canonical", c.canonical.to_string()},
                      {"core", structure_json(core_name, c.core)}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << "U " << c.u.to_string() << "\nX " << c.x.to_string() << "\ncanonical " << c.canonical.to_string()
              << "\n";
    write_structure(std::cout, core_name, c.core);
  }
  return 0;
}

int run_shops(const Options& o) {
  NamedStructure ns = read_structure_file(o.structure);
  SheOptions opts;
  opts.force = o.force;
  auto she = enumerate_she(ns.structure, opts);
  if (o.json) {
    json list = json::array();
    for (const Shop& f : she) list.push_back(f.to_string());
    std::cout << json{{"count", she.size()}, {"tag", class_name(dsm_complexity_tag(she))}, {"shops", list}}.dump(2)
              << "\n";
  } else {
    for (const Shop& f : she) std::cout << f.to_string() << "\n";
  }
  return 0;
}

int run_census(const Options& o) {
  CensusOptions opts;
  opts.force = o.force;
  DsmLattice l = enumerate_dsms(o.n, opts);
  if (o.json) {
    json nodes = json::array();
    for (const DsmNode& node : l.nodes) {
      json gens = json::array();
      for (const Shop& g : node.generators) gens.push_back(g.to_string());
      nodes.push_back({{"id", node.id}, {"tag", class_name(node.tag)}, {"size", node.members.size()},
                       {"generators", gens}});
    }
    json covers = json::array();
    for (auto [hi, lo] : l.covers) covers.push_back({hi, lo});
    std::cout << json{{"n", l.n}, {"count", l.nodes.size()}, {"nodes", nodes}, {"covers", covers}}.dump(2) << "\n";
  } else if (o.export_lattice) {
    std::cout << export_lattice(l);
  } else {
    std::cout << l.nodes.size() << "\n";
  }
  return 0;
}

int run_gadget(const Options& o) {
  if (o.name.empty()) throw CLI::ValidationError("gadget needs --name");
  GadgetSpec spec{parse_gadget_kind(o.name), parse_params(o.params), {}};
  if (spec.kind == GadgetKind::SG) {
    if (o.structure.empty()) throw CLI::ValidationError("SG needs the input graph as --structure");
    spec.graph = read_structure_file(o.structure).structure;
  }
  Structure s = make_gadget(spec);
  if (o.json) std::cout << structure_json(o.name, s).dump(2) << "\n";
  else write_structure(std::cout, o.name, s);
  return 0;
}

int run_reduce(const Options& o) {
  if (o.sentence.empty()) throw CLI::ValidationError("reduce needs --sentence");
  Formula f = read_formula_file(o.sentence);
  const std::string target = o.name.empty() ? "K2" : o.name;
  Formula out;
  std::string structure_name = target;
  Structure s = make_clique(2, false);
  if (target == "K2") {
    out = reduce_nae_to_k2(f);
  } else {
    ReductionTarget t;
    auto p = parse_params(o.params);
    if (target == "G") {
      t.kind = ReductionKind::g;
      if (!p.empty()) {
        if (p.size() != 4) throw CLI::ValidationError("G takes --params j,k,u,x");
        t = {ReductionKind::g, p[0], p[1], p[2], p[3]};
      }
    } else if (target == "Dhat") {
      t.kind = ReductionKind::dhat;
      if (!p.empty()) {
        if (p.size() != 2) throw CLI::ValidationError("Dhat takes --params j,k");
        t.j = p[0];
        t.k = p[1];
      }
    } else {
      throw CLI::ValidationError("reduce targets are K2, G and Dhat");
    }
    out = reduce_qcsp_nae_to_gadget(f, t);
    s = reduction_structure(t);
  }
  if (o.json) {
    std::cout << json{{"target", target}, {"sentence", render(out)}, {"structure", structure_json(structure_name, s)}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << render(out) << "\n";
  }
  return 0;
}

int run_canonical(const Options& o) {
  NamedStructure ns = read_structure_file(o.structure);
  const std::string key = o.fragment.empty() ? "pp" : o.fragment;
  CanonicalKind kind;
  if (key == "pp") kind = CanonicalKind::pp;
  else if (key == "pp-neq") kind = CanonicalKind::ppNeq;
  else if (key == "eqfree-neg") kind = CanonicalKind::eqfreeNeg;
  else if (key == "pos-eqfree") kind = CanonicalKind::posEqfree;
  else throw CLI::ValidationError("canonical sentences exist for pp, pp-neq, eqfree-neg and pos-eqfree");
  CanonicalOptions opts;
  opts.m = o.m;
  opts.budget = o.budget;
  Formula f = canonical_sentence(ns.structure, kind, opts);
  if (o.json) {
    std::cout << json{{"fragment", key}, {"nodes", node_count(f)}, {"sentence", render(f)}}.dump(2) << "\n";
  } else {
    std::cout << render(f) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Model checking and complexity classification over fixed finite structures"};
  app.require_subcommand(1, 1);
  Options o;

  auto add_json = [&](CLI::App* c) { c->add_flag("--json", o.json, "Emit JSON"); };

  auto* eval = app.add_subcommand("eval", "Evaluate a sentence on a structure");
  eval->add_option("--structure", o.structure, "Structure file, - for stdin")->required();
  eval->add_option("--sentence", o.sentence, "Sentence file, - for stdin");
  eval->add_option("--relativize", o.relativize, "Restrict quantifiers: U=<set> X=<set>")->expected(2);
  eval->add_option("--check-relativisation", o.check_relativisation, "Compare relativisation modes on random sentences: U X")
      ->expected(2);
  eval->add_option("--seed", o.seed, "Sampler seed");
  eval->add_option("--samples", o.samples, "Sample count")->check(CLI::PositiveNumber);
  eval->add_flag("--trace", o.trace, "Print the game certificate");
  add_json(eval);

  auto* classify = app.add_subcommand("classify", "Complexity of model checking for a fragment");
  classify->add_option("--structure", o.structure, "Structure file")->required();
  classify->add_option("--fragment", o.fragment, "Fragment key (default pos-eqfree)");
  add_json(classify);

  auto* core = app.add_subcommand("core", "Compute a core");
  core->add_option("--structure", o.structure, "Structure file")->required();
  core->add_option("--kind", o.kind, "ux, classical or eqfree");
  add_json(core);

  auto* shops = app.add_subcommand("shops", "List surjective hyper-endomorphisms");
  shops->add_option("--structure", o.structure, "Structure file")->required();
  shops->add_flag("--force", o.force, "Allow domains above the default bound");
  add_json(shops);

  auto* census = app.add_subcommand("dsm-census", "Enumerate down-closed shop monoids");
  census->add_option("--n", o.n, "Domain size")->required();
  census->add_flag("--force", o.force, "Allow n = 4");
  census->add_flag("--export", o.export_lattice, "Print the node table and cover relation");
  add_json(census);

  auto* gadget = app.add_subcommand("gadget", "Emit a gadget structure");
  gadget->add_option("--name", o.name, "Kn, KnReflexive, KompleteBipartite, BNAE, OneElement, G, Dhat, GV or SG")
      ->required();
  gadget->add_option("--params", o.params, "Comma-separated integers");
  gadget->add_option("--structure", o.structure, "Input graph for SG");
  add_json(gadget);

  auto* reduce = app.add_subcommand("reduce", "Translate an NAE sentence");
  reduce->add_option("--sentence", o.sentence, "Sentence file")->required();
  reduce->add_option("--name", o.name, "K2 (default), G or Dhat");
  reduce->add_option("--params", o.params, "G: j,k,u,x; Dhat: j,k");
  add_json(reduce);

  auto* canonical = app.add_subcommand("canonical", "Print a canonical sentence");
  canonical->add_option("--structure", o.structure, "Structure file")->required();
  canonical->add_option("--fragment", o.fragment, "pp, pp-neq, eqfree-neg or pos-eqfree");
  canonical->add_option("--m", o.m, "Universal block size for pos-eqfree");
  canonical->add_option("--budget", o.budget, "Node budget");
  add_json(canonical);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*eval) return run_eval(o);
    if (*classify) return run_classify(o);
    if (*core) return run_core(o);
    if (*shops) return run_shops(o);
    if (*census) return run_census(o);
    if (*gadget) return run_gadget(o);
    if (*reduce) return run_reduce(o);
    if (*canonical) return run_canonical(o);
  } catch (const BudgetExceeded& e) {
    std::cerr << "fomc: " << e.what() << "\n";
    return kBudget;
  } catch (const SizeLimitExceeded& e) {
    std::cerr << "fomc: " << e.what() << "\n";
    return kBudget;
  } catch (const std::exception& e) {
    std::cerr << "fomc: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
