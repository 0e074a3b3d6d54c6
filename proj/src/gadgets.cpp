#include "fomc/gadgets.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "fomc/error.hpp"

namespace fomc {

namespace {

void add_edge(Structure& s, const char* rel, Element a, Element b) {
  s.add(rel, {a, b});
  s.add(rel, {b, a});
}

Signature graph_signature() { return Signature{{"E", 2}}; }

void need(const GadgetSpec& spec, std::size_t count) {
  if (spec.params.size() != count)
    throw Error(gadget_name(spec.kind) + " takes " + std::to_string(count) + " parameters");
}

}  // namespace

GadgetKind parse_gadget_kind(const std::string& name) {
  for (GadgetKind k : {GadgetKind::Kn, GadgetKind::KnReflexive, GadgetKind::KompleteBipartite, GadgetKind::BNAE,
                       GadgetKind::OneElement, GadgetKind::G, GadgetKind::Dhat, GadgetKind::GV, GadgetKind::SG})
    if (gadget_name(k) == name) return k;
  throw Error("unknown gadget '" + name + "'");
}

std::string gadget_name(GadgetKind kind) {
  switch (kind) {
    case GadgetKind::Kn:
      return "Kn";
    case GadgetKind::KnReflexive:
      return "KnReflexive";
    case GadgetKind::KompleteBipartite:
      return "KompleteBipartite";
    case GadgetKind::BNAE:
      return "BNAE";
    case GadgetKind::OneElement:
      return "OneElement";
    case GadgetKind::G:
      return "G";
    case GadgetKind::Dhat:
      return "Dhat";
    case GadgetKind::GV:
      return "GV";
    case GadgetKind::SG:
      return "SG";
  }
  return "";
}

Structure make_gadget(const GadgetSpec& spec) {
  const auto& p = spec.params;
  switch (spec.kind) {
    case GadgetKind::Kn:
      need(spec, 1);
      return make_clique(p[0], false);
    case GadgetKind::KnReflexive:
      need(spec, 1);
      return make_clique(p[0], true);
    case GadgetKind::KompleteBipartite:
      need(spec, 2);
      return make_complete_bipartite(p[0], p[1]);
    case GadgetKind::BNAE:
      need(spec, 0);
      return make_bnae();
    case GadgetKind::OneElement:
      need(spec, 0);
      return make_one_element();
    case GadgetKind::G:
      need(spec, 4);
      return make_g(p[0], p[1], p[2], p[3]);
    case GadgetKind::Dhat:
      need(spec, 2);
      return make_dhat(p[0], p[1]);
    case GadgetKind::GV:
      need(spec, 1);
      return make_gv(p[0]);
    case GadgetKind::SG:
      if (!spec.graph) throw Error("SG needs a graph");
      return make_sg(*spec.graph);
  }
  throw Error("unknown gadget");
}

Structure make_clique(int n, bool loops) {
  Structure s(n, graph_signature());
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b)
      if (loops || a != b) s.add("E", {a, b});
  return s;
}

Structure make_complete_bipartite(int a, int b) {
  if (a < 1 || b < 1) throw Error("both parts must be nonempty");
  Structure s(a + b, graph_signature());
  for (Element x = 0; x < a; ++x)
    for (Element y = a; y < a + b; ++y) add_edge(s, "E", x, y);
  return s;
}

Structure make_bnae() {
  Structure s(2, Signature{{"NAE", 3}});
  for_each_tuple(2, 3, [&](const Tuple& t) {
    if (!(t[0] == t[1] && t[1] == t[2])) s.add("NAE", t);
  });
  return s;
}

Structure make_one_element() {
  Structure s(1, graph_signature());
  s.add("E", {0, 0});
  return s;
}

Structure make_g(int j, int k, Element u, Element x) {
  if (j < 1 || k < 1) throw Error("G needs nonempty U and X");
  if (u < 0 || u >= j) throw Error("u must lie in U = {0..j-1}");
  if (x < j || x >= j + k) throw Error("x must lie in X = {j..j+k-1}");
  Structure s(j + k, graph_signature());
  add_edge(s, "E", u, x);
  for (Element a = j; a < j + k; ++a)
    for (Element b = j; b < j + k; ++b) s.add("E", {a, b});
  for (Element a = 0; a < j; ++a)
    for (Element b = j; b < j + k; ++b)
      if (a != u && b != x) add_edge(s, "E", a, b);
  return s;
}

Structure make_dhat(int j, int k) {
  if (j < 1 || k < 1) throw Error("Dhat needs nonempty U and X");
  Structure s(j + k, Signature{{"R", 4}});
  for (Element u = 0; u < j; ++u) {
    for (Element x = j; x < j + k; ++x) {
      Structure g = make_g(j, k, u, x);
      for (const Tuple& e : g.relation(0).tuples()) s.add("R", {u, x, e[0], e[1]});
    }
    for (Element x1 = j; x1 < j + k; ++x1)
      for (Element x2 = j; x2 < j + k; ++x2)
        for (Element x3 = j; x3 < j + k; ++x3) {
          Structure g = make_g(j, k, u, x3);
          for (const Tuple& e : g.relation(0).tuples()) s.add("R", {x1, x2, e[0], e[1]});
        }
  }
  return s;
}

namespace {

Signature gv_signature(bool with_graph) {
  std::vector<Symbol> syms{{"Ep", 2}, {"One", 1}, {"Two", 1}, {"Zero", 1}};
  if (with_graph) syms.push_back({"E", 2});
  return Signature(syms);
}

constexpr Element kU = 3;

void fill_gv(Structure& s, int count) {
  s.add("Zero", {0});
  s.add("One", {1});
  s.add("Two", {2});
  const int n = 4 + count;
  // Every element points at every colour.
  for (Element a = 0; a < n; ++a)
    for (Element c = 0; c < 3; ++c) s.add("Ep", {a, c});
  // u points at each vertex element; vertex elements are ordered v_i -> v_j for i <= j.
  for (Element v = 4; v < n; ++v) {
    s.add("Ep", {kU, v});
    for (Element w = v; w < n; ++w) s.add("Ep", {v, w});
  }
}

}  // namespace

Structure make_gv(int count) {
  if (count < 1 || count > kMaxDomain - 4) throw Error("GV needs 1 <= s <= 28");
  Structure s(4 + count, gv_signature(false));
  fill_gv(s, count);
  return s;
}

Shop gv_spray(int count) {
  const int n = 4 + count;
  std::vector<ElementSet> images(n, ElementSet::full(3));
  for (Element c = 0; c < 3; ++c) images[c] = ElementSet::singleton(c);
  images[kU] = ElementSet::full(n);
  return Shop(std::move(images));
}

Structure make_sg(const Structure& graph) {
  if (graph.signature() != graph_signature()) throw SignatureMismatch("SG needs a graph over one binary symbol E");
  const int count = graph.size();
  if (count < 1 || count > kMaxDomain - 4) throw Error("graph too large");
  Structure s(4 + count, gv_signature(true));
  fill_gv(s, count);
  for (const Tuple& e : graph.relation(0).tuples()) s.add("E", {4 + e[0], 4 + e[1]});
  for (Element a = 0; a < 3; ++a)
    for (Element b = 0; b < 3; ++b)
      if (a != b) s.add("E", {a, b});
  return s;
}

Structure meta_reduction(const Structure& graph) {
  const Relation& e = graph.relation("E");
  for (const Tuple& t : e.tuples()) {
    if (t[0] == t[1]) throw Error("meta reduction needs a loopless graph");
    if (!e.contains(Tuple{t[1], t[0]})) throw Error("meta reduction needs a symmetric graph");
  }
  return make_sg(graph);
}

// ---- sentence reductions ----

namespace {

Formula replace_nae(const Formula& f) {
  if (f.kind == NodeKind::atom) {
    if (f.symbol != "NAE" || f.vars.size() != 3) throw SignatureMismatch("expected NAE atoms only");
    const auto& v = f.vars;
    return make_or({make_atom("E", {v[0], v[1]}), make_atom("E", {v[1], v[2]}), make_atom("E", {v[0], v[2]})});
  }
  Formula out = f;
  for (Formula& c : out.children) c = replace_nae(c);
  return out;
}

void collect_names(const Formula& f, std::set<std::string>& names) {
  for (const auto& v : f.vars) names.insert(v);
  for (const Formula& c : f.children) collect_names(c, names);
}

class Fresh {
 public:
  explicit Fresh(const Formula& f) { collect_names(f, used_); }
  std::string operator()(const std::string& base) {
    std::string name = base;
    while (used_.count(name)) name += "_";
    used_.insert(name);
    return name;
  }

 private:
  std::set<std::string> used_;
};

}  // namespace

Formula reduce_nae_to_k2(const Formula& f) { return replace_nae(f); }

Structure reduction_structure(const ReductionTarget& t) {
  return t.kind == ReductionKind::g ? make_g(t.j, t.k, t.u, t.x) : make_dhat(t.j, t.k);
}

Formula reduce_qcsp_nae_to_gadget(const Formula& f, const ReductionTarget& t) {
  reduction_structure(t);  // validates parameters
  std::vector<const Formula*> prefix;
  const Formula* m = &f;
  while (m->is_quantifier()) {
    if (m->restriction) throw Error("the input sentence must not restrict quantifiers");
    prefix.push_back(m);
    m = &m->body();
  }
  std::vector<const Formula*> clauses;
  if (m->kind == NodeKind::conjunction) {
    for (const Formula& c : m->children) clauses.push_back(&c);
  } else {
    clauses.push_back(m);
  }
  for (const Formula* c : clauses)
    if (c->kind != NodeKind::atom || c->symbol != "NAE" || c->vars.size() != 3)
      throw Error("the matrix must be a conjunction of NAE atoms");

  const ElementSet us = ElementSet::full(t.j);
  const ElementSet xs = ElementSet::full(t.j + t.k) - us;
  Fresh fresh(f);
  std::string u0, x0;
  if (t.kind == ReductionKind::dhat) {
    u0 = fresh("u0");
    x0 = fresh("x0");
  }
  auto edge = [&](const std::string& a, const std::string& b) {
    if (t.kind == ReductionKind::g) return make_atom("E", {a, b});
    return make_atom("R", {u0, x0, a, b});
  };
  std::map<std::string, std::string> copy;
  for (const Formula* q : prefix) copy[q->vars[0]] = fresh("v_" + q->vars[0]);

  std::vector<Formula> parts;
  for (std::size_t i = 0; i < clauses.size(); ++i) {
    std::string c = fresh("c" + std::to_string(i + 1));
    std::vector<Formula> opts;
    for (const auto& v : clauses[i]->vars) opts.push_back(edge(c, copy.at(v)));
    parts.push_back(make_forall(c, make_or(std::move(opts)), us));
  }
  Formula body = make_and(std::move(parts));
  for (auto it = prefix.rbegin(); it != prefix.rend(); ++it) {
    const std::string& v = (*it)->vars[0];
    if ((*it)->kind == NodeKind::exists) {
      body = make_exists(copy[v], std::move(body), xs);
    } else {
      body = make_forall(v, make_exists(copy[v], make_and({edge(v, copy[v]), std::move(body)}), xs), us);
    }
  }
  if (t.kind == ReductionKind::dhat) body = make_forall(u0, make_exists(x0, std::move(body), xs), us);
  return body;
}

}  // namespace fomc
