#include "fomc/classifier.hpp"

#include "fomc/error.hpp"
#include "fomc/shop.hpp"

namespace fomc {

std::string Verdict::evidence_value(const std::string& key) const {
  for (const auto& [k, v] : evidence)
    if (k == key) return v;
  return {};
}

std::string class_name(ComplexityClass c) {
  switch (c) {
    case ComplexityClass::inL:
      return "L";
    case ComplexityClass::inP:
      return "P";
    case ComplexityClass::npComplete:
      return "NP-complete";
    case ComplexityClass::coNpComplete:
      return "coNP-complete";
    case ComplexityClass::pspaceComplete:
      return "Pspace-complete";
    case ComplexityClass::open:
      return "open";
  }
  return "";
}

std::string open_tag_name(OpenTag t) {
  switch (t) {
    case OpenTag::none:
      return "";
    case OpenTag::cspDichotomyConjecture:
      return "cspDichotomyConjecture";
    case OpenTag::qcspClassification:
      return "qcspClassification";
  }
  return "";
}

SchaeferProfile boolean_schaefer(const Structure& s) {
  if (s.size() != 2) throw Error("Schaefer classes are defined for Boolean structures");
  SchaeferProfile p;
  p.zero_valid = closed_under_operation(s, 1, {0, 0});
  p.one_valid = closed_under_operation(s, 1, {1, 1});
  p.horn = closed_under_operation(s, 2, {0, 0, 0, 1});
  p.dual_horn = closed_under_operation(s, 2, {0, 1, 1, 1});
  p.bijunctive = closed_under_operation(s, 3, {0, 0, 0, 1, 0, 1, 1, 1});
  p.affine = closed_under_operation(s, 3, {0, 1, 1, 0, 1, 0, 0, 1});
  return p;
}

Verdict classify_pos_eqfree(const Structure& s) {
  Verdict v;
  v.fragment = parse_fragment_key("pos-eqfree");
  v.evidence.emplace_back("rule", "A-shop/E-shop tetrachotomy");
  for (Element u = 0; u < s.size(); ++u) {
    for (Element x = 0; x < s.size(); ++x) {
      if (auto f = exists_shop(s, ShopProfile::singleton_ux(u, x))) {
        v.cls = ComplexityClass::inL;
        v.evidence.emplace_back("ux-shop", f->to_string());
        return v;
      }
    }
  }
  v.evidence.emplace_back("ux-shop", "none");
  std::optional<Shop> a, e;
  for (Element u = 0; u < s.size() && !a; ++u) a = exists_shop(s, ShopProfile::a_shop(u));
  for (Element x = 0; x < s.size() && !e; ++x) e = exists_shop(s, ShopProfile::e_shop(x));
  v.evidence.emplace_back("a-shop", a ? a->to_string() : "none");
  v.evidence.emplace_back("e-shop", e ? e->to_string() : "none");
  if (a && e) v.cls = ComplexityClass::inL;
  else if (a) v.cls = ComplexityClass::npComplete;
  else if (e) v.cls = ComplexityClass::coNpComplete;
  else v.cls = ComplexityClass::pspaceComplete;
  return v;
}

namespace {

ComplexityClass co_class(ComplexityClass c) {
  if (c == ComplexityClass::npComplete) return ComplexityClass::coNpComplete;
  if (c == ComplexityClass::coNpComplete) return ComplexityClass::npComplete;
  return c;
}

bool has_one_element_core(const Structure& s) {
  for (Element a = 0; a < s.size(); ++a) {
    bool ok = true;
    for (std::size_t i = 0; i < s.signature().size() && ok; ++i) {
      const Relation& r = s.relation(i);
      if (r.empty()) continue;
      Tuple t(r.arity(), a);
      ok = r.contains(t);
    }
    if (ok) return true;
  }
  return false;
}

bool all_relations_trivial(const Structure& s) {
  for (std::size_t i = 0; i < s.signature().size(); ++i) {
    const Relation& r = s.relation(i);
    if (!r.empty() && r.size() != r.cell_count()) return false;
  }
  return true;
}

std::string schaefer_summary(const SchaeferProfile& p) {
  std::string out;
  auto add = [&](bool b, const char* name) {
    if (!b) return;
    if (!out.empty()) out += ",";
    out += name;
  };
  add(p.zero_valid, "0-valid");
  add(p.one_valid, "1-valid");
  add(p.horn, "Horn");
  add(p.dual_horn, "dual-Horn");
  add(p.bijunctive, "bijunctive");
  add(p.affine, "affine");
  return out.empty() ? "none" : out;
}

Verdict make(const FragmentKey& k, ComplexityClass c, const std::string& rule) {
  Verdict v;
  v.fragment = k;
  v.cls = c;
  v.evidence.emplace_back("rule", rule);
  return v;
}

Verdict classify_primal(const Structure& s, const FragmentKey& k) {
  const int n = s.size();
  const bool has_eqs = k.eq || k.neq;
  if (k.neg) {
    if (!(k.exists && k.forall && k.conj && k.disj))
      throw Error("fragment " + k.to_string() + " is outside the classified table");
    if (has_eqs)
      return make(k, n == 1 ? ComplexityClass::inL : ComplexityClass::pspaceComplete,
                  "full first-order logic: L on one element, otherwise Pspace-complete");
    Verdict v = make(k, all_relations_trivial(s) ? ComplexityClass::inL : ComplexityClass::pspaceComplete,
                     "with negation: L when every relation is empty or full, otherwise Pspace-complete");
    return v;
  }
  if (!k.forall) {
    // Existential fragments.
    if (!k.conj)
      return make(k, ComplexityClass::inL, "existential-disjunctive sentences are trivial");
    if (k.disj) {
      if (k.neq)
        return make(k, n == 1 ? ComplexityClass::inL : ComplexityClass::npComplete,
                    "existential positive with disequality: L on one element, otherwise NP-complete");
      Verdict v = make(k, has_one_element_core(s) ? ComplexityClass::inL : ComplexityClass::npComplete,
                       "existential positive: L when the core has one element, otherwise NP-complete");
      return v;
    }
    if (k.neq) {
      if (n == 1) return make(k, ComplexityClass::inL, "one-element domain");
      if (n == 2) {
        auto p = boolean_schaefer(s);
        Verdict v = make(k, (p.bijunctive || p.affine) ? ComplexityClass::inP : ComplexityClass::npComplete,
                         "Boolean with disequality: P when bijunctive or affine, otherwise NP-complete");
        v.evidence.emplace_back("schaefer", schaefer_summary(p));
        return v;
      }
      return make(k, ComplexityClass::npComplete, "disequality on three or more elements");
    }
    if (n == 1) return make(k, ComplexityClass::inL, "one-element domain");
    if (n == 2) {
      auto p = boolean_schaefer(s);
      bool tractable = p.zero_valid || p.one_valid || p.horn || p.dual_horn || p.bijunctive || p.affine;
      Verdict v = make(k, tractable ? ComplexityClass::inP : ComplexityClass::npComplete,
                       "Boolean constraint satisfaction: Schaefer classes");
      v.evidence.emplace_back("schaefer", schaefer_summary(p));
      return v;
    }
    Verdict v = make(k, ComplexityClass::open, "constraint satisfaction on three or more elements");
    v.open = OpenTag::cspDichotomyConjecture;
    return v;
  }
  // Both quantifiers; a purely disjunctive fragment was dualised away.
  if (k.disj) {
    if (has_eqs)
      return make(k, n == 1 ? ComplexityClass::inL : ComplexityClass::pspaceComplete,
                  "positive with equality or disequality: L on one element, otherwise Pspace-complete");
    Verdict v = classify_pos_eqfree(s);
    v.fragment = k;
    return v;
  }
  if (k.neq) {
    if (n == 1) return make(k, ComplexityClass::inL, "one-element domain");
    if (n == 2) {
      auto p = boolean_schaefer(s);
      Verdict v = make(k, (p.bijunctive || p.affine) ? ComplexityClass::inP : ComplexityClass::pspaceComplete,
                       "Boolean quantified with disequality: P when bijunctive or affine, otherwise Pspace-complete");
      v.evidence.emplace_back("schaefer", schaefer_summary(p));
      return v;
    }
    return make(k, ComplexityClass::pspaceComplete, "quantified disequality on three or more elements");
  }
  if (n == 1) return make(k, ComplexityClass::inL, "one-element domain");
  if (n == 2) {
    auto p = boolean_schaefer(s);
    bool tractable = p.horn || p.dual_horn || p.bijunctive || p.affine;
    Verdict v = make(k, tractable ? ComplexityClass::inP : ComplexityClass::pspaceComplete,
                     "Boolean quantified constraint satisfaction: Schaefer classes");
    v.evidence.emplace_back("schaefer", schaefer_summary(p));
    return v;
  }
  Verdict v = make(k, ComplexityClass::open, "quantified constraint satisfaction on three or more elements");
  v.open = OpenTag::qcspClassification;
  return v;
}

}  // namespace

Verdict classify_fragment(const Structure& s, const FragmentKey& k) {
  if (!(k.exists || k.forall) || !(k.conj || k.disj)) {
    if (k.neg) throw Error("fragment " + k.to_string() + " is outside the classified table");
    return make(k, ComplexityClass::inL, "no quantifier or no binary connective");
  }
  bool dualise = (k.forall && !k.exists) || (k.exists && k.forall && k.disj && !k.conj);
  if (!dualise) return classify_primal(s, k);
  Verdict inner = classify_primal(complement(s), dual_key(k));
  Verdict v = inner;
  v.fragment = k;
  v.cls = co_class(inner.cls);
  v.evidence.insert(v.evidence.begin(), {"dual", "complement under " + fragment_name(dual_key(k))});
  return v;
}

}  // namespace fomc
