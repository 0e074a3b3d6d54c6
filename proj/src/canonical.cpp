#include "fomc/error.hpp"
#include "fomc/formula.hpp"
#include "fomc/shop.hpp"

namespace fomc {

namespace {

class NodeBudget {
 public:
  explicit NodeBudget(std::size_t limit) : limit_(limit) {}
  void spend(std::size_t k) {
    used_ += k;
    if (used_ > limit_)
      throw BudgetExceeded("sentence would exceed " + std::to_string(limit_) + " nodes");
  }

 private:
  std::size_t limit_;
  std::size_t used_ = 0;
};

std::vector<std::string> numbered(const std::string& prefix, int count) {
  std::vector<std::string> out;
  for (int i = 1; i <= count; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

// Every atom over `names` whose matching element tuple holds in s.
std::vector<Formula> facts(const Structure& s, const std::vector<std::string>& names,
                           const std::vector<Element>& elems, bool holding, NodeBudget& budget) {
  std::vector<Formula> out;
  const int len = static_cast<int>(names.size());
  for (std::size_t i = 0; i < s.signature().size(); ++i) {
    const Relation& r = s.relation(i);
    Tuple t(r.arity());
    for_each_tuple(len, r.arity(), [&](const Tuple& idx) {
      for (int k = 0; k < r.arity(); ++k) t[k] = elems[idx[k]];
      if (r.contains(t) != holding) return;
      std::vector<std::string> args;
      for (Element j : idx) args.push_back(names[j]);
      budget.spend(holding ? 1 : 2);
      out.push_back(make_atom(s.signature()[i].name, std::move(args)));
      if (!holding) out.back() = make_not(std::move(out.back()));
    });
  }
  return out;
}

Formula exists_block(const std::vector<std::string>& vars, Formula body) {
  for (auto it = vars.rbegin(); it != vars.rend(); ++it) body = make_exists(*it, std::move(body));
  return body;
}

Formula forall_block(const std::vector<std::string>& vars, Formula body) {
  for (auto it = vars.rbegin(); it != vars.rend(); ++it) body = make_forall(*it, std::move(body));
  return body;
}

std::vector<std::string> concat(std::vector<std::string> a, const std::vector<std::string>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

std::vector<Element> concat(std::vector<Element> a, const std::vector<Element>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

// exists v. phi(prefix, v) & forall w. OR_t phi(prefix, v, w)
Formula theta(const Structure& s, const std::vector<std::string>& prefix_names,
              const std::vector<Element>& prefix_elems, int m, NodeBudget& budget) {
  const int n = s.size();
  auto vs = numbered("v", n);
  auto ws = numbered("w", m);
  std::vector<Element> enumeration;
  for (Element a = 0; a < n; ++a) enumeration.push_back(a);
  auto names_v = concat(prefix_names, vs);
  auto elems_v = concat(prefix_elems, enumeration);
  auto names_vw = concat(names_v, ws);
  Formula head = make_and(facts(s, names_v, elems_v, true, budget));
  std::vector<Formula> options;
  for_each_tuple(n, m, [&](const Tuple& t) {
    budget.spend(1);
    options.push_back(make_and(facts(s, names_vw, concat(elems_v, t), true, budget)));
  });
  budget.spend(2 + n + m);
  Formula tail = forall_block(ws, make_or(std::move(options)));
  return exists_block(vs, make_and({std::move(head), std::move(tail)}));
}

Formula iff(const Formula& p, const Formula& q) {
  return make_or({make_and({p, q}), make_and({make_not(p), make_not(q)})});
}

}  // namespace

Formula sim_formula(const Signature& sig, const std::string& x, const std::string& y) {
  std::vector<Formula> per_symbol;
  for (const Symbol& sym : sig.symbols()) {
    std::vector<std::string> zs;
    for (int k = 1; static_cast<int>(zs.size()) < sym.arity - 1; ++k) {
      std::string z = "z" + std::to_string(k);
      if (z != x && z != y) zs.push_back(z);
    }
    std::vector<Formula> swaps;
    for (int pos = 0; pos < sym.arity; ++pos) {
      std::vector<std::string> with_x(zs.begin(), zs.begin() + pos);
      with_x.push_back(x);
      with_x.insert(with_x.end(), zs.begin() + pos, zs.end());
      std::vector<std::string> with_y = with_x;
      with_y[pos] = y;
      swaps.push_back(iff(make_atom(sym.name, with_x), make_atom(sym.name, with_y)));
    }
    per_symbol.push_back(forall_block(zs, make_and(std::move(swaps))));
  }
  return make_and(std::move(per_symbol));
}

Formula canonical_sentence(const Structure& a, CanonicalKind kind, const CanonicalOptions& opts) {
  NodeBudget budget(opts.budget);
  const int n = a.size();
  auto vs = numbered("v", n);
  std::vector<Element> enumeration;
  for (Element e = 0; e < n; ++e) enumeration.push_back(e);
  switch (kind) {
    case CanonicalKind::pp:
      return exists_block(vs, make_and(facts(a, vs, enumeration, true, budget)));
    case CanonicalKind::ppNeq: {
      auto parts = facts(a, vs, enumeration, true, budget);
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          budget.spend(2);
          parts.push_back(make_not_equal(vs[i], vs[j]));
        }
      return exists_block(vs, make_and(std::move(parts)));
    }
    case CanonicalKind::eqfreeNeg: {
      auto parts = facts(a, vs, enumeration, true, budget);
      auto negative = facts(a, vs, enumeration, false, budget);
      parts.insert(parts.end(), negative.begin(), negative.end());
      std::vector<Formula> classes;
      for (const auto& v : vs) {
        classes.push_back(sim_formula(a.signature(), "w", v));
        budget.spend(node_count(classes.back()));
      }
      parts.push_back(make_forall("w", make_or(std::move(classes))));
      return exists_block(vs, make_and(std::move(parts)));
    }
    case CanonicalKind::posEqfree: {
      int m = opts.m < 0 ? n : opts.m;
      if (m < 1) throw Error("the number of universal variables must be positive");
      return theta(a, {}, {}, m, budget);
    }
  }
  throw Error("unknown canonical sentence kind");
}

std::optional<Formula> defining_formula(const Structure& b, int arity, const std::vector<Tuple>& tuples,
                                        std::size_t budget_limit) {
  Structure target(b.size(), Signature{{"S", arity}});
  for (const Tuple& t : tuples) target.add("S", t);
  for (const Shop& f : enumerate_she(b))
    if (!preserves(f, target)) return std::nullopt;
  NodeBudget budget(budget_limit);
  auto us = numbered("u", arity);
  std::vector<Formula> cases;
  for (const Tuple& t : target.relation(0).tuples())
    cases.push_back(theta(b, us, t, b.size(), budget));
  return make_or(std::move(cases));
}

}  // namespace fomc
