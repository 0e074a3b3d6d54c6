#pragma once

// Brute-force reference implementations. Nothing here calls the search
// engine; every answer comes from enumerating the whole space.

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "fomc/formula.hpp"
#include "fomc/shop.hpp"
#include "fomc/structure.hpp"

namespace oracle {

using fomc::Element;
using fomc::ElementSet;
using fomc::Formula;
using fomc::NodeKind;
using fomc::Shop;
using fomc::Structure;
using fomc::Tuple;

inline Structure graph(int n, std::uint64_t edge_bits) {
  Structure s(n, fomc::Signature{{"E", 2}});
  for (int p = 0; p < n * n; ++p)
    if (edge_bits >> p & 1) s.add("E", {p / n, p % n});
  return s;
}

inline Structure random_graph(int n, std::mt19937_64& rng) {
  return graph(n, rng() & ((std::uint64_t{1} << (n * n)) - 1));
}

// Every combination drawn from the images of t lies in rel.
inline bool product_inside(const fomc::Relation& rel, const Tuple& t,
                           const std::vector<ElementSet>& images) {
  Tuple img(t.size());
  std::function<bool(std::size_t)> rec = [&](std::size_t k) {
    if (k == t.size()) return rel.contains(img);
    for (Element b : images[t[k]]) {
      img[k] = b;
      if (!rec(k + 1)) return false;
    }
    return true;
  };
  return rec(0);
}

inline bool hyper_preserves(const std::vector<ElementSet>& images, const Structure& a,
                            const Structure& b) {
  for (std::size_t i = 0; i < a.signature().size(); ++i)
    for (const Tuple& t : a.relation(i).tuples())
      if (!product_inside(b.relation(i), t, images)) return false;
  return true;
}

// Calls visit on every total map from n elements to nonempty subsets of m.
inline void for_each_total_map(int n, int m, const std::function<void(const std::vector<ElementSet>&)>& visit) {
  std::vector<ElementSet> images(n, ElementSet(1));
  const std::uint32_t top = (std::uint32_t{1} << m) - 1;
  while (true) {
    visit(images);
    int i = n - 1;
    while (i >= 0 && images[i].bits() == top) images[i--] = ElementSet(1);
    if (i < 0) return;
    images[i] = ElementSet(images[i].bits() + 1);
  }
}

inline bool covers(const std::vector<ElementSet>& images, int m) {
  ElementSet u;
  for (ElementSet s : images) u |= s;
  return u == ElementSet::full(m);
}

inline std::vector<Shop> she(const Structure& s) {
  std::vector<Shop> out;
  for_each_total_map(s.size(), s.size(), [&](const std::vector<ElementSet>& f) {
    if (covers(f, s.size()) && hyper_preserves(f, s, s)) out.emplace_back(f);
  });
  std::sort(out.begin(), out.end());
  return out;
}

inline bool surjective_hyper_exists(const Structure& a, const Structure& b) {
  bool found = false;
  for_each_total_map(a.size(), b.size(), [&](const std::vector<ElementSet>& f) {
    if (!found && covers(f, b.size()) && hyper_preserves(f, a, b)) found = true;
  });
  return found;
}

// Functions a -> b as singleton images.
inline void for_each_function(int n, int m, const std::function<void(const std::vector<ElementSet>&)>& visit) {
  std::vector<Element> v(n, 0);
  std::vector<ElementSet> images(n);
  while (true) {
    for (int i = 0; i < n; ++i) images[i] = ElementSet::singleton(v[i]);
    visit(images);
    int i = n - 1;
    while (i >= 0 && v[i] == m - 1) v[i--] = 0;
    if (i < 0) return;
    ++v[i];
  }
}

inline bool injective(const std::vector<ElementSet>& images) {
  ElementSet seen;
  for (ElementSet s : images) {
    if (!(seen & s).empty()) return false;
    seen |= s;
  }
  return true;
}

inline bool hom_exists(const Structure& a, const Structure& b, bool need_injective) {
  bool found = false;
  for_each_function(a.size(), b.size(), [&](const std::vector<ElementSet>& f) {
    if (!found && (!need_injective || injective(f)) && hyper_preserves(f, a, b)) found = true;
  });
  return found;
}

inline bool isomorphic(const Structure& a, const Structure& b) {
  if (a.size() != b.size() || a.signature() != b.signature()) return false;
  std::vector<Element> p(a.size());
  std::iota(p.begin(), p.end(), 0);
  do {
    bool ok = true;
    for (std::size_t i = 0; ok && i < a.signature().size(); ++i) {
      const auto& ra = a.relation(i);
      if (ra.size() != b.relation(i).size()) ok = false;
      for (const Tuple& t : ra.tuples()) {
        if (!ok) break;
        Tuple u(t.size());
        for (std::size_t k = 0; k < t.size(); ++k) u[k] = p[t[k]];
        if (!b.relation(i).contains(u)) ok = false;
      }
    }
    if (ok) return true;
  } while (std::next_permutation(p.begin(), p.end()));
  return false;
}

// x ~ y straight from the definition.
inline bool interchangeable(const Structure& s, Element x, Element y) {
  for (std::size_t i = 0; i < s.signature().size(); ++i) {
    const auto& r = s.relation(i);
    bool ok = true;
    fomc::for_each_tuple(s.size(), r.arity(), [&](const Tuple& t) {
      for (int k = 0; ok && k < r.arity(); ++k) {
        if (t[k] != x) continue;
        Tuple u = t;
        u[k] = y;
        if (r.contains(t) != r.contains(u)) ok = false;
      }
    });
    if (!ok) return false;
  }
  return true;
}

inline Structure quotient(const Structure& s) {
  std::vector<Element> rep;
  std::vector<int> cls(s.size(), -1);
  for (Element a = 0; a < s.size(); ++a) {
    for (std::size_t c = 0; c < rep.size(); ++c)
      if (interchangeable(s, a, rep[c]) && interchangeable(s, rep[c], a)) {
        cls[a] = static_cast<int>(c);
        break;
      }
    if (cls[a] < 0) {
      cls[a] = static_cast<int>(rep.size());
      rep.push_back(a);
    }
  }
  Structure q(static_cast<int>(rep.size()), s.signature());
  for (std::size_t i = 0; i < s.signature().size(); ++i)
    for (const Tuple& t : s.relation(i).tuples()) {
      Tuple u(t.size());
      for (std::size_t k = 0; k < t.size(); ++k) u[k] = cls[t[k]];
      q.add(s.signature()[i].name, u);
    }
  return q;
}

// Direct recursive semantics over an environment map.
inline bool eval(const Structure& s, const Formula& f, std::map<std::string, Element>& env) {
  switch (f.kind) {
    case NodeKind::truth:
      return true;
    case NodeKind::falsity:
      return false;
    case NodeKind::atom: {
      Tuple t;
      for (const auto& v : f.vars) t.push_back(env.at(v));
      return s.relation(f.symbol).contains(t);
    }
    case NodeKind::equality:
      return env.at(f.vars[0]) == env.at(f.vars[1]);
    case NodeKind::negation:
      return !eval(s, f.children[0], env);
    case NodeKind::conjunction:
      for (const auto& c : f.children)
        if (!eval(s, c, env)) return false;
      return true;
    case NodeKind::disjunction:
      for (const auto& c : f.children)
        if (eval(s, c, env)) return true;
      return false;
    case NodeKind::forall:
    case NodeKind::exists: {
      const bool all = f.kind == NodeKind::forall;
      ElementSet range = f.restriction.value_or(s.domain());
      auto saved = env.find(f.vars[0]) == env.end() ? std::optional<Element>() : std::optional<Element>(env[f.vars[0]]);
      bool result = all;
      for (Element a : range) {
        env[f.vars[0]] = a;
        if (eval(s, f.children[0], env) != all) {
          result = !all;
          break;
        }
      }
      if (saved) env[f.vars[0]] = *saved;
      else env.erase(f.vars[0]);
      return result;
    }
  }
  return false;
}

inline bool eval(const Structure& s, const Formula& f) {
  std::map<std::string, Element> env;
  return eval(s, f, env);
}

inline bool three_colourable(const Structure& g) {
  bool found = false;
  const int n = g.size();
  std::vector<Element> c(n, 0);
  while (!found) {
    bool ok = true;
    for (const Tuple& t : g.relation("E").tuples())
      if (c[t[0]] == c[t[1]]) ok = false;
    if (ok) found = true;
    int i = n - 1;
    while (i >= 0 && c[i] == 2) c[i--] = 0;
    if (i < 0) break;
    ++c[i];
  }
  return found;
}

}  // namespace oracle
