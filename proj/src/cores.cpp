#include "fomc/cores.hpp"

#include "fomc/error.hpp"
#include "fomc/hyper_search.hpp"

namespace fomc {

std::vector<ElementSet> subsets_of_size(int n, int k) {
  std::vector<ElementSet> out;
  if (k < 0 || k > n) return out;
  std::vector<Element> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    out.push_back(ElementSet::of(idx));
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

ClassicalCore classical_core(const Structure& s) {
  for (int k = 1; k <= s.size(); ++k) {
    for (ElementSet keep : subsets_of_size(s.size(), k)) {
      HyperSearch p;
      p.source = &s;
      p.target = &s;
      std::vector<ElementSet> cands;
      for (Element e : keep) cands.push_back(ElementSet::singleton(e));
      p.candidates.assign(s.size(), cands);
      auto h = first_hypermap(p);
      if (!h) continue;
      // Minimality of k forces the image to be all of `keep`.
      return {induced_substructure(s, keep), keep, *h};
    }
  }
  throw Error("no endomorphism found");
}

EqfreeCore eqfree_core(const Structure& s) { return {quotient_by_sim(s), sim_classes(s)}; }

std::vector<ElementSet> minimal_surjective_sets(const Structure& s) {
  for (int k = 1; k <= s.size(); ++k) {
    std::vector<ElementSet> found;
    for (ElementSet u : subsets_of_size(s.size(), k))
      if (exists_shop(s, ShopProfile::u_surjective(u))) found.push_back(u);
    if (!found.empty()) return found;
  }
  throw Error("the identity should make the whole domain surjective");
}

ElementSet greedy_surjective_set(const Structure& s) {
  ElementSet u = s.domain();
  for (Element e = 0; e < s.size(); ++e) {
    ElementSet smaller = u;
    smaller.erase(e);
    if (!smaller.empty() && exists_shop(s, ShopProfile::u_surjective(smaller))) u = smaller;
  }
  return u;
}

UXCore ux_core(const Structure& s) {
  auto us = minimal_surjective_sets(s);
  auto xs = minimal_surjective_sets(complement(s));
  ElementSet best_u = us.front(), best_x = xs.front();
  int best = -1;
  for (ElementSet u : us) {
    for (ElementSet x : xs) {
      int overlap = (u & x).size();
      if (overlap > best) {
        best = overlap;
        best_u = u;
        best_x = x;
      }
    }
  }
  ElementSet keep = best_u | best_x;
  std::vector<Element> renum(s.size(), -1);
  int next = 0;
  for (Element e : keep) renum[e] = next++;
  ElementSet core_u, core_x;
  for (Element e : best_u) core_u.insert(renum[e]);
  for (Element e : best_x) core_x.insert(renum[e]);
  Structure core = induced_substructure(s, keep);
  auto h = canonical_shop(core, core_u, core_x);
  if (!h) throw Error("U-X-core has no canonical shop");
  return {std::move(core), best_u, best_x, core_u, core_x, *h};
}

}  // namespace fomc
