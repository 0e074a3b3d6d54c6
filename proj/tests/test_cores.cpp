#include <random>

#include "doctest.h"
#include "fomc/cores.hpp"
#include "fomc/evaluator.hpp"
#include "fomc/gadgets.hpp"
#include "fomc/hyper_search.hpp"
#include "oracles.hpp"

using namespace fomc;

namespace {

const Signature kGraph{{"E", 2}};

Structure k2k1() { return disjoint_union(make_clique(2, false), make_clique(1, false)); }

Structure loop_and_isolated() {
  Structure s(2, kGraph);
  s.add("E", {0, 0});
  return s;
}

// Smallest U admitting a U-surjective hyper-endomorphism, from the full
// list of hyper-endomorphisms.
int brute_min_u(const Structure& s) {
  int best = s.size();
  for (const Shop& f : oracle::she(s))
    for (std::uint32_t b = 1; b < (1u << s.size()); ++b)
      if (f.image_of(ElementSet(b)) == s.domain()) best = std::min(best, std::popcount(b));
  return best;
}

int brute_min_x(const Structure& s) {
  int best = s.size();
  for (const Shop& f : oracle::she(s))
    for (std::uint32_t b = 1; b < (1u << s.size()); ++b)
      if (is_x_total(f, ElementSet(b))) best = std::min(best, std::popcount(b));
  return best;
}

bool three_cases(ElementSet u, ElementSet x) {
  if (u == x) return true;
  if ((u & x).empty()) return true;
  return !(u & x).empty() && !(u - x).empty() && !(x - u).empty();
}

void check_identity_form(const Shop& h, ElementSet u, ElementSet x) {
  const ElementSet both = u & x, only_x = x - u, only_u = u - x, ux = u | x;
  ElementSet sprayed;
  for (Element y : both) CHECK((h.image(y) & ux) == ElementSet::singleton(y));
  for (Element y : only_x) CHECK((h.image(y) & ux) == ElementSet::singleton(y));
  for (Element y : only_u) {
    ElementSet rest = h.image(y) & ux;
    CHECK(rest.contains(y));
    rest.erase(y);
    CHECK(rest.subset_of(only_x));
    sprayed |= rest;
  }
  CHECK(sprayed == only_x);
}

}  // namespace

TEST_CASE("classical core") {
  ClassicalCore c = classical_core(k2k1());
  CHECK(are_isomorphic(c.core, make_clique(2, false)));
  CHECK(c.image.size() == 2);
  CHECK(maps_into(c.retraction, k2k1(), k2k1()));
  CHECK(classical_core(make_clique(3, false)).core == make_clique(3, false));

  std::mt19937_64 rng(51);
  for (int i = 0; i < 80; ++i) {
    Structure s = oracle::random_graph(1 + static_cast<int>(rng() % 4), rng);
    ClassicalCore c1 = classical_core(s);
    CHECK(oracle::hom_exists(s, c1.core, false));
    CHECK(oracle::hom_exists(c1.core, s, false));
    CHECK(c1.retraction.image_of(s.domain()) == c1.image);
    CHECK(classical_core(c1.core).core.size() == c1.core.size());
    // No smaller structure is homomorphically equivalent: every endomorphism of the core is onto.
    for (std::uint32_t b = 1; b < (1u << c1.core.size()); ++b) {
      if (std::popcount(b) >= c1.core.size()) continue;
      CHECK_FALSE(oracle::hom_exists(c1.core, induced_substructure(c1.core, ElementSet(b)), false));
    }
  }
}

TEST_CASE("equality-free core") {
  Structure empty(3, kGraph);
  CHECK(eqfree_core(empty).core.size() == 1);
  CHECK(are_isomorphic(eqfree_core(make_complete_bipartite(2, 2)).core, make_clique(2, false)));
  std::mt19937_64 rng(52);
  for (int i = 0; i < 50; ++i) {
    Structure s = oracle::random_graph(1 + static_cast<int>(rng() % 4), rng);
    EqfreeCore e = eqfree_core(s);
    CHECK(eqfree_core(e.core).core.size() == e.core.size());
    CHECK(static_cast<int>(e.classes.size()) == s.size());
  }
}

TEST_CASE("subset helpers") {
  auto two = subsets_of_size(4, 2);
  CHECK(two.size() == 6);
  CHECK(two.front() == ElementSet::of({0, 1}));
  CHECK(two.back() == ElementSet::of({2, 3}));
  CHECK(minimal_surjective_sets(k2k1()) == std::vector<ElementSet>{ElementSet::of({2})});
  std::mt19937_64 rng(53);
  for (int i = 0; i < 60; ++i) {
    Structure s = oracle::random_graph(1 + static_cast<int>(rng() % 4), rng);
    auto sets = minimal_surjective_sets(s);
    REQUIRE_FALSE(sets.empty());
    CHECK(sets.front().size() == brute_min_u(s));
    CHECK(greedy_surjective_set(s).size() == sets.front().size());
  }
}

TEST_CASE("U-X core examples") {
  UXCore a = ux_core(k2k1());
  CHECK(a.u == ElementSet::of({2}));
  CHECK(a.x == ElementSet::of({0, 1}));
  CHECK(a.core == k2k1());
  UXCore b = ux_core(loop_and_isolated());
  CHECK(b.u == ElementSet::of({1}));
  CHECK(b.x == ElementSet::of({0}));
  CHECK(b.core.size() == 2);
  UXCore c = ux_core(make_clique(3, false));
  CHECK(c.u == ElementSet::full(3));
  CHECK(c.x == ElementSet::full(3));
  CHECK(c.canonical == Shop::identity(3));
  UXCore d = ux_core(make_dhat(2, 2));
  CHECK(d.u.size() == 2);
  CHECK(d.x.size() == 2);
  CHECK((d.u & d.x).empty());
}

TEST_CASE("U-X core properties") {
  std::mt19937_64 rng(54);
  for (int i = 0; i < 40; ++i) {
    const int n = 1 + static_cast<int>(rng() % 4);
    Structure s = oracle::random_graph(n, rng);
    UXCore c = ux_core(s);
    CHECK(c.u.size() == brute_min_u(s));
    CHECK(c.x.size() == brute_min_x(s));
    CHECK(three_cases(c.u, c.x));
    CHECK(c.core == induced_substructure(s, c.u | c.x));
    CHECK((c.core_u | c.core_x) == c.core.domain());
    CHECK(c.core_u.size() == c.u.size());
    CHECK((c.core_u & c.core_x).size() == (c.u & c.x).size());
    check_identity_form(c.canonical, c.core_u, c.core_x);
    CHECK(preserves(c.canonical, c.core));

    UXCore again = ux_core(c.core);
    CHECK(are_isomorphic(again.core, c.core));
    CHECK(again.core.size() == c.core.size());
    CHECK((again.u & again.x).size() == (c.u & c.x).size());

    std::vector<Element> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    CHECK(are_isomorphic(ux_core(relabel(s, perm)).core, c.core));

    // Reduced structures: every hyper-endomorphism is in 3-permuted form.
    for (const Shop& f : oracle::she(c.core)) {
      auto w = check_3_permuted(f, c.core_u, c.core_x);
      CHECK(w.has_value());
      if (w && is_u_surjective(f, c.core_u) && is_x_total(f, c.core_x)) {
        ElementSet sprayed;
        for (ElementSet e : w->spray) sprayed |= e;
        CHECK(sprayed == c.core_x - c.core_u);
      }
    }

    auto report = check_relativisation(s, c.u, c.x, 50, 9 + i);
    CHECK(report.failures.empty());
  }
}
