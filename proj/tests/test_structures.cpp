#include <random>
#include <sstream>

#include "doctest.h"
#include "fomc/error.hpp"
#include "fomc/gadgets.hpp"
#include "fomc/hyper_search.hpp"
#include "fomc/shop.hpp"
#include "fomc/structure.hpp"
#include "oracles.hpp"

using namespace fomc;

namespace {

Structure k2() { return make_clique(2, false); }
Structure k2k1() { return disjoint_union(make_clique(2, false), make_clique(1, false)); }

}  // namespace

TEST_CASE("element sets") {
  ElementSet s = ElementSet::of({0, 2, 5});
  CHECK(s.size() == 3);
  CHECK(s.to_string() == "{0,2,5}");
  CHECK(parse_element_set("{0,2,5}") == s);
  CHECK(parse_element_set("0,2,5") == s);
  CHECK(parse_element_set("{}").empty());
  CHECK(s.elements() == std::vector<Element>{0, 2, 5});
  CHECK(lex_less(ElementSet::of({0, 3}), ElementSet::of({1})));
  CHECK_FALSE(lex_less(ElementSet::of({1}), ElementSet::of({0, 3})));
  CHECK(lex_less(ElementSet::of({0}), ElementSet::of({0, 1})));
}

TEST_CASE("complement") {
  Structure c = complement(k2());
  CHECK(c.relation("E").tuples() == std::vector<Tuple>{{0, 0}, {1, 1}});
  Structure empty(2, Signature{{"E", 2}});
  CHECK(complement(empty).relation("E").size() == 4);
  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    Structure s = oracle::random_graph(1 + static_cast<int>(rng() % 4), rng);
    CHECK(complement(complement(s)) == s);
  }
}

TEST_CASE("disjoint union") {
  Structure u = k2k1();
  CHECK(u.size() == 3);
  CHECK(u.relation("E").tuples() == std::vector<Tuple>{{0, 1}, {1, 0}});
  std::mt19937_64 rng(12);
  for (int i = 0; i < 30; ++i) {
    Structure a = oracle::random_graph(1 + static_cast<int>(rng() % 3), rng);
    Structure b = oracle::random_graph(1 + static_cast<int>(rng() % 3), rng);
    CHECK(disjoint_union(a, b).tuple_count() == a.tuple_count() + b.tuple_count());
  }
  CHECK_THROWS_AS(disjoint_union(k2(), make_bnae()), SignatureMismatch);
}

TEST_CASE("induced substructure") {
  CHECK(induced_substructure(k2k1(), ElementSet::of({0, 1})) == k2());
  Structure s = make_g(2, 2, 0, 2);
  CHECK(induced_substructure(s, s.domain()) == s);
  CHECK_THROWS_AS(induced_substructure(s, ElementSet()), Error);
  Structure r = induced_substructure(s, ElementSet::of({1, 3}));
  CHECK(r.relation("E").tuples() == std::vector<Tuple>{{0, 1}, {1, 0}, {1, 1}});
}

TEST_CASE("quotient by interchangeability") {
  Structure k22 = make_complete_bipartite(2, 2);
  CHECK(are_isomorphic(quotient_by_sim(k22), k2()));
  Structure empty(3, Signature{{"E", 2}});
  CHECK(quotient_by_sim(empty).size() == 1);
  std::mt19937_64 rng(13);
  for (int i = 0; i < 100; ++i) {
    Structure s = oracle::random_graph(1 + static_cast<int>(rng() % 4), rng);
    Structure q = quotient_by_sim(s);
    CHECK(oracle::isomorphic(q, oracle::quotient(s)));
    CHECK(quotient_by_sim(q).size() == q.size());
    // The class map is a full surjective homomorphism.
    auto cls = sim_classes(s);
    std::vector<ElementSet> images;
    for (int c : cls) images.push_back(ElementSet::singleton(c));
    HyperMap h(q.size(), images);
    CHECK(h.is_surjective());
    CHECK(maps_into(h, s, q));
    CHECK(maps_into(h, complement(s), complement(q)));
  }
}

TEST_CASE("morphism search against brute force") {
  CHECK(find_morphism(k2(), make_clique(3, false), MorphismKind::homomorphism));
  CHECK_FALSE(find_morphism(make_clique(3, false), k2(), MorphismKind::homomorphism));
  std::mt19937_64 rng(14);
  for (int i = 0; i < 300; ++i) {
    Structure a = oracle::random_graph(1 + static_cast<int>(rng() % 3), rng);
    Structure b = oracle::random_graph(1 + static_cast<int>(rng() % 3), rng);
    auto hom = find_morphism(a, b, MorphismKind::homomorphism);
    CHECK(hom.has_value() == oracle::hom_exists(a, b, false));
    if (hom) CHECK(maps_into(*hom, a, b));
    auto inj = find_morphism(a, b, MorphismKind::injectiveHomomorphism);
    CHECK(inj.has_value() == oracle::hom_exists(a, b, true));
    auto shm = find_morphism(a, b, MorphismKind::surjectiveHyper);
    CHECK(shm.has_value() == oracle::surjective_hyper_exists(a, b));
    if (shm) {
      CHECK(shm->is_total());
      CHECK(shm->is_surjective());
      CHECK(maps_into(*shm, a, b));
      // Complementing both sides turns a witness around.
      std::vector<ElementSet> inv(b.size());
      for (Element x = 0; x < a.size(); ++x)
        for (Element y : shm->image(x)) inv[y].insert(x);
      CHECK(oracle::hyper_preserves(inv, complement(b), complement(a)));
    }
    auto full = find_morphism(a, b, MorphismKind::fullSurjective);
    if (full) {
      CHECK(full->is_function());
      CHECK(full->is_surjective());
      CHECK(maps_into(*full, a, b));
      CHECK(maps_into(*full, complement(a), complement(b)));
    }
    CHECK(are_isomorphic(a, b) == oracle::isomorphic(a, b));
  }
}

TEST_CASE("homomorphisms compose") {
  std::mt19937_64 rng(15);
  for (int i = 0; i < 100; ++i) {
    Structure a = oracle::random_graph(1 + static_cast<int>(rng() % 3), rng);
    Structure b = oracle::random_graph(1 + static_cast<int>(rng() % 3), rng);
    Structure c = oracle::random_graph(1 + static_cast<int>(rng() % 3), rng);
    CHECK(find_morphism(a, a, MorphismKind::homomorphism));
    auto h = find_morphism(a, b, MorphismKind::homomorphism);
    auto g = find_morphism(b, c, MorphismKind::homomorphism);
    if (!h || !g) continue;
    std::vector<ElementSet> gh;
    for (Element x = 0; x < a.size(); ++x) gh.push_back(g->image(h->value(x)));
    CHECK(maps_into(HyperMap(c.size(), gh), a, c));
  }
}

TEST_CASE("isomorphism") {
  CHECK(are_isomorphic(k2(), relabel(k2(), {1, 0})));
  CHECK_FALSE(are_isomorphic(k2(), complement(k2())));
  Structure g = make_g(2, 2, 1, 3);
  CHECK(are_isomorphic(g, relabel(g, {3, 1, 0, 2})));
}

TEST_CASE("closure under boolean operations") {
  const std::vector<Element> majority{0, 0, 0, 1, 0, 1, 1, 1};
  const std::vector<Element> minority{0, 1, 1, 0, 1, 0, 0, 1};
  const std::vector<Element> meet{0, 0, 0, 1};
  const std::vector<Element> join{0, 1, 1, 1};
  CHECK_FALSE(closed_under_operation(make_bnae(), 3, majority));
  CHECK(closed_under_operation(k2(), 3, majority));
  CHECK(closed_under_operation(k2(), 3, minority));
  Structure r(2, Signature{{"R", 2}});
  for (Tuple t : {Tuple{0, 0}, Tuple{0, 1}, Tuple{1, 0}}) r.add("R", t);
  CHECK(closed_under_operation(r, 2, meet));
  CHECK_FALSE(closed_under_operation(r, 2, join));
  Structure empty(2, Signature{{"R", 3}});
  CHECK(closed_under_operation(empty, 2, join));
}

TEST_CASE("structure text format") {
  const std::string text =
      "# two vertices\n"
      "structure k2\n"
      "domain 2\n"
      "relation E/2\n"
      "0 1\n"
      "1 0\n"
      "end\n";
  std::istringstream in(text);
  NamedStructure ns = read_structure(in);
  CHECK(ns.name == "k2");
  CHECK(ns.structure == k2());
  CHECK(structure_to_string("k2", k2()) == "structure k2\ndomain 2\nrelation E/2\n0 1\n1 0\nend\n");
  std::istringstream round(structure_to_string("g", make_dhat(2, 2)));
  CHECK(read_structure(round).structure == make_dhat(2, 2));

  std::istringstream bad("structure x\ndomain 2\nrelation E/2\n0 5\nend\n");
  CHECK_THROWS_AS(read_structure(bad), ParseError);
  std::istringstream missing("structure x\ndomain 2\n");
  CHECK_THROWS_AS(read_structure(missing), ParseError);
}
