#include <random>

#include "doctest.h"
#include "fomc/classifier.hpp"
#include "fomc/error.hpp"
#include "fomc/gadgets.hpp"
#include "fomc/lattice.hpp"
#include "oracles.hpp"

using namespace fomc;

namespace {

using CC = ComplexityClass;

Shop sh(const char* text) { return Shop::parse(text); }

std::set<Shop> as_set(const std::vector<Shop>& v) { return {v.begin(), v.end()}; }

bool subset(const std::vector<Shop>& a, const std::vector<Shop>& b) {
  auto sb = as_set(b);
  for (const Shop& f : a)
    if (!sb.count(f)) return false;
  return true;
}

}  // namespace

TEST_CASE("small censuses") {
  CHECK(enumerate_dsms(1).nodes.size() == 1);
  DsmLattice l = enumerate_dsms(2);
  REQUIRE(l.nodes.size() == 5);
  std::map<std::string, CC> expected{{"0->{0};1->{1}", CC::pspaceComplete},
                                     {"0->{1};1->{0}", CC::pspaceComplete},
                                     {"0->{0};1->{0,1}", CC::inL},
                                     {"0->{0,1};1->{1}", CC::inL},
                                     {"0->{0,1};1->{0,1}", CC::inL}};
  for (const DsmNode& node : l.nodes) {
    REQUIRE(node.generators.size() == 1);
    auto it = expected.find(node.generators[0].to_string());
    REQUIRE(it != expected.end());
    CHECK(node.tag == it->second);
    expected.erase(it);
  }
  CHECK(expected.empty());
  CHECK(l.covers.size() == 6);
  CHECK_THROWS_AS(enumerate_dsms(4), SizeLimitExceeded);
}

TEST_CASE("lattice export") {
  const std::string text = export_lattice(enumerate_dsms(2));
  CHECK(text.find("node 0 Pspace-complete 1 0->{0};1->{1}\n") != std::string::npos);
  CHECK(text.find("node 4 L 7 0->{0,1};1->{0,1}\n") != std::string::npos);
  CHECK(text.find("4 covers 2\n") != std::string::npos);
}

TEST_CASE("monoid tags") {
  CHECK(dsm_complexity_tag(std::vector<Shop>{Shop::identity(2)}) == CC::pspaceComplete);
  CHECK(dsm_complexity_tag(all_shops(2)) == CC::inL);
  std::vector<Shop> gens{gv_spray(1)};
  CHECK(dsm_complexity_tag(generate_dsm(gens, 5)) == CC::npComplete);
  // A structure whose hyper-endomorphisms are exactly a node gets that node's tag.
  DsmLattice l = enumerate_dsms(2);
  for (std::uint64_t bits = 0; bits < 16; ++bits) {
    Structure s = oracle::graph(2, bits);
    auto she = as_set(enumerate_she(s));
    for (const DsmNode& node : l.nodes)
      if (as_set(node.members) == she) CHECK(node.tag == classify_pos_eqfree(s).cls);
  }
}

TEST_CASE("closure operator laws") {
  std::mt19937_64 rng(81);
  for (int n : {2, 3}) {
    auto shops = all_shops(n);
    for (int i = 0; i < 40; ++i) {
      std::vector<Shop> a, b;
      for (int k = 0; k < 2; ++k) a.push_back(shops[rng() % shops.size()]);
      b = a;
      b.push_back(shops[rng() % shops.size()]);
      Dsm ca = generate_dsm(a, n), cb = generate_dsm(b, n);
      std::vector<Shop> ma(ca.members().begin(), ca.members().end());
      std::vector<Shop> mb(cb.members().begin(), cb.members().end());
      CHECK(subset(a, ma));
      CHECK(subset(ma, mb));
      CHECK(generate_dsm(ma, n) == ca);
      CHECK(is_dsm(ca.members(), n));
    }
  }
}

TEST_CASE("n=3 census is a consistent lattice") {
  DsmLattice l = enumerate_dsms(3);
  std::map<std::set<Shop>, int> index;
  for (const DsmNode& node : l.nodes) {
    auto m = as_set(node.members);
    CHECK(is_dsm(m, 3));
    CHECK(generate_dsm(node.generators, 3).members() == m);
    CHECK(dsm_complexity_tag(node.members) == node.tag);
    // Irredundant: dropping any generator loses something.
    for (std::size_t g = 0; g < node.generators.size() && node.generators.size() > 1; ++g) {
      auto fewer = node.generators;
      fewer.erase(fewer.begin() + static_cast<long>(g));
      CHECK(generate_dsm(fewer, 3).members() != m);
    }
    CHECK(index.emplace(m, node.id).second);
  }
  // Every monoid generated by one or two shops is a node.
  std::mt19937_64 rng(82);
  auto shops = all_shops(3);
  for (int i = 0; i < 300; ++i) {
    std::vector<Shop> gens{shops[rng() % shops.size()]};
    if (i % 2) gens.push_back(shops[rng() % shops.size()]);
    CHECK(index.count(generate_dsm(gens, 3).members()) == 1);
  }
  // Covers are exactly the transitive reduction of inclusion.
  std::set<std::pair<int, int>> covers(l.covers.begin(), l.covers.end());
  auto below = [&](int lo, int hi) {
    return lo != hi && subset(l.nodes[lo].members, l.nodes[hi].members);
  };
  const int count = static_cast<int>(l.nodes.size());
  for (int hi = 0; hi < count; ++hi)
    for (int lo = 0; lo < count; ++lo) {
      bool is_cover = below(lo, hi);
      for (int mid = 0; mid < count && is_cover; ++mid)
        if (below(lo, mid) && below(mid, hi)) is_cover = false;
      CHECK(covers.count({hi, lo}) == static_cast<std::size_t>(is_cover));
    }
}
