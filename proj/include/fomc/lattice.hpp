#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fomc/classifier.hpp"
#include "fomc/shop.hpp"

namespace fomc {

// Complexity of positive equality-free model checking for any structure
// whose hyper-endomorphisms are exactly `members`.
ComplexityClass dsm_complexity_tag(const std::vector<Shop>& members);
ComplexityClass dsm_complexity_tag(const Dsm& m);

struct DsmNode {
  int id = 0;
  std::vector<Shop> members;     // canonical order
  std::vector<Shop> generators;  // irredundant; the identity alone for the bottom
  ComplexityClass tag = ComplexityClass::open;
};

struct DsmLattice {
  int n = 0;
  std::vector<DsmNode> nodes;                // ordered by size, then lectically
  std::vector<std::pair<int, int>> covers;  // (upper, lower)
};

struct CensusOptions {
  bool force = false;  // allow n = 4
};

DsmLattice enumerate_dsms(int n, const CensusOptions& opts = {});

// Node table followed by the cover relation:
//   node <id> <tag> <size> <generator>...
//   <id> covers <id>
std::string export_lattice(const DsmLattice& lattice);

}  // namespace fomc
