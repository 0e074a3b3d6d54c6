#pragma once

#include <vector>

#include "fomc/element_set.hpp"
#include "fomc/hypermap.hpp"
#include "fomc/shop.hpp"
#include "fomc/structure.hpp"

namespace fomc {

struct ClassicalCore {
  Structure core;
  ElementSet image;    // elements of the input kept in the core
  HyperMap retraction; // endomorphism of the input onto `image`
};

ClassicalCore classical_core(const Structure& s);

struct EqfreeCore {
  Structure core;
  std::vector<int> classes;  // class of every input element
};

EqfreeCore eqfree_core(const Structure& s);

struct UXCore {
  Structure core;      // substructure induced on U u X, renumbered in order
  ElementSet u;        // in input coordinates
  ElementSet x;
  ElementSet core_u;   // the same sets in core coordinates
  ElementSet core_x;
  Shop canonical;      // largest identity-form U-X-shop of the core
};

UXCore ux_core(const Structure& s);

// All k-element subsets of {0..n-1}, lexicographic by element list.
std::vector<ElementSet> subsets_of_size(int n, int k);

// Smallest size of a set U admitting a U-surjective hyper-endomorphism, by
// exhaustive sweep, and the U's of that size in lexicographic order.
std::vector<ElementSet> minimal_surjective_sets(const Structure& s);
// Greedy shrinking from the whole domain; reaches a set of minimum size.
ElementSet greedy_surjective_set(const Structure& s);

}  // namespace fomc
