#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "fomc/element_set.hpp"
#include "fomc/hypermap.hpp"
#include "fomc/structure.hpp"

namespace fomc {

// Backtracking search for hyper-maps source -> target that send every tuple
// of the source into the target relation (every combination drawn from the
// images must be a tuple). Each source element picks its image from an
// explicit candidate list.
struct HyperSearch {
  const Structure* source = nullptr;
  const Structure* target = nullptr;
  std::vector<std::vector<ElementSet>> candidates;
  // Images of these sources must together cover the whole target domain.
  ElementSet cover_sources;
  // Non-tuples of the source must also land entirely outside the target relation.
  bool full = false;
  // Images of distinct sources must be disjoint.
  bool disjoint = false;
};

// Candidate lists holding every singleton / every nonempty subset.
std::vector<ElementSet> singleton_candidates(int target_size);
std::vector<ElementSet> subset_candidates(int target_size);

// visit returns false to stop the search.
void search_hypermaps(const HyperSearch& problem,
                      const std::function<bool(const HyperMap&)>& visit);
std::optional<HyperMap> first_hypermap(const HyperSearch& problem);

// Direct check of the preservation condition.
bool maps_into(const HyperMap& f, const Structure& source, const Structure& target);

}  // namespace fomc
