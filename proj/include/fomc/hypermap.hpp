#pragma once

#include <compare>
#include <string>
#include <vector>

#include "fomc/element_set.hpp"

namespace fomc {

// A map from {0..source_size-1} to subsets of {0..target_size-1}.
class HyperMap {
 public:
  HyperMap(int target_size, std::vector<ElementSet> images);

  int source_size() const { return static_cast<int>(images_.size()); }
  int target_size() const { return target_size_; }
  ElementSet image(Element a) const { return images_[a]; }
  const std::vector<ElementSet>& images() const { return images_; }
  ElementSet image_of(ElementSet s) const;

  bool is_total() const;
  bool is_surjective() const;
  bool is_function() const;
  // Only meaningful when is_function().
  Element value(Element a) const { return images_[a].min(); }

  // "0->{0,1};1->{1}"
  std::string to_string() const;

  bool operator==(const HyperMap&) const = default;
  auto operator<=>(const HyperMap&) const = default;

 private:
  int target_size_;
  std::vector<ElementSet> images_;
};

}  // namespace fomc
