#include "fomc/hypermap.hpp"

#include "fomc/error.hpp"

namespace fomc {

HyperMap::HyperMap(int target_size, std::vector<ElementSet> images)
    : target_size_(target_size), images_(std::move(images)) {
  for (ElementSet s : images_)
    if (!s.subset_of(ElementSet::full(target_size_))) throw Error("image outside target");
}

ElementSet HyperMap::image_of(ElementSet s) const {
  ElementSet out;
  for (Element a : s) out |= images_[a];
  return out;
}

bool HyperMap::is_total() const {
  for (ElementSet s : images_)
    if (s.empty()) return false;
  return true;
}

bool HyperMap::is_surjective() const {
  return image_of(ElementSet::full(source_size())) == ElementSet::full(target_size_);
}

bool HyperMap::is_function() const {
  for (ElementSet s : images_)
    if (s.size() != 1) return false;
  return true;
}

std::string HyperMap::to_string() const {
  std::string out;
  for (std::size_t a = 0; a < images_.size(); ++a) {
    if (a) out += ';';
    out += std::to_string(a) + "->" + images_[a].to_string();
  }
  return out;
}

}  // namespace fomc
