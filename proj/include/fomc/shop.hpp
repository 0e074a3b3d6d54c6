#pragma once

#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fomc/element_set.hpp"
#include "fomc/hypermap.hpp"
#include "fomc/structure.hpp"

namespace fomc {

// Surjective hyper-operation: total and surjective map from D to nonempty subsets of D.
class Shop {
 public:
  explicit Shop(std::vector<ElementSet> images);  // throws if not total and surjective
  explicit Shop(const HyperMap& map);

  static Shop identity(int n);
  static Shop parse(std::string_view text);

  int size() const { return static_cast<int>(images_.size()); }
  ElementSet image(Element a) const { return images_[a]; }
  ElementSet image_of(ElementSet s) const;
  const std::vector<ElementSet>& images() const { return images_; }
  HyperMap as_hypermap() const { return HyperMap(size(), images_); }

  std::string to_string() const;

  bool operator==(const Shop&) const = default;
  auto operator<=>(const Shop&) const = default;

 private:
  std::vector<ElementSet> images_;
};

// (g o f)(x) = union of g(y) over y in f(x)
Shop compose(const Shop& g, const Shop& f);
Shop inverse(const Shop& f);
bool is_sub_shop(const Shop& f, const Shop& g);
bool preserves(const Shop& f, const Structure& s);
std::vector<Shop> sub_shops(const Shop& f);

bool is_a_shop(const Shop& f);
bool is_e_shop(const Shop& f);
bool is_u_surjective(const Shop& f, ElementSet u);
bool is_x_total(const Shop& f, ElementSet x);

// All surjective hyper-operations on n elements, in canonical order.
std::vector<Shop> all_shops(int n);

struct SheOptions {
  int max_domain = 6;
  bool force = false;
};
// Every surjective hyper-endomorphism, canonical order.
std::vector<Shop> enumerate_she(const Structure& s, const SheOptions& opts = {});

enum class ProfileKind { aShop, eShop, singletonUX, uSurjective, xTotal, uxShop };

struct ShopProfile {
  ProfileKind kind;
  Element u = 0;
  Element x = 0;
  ElementSet us;
  ElementSet xs;

  static ShopProfile a_shop(Element u) { return {ProfileKind::aShop, u, 0, {}, {}}; }
  static ShopProfile e_shop(Element x) { return {ProfileKind::eShop, 0, x, {}, {}}; }
  static ShopProfile singleton_ux(Element u, Element x) {
    return {ProfileKind::singletonUX, u, x, {}, {}};
  }
  static ShopProfile u_surjective(ElementSet us) {
    return {ProfileKind::uSurjective, 0, 0, us, {}};
  }
  static ShopProfile x_total(ElementSet xs) { return {ProfileKind::xTotal, 0, 0, {}, xs}; }
  static ShopProfile ux(ElementSet us, ElementSet xs) {
    return {ProfileKind::uxShop, 0, 0, us, xs};
  }
};

bool satisfies_profile(const Shop& f, const ShopProfile& p);
std::optional<Shop> exists_shop(const Structure& s, const ShopProfile& p);

// Down-closed monoid: contains the identity, closed under composition and sub-shops.
class Dsm {
 public:
  explicit Dsm(std::set<Shop> members) : members_(std::move(members)) {}
  const std::set<Shop>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool contains(const Shop& f) const { return members_.count(f) > 0; }
  bool operator==(const Dsm&) const = default;

 private:
  std::set<Shop> members_;
};

Dsm generate_dsm(std::span<const Shop> generators, int n);
bool is_dsm(const std::set<Shop>& shops, int n);

// Decomposition of a shop in 3-permuted form over U u X = D.
struct ThreePermuted {
  std::vector<Element> permutation;  // zeta, chi and upsilon combined
  std::vector<ElementSet> spray;     // X_u for u in U\X, empty elsewhere
};

std::optional<ThreePermuted> check_3_permuted(const Shop& f, ElementSet u, ElementSet x);
bool completion_contains(const Shop& f, ElementSet u, ElementSet x);
std::vector<Shop> completion_generators(ElementSet u, ElementSet x, int n);

// h(y) = {y} on U^X, h(x) = {x} on X\U, h(u) = {u} + X_u on U\X; U u X = D.
bool has_identity_form(const Shop& f, ElementSet u, ElementSet x);
// Largest U-X-shop of identity form; U u X must be the whole domain.
std::optional<Shop> canonical_shop(const Structure& s, ElementSet u, ElementSet x);

}  // namespace fomc
