#include "fomc/shop.hpp"

#include <algorithm>
#include <cctype>
#include <deque>

#include "fomc/error.hpp"
#include "fomc/hyper_search.hpp"

namespace fomc {

Shop::Shop(std::vector<ElementSet> images) : images_(std::move(images)) {
  const int n = size();
  if (n < 1 || n > kMaxDomain) throw Error("shop size out of range");
  ElementSet covered;
  for (ElementSet s : images_) {
    if (s.empty()) throw Error("shop is not total");
    if (!s.subset_of(ElementSet::full(n))) throw Error("shop image outside domain");
    covered |= s;
  }
  if (covered != ElementSet::full(n)) throw Error("shop is not surjective");
}

Shop::Shop(const HyperMap& map) : Shop(map.images()) {
  if (map.target_size() != map.source_size()) throw Error("hyper-map is not an endomorphism");
}

Shop Shop::identity(int n) {
  std::vector<ElementSet> images;
  for (Element a = 0; a < n; ++a) images.push_back(ElementSet::singleton(a));
  return Shop(std::move(images));
}

// Accepts "0->{0,1};1->{1}". Every element must be listed once, in any order.
Shop Shop::parse(std::string_view text) {
  std::vector<std::pair<int, ElementSet>> entries;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto number = [&] {
    skip_ws();
    std::size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (start == i || i - start > 2) throw ParseError(1, static_cast<int>(start) + 1, "expected element");
    return std::stoi(std::string(text.substr(start, i - start)));
  };
  auto expect = [&](char c) {
    skip_ws();
    if (i >= text.size() || text[i] != c)
      throw ParseError(1, static_cast<int>(i) + 1, std::string("expected '") + c + "'");
    ++i;
  };
  while (true) {
    int a = number();
    expect('-');
    expect('>');
    expect('{');
    ElementSet img;
    skip_ws();
    if (i < text.size() && text[i] != '}') {
      while (true) {
        int b = number();
        if (b >= kMaxDomain) throw ParseError(1, static_cast<int>(i), "element out of range");
        img.insert(b);
        skip_ws();
        if (i < text.size() && text[i] == ',') {
          ++i;
          continue;
        }
        break;
      }
    }
    expect('}');
    entries.emplace_back(a, img);
    skip_ws();
    if (i >= text.size()) break;
    expect(';');
  }
  std::vector<ElementSet> images(entries.size());
  std::vector<bool> seen(entries.size(), false);
  for (auto [a, img] : entries) {
    if (a >= static_cast<int>(entries.size()) || seen[a]) throw Error("shop must list each element once");
    seen[a] = true;
    images[a] = img;
  }
  return Shop(std::move(images));
}

ElementSet Shop::image_of(ElementSet s) const {
  ElementSet out;
  for (Element a : s) out |= images_[a];
  return out;
}

std::string Shop::to_string() const { return as_hypermap().to_string(); }

Shop compose(const Shop& g, const Shop& f) {
  if (g.size() != f.size()) throw Error("composing shops of different sizes");
  std::vector<ElementSet> images(f.size());
  for (Element a = 0; a < f.size(); ++a) images[a] = g.image_of(f.image(a));
  return Shop(std::move(images));
}

Shop inverse(const Shop& f) {
  std::vector<ElementSet> images(f.size());
  for (Element a = 0; a < f.size(); ++a)
    for (Element b : f.image(a)) images[b].insert(a);
  return Shop(std::move(images));
}

bool is_sub_shop(const Shop& f, const Shop& g) {
  if (f.size() != g.size()) return false;
  for (Element a = 0; a < f.size(); ++a)
    if (!f.image(a).subset_of(g.image(a))) return false;
  return true;
}

bool preserves(const Shop& f, const Structure& s) {
  if (f.size() != s.size()) throw Error("shop and structure sizes differ");
  return maps_into(f.as_hypermap(), s, s);
}

std::vector<Shop> sub_shops(const Shop& f) {
  const int n = f.size();
  std::vector<std::vector<ElementSet>> choices(n);
  for (Element a = 0; a < n; ++a) {
    std::uint32_t full = f.image(a).bits();
    for (std::uint32_t m = full; m; m = (m - 1) & full) choices[a].emplace_back(m);
    std::reverse(choices[a].begin(), choices[a].end());
  }
  std::vector<Shop> out;
  std::vector<std::size_t> pick(n, 0);
  std::vector<ElementSet> images(n);
  while (true) {
    ElementSet covered;
    for (Element a = 0; a < n; ++a) {
      images[a] = choices[a][pick[a]];
      covered |= images[a];
    }
    if (covered == ElementSet::full(n)) out.emplace_back(images);
    int a = n - 1;
    while (a >= 0 && pick[a] + 1 == choices[a].size()) pick[a--] = 0;
    if (a < 0) break;
    ++pick[a];
  }
  return out;
}

bool is_a_shop(const Shop& f) {
  for (ElementSet s : f.images())
    if (s == ElementSet::full(f.size())) return true;
  return false;
}

bool is_e_shop(const Shop& f) {
  ElementSet common = ElementSet::full(f.size());
  for (ElementSet s : f.images()) common &= s;
  return !common.empty();
}

bool is_u_surjective(const Shop& f, ElementSet u) {
  return f.image_of(u) == ElementSet::full(f.size());
}

bool is_x_total(const Shop& f, ElementSet x) {
  for (ElementSet s : f.images())
    if ((s & x).empty()) return false;
  return true;
}

std::vector<Shop> all_shops(int n) {
  if (n < 1 || n > 5) throw SizeLimitExceeded("all_shops supports 1 <= n <= 5");
  const std::uint32_t top = ElementSet::full(n).bits();
  std::vector<Shop> out;
  std::vector<ElementSet> images(n, ElementSet(1));
  while (true) {
    ElementSet covered;
    for (ElementSet s : images) covered |= s;
    if (covered == ElementSet::full(n)) out.emplace_back(images);
    int a = n - 1;
    while (a >= 0 && images[a].bits() == top) images[a--] = ElementSet(1);
    if (a < 0) break;
    images[a] = ElementSet(images[a].bits() + 1);
  }
  return out;
}

std::vector<Shop> enumerate_she(const Structure& s, const SheOptions& opts) {
  if (s.size() > opts.max_domain && !opts.force)
    throw SizeLimitExceeded("enumerating hyper-endomorphisms above n=" +
                            std::to_string(opts.max_domain) + " needs force");
  HyperSearch p;
  p.source = &s;
  p.target = &s;
  p.candidates.assign(s.size(), subset_candidates(s.size()));
  p.cover_sources = s.domain();
  std::vector<Shop> out;
  search_hypermaps(p, [&](const HyperMap& f) {
    out.emplace_back(f);
    return true;
  });
  std::sort(out.begin(), out.end());
  return out;
}

bool satisfies_profile(const Shop& f, const ShopProfile& p) {
  const ElementSet d = ElementSet::full(f.size());
  switch (p.kind) {
    case ProfileKind::aShop:
      return f.image(p.u) == d;
    case ProfileKind::eShop:
      return is_x_total(f, ElementSet::singleton(p.x));
    case ProfileKind::singletonUX:
      return f.image(p.u) == d && is_x_total(f, ElementSet::singleton(p.x));
    case ProfileKind::uSurjective:
      return is_u_surjective(f, p.us);
    case ProfileKind::xTotal:
      return is_x_total(f, p.xs);
    case ProfileKind::uxShop:
      return is_u_surjective(f, p.us) && is_x_total(f, p.xs);
  }
  return false;
}

namespace {

std::optional<Shop> find_a_shop(const Structure& s, Element u) {
  HyperSearch p;
  p.source = &s;
  p.target = &s;
  p.candidates.assign(s.size(), singleton_candidates(s.size()));
  p.candidates[u] = {s.domain()};
  auto f = first_hypermap(p);
  if (!f) return std::nullopt;
  return Shop(*f);
}

std::optional<Shop> find_u_surjective(const Structure& s, ElementSet us) {
  HyperSearch p;
  p.source = &s;
  p.target = &s;
  p.candidates.assign(s.size(), singleton_candidates(s.size()));
  for (Element u : us) p.candidates[u] = subset_candidates(s.size());
  p.cover_sources = us;
  auto f = first_hypermap(p);
  if (!f) return std::nullopt;
  return Shop(*f);
}

std::optional<Shop> inverted(std::optional<Shop> f) {
  if (!f) return std::nullopt;
  return inverse(*f);
}

void check_elements(const Structure& s, ElementSet set) {
  if (!set.subset_of(s.domain())) throw Error("profile mentions elements outside the domain");
}

}  // namespace

std::optional<Shop> exists_shop(const Structure& s, const ShopProfile& p) {
  const ElementSet d = s.domain();
  switch (p.kind) {
    case ProfileKind::aShop:
      check_elements(s, ElementSet::singleton(p.u));
      return find_a_shop(s, p.u);
    case ProfileKind::eShop:
      check_elements(s, ElementSet::singleton(p.x));
      return inverted(find_a_shop(complement(s), p.x));
    case ProfileKind::singletonUX: {
      check_elements(s, ElementSet::singleton(p.u) | ElementSet::singleton(p.x));
      std::vector<ElementSet> images(s.size(), ElementSet::singleton(p.x));
      images[p.u] = d;
      Shop f(images);
      if (preserves(f, s)) return f;
      return std::nullopt;
    }
    case ProfileKind::uSurjective:
      check_elements(s, p.us);
      if (p.us.empty()) return std::nullopt;
      return find_u_surjective(s, p.us);
    case ProfileKind::xTotal:
      check_elements(s, p.xs);
      if (p.xs.empty()) return std::nullopt;
      return inverted(find_u_surjective(complement(s), p.xs));
    case ProfileKind::uxShop: {
      check_elements(s, p.us | p.xs);
      if (p.us.empty() || p.xs.empty()) return std::nullopt;
      auto f = find_u_surjective(s, p.us);
      if (!f) return std::nullopt;
      auto g = inverted(find_u_surjective(complement(s), p.xs));
      if (!g) return std::nullopt;
      return compose(*g, *f);
    }
  }
  return std::nullopt;
}

Dsm generate_dsm(std::span<const Shop> generators, int n) {
  std::set<Shop> members;
  std::deque<Shop> work;
  auto add = [&](const Shop& f) {
    if (members.insert(f).second) work.push_back(f);
  };
  add(Shop::identity(n));
  for (const Shop& g : generators) {
    if (g.size() != n) throw Error("generator has the wrong size");
    add(g);
  }
  while (!work.empty()) {
    Shop f = work.front();
    work.pop_front();
    for (const Shop& sub : sub_shops(f)) add(sub);
    std::vector<Shop> snapshot(members.begin(), members.end());
    for (const Shop& g : snapshot) {
      add(compose(g, f));
      add(compose(f, g));
    }
  }
  return Dsm(std::move(members));
}

bool is_dsm(const std::set<Shop>& shops, int n) {
  if (!shops.count(Shop::identity(n))) return false;
  for (const Shop& f : shops) {
    for (const Shop& sub : sub_shops(f))
      if (!shops.count(sub)) return false;
    for (const Shop& g : shops)
      if (!shops.count(compose(g, f))) return false;
  }
  return true;
}

std::optional<ThreePermuted> check_3_permuted(const Shop& f, ElementSet u, ElementSet x) {
  const int n = f.size();
  if ((u | x) != ElementSet::full(n)) throw Error("3-permuted form needs U and X to cover the domain");
  const ElementSet both = u & x;
  const ElementSet only_x = x - u;
  const ElementSet only_u = u - x;
  ThreePermuted out{std::vector<Element>(n, -1), std::vector<ElementSet>(n)};
  for (Element a = 0; a < n; ++a) {
    ElementSet img = f.image(a);
    if (both.contains(a) || only_x.contains(a)) {
      ElementSet part = both.contains(a) ? both : only_x;
      if (img.size() != 1 || !img.subset_of(part)) return std::nullopt;
      out.permutation[a] = img.min();
    } else {
      ElementSet own = img & only_u;
      if (own.size() != 1 || !(img & both).empty()) return std::nullopt;
      out.permutation[a] = own.min();
      out.spray[a] = img & only_x;
    }
  }
  ElementSet hit;
  for (Element b : out.permutation) hit.insert(b);
  if (hit != ElementSet::full(n)) return std::nullopt;
  return out;
}

bool completion_contains(const Shop& f, ElementSet u, ElementSet x) {
  return check_3_permuted(f, u, x).has_value();
}

std::vector<Shop> completion_generators(ElementSet u, ElementSet x, int n) {
  if (!(u & x).empty() || (u | x) != ElementSet::full(n) || u.empty() || x.empty())
    throw Error("completion generators need a partition of the domain into U and X");
  auto us = u.elements();
  auto xs = x.elements();
  auto build = [&](const std::vector<Element>& on_u, const std::vector<Element>& on_x) {
    std::vector<ElementSet> images(n);
    for (std::size_t i = 0; i < us.size(); ++i)
      images[us[i]] = ElementSet::singleton(on_u[i]) | x;
    for (std::size_t i = 0; i < xs.size(); ++i) images[xs[i]] = ElementSet::singleton(on_x[i]);
    return Shop(std::move(images));
  };
  auto transposition = [](std::vector<Element> v) {
    if (v.size() >= 2) std::swap(v[0], v[1]);
    return v;
  };
  auto cycle = [](std::vector<Element> v) {
    if (!v.empty()) std::rotate(v.begin(), v.begin() + 1, v.end());
    return v;
  };
  return {build(transposition(us), xs), build(cycle(us), xs), build(us, transposition(xs)),
          build(us, cycle(xs))};
}

bool has_identity_form(const Shop& f, ElementSet u, ElementSet x) {
  const int n = f.size();
  if ((u | x) != ElementSet::full(n)) return false;
  const ElementSet only_x = x - u;
  for (Element a = 0; a < n; ++a) {
    ElementSet img = f.image(a);
    if (x.contains(a)) {
      if (img != ElementSet::singleton(a)) return false;
    } else if (img - only_x != ElementSet::singleton(a)) {
      return false;
    }
  }
  return true;
}

std::optional<Shop> canonical_shop(const Structure& s, ElementSet u, ElementSet x) {
  const int n = s.size();
  if ((u | x) != s.domain()) throw Error("canonical shop needs U and X to cover the domain");
  const ElementSet only_x = x - u;
  HyperSearch p;
  p.source = &s;
  p.target = &s;
  p.candidates.resize(n);
  for (Element a = 0; a < n; ++a) {
    if (x.contains(a)) {
      p.candidates[a] = {ElementSet::singleton(a)};
    } else {
      for (std::uint32_t m = only_x.bits(); m; m = (m - 1) & only_x.bits())
        p.candidates[a].push_back(ElementSet::singleton(a) | ElementSet(m));
    }
  }
  p.cover_sources = u;
  std::optional<Shop> best;
  search_hypermaps(p, [&](const HyperMap& f) {
    Shop g(f);
    best = best ? compose(*best, g) : g;
    return true;
  });
  return best;
}

}  // namespace fomc
