#include "fomc/lattice.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

#include "fomc/error.hpp"

namespace fomc {

ComplexityClass dsm_complexity_tag(const std::vector<Shop>& members) {
  bool a = false, e = false;
  for (const Shop& f : members) {
    a = a || is_a_shop(f);
    e = e || is_e_shop(f);
  }
  if (a && e) return ComplexityClass::inL;
  if (a) return ComplexityClass::npComplete;
  if (e) return ComplexityClass::coNpComplete;
  return ComplexityClass::pspaceComplete;
}

ComplexityClass dsm_complexity_tag(const Dsm& m) {
  return dsm_complexity_tag(std::vector<Shop>(m.members().begin(), m.members().end()));
}

namespace {

class Bits {
 public:
  explicit Bits(std::size_t n = 0) : words_((n + 63) / 64, 0) {}
  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1; }
  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  bool subset_of(const Bits& o) const {
    for (std::size_t w = 0; w < words_.size(); ++w)
      if (words_[w] & ~o.words_[w]) return false;
    return true;
  }
  bool operator==(const Bits&) const = default;

 private:
  std::vector<std::uint64_t> words_;
};

std::uint64_t shop_key(const Shop& f) {
  std::uint64_t k = 0;
  for (ElementSet s : f.images()) k = (k << 8) | s.bits();
  return k;
}

// Shops indexed in canonical order, with composition and sub-shop tables.
class ShopIndex {
 public:
  explicit ShopIndex(int n) : n_(n), shops_(all_shops(n)) {
    for (std::size_t i = 0; i < shops_.size(); ++i) index_[shop_key(shops_[i])] = static_cast<int>(i);
    identity_ = index_of(Shop::identity(n));
    subs_.resize(shops_.size());
    for (std::size_t i = 0; i < shops_.size(); ++i)
      for (const Shop& s : sub_shops(shops_[i])) subs_[i].push_back(index_of(s));
    if (shops_.size() <= 4096) {
      table_.resize(shops_.size() * shops_.size());
      for (std::size_t g = 0; g < shops_.size(); ++g)
        for (std::size_t f = 0; f < shops_.size(); ++f)
          table_[g * shops_.size() + f] = index_of(fomc::compose(shops_[g], shops_[f]));
    }
  }

  std::size_t size() const { return shops_.size(); }
  const Shop& shop(int i) const { return shops_[i]; }
  int identity() const { return identity_; }
  const std::vector<int>& subs(int i) const { return subs_[i]; }
  int index_of(const Shop& f) const { return index_.at(shop_key(f)); }
  int compose(int g, int f) const {
    if (!table_.empty()) return table_[static_cast<std::size_t>(g) * shops_.size() + f];
    return index_of(fomc::compose(shops_[g], shops_[f]));
  }

 private:
  int n_;
  std::vector<Shop> shops_;
  std::unordered_map<std::uint64_t, int> index_;
  int identity_ = 0;
  std::vector<std::vector<int>> subs_;
  std::vector<int> table_;
};

struct Closed {
  Bits bits;
  std::vector<int> members;
};

// Closure of `seed` under composition and sub-shops. When `guard` is given,
// gives up as soon as an element below `limit` outside `guard` appears.
bool close(const ShopIndex& ix, const std::vector<int>& seed, Closed& out, const Bits* guard = nullptr,
           int limit = 0) {
  out.bits = Bits(ix.size());
  out.members.clear();
  std::vector<int> work;
  auto add = [&](int i) {
    if (out.bits.test(i)) return true;
    if (guard && i < limit && !guard->test(i)) return false;
    out.bits.set(i);
    out.members.push_back(i);
    work.push_back(i);
    return true;
  };
  if (!add(ix.identity())) return false;
  for (int i : seed)
    if (!add(i)) return false;
  while (!work.empty()) {
    int f = work.back();
    work.pop_back();
    for (int s : ix.subs(f))
      if (!add(s)) return false;
    for (std::size_t k = 0; k < out.members.size(); ++k) {
      int g = out.members[k];
      if (!add(ix.compose(g, f)) || !add(ix.compose(f, g))) return false;
    }
  }
  std::sort(out.members.begin(), out.members.end());
  return true;
}

std::vector<int> irredundant_generators(const ShopIndex& ix, const std::vector<int>& members) {
  std::vector<int> gens;
  for (int m : members) {
    bool maximal = true;
    for (int o : members) {
      if (o != m && is_sub_shop(ix.shop(m), ix.shop(o))) {
        maximal = false;
        break;
      }
    }
    if (maximal) gens.push_back(m);
  }
  for (std::size_t i = 0; i < gens.size();) {
    std::vector<int> rest = gens;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
    Closed c;
    close(ix, rest, c);
    if (c.bits.test(gens[i])) gens = std::move(rest);
    else ++i;
  }
  if (gens.empty()) gens.push_back(ix.identity());
  return gens;
}

}  // namespace

DsmLattice enumerate_dsms(int n, const CensusOptions& opts) {
  if (n < 1 || n > 4) throw SizeLimitExceeded("census supports 1 <= n <= 4");
  if (n == 4 && !opts.force) throw SizeLimitExceeded("the census for n=4 needs force");
  ShopIndex ix(n);
  const int m = static_cast<int>(ix.size());

  // Next-Closure in lectic order.
  std::vector<Closed> found;
  Closed a;
  close(ix, {}, a);
  found.push_back(a);
  while (true) {
    bool advanced = false;
    for (int i = m - 1; i >= 0 && !advanced; --i) {
      if (a.bits.test(i)) continue;
      std::vector<int> seed;
      for (int j : a.members)
        if (j < i) seed.push_back(j);
      seed.push_back(i);
      Closed b;
      if (!close(ix, seed, b, &a.bits, i)) continue;
      a = std::move(b);
      found.push_back(a);
      advanced = true;
    }
    if (!advanced) break;
  }

  std::stable_sort(found.begin(), found.end(),
                   [](const Closed& x, const Closed& y) { return x.members.size() < y.members.size(); });
  DsmLattice lattice;
  lattice.n = n;
  for (std::size_t id = 0; id < found.size(); ++id) {
    DsmNode node;
    node.id = static_cast<int>(id);
    for (int i : found[id].members) node.members.push_back(ix.shop(i));
    for (int g : irredundant_generators(ix, found[id].members)) node.generators.push_back(ix.shop(g));
    node.tag = dsm_complexity_tag(node.members);
    lattice.nodes.push_back(std::move(node));
  }
  for (std::size_t hi = 0; hi < found.size(); ++hi) {
    std::vector<std::size_t> below;
    for (std::size_t lo = 0; lo < found.size(); ++lo)
      if (lo != hi && found[lo].members.size() < found[hi].members.size() &&
          found[lo].bits.subset_of(found[hi].bits))
        below.push_back(lo);
    for (std::size_t lo : below) {
      bool covered = true;
      for (std::size_t mid : below) {
        if (mid != lo && found[lo].members.size() < found[mid].members.size() &&
            found[lo].bits.subset_of(found[mid].bits)) {
          covered = false;
          break;
        }
      }
      if (covered) lattice.covers.emplace_back(static_cast<int>(hi), static_cast<int>(lo));
    }
  }
  return lattice;
}

std::string export_lattice(const DsmLattice& lattice) {
  std::ostringstream out;
  out << "# n=" << lattice.n << " nodes=" << lattice.nodes.size() << "\n";
  for (const DsmNode& node : lattice.nodes) {
    out << "node " << node.id << " " << class_name(node.tag) << " " << node.members.size();
    for (const Shop& g : node.generators) out << " " << g.to_string();
    out << "\n";
  }
  for (auto [hi, lo] : lattice.covers) out << hi << " covers " << lo << "\n";
  return out.str();
}

}  // namespace fomc
