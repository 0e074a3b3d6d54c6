#include "fomc/hyper_search.hpp"

#include <algorithm>
#include <numeric>

#include "fomc/error.hpp"

namespace fomc {

namespace {

struct Constraint {
  const Relation* rel;
  Tuple src;
  bool positive;
};

// Every combination drawn from sets[0] x ... x sets[k-1] is (positive) or is
// not (negative) a tuple of rel.
bool product_ok(const Relation& rel, const std::vector<ElementSet>& sets, bool positive) {
  const int k = static_cast<int>(sets.size());
  std::vector<ElementSet::iterator> it(k);
  Tuple t(k);
  for (int i = 0; i < k; ++i) {
    if (sets[i].empty()) return true;
    it[i] = sets[i].begin();
    t[i] = *it[i];
  }
  while (true) {
    if (rel.contains(t) != positive) return false;
    int i = k - 1;
    while (i >= 0) {
      ++it[i];
      if (it[i] != sets[i].end()) {
        t[i] = *it[i];
        break;
      }
      it[i] = sets[i].begin();
      t[i] = *it[i];
      --i;
    }
    if (i < 0) return true;
  }
}

bool constraint_ok(const Constraint& c, const std::vector<ElementSet>& images) {
  std::vector<ElementSet> sets(c.src.size());
  for (std::size_t i = 0; i < c.src.size(); ++i) sets[i] = images[c.src[i]];
  return product_ok(*c.rel, sets, c.positive);
}

// Can the other elements of c be given single values (drawn from their
// remaining options) so that c holds with `a` mapped to s?
bool viable(const Constraint& c, Element a, ElementSet s, const std::vector<ElementSet>& options) {
  std::vector<Element> others;
  for (Element e : c.src)
    if (e != a && std::find(others.begin(), others.end(), e) == others.end()) others.push_back(e);
  std::vector<ElementSet> local(options.size());
  local[a] = s;
  std::vector<ElementSet::iterator> it(others.size());
  for (std::size_t i = 0; i < others.size(); ++i) {
    if (options[others[i]].empty()) return false;
    it[i] = options[others[i]].begin();
  }
  while (true) {
    for (std::size_t i = 0; i < others.size(); ++i) local[others[i]] = ElementSet::singleton(*it[i]);
    if (constraint_ok(c, local)) return true;
    std::size_t i = others.size();
    while (i > 0) {
      --i;
      ++it[i];
      if (it[i] != options[others[i]].end()) break;
      it[i] = options[others[i]].begin();
      if (i == 0) return false;
    }
    if (others.empty()) return false;
  }
}

class Searcher {
 public:
  Searcher(const HyperSearch& p, const std::function<bool(const HyperMap&)>& visit)
      : p_(p), visit_(visit), n_(p.source->size()), full_target_(ElementSet::full(p.target->size())) {}

  void run() {
    if (!(p_.source->signature() == p_.target->signature()))
      throw SignatureMismatch("source and target signatures differ");
    if (static_cast<int>(p_.candidates.size()) != n_)
      throw Error("candidate lists do not match source size");
    cands_ = p_.candidates;
    build_constraints();
    prefilter();
    for (const auto& c : cands_)
      if (c.empty()) return;
    plan();
    images_.assign(n_, ElementSet());
    dfs(0, ElementSet(), ElementSet());
  }

 private:
  void build_constraints() {
    const Structure& a = *p_.source;
    const Structure& b = *p_.target;
    for (std::size_t i = 0; i < a.signature().size(); ++i) {
      const Relation& ra = a.relation(i);
      const Relation& rb = b.relation(i);
      if (p_.full) {
        for_each_tuple(a.size(), ra.arity(), [&](const Tuple& t) {
          constraints_.push_back({&rb, t, ra.contains(t)});
        });
      } else {
        for (const Tuple& t : ra.tuples()) constraints_.push_back({&rb, t, true});
      }
    }
    by_element_.assign(n_, {});
    for (std::size_t ci = 0; ci < constraints_.size(); ++ci) {
      std::vector<Element> seen;
      for (Element e : constraints_[ci].src) {
        if (std::find(seen.begin(), seen.end(), e) != seen.end()) continue;
        seen.push_back(e);
        by_element_[e].push_back(ci);
      }
    }
  }

  void prefilter() {
    bool changed = true;
    while (changed) {
      changed = false;
      std::vector<ElementSet> options(n_);
      for (int a = 0; a < n_; ++a)
        for (ElementSet s : cands_[a]) options[a] |= s;
      for (int a = 0; a < n_; ++a) {
        std::vector<ElementSet> kept;
        for (ElementSet s : cands_[a]) {
          bool ok = true;
          for (std::size_t ci : by_element_[a]) {
            if (!viable(constraints_[ci], a, s, options)) {
              ok = false;
              break;
            }
          }
          if (ok) kept.push_back(s);
        }
        if (kept.size() != cands_[a].size()) {
          cands_[a] = std::move(kept);
          changed = true;
        }
      }
    }
  }

  void plan() {
    order_.resize(n_);
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(), [&](Element x, Element y) {
      return by_element_[x].size() > by_element_[y].size();
    });
    std::vector<int> pos(n_);
    for (int d = 0; d < n_; ++d) pos[order_[d]] = d;
    checks_at_.assign(n_, {});
    for (std::size_t ci = 0; ci < constraints_.size(); ++ci) {
      int last = 0;
      for (Element e : constraints_[ci].src) last = std::max(last, pos[e]);
      checks_at_[last].push_back(ci);
    }
    potential_.assign(n_ + 1, ElementSet());
    for (int d = n_ - 1; d >= 0; --d) {
      ElementSet u;
      if (p_.cover_sources.contains(order_[d]))
        for (ElementSet s : cands_[order_[d]]) u |= s;
      potential_[d] = potential_[d + 1] | u;
    }
  }

  bool dfs(int depth, ElementSet covered, ElementSet used) {
    if (!p_.cover_sources.empty() && (covered | potential_[depth]) != full_target_) return true;
    if (depth == n_) return visit_(HyperMap(p_.target->size(), images_));
    Element a = order_[depth];
    bool covers = p_.cover_sources.contains(a);
    for (ElementSet s : cands_[a]) {
      if (p_.disjoint && !(s & used).empty()) continue;
      images_[a] = s;
      bool ok = true;
      for (std::size_t ci : checks_at_[depth]) {
        if (!constraint_ok(constraints_[ci], images_)) {
          ok = false;
          break;
        }
      }
      if (ok && !dfs(depth + 1, covers ? (covered | s) : covered, used | s)) {
        images_[a] = ElementSet();
        return false;
      }
    }
    images_[a] = ElementSet();
    return true;
  }

  const HyperSearch& p_;
  const std::function<bool(const HyperMap&)>& visit_;
  int n_;
  ElementSet full_target_;
  std::vector<std::vector<ElementSet>> cands_;
  std::vector<Constraint> constraints_;
  std::vector<std::vector<std::size_t>> by_element_;
  std::vector<Element> order_;
  std::vector<std::vector<std::size_t>> checks_at_;
  std::vector<ElementSet> potential_;
  std::vector<ElementSet> images_;
};

}  // namespace

std::vector<ElementSet> singleton_candidates(int target_size) {
  std::vector<ElementSet> out;
  for (Element e = 0; e < target_size; ++e) out.push_back(ElementSet::singleton(e));
  return out;
}

std::vector<ElementSet> subset_candidates(int target_size) {
  std::vector<ElementSet> out;
  for (std::uint32_t m = 1; m <= ElementSet::full(target_size).bits(); ++m) out.emplace_back(m);
  return out;
}

void search_hypermaps(const HyperSearch& problem,
                      const std::function<bool(const HyperMap&)>& visit) {
  Searcher(problem, visit).run();
}

std::optional<HyperMap> first_hypermap(const HyperSearch& problem) {
  std::optional<HyperMap> found;
  search_hypermaps(problem, [&](const HyperMap& f) {
    found = f;
    return false;
  });
  return found;
}

bool maps_into(const HyperMap& f, const Structure& source, const Structure& target) {
  if (!(source.signature() == target.signature())) throw SignatureMismatch("signatures differ");
  for (std::size_t i = 0; i < source.signature().size(); ++i) {
    for (const Tuple& t : source.relation(i).tuples()) {
      std::vector<ElementSet> sets(t.size());
      for (std::size_t k = 0; k < t.size(); ++k) sets[k] = f.image(t[k]);
      if (!product_ok(target.relation(i), sets, true)) return false;
    }
  }
  return true;
}

}  // namespace fomc
