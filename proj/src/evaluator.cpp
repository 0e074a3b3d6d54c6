#include "fomc/evaluator.hpp"

#include <algorithm>

#include "fomc/error.hpp"

namespace fomc {

namespace {

struct Compiled {
  NodeKind kind;
  const Relation* rel = nullptr;
  std::vector<int> slots;
  ElementSet range;
  std::vector<Compiled> children;
};

class Compiler {
 public:
  explicit Compiler(const Structure& s) : s_(s) {}

  int bind_free(const std::string& v) {
    names_.push_back(v);
    return static_cast<int>(names_.size()) - 1;
  }

  Compiled compile(const Formula& f) {
    Compiled c{f.kind, nullptr, {}, {}, {}};
    switch (f.kind) {
      case NodeKind::atom: {
        auto i = s_.signature().find(f.symbol);
        if (!i) throw SignatureMismatch("unknown relation symbol '" + f.symbol + "'");
        c.rel = &s_.relation(*i);
        if (c.rel->arity() != static_cast<int>(f.vars.size()))
          throw SignatureMismatch("arity mismatch for '" + f.symbol + "'");
        for (const auto& v : f.vars) c.slots.push_back(slot(v));
        break;
      }
      case NodeKind::equality:
        for (const auto& v : f.vars) c.slots.push_back(slot(v));
        break;
      case NodeKind::forall:
      case NodeKind::exists: {
        c.range = f.restriction ? *f.restriction : s_.domain();
        if (!c.range.subset_of(s_.domain())) throw Error("quantifier range leaves the domain");
        names_.push_back(f.vars[0]);
        c.slots.push_back(static_cast<int>(names_.size()) - 1);
        max_slots_ = std::max(max_slots_, names_.size());
        c.children.push_back(compile(f.body()));
        names_.pop_back();
        break;
      }
      default:
        for (const Formula& child : f.children) c.children.push_back(compile(child));
    }
    return c;
  }

  std::size_t slot_count() const { return std::max(max_slots_, names_.size()); }

 private:
  int slot(const std::string& v) const {
    for (int i = static_cast<int>(names_.size()) - 1; i >= 0; --i)
      if (names_[i] == v) return i;
    throw Error("unbound variable '" + v + "'");
  }

  const Structure& s_;
  std::vector<std::string> names_;
  std::size_t max_slots_ = 0;
};

bool eval(const Compiled& c, std::vector<Element>& env) {
  switch (c.kind) {
    case NodeKind::truth:
      return true;
    case NodeKind::falsity:
      return false;
    case NodeKind::atom: {
      Element buf[16];
      if (c.slots.size() <= 16) {
        for (std::size_t i = 0; i < c.slots.size(); ++i) buf[i] = env[c.slots[i]];
        return c.rel->contains(std::span<const Element>(buf, c.slots.size()));
      }
      std::vector<Element> t;
      for (int sl : c.slots) t.push_back(env[sl]);
      return c.rel->contains(t);
    }
    case NodeKind::equality:
      return env[c.slots[0]] == env[c.slots[1]];
    case NodeKind::negation:
      return !eval(c.children[0], env);
    case NodeKind::conjunction:
      for (const Compiled& ch : c.children)
        if (!eval(ch, env)) return false;
      return true;
    case NodeKind::disjunction:
      for (const Compiled& ch : c.children)
        if (eval(ch, env)) return true;
      return false;
    case NodeKind::forall:
      for (Element e : c.range) {
        env[c.slots[0]] = e;
        if (!eval(c.children[0], env)) return false;
      }
      return true;
    case NodeKind::exists:
      for (Element e : c.range) {
        env[c.slots[0]] = e;
        if (eval(c.children[0], env)) return true;
      }
      return false;
  }
  return false;
}

struct Prepared {
  Compiled root;
  std::vector<Element> env;
};

Prepared prepare(const Structure& s, const Formula& f, const Valuation& free) {
  Compiler comp(s);
  std::vector<Element> values;
  for (const auto& v : free_variables(f)) {
    auto it = free.find(v);
    if (it == free.end()) throw Error("unbound variable '" + v + "'");
    if (it->second < 0 || it->second >= s.size()) throw Error("value of '" + v + "' outside the domain");
    comp.bind_free(v);
    values.push_back(it->second);
  }
  Compiled root = comp.compile(f);
  std::vector<Element> env(comp.slot_count() + 1, 0);
  std::copy(values.begin(), values.end(), env.begin());
  return {std::move(root), std::move(env)};
}

TraceNode certify(const Compiled& c, std::vector<Element>& env, bool value) {
  TraceNode t;
  switch (c.kind) {
    case NodeKind::negation:
      t.children.push_back(certify(c.children[0], env, !value));
      break;
    case NodeKind::conjunction:
    case NodeKind::disjunction: {
      // A true conjunction or a false disjunction needs every branch.
      bool every = (c.kind == NodeKind::conjunction) == value;
      for (std::size_t i = 0; i < c.children.size(); ++i) {
        if (every) {
          t.children.push_back(certify(c.children[i], env, value));
        } else if (eval(c.children[i], env) == value) {
          t.choice = static_cast<int>(i);
          t.children.push_back(certify(c.children[i], env, value));
          break;
        }
      }
      break;
    }
    case NodeKind::forall:
    case NodeKind::exists: {
      bool every = (c.kind == NodeKind::forall) == value;
      int slot = c.slots[0];
      Element saved = env[slot];
      for (Element e : c.range) {
        env[slot] = e;
        if (every) {
          t.children.push_back(certify(c.children[0], env, value));
        } else if (eval(c.children[0], env) == value) {
          t.choice = e;
          t.children.push_back(certify(c.children[0], env, value));
          break;
        }
      }
      env[slot] = saved;
      break;
    }
    default:
      break;
  }
  return t;
}

void check_move(const Compiled& c, const TraceNode& t, std::vector<Element>& env, bool value) {
  auto bad = [] { throw Error("trace does not certify the claimed value"); };
  switch (c.kind) {
    case NodeKind::truth:
    case NodeKind::falsity:
    case NodeKind::atom:
    case NodeKind::equality:
      if (eval(c, env) != value) bad();
      return;
    case NodeKind::negation:
      if (t.children.size() != 1) bad();
      check_move(c.children[0], t.children[0], env, !value);
      return;
    case NodeKind::conjunction:
    case NodeKind::disjunction: {
      bool every = (c.kind == NodeKind::conjunction) == value;
      if (every) {
        if (t.children.size() != c.children.size()) bad();
        for (std::size_t i = 0; i < c.children.size(); ++i) check_move(c.children[i], t.children[i], env, value);
      } else {
        if (t.choice < 0 || t.choice >= static_cast<int>(c.children.size()) || t.children.size() != 1) bad();
        check_move(c.children[t.choice], t.children[0], env, value);
      }
      return;
    }
    case NodeKind::forall:
    case NodeKind::exists: {
      bool every = (c.kind == NodeKind::forall) == value;
      int slot = c.slots[0];
      Element saved = env[slot];
      if (every) {
        if (static_cast<int>(t.children.size()) != c.range.size()) bad();
        std::size_t i = 0;
        for (Element e : c.range) {
          env[slot] = e;
          check_move(c.children[0], t.children[i++], env, value);
        }
      } else {
        if (t.choice < 0 || !c.range.contains(t.choice) || t.children.size() != 1) bad();
        env[slot] = t.choice;
        check_move(c.children[0], t.children[0], env, value);
      }
      env[slot] = saved;
      return;
    }
  }
}

}  // namespace

bool evaluate(const Structure& s, const Formula& f, const Valuation& free) {
  Prepared p = prepare(s, f, free);
  return eval(p.root, p.env);
}

Trace evaluate_with_trace(const Structure& s, const Formula& f) {
  Prepared p = prepare(s, f, {});
  Trace t;
  t.value = eval(p.root, p.env);
  t.root = certify(p.root, p.env, t.value);
  return t;
}

bool replay_trace(const Structure& s, const Formula& f, const Trace& t) {
  Prepared p = prepare(s, f, {});
  check_move(p.root, t.root, p.env, t.value);
  return t.value;
}

bool contained_in(const Structure& a, const Structure& b, CanonicalKind fragment) {
  switch (fragment) {
    case CanonicalKind::pp:
      return find_morphism(a, b, MorphismKind::homomorphism).has_value();
    case CanonicalKind::ppNeq:
      return find_morphism(a, b, MorphismKind::injectiveHomomorphism).has_value();
    case CanonicalKind::eqfreeNeg:
      return are_isomorphic(quotient_by_sim(a), quotient_by_sim(b));
    case CanonicalKind::posEqfree:
      return find_morphism(a, b, MorphismKind::surjectiveHyper).has_value();
  }
  return false;
}

namespace {

class SentenceSampler {
 public:
  SentenceSampler(const Signature& sig, std::mt19937_64& rng, const SamplerOptions& opts)
      : sig_(sig), rng_(rng), opts_(opts) {}

  Formula sample() {
    quantifiers_ = 0;
    bound_.clear();
    return node(0);
  }

 private:
  std::size_t pick(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }
  bool coin(int percent) { return static_cast<int>(rng_() % 100) < percent; }

  Formula node(int depth) {
    const FragmentKey& k = opts_.fragment;
    bool can_quantify = (k.exists || k.forall) && quantifiers_ < opts_.max_quantifiers;
    bool can_connect = (k.conj || k.disj) && depth < opts_.max_depth;
    if (bound_.empty() || (can_quantify && depth < opts_.max_depth && coin(45))) return quantifier(depth);
    if (can_connect && coin(50)) {
      bool use_and = k.conj && (!k.disj || coin(50));
      std::vector<Formula> parts{node(depth + 1), node(depth + 1)};
      return use_and ? make_and(std::move(parts)) : make_or(std::move(parts));
    }
    return literal();
  }

  Formula quantifier(int depth) {
    const FragmentKey& k = opts_.fragment;
    bool universal = k.forall && (!k.exists || coin(50));
    std::string v = "x" + std::to_string(++quantifiers_);
    bound_.push_back(v);
    Formula body = node(depth + 1);
    bound_.pop_back();
    return universal ? make_forall(v, std::move(body)) : make_exists(v, std::move(body));
  }

  Formula literal() {
    const FragmentKey& k = opts_.fragment;
    std::vector<int> kinds{0};
    if (k.eq) kinds.push_back(1);
    if (k.neq) kinds.push_back(2);
    int kind = kinds[pick(kinds.size())];
    if (kind == 0 && sig_.size() > 0) {
      const Symbol& sym = sig_[pick(sig_.size())];
      std::vector<std::string> args;
      for (int i = 0; i < sym.arity; ++i) args.push_back(bound_[pick(bound_.size())]);
      Formula a = make_atom(sym.name, std::move(args));
      if (k.neg && coin(40)) return make_not(std::move(a));
      return a;
    }
    std::string x = bound_[pick(bound_.size())];
    std::string y = bound_[pick(bound_.size())];
    if (kind == 2) return make_not_equal(x, y);
    return make_equal(x, y);
  }

  const Signature& sig_;
  std::mt19937_64& rng_;
  const SamplerOptions& opts_;
  int quantifiers_ = 0;
  std::vector<std::string> bound_;
};

}  // namespace

Formula random_sentence(const Signature& sig, std::mt19937_64& rng, const SamplerOptions& opts) {
  if (!opts.fragment.exists && !opts.fragment.forall) throw Error("sampler needs a quantifier");
  return SentenceSampler(sig, rng, opts).sample();
}

std::string mode_name(RelativiseMode mode) {
  switch (mode) {
    case RelativiseMode::universalOnly:
      return "universalOnly";
    case RelativiseMode::existentialOnly:
      return "existentialOnly";
    case RelativiseMode::both:
      return "both";
  }
  return "";
}

RelativisationReport check_relativisation(const Structure& s, ElementSet u, ElementSet x, int samples,
                                          std::uint64_t seed) {
  if (u.empty() || x.empty() || !(u | x).subset_of(s.domain()))
    throw Error("U and X must be nonempty subsets of the domain");
  std::mt19937_64 rng(seed);
  RelativisationReport report;
  const RelativiseMode modes[] = {RelativiseMode::universalOnly, RelativiseMode::existentialOnly,
                                  RelativiseMode::both};
  for (int i = 0; i < samples; ++i) {
    Formula f = random_sentence(s.signature(), rng);
    bool plain = evaluate(s, f);
    for (RelativiseMode m : modes) {
      bool rel = evaluate(s, relativise(f, u, x, m));
      if (rel != plain) report.failures.push_back({render(f), m, plain, rel});
    }
    ++report.samples;
  }
  return report;
}

}  // namespace fomc
