#include "fomc/structure.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "fomc/error.hpp"
#include "fomc/hyper_search.hpp"

namespace fomc {

namespace {

constexpr std::size_t kMaxCells = std::size_t{1} << 24;

bool is_identifier(std::string_view s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

void check_symbols(const std::vector<Symbol>& symbols) {
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (!is_identifier(symbols[i].name)) throw Error("bad relation name: " + symbols[i].name);
    if (symbols[i].arity < 1) throw Error("relation arity must be positive: " + symbols[i].name);
    if (i > 0 && symbols[i - 1].name == symbols[i].name)
      throw Error("duplicate relation: " + symbols[i].name);
  }
}

}  // namespace

Signature::Signature(std::initializer_list<Symbol> symbols)
    : Signature(std::vector<Symbol>(symbols)) {}

Signature::Signature(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {
  std::sort(symbols_.begin(), symbols_.end());
  check_symbols(symbols_);
}

std::optional<std::size_t> Signature::find(std::string_view name) const {
  auto it = std::lower_bound(symbols_.begin(), symbols_.end(), name,
                             [](const Symbol& s, std::string_view n) { return s.name < n; });
  if (it == symbols_.end() || it->name != name) return std::nullopt;
  return static_cast<std::size_t>(it - symbols_.begin());
}

std::size_t Signature::index_of(std::string_view name) const {
  auto i = find(name);
  if (!i) throw SignatureMismatch("unknown relation symbol: " + std::string(name));
  return *i;
}

Relation::Relation(int domain_size, int arity) : domain_size_(domain_size), arity_(arity) {
  std::size_t cells = 1;
  for (int i = 0; i < arity; ++i) {
    cells *= static_cast<std::size_t>(domain_size);
    if (cells > kMaxCells) throw SizeLimitExceeded("relation table too large");
  }
  member_.assign(cells, false);
}

std::size_t Relation::index(std::span<const Element> t) const {
  std::size_t idx = 0;
  for (Element e : t) idx = idx * static_cast<std::size_t>(domain_size_) + static_cast<std::size_t>(e);
  return idx;
}

void Relation::insert(std::span<const Element> t) {
  if (static_cast<int>(t.size()) != arity_) throw SignatureMismatch("tuple has wrong arity");
  for (Element e : t)
    if (e < 0 || e >= domain_size_) throw Error("tuple element outside domain");
  std::size_t idx = index(t);
  if (member_[idx]) return;
  member_[idx] = true;
  Tuple tuple(t.begin(), t.end());
  tuples_.insert(std::lower_bound(tuples_.begin(), tuples_.end(), tuple), std::move(tuple));
}

Structure::Structure(int domain_size, Signature signature)
    : domain_size_(domain_size), signature_(std::move(signature)) {
  if (domain_size < 1 || domain_size > kMaxDomain)
    throw SizeLimitExceeded("domain size must be between 1 and " + std::to_string(kMaxDomain));
  for (const Symbol& sym : signature_.symbols()) relations_.emplace_back(domain_size, sym.arity);
}

void Structure::add(std::string_view name, std::span<const Element> t) {
  relations_[signature_.index_of(name)].insert(t);
}

std::size_t Structure::tuple_count() const {
  std::size_t n = 0;
  for (const Relation& r : relations_) n += r.size();
  return n;
}

Structure complement(const Structure& s) {
  Structure out(s.size(), s.signature());
  for (std::size_t i = 0; i < s.signature().size(); ++i) {
    const Relation& r = s.relation(i);
    for_each_tuple(s.size(), r.arity(), [&](const Tuple& t) {
      if (!r.contains(t)) out.relation(i).insert(t);
    });
  }
  return out;
}

Structure disjoint_union(const Structure& s, const Structure& t) {
  if (!(s.signature() == t.signature())) throw SignatureMismatch("signatures differ");
  Structure out(s.size() + t.size(), s.signature());
  for (std::size_t i = 0; i < s.signature().size(); ++i) {
    for (const Tuple& tup : s.relation(i).tuples()) out.relation(i).insert(tup);
    for (Tuple tup : t.relation(i).tuples()) {
      for (Element& e : tup) e += s.size();
      out.relation(i).insert(tup);
    }
  }
  return out;
}

Structure induced_substructure(const Structure& s, ElementSet keep) {
  keep &= s.domain();
  if (keep.empty()) throw Error("induced substructure on empty set");
  std::vector<Element> renum(s.size(), -1);
  int next = 0;
  for (Element e : keep) renum[e] = next++;
  Structure out(next, s.signature());
  for (std::size_t i = 0; i < s.signature().size(); ++i) {
    for (const Tuple& t : s.relation(i).tuples()) {
      Tuple u;
      bool inside = true;
      for (Element e : t) {
        if (renum[e] < 0) {
          inside = false;
          break;
        }
        u.push_back(renum[e]);
      }
      if (inside) out.relation(i).insert(u);
    }
  }
  return out;
}

Structure relabel(const Structure& s, const std::vector<Element>& perm) {
  Structure out(s.size(), s.signature());
  for (std::size_t i = 0; i < s.signature().size(); ++i) {
    for (Tuple t : s.relation(i).tuples()) {
      for (Element& e : t) e = perm[e];
      out.relation(i).insert(t);
    }
  }
  return out;
}

namespace {

bool interchangeable(const Structure& s, Element a, Element b) {
  for (std::size_t i = 0; i < s.signature().size(); ++i) {
    const Relation& r = s.relation(i);
    int arity = r.arity();
    for (int pos = 0; pos < arity; ++pos) {
      bool same = true;
      for_each_tuple(s.size(), arity - 1, [&](const Tuple& rest) {
        if (!same) return;
        Tuple ta(rest.begin(), rest.begin() + pos);
        ta.push_back(a);
        ta.insert(ta.end(), rest.begin() + pos, rest.end());
        Tuple tb = ta;
        tb[pos] = b;
        if (r.contains(ta) != r.contains(tb)) same = false;
      });
      if (!same) return false;
    }
  }
  return true;
}

}  // namespace

std::vector<int> sim_classes(const Structure& s) {
  std::vector<int> cls(s.size(), -1);
  std::vector<Element> reps;
  for (Element a = 0; a < s.size(); ++a) {
    for (std::size_t c = 0; c < reps.size(); ++c) {
      if (interchangeable(s, reps[c], a)) {
        cls[a] = static_cast<int>(c);
        break;
      }
    }
    if (cls[a] < 0) {
      cls[a] = static_cast<int>(reps.size());
      reps.push_back(a);
    }
  }
  return cls;
}

Structure quotient_by_sim(const Structure& s) {
  auto cls = sim_classes(s);
  int k = *std::max_element(cls.begin(), cls.end()) + 1;
  Structure out(k, s.signature());
  for (std::size_t i = 0; i < s.signature().size(); ++i) {
    for (Tuple t : s.relation(i).tuples()) {
      for (Element& e : t) e = cls[e];
      out.relation(i).insert(t);
    }
  }
  return out;
}

std::optional<HyperMap> find_morphism(const Structure& a, const Structure& b, MorphismKind kind) {
  if (!(a.signature() == b.signature())) throw SignatureMismatch("signatures differ");
  HyperSearch p;
  p.source = &a;
  p.target = &b;
  bool hyper = kind == MorphismKind::surjectiveHyper;
  p.candidates.assign(a.size(), hyper ? subset_candidates(b.size()) : singleton_candidates(b.size()));
  switch (kind) {
    case MorphismKind::homomorphism:
      break;
    case MorphismKind::injectiveHomomorphism:
      p.disjoint = true;
      break;
    case MorphismKind::fullHomomorphism:
      p.full = true;
      break;
    case MorphismKind::fullSurjective:
      p.full = true;
      p.cover_sources = a.domain();
      break;
    case MorphismKind::surjectiveHyper:
      p.cover_sources = a.domain();
      break;
  }
  return first_hypermap(p);
}

namespace {

std::vector<std::vector<int>> degree_profiles(const Structure& s) {
  std::vector<std::vector<int>> prof(s.size());
  for (std::size_t i = 0; i < s.signature().size(); ++i) {
    const Relation& r = s.relation(i);
    std::vector<std::vector<int>> counts(s.size(), std::vector<int>(r.arity(), 0));
    for (const Tuple& t : r.tuples())
      for (int pos = 0; pos < r.arity(); ++pos) ++counts[t[pos]][pos];
    for (Element e = 0; e < s.size(); ++e)
      prof[e].insert(prof[e].end(), counts[e].begin(), counts[e].end());
  }
  return prof;
}

}  // namespace

bool are_isomorphic(const Structure& a, const Structure& b) {
  if (a.size() != b.size() || !(a.signature() == b.signature())) return false;
  for (std::size_t i = 0; i < a.signature().size(); ++i)
    if (a.relation(i).size() != b.relation(i).size()) return false;
  auto pa = degree_profiles(a);
  auto pb = degree_profiles(b);
  HyperSearch p;
  p.source = &a;
  p.target = &b;
  p.full = true;
  p.disjoint = true;
  p.candidates.resize(a.size());
  for (Element x = 0; x < a.size(); ++x)
    for (Element y = 0; y < b.size(); ++y)
      if (pa[x] == pb[y]) p.candidates[x].push_back(ElementSet::singleton(y));
  return first_hypermap(p).has_value();
}

bool closed_under_operation(const Structure& s, int arity, const std::vector<Element>& table) {
  for (std::size_t i = 0; i < s.signature().size(); ++i) {
    const Relation& r = s.relation(i);
    const auto& tuples = r.tuples();
    if (tuples.empty()) continue;
    std::vector<std::size_t> pick(arity, 0);
    Tuple result(r.arity());
    while (true) {
      for (int pos = 0; pos < r.arity(); ++pos) {
        std::size_t idx = 0;
        for (int k = 0; k < arity; ++k)
          idx = idx * static_cast<std::size_t>(s.size()) + static_cast<std::size_t>(tuples[pick[k]][pos]);
        result[pos] = table[idx];
      }
      if (!r.contains(result)) return false;
      int k = arity - 1;
      while (k >= 0 && pick[k] + 1 == tuples.size()) pick[k--] = 0;
      if (k < 0) break;
      ++pick[k];
    }
  }
  return true;
}

namespace {

std::vector<std::string> split_words(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> words;
  std::string w;
  while (in >> w) words.push_back(w);
  return words;
}

int parse_int(const std::string& w, int line) {
  if (w.empty() || !std::all_of(w.begin(), w.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    throw ParseError(line, 1, "expected a number, got '" + w + "'");
  if (w.size() > 6) throw ParseError(line, 1, "number too large: " + w);
  return std::stoi(w);
}

}  // namespace

NamedStructure read_structure(std::istream& in) {
  std::string name;
  int domain = -1;
  std::vector<Symbol> symbols;
  std::vector<std::vector<std::pair<int, Tuple>>> blocks;
  bool ended = false;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto words = split_words(line);
    if (words.empty()) continue;
    if (ended) throw ParseError(lineno, 1, "content after 'end'");
    if (name.empty()) {
      if (words.size() != 2 || words[0] != "structure")
        throw ParseError(lineno, 1, "expected 'structure <name>'");
      name = words[1];
      continue;
    }
    if (domain < 0) {
      if (words.size() != 2 || words[0] != "domain")
        throw ParseError(lineno, 1, "expected 'domain <n>'");
      domain = parse_int(words[1], lineno);
      if (domain < 1 || domain > kMaxDomain) throw ParseError(lineno, 8, "domain size out of range");
      continue;
    }
    if (words[0] == "end") {
      if (words.size() != 1) throw ParseError(lineno, 1, "unexpected text after 'end'");
      ended = true;
      continue;
    }
    if (words[0] == "relation") {
      if (words.size() != 2) throw ParseError(lineno, 1, "expected 'relation <Name>/<arity>'");
      auto slash = words[1].find('/');
      if (slash == std::string::npos) throw ParseError(lineno, 10, "expected 'Name/arity'");
      std::string rname = words[1].substr(0, slash);
      if (!is_identifier(rname)) throw ParseError(lineno, 10, "bad relation name '" + rname + "'");
      int arity = parse_int(words[1].substr(slash + 1), lineno);
      if (arity < 1) throw ParseError(lineno, 10, "arity must be positive");
      for (const Symbol& s : symbols)
        if (s.name == rname) throw ParseError(lineno, 10, "duplicate relation '" + rname + "'");
      symbols.push_back({rname, arity});
      blocks.emplace_back();
      continue;
    }
    if (symbols.empty()) throw ParseError(lineno, 1, "tuple before any relation");
    Tuple t;
    for (const auto& w : words) {
      int e = parse_int(w, lineno);
      if (e >= domain) throw ParseError(lineno, 1, "element " + w + " outside domain");
      t.push_back(e);
    }
    if (static_cast<int>(t.size()) != symbols.back().arity)
      throw ParseError(lineno, 1, "tuple arity does not match " + symbols.back().name);
    blocks.back().emplace_back(lineno, std::move(t));
  }
  if (name.empty() || domain < 0) throw ParseError(lineno + 1, 1, "missing header");
  if (!ended) throw ParseError(lineno + 1, 1, "missing 'end'");
  Structure s(domain, Signature(symbols));
  for (std::size_t i = 0; i < symbols.size(); ++i)
    for (const auto& entry : blocks[i]) s.add(symbols[i].name, entry.second);
  return {name, std::move(s)};
}

NamedStructure read_structure_file(const std::string& path) {
  if (path == "-") return read_structure(std::cin);
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return read_structure(in);
}

void write_structure(std::ostream& out, const std::string& name, const Structure& s) {
  out << "structure " << name << "\n";
  out << "domain " << s.size() << "\n";
  for (std::size_t i = 0; i < s.signature().size(); ++i) {
    out << "relation " << s.signature()[i].name << "/" << s.signature()[i].arity << "\n";
    for (const Tuple& t : s.relation(i).tuples()) {
      for (std::size_t k = 0; k < t.size(); ++k) out << (k ? " " : "") << t[k];
      out << "\n";
    }
  }
  out << "end\n";
}

std::string structure_to_string(const std::string& name, const Structure& s) {
  std::ostringstream out;
  write_structure(out, name, s);
  return out.str();
}

}  // namespace fomc
