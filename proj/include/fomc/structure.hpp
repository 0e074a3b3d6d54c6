#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fomc/element_set.hpp"
#include "fomc/hypermap.hpp"

namespace fomc {

struct Symbol {
  std::string name;
  int arity = 0;

  bool operator==(const Symbol&) const = default;
  auto operator<=>(const Symbol&) const = default;
};

// Symbols are kept sorted by name so that two signatures with the same
// symbols compare equal regardless of declaration order.
class Signature {
 public:
  Signature() = default;
  Signature(std::initializer_list<Symbol> symbols);
  explicit Signature(std::vector<Symbol> symbols);

  const std::vector<Symbol>& symbols() const { return symbols_; }
  std::size_t size() const { return symbols_.size(); }
  const Symbol& operator[](std::size_t i) const { return symbols_[i]; }
  std::optional<std::size_t> find(std::string_view name) const;
  std::size_t index_of(std::string_view name) const;  // throws SignatureMismatch

  bool operator==(const Signature&) const = default;

 private:
  std::vector<Symbol> symbols_;
};

using Tuple = std::vector<Element>;

class Relation {
 public:
  Relation(int domain_size, int arity);

  int arity() const { return arity_; }
  std::size_t size() const { return tuples_.size(); }
  bool empty() const { return tuples_.empty(); }
  // Tuples in lexicographic order.
  const std::vector<Tuple>& tuples() const { return tuples_; }

  bool contains(std::span<const Element> t) const { return member_[index(t)]; }
  bool contains_index(std::size_t idx) const { return member_[idx]; }
  void insert(std::span<const Element> t);

  std::size_t index(std::span<const Element> t) const;
  std::size_t cell_count() const { return member_.size(); }

  bool operator==(const Relation& o) const { return arity_ == o.arity_ && member_ == o.member_; }

 private:
  int domain_size_;
  int arity_;
  std::vector<bool> member_;
  std::vector<Tuple> tuples_;
};

class Structure {
 public:
  Structure(int domain_size, Signature signature);

  int size() const { return domain_size_; }
  ElementSet domain() const { return ElementSet::full(domain_size_); }
  const Signature& signature() const { return signature_; }

  const Relation& relation(std::size_t i) const { return relations_[i]; }
  Relation& relation(std::size_t i) { return relations_[i]; }
  const Relation& relation(std::string_view name) const {
    return relations_[signature_.index_of(name)];
  }

  void add(std::string_view name, std::span<const Element> t);
  void add(std::string_view name, std::initializer_list<Element> t) {
    add(name, std::span<const Element>(t.begin(), t.size()));
  }

  std::size_t tuple_count() const;

  bool operator==(const Structure& o) const {
    return domain_size_ == o.domain_size_ && signature_ == o.signature_ &&
           relations_ == o.relations_;
  }

 private:
  int domain_size_;
  Signature signature_;
  std::vector<Relation> relations_;
};

// Calls visit(tuple) for every tuple of D^arity in lexicographic order.
template <typename F>
void for_each_tuple(int domain_size, int arity, F&& visit) {
  Tuple t(arity, 0);
  while (true) {
    visit(static_cast<const Tuple&>(t));
    int i = arity - 1;
    while (i >= 0 && t[i] == domain_size - 1) t[i--] = 0;
    if (i < 0) return;
    ++t[i];
  }
}

Structure complement(const Structure& s);
Structure disjoint_union(const Structure& s, const Structure& t);
// Elements of `keep` are renumbered 0..k-1 in increasing order.
Structure induced_substructure(const Structure& s, ElementSet keep);
// Applies a permutation of the domain: element a becomes perm[a].
Structure relabel(const Structure& s, const std::vector<Element>& perm);

// Class index of every element under interchangeability: x and y are
// equivalent when swapping one for the other in any single coordinate of any
// tuple never changes membership. Classes are numbered by least member.
std::vector<int> sim_classes(const Structure& s);
Structure quotient_by_sim(const Structure& s);

enum class MorphismKind {
  homomorphism,
  injectiveHomomorphism,
  fullHomomorphism,
  fullSurjective,
  surjectiveHyper,
};

// Function witnesses are returned as hyper-maps with singleton images.
std::optional<HyperMap> find_morphism(const Structure& a, const Structure& b, MorphismKind kind);
bool are_isomorphic(const Structure& a, const Structure& b);

// True when every relation is closed under the k-ary operation given by its
// full table, indexed like a relation (first argument most significant).
bool closed_under_operation(const Structure& s, int arity, const std::vector<Element>& table);

struct NamedStructure {
  std::string name;
  Structure structure;
};

NamedStructure read_structure(std::istream& in);
NamedStructure read_structure_file(const std::string& path);  // "-" reads stdin
void write_structure(std::ostream& out, const std::string& name, const Structure& s);
std::string structure_to_string(const std::string& name, const Structure& s);

}  // namespace fomc
