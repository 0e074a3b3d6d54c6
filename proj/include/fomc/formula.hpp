#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fomc/element_set.hpp"
#include "fomc/structure.hpp"

namespace fomc {

enum class NodeKind { truth, falsity, atom, equality, negation, conjunction, disjunction, forall, exists };

// Sentence syntax tree. Connectives keep at least two children; the builders
// below collapse the degenerate cases.
struct Formula {
  NodeKind kind = NodeKind::truth;
  std::string symbol;              // atom
  std::vector<std::string> vars;   // atom arguments, equality sides, or the bound variable
  std::optional<ElementSet> restriction;  // quantifiers only
  std::vector<Formula> children;

  bool is_quantifier() const { return kind == NodeKind::forall || kind == NodeKind::exists; }
  const Formula& body() const { return children.front(); }
  bool operator==(const Formula&) const = default;
};

Formula make_true();
Formula make_false();
Formula make_atom(std::string symbol, std::vector<std::string> vars);
Formula make_equal(std::string x, std::string y);
Formula make_not_equal(std::string x, std::string y);
Formula make_not(Formula f);
Formula make_and(std::vector<Formula> children);  // empty -> true, single -> child
Formula make_or(std::vector<Formula> children);   // empty -> false, single -> child
Formula make_forall(std::string var, Formula body, std::optional<ElementSet> restriction = {});
Formula make_exists(std::string var, Formula body, std::optional<ElementSet> restriction = {});

std::size_t node_count(const Formula& f);
std::vector<std::string> free_variables(const Formula& f);

struct ParseOptions {
  // Variables allowed to occur free.
  std::vector<std::string> free_variables;
};

Formula parse_formula(std::string_view text, const ParseOptions& opts = {});
Formula read_formula_file(const std::string& path);  // "-" reads stdin
std::string render(const Formula& f);

// Throws SignatureMismatch for unknown symbols or wrong arities.
void check_signature(const Formula& f, const Signature& sig);

Formula to_nnf(const Formula& f);
// Negation normal form of the negation with relational literals flipped:
// S satisfies f exactly when complement(S) does not satisfy the result.
Formula dualize(const Formula& f);

struct FragmentKey {
  bool exists = false;
  bool forall = false;
  bool conj = false;
  bool disj = false;
  bool eq = false;
  bool neq = false;
  bool neg = false;

  bool operator==(const FragmentKey&) const = default;
  bool contains(const FragmentKey& o) const;
  // "{exists,forall;and,or;=,!=,~}"
  std::string to_string() const;
};

FragmentKey fragment_of(const Formula& f);  // computed on the negation normal form
FragmentKey dual_key(const FragmentKey& k);
// Named keys as used on the command line, including "dual:<key>".
FragmentKey parse_fragment_key(std::string_view name);
std::string fragment_name(const FragmentKey& k);

enum class RelativiseMode { universalOnly, existentialOnly, both };

Formula relativise(const Formula& f, ElementSet u, ElementSet x, RelativiseMode mode);

enum class CanonicalKind { pp, ppNeq, eqfreeNeg, posEqfree };

struct CanonicalOptions {
  int m = -1;  // number of universal variables for posEqfree; defaults to |A|
  std::size_t budget = 1'000'000;
};

Formula canonical_sentence(const Structure& a, CanonicalKind kind, const CanonicalOptions& opts = {});

// x ~ y: every single-coordinate swap between x and y preserves membership.
Formula sim_formula(const Signature& sig, const std::string& x, const std::string& y);

// Positive equality-free formula with free variables u1..uk defining the
// k-ary relation `tuples` over b, or nothing when some hyper-endomorphism of
// b does not preserve it.
std::optional<Formula> defining_formula(const Structure& b, int arity,
                                        const std::vector<Tuple>& tuples,
                                        std::size_t budget = 1'000'000);

}  // namespace fomc
