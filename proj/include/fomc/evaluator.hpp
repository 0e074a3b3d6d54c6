#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "fomc/formula.hpp"
#include "fomc/structure.hpp"

namespace fomc {

using Valuation = std::map<std::string, Element>;

bool evaluate(const Structure& s, const Formula& f, const Valuation& free = {});

// Game-style certificate. For a true subformula the verifier fixes the
// witness of every exists and the chosen disjunct and lists every branch of
// forall and and; a false subformula is certified dually.
struct TraceNode {
  int choice = -1;  // chosen element or child index; -1 when every branch is listed
  std::vector<TraceNode> children;
};

struct Trace {
  bool value = false;
  TraceNode root;
};

Trace evaluate_with_trace(const Structure& s, const Formula& f);
// Re-derives the verdict from the trace alone, checking every recorded move.
// Throws Error when the trace does not certify its claimed value.
bool replay_trace(const Structure& s, const Formula& f, const Trace& t);

// Every sentence of the fragment true in a is true in b.
bool contained_in(const Structure& a, const Structure& b, CanonicalKind fragment);

struct SamplerOptions {
  FragmentKey fragment{true, true, true, true, false, false, false};
  int max_depth = 5;
  int max_quantifiers = 4;
};

Formula random_sentence(const Signature& sig, std::mt19937_64& rng, const SamplerOptions& opts = {});

struct RelativisationFailure {
  std::string sentence;
  RelativiseMode mode;
  bool plain;
  bool relativised;
};

struct RelativisationReport {
  int samples = 0;
  std::vector<RelativisationFailure> failures;
};

RelativisationReport check_relativisation(const Structure& s, ElementSet u, ElementSet x, int samples,
                                          std::uint64_t seed);

std::string mode_name(RelativiseMode mode);

}  // namespace fomc
