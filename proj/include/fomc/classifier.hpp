#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fomc/formula.hpp"
#include "fomc/structure.hpp"

namespace fomc {

enum class ComplexityClass { inL, inP, npComplete, coNpComplete, pspaceComplete, open };

enum class OpenTag { none, cspDichotomyConjecture, qcspClassification };

struct Verdict {
  FragmentKey fragment;
  ComplexityClass cls = ComplexityClass::open;
  OpenTag open = OpenTag::none;
  std::vector<std::pair<std::string, std::string>> evidence;

  std::string evidence_value(const std::string& key) const;
};

std::string class_name(ComplexityClass c);
std::string open_tag_name(OpenTag t);

// Model checking for positive equality-free sentences: L, NP-complete,
// coNP-complete or Pspace-complete, decided by A-shops and E-shops.
Verdict classify_pos_eqfree(const Structure& s);
Verdict classify_fragment(const Structure& s, const FragmentKey& fragment);

struct SchaeferProfile {
  bool zero_valid = false;
  bool one_valid = false;
  bool horn = false;
  bool dual_horn = false;
  bool bijunctive = false;
  bool affine = false;
};

// Boolean structures only.
SchaeferProfile boolean_schaefer(const Structure& s);

}  // namespace fomc
