#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fomc/formula.hpp"
#include "fomc/shop.hpp"
#include "fomc/structure.hpp"

namespace fomc {

enum class GadgetKind { Kn, KnReflexive, KompleteBipartite, BNAE, OneElement, G, Dhat, GV, SG };

struct GadgetSpec {
  GadgetKind kind;
  std::vector<int> params;
  std::optional<Structure> graph;  // SG only
};

GadgetKind parse_gadget_kind(const std::string& name);
std::string gadget_name(GadgetKind kind);

Structure make_gadget(const GadgetSpec& spec);

Structure make_clique(int n, bool loops);
Structure make_complete_bipartite(int a, int b);
Structure make_bnae();
Structure make_one_element();
// U = {0..j-1}, X = {j..j+k-1}; u in U and x in X are absolute elements.
Structure make_g(int j, int k, Element u, Element x);
Structure make_dhat(int j, int k);
// Colours 0,1,2, then u = 3, then v_1..v_s = 4..3+s.
Structure make_gv(int s);
Structure make_sg(const Structure& graph);

// The shop of GV(s) fixing colours, sending u everywhere and each v_i to the colours.
Shop gv_spray(int s);

Formula reduce_nae_to_k2(const Formula& f);

enum class ReductionKind { g, dhat };

struct ReductionTarget {
  ReductionKind kind = ReductionKind::g;
  int j = 2;
  int k = 2;
  Element u = 0;  // G only
  Element x = 2;  // G only
};

Structure reduction_structure(const ReductionTarget& t);
// Prenex sentence over NAE with quantifiers and conjunction only.
Formula reduce_qcsp_nae_to_gadget(const Formula& f, const ReductionTarget& t = {});

Structure meta_reduction(const Structure& graph);

}  // namespace fomc
