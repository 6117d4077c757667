#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mapforge/map.hpp"
#include "mapforge/multigraph.hpp"

namespace mapforge {

// Cyclic symbol sequence in which every symbol occurs exactly twice.
struct GaussCode {
  std::vector<std::string> seq;
  std::vector<std::string> symbols() const;  // sorted, unique
};

GaussCode make_gauss_code(std::vector<std::string> seq);  // validates counts

struct ColoredGaussCode {
  GaussCode code;
  std::vector<std::string> black;  // subset of symbols; white = complement
  std::vector<std::string> white() const;
};

ColoredGaussCode color_code(GaussCode code, std::vector<std::string> black);
ColoredGaussCode swap_colors(const ColoredGaussCode& c);  // the antimap's coloring

// interlace graph I_X: vertices = symbols, edges = interlaced pairs
Multigraph interlace(const GaussCode& x);

struct OddEvenSplit {
  std::vector<std::string> odd;   // |i_X(y)| odd
  std::vector<std::string> even;
};
OddEvenSplit odd_even_split(const GaussCode& x);

// identify the 2-colored code with a one-v-gon map: v-ordering = seq,
// imbalance = the white symbols
Map code_to_map(const ColoredGaussCode& c);

// crossing function c_X = i_X + t_X as a symmetric GF(2) matrix over symbols
struct CrossingFunction {
  std::vector<std::string> symbols;   // sorted
  std::vector<BitVec> columns;        // c(symbol j), over the symbol ground
  std::vector<BitVec> interlace_col;  // i(symbol j)
  BitVec t_diag;                      // black indicator

  BitVec apply(const BitVec& v) const;
  std::size_t rank() const;
};

CrossingFunction crossing_function(const ColoredGaussCode& c);
// composite c_{P~} o c_P = c_P + c_P^2 applied columnwise
std::vector<BitVec> composite_columns(const CrossingFunction& cf);
std::size_t composite_rank(const CrossingFunction& cf);

// xi = rank(c_{P~} o c_P); orientable iff the interlace graph is eulerian
SurfaceClass surface_of_coloring(const ColoredGaussCode& c);

struct Realization {
  std::vector<std::string> black;
  SurfaceClass surface;
};

struct RealizationSet {
  // the coboundary target T inside the interlace graph
  std::vector<std::pair<std::string, std::string>> t_edges;
  std::vector<Realization> colorings;
};

// all 2-colorings realizing x in a surface of connectivity <= 1, if any
std::optional<RealizationSet> realize_xi_le_1(const GaussCode& x);

bool rosenstiehl_planar(const GaussCode& x);
bool eq_condition_holds(const ColoredGaussCode& c);

// --- path merging (graph -> single smooth path) -----------------------------

struct MergeLedgerEntry {
  std::string edge;           // replaced crossing
  std::string first, second;  // the digon pair that replaced it
};

struct MergedCode {
  GaussCode code;
  std::vector<MergeLedgerEntry> ledger;
};

// Rotations: one cyclic sequence of edge labels per vertex (each edge label
// appearing twice overall). Repeatedly merges two cyclic sequences at a
// non-loop crossing until a single sequence remains.
MergedCode merge_to_single_path(const std::vector<std::vector<std::string>>& rotations);

// undo one merge step on a collection of cyclic sequences
std::vector<std::vector<std::string>> split_merged_crossing(
    const std::vector<std::vector<std::string>>& seqs, const MergeLedgerEntry& entry);

// --- reflexivity --------------------------------------------------------------

struct SignedSymbol {
  std::string symbol;
  bool positive;
};

// head/tail identification digraph of a signed doubled cyclic sequence
Multigraph omega_digraph(const std::vector<SignedSymbol>& pi);

// cyclic edge path in l (as an alternating vertex/edge walk) using each edge
// twice; reflexive iff omega of its signed sequence reproduces l
struct EdgeWalk {
  std::vector<uint32_t> vertices;  // v0, v1, ..., v_{k-1} (cyclic)
  std::vector<uint32_t> edges;     // edge i runs v_i -> v_{i+1}
  std::vector<uint8_t> from_end;   // half-edge left through (disambiguates loops)
};

bool is_reflexive(const Multigraph& l, const EdgeWalk& walk);
std::vector<SignedSymbol> signed_sequence(const Multigraph& l, const EdgeWalk& walk);

// the zigzag walk of a one-zigzag map, as a walk in G_M
EdgeWalk zigzag_walk(const Map& m);

// --- families and oracles ---------------------------------------------------------

GaussCode pn_code(std::size_t n);  // (1,...,n,1,...,n)

struct OracleRealization {
  std::vector<std::string> black;
  SurfaceClass surface;
};

// exhaustive coloring sweep; minimal-xi witness within max_xi, if any
std::optional<OracleRealization> oracle_realize(const GaussCode& x, int max_xi);

}  // namespace mapforge
