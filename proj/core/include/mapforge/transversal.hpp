#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "mapforge/map.hpp"
#include "mapforge/orbit.hpp"

namespace mapforge {

// --- small-instance checks (Lemmas 4.1, 4.3, 4.4, 4.8; Prop 4.1.1) -----------

bool minimal_imbalances_equal_transversals_check(const Map& m);  // <= 12 squares
bool max_coboundary_complement_check(const Multigraph& g);       // <= 20 edges
bool imbalance_homology_check(const Map& m);
bool disjoint_odd_polygon_bound_check(const Map& m);  // <= 12 squares

// contractible face subset: boundary is a circuit and every circuit inside
// eR bounds
bool is_contractible(const Map& m, const std::vector<uint32_t>& faces);

// crossing of disjoint cycles via slot interleaving parity at shared vertices
bool cycles_cross(const Map& m, const BitVec& s1, const BitVec& s2);

// --- reducers over an Omega pairing ----------------------------------------------

// A contiguous piece of an Omega member, as a dart sequence. A dart 2k+d
// traverses square k leaving slot 2k+d and arriving at slot 2k+1-d. Degenerate
// paths carry no darts, only the vertex.
struct OmegaSubpath {
  std::vector<uint32_t> darts;
  uint32_t vertex_if_degenerate = UINT32_MAX;  // v-gon index
  bool degenerate() const { return darts.empty(); }
};

struct PreReducer {
  OmegaSubpath pi1, pi2;
};

enum class ReducerKind { type0, type1, type2 };

struct Reducer {
  std::vector<uint32_t> faces;  // f-gon indices
  ReducerKind kind;
  OmegaSubpath p, q;                   // boundary-inducing subpaths (q may be empty)
  std::vector<uint32_t> angular;       // 0..2 v-gon indices
  bool trans = false;
};

std::optional<PreReducer> find_pre_reducer(const Map& m, const OmegaPairing& om);
PreReducer straighten(const Map& m, const OmegaPairing& om, PreReducer pre);
Reducer reducer_from_straight(const Map& m, const OmegaPairing& om, const PreReducer& pre);
Reducer to_transreducer(const Map& m, const OmegaPairing& om, const Reducer& red);
OmegaPairing split_transreducer(const Map& m, const OmegaPairing& om, const Reducer& tr);

// --- PROJMINMAX --------------------------------------------------------------------

struct TransversalCertificate {
  // pairwise edge-disjoint r-circuits of M^t, as edge subsets of G_M
  std::vector<BitVec> omega0;
  // an r-circuit of the dual, = a minimum transversal / minimal imbalance
  BitVec r0;
  std::size_t size() const { return omega0.size(); }
};

struct SplitEvent {
  Map before;            // materialized map prior to this split
  Map after;             // after the split surgery
  Reducer transreducer;  // in terms of `before`
};

struct ProjMinMaxOptions {
  // observer invoked after every split with the materialized states
  std::function<void(const SplitEvent&)> on_split;
  std::size_t* split_count = nullptr;  // out: number of splits performed
};

TransversalCertificate projminmax(const Map& m0, const ProjMinMaxOptions& opts = {});

struct GeneralTransversal {
  std::size_t minimum = 0;
  // witness circuits in the doubled map, mapped back to original edge labels;
  // each original edge used at most twice across the collection
  std::vector<std::vector<std::string>> witness;
};

GeneralTransversal min_transversal_general(const Map& m);

// minimum Hamming weight over the imbalance coset I0 + V (dim V <= 24)
std::size_t oracle_min_transversal(const Map& m);
BitVec oracle_min_imbalance(const Map& m);  // a witness of minimum weight

// minimum-cardinality circuit of g with odd overlap against `parity`
// (bipartite-double-cover search); nullopt if none exists
std::optional<BitVec> min_odd_circuit(const Multigraph& g, const BitVec& parity);

// all circuits of g with at most max_len edges (enumeration helper for tests)
std::vector<BitVec> enumerate_circuits(const Multigraph& g, std::size_t max_len);

}  // namespace mapforge
