#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "mapforge/map.hpp"

namespace mapforge {

// The six-map orbit Gamma(M): drop one of the matchings {v, f, z} of the
// 4-regular graph Q_M = C_M + z_M and order the remaining two.
enum class GammaMember { map, dual, antidual, phial, antiphial, antimap };

const char* gamma_name(GammaMember t);
std::array<GammaMember, 6> gamma_members();

struct GammaResult {
  Map map;
  // corner correspondence: new corner index -> corner of the source map
  std::vector<uint32_t> new_to_old;
};

GammaResult gamma_with_correspondence(const Map& m, GammaMember tag);
Map gamma(const Map& m, GammaMember tag);

// Graph induced by the map: vertices are v-gons, edges are squares. Edge k
// keeps label m.labels()[k].
Multigraph induced_graph(const Map& m);
Multigraph dual_graph(const Map& m);   // induced graph of the dual (vertices = f-gons)
Multigraph phial_graph(const Map& m);  // induced graph of the phial (vertices = z-gons)

// --- edges of the cubic graph C_M -----------------------------------------

// An edge subset of C_M is a bit vector of size 3 * corner_count indexed by
// family * corner_count + min_corner_of_pair.
enum class CFam : uint32_t { v = 0, f = 1, a = 2 };

std::size_t cedge_index(const Map& m, CFam fam, uint32_t corner);
BitVec cedge_empty(const Map& m);
void cedge_flip(const Map& m, BitVec& s, CFam fam, uint32_t corner);
bool cedge_test(const Map& m, const BitVec& s, CFam fam, uint32_t corner);
std::size_t cedge_size(const BitVec& s);  // number of edges in the subset
bool is_cm_cycle(const Map& m, const BitVec& s);

// psi^M_c: squares meeting s in exactly one f-edge. s must be a cycle of C_M.
BitVec psi_c(const Map& m, const BitVec& s);

// the standard lift: a cycle s' of C_M with psi_c(s') = x, for x a cycle of G_M
BitVec psi_lift(const Map& m, const BitVec& x);

enum class CircuitType { r, s };

// r iff any lift has odd edge count, equivalently |x ^ I| odd for an imbalance I
CircuitType circuit_type(const Map& m, const BitVec& x);  // x must be a circuit of G_M
bool cycle_is_r(const Map& m, const BitVec& x);           // same parity rule for any cycle

// mod-2 sum of the boundaries of a set of faces (f-gon indices)
BitVec face_boundary(const Map& m, const std::vector<uint32_t>& faces);
BitVec face_boundary(const Map& m, const BitVec& faces);

// --- medial maps ------------------------------------------------------------

struct MedialMap {
  Map base;
  Multigraph h;  // 4-regular; vertices = squares of base, edges = a-edges
  // faces as a-edge index sets over h's edges
  std::vector<std::vector<uint32_t>> black_faces;  // v-gons of base
  std::vector<std::vector<uint32_t>> white_faces;  // f-gons of base
  // rotation: per vertex of h, cyclic sequence of incident edge slots; slot i
  // is the a-edge at corner 4s+i of square s
  std::vector<std::array<uint32_t, 4>> rotation;
  std::vector<uint32_t> aedge_of_corner;  // h edge index per base corner
};

MedialMap medial(const Map& m);
// vertex expansion: rebuild the base map from the medial structure
Map medial_inverse(const MedialMap& mm);
// generic vertex expansion of a 4-regular rotation system with alternating
// wedge colors (wedge i sits between rotation slots i and i+1)
Map expand_medial(const Multigraph& h, const std::vector<std::array<uint32_t, 4>>& rotation,
                  const std::vector<std::array<char, 4>>& wedge_black);

// --- smooth paths ------------------------------------------------------------

// A cyclic path in G_M with slot-level detail: step i leaves vertex of slot
// out[i] through edge square_of(out[i] corner) and arrives at slot in[i+1].
struct CyclicPath {
  std::vector<uint32_t> edges;      // square indices in traversal order
  std::vector<uint32_t> out_slots;  // v-edge slot ids (corner/2) left through
  std::vector<uint32_t> in_slots;   // v-edge slot ids arrived at, aligned with edges
};

// Pairing of v-edge slots within each v-gon; slots are corner/2 for corners
// 4k and 4k+2. Encodes an edge-disjoint collection of cyclic paths
// partitioning eG_M ("Omega-mates").
struct OmegaPairing {
  std::vector<uint32_t> mate;  // involution on slot ids 0..2n-1
};

uint32_t slot_of_corner(uint32_t corner);     // corner/2 for even corners
uint32_t corner_of_slot(uint32_t slot);       // 2*slot
uint32_t slot_other_end(uint32_t slot);       // the other v-edge of the same square
uint32_t slot_square(uint32_t slot);          // slot/2

// cyclic order of slots around each v-gon (the rotation of M^t), plus lookup
struct VertexRotation {
  std::vector<std::vector<uint32_t>> slots_of_vgon;  // cyclic slot sequences
  std::vector<uint32_t> vgon_of_slot;
  std::vector<uint32_t> pos_of_slot;  // position within the v-gon cycle
};
VertexRotation vertex_rotation(const Map& m);

OmegaPairing smooth_pairing(const Map& m);  // opposite-at-v pairing; needs eulerian
std::vector<CyclicPath> omega_paths(const Map& m, const OmegaPairing& om);
std::vector<CyclicPath> smooth_paths(const Map& m);

// --- structure comparisons -----------------------------------------------------

// label-respecting isomorphism that fixes every square setwise
bool square_identical_isomorphic(const Map& x, const Map& y);

// each edge of G_M becomes a bounding digon; labels l -> l.a / l.b
Map double_edges(const Map& m);

}  // namespace mapforge
