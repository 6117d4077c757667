#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mapforge/error.hpp"
#include "mapforge/gf2.hpp"
#include "mapforge/multigraph.hpp"

namespace mapforge {

// A map is a finite cubic graph on "corners" carrying three disjoint perfect
// matchings v, f, a, where v+f induces squares. Corners of square k are
// 4k..4k+3 with fixed local roles:
//
//      4k --v-- 4k+1 --f-- 4k+2 --v-- 4k+3 --f-- 4k
//
// so v(x) = x^1, f(x) = x^3 and the square diagonal z(x) = x^2 are structural;
// the a matching is the only stored structure. a may run parallel to a v- or
// f-edge (distinct edges of the cubic multigraph); such digons encode
// monovalent vertices and faces of the induced graph.
class Map {
 public:
  Map() = default;

  // Strict validation entry point for raw data: arbitrary corner labels are
  // accepted and normalized into the canonical corner scheme. Rejects a-edges
  // that coincide with v- or f-edges (MatchingOverlap).
  static Map validate(std::span<const uint32_t> v, std::span<const uint32_t> f,
                      std::span<const uint32_t> a);

  // Same normalization, but a-edges parallel to v- or f-edges are kept as
  // distinct parallel edges instead of raising MatchingOverlap.
  static Map validate_relaxed(std::span<const uint32_t> v, std::span<const uint32_t> f,
                              std::span<const uint32_t> a);

  // Permissive constructor for canonical-scheme data: a(x) == v(x) or f(x)
  // means a parallel edge. Labels must be sorted and unique.
  static Map from_parts(std::vector<std::string> labels, std::vector<uint32_t> a);

  std::size_t square_count() const { return labels_.size(); }
  std::size_t corner_count() const { return a_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  uint32_t label_index(const std::string& l) const;

  static uint32_t v(uint32_t x) { return x ^ 1u; }
  static uint32_t f(uint32_t x) { return x ^ 3u; }
  static uint32_t z(uint32_t x) { return x ^ 2u; }
  uint32_t a(uint32_t x) const { return a_[x]; }
  static uint32_t square_of(uint32_t x) { return x >> 2; }

  const std::vector<uint32_t>& a_inv() const { return a_; }

  bool operator==(const Map& o) const { return labels_ == o.labels_ && a_ == o.a_; }

 private:
  std::vector<std::string> labels_;
  std::vector<uint32_t> a_;
};

// --- polygons ------------------------------------------------------------

enum class PolyKind { vgon, fgon, zgon, square };

struct PolygonFamily {
  PolyKind kind;
  // each polygon is the cyclic corner sequence c0, i1(c0), i2(i1(c0)), ...
  // canonicalized to start at its least corner
  std::vector<std::vector<uint32_t>> polygons;
  std::vector<uint32_t> poly_of_corner;  // polygon index per corner

  std::size_t count() const { return polygons.size(); }
};

PolygonFamily vgons(const Map& m);
PolygonFamily fgons(const Map& m);
PolygonFamily zgons(const Map& m);
PolygonFamily squares(const Map& m);

// --- map-core operations --------------------------------------------------

std::vector<uint32_t> component_of_corner(const Map& m);
std::size_t component_count(const Map& m);
bool is_connected(const Map& m);

int euler_characteristic(const Map& m);
bool is_orientable(const Map& m);

struct SurfaceClass {
  int chi = 2;
  int xi = 0;  // 2 - chi
  bool orientable = true;
  std::string name;  // sphere | projective-plane | torus | klein-bottle | generic

  bool operator==(const SurfaceClass& o) const {
    return chi == o.chi && xi == o.xi && orientable == o.orientable;
  }
};

SurfaceClass surface_class(int chi, bool orientable);
SurfaceClass classify_surface(const Map& m);  // requires connected

struct BalancingPartition {
  // class A as a corner indicator; class B is the complement
  std::vector<char> in_a;
  std::vector<uint32_t> imbalance;  // unbalanced square indices, sorted
};

BalancingPartition balancing_partition(const Map& m);
BitVec imbalance_vector(const Map& m);  // indicator over squares
bool is_imbalance(const Map& m, const BitVec& s);

// --- descriptors -----------------------------------------------------------

struct Descriptor {
  // cyclic sequences of edge labels; every label occurs exactly twice overall
  std::vector<std::vector<std::string>> vgon_sequences;
  std::vector<std::string> imbalance;  // subset of labels
};

Descriptor to_descriptor(const Map& m);
Map from_descriptor(const Descriptor& d);

// --- Tutte's algebraic maps -------------------------------------------------

struct AMap {
  // permutations on the corner set B
  std::vector<uint32_t> rot;    // R
  std::vector<uint32_t> theta;  // involution, = v
  std::vector<uint32_t> phi;    // involution, = f
};

AMap to_amap(const Map& m);
Map from_amap(const AMap& a);  // verifies axioms am1..am4

// number of orbits of <R, Theta*Phi> inside each orbit of <R, Theta, Phi>;
// orientable iff two per component (Prop-1.2-style criterion)
bool amap_orientable(const AMap& a);

}  // namespace mapforge
