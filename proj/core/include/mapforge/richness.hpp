#pragma once

#include <optional>

#include "mapforge/gf2.hpp"
#include "mapforge/map.hpp"
#include "mapforge/orbit.hpp"

namespace mapforge {

// Coboundary spaces of G_M, G_D, G_P over the common square ground set.
struct SpaceTriple {
  Gf2Space v, f, z;
};

SpaceTriple space_triple(const Map& m);

struct DeficiencyReport {
  std::size_t def = 0;
  std::size_t facial_def = 0;       // meaningful when connected
  std::size_t gamma_bicycle = 0;    // dim of the bicycle space of G_M
  bool rich = false;
  bool closed_form_check = false;   // def == (e + 3p + dim(V^F^Z)) - (v + f + z)
};

DeficiencyReport deficiency(const Map& m);
std::size_t facial_deficiency(const Map& m);  // requires connected; equals xi

// planar connected maps: V ^ V_perp == Z
bool zigzag_generates_bicycles(const Map& m);

struct SpEmbeddingTarget {
  int chi;
  bool orientable;
};
// chi = 3 - |VG| + gamma, orientable iff g eulerian
SpEmbeddingTarget sp_embedding_target(const Multigraph& g);

// CS(H_P) == V' + F' + Z' for the medial of p (smooth-path / face spans)
bool check_thm29_iii(const Map& p);

// Simple 2n-system of projective lines; returns the map P whose medial is the
// system. G of the phial of P is K_{2n}.
Map projective_line_system(std::size_t n);

enum class DeleteMode { bicycle_edge, pendant };
Map delete_edge(const Map& m, const std::string& label, DeleteMode mode);

// v - 1 - gamma for rich, connected, loopless, odd-valent G_M
std::size_t independence_bound(const Map& m);

}  // namespace mapforge
