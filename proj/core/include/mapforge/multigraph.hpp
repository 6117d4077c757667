#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mapforge/error.hpp"

namespace mapforge {

class BitVec;

// Multigraph with labeled edges; loops and parallel edges allowed.
struct Multigraph {
  std::size_t nv = 0;
  std::vector<std::pair<uint32_t, uint32_t>> ends;  // one entry per edge
  std::vector<std::string> elabels;                 // unique, parallel to ends

  std::size_t ne() const { return ends.size(); }
  uint32_t add_edge(uint32_t u, uint32_t v, std::string label);

  std::vector<std::size_t> degrees() const;  // loops count twice
  std::size_t components() const;
  bool connected() const { return nv == 0 ? true : components() == 1; }
  bool eulerian() const;
  bool simple() const;  // no loops, no parallel edges

  std::vector<uint32_t> component_of() const;  // per vertex

  // Edge subsets as bit vectors over edge indices.
  bool is_cycle(const BitVec& s) const;    // all degrees even
  bool is_circuit(const BitVec& s) const;  // nonempty, connected, 2-regular on support
  // decompose a cycle into pairwise edge-disjoint circuits (greedy, deterministic)
  std::vector<BitVec> circuit_decomposition(const BitVec& s) const;

  // coboundary of a vertex subset
  BitVec coboundary(const std::vector<uint32_t>& verts) const;
};

}  // namespace mapforge
