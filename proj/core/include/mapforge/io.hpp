#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "mapforge/gauss.hpp"
#include "mapforge/map.hpp"

namespace mapforge {

// --- text formats -------------------------------------------------------------
//
// map v1
// vgon <name>: <label> <label> ...
// imbalance: <label> ...
//
// gausscode
// seq: s1 s2 ... s2m
// black: ...
//
// '#' starts a comment; labels are colon/whitespace-free tokens.

Descriptor parse_descriptor(const std::string& text);
Map parse_map(const std::string& text);
std::string serialize_map(const Map& m);

ColoredGaussCode parse_gauss_code(const std::string& text);
std::string serialize_gauss_code(const ColoredGaussCode& c);
std::string serialize_gauss_code(const GaussCode& c);

std::string read_file_or_stdin(const std::string& path);

// --- fixtures --------------------------------------------------------------------

Map cube_map();
Map tetrahedron_map();
Map loop_map(bool projective);
Map prism_map();  // planar cubic, 6 vertices

// Simple arrangement of `wires` projective lines (wiring diagram glued with a
// flip). `crossing_map` is the map whose t-map is the arrangement itself;
// `medial_base` is the map P whose medial is the arrangement (black faces
// seeded deterministically).
struct LineSystem {
  Map crossing_map;
  Map medial_base;
};
LineSystem line_system(std::size_t wires);  // wires >= 2

// --- seeded random fixtures (test utility, not a uniform sampler) -----------------

struct RandomMapOptions {
  std::size_t edges = 8;
  bool eulerian = false;
  bool connected = false;
  std::optional<int> chi;                // filter on Euler characteristic
  std::optional<bool> orientable;        // filter on orientability
  std::size_t max_attempts = 20000;
};

class RandomMapGen {
 public:
  explicit RandomMapGen(uint64_t seed) : rng_(seed) {}
  Descriptor next_descriptor(const RandomMapOptions& opt);
  Map next(const RandomMapOptions& opt);
  GaussCode next_code(std::size_t symbols);
  std::vector<std::string> random_subset(const std::vector<std::string>& labels);
  std::mt19937_64& rng() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace mapforge
