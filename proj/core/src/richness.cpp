#include "mapforge/richness.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "mapforge/gauss.hpp"
#include "mapforge/io.hpp"

namespace mapforge {

SpaceTriple space_triple(const Map& m) {
  SpaceTriple t;
  t.v = coboundary_space(induced_graph(m));
  t.f = coboundary_space(dual_graph(m));
  t.z = coboundary_space(phial_graph(m));
  return t;
}

DeficiencyReport deficiency(const Map& m) {
  SpaceTriple t = space_triple(m);
  Gf2Space vperp = perp(t.v);
  Gf2Space fz = sum_space(t.f, t.z);
  require(vperp.contains(fz), errc::internal, "F+Z escaped the cycle space of G_M");
  DeficiencyReport r;
  r.def = vperp.dim() - fz.dim();
  r.rich = r.def == 0;
  r.gamma_bicycle = intersect(t.v, vperp).dim();
  std::size_t triple = intersect(intersect(t.v, t.f), t.z).dim();
  std::size_t e = m.square_count(), p = component_count(m);
  std::size_t v = vgons(m).count(), f = fgons(m).count(), z = zgons(m).count();
  r.closed_form_check = (long(r.def) == long(e + 3 * p + triple) - long(v + f + z));
  if (is_connected(m)) {
    require(t.f.dim() <= vperp.dim(), errc::internal, "facial deficiency underflow");
    r.facial_def = vperp.dim() - t.f.dim();
  }
  return r;
}

std::size_t facial_deficiency(const Map& m) {
  require(is_connected(m), errc::not_connected, "facial deficiency needs a connected map");
  SpaceTriple t = space_triple(m);
  Gf2Space vperp = perp(t.v);
  require(vperp.contains(t.f), errc::internal, "F escaped the cycle space of G_M");
  std::size_t fd = vperp.dim() - t.f.dim();
  require(int(fd) == 2 - euler_characteristic(m), errc::internal,
          "facial deficiency disagrees with the connectivity");
  return fd;
}

bool zigzag_generates_bicycles(const Map& m) {
  require(is_connected(m) && euler_characteristic(m) == 2, errc::not_planar,
          "zigzag bicycle generation is a planar statement");
  SpaceTriple t = space_triple(m);
  return intersect(t.v, perp(t.v)) == t.z;
}

SpEmbeddingTarget sp_embedding_target(const Multigraph& g) {
  require(g.connected() && g.ne() >= 1, errc::not_connected,
          "sp-embedding target needs a connected graph with an edge");
  SpEmbeddingTarget t;
  t.chi = 3 - int(g.nv) + int(bicycle_space(g).dim());
  t.orientable = g.eulerian();
  return t;
}

bool check_thm29_iii(const Map& p) {
  require(is_connected(p), errc::not_connected, "Thm 2.9(iii) check needs a connected map");
  MedialMap mm = medial(p);
  const std::size_t ne = mm.h.ne();
  auto to_vec = [&](const std::vector<uint32_t>& edges) {
    BitVec v(ne);
    for (uint32_t e : edges) v.set(e);
    return v;
  };
  std::vector<BitVec> zgen, fgen, vgen;
  for (const auto& fb : mm.black_faces) zgen.push_back(to_vec(fb));
  for (const auto& fw : mm.white_faces) fgen.push_back(to_vec(fw));
  // cycles induced by the smooth paths of the medial = the a-edges along each
  // z-gon of the base map
  PolygonFamily zg = zgons(p);
  for (const auto& poly : zg.polygons) {
    BitVec v(ne);
    for (std::size_t i = 1; i < poly.size(); i += 2) v.set(mm.aedge_of_corner[poly[i]]);
    vgen.push_back(v);
  }
  Gf2Space cs = cycle_space(mm.h);
  Gf2Space zp = Gf2Space::span(mm.h.elabels, zgen);
  Gf2Space fp = Gf2Space::span(mm.h.elabels, fgen);
  Gf2Space vp = Gf2Space::span(mm.h.elabels, vgen);
  Gf2Space all = sum_space(vp, sum_space(fp, zp));
  require(cs.contains(all), errc::internal, "face/path spans escaped CS(H)");
  std::size_t def_prime = cs.dim() - all.dim();
  require(def_prime == deficiency(p).def, errc::internal, "def' of the medial differs from def");
  return def_prime == 0;
}

Map projective_line_system(std::size_t n) {
  require(n >= 1, errc::bad_params, "need n >= 1");
  return line_system(2 * n).medial_base;
}

Map delete_edge(const Map& m, const std::string& label, DeleteMode mode) {
  uint32_t k = m.label_index(label);
  if (mode == DeleteMode::bicycle_edge) {
    SpaceTriple t = space_triple(m);
    Gf2Space fz = intersect(t.f, t.z);
    require(fz.touches(k), errc::precondition_failed,
            label + " lies in no element of F^Z");
  } else {
    Multigraph g = induced_graph(m);
    auto deg = g.degrees();
    auto [u, w] = g.ends[k];
    require(u != w && (deg[u] == 1 || deg[w] == 1), errc::precondition_failed,
            label + " is not a pendant edge of G_M");
  }
  Descriptor d = to_descriptor(m);
  Descriptor nd;
  for (auto& seq : d.vgon_sequences) {
    std::vector<std::string> ns;
    for (auto& l : seq)
      if (l != label) ns.push_back(l);
    if (!ns.empty()) nd.vgon_sequences.push_back(std::move(ns));
  }
  for (auto& l : d.imbalance)
    if (l != label) nd.imbalance.push_back(l);
  return from_descriptor(nd);
}

std::size_t independence_bound(const Map& m) {
  Multigraph g = induced_graph(m);
  require(g.connected(), errc::precondition_failed, "G_M must be connected");
  for (auto [u, w] : g.ends)
    require(u != w, errc::precondition_failed, "G_M must be loopless");
  for (std::size_t d : g.degrees())
    require(d % 2 == 1, errc::precondition_failed, "all valencies must be odd");
  require(deficiency(m).rich, errc::precondition_failed, "map must be rich");
  return g.nv - 1 - bicycle_space(g).dim();
}

}  // namespace mapforge
