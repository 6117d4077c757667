#include "mapforge/orbit.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace mapforge {

const char* gamma_name(GammaMember t) {
  switch (t) {
    case GammaMember::map: return "map";
    case GammaMember::dual: return "dual";
    case GammaMember::antidual: return "antidual";
    case GammaMember::phial: return "phial";
    case GammaMember::antiphial: return "antiphial";
    case GammaMember::antimap: return "antimap";
  }
  return "?";
}

std::array<GammaMember, 6> gamma_members() {
  return {GammaMember::map,   GammaMember::dual,      GammaMember::antidual,
          GammaMember::phial, GammaMember::antiphial, GammaMember::antimap};
}

GammaResult gamma_with_correspondence(const Map& m, GammaMember tag) {
  // new (v', f') drawn from the structural involutions of Q_M; a is untouched
  uint32_t vmask, fmask;
  switch (tag) {
    case GammaMember::map: vmask = 1; fmask = 3; break;        // (v, f)
    case GammaMember::dual: vmask = 3; fmask = 1; break;       // (f, v)
    case GammaMember::antidual: vmask = 3; fmask = 2; break;   // (f, z)
    case GammaMember::phial: vmask = 2; fmask = 3; break;      // (z, f)
    case GammaMember::antiphial: vmask = 2; fmask = 1; break;  // (z, v)
    case GammaMember::antimap: vmask = 1; fmask = 2; break;    // (v, z)
    default: fail(errc::bad_params, "unknown gamma member");
  }
  const std::size_t n = m.square_count();
  GammaResult out;
  out.new_to_old.resize(4 * n);
  std::vector<uint32_t> old_to_new(4 * n);
  for (uint32_t k = 0; k < n; ++k) {
    uint32_t o = 4 * k;  // canonical walk within the square
    for (int j = 0; j < 4; ++j) {
      out.new_to_old[4 * k + j] = o;
      old_to_new[o] = 4 * k + uint32_t(j);
      o = (j % 2 == 0) ? (o ^ vmask) : (o ^ fmask);
    }
  }
  std::vector<uint32_t> a(4 * n);
  for (uint32_t x = 0; x < 4 * n; ++x) a[old_to_new[x]] = old_to_new[m.a(x)];
  out.map = Map::from_parts(m.labels(), std::move(a));
  return out;
}

Map gamma(const Map& m, GammaMember tag) { return gamma_with_correspondence(m, tag).map; }

Multigraph induced_graph(const Map& m) {
  PolygonFamily vg = vgons(m);
  Multigraph g;
  g.nv = vg.count();
  for (uint32_t k = 0; k < m.square_count(); ++k)
    g.add_edge(vg.poly_of_corner[4 * k], vg.poly_of_corner[4 * k + 2], m.labels()[k]);
  return g;
}

Multigraph dual_graph(const Map& m) {
  PolygonFamily fg = fgons(m);
  Multigraph g;
  g.nv = fg.count();
  // the two f-edges of square k sit at corner pairs (4k+1,4k+2) and (4k+3,4k)
  for (uint32_t k = 0; k < m.square_count(); ++k)
    g.add_edge(fg.poly_of_corner[4 * k + 1], fg.poly_of_corner[4 * k], m.labels()[k]);
  return g;
}

Multigraph phial_graph(const Map& m) {
  PolygonFamily zg = zgons(m);
  Multigraph g;
  g.nv = zg.count();
  // z-edges of square k: (4k,4k+2) and (4k+1,4k+3)
  for (uint32_t k = 0; k < m.square_count(); ++k)
    g.add_edge(zg.poly_of_corner[4 * k], zg.poly_of_corner[4 * k + 1], m.labels()[k]);
  return g;
}

// --- C_M edge subsets ---------------------------------------------------------

std::size_t cedge_index(const Map& m, CFam fam, uint32_t corner) {
  uint32_t other = fam == CFam::v ? Map::v(corner) : fam == CFam::f ? Map::f(corner) : m.a(corner);
  return std::size_t(fam) * m.corner_count() + std::min(corner, other);
}

BitVec cedge_empty(const Map& m) { return BitVec(3 * m.corner_count()); }

void cedge_flip(const Map& m, BitVec& s, CFam fam, uint32_t corner) {
  s.flip(cedge_index(m, fam, corner));
}

bool cedge_test(const Map& m, const BitVec& s, CFam fam, uint32_t corner) {
  return s.test(cedge_index(m, fam, corner));
}

std::size_t cedge_size(const BitVec& s) { return s.count(); }

bool is_cm_cycle(const Map& m, const BitVec& s) {
  for (uint32_t x = 0; x < m.corner_count(); ++x) {
    int deg = int(cedge_test(m, s, CFam::v, x)) + int(cedge_test(m, s, CFam::f, x)) +
              int(cedge_test(m, s, CFam::a, x));
    if (deg & 1) return false;
  }
  return true;
}

BitVec psi_c(const Map& m, const BitVec& s) {
  require(s.size() == 3 * m.corner_count(), errc::ground_mismatch, "not a C_M edge subset");
  require(is_cm_cycle(m, s), errc::not_a_cycle, "psi_c needs a cycle of C_M");
  BitVec out(m.square_count());
  for (uint32_t k = 0; k < m.square_count(); ++k) {
    int cnt = int(cedge_test(m, s, CFam::f, 4 * k)) + int(cedge_test(m, s, CFam::f, 4 * k + 1));
    if (cnt == 1) out.set(k);
  }
  return out;
}

BitVec psi_lift(const Map& m, const BitVec& x) {
  // solve psi_c(s) = x over a basis of CS(C_M)
  Multigraph cm;
  cm.nv = m.corner_count();
  std::vector<std::size_t> cidx;  // dense edge -> cedge index
  auto add = [&](uint32_t u, uint32_t w, CFam fam, uint32_t corner) {
    cm.add_edge(u, w, "c" + std::to_string(cm.ne()));
    cidx.push_back(cedge_index(m, fam, corner));
  };
  for (uint32_t c = 0; c < m.corner_count(); ++c) {
    if (c < Map::v(c)) add(c, Map::v(c), CFam::v, c);
    if (c < Map::f(c)) add(c, Map::f(c), CFam::f, c);
    if (c < m.a(c)) add(c, m.a(c), CFam::a, c);
  }
  Gf2Space cs = cycle_space(cm);
  // Gaussian elimination on images
  std::vector<std::pair<BitVec, BitVec>> rows;  // (image, preimage in dense ids)
  for (const BitVec& b : cs.basis()) {
    BitVec sparse = cedge_empty(m);
    for (uint32_t e : b.indices()) sparse.flip(cidx[e]);
    rows.emplace_back(psi_c(m, sparse), sparse);
  }
  BitVec target = x, pre = cedge_empty(m);
  for (auto& [img, pr] : rows) {
    int p = img.lowest();
    if (p < 0) continue;
    for (auto& [img2, pr2] : rows) {
      if (&img2 != &img && img2.test(std::size_t(p))) {
        img2 ^= img;
        pr2 ^= pr;
      }
    }
    if (target.test(std::size_t(p))) {
      target ^= img;
      pre ^= pr;
    }
  }
  require(target.none(), errc::not_a_cycle, "target is not a cycle of the induced graph");
  return pre;
}

CircuitType circuit_type(const Map& m, const BitVec& x) {
  Multigraph g = induced_graph(m);
  require(g.is_circuit(x), errc::not_a_circuit, "circuit_type needs a circuit of G_M");
  return cycle_is_r(m, x) ? CircuitType::r : CircuitType::s;
}

bool cycle_is_r(const Map& m, const BitVec& x) {
  return x.parity_and(imbalance_vector(m));
}

BitVec face_boundary(const Map& m, const std::vector<uint32_t>& faces) {
  BitVec fv(fgons(m).count());
  for (uint32_t g : faces) fv.set(g);
  return face_boundary(m, fv);
}

BitVec face_boundary(const Map& m, const BitVec& faces) {
  PolygonFamily fg = fgons(m);
  BitVec out(m.square_count());
  for (uint32_t k = 0; k < m.square_count(); ++k) {
    int cnt = int(faces.test(fg.poly_of_corner[4 * k + 1])) + int(faces.test(fg.poly_of_corner[4 * k]));
    if (cnt == 1) out.set(k);
  }
  return out;
}

// --- medial ----------------------------------------------------------------------

MedialMap medial(const Map& m) {
  MedialMap mm;
  mm.base = m;
  mm.h.nv = m.square_count();
  std::vector<uint32_t> aedge_at(m.corner_count(), UINT32_MAX);
  for (uint32_t c = 0; c < m.corner_count(); ++c) {
    if (aedge_at[c] != UINT32_MAX) continue;
    uint32_t d = m.a(c);
    uint32_t e = mm.h.add_edge(Map::square_of(c), Map::square_of(d), "a" + std::to_string(std::min(c, d)));
    aedge_at[c] = aedge_at[d] = e;
  }
  mm.rotation.resize(m.square_count());
  for (uint32_t s = 0; s < m.square_count(); ++s)
    for (int j = 0; j < 4; ++j) mm.rotation[s][std::size_t(j)] = aedge_at[4 * s + uint32_t(j)];
  mm.aedge_of_corner = aedge_at;
  auto face_edges = [&](const PolygonFamily& fam) {
    std::vector<std::vector<uint32_t>> out;
    for (const auto& poly : fam.polygons) {
      std::vector<uint32_t> es;
      for (std::size_t i = 1; i < poly.size(); i += 2) es.push_back(aedge_at[poly[i]]);
      out.push_back(std::move(es));
    }
    return out;
  };
  mm.black_faces = face_edges(vgons(m));
  mm.white_faces = face_edges(fgons(m));
  return mm;
}

Map expand_medial(const Multigraph& h, const std::vector<std::array<uint32_t, 4>>& rotation,
                  const std::vector<std::array<char, 4>>& wedge_black) {
  const std::size_t nv = h.nv;
  require(rotation.size() == nv && wedge_black.size() == nv, errc::bad_params,
          "medial expansion tables disagree");
  // corners: (vertex g, slot i) -> 4g + j with slots rotated so black wedges
  // land at sides (0,1) and (2,3)
  std::vector<uint32_t> start(nv);
  for (uint32_t g = 0; g < nv; ++g) {
    require(wedge_black[g][0] != wedge_black[g][1] && wedge_black[g][0] == wedge_black[g][2] &&
                wedge_black[g][1] == wedge_black[g][3],
            errc::bad_params, "wedge colors do not alternate");
    start[g] = wedge_black[g][0] ? 0 : 1;
  }
  auto corner_of = [&](uint32_t g, uint32_t slot) {
    return 4 * g + ((slot + 4 - start[g]) & 3);
  };
  const std::size_t n = 4 * nv;
  std::vector<uint32_t> v(n), f(n), a(n, UINT32_MAX);
  for (uint32_t g = 0; g < nv; ++g) {
    // side between slots i and i+1 is wedge i; with the rotated start, wedges
    // start[g], start[g]+2 are black -> v-edges
    for (uint32_t i = 0; i < 4; ++i) {
      uint32_t c1 = corner_of(g, i), c2 = corner_of(g, (i + 1) & 3);
      if (wedge_black[g][i]) {
        v[c1] = c2;
        v[c2] = c1;
      } else {
        f[c1] = c2;
        f[c2] = c1;
      }
    }
  }
  // a-edges: pair the two slot occurrences of every h edge
  std::vector<std::array<int, 2>> occ(h.ne(), {-1, -1});
  for (uint32_t g = 0; g < nv; ++g)
    for (uint32_t i = 0; i < 4; ++i) {
      uint32_t e = rotation[g][i];
      require(e < h.ne(), errc::bad_params, "rotation references unknown edge");
      int c = int(corner_of(g, i));
      if (occ[e][0] < 0) occ[e][0] = c;
      else if (occ[e][1] < 0) occ[e][1] = c;
      else fail(errc::bad_params, "edge appears in more than two slots");
    }
  for (std::size_t e = 0; e < h.ne(); ++e) {
    require(occ[e][0] >= 0 && occ[e][1] >= 0, errc::bad_params, "edge missing from rotations");
    a[uint32_t(occ[e][0])] = uint32_t(occ[e][1]);
    a[uint32_t(occ[e][1])] = uint32_t(occ[e][0]);
  }
  return Map::validate_relaxed(v, f, a);
}

Map medial_inverse(const MedialMap& mm) {
  // recover wedge colors: wedge i of square s corresponds to the C_M edge
  // between corners 4s+i and 4s+i+1; wedges 0 and 2 are the v-edge sides
  std::vector<std::array<char, 4>> wb(mm.h.nv);
  for (uint32_t g = 0; g < mm.h.nv; ++g) wb[g] = {1, 0, 1, 0};
  return expand_medial(mm.h, mm.rotation, wb);
}

// --- smooth paths -------------------------------------------------------------------

uint32_t slot_of_corner(uint32_t corner) { return corner >> 1; }
uint32_t corner_of_slot(uint32_t slot) { return slot << 1; }
uint32_t slot_other_end(uint32_t slot) { return slot ^ 1u; }
uint32_t slot_square(uint32_t slot) { return slot >> 1; }

VertexRotation vertex_rotation(const Map& m) {
  PolygonFamily vg = vgons(m);
  VertexRotation rot;
  rot.slots_of_vgon.resize(vg.count());
  rot.vgon_of_slot.assign(2 * m.square_count(), UINT32_MAX);
  rot.pos_of_slot.assign(2 * m.square_count(), UINT32_MAX);
  for (uint32_t g = 0; g < vg.count(); ++g) {
    const auto& poly = vg.polygons[g];
    for (std::size_t i = 0; i < poly.size(); i += 2) {
      uint32_t c = std::min(poly[i], Map::v(poly[i]));
      uint32_t slot = slot_of_corner(c & ~1u);
      rot.pos_of_slot[slot] = uint32_t(rot.slots_of_vgon[g].size());
      rot.vgon_of_slot[slot] = g;
      rot.slots_of_vgon[g].push_back(slot);
    }
  }
  return rot;
}

OmegaPairing smooth_pairing(const Map& m) {
  VertexRotation rot = vertex_rotation(m);
  OmegaPairing om;
  om.mate.assign(2 * m.square_count(), UINT32_MAX);
  for (const auto& slots : rot.slots_of_vgon) {
    std::size_t d = slots.size();
    require(d % 2 == 0, errc::not_eulerian, "smooth pairing needs an eulerian induced graph");
    for (std::size_t i = 0; i < d; ++i) om.mate[slots[i]] = slots[(i + d / 2) % d];
  }
  return om;
}

std::vector<CyclicPath> omega_paths(const Map& m, const OmegaPairing& om) {
  const std::size_t n = m.square_count();
  // dart 2k+dir: leave from slot 2k+dir, arrive at slot 2k+1-dir
  auto next_dart = [&](uint32_t d) {
    uint32_t arr = (d & ~1u) + 1 - (d & 1);
    uint32_t out = om.mate[arr];
    return out;  // out == 2k' + dir' is itself the next dart id
  };
  std::vector<char> used(2 * n, 0);
  std::vector<CyclicPath> paths;
  for (uint32_t d0 = 0; d0 < 2 * n; ++d0) {
    if (used[d0]) continue;
    // collect the orbit
    std::vector<uint32_t> orbit;
    uint32_t d = d0;
    do {
      orbit.push_back(d);
      used[d] = 1;
      d = next_dart(d);
    } while (d != d0);
    // skip reverse duplicates: mark the reverse orbit used, keep this one
    bool self_reverse = false;
    for (uint32_t dd : orbit) {
      uint32_t rd = dd ^ 1u;
      if (!used[rd]) used[rd] = 1;
      else if (std::find(orbit.begin(), orbit.end(), rd) != orbit.end()) self_reverse = true;
    }
    require(!self_reverse, errc::precondition_failed,
            "pairing induces a path that repeats an edge");
    CyclicPath p;
    for (uint32_t dd : orbit) {
      p.edges.push_back(dd >> 1);
      p.out_slots.push_back(dd);
      p.in_slots.push_back((dd & ~1u) + 1 - (dd & 1));
    }
    paths.push_back(std::move(p));
  }
  return paths;
}

std::vector<CyclicPath> smooth_paths(const Map& m) { return omega_paths(m, smooth_pairing(m)); }

// --- square-identical isomorphism ----------------------------------------------------

bool square_identical_isomorphic(const Map& x, const Map& y) {
  require(x.labels() == y.labels(), errc::bad_params,
          "square-identical comparison needs a common square set");
  const std::size_t n = x.square_count();
  // per-square corner bijections commuting with v and f are the XOR twists
  // j -> j ^ t; propagate t along a-edges from one seed square per component
  std::vector<uint32_t> comp = component_of_corner(x);
  std::size_t ncomp = n == 0 ? 0 : std::size_t(*std::max_element(comp.begin(), comp.end())) + 1;
  std::vector<std::vector<uint32_t>> squares_of_comp(ncomp);
  for (uint32_t k = 0; k < n; ++k) squares_of_comp[comp[4 * k]].push_back(k);
  for (const auto& squares : squares_of_comp) {
    bool ok_any = false;
    for (uint32_t seed_t = 0; seed_t < 4 && !ok_any; ++seed_t) {
      std::vector<int> t(n, -1);
      t[squares[0]] = int(seed_t);
      std::vector<uint32_t> stack = {squares[0]};
      bool ok = true;
      while (ok && !stack.empty()) {
        uint32_t k = stack.back();
        stack.pop_back();
        for (uint32_t j = 0; j < 4; ++j) {
          uint32_t c = 4 * k + j;
          uint32_t cx = x.a(c);
          uint32_t w = y.a(4 * k + (j ^ uint32_t(t[k])));
          if ((w >> 2) != (cx >> 2)) {
            ok = false;
            break;
          }
          int need = int((w & 3) ^ (cx & 3));
          if (t[cx >> 2] < 0) {
            t[cx >> 2] = need;
            stack.push_back(cx >> 2);
          } else if (t[cx >> 2] != need) {
            ok = false;
            break;
          }
        }
      }
      if (ok) ok_any = true;
    }
    if (!ok_any) return false;
  }
  return true;
}

Map double_edges(const Map& m) {
  Descriptor d = to_descriptor(m);
  Descriptor dd;
  std::map<std::string, int> occ;
  std::set<std::string> twisted(d.imbalance.begin(), d.imbalance.end());
  for (const auto& seq : d.vgon_sequences) {
    std::vector<std::string> ns;
    for (const auto& l : seq) {
      // an untwisted band reverses the copies' relative order between its two
      // ends; a half twist cancels the reversal
      if (occ[l]++ == 0 || twisted.count(l)) {
        ns.push_back(l + ".a");
        ns.push_back(l + ".b");
      } else {
        ns.push_back(l + ".b");
        ns.push_back(l + ".a");
      }
    }
    dd.vgon_sequences.push_back(std::move(ns));
  }
  for (const auto& l : d.imbalance) {
    dd.imbalance.push_back(l + ".a");
    dd.imbalance.push_back(l + ".b");
  }
  return from_descriptor(dd);
}

}  // namespace mapforge
