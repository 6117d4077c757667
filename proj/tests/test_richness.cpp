#include <algorithm>
#include <set>

#include "doctest.h"
#include "mapforge/io.hpp"
#include "mapforge/richness.hpp"

using namespace mapforge;

namespace {

// max independent set by branching (small graphs)
std::size_t alpha(const Multigraph& g) {
  std::vector<uint64_t> nbr(g.nv, 0);
  for (auto [u, w] : g.ends)
    if (u != w) {
      nbr[u] |= uint64_t(1) << w;
      nbr[w] |= uint64_t(1) << u;
    }
  std::size_t best = 0;
  std::vector<std::pair<uint64_t, std::size_t>> stack = {{0, 0}};  // (chosen mask, next vertex)
  // simple exhaustive scan over subsets for nv <= 20
  for (uint64_t mask = 0; mask < (uint64_t(1) << g.nv); ++mask) {
    bool ok = true;
    for (uint32_t v = 0; v < g.nv && ok; ++v)
      if ((mask >> v) & 1 && (nbr[v] & mask)) ok = false;
    if (ok) best = std::max<std::size_t>(best, std::size_t(__builtin_popcountll(mask)));
  }
  (void)stack;
  return best;
}

bool is_complete(const Multigraph& g, std::size_t n) {
  if (g.nv != n || g.ne() != n * (n - 1) / 2 || !g.simple()) return false;
  std::set<std::pair<uint32_t, uint32_t>> adj;
  for (auto [u, w] : g.ends) adj.insert({std::min(u, w), std::max(u, w)});
  return adj.size() == n * (n - 1) / 2;
}

}  // namespace

TEST_CASE("cube space triple dimensions") {
  SpaceTriple t = space_triple(cube_map());
  CHECK(t.v.dim() == 7);  // |vG|-1
  CHECK(t.f.dim() == 5);
  CHECK(t.z.dim() == 3);
}

TEST_CASE("one-zigzag maps have trivial Z") {
  RandomMapGen gen(10);
  int found = 0;
  for (int t = 0; t < 200 && found < 5; ++t) {
    RandomMapOptions opt;
    opt.edges = 2 + t % 6;
    Map m = gen.next(opt);
    if (zgons(m).count() != 1) continue;
    found++;
    CHECK(space_triple(m).z.dim() == 0);
  }
  CHECK(found > 0);
}

TEST_CASE("absorption V^F inside Z") {
  RandomMapGen gen(77);
  for (int t = 0; t < 120; ++t) {
    RandomMapOptions opt;
    opt.edges = 2 + t % 13;
    Map m = gen.next(opt);
    SpaceTriple tr = space_triple(m);
    CHECK(tr.z.contains(intersect(tr.v, tr.f)));
  }
}

TEST_CASE("deficiency of the cube orbit") {
  Map cube = cube_map();
  DeficiencyReport r = deficiency(cube);
  CHECK(r.def == 0);
  CHECK(r.rich);
  CHECK(r.closed_form_check);
  CHECK(r.facial_def == 0);
  for (GammaMember tag : gamma_members()) {
    CHECK(deficiency(gamma(cube, tag)).def == 0);
  }
}

TEST_CASE("deficiency equal across the orbit") {
  RandomMapGen gen(42);
  for (int t = 0; t < 40; ++t) {
    RandomMapOptions opt;
    opt.edges = 2 + t % 13;
    Map m = gen.next(opt);
    DeficiencyReport base = deficiency(m);
    CHECK(base.closed_form_check);
    for (GammaMember tag : gamma_members())
      CHECK(deficiency(gamma(m, tag)).def == base.def);
  }
}

TEST_CASE("facial deficiency is the connectivity") {
  CHECK(facial_deficiency(cube_map()) == 0);
  CHECK(facial_deficiency(gamma(cube_map(), GammaMember::phial)) == 4);
  CHECK(facial_deficiency(loop_map(true)) == 1);
  CHECK(deficiency(loop_map(true)).def == 0);
}

TEST_CASE("triple inclusion, Lemma 2.9.1") {
  RandomMapGen gen(2911);
  for (int t = 0; t < 60; ++t) {
    RandomMapOptions opt;
    opt.edges = 2 + t % 11;
    opt.connected = true;
    Map m = gen.next(opt);
    SpaceTriple tr = space_triple(m);
    Gf2Space vf = intersect(tr.v, tr.f);
    Gf2Space zzp = intersect(tr.z, perp(tr.z));
    Gf2Space vpfp = intersect(perp(tr.v), perp(tr.f));
    CHECK(zzp.contains(vf));
    CHECK(tr.z.contains(zzp));
    CHECK(vpfp.contains(tr.z));
    CHECK(long(vpfp.dim()) - long(vf.dim()) == 2 - euler_characteristic(m));
  }
}

TEST_CASE("ternary relation for rich maps") {
  for (Map m : {cube_map(), tetrahedron_map(), projective_line_system(2)}) {
    REQUIRE(deficiency(m).rich);
    SpaceTriple tr = space_triple(m);
    CHECK(perp(tr.v) == sum_space(tr.f, tr.z));
    CHECK(perp(tr.f) == sum_space(tr.v, tr.z));
    CHECK(perp(tr.z) == sum_space(tr.v, tr.f));
    // rich maps: bicycle spaces all equal V^F^Z (Lemma 2.9.2)
    Gf2Space triple = intersect(intersect(tr.v, tr.f), tr.z);
    CHECK(intersect(tr.v, perp(tr.v)) == triple);
    CHECK(intersect(tr.f, perp(tr.f)) == triple);
    CHECK(intersect(tr.z, perp(tr.z)) == triple);
  }
}

TEST_CASE("zigzags generate planar bicycles") {
  CHECK(zigzag_generates_bicycles(cube_map()));
  CHECK(zigzag_generates_bicycles(tetrahedron_map()));
  // K4 with one doubled edge, planar
  Descriptor d;
  d.vgon_sequences = {
      {"e12", "e12b", "e14", "e13"},
      {"e23", "e24", "e12b", "e12"},
      {"e13", "e34", "e23"},
      {"e34", "e14", "e24"},
  };
  Map k4d = from_descriptor(d);
  REQUIRE(euler_characteristic(k4d) == 2);
  CHECK(zigzag_generates_bicycles(k4d));
  CHECK_THROWS_AS(zigzag_generates_bicycles(loop_map(true)), error);
}

TEST_CASE("sp embedding targets") {
  // doubled graphs aim at the plane
  RandomMapGen gen(5);
  for (int t = 0; t < 10; ++t) {
    RandomMapOptions opt;
    opt.edges = 2 + t % 5;
    opt.connected = true;
    Map m = gen.next(opt);
    Multigraph gd = induced_graph(double_edges(m));
    CHECK(sp_embedding_target(gd).chi == 2);
  }
  Multigraph k4;
  k4.nv = 4;
  int id = 0;
  for (uint32_t i = 0; i < 4; ++i)
    for (uint32_t j = i + 1; j < 4; ++j) k4.add_edge(i, j, "k" + std::to_string(id++));
  SpEmbeddingTarget t = sp_embedding_target(k4);
  CHECK(t.chi == 3 - 4 + int(bicycle_space(k4).dim()));
  CHECK(!t.orientable);  // K4 has odd valencies

  // Thm 2.10: every sp-embedding respects the bound
  RandomMapGen gen2(6);
  for (int t2 = 0; t2 < 40; ++t2) {
    RandomMapOptions opt;
    opt.edges = 2 + t2 % 9;
    opt.connected = true;
    Map p = gen2.next(opt);
    Multigraph gp = phial_graph(p);
    if (!gp.connected()) continue;
    int gamma = int(bicycle_space(gp).dim());
    CHECK(euler_characteristic(p) <= 3 - int(gp.nv) + gamma);
  }
}

TEST_CASE("medial spans, Prop 2.9.4 and Lemma 2.9.3") {
  RandomMapGen gen(31337);
  for (int t = 0; t < 25; ++t) {
    RandomMapOptions opt;
    opt.edges = 2 + t % 8;
    opt.connected = true;
    Map p = gen.next(opt);
    MedialMap mm = medial(p);
    auto to_vec = [&](const std::vector<uint32_t>& edges) {
      BitVec v(mm.h.ne());
      for (uint32_t e : edges) v.set(e);
      return v;
    };
    std::vector<BitVec> zg, fg, vg;
    for (const auto& b : mm.black_faces) zg.push_back(to_vec(b));
    for (const auto& w : mm.white_faces) fg.push_back(to_vec(w));
    PolygonFamily zfam = zgons(p);
    for (const auto& poly : zfam.polygons) {
      BitVec v(mm.h.ne());
      for (std::size_t i = 1; i < poly.size(); i += 2) v.set(mm.aedge_of_corner[poly[i]]);
      vg.push_back(v);
    }
    Gf2Space zs = Gf2Space::span(mm.h.elabels, zg);
    Gf2Space fs = Gf2Space::span(mm.h.elabels, fg);
    Gf2Space vs = Gf2Space::span(mm.h.elabels, vg);
    CHECK(intersect(fs, zs).dim() == 1);  // Prop 2.9.4
    SpaceTriple tr = space_triple(p);
    CHECK(intersect(sum_space(fs, zs), vs).dim() == 1 + intersect(tr.v, tr.f).dim());
  }
}

TEST_CASE("thm 2.9(iii) holds for rich chains") {
  CHECK(check_thm29_iii(gamma(cube_map(), GammaMember::phial)));
  CHECK(check_thm29_iii(cube_map()));
  CHECK(check_thm29_iii(line_system(4).medial_base));
  // non-rich maps fail the span equality
  RandomMapGen gen(8);
  int seen_nonrich = 0;
  for (int t = 0; t < 80 && seen_nonrich < 5; ++t) {
    RandomMapOptions opt;
    opt.edges = 3 + t % 9;
    opt.connected = true;
    Map m = gen.next(opt);
    if (deficiency(m).rich) continue;
    seen_nonrich++;
    CHECK(!check_thm29_iii(m));
  }
  CHECK(seen_nonrich > 0);
}

TEST_CASE("projective line systems are rich K_2n witnesses") {
  for (std::size_t n : {1u, 2u, 3u}) {
    Map p = projective_line_system(n);
    CHECK(classify_surface(p).name == "projective-plane");
    CHECK(deficiency(p).def == 0);
    Multigraph gp = phial_graph(p);
    CHECK(is_complete(gp, 2 * n));
    CHECK(gp.ne() == n * (2 * n - 1));
  }
}

TEST_CASE("K_{2n-1} deletion chain, Thm 2.12") {
  for (std::size_t n : {2u, 3u}) {
    Map p = projective_line_system(n);
    Map m = gamma(p, GammaMember::phial);  // rich with G = K_2n
    REQUIRE(is_complete(induced_graph(m), 2 * n));
    REQUIRE(deficiency(m).rich);
    // vertices of G_M are wires; delete [i, 2n] for i = 2..2n-1, then the
    // pendant [1, 2n]
    std::size_t last = 2 * n - 1;  // wire index of "vertex 2n"
    auto edge_between = [&](const Map& mm, uint32_t a, uint32_t b) {
      Multigraph g = induced_graph(mm);
      for (std::size_t e = 0; e < g.ne(); ++e) {
        auto [u, w] = g.ends[e];
        if ((u == a && w == b) || (u == b && w == a)) return g.elabels[e];
      }
      FAIL("edge not found");
      return std::string();
    };
    Map cur = m;
    for (std::size_t i = 2; i <= 2 * n - 1; ++i) {
      std::string lbl = edge_between(cur, uint32_t(i - 1), uint32_t(last));
      cur = delete_edge(cur, lbl, DeleteMode::bicycle_edge);
      CHECK(deficiency(cur).rich);
    }
    // the leftover edge [1, 2n] is pendant now
    std::string lbl = edge_between(cur, 0, uint32_t(last));
    Multigraph before = induced_graph(cur);
    CHECK(before.degrees()[last] == 1);
    cur = delete_edge(cur, lbl, DeleteMode::pendant);
    CHECK(deficiency(cur).rich);
    CHECK(is_complete(induced_graph(cur), 2 * n - 1));
  }
}

TEST_CASE("pendant deletion never changes deficiency") {
  RandomMapGen gen(71);
  int found = 0;
  for (int t = 0; t < 300 && found < 8; ++t) {
    RandomMapOptions opt;
    opt.edges = 2 + t % 9;
    Map m = gen.next(opt);
    Multigraph g = induced_graph(m);
    auto deg = g.degrees();
    for (std::size_t e = 0; e < g.ne(); ++e) {
      auto [u, w] = g.ends[e];
      if (u != w && (deg[u] == 1 || deg[w] == 1)) {
        std::size_t before = deficiency(m).def;
        Map after = delete_edge(m, g.elabels[e], DeleteMode::pendant);
        CHECK(deficiency(after).def == before);
        found++;
        break;
      }
    }
  }
  CHECK(found > 0);
}

TEST_CASE("bicycle-edge deletion preserves deficiency") {
  RandomMapGen gen(72);
  int found = 0;
  for (int t = 0; t < 300 && found < 8; ++t) {
    RandomMapOptions opt;
    opt.edges = 3 + t % 9;
    Map m = gen.next(opt);
    SpaceTriple tr = space_triple(m);
    Gf2Space fz = intersect(tr.f, tr.z);
    for (uint32_t k = 0; k < m.square_count(); ++k) {
      if (!fz.touches(k)) continue;
      std::size_t before = deficiency(m).def;
      Map after = delete_edge(m, m.labels()[k], DeleteMode::bicycle_edge);
      CHECK(deficiency(after).def == before);
      found++;
      break;
    }
  }
  CHECK(found > 0);
}

TEST_CASE("delete_edge precondition errors") {
  Map cube = cube_map();
  CHECK_THROWS_AS(delete_edge(cube, "b0", DeleteMode::pendant), error);
}

TEST_CASE("independence bounds, Thm 2.14") {
  Map cube = cube_map();
  CHECK(independence_bound(cube) == 4);
  CHECK(alpha(induced_graph(cube)) == 4);

  Map tet = tetrahedron_map();
  CHECK(independence_bound(tet) == 1);
  CHECK(alpha(induced_graph(tet)) == 1);

  Map prism = prism_map();
  REQUIRE(euler_characteristic(prism) == 2);
  CHECK(independence_bound(prism) >= alpha(induced_graph(prism)));
  // planar maps: bound equals v - z
  CHECK(independence_bound(prism) == vgons(prism).count() - zgons(prism).count());

  CHECK_THROWS_AS(independence_bound(loop_map(true)), error);  // loops
}
