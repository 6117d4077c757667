#include <algorithm>
#include <set>

#include "doctest.h"
#include "mapforge/gauss.hpp"
#include "mapforge/io.hpp"
#include "mapforge/richness.hpp"

using namespace mapforge;

namespace {

GaussCode code_of(std::initializer_list<const char*> syms) {
  std::vector<std::string> seq;
  for (const char* s : syms) seq.push_back(s);
  return make_gauss_code(std::move(seq));
}

const GaussCode& fig31() {
  static GaussCode c = code_of(
      {"1", "3", "4", "6", "7", "2", "3", "9", "6", "5", "2", "1", "8", "7", "5", "4", "9", "8"});
  return c;
}

SurfaceClass map_route_surface(const ColoredGaussCode& c) {
  return classify_surface(gamma(code_to_map(c), GammaMember::phial));
}

}  // namespace

TEST_CASE("interlace graphs") {
  CHECK(interlace(code_of({"1", "2", "1", "2"})).ne() == 1);
  CHECK(interlace(code_of({"1", "1", "2", "2"})).ne() == 0);
  for (std::size_t n : {2u, 3u, 4u, 5u}) {
    Multigraph g = interlace(pn_code(n));
    CHECK(g.ne() == n * (n - 1) / 2);  // K_n
    CHECK(g.simple());
  }
  CHECK_THROWS_WITH_AS(make_gauss_code({"1", "1", "1", "2"}),
                       doctest::Contains("SymbolCountNotTwo"), error);
}

TEST_CASE("odd even split") {
  auto s = odd_even_split(pn_code(4));  // K4: every symbol odd
  CHECK(s.odd.size() == 4);
  CHECK(s.even.empty());
  auto s3 = odd_even_split(pn_code(3));
  CHECK(s3.even.size() == 3);
}

TEST_CASE("code_to_map basics") {
  GaussCode loop = code_of({"x", "x"});
  Map spherical = code_to_map(color_code(loop, {"x"}));  // white = imbalance = {}
  CHECK(euler_characteristic(spherical) == 2);
  Map projective = code_to_map(color_code(loop, {}));
  CHECK(euler_characteristic(projective) == 1);

  Map p3 = code_to_map(color_code(pn_code(3), {"1", "2", "3"}));
  CHECK(classify_surface(gamma(p3, GammaMember::phial)).xi == 0);
}

TEST_CASE("crossing function structure") {
  GaussCode x = fig31();
  ColoredGaussCode all_white = color_code(x, {});
  CrossingFunction cf = crossing_function(all_white);
  for (std::size_t j = 0; j < cf.symbols.size(); ++j) CHECK(cf.columns[j] == cf.interlace_col[j]);

  RandomMapGen gen(5150);
  for (int t = 0; t < 40; ++t) {
    GaussCode c = gen.next_code(2 + t % 9);
    ColoredGaussCode col = color_code(c, gen.random_subset(c.symbols()));
    CrossingFunction a = crossing_function(col);
    CrossingFunction b = crossing_function(swap_colors(col));
    // c_P + c_{P~} = identity
    for (std::size_t j = 0; j < a.symbols.size(); ++j) {
      BitVec sum = a.columns[j] ^ b.columns[j];
      CHECK(sum.count() == 1);
      CHECK(sum.test(j));
    }
    // homomorphism dimension law
    Gf2Space im = Gf2Space::span(a.symbols, a.columns);
    Map p = code_to_map(col);
    Map m = gamma(p, GammaMember::phial);
    Gf2Space v = coboundary_space(induced_graph(m));
    CHECK(im.dim() + v.dim() == a.symbols.size());  // Ker = V below
  }
}

TEST_CASE("lemma 3.5: image and kernel of c_P") {
  RandomMapGen gen(616);
  for (int t = 0; t < 60; ++t) {
    GaussCode c = gen.next_code(2 + t % 11);
    ColoredGaussCode col = color_code(c, gen.random_subset(c.symbols()));
    Map p = code_to_map(col);
    Map m = gamma(p, GammaMember::phial);
    Multigraph gm = induced_graph(m);
    // the map's ground equals the sorted symbols
    CrossingFunction cf = crossing_function(col);
    REQUIRE(m.labels() == cf.symbols);
    Gf2Space im = Gf2Space::span(cf.symbols, cf.columns);
    CHECK(im == cycle_space(gm));
    // kernel = V: c(v) = 0 for coboundary generators, plus dimension count
    Gf2Space v = coboundary_space(gm);
    for (const BitVec& b : v.basis()) CHECK(cf.apply(b).none());
    CHECK(im.dim() + v.dim() == cf.symbols.size());
  }
}

TEST_CASE("thm 3.3: composite image and kernel") {
  RandomMapGen gen(31415);
  for (int t = 0; t < 50; ++t) {
    GaussCode c = gen.next_code(2 + t % 10);
    ColoredGaussCode col = color_code(c, gen.random_subset(c.symbols()));
    Map p = code_to_map(col);
    Map m = gamma(p, GammaMember::phial);
    SpaceTriple tr = space_triple(m);
    CrossingFunction cf = crossing_function(col);
    auto comp = composite_columns(cf);
    Gf2Space im = Gf2Space::span(cf.symbols, comp);
    CHECK(im == intersect(perp(tr.v), perp(tr.f)));
    CHECK(int(im.dim()) == 2 - euler_characteristic(m));
    // kernel = V + F
    Gf2Space vf = sum_space(tr.v, tr.f);
    CHECK(vf.dim() + im.dim() == cf.symbols.size());
    for (const BitVec& b : vf.basis()) {
      BitVec out(cf.symbols.size());
      for (uint32_t j : b.indices()) out ^= comp[j];
      CHECK(out.none());
    }
  }
}

TEST_CASE("surface of a coloring matches the map route") {
  RandomMapGen gen(2718);
  for (int t = 0; t < 60; ++t) {
    GaussCode c = gen.next_code(1 + t % 10);
    ColoredGaussCode col = color_code(c, gen.random_subset(c.symbols()));
    SurfaceClass via_algebra = surface_of_coloring(col);
    SurfaceClass via_map = map_route_surface(col);
    CHECK(via_algebra.chi == via_map.chi);
    CHECK(via_algebra.orientable == via_map.orientable);
  }
}

TEST_CASE("lemma 3.2 equivalence") {
  RandomMapGen gen(161);
  for (int t = 0; t < 60; ++t) {
    GaussCode c = gen.next_code(1 + t % 9);
    ColoredGaussCode col = color_code(c, gen.random_subset(c.symbols()));
    CrossingFunction cf = crossing_function(col);
    auto comp = composite_columns(cf);
    auto split = odd_even_split(c);
    BitVec odd(cf.symbols.size());
    for (const auto& s : split.odd)
      odd.set(uint32_t(std::lower_bound(cf.symbols.begin(), cf.symbols.end(), s) -
                       cf.symbols.begin()));
    bool eq_ab = true;
    for (std::size_t j = 0; j < cf.symbols.size(); ++j) {
      if (odd.test(j)) {
        if (!(comp[j] == odd)) eq_ab = false;
      } else {
        if (comp[j].any()) eq_ab = false;
      }
    }
    bool xi_le_1 = surface_of_coloring(col).xi <= 1;
    CHECK(eq_ab == xi_le_1);
    CHECK(eq_condition_holds(col) == xi_le_1);
  }
}

TEST_CASE("lemma 3.4: s-cycles and even interlace") {
  RandomMapGen gen(988);
  for (int t = 0; t < 40; ++t) {
    GaussCode c = gen.next_code(1 + t % 8);
    ColoredGaussCode col = color_code(c, gen.random_subset(c.symbols()));
    Map p = code_to_map(col);
    Map m = gamma(p, GammaMember::phial);
    Multigraph gm = induced_graph(m);
    CrossingFunction cf = crossing_function(col);
    for (std::size_t j = 0; j < cf.symbols.size(); ++j) {
      CHECK(gm.is_cycle(cf.columns[j]));
      bool is_s = !cycle_is_r(m, cf.columns[j]);
      CHECK(is_s == (cf.interlace_col[j].count() % 2 == 0));
    }
  }
}

TEST_CASE("prop 3.2.1: complementary imbalances in the antimap") {
  RandomMapGen gen(24);
  for (int t = 0; t < 40; ++t) {
    RandomMapOptions opt;
    opt.edges = 2 + t % 8;
    Map m = gen.next(opt);
    Map anti = gamma(m, GammaMember::antimap);
    BitVec full(m.square_count());
    for (uint32_t k = 0; k < m.square_count(); ++k) full.set(k);
    BitVec s(m.square_count());
    for (uint32_t k = 0; k < m.square_count(); ++k)
      if (gen.rng()() & 1) s.set(k);
    CHECK(is_imbalance(m, s) == is_imbalance(anti, s ^ full));
  }
}

TEST_CASE("prop 3.2.2: s-cycles form F when xi <= 1") {
  RandomMapGen gen(847);
  int seen = 0;
  for (int t = 0; t < 400 && seen < 25; ++t) {
    RandomMapOptions opt;
    opt.edges = 2 + t % 8;
    opt.connected = true;
    Map m = gen.next(opt);
    if (euler_characteristic(m) < 1) continue;
    seen++;
    SpaceTriple tr = space_triple(m);
    Gf2Space vperp = perp(tr.v);
    // every element of F is an s-cycle, and dimension matches
    for (const BitVec& b : tr.f.basis()) CHECK(!cycle_is_r(m, b));
    std::size_t s_dim = is_orientable(m) ? vperp.dim() : vperp.dim() - 1;
    CHECK(tr.f.dim() == s_dim);
    CHECK(vperp.contains(tr.f));
  }
  CHECK(seen > 0);
}

TEST_CASE("realize fig 3.1 in the plane") {
  auto rs = realize_xi_le_1(fig31());
  REQUIRE(rs.has_value());
  bool has_plane = false;
  for (const auto& r : rs->colorings)
    if (r.surface.xi == 0) has_plane = true;
  CHECK(has_plane);
  CHECK(rosenstiehl_planar(fig31()));
  // family size is 2^components(I_X)
  Multigraph ix = interlace(fig31());
  CHECK(rs->colorings.size() == (std::size_t(1) << ix.components()));
  for (const auto& r : rs->colorings) CHECK(eq_condition_holds(color_code(fig31(), r.black)));
}

TEST_CASE("small code realizations") {
  auto rs = realize_xi_le_1(code_of({"1", "2", "1", "2"}));
  REQUIRE(rs.has_value());
  for (const auto& r : rs->colorings) CHECK(r.surface.name == "projective-plane");
  CHECK(!rosenstiehl_planar(code_of({"1", "2", "1", "2"})));

  auto rs3 = realize_xi_le_1(pn_code(3));
  REQUIRE(rs3.has_value());
  for (const auto& r : rs3->colorings) {
    CHECK(r.surface.xi == 0);
    CHECK((r.black.size() == 0 || r.black.size() == 3));  // monochromatic only
  }
  CHECK(!rosenstiehl_planar(pn_code(4)));
}

TEST_CASE("prop 3.7: the P_n family") {
  for (std::size_t n = 1; n <= 8; ++n) {
    GaussCode pn = pn_code(n);
    auto symbols = pn.symbols();
    // every coloring classified; monochromatic = best surface, mixed = other
    for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask) {
      std::vector<std::string> black;
      for (std::size_t j = 0; j < n; ++j)
        if ((mask >> j) & 1) black.push_back(symbols[j]);
      bool mono = black.empty() || black.size() == n;
      SurfaceClass s = surface_of_coloring(color_code(pn, black));
      if (n % 2 == 1) {
        CHECK(s.name == (mono ? "sphere" : "torus"));
      } else {
        CHECK(s.name == (mono ? "projective-plane" : "klein-bottle"));
      }
    }
  }
}

TEST_CASE("realize agrees with the exhaustive oracle") {
  RandomMapGen gen(20107);
  for (int t = 0; t < 120; ++t) {
    GaussCode c = gen.next_code(1 + t % 10);
    auto fast = realize_xi_le_1(c);
    auto slow = oracle_realize(c, 1);
    CHECK(fast.has_value() == slow.has_value());
    if (fast && slow) {
      int best = 2;
      for (const auto& r : fast->colorings) best = std::min(best, r.surface.xi);
      CHECK(best == slow->surface.xi);
    }
  }
}

TEST_CASE("oracle realize on fixtures") {
  CHECK(oracle_realize(fig31(), 0).has_value());
  auto p3 = oracle_realize(pn_code(3), 1);
  REQUIRE(p3.has_value());
  CHECK(p3->surface.xi == 0);
  CHECK(!oracle_realize(pn_code(4), 0).has_value());
  GaussCode big = RandomMapGen(1).next_code(25);
  CHECK_THROWS_WITH_AS(oracle_realize(big, 1), doctest::Contains("TooLarge"), error);
}

TEST_CASE("merge to a single path") {
  SUBCASE("one vertex input is untouched") {
    std::vector<std::vector<std::string>> rot = {{"a", "b", "a", "b"}};
    MergedCode mc = merge_to_single_path(rot);
    CHECK(mc.ledger.empty());
    CHECK(mc.code.seq == rot[0]);
  }
  SUBCASE("figure eight") {
    // two vertices joined by 4 edges: 4-regular, two smooth sequences
    std::vector<std::vector<std::string>> rot = {{"a", "b", "c", "d"}, {"a", "c", "b", "d"}};
    MergedCode mc = merge_to_single_path(rot);
    CHECK(mc.ledger.size() == 1);
    CHECK(mc.code.seq.size() == 2 * 4 + 2);  // one crossing became a digon pair
  }
  SUBCASE("replay recovers the rotations") {
    std::vector<std::vector<std::string>> rot = {
        {"a", "b", "e", "f"}, {"a", "c", "b", "d"}, {"c", "e", "d", "f"}};
    MergedCode mc = merge_to_single_path(rot);
    std::vector<std::vector<std::string>> seqs = {mc.code.seq};
    for (auto it = mc.ledger.rbegin(); it != mc.ledger.rend(); ++it)
      seqs = split_merged_crossing(seqs, *it);
    REQUIRE(seqs.size() == rot.size());
    auto canon = [](std::vector<std::vector<std::string>> ss) {
      for (auto& s : ss) {
        auto best = s;
        for (int refl = 0; refl < 2; ++refl) {
          for (std::size_t r = 0; r < s.size(); ++r) {
            std::rotate(s.begin(), s.begin() + 1, s.end());
            if (s < best) best = s;
          }
          std::reverse(s.begin(), s.end());
        }
        s = best;
      }
      std::sort(ss.begin(), ss.end());
      return ss;
    };
    CHECK(canon(seqs) == canon(rot));
  }
  SUBCASE("merging preserves the minimum realization surface") {
    RandomMapGen gen(5005);
    for (int t = 0; t < 12; ++t) {
      // small random eulerian rotation systems
      RandomMapOptions opt;
      opt.edges = 3 + t % 3;
      opt.eulerian = true;
      opt.connected = true;
      Descriptor d = gen.next_descriptor(opt);
      auto min_xi_over_colorings = [](const std::vector<std::vector<std::string>>& rot) {
        std::set<std::string> labels;
        for (const auto& s : rot)
          for (const auto& l : s) labels.insert(l);
        std::vector<std::string> ls(labels.begin(), labels.end());
        int best = 99;
        for (std::size_t mask = 0; mask < (std::size_t(1) << ls.size()); ++mask) {
          Descriptor dd;
          dd.vgon_sequences = rot;
          for (std::size_t j = 0; j < ls.size(); ++j)
            if ((mask >> j) & 1) dd.imbalance.push_back(ls[j]);
          Map p = from_descriptor(dd);
          Map m = gamma(p, GammaMember::phial);
          if (!is_connected(m)) continue;
          best = std::min(best, 2 - euler_characteristic(m));
        }
        return best;
      };
      MergedCode mc = merge_to_single_path(d.vgon_sequences);
      int direct = min_xi_over_colorings(d.vgon_sequences);
      int merged = min_xi_over_colorings({mc.code.seq});
      CHECK(direct == merged);
    }
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(merge_to_single_path({{"a", "b", "a"}, {"b"}}), error);  // odd valency
    CHECK_THROWS_AS(merge_to_single_path({{"a", "a"}, {"b", "b"}}), error);  // disconnected
  }
}

TEST_CASE("omega digraph and reflexivity") {
  Multigraph loop;
  loop.nv = 1;
  loop.add_edge(0, 0, "x");
  SUBCASE("(+x,+x) is reflexive against the loop") {
    Multigraph om = omega_digraph({{"x", true}, {"x", true}});
    CHECK(om.nv == 1);
    EdgeWalk w;
    w.vertices = {0, 0};
    w.edges = {0, 0};
    w.from_end = {0, 0};
    CHECK(is_reflexive(loop, w));
  }
  SUBCASE("(+x,-x) is not") {
    Multigraph om = omega_digraph({{"x", true}, {"x", false}});
    CHECK(om.nv == 2);
    EdgeWalk w;
    w.vertices = {0, 0};
    w.edges = {0, 0};
    w.from_end = {0, 1};
    CHECK(!is_reflexive(loop, w));
  }
  SUBCASE("zigzags of one-zigzag maps are reflexive") {
    RandomMapGen gen(4242);
    int found = 0;
    for (int t = 0; t < 300 && found < 12; ++t) {
      RandomMapOptions opt;
      opt.edges = 2 + t % 7;
      opt.connected = true;
      Map m = gen.next(opt);
      if (zgons(m).count() != 1) continue;
      found++;
      EdgeWalk w = zigzag_walk(m);
      CHECK(is_reflexive(induced_graph(m), w));
    }
    CHECK(found > 0);
  }
}
