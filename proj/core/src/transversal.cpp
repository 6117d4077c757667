#include "mapforge/transversal.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>

#include "mapforge/gf2.hpp"

namespace mapforge {

// ===== coset oracles =========================================================

BitVec oracle_min_imbalance(const Map& m) {
  BitVec i0 = imbalance_vector(m);
  Gf2Space v = coboundary_space(induced_graph(m));
  require(v.dim() <= 24, errc::too_large, "imbalance coset too large to enumerate");
  BitVec best = i0;
  BitVec cur = i0;
  const auto& rows = v.basis();
  const std::size_t n = rows.size();
  // Gray-code sweep over the coset
  for (std::size_t g = 1; g < (std::size_t(1) << n); ++g) {
    std::size_t bit = std::size_t(__builtin_ctzll(g));
    cur ^= rows[bit];
    if (cur.count() < best.count() || (cur.count() == best.count() && cur < best)) best = cur;
  }
  return best;
}

std::size_t oracle_min_transversal(const Map& m) { return oracle_min_imbalance(m).count(); }

std::optional<BitVec> min_odd_circuit(const Multigraph& g, const BitVec& parity) {
  require(parity.size() == g.ne(), errc::ground_mismatch, "parity vector over wrong ground");
  // bipartite double cover: node (v, p); shortest v0 -> v1 path
  const std::size_t nv = g.nv;
  std::vector<std::vector<std::pair<uint32_t, uint32_t>>> adj(2 * nv);  // (node, edge)
  for (uint32_t e = 0; e < g.ne(); ++e) {
    auto [u, w] = g.ends[e];
    uint32_t pe = parity.test(e) ? 1 : 0;
    for (uint32_t x = 0; x < 2; ++x) {
      adj[2 * u + x].push_back({2 * w + (x ^ pe), e});
      if (u != w || x != (x ^ pe)) adj[2 * w + (x ^ pe)].push_back({2 * u + x, e});
    }
  }
  std::optional<BitVec> best;
  for (uint32_t r = 0; r < nv; ++r) {
    std::vector<int> dist(2 * nv, -1), par_edge(2 * nv, -1), par_node(2 * nv, -1);
    std::deque<uint32_t> q;
    dist[2 * r] = 0;
    q.push_back(2 * r);
    while (!q.empty()) {
      uint32_t x = q.front();
      q.pop_front();
      for (auto [y, e] : adj[x]) {
        if (dist[y] < 0) {
          dist[y] = dist[x] + 1;
          par_edge[y] = int(e);
          par_node[y] = int(x);
          q.push_back(y);
        }
      }
    }
    if (dist[2 * r + 1] < 0) continue;
    if (best && best->count() <= std::size_t(dist[2 * r + 1])) continue;
    BitVec cyc(g.ne());
    for (uint32_t x = 2 * r + 1; x != 2 * r;) {
      cyc.flip(std::size_t(par_edge[x]));
      x = uint32_t(par_node[x]);
    }
    if (g.is_circuit(cyc) && cyc.parity_and(parity)) {
      if (!best || cyc.count() < best->count()) best = cyc;
    }
  }
  return best;
}

std::vector<BitVec> enumerate_circuits(const Multigraph& g, std::size_t max_len) {
  std::set<std::vector<uint32_t>> seen;
  std::vector<BitVec> out;
  auto emit = [&](const std::vector<uint32_t>& edges) {
    std::vector<uint32_t> key = edges;
    std::sort(key.begin(), key.end());
    if (!seen.insert(key).second) return;
    BitVec v(g.ne());
    for (uint32_t e : edges) v.set(e);
    out.push_back(std::move(v));
  };
  std::vector<std::vector<std::pair<uint32_t, uint32_t>>> adj(g.nv);
  for (uint32_t e = 0; e < g.ne(); ++e) {
    auto [u, w] = g.ends[e];
    if (u == w) {
      emit({e});  // loops are length-1 circuits
      continue;
    }
    adj[u].push_back({w, e});
    adj[w].push_back({u, e});
  }
  // simple cycles with minimum vertex = root
  std::vector<char> onpath(g.nv, 0);
  std::vector<uint32_t> path_edges;
  std::function<void(uint32_t, uint32_t)> dfs = [&](uint32_t root, uint32_t at) {
    for (auto [nx, e] : adj[at]) {
      if (nx < root) continue;
      if (!path_edges.empty() && e == path_edges.back()) continue;
      if (nx == root) {
        if (path_edges.size() + 1 >= 2 || g.ends[e].first == g.ends[e].second) {
          if (path_edges.size() + 1 <= max_len && (path_edges.empty() || e > path_edges[0])) {
            path_edges.push_back(e);
            emit(path_edges);
            path_edges.pop_back();
          }
        }
        continue;
      }
      if (onpath[nx] || path_edges.size() + 1 >= max_len) continue;
      onpath[nx] = 1;
      path_edges.push_back(e);
      dfs(root, nx);
      path_edges.pop_back();
      onpath[nx] = 0;
    }
  };
  for (uint32_t r = 0; r < g.nv; ++r) {
    onpath[r] = 1;
    dfs(r, r);
    onpath[r] = 0;
  }
  return out;
}

// ===== small-instance checks ==================================================

bool minimal_imbalances_equal_transversals_check(const Map& m) {
  require(m.square_count() <= 12, errc::too_large, "check limited to 12 squares");
  Multigraph g = induced_graph(m);
  BitVec i0 = imbalance_vector(m);
  Gf2Space v = coboundary_space(g);
  // full imbalance coset
  std::vector<BitVec> coset;
  {
    BitVec cur = i0;
    coset.push_back(cur);
    const auto& rows = v.basis();
    for (std::size_t gc = 1; gc < (std::size_t(1) << rows.size()); ++gc) {
      cur ^= rows[std::size_t(__builtin_ctzll(gc))];
      coset.push_back(cur);
    }
  }
  auto minimal_of = [](std::vector<BitVec> xs) {
    std::vector<BitVec> out;
    for (const auto& x : xs) {
      bool minimal = true;
      for (const auto& y : xs)
        if (!(y == x) && (y & x) == y) {
          minimal = false;
          break;
        }
      if (minimal) out.push_back(x);
    }
    std::sort(out.begin(), out.end());
    return out;
  };
  std::vector<BitVec> min_imb = minimal_of(coset);

  std::vector<BitVec> r_circuits;
  for (const BitVec& c : enumerate_circuits(g, g.ne()))
    if (c.parity_and(i0)) r_circuits.push_back(c);
  std::vector<BitVec> transversals;
  for (std::size_t mask = 0; mask < (std::size_t(1) << g.ne()); ++mask) {
    BitVec t(g.ne());
    for (std::size_t j = 0; j < g.ne(); ++j)
      if ((mask >> j) & 1) t.set(j);
    bool hits = true;
    for (const auto& c : r_circuits)
      if (!(c & t).any()) {
        hits = false;
        break;
      }
    if (hits) transversals.push_back(t);
  }
  std::vector<BitVec> min_trans = minimal_of(transversals);
  return min_imb == min_trans;
}

bool max_coboundary_complement_check(const Multigraph& g) {
  require(g.ne() <= 20, errc::too_large, "check limited to 20 edges");
  Gf2Space bs = coboundary_space(g);
  std::vector<BitVec> cobs;
  {
    BitVec cur(g.ne());
    cobs.push_back(cur);
    const auto& rows = bs.basis();
    for (std::size_t gc = 1; gc < (std::size_t(1) << rows.size()); ++gc) {
      cur ^= rows[std::size_t(__builtin_ctzll(gc))];
      cobs.push_back(cur);
    }
  }
  std::vector<BitVec> odd_circuits;
  for (const BitVec& c : enumerate_circuits(g, g.ne()))
    if (c.count() % 2) odd_circuits.push_back(c);
  BitVec full(g.ne());
  for (std::size_t e = 0; e < g.ne(); ++e) full.set(e);

  auto is_transversal = [&](const BitVec& t) {
    for (const auto& c : odd_circuits)
      if (!(c & t).any()) return false;
    return true;
  };
  auto is_minimal_transversal = [&](const BitVec& t) {
    if (!is_transversal(t)) return false;
    for (uint32_t e : t.indices()) {
      BitVec t2 = t;
      t2.flip(e);
      if (is_transversal(t2)) return false;
    }
    return true;
  };
  auto is_maximal_coboundary = [&](const BitVec& b) {
    for (const auto& b2 : cobs)
      if (!(b2 == b) && (b & b2) == b) return false;
    return true;
  };
  // maximal coboundary -> complement is a minimal odd transversal
  for (const auto& b : cobs)
    if (is_maximal_coboundary(b) && !is_minimal_transversal(b ^ full)) return false;
  // minimal odd transversal -> complement is a maximal coboundary
  std::set<std::pair<std::size_t, std::vector<uint32_t>>> cob_set;
  for (const auto& b : cobs) cob_set.insert({b.count(), b.indices()});
  for (std::size_t mask = 0; mask < (std::size_t(1) << g.ne()); ++mask) {
    BitVec t(g.ne());
    for (std::size_t j = 0; j < g.ne(); ++j)
      if ((mask >> j) & 1) t.set(j);
    if (!is_minimal_transversal(t)) continue;
    BitVec comp = t ^ full;
    if (!cob_set.count({comp.count(), comp.indices()})) return false;
    if (!is_maximal_coboundary(comp)) return false;
  }
  return true;
}

bool imbalance_homology_check(const Map& m) {
  Multigraph gd = dual_graph(m);
  BitVec i0 = imbalance_vector(m);
  if (!gd.is_cycle(i0)) return false;
  // every coboundary of G_M is a cycle of G_D (a boundary of the dual t-map)
  Gf2Space v = coboundary_space(induced_graph(m));
  for (const BitVec& b : v.basis())
    if (!gd.is_cycle(b)) return false;
  return true;
}

bool disjoint_odd_polygon_bound_check(const Map& m) {
  require(m.square_count() <= 12, errc::too_large, "check limited to 12 squares");
  // C_M as a multigraph over corners
  Multigraph cm;
  cm.nv = m.corner_count();
  for (uint32_t c = 0; c < m.corner_count(); ++c) {
    if (c < Map::v(c)) cm.add_edge(c, Map::v(c), "v" + std::to_string(c));
    if (c < Map::f(c)) cm.add_edge(c, Map::f(c), "f" + std::to_string(c));
    if (c < m.a(c)) cm.add_edge(c, m.a(c), "a" + std::to_string(c));
  }
  std::vector<BitVec> odd;
  for (const BitVec& c : enumerate_circuits(cm, cm.ne()))
    if (c.count() % 2) odd.push_back(c);
  std::size_t xi = 0;
  // for possibly disconnected maps, sum the per-component connectivity
  {
    auto comp = component_of_corner(m);
    std::size_t ncomp = component_count(m);
    std::vector<int> chi_v(ncomp, 0), chi_f(ncomp, 0), chi_s(ncomp, 0);
    PolygonFamily vg = vgons(m), fg = fgons(m);
    for (const auto& poly : vg.polygons) chi_v[comp[poly[0]]]++;
    for (const auto& poly : fg.polygons) chi_f[comp[poly[0]]]++;
    for (uint32_t k = 0; k < m.square_count(); ++k) chi_s[comp[4 * k]]++;
    for (std::size_t i = 0; i < ncomp; ++i)
      xi += std::size_t(2 - (chi_v[i] - chi_s[i] + chi_f[i]));
  }
  // search for xi+1 pairwise edge-disjoint odd polygons
  std::function<bool(std::size_t, BitVec, std::size_t)> grow = [&](std::size_t from, BitVec used,
                                                                   std::size_t depth) {
    if (depth == xi + 1) return true;
    for (std::size_t i = from; i < odd.size(); ++i) {
      if ((odd[i] & used).any()) continue;
      if (grow(i + 1, used ^ odd[i], depth + 1)) return true;
    }
    return false;
  };
  return !grow(0, BitVec(cm.ne()), 0);
}

bool is_contractible(const Map& m, const std::vector<uint32_t>& faces) {
  Multigraph g = induced_graph(m);
  BitVec boundary = face_boundary(m, faces);
  if (!g.is_circuit(boundary)) return false;
  // every circuit inside eR bounds
  PolygonFamily fg = fgons(m);
  std::vector<char> in_r(fg.count(), 0);
  for (uint32_t f : faces) in_r[f] = 1;
  Multigraph sub;
  sub.nv = g.nv;
  std::vector<BitVec> sub_to_full;
  for (uint32_t k = 0; k < m.square_count(); ++k) {
    if (in_r[fg.poly_of_corner[4 * k]] || in_r[fg.poly_of_corner[4 * k + 1]]) {
      sub.add_edge(g.ends[k].first, g.ends[k].second, g.elabels[k]);
      BitVec v(m.square_count());
      v.set(k);
      sub_to_full.push_back(std::move(v));
    }
  }
  Gf2Space f_span = coboundary_space(dual_graph(m));
  for (const BitVec& c : cycle_space(sub).basis()) {
    BitVec full(m.square_count());
    for (uint32_t e : c.indices()) full ^= sub_to_full[e];
    if (!f_span.member(full)) return false;
  }
  return true;
}

namespace {

// chord-crossing parity of two even slot subsets in the cyclic order at g
bool interleave_parity(const std::vector<uint32_t>& rotation, const std::vector<char>& in_a,
                       const std::vector<char>& in_b) {
  std::vector<int> word;
  for (uint32_t s : rotation) {
    if (in_a[s]) word.push_back(0);
    else if (in_b[s]) word.push_back(1);
  }
  // pair consecutive occurrences of a as chords, same for b, count crossings
  std::vector<int> apos, bpos;
  for (std::size_t i = 0; i < word.size(); ++i)
    (word[i] == 0 ? apos : bpos).push_back(int(i));
  auto crossings = [&](int a1, int a2, int b1, int b2) {
    bool inside1 = a1 < b1 && b1 < a2;
    bool inside2 = a1 < b2 && b2 < a2;
    return inside1 != inside2;
  };
  int total = 0;
  for (std::size_t i = 0; i + 1 < apos.size(); i += 2)
    for (std::size_t j = 0; j + 1 < bpos.size(); j += 2)
      if (crossings(apos[i], apos[i + 1], bpos[j], bpos[j + 1])) total ^= 1;
  return total;
}

}  // namespace

bool cycles_cross(const Map& m, const BitVec& s1, const BitVec& s2) {
  require(!(s1 & s2).any(), errc::not_disjoint, "cycles must be edge-disjoint");
  Multigraph g = induced_graph(m);
  require(g.is_cycle(s1) && g.is_cycle(s2), errc::not_a_cycle, "inputs must be cycles of G_M");
  VertexRotation rot = vertex_rotation(m);
  const std::size_t nslots = 2 * m.square_count();
  std::vector<char> in1(nslots, 0), in2(nslots, 0);
  for (uint32_t e : s1.indices()) {
    in1[2 * e] = 1;
    in1[2 * e + 1] = 1;
  }
  for (uint32_t e : s2.indices()) {
    in2[2 * e] = 1;
    in2[2 * e + 1] = 1;
  }
  for (const auto& slots : rot.slots_of_vgon) {
    bool has1 = false, has2 = false;
    for (uint32_t s : slots) {
      has1 |= bool(in1[s]);
      has2 |= bool(in2[s]);
    }
    if (has1 && has2 && interleave_parity(slots, in1, in2)) return true;
  }
  return false;
}

}  // namespace mapforge

// ===== Omega machinery =======================================================

namespace {

struct Passage {
  uint32_t vertex;
  uint32_t s1, s2;  // the two slots of the strand
};

struct OmegaCtx {
  const Map& m;
  const OmegaPairing& om;
  VertexRotation rot;
  std::vector<CyclicPath> members;

  OmegaCtx(const Map& mm, const OmegaPairing& o)
      : m(mm), om(o), rot(vertex_rotation(mm)), members(omega_paths(mm, o)) {}

  uint32_t dart_out(uint32_t dart) const { return dart; }  // dart id == departure slot
  uint32_t dart_in(uint32_t dart) const { return (dart & ~1u) + 1 - (dart & 1); }
  uint32_t head(uint32_t dart) const { return rot.vgon_of_slot[dart_in(dart)]; }
  uint32_t tail(uint32_t dart) const { return rot.vgon_of_slot[dart_out(dart)]; }

  bool strands_cross(uint32_t vertex, uint32_t a1, uint32_t a2, uint32_t b1, uint32_t b2) const {
    if (a1 == b1 || a1 == b2 || a2 == b1 || a2 == b2) return false;
    const uint32_t pa1 = rot.pos_of_slot[a1], pa2 = rot.pos_of_slot[a2];
    const uint32_t pb1 = rot.pos_of_slot[b1], pb2 = rot.pos_of_slot[b2];
    (void)vertex;
    uint32_t lo = std::min(pa1, pa2), hi = std::max(pa1, pa2);
    bool in1 = pb1 > lo && pb1 < hi;
    bool in2 = pb2 > lo && pb2 < hi;
    return in1 != in2;
  }
};

uint32_t reverse_dart(uint32_t d) { return d ^ 1u; }

OmegaSubpath reverse_subpath(const OmegaSubpath& sp) {
  OmegaSubpath out;
  out.vertex_if_degenerate = sp.vertex_if_degenerate;
  for (auto it = sp.darts.rbegin(); it != sp.darts.rend(); ++it)
    out.darts.push_back(reverse_dart(*it));
  return out;
}

BitVec subpath_edges(const Map& m, const OmegaSubpath& sp) {
  BitVec v(m.square_count());
  for (uint32_t d : sp.darts) v.flip(d >> 1);
  return v;
}

uint32_t subpath_start(const OmegaCtx& ctx, const OmegaSubpath& sp) {
  return sp.degenerate() ? sp.vertex_if_degenerate : ctx.tail(sp.darts.front());
}
uint32_t subpath_end(const OmegaCtx& ctx, const OmegaSubpath& sp) {
  return sp.degenerate() ? sp.vertex_if_degenerate : ctx.head(sp.darts.back());
}

// a subpath is closed when the pairing continues its last dart into its first
bool subpath_closed(const OmegaCtx& ctx, const OmegaSubpath& sp) {
  if (sp.degenerate()) return false;
  return ctx.om.mate[ctx.dart_in(sp.darts.back())] == ctx.dart_out(sp.darts.front());
}

// interior passages (and the wrap passage for closed subpaths)
std::vector<Passage> interior_passages(const OmegaCtx& ctx, const OmegaSubpath& sp) {
  std::vector<Passage> out;
  if (sp.degenerate()) return out;
  for (std::size_t i = 1; i < sp.darts.size(); ++i)
    out.push_back({ctx.head(sp.darts[i - 1]), ctx.dart_in(sp.darts[i - 1]),
                   ctx.dart_out(sp.darts[i])});
  if (subpath_closed(ctx, sp))
    out.push_back({ctx.head(sp.darts.back()), ctx.dart_in(sp.darts.back()),
                   ctx.dart_out(sp.darts.front())});
  return out;
}

// extension strands past the subpath ends (start side, end side)
std::pair<Passage, Passage> end_extensions(const OmegaCtx& ctx, const OmegaSubpath& sp) {
  uint32_t out0 = ctx.dart_out(sp.darts.front());
  uint32_t inl = ctx.dart_in(sp.darts.back());
  Passage start{ctx.tail(sp.darts.front()), ctx.om.mate[out0], out0};
  Passage end{ctx.head(sp.darts.back()), inl, ctx.om.mate[inl]};
  return {start, end};
}

bool subpath_self_crossing(const OmegaCtx& ctx, const OmegaSubpath& sp, std::size_t* pi = nullptr,
                           std::size_t* pj = nullptr) {
  auto ps = interior_passages(ctx, sp);
  bool closed = subpath_closed(ctx, sp);
  std::size_t best_span = SIZE_MAX;
  bool found = false;
  for (std::size_t i = 0; i < ps.size(); ++i)
    for (std::size_t j = i + 1; j < ps.size(); ++j) {
      if (ps[i].vertex != ps[j].vertex) continue;
      if (!ctx.strands_cross(ps[i].vertex, ps[i].s1, ps[i].s2, ps[j].s1, ps[j].s2)) continue;
      found = true;
      // keep the innermost pair so the piece between it stays crossing-free
      std::size_t span = j - i;
      if (closed) span = std::min(span, ps.size() - span);
      if (span < best_span) {
        best_span = span;
        if (pi) *pi = i;
        if (pj) *pj = j;
      }
    }
  return found;
}

OmegaSubpath full_member(const CyclicPath& p) {
  OmegaSubpath sp;
  for (std::size_t i = 0; i < p.edges.size(); ++i) sp.darts.push_back(p.out_slots[i]);
  return sp;
}

bool edge_parity_r(const Map& m, const BitVec& imb, const BitVec& edges) {
  return edges.parity_and(imb);
}

}  // namespace

std::optional<PreReducer> find_pre_reducer(const Map& m, const OmegaPairing& om) {
  OmegaCtx ctx(m, om);
  BitVec imb = imbalance_vector(m);
  // (4.11)* first trigger: a member inducing an s-cycle
  for (const CyclicPath& p : ctx.members) {
    OmegaSubpath sp = full_member(p);
    if (!edge_parity_r(m, imb, subpath_edges(m, sp))) {
      PreReducer pre;
      pre.pi1.vertex_if_degenerate = ctx.tail(sp.darts.front());
      pre.pi2 = std::move(sp);
      return pre;
    }
  }
  // second trigger: a self-crossing member; split at the crossing and keep
  // the s piece
  for (const CyclicPath& p : ctx.members) {
    OmegaSubpath sp = full_member(p);
    std::size_t i = 0, j = 0;
    if (!subpath_self_crossing(ctx, sp, &i, &j)) continue;
    auto ps = interior_passages(ctx, sp);
    // passage t sits before dart index t (cyclically, with wrap at position L-1
    // sitting before dart 0); translate to dart positions
    const std::size_t L = sp.darts.size();
    auto dart_pos = [&](std::size_t passage_idx) { return (passage_idx + 1) % L; };
    std::size_t di = dart_pos(i), dj = dart_pos(j);
    OmegaSubpath alpha, beta;
    for (std::size_t t = di; t != dj; t = (t + 1) % L) alpha.darts.push_back(sp.darts[t]);
    for (std::size_t t = dj; t != di; t = (t + 1) % L) beta.darts.push_back(sp.darts[t]);
    PreReducer pre;
    pre.pi1.vertex_if_degenerate = ps[i].vertex;
    pre.pi2 = edge_parity_r(m, imb, subpath_edges(m, alpha)) ? std::move(beta) : std::move(alpha);
    require(!edge_parity_r(m, imb, subpath_edges(m, pre.pi2)), errc::internal,
            "both split pieces came out orientation-reversing");
    return pre;
  }
  // third trigger: two members crossing more than once
  for (std::size_t a = 0; a < ctx.members.size(); ++a) {
    OmegaSubpath pa = full_member(ctx.members[a]);
    auto psa = interior_passages(ctx, pa);
    for (std::size_t b = a + 1; b < ctx.members.size(); ++b) {
      OmegaSubpath pb = full_member(ctx.members[b]);
      auto psb = interior_passages(ctx, pb);
      std::vector<std::pair<std::size_t, std::size_t>> crossings;
      for (std::size_t i = 0; i < psa.size(); ++i)
        for (std::size_t j = 0; j < psb.size(); ++j)
          if (psa[i].vertex == psb[j].vertex &&
              ctx.strands_cross(psa[i].vertex, psa[i].s1, psa[i].s2, psb[j].s1, psb[j].s2))
            crossings.push_back({i, j});
      if (crossings.size() < 2) continue;
      const std::size_t La = pa.darts.size(), Lb = pb.darts.size();
      auto [i1, j1] = crossings[0];
      auto [i2, j2] = crossings[1];
      auto slice = [&](const OmegaSubpath& sp, std::size_t from_p, std::size_t to_p,
                       std::size_t L) {
        OmegaSubpath out;
        std::size_t from = (from_p + 1) % L, to = (to_p + 1) % L;
        for (std::size_t t = from; t != to; t = (t + 1) % L) out.darts.push_back(sp.darts[t]);
        return out;
      };
      OmegaSubpath alpha = slice(pa, i1, i2, La);
      OmegaSubpath gamma = slice(pb, j1, j2, Lb);
      BitVec imb_alpha_gamma = subpath_edges(m, alpha) ^ subpath_edges(m, gamma);
      if (edge_parity_r(m, imb, imb_alpha_gamma)) {
        // use the other way around member b
        OmegaSubpath delta = slice(pb, j2, j1, Lb);
        gamma = reverse_subpath(delta);
      }
      require(!edge_parity_r(m, imb, subpath_edges(m, alpha) ^ subpath_edges(m, gamma)),
              errc::internal, "no even combination at a double crossing");
      // u: first crossing along alpha against gamma
      auto pas_a = interior_passages(ctx, alpha);
      auto pas_g = interior_passages(ctx, gamma);
      auto [ga_start, ga_end] = end_extensions(ctx, alpha);
      auto [gg_start, gg_end] = end_extensions(ctx, gamma);
      std::vector<Passage> acand = pas_a;
      acand.push_back(ga_end);
      std::vector<Passage> gcand = pas_g;
      gcand.push_back(gg_end);
      std::size_t ua = SIZE_MAX, ug = SIZE_MAX;
      for (std::size_t i = 0; i < acand.size() && ua == SIZE_MAX; ++i)
        for (std::size_t j = 0; j < gcand.size(); ++j)
          if (acand[i].vertex == gcand[j].vertex &&
              ctx.strands_cross(acand[i].vertex, acand[i].s1, acand[i].s2, gcand[j].s1,
                                gcand[j].s2)) {
            ua = i;
            ug = j;
            break;
          }
      require(ua != SIZE_MAX, errc::internal, "double crossing without a first meeting point");
      OmegaSubpath alpha1, gamma1;
      for (std::size_t t = 0; t <= ua && t < alpha.darts.size(); ++t)
        alpha1.darts.push_back(alpha.darts[t]);
      for (std::size_t t = 0; t <= ug && t < gamma.darts.size(); ++t)
        gamma1.darts.push_back(gamma.darts[t]);
      require(!edge_parity_r(m, imb, subpath_edges(m, alpha1) ^ subpath_edges(m, gamma1)),
              errc::internal, "first meeting piece is not an s-cycle");
      PreReducer pre;
      pre.pi1 = std::move(alpha1);
      pre.pi2 = std::move(gamma1);
      return pre;
    }
  }
  return std::nullopt;
}

PreReducer straighten(const Map& m, const OmegaPairing& om, PreReducer pre) {
  OmegaCtx ctx(m, om);
  BitVec imb = imbalance_vector(m);
  for (std::size_t guard = 0; guard <= 4 * m.square_count() + 4; ++guard) {
    std::size_t i = 0, j = 0;
    if (pre.pi2.degenerate() || !subpath_self_crossing(ctx, pre.pi2, &i, &j)) return pre;
    const OmegaSubpath& p2 = pre.pi2;
    const std::size_t L = p2.darts.size();
    bool closed = subpath_closed(ctx, p2);
    auto ps = interior_passages(ctx, p2);
    // dart index right after passage t
    auto dart_pos = [&](std::size_t t) { return closed ? (t + 1) % L : t + 1; };
    std::size_t di = dart_pos(i), dj = dart_pos(j);
    if (closed && ps.size() - (j - i) < (j - i)) std::swap(di, dj);  // shorter side as beta
    OmegaSubpath alpha, beta, gammap;
    if (closed) {
      for (std::size_t t = di; t != dj; t = (t + 1) % L) beta.darts.push_back(p2.darts[t]);
      for (std::size_t t = dj; t != di; t = (t + 1) % L) alpha.darts.push_back(p2.darts[t]);
    } else {
      for (std::size_t t = 0; t < di; ++t) alpha.darts.push_back(p2.darts[t]);
      for (std::size_t t = di; t < dj; ++t) beta.darts.push_back(p2.darts[t]);
      for (std::size_t t = dj; t < L; ++t) gammap.darts.push_back(p2.darts[t]);
    }
    if (!edge_parity_r(m, imb, subpath_edges(m, beta))) {
      PreReducer next;
      next.pi1.vertex_if_degenerate = ps[i].vertex;
      next.pi2 = std::move(beta);
      pre = std::move(next);
      continue;
    }
    // beta is orientation-reversing: the remainder plus pi1 is too, so it
    // crosses beta somewhere; find the first meeting along gamma, then alpha^-1
    auto pas_b = interior_passages(ctx, beta);
    auto scan = [&](const OmegaSubpath& cand) -> std::pair<std::size_t, std::size_t> {
      if (cand.degenerate() || cand.darts.empty()) return {SIZE_MAX, SIZE_MAX};
      auto pas_c = interior_passages(ctx, cand);
      std::vector<Passage> cc = pas_c;
      auto [es, ee] = end_extensions(ctx, cand);
      cc.push_back(ee);
      for (std::size_t t = 0; t < cc.size(); ++t)
        for (std::size_t bidx = 0; bidx < pas_b.size(); ++bidx)
          if (cc[t].vertex == pas_b[bidx].vertex &&
              ctx.strands_cross(cc[t].vertex, cc[t].s1, cc[t].s2, pas_b[bidx].s1, pas_b[bidx].s2))
            return {t, bidx};
      return {SIZE_MAX, SIZE_MAX};
    };
    OmegaSubpath alpha_rev = reverse_subpath(alpha);
    auto [tg, bg] = scan(gammap);
    OmegaSubpath* chosen = nullptr;
    std::size_t tpos = SIZE_MAX, bpos = SIZE_MAX;
    if (tg != SIZE_MAX) {
      chosen = &gammap;
      tpos = tg;
      bpos = bg;
    } else {
      auto [ta, ba] = scan(alpha_rev);
      if (ta != SIZE_MAX) {
        chosen = &alpha_rev;
        tpos = ta;
        bpos = ba;
      }
    }
    require(chosen != nullptr, errc::internal, "reversing piece does not meet its complement");
    OmegaSubpath gamma1;
    for (std::size_t t = 0; t <= tpos && t < chosen->darts.size(); ++t)
      gamma1.darts.push_back(chosen->darts[t]);
    OmegaSubpath beta1, beta2;
    std::size_t bsplit = bpos + 1;  // passage bpos precedes dart bpos+1 inside beta
    for (std::size_t t = 0; t < bsplit; ++t) beta1.darts.push_back(beta.darts[t]);
    for (std::size_t t = bsplit; t < beta.darts.size(); ++t) beta2.darts.push_back(beta.darts[t]);
    PreReducer next;
    next.pi2 = std::move(gamma1);
    if (!edge_parity_r(m, imb, subpath_edges(m, beta1) ^ subpath_edges(m, next.pi2))) {
      next.pi1 = std::move(beta1);
    } else {
      next.pi1 = reverse_subpath(beta2);
      require(!edge_parity_r(m, imb, subpath_edges(m, next.pi1) ^ subpath_edges(m, next.pi2)),
              errc::internal, "neither reversing half pairs evenly");
    }
    pre = std::move(next);
  }
  fail(errc::internal, "straightening did not terminate");
}

// ===== reducers ==============================================================

namespace {

// solve boundary(X) = target over face subsets; returns one solution
std::optional<BitVec> solve_face_subset(const Map& m, const BitVec& target) {
  const std::size_t nf = fgons(m).count();
  std::vector<std::pair<BitVec, BitVec>> rows;  // (boundary, face combo)
  for (uint32_t g = 0; g < nf; ++g) {
    BitVec faces(nf);
    faces.set(g);
    rows.push_back({face_boundary(m, faces), faces});
  }
  BitVec t = target, combo(nf);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    int p = rows[r].first.lowest();
    if (p < 0) continue;
    for (std::size_t r2 = 0; r2 < rows.size(); ++r2)
      if (r2 != r && rows[r2].first.test(std::size_t(p))) {
        rows[r2].first ^= rows[r].first;
        rows[r2].second ^= rows[r].second;
      }
    if (t.test(std::size_t(p))) {
      t ^= rows[r].first;
      combo ^= rows[r].second;
    }
  }
  if (t.any()) return std::nullopt;
  return combo;
}

// edges of G_M that appear in the facial paths of the face subset
BitVec region_edges(const Map& m, const PolygonFamily& fg, const BitVec& faces) {
  BitVec out(m.square_count());
  for (uint32_t k = 0; k < m.square_count(); ++k)
    if (faces.test(fg.poly_of_corner[4 * k]) || faces.test(fg.poly_of_corner[4 * k + 1]))
      out.set(k);
  return out;
}

// every circuit inside the region bounds (the Omega-reducer condition)
bool region_contractible(const Map& m, const PolygonFamily& fg, const Gf2Space& f_span,
                         const BitVec& faces) {
  Multigraph g = induced_graph(m);
  BitVec er = region_edges(m, fg, faces);
  Multigraph sub;
  sub.nv = g.nv;
  std::vector<uint32_t> sub_to_full;
  for (uint32_t k : er.indices()) {
    sub.add_edge(g.ends[k].first, g.ends[k].second, g.elabels[k]);
    sub_to_full.push_back(k);
  }
  for (const BitVec& c : cycle_space(sub).basis()) {
    BitVec full(m.square_count());
    for (uint32_t e : c.indices()) full.flip(sub_to_full[e]);
    if (!f_span.member(full)) return false;
  }
  return true;
}

std::vector<uint32_t> reducer_angular_points(const OmegaCtx& ctx, const OmegaSubpath& p,
                                             const OmegaSubpath& q) {
  std::vector<uint32_t> out;
  if (q.degenerate() || q.darts.empty()) {
    if (!subpath_closed(ctx, p)) out.push_back(subpath_start(ctx, p));
  } else {
    out.push_back(subpath_start(ctx, p));
    out.push_back(subpath_end(ctx, p));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
  }
  return out;
}

Reducer make_reducer(const Map& m, const OmegaCtx& ctx, const PolygonFamily& fg,
                     const Gf2Space& f_span, OmegaSubpath p, OmegaSubpath q) {
  BitVec target = subpath_edges(m, p);
  if (!q.degenerate() && !q.darts.empty()) target ^= subpath_edges(m, q);
  auto sol = solve_face_subset(m, target);
  require(sol.has_value(), errc::internal, "boundary is not a face boundary sum");
  BitVec all(fg.count());
  for (uint32_t g = 0; g < fg.count(); ++g) all.set(g);
  BitVec side1 = *sol, side2 = *sol ^ all;
  bool ok1 = side1.any() && region_contractible(m, fg, f_span, side1);
  bool ok2 = side2.any() && region_contractible(m, fg, f_span, side2);
  require(ok1 || ok2, errc::internal, "neither side of the boundary is contractible");
  BitVec faces = ok1 && ok2 ? (side1.count() <= side2.count() ? side1 : side2)
                            : (ok1 ? side1 : side2);
  Reducer red;
  for (uint32_t g : faces.indices()) red.faces.push_back(g);
  red.p = std::move(p);
  red.q = std::move(q);
  if (red.q.degenerate() || red.q.darts.empty()) {
    red.kind = subpath_closed(ctx, red.p) ? ReducerKind::type0 : ReducerKind::type1;
  } else {
    red.kind = ReducerKind::type2;
  }
  red.angular = reducer_angular_points(ctx, red.p, red.q);
  return red;
}

}  // namespace

Reducer reducer_from_straight(const Map& m, const OmegaPairing& om, const PreReducer& pre) {
  OmegaCtx ctx(m, om);
  PolygonFamily fg = fgons(m);
  Gf2Space f_span = coboundary_space(dual_graph(m));
  const OmegaSubpath& p1 = pre.pi1;
  const OmegaSubpath& p2 = pre.pi2;
  if (p1.degenerate())
    return make_reducer(m, ctx, fg, f_span, p2, OmegaSubpath{});
  bool reentrant1 = subpath_start(ctx, p1) == subpath_end(ctx, p1);
  bool reentrant2 = subpath_start(ctx, p2) == subpath_end(ctx, p2);
  if (reentrant1 && reentrant2)
    return make_reducer(m, ctx, fg, f_span, p1, OmegaSubpath{});
  return make_reducer(m, ctx, fg, f_span, p1, p2);
}

namespace {

struct Segment {
  OmegaSubpath path;
  bool cyclic = false;  // a whole member inside the region
};

std::vector<Segment> region_segments(const Map& m, const OmegaCtx& ctx, const PolygonFamily& fg,
                                     const Reducer& red) {
  BitVec faces(fg.count());
  for (uint32_t g : red.faces) faces.set(g);
  BitVec er = region_edges(m, fg, faces);
  BitVec boundary = subpath_edges(m, red.p);
  if (!red.q.degenerate() && !red.q.darts.empty()) boundary ^= subpath_edges(m, red.q);
  BitVec interior = er;
  for (uint32_t e : boundary.indices())
    if (interior.test(e)) interior.flip(e);
  std::vector<Segment> out;
  for (const CyclicPath& mem : ctx.members) {
    const std::size_t L = mem.edges.size();
    std::vector<char> in(L, 0);
    bool all = true;
    for (std::size_t i = 0; i < L; ++i) {
      in[i] = interior.test(mem.edges[i]);
      all = all && in[i];
    }
    if (all) {
      Segment s;
      s.path = full_member(mem);
      s.cyclic = true;
      out.push_back(std::move(s));
      continue;
    }
    // maximal runs of interior darts, cyclically
    std::size_t start = 0;
    while (start < L && in[start]) ++start;
    if (start == L) continue;
    for (std::size_t off = 0; off < L;) {
      std::size_t i = (start + off) % L;
      if (!in[i]) {
        ++off;
        continue;
      }
      Segment s;
      while (off < L && in[(start + off) % L]) {
        s.path.darts.push_back(mem.out_slots[(start + off) % L]);
        ++off;
      }
      out.push_back(std::move(s));
    }
  }
  return out;
}

enum class Touch { none, cross_p, cross_q, merge_p, merge_q };

Touch end_touch(const OmegaCtx& ctx, const Passage& ext, const std::vector<Passage>& p_pass,
                const BitVec& p_edges, const std::vector<Passage>& q_pass, const BitVec& q_edges,
                bool has_q) {
  bool cp = false, cq = false;
  for (const Passage& pp : p_pass)
    if (pp.vertex == ext.vertex && ctx.strands_cross(ext.vertex, ext.s1, ext.s2, pp.s1, pp.s2))
      cp = true;
  if (has_q)
    for (const Passage& qq : q_pass)
      if (qq.vertex == ext.vertex && ctx.strands_cross(ext.vertex, ext.s1, ext.s2, qq.s1, qq.s2))
        cq = true;
  if (cp && !cq) return Touch::cross_p;
  if (cq && !cp) return Touch::cross_q;
  if (cp && cq) return Touch::cross_p;  // ambiguous: prefer p for the cut
  // no crossing: see which boundary path owns the edge the extension runs into
  uint32_t ext_sq = slot_square(ext.s2);
  if (p_edges.test(ext_sq)) return Touch::merge_p;
  if (has_q && q_edges.test(ext_sq)) return Touch::merge_q;
  uint32_t ext_sq1 = slot_square(ext.s1);
  if (p_edges.test(ext_sq1)) return Touch::merge_p;
  if (has_q && q_edges.test(ext_sq1)) return Touch::merge_q;
  return Touch::none;
}

bool touches_path(Touch t, bool path_p) {
  if (path_p) return t == Touch::cross_p || t == Touch::merge_p;
  return t == Touch::cross_q || t == Touch::merge_q;
}

// positions of a path's passages at a vertex (passage index = position along
// the path, 0-based, sitting before dart index+1)
std::vector<std::size_t> passage_positions_at(const OmegaCtx& ctx, const OmegaSubpath& sp,
                                              uint32_t vertex) {
  std::vector<std::size_t> out;
  auto ps = interior_passages(ctx, sp);
  for (std::size_t i = 0; i < ps.size(); ++i)
    if (ps[i].vertex == vertex) out.push_back(i);
  return out;
}

}  // namespace

Reducer to_transreducer(const Map& m, const OmegaPairing& om, const Reducer& red) {
  OmegaCtx ctx(m, om);
  PolygonFamily fg = fgons(m);
  Gf2Space f_span = coboundary_space(dual_graph(m));
  BitVec imb = imbalance_vector(m);
  Reducer cur = red;
  for (std::size_t guard = 0; guard <= fg.count() + 2; ++guard) {
    bool has_q = !cur.q.degenerate() && !cur.q.darts.empty();
    // terminal: a single face with one angular point
    if (cur.kind != ReducerKind::type0 && cur.faces.size() == 1 && cur.angular.size() == 1) {
      cur.trans = true;
      return cur;
    }
    auto segments = region_segments(m, ctx, fg, cur);
    // terminal: type 2 with every segment running from p to q
    if (cur.kind == ReducerKind::type2 && cur.angular.size() == 2) {
      bool all_trans = true;
      auto p_pass = interior_passages(ctx, cur.p);
      auto q_pass = interior_passages(ctx, cur.q);
      BitVec pe = subpath_edges(m, cur.p), qe = subpath_edges(m, cur.q);
      for (const Segment& s : segments) {
        if (s.cyclic) {
          all_trans = false;
          break;
        }
        auto [es, ee] = end_extensions(ctx, s.path);
        Touch t1 = end_touch(ctx, es, p_pass, pe, q_pass, qe, true);
        Touch t2 = end_touch(ctx, ee, p_pass, pe, q_pass, qe, true);
        bool ok = (t1 == Touch::cross_p && t2 == Touch::cross_q) ||
                  (t1 == Touch::cross_q && t2 == Touch::cross_p);
        if (!ok) {
          all_trans = false;
          break;
        }
      }
      if (all_trans) {
        cur.trans = true;
        return cur;
      }
    }
    // shrink
    BitVec curfaces(fg.count());
    for (uint32_t g : cur.faces) curfaces.set(g);
    auto try_faces = [&](const BitVec& target) -> std::optional<BitVec> {
      auto sol = solve_face_subset(m, target);
      if (!sol) return std::nullopt;
      BitVec all(fg.count());
      for (uint32_t g = 0; g < fg.count(); ++g) all.set(g);
      for (BitVec cand : {*sol, *sol ^ all}) {
        if (!cand.any()) continue;
        if (cand == curfaces) continue;
        if (!((cand & curfaces) == cand)) continue;  // must shrink inside
        if (!region_contractible(m, fg, f_span, cand)) continue;
        return cand;
      }
      return std::nullopt;
    };
    bool advanced = false;
    // a member wholly inside the region bounds; use it as new boundary
    for (const Segment& s : segments) {
      if (!s.cyclic) continue;
      require(!edge_parity_r(m, imb, subpath_edges(m, s.path)), errc::internal,
              "interior member is orientation-reversing");
      auto nf = try_faces(subpath_edges(m, s.path));
      if (!nf) continue;
      Reducer next;
      for (uint32_t g : nf->indices()) next.faces.push_back(g);
      next.p = s.path;
      next.kind = ReducerKind::type0;
      next.angular = {};
      cur = std::move(next);
      advanced = true;
      break;
    }
    if (advanced) continue;
    // cut along a segment plus a boundary arc
    auto p_pass = interior_passages(ctx, cur.p);
    auto q_pass = interior_passages(ctx, cur.q);
    BitVec pe = subpath_edges(m, cur.p);
    BitVec qe = has_q ? subpath_edges(m, cur.q) : BitVec(m.square_count());
    for (const Segment& s : segments) {
      auto [es, ee] = end_extensions(ctx, s.path);
      Touch t1 = end_touch(ctx, es, p_pass, pe, q_pass, qe, has_q);
      Touch t2 = end_touch(ctx, ee, p_pass, pe, q_pass, qe, has_q);
      if (cur.kind == ReducerKind::type2 &&
          ((t1 == Touch::cross_p && t2 == Touch::cross_q) ||
           (t1 == Touch::cross_q && t2 == Touch::cross_p)))
        continue;  // TRANS-conforming segment
      for (bool path_p : {true, false}) {
        if (!path_p && !has_q) continue;
        if (!(touches_path(t1, path_p) && touches_path(t2, path_p))) continue;
        const OmegaSubpath& anchor = path_p ? cur.p : cur.q;
        uint32_t u = es.vertex, w = ee.vertex;
        auto pos_u = passage_positions_at(ctx, anchor, u);
        auto pos_w = passage_positions_at(ctx, anchor, w);
        if (pos_u.empty() || pos_w.empty()) continue;
        std::size_t a = pos_u.front(), b = pos_w.front();
        OmegaSubpath seg = s.path;
        if (a > b) {
          std::swap(a, b);
          seg = reverse_subpath(seg);
        }
        if (a == b) continue;
        OmegaSubpath arc;
        for (std::size_t t = a + 1; t <= b && t < anchor.darts.size(); ++t)
          arc.darts.push_back(anchor.darts[t]);
        auto nf = try_faces(subpath_edges(m, seg) ^ subpath_edges(m, arc));
        if (!nf) continue;
        Reducer next;
        for (uint32_t g : nf->indices()) next.faces.push_back(g);
        next.p = std::move(seg);
        next.q = std::move(arc);
        next.kind = ReducerKind::type2;
        next.angular = reducer_angular_points(ctx, next.p, next.q);
        cur = std::move(next);
        advanced = true;
        break;
      }
      if (advanced) break;
    }
    require(advanced, errc::internal, "reducer shrink found no usable cut");
  }
  fail(errc::internal, "transreducer shrink did not terminate");
}

namespace {

// the four slots of the split at the chosen angular point
struct SplitSlots {
  uint32_t vgon;
  uint32_t e1, f1, e2, f2;
};

SplitSlots split_slots(const OmegaCtx& ctx, const Reducer& tr) {
  require(!tr.angular.empty(), errc::precondition_failed, "transreducer has no angular point");
  uint32_t v = tr.angular.front();
  uint32_t e1, e2;
  if (!tr.q.degenerate() && !tr.q.darts.empty()) {
    auto end_slot = [&](const OmegaSubpath& sp) {
      if (subpath_start(ctx, sp) == v) return ctx.dart_out(sp.darts.front());
      require(subpath_end(ctx, sp) == v, errc::internal, "path misses the angular point");
      return ctx.dart_in(sp.darts.back());
    };
    e1 = end_slot(tr.p);
    e2 = end_slot(tr.q);
  } else {
    e1 = ctx.dart_out(tr.p.darts.front());
    e2 = ctx.dart_in(tr.p.darts.back());
  }
  SplitSlots out;
  out.vgon = v;
  out.e1 = e1;
  out.e2 = e2;
  out.f1 = ctx.om.mate[e1];
  out.f2 = ctx.om.mate[e2];
  require(out.e1 != out.e2 && out.f1 != out.e2 && out.f2 != out.e1 && out.f1 != out.f2,
          errc::internal, "split slots are not distinct");
  require(ctx.strands_cross(v, out.e1, out.f1, out.e2, out.f2), errc::internal,
          "boundary extensions do not cross at the angular point");
  return out;
}

}  // namespace

OmegaPairing split_transreducer(const Map& m, const OmegaPairing& om, const Reducer& tr) {
  OmegaCtx ctx(m, om);
  SplitSlots sl = split_slots(ctx, tr);
  OmegaPairing next = om;
  next.mate[sl.f1] = sl.e2;
  next.mate[sl.e2] = sl.f1;
  next.mate[sl.f2] = sl.e1;
  next.mate[sl.e1] = sl.f2;
  (void)omega_paths(m, next);  // validates that no member repeats an edge
  return next;
}

// ===== PROJMINMAX ============================================================

namespace {

// materialized split surgery: pull the strands (f1,e2) and (f2,e1) off the
// v-gon into bivalent vertices; squares, v and f are untouched
Map apply_split_surgery(const Map& m, const SplitSlots& sl) {
  PolygonFamily vg = vgons(m);
  const auto& poly = vg.polygons[sl.vgon];
  // entry/exit corner of each slot in polygon orientation
  std::map<uint32_t, std::pair<uint32_t, uint32_t>> corners;  // slot -> (entry, exit)
  std::vector<uint32_t> order;
  for (std::size_t i = 0; i < poly.size(); i += 2) {
    uint32_t slot = slot_of_corner(poly[i] & ~1u);
    corners[slot] = {poly[i], poly[i + 1]};
    order.push_back(slot);
  }
  std::vector<uint32_t> a = m.a_inv();
  auto relink = [&](const std::vector<uint32_t>& group) {
    for (std::size_t i = 0; i < group.size(); ++i) {
      uint32_t exit = corners[group[i]].second;
      uint32_t entry = corners[group[(i + 1) % group.size()]].first;
      a[exit] = entry;
      a[entry] = exit;
    }
  };
  std::vector<uint32_t> remaining;
  for (uint32_t slot : order)
    if (slot != sl.e1 && slot != sl.e2 && slot != sl.f1 && slot != sl.f2)
      remaining.push_back(slot);
  if (!remaining.empty()) relink(remaining);
  relink({sl.f1, sl.e2});
  relink({sl.f2, sl.e1});
  return Map::from_parts(m.labels(), std::move(a));
}

// Fig 4.5: circuit in the cubic graph running parallel to one line of a
// system of projective lines, crossing every other line once and the chosen
// line once; returns its image in the dual (squares met in exactly one v-edge)
BitVec initial_dual_circuit(const Map& n, const OmegaPairing& om, const CyclicPath& line) {
  BitVec r = cedge_empty(n);
  const std::size_t len = line.edges.size();
  uint32_t entry_slot = line.out_slots[0];
  uint32_t x = corner_of_slot(entry_slot);
  for (std::size_t i = 0; i < len; ++i) {
    // cross the square through one f-edge
    cedge_flip(n, r, CFam::f, x);
    uint32_t cur = Map::f(x);
    uint32_t target = om.mate[line.in_slots[i]];
    require(target == line.out_slots[(i + 1) % len], errc::internal,
            "line is not mate-consecutive");
    for (;;) {
      cedge_flip(n, r, CFam::a, cur);
      cur = n.a(cur);
      if (slot_of_corner(cur & ~1u) == target) break;
      cedge_flip(n, r, CFam::v, cur);
      cur = Map::v(cur);
    }
    x = cur;
  }
  require(x == Map::v(corner_of_slot(entry_slot)), errc::internal,
          "parallel walk closed without switching sides");
  cedge_flip(n, r, CFam::v, x);
  require(is_cm_cycle(n, r), errc::internal, "parallel walk is not a cycle");
  BitVec c(n.square_count());
  for (uint32_t k = 0; k < n.square_count(); ++k) {
    int cnt = int(r.test(cedge_index(n, CFam::v, 4 * k))) +
              int(r.test(cedge_index(n, CFam::v, 4 * k + 2)));
    if (cnt == 1) c.set(k);
  }
  return c;
}

// undo one split on the dual cycle: find an equal-cardinality homologous
// cycle valid in the dual of the pre-split map (Fig 4.4 arc exchange,
// realized as a coboundary correction)
BitVec revise_dual_cycle(const Map& before, const Map& after, const Reducer& tr, const BitVec& c,
                         std::size_t* fallbacks) {
  Multigraph d_before = dual_graph(before);
  Multigraph d_after = dual_graph(after);
  require(d_after.is_cycle(c), errc::internal, "revision input is not a dual cycle");
  if (d_before.is_cycle(c)) return c;

  Multigraph g_after = induced_graph(after);
  Gf2Space cob_after = coboundary_space(g_after);
  PolygonFamily fg = fgons(before);
  BitVec faces(fg.count());
  for (uint32_t g : tr.faces) faces.set(g);
  BitVec er = region_edges(before, fg, faces);
  // candidate vertex sets of the post-split map, expressed through the
  // region of the transreducer
  PolygonFamily vg_after = vgons(after);
  std::vector<BitVec> cands;
  auto touching = [&](bool interior_only) {
    BitVec w(vg_after.count());
    std::vector<char> incident(vg_after.count(), 0), outside(vg_after.count(), 0);
    for (uint32_t k = 0; k < after.square_count(); ++k) {
      for (uint32_t cslot : {4 * k, 4 * k + 2}) {
        uint32_t v = vg_after.poly_of_corner[cslot];
        if (er.test(k)) incident[v] = 1;
        else outside[v] = 1;
      }
    }
    for (uint32_t v = 0; v < vg_after.count(); ++v)
      if (incident[v] && (!interior_only || !outside[v])) w.set(v);
    return w;
  };
  cands.push_back(touching(false));
  cands.push_back(touching(true));
  // plus variants with the two new bivalent vertices toggled
  {
    std::vector<uint32_t> bivalent;
    auto deg = g_after.degrees();
    for (uint32_t v = 0; v < vg_after.count(); ++v)
      if (deg[v] == 2) bivalent.push_back(v);
    std::size_t base = cands.size();
    for (std::size_t i = 0; i < base; ++i)
      for (uint32_t v : bivalent) {
        BitVec w = cands[i];
        w.flip(v);
        cands.push_back(w);
      }
  }
  for (const BitVec& w : cands) {
    BitVec delta = g_after.coboundary(w.indices());
    BitVec c2 = c ^ delta;
    if (c2.count() != c.count()) continue;
    if (!d_before.is_cycle(c2)) continue;
    require(cob_after.member(delta), errc::internal, "correction left the boundary class");
    return c2;
  }
  // exact fallback: the class minimum is preserved by the split, so a fresh
  // minimum odd circuit of the pre-split dual has the same cardinality
  if (fallbacks) ++(*fallbacks);
  BitVec id_before = imbalance_vector(gamma(before, GammaMember::dual));
  auto fresh = min_odd_circuit(d_before, id_before);
  require(fresh.has_value() && fresh->count() == c.count(), errc::internal,
          "no equal-weight dual circuit before the split");
  return *fresh;
}

}  // namespace

TransversalCertificate projminmax(const Map& m0, const ProjMinMaxOptions& opts) {
  require(is_connected(m0), errc::not_connected, "projminmax needs a connected map");
  require(euler_characteristic(m0) == 1 && !is_orientable(m0), errc::not_projective,
          "projminmax needs a projective map");
  require(induced_graph(m0).eulerian(), errc::not_eulerian, "projminmax needs eulerian G_M");

  struct Record {
    Map before, after;
    Reducer tr;
  };
  std::vector<Record> tstack;
  Map n = m0;
  std::size_t splits = 0;
  const std::size_t ceiling = 2 * m0.square_count() + fgons(m0).count();
  for (;;) {
    OmegaPairing om = smooth_pairing(n);
    auto pre = find_pre_reducer(n, om);
    if (!pre) break;
    PreReducer straight = straighten(n, om, *pre);
    Reducer red = reducer_from_straight(n, om, straight);
    Reducer tr = to_transreducer(n, om, red);
    OmegaPairing om2 = split_transreducer(n, om, tr);
    SplitSlots sl = split_slots(OmegaCtx(n, om), tr);
    Map n2 = apply_split_surgery(n, sl);
    require(smooth_pairing(n2).mate == om2.mate, errc::internal,
            "materialized split disagrees with the mate swap");
    require(euler_characteristic(n2) == 1 && !is_orientable(n2), errc::internal,
            "split changed the surface");
    if (opts.on_split) opts.on_split(SplitEvent{n, n2, tr});
    tstack.push_back({n, n2, tr});
    n = std::move(n2);
    ++splits;
    require(splits <= ceiling, errc::internal, "split count exceeded 2|eG| + f");
  }
  if (opts.split_count) *opts.split_count = splits;

  // n is now a system of projective lines
  OmegaPairing om = smooth_pairing(n);
  OmegaCtx ctx(n, om);
  BitVec imb_n = imbalance_vector(n);
  BitVec imb_0 = imbalance_vector(m0);
  for (const CyclicPath& line : ctx.members) {
    OmegaSubpath sp = full_member(line);
    require(subpath_edges(n, sp).parity_and(imb_n), errc::internal,
            "a final line is not orientation-reversing");
    require(!subpath_self_crossing(ctx, sp), errc::internal, "a final line self-crosses");
  }
  for (std::size_t a = 0; a < ctx.members.size(); ++a)
    for (std::size_t b = a + 1; b < ctx.members.size(); ++b) {
      auto pa = interior_passages(ctx, full_member(ctx.members[a]));
      auto pb = interior_passages(ctx, full_member(ctx.members[b]));
      std::size_t crossings = 0;
      for (const Passage& x : pa)
        for (const Passage& y : pb)
          if (x.vertex == y.vertex && ctx.strands_cross(x.vertex, x.s1, x.s2, y.s1, y.s2))
            ++crossings;
      require(crossings == 1, errc::internal, "final lines do not pairwise cross once");
    }

  TransversalCertificate cert;
  Multigraph g0 = induced_graph(m0);
  for (const CyclicPath& line : ctx.members) {
    BitVec e = subpath_edges(n, full_member(line));
    if (!(g0.is_circuit(e) && e.parity_and(imb_0))) {
      // a line may revisit vertices of the original map; extract one
      // orientation-reversing circuit from it
      bool found = false;
      for (const BitVec& circ : g0.circuit_decomposition(e))
        if (circ.parity_and(imb_0)) {
          e = circ;
          found = true;
          break;
        }
      require(found, errc::internal, "line decomposition has no r-circuit");
    }
    cert.omega0.push_back(e);
  }
  for (std::size_t a = 0; a < cert.omega0.size(); ++a)
    for (std::size_t b = a + 1; b < cert.omega0.size(); ++b)
      require(!(cert.omega0[a] & cert.omega0[b]).any(), errc::internal,
              "certificate circuits overlap");

  BitVec c = initial_dual_circuit(n, om, ctx.members[0]);
  require(c.count() == cert.omega0.size(), errc::internal,
          "initial dual circuit has the wrong weight");
  std::size_t fallbacks = 0;
  for (auto it = tstack.rbegin(); it != tstack.rend(); ++it)
    c = revise_dual_cycle(it->before, it->after, it->tr, c, &fallbacks);
  (void)fallbacks;

  Multigraph d0 = dual_graph(m0);
  BitVec id0 = imbalance_vector(gamma(m0, GammaMember::dual));
  require(d0.is_circuit(c), errc::internal, "final dual image is not a circuit");
  require(c.parity_and(id0), errc::internal, "final dual circuit is not orientation-reversing");
  require(c.count() == cert.omega0.size(), errc::internal, "minimax sizes differ");
  cert.r0 = std::move(c);
  return cert;
}

GeneralTransversal min_transversal_general(const Map& m) {
  require(is_connected(m), errc::not_connected, "need a connected map");
  GeneralTransversal out;
  if (is_orientable(m)) {
    out.minimum = 0;
    return out;
  }
  require(euler_characteristic(m) == 1, errc::not_projective, "need a projective map");
  Map doubled = double_edges(m);
  TransversalCertificate cert = projminmax(doubled);
  require(cert.size() % 2 == 0, errc::internal, "doubled certificate size is odd");
  out.minimum = cert.size() / 2;
  std::vector<std::size_t> uses(m.square_count(), 0);
  for (const BitVec& circ : cert.omega0) {
    std::vector<std::string> named;
    for (uint32_t e : circ.indices()) {
      const std::string& dl = doubled.labels()[e];
      std::string orig = dl.substr(0, dl.size() - 2);  // strip ".a"/".b"
      uses[m.label_index(orig)]++;
      named.push_back(orig);
    }
    out.witness.push_back(std::move(named));
  }
  for (std::size_t u : uses)
    require(u <= 2, errc::internal, "witness uses an edge more than twice");
  return out;
}
