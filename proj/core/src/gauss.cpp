#include "mapforge/gauss.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "mapforge/orbit.hpp"

namespace mapforge {

std::vector<std::string> GaussCode::symbols() const {
  std::vector<std::string> s = seq;
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

GaussCode make_gauss_code(std::vector<std::string> seq) {
  std::map<std::string, int> count;
  for (const auto& s : seq) count[s]++;
  for (const auto& [s, c] : count)
    require(c == 2, errc::symbol_count,
            "symbol " + s + " occurs " + std::to_string(c) + " times");
  GaussCode x;
  x.seq = std::move(seq);
  return x;
}

ColoredGaussCode color_code(GaussCode code, std::vector<std::string> black) {
  auto symbols = code.symbols();
  std::sort(black.begin(), black.end());
  black.erase(std::unique(black.begin(), black.end()), black.end());
  for (const auto& b : black)
    require(std::binary_search(symbols.begin(), symbols.end(), b), errc::parse_error,
            "black symbol " + b + " not in the code");
  ColoredGaussCode c;
  c.code = std::move(code);
  c.black = std::move(black);
  return c;
}

std::vector<std::string> ColoredGaussCode::white() const {
  std::vector<std::string> out;
  for (const auto& s : code.symbols())
    if (!std::binary_search(black.begin(), black.end(), s)) out.push_back(s);
  return out;
}

ColoredGaussCode swap_colors(const ColoredGaussCode& c) {
  ColoredGaussCode out;
  out.code = c.code;
  out.black = c.white();
  return out;
}

namespace {

struct SymbolIndex {
  std::vector<std::string> symbols;
  uint32_t operator()(const std::string& s) const {
    return uint32_t(std::lower_bound(symbols.begin(), symbols.end(), s) - symbols.begin());
  }
};

// interlace sets as bit rows over the sorted symbols
std::vector<BitVec> interlace_rows(const GaussCode& x, const SymbolIndex& idx) {
  const std::size_t k = idx.symbols.size();
  std::vector<std::pair<int, int>> occ(k, {-1, -1});
  for (int pos = 0; pos < int(x.seq.size()); ++pos) {
    uint32_t s = idx(x.seq[pos]);
    (occ[s].first < 0 ? occ[s].first : occ[s].second) = pos;
  }
  std::vector<BitVec> rows(k, BitVec(k));
  for (uint32_t y = 0; y < k; ++y)
    for (uint32_t z = uint32_t(y) + 1; z < k; ++z) {
      int inside = 0;
      for (int p : {occ[z].first, occ[z].second})
        if (p > occ[y].first && p < occ[y].second) inside++;
      if (inside == 1) {
        rows[y].set(z);
        rows[z].set(y);
      }
    }
  return rows;
}

}  // namespace

Multigraph interlace(const GaussCode& x) {
  SymbolIndex idx{x.symbols()};
  auto rows = interlace_rows(x, idx);
  Multigraph g;
  g.nv = idx.symbols.size();
  for (uint32_t y = 0; y < g.nv; ++y)
    for (uint32_t z = y + 1; z < g.nv; ++z)
      if (rows[y].test(z)) g.add_edge(y, z, idx.symbols[y] + "~" + idx.symbols[z]);
  return g;
}

OddEvenSplit odd_even_split(const GaussCode& x) {
  SymbolIndex idx{x.symbols()};
  auto rows = interlace_rows(x, idx);
  OddEvenSplit out;
  for (std::size_t s = 0; s < idx.symbols.size(); ++s)
    (rows[s].count() % 2 ? out.odd : out.even).push_back(idx.symbols[s]);
  return out;
}

Map code_to_map(const ColoredGaussCode& c) {
  Descriptor d;
  d.vgon_sequences = {c.code.seq};
  d.imbalance = c.white();
  return from_descriptor(d);
}

CrossingFunction crossing_function(const ColoredGaussCode& c) {
  CrossingFunction cf;
  cf.symbols = c.code.symbols();
  SymbolIndex idx{cf.symbols};
  cf.interlace_col = interlace_rows(c.code, idx);
  cf.t_diag = BitVec(cf.symbols.size());
  for (const auto& b : c.black) cf.t_diag.set(idx(b));
  cf.columns = cf.interlace_col;
  for (std::size_t j = 0; j < cf.symbols.size(); ++j)
    if (cf.t_diag.test(j)) cf.columns[j].flip(j);
  return cf;
}

BitVec CrossingFunction::apply(const BitVec& v) const {
  BitVec out(symbols.size());
  for (uint32_t j : v.indices()) out ^= columns[j];
  return out;
}

std::size_t CrossingFunction::rank() const {
  std::vector<std::string> ground = symbols;
  return Gf2Space::span(std::move(ground), columns).dim();
}

std::vector<BitVec> composite_columns(const CrossingFunction& cf) {
  // c_{P~} o c_P = c_P + c_P^2
  std::vector<BitVec> cols;
  for (std::size_t j = 0; j < cf.symbols.size(); ++j)
    cols.push_back(cf.columns[j] ^ cf.apply(cf.columns[j]));
  return cols;
}

std::size_t composite_rank(const CrossingFunction& cf) {
  std::vector<std::string> ground = cf.symbols;
  return Gf2Space::span(std::move(ground), composite_columns(cf)).dim();
}

SurfaceClass surface_of_coloring(const ColoredGaussCode& c) {
  CrossingFunction cf = crossing_function(c);
  int xi = int(composite_rank(cf));
  bool orientable = true;  // iff the interlace graph is eulerian
  for (const auto& col : cf.interlace_col)
    if (col.count() % 2) orientable = false;
  return surface_class(2 - xi, orientable);
}

namespace {

// solve delta_{I_X}(B) = T; returns the per-component color assignment or
// nullopt; components of the interlace graph are listed by representative
struct CoboundarySolution {
  std::vector<uint32_t> comp_of;        // per symbol
  std::size_t comp_count = 0;
  std::vector<char> base_color;         // one consistent solution
};

std::optional<CoboundarySolution> solve_coboundary(std::size_t k, const std::vector<BitVec>& adj,
                                                   const std::set<std::pair<uint32_t, uint32_t>>& t) {
  CoboundarySolution sol;
  sol.comp_of.assign(k, UINT32_MAX);
  sol.base_color.assign(k, 0);
  for (uint32_t s = 0; s < k; ++s) {
    if (sol.comp_of[s] != UINT32_MAX) continue;
    uint32_t comp = uint32_t(sol.comp_count++);
    sol.comp_of[s] = comp;
    sol.base_color[s] = 0;
    std::vector<uint32_t> stack = {s};
    while (!stack.empty()) {
      uint32_t y = stack.back();
      stack.pop_back();
      for (uint32_t z : adj[y].indices()) {
        bool crossing = t.count({std::min(y, z), std::max(y, z)}) > 0;
        char want = char(sol.base_color[y] ^ (crossing ? 1 : 0));
        if (sol.comp_of[z] == UINT32_MAX) {
          sol.comp_of[z] = comp;
          sol.base_color[z] = want;
          stack.push_back(z);
        } else if (sol.base_color[z] != want) {
          return std::nullopt;  // T is not a coboundary
        }
      }
    }
  }
  return sol;
}

}  // namespace

std::optional<RealizationSet> realize_xi_le_1(const GaussCode& x) {
  SymbolIndex idx{x.symbols()};
  const std::size_t k = idx.symbols.size();
  auto rows = interlace_rows(x, idx);
  // (i): non-interlaced pairs need |i(y)^i(z)| + |i(y)||i(z)| even
  std::set<std::pair<uint32_t, uint32_t>> t;
  for (uint32_t y = 0; y < k; ++y)
    for (uint32_t z = y + 1; z < k; ++z) {
      bool odd = ((rows[y] & rows[z]).count() + rows[y].count() * rows[z].count()) % 2;
      if (!rows[y].test(z)) {
        if (odd) return std::nullopt;
      } else if (!odd) {
        t.insert({y, z});  // (ii): the even interlaced pairs must form a coboundary
      }
    }
  auto sol = solve_coboundary(k, rows, t);
  if (!sol) return std::nullopt;

  RealizationSet out;
  for (auto [y, z] : t) out.t_edges.push_back({idx.symbols[y], idx.symbols[z]});
  // the solutions are a coset: one free flip per interlace-graph component
  for (std::size_t mask = 0; mask < (std::size_t(1) << sol->comp_count); ++mask) {
    std::vector<std::string> black;
    for (uint32_t s = 0; s < k; ++s) {
      char col = char(sol->base_color[s] ^ ((mask >> sol->comp_of[s]) & 1));
      if (col) black.push_back(idx.symbols[s]);
    }
    ColoredGaussCode c = color_code(x, black);
    Realization r;
    r.surface = surface_of_coloring(c);
    require(r.surface.xi <= 1, errc::internal, "realization family left the target surfaces");
    r.black = std::move(black);
    out.colorings.push_back(std::move(r));
  }
  return out;
}

bool rosenstiehl_planar(const GaussCode& x) {
  SymbolIndex idx{x.symbols()};
  const std::size_t k = idx.symbols.size();
  auto rows = interlace_rows(x, idx);
  for (uint32_t y = 0; y < k; ++y)
    if (rows[y].count() % 2) return false;  // (I) interlace graph eulerian
  std::set<std::pair<uint32_t, uint32_t>> t;
  for (uint32_t y = 0; y < k; ++y)
    for (uint32_t z = y + 1; z < k; ++z) {
      bool even = (rows[y] & rows[z]).count() % 2 == 0;
      if (!rows[y].test(z)) {
        if (!even) return false;  // (II)
      } else if (even) {
        t.insert({y, z});
      }
    }
  return solve_coboundary(k, rows, t).has_value();  // (III)
}

bool eq_condition_holds(const ColoredGaussCode& c) {
  SymbolIndex idx{c.code.symbols()};
  const std::size_t k = idx.symbols.size();
  auto rows = interlace_rows(c.code, idx);
  std::vector<char> black(k, 0);
  for (const auto& b : c.black) black[idx(b)] = 1;
  for (uint32_t y = 0; y < k; ++y)
    for (uint32_t z = y + 1; z < k; ++z) {
      bool odd = ((rows[y] & rows[z]).count() + rows[y].count() * rows[z].count()) % 2;
      bool same_colored_crossing = rows[y].test(z) && black[y] == black[z];
      if (odd != same_colored_crossing) return false;
    }
  return true;
}

// --- path merging -------------------------------------------------------------

MergedCode merge_to_single_path(const std::vector<std::vector<std::string>>& rotations) {
  std::map<std::string, int> count;
  std::size_t total = 0;
  for (const auto& seq : rotations) {
    require(seq.size() % 2 == 0, errc::not_eulerian, "odd valency vertex");
    total += seq.size();
    for (const auto& l : seq) count[l]++;
  }
  require(total > 0, errc::precondition_failed, "need at least one edge");
  for (const auto& [l, c] : count)
    require(c == 2, errc::symbol_count, "edge " + l + " occurs " + std::to_string(c) + " times");
  // connectivity over sequences sharing labels
  {
    std::map<std::string, std::size_t> first_seq;
    std::vector<std::size_t> parent(rotations.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t v) {
      while (parent[v] != v) v = parent[v] = parent[parent[v]];
      return v;
    };
    for (std::size_t i = 0; i < rotations.size(); ++i)
      for (const auto& l : rotations[i]) {
        auto [it, fresh] = first_seq.insert({l, i});
        if (!fresh) parent[find(it->second)] = find(i);
      }
    std::set<std::size_t> roots;
    for (std::size_t i = 0; i < rotations.size(); ++i) roots.insert(find(i));
    require(roots.size() <= 1, errc::not_connected, "rotation system is not connected");
  }

  std::vector<std::vector<std::string>> seqs = rotations;
  MergedCode out;
  while (seqs.size() > 1) {
    // least label whose occurrences lie in two different sequences
    std::string pick;
    std::size_t ia = 0, ib = 0;
    for (std::size_t i = 0; i < seqs.size(); ++i)
      for (const auto& l : seqs[i])
        for (std::size_t j = i + 1; j < seqs.size(); ++j)
          for (const auto& l2 : seqs[j])
            if (l == l2 && (pick.empty() || l < pick)) {
              pick = l;
              ia = i;
              ib = j;
            }
    require(!pick.empty(), errc::internal, "no crossing label in a connected system");
    auto rotate_to = [&](std::vector<std::string> s, const std::string& l) {
      auto it = std::find(s.begin(), s.end(), l);
      std::rotate(s.begin(), it, s.end());
      return s;
    };
    std::vector<std::string> sa = rotate_to(seqs[ia], pick);
    std::vector<std::string> sb = rotate_to(seqs[ib], pick);
    std::string e1 = pick + ".1", e2 = pick + ".2";
    std::vector<std::string> merged = {e1, e2};
    merged.insert(merged.end(), sa.begin() + 1, sa.end());
    merged.push_back(e1);
    merged.push_back(e2);
    merged.insert(merged.end(), sb.begin() + 1, sb.end());
    seqs.erase(seqs.begin() + long(ib));
    seqs[ia] = std::move(merged);
    out.ledger.push_back({pick, e1, e2});
  }
  out.code = make_gauss_code(seqs[0]);
  return out;
}

std::vector<std::vector<std::string>> split_merged_crossing(
    const std::vector<std::vector<std::string>>& seqs, const MergeLedgerEntry& entry) {
  for (std::size_t i = 0; i < seqs.size(); ++i) {
    const auto& s = seqs[i];
    std::vector<std::size_t> pos;
    for (std::size_t p = 0; p < s.size(); ++p)
      if (s[p] == entry.first) pos.push_back(p);
    if (pos.empty()) continue;
    require(pos.size() == 2, errc::internal, "digon symbol does not occur twice");
    auto next = [&](std::size_t p) { return (p + 1) % s.size(); };
    require(s[next(pos[0])] == entry.second && s[next(pos[1])] == entry.second, errc::internal,
            "digon pair was disturbed before replay");
    // s = (e1, e2, R, e1, e2, T) cyclically
    std::vector<std::string> r(s.begin() + long(pos[0]) + 2,
                               s.begin() + long(pos[1]));
    std::vector<std::string> t;
    for (std::size_t p = next(next(pos[1])); p != pos[0]; p = next(p)) t.push_back(s[p]);
    std::vector<std::vector<std::string>> out;
    for (std::size_t j = 0; j < seqs.size(); ++j)
      if (j != i) out.push_back(seqs[j]);
    std::vector<std::string> s1 = {entry.edge};
    s1.insert(s1.end(), r.begin(), r.end());
    std::vector<std::string> s2 = {entry.edge};
    s2.insert(s2.end(), t.begin(), t.end());
    out.push_back(std::move(s1));
    out.push_back(std::move(s2));
    return out;
  }
  fail(errc::internal, "ledger entry not found in any sequence");
}

// --- reflexivity ------------------------------------------------------------------

Multigraph omega_digraph(const std::vector<SignedSymbol>& pi) {
  std::map<std::string, int> count;
  for (const auto& s : pi) count[s.symbol]++;
  for (const auto& [s, c] : count)
    require(c == 2, errc::symbol_count, "signed symbol " + s + " occurs " + std::to_string(c));
  std::vector<std::string> symbols;
  for (const auto& [s, c] : count) symbols.push_back(s);
  auto sym_idx = [&](const std::string& s) {
    return uint32_t(std::lower_bound(symbols.begin(), symbols.end(), s) - symbols.begin());
  };
  // nodes: tail(x)=2i, head(x)=2i+1 per dart; identify per consecutive pair
  const std::size_t k = symbols.size();
  std::vector<uint32_t> parent(2 * k);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<uint32_t(uint32_t)> find = [&](uint32_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (std::size_t i = 0; i < pi.size(); ++i) {
    const auto& cur = pi[i];
    const auto& nxt = pi[(i + 1) % pi.size()];
    uint32_t arrive = 2 * sym_idx(cur.symbol) + (cur.positive ? 1 : 0);
    uint32_t depart = 2 * sym_idx(nxt.symbol) + (nxt.positive ? 0 : 1);
    parent[find(arrive)] = find(depart);
  }
  std::map<uint32_t, uint32_t> remap;
  Multigraph g;
  auto node = [&](uint32_t raw) {
    uint32_t r = find(raw);
    auto it = remap.insert({r, uint32_t(remap.size())}).first;
    return it->second;
  };
  for (uint32_t i = 0; i < k; ++i) g.add_edge(node(2 * i), node(2 * i + 1), symbols[i]);
  g.nv = remap.size();
  return g;
}

std::vector<SignedSymbol> signed_sequence(const Multigraph& l, const EdgeWalk& walk) {
  std::vector<int> ref(l.ne(), -1);
  std::vector<SignedSymbol> out;
  for (std::size_t i = 0; i < walk.edges.size(); ++i) {
    uint32_t e = walk.edges[i];
    bool positive;
    if (ref[e] < 0) {
      ref[e] = walk.from_end[i];
      positive = true;  // first traversal fixes the reference orientation
    } else {
      positive = (walk.from_end[i] == uint8_t(ref[e]));
    }
    out.push_back({l.elabels[e], positive});
  }
  return out;
}

bool is_reflexive(const Multigraph& l, const EdgeWalk& walk) {
  Multigraph om = omega_digraph(signed_sequence(l, walk));
  return om.nv == l.nv;
}

EdgeWalk zigzag_walk(const Map& m) {
  PolygonFamily zg = zgons(m);
  require(zg.count() == 1, errc::precondition_failed, "map must have a single zigzag");
  PolygonFamily vg = vgons(m);
  const auto& poly = zg.polygons[0];
  EdgeWalk walk;
  for (std::size_t i = 0; i < poly.size(); i += 2) {
    uint32_t c = poly[i];  // z-edge (c, z(c)); traversal from c's side to z(c)'s
    walk.edges.push_back(Map::square_of(c));
    walk.from_end.push_back(uint8_t((c & 2) >> 1));  // side 0: corners 4s,4s+1
    walk.vertices.push_back(vg.poly_of_corner[c]);
  }
  return walk;
}

// --- families and oracles --------------------------------------------------------

GaussCode pn_code(std::size_t n) {
  require(n >= 1, errc::bad_params, "n must be at least 1");
  std::vector<std::string> seq;
  for (int round = 0; round < 2; ++round)
    for (std::size_t i = 1; i <= n; ++i) seq.push_back(std::to_string(i));
  return make_gauss_code(std::move(seq));
}

std::optional<OracleRealization> oracle_realize(const GaussCode& x, int max_xi) {
  auto symbols = x.symbols();
  require(symbols.size() <= 24, errc::too_large, "oracle limited to 24 symbols");
  const std::size_t k = symbols.size();
  std::optional<OracleRealization> best;
  for (std::size_t mask = 0; mask < (std::size_t(1) << k); ++mask) {
    std::vector<std::string> black;
    for (std::size_t j = 0; j < k; ++j)
      if ((mask >> j) & 1) black.push_back(symbols[j]);
    SurfaceClass s = surface_of_coloring(color_code(x, black));
    if (!best || s.xi < best->surface.xi) best = OracleRealization{std::move(black), s};
    if (best->surface.xi == 0) break;
  }
  if (best && best->surface.xi <= max_xi) return best;
  return std::nullopt;
}

}  // namespace mapforge
