#include "mapforge/multigraph.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "mapforge/gf2.hpp"

namespace mapforge {

namespace {

struct Dsu {
  std::vector<uint32_t> p;
  explicit Dsu(std::size_t n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  uint32_t find(uint32_t x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  void unite(uint32_t a, uint32_t b) { p[find(a)] = find(b); }
};

}  // namespace

uint32_t Multigraph::add_edge(uint32_t u, uint32_t v, std::string label) {
  ends.emplace_back(u, v);
  elabels.push_back(std::move(label));
  nv = std::max<std::size_t>(nv, std::max(u, v) + 1);
  return uint32_t(ends.size() - 1);
}

std::vector<std::size_t> Multigraph::degrees() const {
  std::vector<std::size_t> d(nv, 0);
  for (auto [u, v] : ends) {
    d[u]++;
    d[v]++;
  }
  return d;
}

std::vector<uint32_t> Multigraph::component_of() const {
  Dsu dsu(nv);
  for (auto [u, v] : ends) dsu.unite(u, v);
  std::vector<uint32_t> comp(nv);
  std::vector<int> remap(nv, -1);
  uint32_t next = 0;
  for (uint32_t v = 0; v < nv; ++v) {
    uint32_t r = dsu.find(v);
    if (remap[r] < 0) remap[r] = int(next++);
    comp[v] = uint32_t(remap[r]);
  }
  return comp;
}

std::size_t Multigraph::components() const {
  if (nv == 0) return 0;
  auto comp = component_of();
  return comp.empty() ? 0 : std::size_t(*std::max_element(comp.begin(), comp.end())) + 1;
}

bool Multigraph::eulerian() const {
  for (std::size_t d : degrees())
    if (d & 1) return false;
  return true;
}

bool Multigraph::simple() const {
  std::set<std::pair<uint32_t, uint32_t>> seen;
  for (auto [u, v] : ends) {
    if (u == v) return false;
    auto key = std::minmax(u, v);
    if (!seen.insert({key.first, key.second}).second) return false;
  }
  return true;
}

bool Multigraph::is_cycle(const BitVec& s) const {
  std::vector<std::size_t> d(nv, 0);
  for (uint32_t e : s.indices()) {
    d[ends[e].first]++;
    d[ends[e].second]++;
  }
  for (std::size_t x : d)
    if (x & 1) return false;
  return true;
}

bool Multigraph::is_circuit(const BitVec& s) const {
  auto idx = s.indices();
  if (idx.empty()) return false;
  std::vector<std::size_t> d(nv, 0);
  for (uint32_t e : idx) {
    d[ends[e].first]++;
    d[ends[e].second]++;
  }
  for (std::size_t x : d)
    if (x != 0 && x != 2) return false;
  // connectivity of the support
  Dsu dsu(nv);
  for (uint32_t e : idx) dsu.unite(ends[e].first, ends[e].second);
  uint32_t root = dsu.find(ends[idx[0]].first);
  for (uint32_t e : idx)
    if (dsu.find(ends[e].first) != root || dsu.find(ends[e].second) != root) return false;
  return true;
}

std::vector<BitVec> Multigraph::circuit_decomposition(const BitVec& s) const {
  require(is_cycle(s), errc::not_a_cycle, "cannot decompose a non-cycle");
  std::vector<BitVec> out;
  BitVec rest = s;
  std::vector<std::vector<uint32_t>> inc(nv);
  while (rest.any()) {
    for (auto& v : inc) v.clear();
    auto idx = rest.indices();
    for (uint32_t e : idx) {
      inc[ends[e].first].push_back(e);
      if (ends[e].second != ends[e].first) inc[ends[e].second].push_back(e);
    }
    // walk a closed trail from the lowest remaining edge, peeling the first
    // simple circuit it closes
    uint32_t e0 = idx[0];
    BitVec used(ne());
    std::vector<uint32_t> trail_v, trail_e;
    uint32_t at = ends[e0].first;
    trail_v.push_back(at);
    BitVec circ(ne());
    for (;;) {
      uint32_t next_e = UINT32_MAX;
      for (uint32_t e : inc[at])
        if (rest.test(e) && !used.test(e)) {
          next_e = e;
          break;
        }
      require(next_e != UINT32_MAX, errc::internal, "cycle walk stuck");
      used.set(next_e);
      trail_e.push_back(next_e);
      at = (ends[next_e].first == at && ends[next_e].second != at) ? ends[next_e].second
           : (ends[next_e].second == at && ends[next_e].first != at) ? ends[next_e].first
                                                                     : ends[next_e].second;
      if (ends[next_e].first == ends[next_e].second) at = ends[next_e].first;  // loop
      // did we close a circuit?
      auto it = std::find(trail_v.begin(), trail_v.end(), at);
      if (it != trail_v.end()) {
        std::size_t start = std::size_t(it - trail_v.begin());
        for (std::size_t i = start; i < trail_e.size(); ++i) circ.set(trail_e[i]);
        break;
      }
      trail_v.push_back(at);
    }
    out.push_back(circ);
    rest ^= circ;
  }
  return out;
}

BitVec Multigraph::coboundary(const std::vector<uint32_t>& verts) const {
  std::vector<char> in(nv, 0);
  for (uint32_t v : verts) in[v] = 1;
  BitVec b(ne());
  for (std::size_t e = 0; e < ne(); ++e)
    if (in[ends[e].first] != in[ends[e].second]) b.set(e);
  return b;
}

}  // namespace mapforge
