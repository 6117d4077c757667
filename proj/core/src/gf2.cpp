#include "mapforge/gf2.hpp"

#include <algorithm>
#include <bit>

#include "mapforge/multigraph.hpp"

namespace mapforge {

BitVec BitVec::from_indices(std::size_t n, std::span<const uint32_t> idx) {
  BitVec v(n);
  for (uint32_t i : idx) v.set(i);
  return v;
}

BitVec& BitVec::operator^=(const BitVec& o) {
  require(n_ == o.n_, errc::ground_mismatch, "bit vector sizes differ");
  for (std::size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
  return *this;
}

BitVec& BitVec::operator&=(const BitVec& o) {
  require(n_ == o.n_, errc::ground_mismatch, "bit vector sizes differ");
  for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
  return *this;
}

std::size_t BitVec::count() const {
  std::size_t c = 0;
  for (uint64_t w : w_) c += std::popcount(w);
  return c;
}

bool BitVec::any() const {
  for (uint64_t w : w_)
    if (w) return true;
  return false;
}

int BitVec::lowest() const {
  for (std::size_t i = 0; i < w_.size(); ++i)
    if (w_[i]) return int(i * 64 + std::countr_zero(w_[i]));
  return -1;
}

bool BitVec::parity_and(const BitVec& o) const {
  require(n_ == o.n_, errc::ground_mismatch, "bit vector sizes differ");
  uint64_t acc = 0;
  for (std::size_t i = 0; i < w_.size(); ++i) acc ^= w_[i] & o.w_[i];
  return std::popcount(acc) & 1;
}

std::vector<uint32_t> BitVec::indices() const {
  std::vector<uint32_t> out;
  for (std::size_t i = 0; i < w_.size(); ++i) {
    uint64_t w = w_[i];
    while (w) {
      out.push_back(uint32_t(i * 64 + std::countr_zero(w)));
      w &= w - 1;
    }
  }
  return out;
}

bool BitVec::operator<(const BitVec& o) const {
  for (std::size_t i = 0; i < std::min(w_.size(), o.w_.size()); ++i) {
    if (w_[i] != o.w_[i]) {
      uint64_t d = w_[i] ^ o.w_[i];
      uint64_t bit = d & (~d + 1);
      return o.w_[i] & bit;  // smaller = the one without the lowest differing bit
    }
  }
  return w_.size() < o.w_.size();
}

void Gf2Space::insert(BitVec v) {
  for (const BitVec& r : rows_) {
    int p = r.lowest();
    if (p >= 0 && v.test(std::size_t(p))) v ^= r;
  }
  if (v.none()) return;
  int p = v.lowest();
  for (BitVec& r : rows_)
    if (r.test(std::size_t(p))) r ^= v;
  auto it = std::upper_bound(rows_.begin(), rows_.end(), v,
                             [](const BitVec& a, const BitVec& b) { return a.lowest() < b.lowest(); });
  rows_.insert(it, std::move(v));
}

Gf2Space Gf2Space::span(std::vector<std::string> ground, std::span<const BitVec> vectors) {
  Gf2Space s(std::move(ground));
  for (const BitVec& v : vectors) {
    require(v.size() == s.ground_.size(), errc::ground_mismatch, "vector does not match ground set");
    s.insert(v);
  }
  return s;
}

BitVec Gf2Space::reduce(BitVec v) const {
  require(v.size() == ground_.size(), errc::ground_mismatch, "vector does not match ground set");
  for (const BitVec& r : rows_) {
    int p = r.lowest();
    if (p >= 0 && v.test(std::size_t(p))) v ^= r;
  }
  return v;
}

bool Gf2Space::contains(const Gf2Space& b) const {
  require(ground_ == b.ground_, errc::ground_mismatch, "spaces over different grounds");
  for (const BitVec& r : b.rows_)
    if (!member(r)) return false;
  return true;
}

bool Gf2Space::operator==(const Gf2Space& o) const {
  return ground_ == o.ground_ && rows_ == o.rows_;  // canonical RREF
}

bool Gf2Space::touches(std::size_t i) const {
  for (const BitVec& r : rows_)
    if (r.test(i)) return true;
  return false;
}

Gf2Space sum_space(const Gf2Space& a, const Gf2Space& b) {
  require(a.ground_ == b.ground_, errc::ground_mismatch, "spaces over different grounds");
  Gf2Space s = a;
  for (const BitVec& r : b.rows_) s.insert(r);
  return s;
}

Gf2Space perp(const Gf2Space& a) {
  const std::size_t n = a.ground().size();
  // kernel of the basis matrix: one generator per free column
  std::vector<char> is_pivot(n, 0);
  for (const BitVec& r : a.basis()) {
    int p = r.lowest();
    if (p >= 0) is_pivot[std::size_t(p)] = 1;
  }
  std::vector<BitVec> gen;
  for (std::size_t c = 0; c < n; ++c) {
    if (is_pivot[c]) continue;
    BitVec v(n);
    v.set(c);
    for (const BitVec& r : a.basis()) {
      if (r.test(c)) v.set(std::size_t(r.lowest()));
    }
    gen.push_back(std::move(v));
  }
  return Gf2Space::span(a.ground(), gen);
}

Gf2Space intersect(const Gf2Space& a, const Gf2Space& b) {
  // (A^perp + B^perp)^perp, property 2.0.1(c) style
  return perp(sum_space(perp(a), perp(b)));
}

std::size_t quotient_dim(const Gf2Space& a, const Gf2Space& b) {
  require(a.contains(b), errc::not_subspace, "quotient by a non-subspace");
  return a.dim() - b.dim();
}

Gf2Space cycle_space(const Multigraph& g) {
  // kernel of the vertex/edge incidence matrix; loops have zero columns
  const std::size_t ne = g.ne();
  std::vector<BitVec> vertex_rows(g.nv, BitVec(ne));
  for (std::size_t e = 0; e < ne; ++e) {
    auto [u, v] = g.ends[e];
    if (u != v) {
      vertex_rows[u].flip(e);
      vertex_rows[v].flip(e);
    }
  }
  Gf2Space rowspace = Gf2Space::span(g.elabels, vertex_rows);
  return perp(rowspace);
}

Gf2Space coboundary_space(const Multigraph& g) {
  const std::size_t ne = g.ne();
  std::vector<BitVec> vertex_rows(g.nv, BitVec(ne));
  for (std::size_t e = 0; e < ne; ++e) {
    auto [u, v] = g.ends[e];
    if (u != v) {
      vertex_rows[u].flip(e);
      vertex_rows[v].flip(e);
    }
  }
  return Gf2Space::span(g.elabels, vertex_rows);
}

Gf2Space bicycle_space(const Multigraph& g) {
  return intersect(cycle_space(g), coboundary_space(g));
}

}  // namespace mapforge
