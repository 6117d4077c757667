#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mapforge/error.hpp"

namespace mapforge {

struct Multigraph;

// Bit vector over a fixed ground set of size n.
class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}
  static BitVec from_indices(std::size_t n, std::span<const uint32_t> idx);

  std::size_t size() const { return n_; }
  bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
  void set(std::size_t i, bool v = true) {
    uint64_t m = uint64_t(1) << (i & 63);
    if (v) w_[i >> 6] |= m; else w_[i >> 6] &= ~m;
  }
  void flip(std::size_t i) { w_[i >> 6] ^= uint64_t(1) << (i & 63); }

  BitVec& operator^=(const BitVec& o);
  friend BitVec operator^(BitVec a, const BitVec& b) { a ^= b; return a; }
  BitVec& operator&=(const BitVec& o);
  friend BitVec operator&(BitVec a, const BitVec& b) { a &= b; return a; }

  std::size_t count() const;
  bool any() const;
  bool none() const { return !any(); }
  // index of lowest set bit, -1 if none
  int lowest() const;
  bool parity_and(const BitVec& o) const;  // <a,b> over GF(2)

  std::vector<uint32_t> indices() const;

  bool operator==(const BitVec& o) const { return n_ == o.n_ && w_ == o.w_; }
  // order by lowest differing index ("lexicographic" over the ground order)
  bool operator<(const BitVec& o) const;

 private:
  std::size_t n_ = 0;
  std::vector<uint64_t> w_;
};

// Subspace of GF(2)^ground in canonical reduced row echelon form.
class Gf2Space {
 public:
  Gf2Space() = default;
  explicit Gf2Space(std::vector<std::string> ground) : ground_(std::move(ground)) {}

  static Gf2Space span(std::vector<std::string> ground, std::span<const BitVec> vectors);

  const std::vector<std::string>& ground() const { return ground_; }
  const std::vector<BitVec>& basis() const { return rows_; }
  std::size_t dim() const { return rows_.size(); }

  // residual of v after reduction against the basis
  BitVec reduce(BitVec v) const;
  bool member(const BitVec& v) const { return reduce(std::move(v)).none(); }
  bool contains(const Gf2Space& b) const;
  bool operator==(const Gf2Space& o) const;

  // true if some basis row has bit i set (i.e. i lies in the support)
  bool touches(std::size_t i) const;

  friend Gf2Space sum_space(const Gf2Space& a, const Gf2Space& b);
  friend Gf2Space perp(const Gf2Space& a);
  friend Gf2Space intersect(const Gf2Space& a, const Gf2Space& b);

 private:
  void insert(BitVec v);  // keeps RREF invariant
  std::vector<std::string> ground_;
  std::vector<BitVec> rows_;
};

Gf2Space sum_space(const Gf2Space& a, const Gf2Space& b);
Gf2Space perp(const Gf2Space& a);
Gf2Space intersect(const Gf2Space& a, const Gf2Space& b);
// requires b subspace of a
std::size_t quotient_dim(const Gf2Space& a, const Gf2Space& b);

// Cycle / coboundary / bicycle spaces of a multigraph, over its edge labels.
Gf2Space cycle_space(const Multigraph& g);
Gf2Space coboundary_space(const Multigraph& g);
Gf2Space bicycle_space(const Multigraph& g);

}  // namespace mapforge
