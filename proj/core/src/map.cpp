#include "mapforge/map.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace mapforge {

namespace {

void check_involution(std::span<const uint32_t> p, std::size_t n, errc code, const char* name) {
  require(p.size() == n, errc::bad_corner_count, "involution table has wrong size");
  for (uint32_t x = 0; x < n; ++x) {
    require(p[x] < n, errc::parse_error, std::string(name) + " maps outside corner range");
    require(p[x] != x, code, std::string(name) + " has a fixed point");
    require(p[p[x]] == x, errc::parse_error, std::string(name) + " is not an involution");
  }
}

std::vector<std::string> default_labels(std::size_t n) {
  std::vector<std::string> labels(n);
  int width = 1;
  for (std::size_t t = n; t > 10; t /= 10) ++width;
  for (std::size_t k = 0; k < n; ++k) {
    std::string num = std::to_string(k);
    labels[k] = "e" + std::string(std::size_t(width) - num.size(), '0') + num;
  }
  return labels;
}

}  // namespace

namespace {

Map normalize_map(std::span<const uint32_t> v, std::span<const uint32_t> f,
                  std::span<const uint32_t> a, bool strict);

}  // namespace

Map Map::validate(std::span<const uint32_t> v, std::span<const uint32_t> f,
                  std::span<const uint32_t> a) {
  return normalize_map(v, f, a, true);
}

Map Map::validate_relaxed(std::span<const uint32_t> v, std::span<const uint32_t> f,
                          std::span<const uint32_t> a) {
  return normalize_map(v, f, a, false);
}

namespace {

Map normalize_map(std::span<const uint32_t> v, std::span<const uint32_t> f,
                  std::span<const uint32_t> a, bool strict) {
  const std::size_t n = v.size();
  require(n % 4 == 0, errc::bad_corner_count, "corner count must be divisible by 4");
  check_involution(v, n, errc::fixed_point, "v");
  check_involution(f, n, errc::fixed_point, "f");
  check_involution(a, n, errc::fixed_point, "a");
  for (uint32_t x = 0; x < n; ++x) {
    require(v[x] != f[x], errc::not_squares, "v and f coincide at a corner");
    if (strict)
      require(a[x] != v[x] && a[x] != f[x], errc::matching_overlap,
              "a coincides with v or f at corner " + std::to_string(x));
  }
  // v+f must induce squares: (v o f) is a fixed-point-free involution
  for (uint32_t x = 0; x < n; ++x) {
    uint32_t zx = v[f[x]];
    require(zx == f[v[x]], errc::not_squares, "v*f and f*v disagree");
    require(zx != x, errc::not_squares, "v*f has a fixed point");
    require(v[f[zx]] == x, errc::not_squares, "(v*f)^2 is not the identity");
  }
  // normalize into the canonical corner scheme, squares ordered by least corner
  std::vector<uint32_t> old_to_new(n, UINT32_MAX);
  std::vector<char> seen(n, 0);
  uint32_t square = 0;
  for (uint32_t c = 0; c < n; ++c) {
    if (seen[c]) continue;
    uint32_t c0 = c, c1 = v[c0], c2 = f[c1], c3 = v[c2];
    require(f[c3] == c0, errc::not_squares, "square walk does not close");
    uint32_t corners[4] = {c0, c1, c2, c3};
    for (int i = 0; i < 4; ++i) {
      require(!seen[corners[i]], errc::not_squares, "square corners overlap");
      seen[corners[i]] = 1;
      old_to_new[corners[i]] = 4 * square + uint32_t(i);
    }
    ++square;
  }
  std::vector<uint32_t> na(n);
  for (uint32_t x = 0; x < n; ++x) na[old_to_new[x]] = old_to_new[a[x]];
  return Map::from_parts(default_labels(n / 4), std::move(na));
}

}  // namespace

Map Map::from_parts(std::vector<std::string> labels, std::vector<uint32_t> a) {
  require(a.size() == labels.size() * 4, errc::bad_corner_count,
          "corner count does not match label count");
  require(std::is_sorted(labels.begin(), labels.end()) &&
              std::adjacent_find(labels.begin(), labels.end()) == labels.end(),
          errc::malformed_descriptor, "labels must be sorted and unique");
  check_involution(a, a.size(), errc::fixed_point, "a");
  Map m;
  m.labels_ = std::move(labels);
  m.a_ = std::move(a);
  return m;
}

uint32_t Map::label_index(const std::string& l) const {
  auto it = std::lower_bound(labels_.begin(), labels_.end(), l);
  require(it != labels_.end() && *it == l, errc::bad_params, "unknown edge label " + l);
  return uint32_t(it - labels_.begin());
}

// --- polygons ---------------------------------------------------------------

namespace {

template <typename I1, typename I2>
PolygonFamily walk_polygons(const Map& m, PolyKind kind, I1 first, I2 second) {
  const std::size_t n = m.corner_count();
  PolygonFamily fam;
  fam.kind = kind;
  fam.poly_of_corner.assign(n, UINT32_MAX);
  for (uint32_t c = 0; c < n; ++c) {
    if (fam.poly_of_corner[c] != UINT32_MAX) continue;
    std::vector<uint32_t> poly;
    uint32_t x = c;
    for (;;) {
      poly.push_back(x);
      fam.poly_of_corner[x] = uint32_t(fam.polygons.size());
      uint32_t y = first(x);
      poly.push_back(y);
      fam.poly_of_corner[y] = uint32_t(fam.polygons.size());
      x = second(y);
      if (x == c) break;
    }
    fam.polygons.push_back(std::move(poly));
  }
  return fam;
}

}  // namespace

PolygonFamily vgons(const Map& m) {
  return walk_polygons(
      m, PolyKind::vgon, [](uint32_t x) { return Map::v(x); },
      [&m](uint32_t x) { return m.a(x); });
}

PolygonFamily fgons(const Map& m) {
  return walk_polygons(
      m, PolyKind::fgon, [](uint32_t x) { return Map::f(x); },
      [&m](uint32_t x) { return m.a(x); });
}

PolygonFamily zgons(const Map& m) {
  return walk_polygons(
      m, PolyKind::zgon, [](uint32_t x) { return Map::z(x); },
      [&m](uint32_t x) { return m.a(x); });
}

PolygonFamily squares(const Map& m) {
  return walk_polygons(
      m, PolyKind::square, [](uint32_t x) { return Map::v(x); },
      [](uint32_t x) { return Map::f(x); });
}

// --- components, characteristic, orientability ------------------------------

std::vector<uint32_t> component_of_corner(const Map& m) {
  const std::size_t n = m.corner_count();
  std::vector<uint32_t> comp(n, UINT32_MAX);
  uint32_t next = 0;
  std::vector<uint32_t> stack;
  for (uint32_t c = 0; c < n; ++c) {
    if (comp[c] != UINT32_MAX) continue;
    stack.push_back(c);
    comp[c] = next;
    while (!stack.empty()) {
      uint32_t x = stack.back();
      stack.pop_back();
      for (uint32_t y : {Map::v(x), Map::f(x), m.a(x)}) {
        if (comp[y] == UINT32_MAX) {
          comp[y] = next;
          stack.push_back(y);
        }
      }
    }
    ++next;
  }
  return comp;
}

std::size_t component_count(const Map& m) {
  if (m.corner_count() == 0) return 0;
  auto comp = component_of_corner(m);
  return std::size_t(*std::max_element(comp.begin(), comp.end())) + 1;
}

bool is_connected(const Map& m) { return component_count(m) == 1; }

int euler_characteristic(const Map& m) {
  return int(vgons(m).count()) - int(m.square_count()) + int(fgons(m).count());
}

bool is_orientable(const Map& m) {
  // bipartiteness of the cubic graph
  const std::size_t n = m.corner_count();
  std::vector<int> color(n, -1);
  std::vector<uint32_t> stack;
  for (uint32_t c = 0; c < n; ++c) {
    if (color[c] >= 0) continue;
    color[c] = 0;
    stack.push_back(c);
    while (!stack.empty()) {
      uint32_t x = stack.back();
      stack.pop_back();
      for (uint32_t y : {Map::v(x), Map::f(x), m.a(x)}) {
        if (color[y] < 0) {
          color[y] = 1 - color[x];
          stack.push_back(y);
        } else if (color[y] == color[x]) {
          return false;
        }
      }
    }
  }
  return true;
}

SurfaceClass surface_class(int chi, bool orientable) {
  SurfaceClass s;
  s.chi = chi;
  s.xi = 2 - chi;
  s.orientable = orientable;
  if (chi == 2 && orientable) s.name = "sphere";
  else if (chi == 1 && !orientable) s.name = "projective-plane";
  else if (chi == 0 && orientable) s.name = "torus";
  else if (chi == 0 && !orientable) s.name = "klein-bottle";
  else s.name = "generic";
  return s;
}

SurfaceClass classify_surface(const Map& m) {
  require(is_connected(m), errc::not_connected, "surface classification needs a connected map");
  return surface_class(euler_characteristic(m), is_orientable(m));
}

// --- balancing partitions -----------------------------------------------------

BalancingPartition balancing_partition(const Map& m) {
  // per v-gon, class A is the a*v orbit containing the least corner
  PolygonFamily vg = vgons(m);
  BalancingPartition bp;
  bp.in_a.assign(m.corner_count(), 0);
  for (const auto& poly : vg.polygons) {
    // polygon corners alternate the two orbits; even positions share the
    // orbit of the least corner (= poly[0])
    for (std::size_t i = 0; i < poly.size(); i += 2) bp.in_a[poly[i]] = 1;
  }
  for (uint32_t s = 0; s < m.square_count(); ++s)
    if (bp.in_a[4 * s] != bp.in_a[4 * s + 2]) bp.imbalance.push_back(s);
  return bp;
}

BitVec imbalance_vector(const Map& m) {
  auto bp = balancing_partition(m);
  return BitVec::from_indices(m.square_count(), bp.imbalance);
}

bool is_imbalance(const Map& m, const BitVec& s) {
  require(s.size() == m.square_count(), errc::ground_mismatch, "subset over wrong ground");
  Multigraph g;  // induced graph, built inline to avoid an orbit dependency
  PolygonFamily vg = vgons(m);
  g.nv = vg.count();
  for (uint32_t k = 0; k < m.square_count(); ++k)
    g.add_edge(vg.poly_of_corner[4 * k], vg.poly_of_corner[4 * k + 2], m.labels()[k]);
  Gf2Space cob = coboundary_space(g);
  return cob.member(s ^ imbalance_vector(m));
}

// --- descriptors --------------------------------------------------------------

Descriptor to_descriptor(const Map& m) {
  BalancingPartition bp = balancing_partition(m);
  PolygonFamily vg = vgons(m);
  Descriptor d;
  for (const auto& poly : vg.polygons) {
    std::vector<std::string> seq;
    // even positions lie in class A; they form one a*v orbit in polygon order
    for (std::size_t i = 0; i < poly.size(); i += 2)
      seq.push_back(m.labels()[Map::square_of(poly[i])]);
    d.vgon_sequences.push_back(std::move(seq));
  }
  for (uint32_t s : bp.imbalance) d.imbalance.push_back(m.labels()[s]);
  return d;
}

Map from_descriptor(const Descriptor& d) {
  // collect labels; each must occur exactly twice
  std::map<std::string, int> count;
  for (const auto& seq : d.vgon_sequences)
    for (const auto& l : seq) count[l]++;
  for (const auto& [l, c] : count)
    require(c == 2, errc::malformed_descriptor, "label " + l + " occurs " + std::to_string(c) +
                                                    " times (need exactly 2)");
  std::vector<std::string> labels;
  labels.reserve(count.size());
  for (const auto& [l, c] : count) labels.push_back(l);

  auto index_of = [&](const std::string& l) {
    return uint32_t(std::lower_bound(labels.begin(), labels.end(), l) - labels.begin());
  };

  const std::size_t n = labels.size();
  // consistent pairing: first occurrence of a label uses corners (4k, 4k+1),
  // the second (4k+2, 4k+3); a joins each exit corner to the next entry
  std::vector<uint32_t> a(4 * n, UINT32_MAX);
  std::vector<char> seen_once(n, 0);
  for (const auto& seq : d.vgon_sequences) {
    require(!seq.empty(), errc::malformed_descriptor, "empty v-gon sequence");
    std::vector<uint32_t> entry(seq.size()), exit(seq.size());
    for (std::size_t i = 0; i < seq.size(); ++i) {
      uint32_t k = index_of(seq[i]);
      uint32_t base = seen_once[k] ? 4 * k + 2 : 4 * k;
      seen_once[k] = 1;
      entry[i] = base;
      exit[i] = base + 1;
    }
    for (std::size_t i = 0; i < seq.size(); ++i) {
      uint32_t nxt = entry[(i + 1) % seq.size()];
      a[exit[i]] = nxt;
      a[nxt] = exit[i];
    }
  }

  // achieve the requested imbalance: the consistent pairing is balanced
  // everywhere, so flip one v-edge per requested square (Prop-3.0 style)
  for (const auto& l : d.imbalance) {
    auto it = std::lower_bound(labels.begin(), labels.end(), l);
    require(it != labels.end() && *it == l, errc::malformed_descriptor,
            "imbalance label " + l + " not present in the v-ordering");
  }
  std::vector<std::string> imb = d.imbalance;
  std::sort(imb.begin(), imb.end());
  imb.erase(std::unique(imb.begin(), imb.end()), imb.end());
  for (const auto& l : imb) {
    uint32_t k = index_of(l);
    uint32_t lo;
    if (a[4 * k] != 4 * k + 1) lo = 4 * k;
    else if (a[4 * k + 2] != 4 * k + 3) lo = 4 * k + 2;
    else continue;  // both v-edges are digons: the component already absorbs the flip
    uint32_t hi = lo + 1;
    uint32_t p = a[lo], q = a[hi];
    a[lo] = q;
    a[q] = lo;
    a[hi] = p;
    a[p] = hi;
  }
  return Map::from_parts(std::move(labels), std::move(a));
}

// --- a-maps ---------------------------------------------------------------------

AMap to_amap(const Map& m) {
  const std::size_t n = m.corner_count();
  AMap am;
  am.rot.resize(n);
  am.theta.resize(n);
  am.phi.resize(n);
  for (uint32_t x = 0; x < n; ++x) {
    am.rot[x] = m.a(Map::v(x));
    am.theta[x] = Map::v(x);
    am.phi[x] = Map::f(x);
  }
  return am;
}

Map from_amap(const AMap& am) {
  const std::size_t n = am.rot.size();
  require(am.theta.size() == n && am.phi.size() == n, errc::bad_corner_count,
          "permutation sizes differ");
  auto is_perm = [&](const std::vector<uint32_t>& p) {
    std::vector<char> hit(n, 0);
    for (uint32_t y : p) {
      if (y >= n || hit[y]) return false;
      hit[y] = 1;
    }
    return true;
  };
  require(is_perm(am.rot) && is_perm(am.theta) && is_perm(am.phi), errc::parse_error,
          "tables are not permutations");
  // am1: Theta Phi = Phi Theta, Theta^2 = Phi^2 = id
  for (uint32_t x = 0; x < n; ++x) {
    require(am.theta[am.theta[x]] == x && am.phi[am.phi[x]] == x, errc::axiom_am1,
            "Theta or Phi is not an involution");
    require(am.theta[am.phi[x]] == am.phi[am.theta[x]], errc::axiom_am1,
            "Theta and Phi do not commute");
  }
  // am2: x, Theta x, Phi x, Theta Phi x pairwise distinct
  for (uint32_t x = 0; x < n; ++x) {
    uint32_t tx = am.theta[x], px = am.phi[x], tpx = am.theta[px];
    require(tx != x && px != x && tpx != x && tx != px && tx != tpx && px != tpx, errc::axiom_am2,
            "x, Theta x, Phi x, Theta Phi x are not distinct");
  }
  // am3: R Theta = Theta R^{-1}
  std::vector<uint32_t> rinv(n);
  for (uint32_t x = 0; x < n; ++x) rinv[am.rot[x]] = x;
  for (uint32_t x = 0; x < n; ++x)
    require(am.rot[am.theta[x]] == am.theta[rinv[x]], errc::axiom_am3,
            "R Theta != Theta R^-1");
  // am4: R^k(x) != Theta x for all k
  for (uint32_t x = 0; x < n; ++x) {
    uint32_t y = x;
    do {
      require(y != am.theta[x], errc::axiom_am4, "some R power maps x to Theta x");
      y = am.rot[y];
    } while (y != x);
  }
  // reconstruct: v = Theta, f = Phi, a = R Theta (so that R = a v)
  std::vector<uint32_t> a(n);
  for (uint32_t x = 0; x < n; ++x) a[x] = am.rot[am.theta[x]];
  return Map::validate_relaxed(am.theta, am.phi, a);
}

bool amap_orientable(const AMap& am) {
  const std::size_t n = am.rot.size();
  // orbits of <R, Theta, Phi> vs orbits of <R, Theta Phi>
  auto orbit_count = [&](const std::vector<const std::vector<uint32_t>*>& gens) {
    std::vector<char> seen(n, 0);
    std::size_t cnt = 0;
    std::vector<uint32_t> stack;
    for (uint32_t c = 0; c < n; ++c) {
      if (seen[c]) continue;
      ++cnt;
      seen[c] = 1;
      stack.push_back(c);
      while (!stack.empty()) {
        uint32_t x = stack.back();
        stack.pop_back();
        for (auto* g : gens) {
          uint32_t y = (*g)[x];
          if (!seen[y]) {
            seen[y] = 1;
            stack.push_back(y);
          }
        }
      }
    }
    return cnt;
  };
  std::vector<uint32_t> tp(n);
  for (uint32_t x = 0; x < n; ++x) tp[x] = am.theta[am.phi[x]];
  std::size_t big = orbit_count({&am.rot, &am.theta, &am.phi});
  std::size_t small = orbit_count({&am.rot, &tp});
  return small == 2 * big;
}

}  // namespace mapforge
