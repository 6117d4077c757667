#include "mapforge/io.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <sstream>

#include "mapforge/orbit.hpp"

namespace mapforge {

namespace {

std::vector<std::vector<std::string>> tokenized_lines(const std::string& text) {
  std::vector<std::vector<std::string>> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> toks{std::istream_iterator<std::string>(ls),
                                  std::istream_iterator<std::string>()};
    if (!toks.empty()) out.push_back(std::move(toks));
  }
  return out;
}

// split "name: a b c" shapes where ':' may stick to the name token
std::pair<std::string, std::vector<std::string>> split_at_colon(
    const std::vector<std::string>& toks, std::size_t from) {
  std::string joined;
  for (std::size_t i = from; i < toks.size(); ++i) {
    if (!joined.empty()) joined += ' ';
    joined += toks[i];
  }
  auto colon = joined.find(':');
  require(colon != std::string::npos, errc::parse_error, "expected ':' in line");
  std::string name = joined.substr(0, colon);
  while (!name.empty() && name.back() == ' ') name.pop_back();
  std::istringstream rest(joined.substr(colon + 1));
  std::vector<std::string> labels{std::istream_iterator<std::string>(rest),
                                  std::istream_iterator<std::string>()};
  return {name, labels};
}

}  // namespace

Descriptor parse_descriptor(const std::string& text) {
  auto lines = tokenized_lines(text);
  require(!lines.empty() && lines[0].size() == 2 && lines[0][0] == "map" && lines[0][1] == "v1",
          errc::parse_error, "map file must start with 'map v1'");
  Descriptor d;
  bool saw_imbalance = false;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& toks = lines[i];
    if (toks[0] == "vgon") {
      auto [name, labels] = split_at_colon(toks, 1);
      require(!saw_imbalance, errc::parse_error, "vgon line after imbalance line");
      require(!labels.empty(), errc::parse_error, "empty vgon " + name);
      d.vgon_sequences.push_back(std::move(labels));
    } else if (toks[0].rfind("imbalance", 0) == 0) {
      auto [name, labels] = split_at_colon(toks, 0);
      require(name == "imbalance", errc::parse_error, "unrecognized line " + toks[0]);
      require(!saw_imbalance, errc::parse_error, "duplicate imbalance line");
      saw_imbalance = true;
      d.imbalance = std::move(labels);
    } else {
      fail(errc::parse_error, "unrecognized line starting with '" + toks[0] + "'");
    }
  }
  require(saw_imbalance, errc::parse_error, "missing imbalance line");
  return d;
}

Map parse_map(const std::string& text) { return from_descriptor(parse_descriptor(text)); }

std::string serialize_map(const Map& m) {
  Descriptor d = to_descriptor(m);
  std::ostringstream out;
  out << "map v1\n";
  for (std::size_t i = 0; i < d.vgon_sequences.size(); ++i) {
    out << "vgon v" << i << ":";
    for (const auto& l : d.vgon_sequences[i]) out << ' ' << l;
    out << '\n';
  }
  out << "imbalance:";
  for (const auto& l : d.imbalance) out << ' ' << l;
  out << '\n';
  return out.str();
}

ColoredGaussCode parse_gauss_code(const std::string& text) {
  auto lines = tokenized_lines(text);
  require(!lines.empty() && lines[0].size() == 1 && lines[0][0] == "gausscode", errc::parse_error,
          "gauss code file must start with 'gausscode'");
  std::vector<std::string> seq, black;
  bool saw_seq = false;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto [name, labels] = split_at_colon(lines[i], 0);
    if (name == "seq") {
      require(!saw_seq, errc::parse_error, "duplicate seq line");
      saw_seq = true;
      seq = labels;
    } else if (name == "black") {
      black = labels;
    } else {
      fail(errc::parse_error, "unrecognized line '" + name + "'");
    }
  }
  require(saw_seq, errc::parse_error, "missing seq line");
  return color_code(make_gauss_code(std::move(seq)), std::move(black));
}

std::string serialize_gauss_code(const ColoredGaussCode& c) {
  std::ostringstream out;
  out << serialize_gauss_code(c.code);
  out << "black:";
  for (const auto& s : c.black) out << ' ' << s;
  out << '\n';
  return out.str();
}

std::string serialize_gauss_code(const GaussCode& c) {
  std::ostringstream out;
  out << "gausscode\nseq:";
  for (const auto& s : c.seq) out << ' ' << s;
  out << '\n';
  return out.str();
}

std::string read_file_or_stdin(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path);
  require(in.good(), errc::parse_error, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// --- fixtures ----------------------------------------------------------------------

Map cube_map() {
  Descriptor d;
  d.vgon_sequences = {
      {"b0", "u0", "b3"},  // outer square of the Schlegel drawing
      {"b1", "u1", "b0"},
      {"b2", "u2", "b1"},
      {"b2", "b3", "u3"},
      {"t0", "t3", "u0"},  // inner square
      {"t1", "t0", "u1"},
      {"u2", "t2", "t1"},
      {"t2", "u3", "t3"},
  };
  return from_descriptor(d);
}

Map tetrahedron_map() {
  Descriptor d;
  d.vgon_sequences = {
      {"e12", "e14", "e13"},
      {"e23", "e24", "e12"},
      {"e13", "e34", "e23"},
      {"e34", "e14", "e24"},
  };
  return from_descriptor(d);
}

Map loop_map(bool projective) {
  Descriptor d;
  d.vgon_sequences = {{"x", "x"}};
  if (projective) d.imbalance = {"x"};
  return from_descriptor(d);
}

Map prism_map() {
  // triangular prism, planar drawing with outer triangle 0,1,2
  Descriptor d;
  d.vgon_sequences = {
      {"a0", "s0", "a2"}, {"a1", "s1", "a0"}, {"a2", "s2", "a1"},
      {"b0", "b2", "s0"}, {"b1", "b0", "s1"}, {"b2", "b1", "s2"},
  };
  return from_descriptor(d);
}

// --- projective line arrangements ---------------------------------------------------

namespace {

struct Wiring {
  std::size_t wires = 0;
  // events in time order; wire u enters slot 0 (LU) and leaves slot 2 (RL),
  // wire w enters slot 1 (LL) and leaves slot 3 (RU)
  struct Event {
    uint32_t u, w;
  };
  std::vector<Event> events;
  struct Arc {
    uint32_t from_event, from_slot;
    uint32_t to_event, to_slot;
    uint32_t wire;
    bool seam;
    std::string label;
  };
  std::vector<Arc> arcs;
  std::vector<std::array<uint32_t, 4>> slot_arc;  // per event, arc index at each slot
};

Wiring build_wiring(std::size_t m) {
  require(m >= 2, errc::bad_params, "a line system needs at least 2 wires");
  Wiring wd;
  wd.wires = m;
  std::vector<uint32_t> at(m);  // wire at each position
  for (uint32_t i = 0; i < m; ++i) at[i] = i;
  // reduced word for the reversal: every pair of wires swaps exactly once
  std::vector<std::vector<std::pair<uint32_t, uint32_t>>> visits(m);  // (event, in_slot)
  for (std::size_t k = 1; k < m; ++k) {
    for (std::size_t p = k; p-- > 0;) {
      uint32_t u = at[p], w = at[p + 1];
      uint32_t e = uint32_t(wd.events.size());
      wd.events.push_back({u, w});
      visits[u].push_back({e, 0});
      visits[w].push_back({e, 1});
      std::swap(at[p], at[p + 1]);
    }
  }
  wd.slot_arc.assign(wd.events.size(), {UINT32_MAX, UINT32_MAX, UINT32_MAX, UINT32_MAX});
  for (uint32_t wire = 0; wire < m; ++wire) {
    const auto& vs = visits[wire];
    for (std::size_t j = 0; j < vs.size(); ++j) {
      auto [ev_from, in_from] = vs[j];
      auto [ev_to, in_to] = vs[(j + 1) % vs.size()];
      Wiring::Arc arc;
      arc.from_event = ev_from;
      arc.from_slot = in_from + 2;  // exit slot opposite the entry
      arc.to_event = ev_to;
      arc.to_slot = in_to;
      arc.wire = wire;
      arc.seam = (j + 1 == vs.size());
      arc.label = "w" + std::to_string(wire) + "a" + std::to_string(j);
      uint32_t idx = uint32_t(wd.arcs.size());
      wd.slot_arc[arc.from_event][arc.from_slot] = idx;
      wd.slot_arc[arc.to_event][arc.to_slot] = idx;
      wd.arcs.push_back(std::move(arc));
    }
  }
  return wd;
}

// Faces of the arrangement via signed rotation-system tracing. State
// (event g, slot s, side) is the face corner at wedge (g,s) for side=0 (ccw)
// or wedge (g,s-1) for side=1 (cw), about to cross the edge at slot s.
std::vector<std::vector<std::pair<uint32_t, uint32_t>>> trace_faces(const Wiring& wd) {
  auto state_id = [](uint32_t g, uint32_t s, uint32_t side) { return (g * 4 + s) * 2 + side; };
  const std::size_t nstates = wd.events.size() * 8;
  std::vector<char> seen(nstates, 0);
  std::vector<std::vector<std::pair<uint32_t, uint32_t>>> faces;  // wedge lists
  std::vector<int> face_of_wedge(wd.events.size() * 4, -1);
  for (uint32_t st0 = 0; st0 < nstates; ++st0) {
    if (seen[st0]) continue;
    std::vector<std::pair<uint32_t, uint32_t>> wedges;
    uint32_t st = st0;
    do {
      seen[st] = 1;
      uint32_t side = st & 1, s = (st >> 1) & 3, g = st >> 3;
      wedges.push_back({g, side == 0 ? s : (s + 3) & 3});
      const auto& arc = wd.arcs[wd.slot_arc[g][s]];
      uint32_t g2 = arc.from_event == g && arc.from_slot == s ? arc.to_event : arc.from_event;
      uint32_t s2 = arc.from_event == g && arc.from_slot == s ? arc.to_slot : arc.from_slot;
      uint32_t side2 = arc.seam ? side ^ 1u : side;
      uint32_t snext = side2 == 0 ? (s2 + 3) & 3 : (s2 + 1) & 3;
      st = state_id(g2, snext, side2);
    } while (st != st0);
    // keep one orientation of each face: dedup by wedge membership
    uint32_t g0 = wedges[0].first, w0 = wedges[0].second;
    if (face_of_wedge[g0 * 4 + w0] >= 0) continue;
    for (auto [g, w] : wedges) face_of_wedge[g * 4 + w] = int(faces.size());
    faces.push_back(std::move(wedges));
  }
  return faces;
}

}  // namespace

LineSystem line_system(std::size_t wires) {
  Wiring wd = build_wiring(wires);
  LineSystem out;

  // the arrangement as a map: rotation = slot order, imbalance = seam arcs
  Descriptor d;
  for (uint32_t g = 0; g < wd.events.size(); ++g) {
    std::vector<std::string> seq;
    for (uint32_t s = 0; s < 4; ++s) seq.push_back(wd.arcs[wd.slot_arc[g][s]].label);
    d.vgon_sequences.push_back(std::move(seq));
  }
  for (const auto& arc : wd.arcs)
    if (arc.seam) d.imbalance.push_back(arc.label);
  out.crossing_map = from_descriptor(d);

  // the map whose medial is the arrangement: 2-color the faces, expand
  auto faces = trace_faces(wd);
  std::vector<int> face_of_wedge(wd.events.size() * 4, -1);
  for (std::size_t fi = 0; fi < faces.size(); ++fi)
    for (auto [g, w] : faces[fi]) face_of_wedge[g * 4 + w] = int(fi);
  // adjacency: each edge separates the faces of the wedges flanking its slots
  std::vector<int> color(faces.size(), -1);
  std::vector<std::size_t> queue;
  color[std::size_t(face_of_wedge[0])] = 1;  // black seed
  queue.push_back(std::size_t(face_of_wedge[0]));
  auto visit_edge_sides = [&](std::size_t fi, auto&& push) {
    for (auto [g, w] : faces[fi]) {
      // wedge (g,w) is flanked by edges at slots w and w+1; across each edge
      // sits the wedge on the other side at the same end
      for (uint32_t s : {w, (w + 1) & 3}) {
        uint32_t other_w = (s == w) ? (w + 3) & 3 : (w + 1) & 3;
        push(std::size_t(face_of_wedge[g * 4 + other_w]));
      }
    }
  };
  while (!queue.empty()) {
    std::size_t fi = queue.back();
    queue.pop_back();
    visit_edge_sides(fi, [&](std::size_t fj) {
      if (color[fj] < 0) {
        color[fj] = 1 - color[fi];
        queue.push_back(fj);
      } else {
        require(color[fj] != color[fi], errc::internal, "line system faces not 2-colorable");
      }
    });
  }
  std::vector<std::array<char, 4>> wedge_black(wd.events.size());
  for (uint32_t g = 0; g < wd.events.size(); ++g)
    for (uint32_t w = 0; w < 4; ++w)
      wedge_black[g][w] = char(color[std::size_t(face_of_wedge[g * 4 + w])] == 1);

  Multigraph h;
  h.nv = wd.events.size();
  for (const auto& arc : wd.arcs) h.add_edge(arc.from_event, arc.to_event, arc.label);
  std::vector<std::array<uint32_t, 4>> rot(wd.events.size());
  for (uint32_t g = 0; g < wd.events.size(); ++g)
    for (uint32_t s = 0; s < 4; ++s) rot[g][s] = wd.slot_arc[g][s];
  out.medial_base = expand_medial(h, rot, wedge_black);
  return out;
}

// --- random fixtures ------------------------------------------------------------------

Descriptor RandomMapGen::next_descriptor(const RandomMapOptions& opt) {
  for (std::size_t attempt = 0; attempt < opt.max_attempts; ++attempt) {
    const std::size_t n = opt.edges;
    std::size_t width = n >= 10 ? 2 : 1;
    std::vector<std::string> labels;
    for (std::size_t k = 0; k < n; ++k) {
      std::string num = std::to_string(k);
      labels.push_back("e" + std::string(width - num.size(), '0') + num);
    }
    std::vector<std::string> slots;
    for (const auto& l : labels) {
      slots.push_back(l);
      slots.push_back(l);
    }
    std::shuffle(slots.begin(), slots.end(), rng_);
    Descriptor d;
    std::size_t i = 0;
    while (i < slots.size()) {
      std::size_t rem = slots.size() - i;
      std::size_t take;
      if (opt.eulerian) {
        take = 2 * (1 + rng_() % (rem / 2));
      } else {
        take = 1 + rng_() % rem;
      }
      d.vgon_sequences.emplace_back(slots.begin() + long(i), slots.begin() + long(i + take));
      i += take;
    }
    for (const auto& l : labels)
      if (rng_() & 1) d.imbalance.push_back(l);
    Map m = from_descriptor(d);
    if (opt.connected && !is_connected(m)) continue;
    if (opt.chi && euler_characteristic(m) != *opt.chi) continue;
    if (opt.orientable && is_orientable(m) != *opt.orientable) continue;
    return d;
  }
  fail(errc::precondition_failed, "no random fixture matched the filters");
}

Map RandomMapGen::next(const RandomMapOptions& opt) { return from_descriptor(next_descriptor(opt)); }

GaussCode RandomMapGen::next_code(std::size_t symbols) {
  std::vector<std::string> slots;
  for (std::size_t k = 1; k <= symbols; ++k) {
    slots.push_back(std::to_string(k));
    slots.push_back(std::to_string(k));
  }
  std::shuffle(slots.begin(), slots.end(), rng_);
  return make_gauss_code(std::move(slots));
}

std::vector<std::string> RandomMapGen::random_subset(const std::vector<std::string>& labels) {
  std::vector<std::string> out;
  for (const auto& l : labels)
    if (rng_() & 1) out.push_back(l);
  return out;
}

}  // namespace mapforge
