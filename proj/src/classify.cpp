#include "tvz/classify.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace tvz {

Divisor corrected_canonical(const FanCone& fc) {
  const TropCurve& c = fc.lambda.curve;
  Divisor d;
  for (const auto& v : c.vertices()) d.values[v.id] = rat(2 * v.genus - 2 + c.valence(v.id));
  for (const auto& e : c.edges()) {
    const Rat& s = fc.lambda.piece_slope.at(e.id);
    d.values[e.tail] += s;
    d.values[e.head] -= s;
  }
  // marking legs carry outgoing slope -1 in the untruncated picture
  for (const auto& l : c.legs())
    if (l.kind == LegKind::Marking) d.values[l.base] -= 1;
  return d;
}

namespace {

// Weight of the component of `curve` containing `seed`, not using the edge
// `cut`; also reports whether the component carries a marking leg.
std::pair<int, bool> component_weight(const TropCurve& curve, const std::string& seed,
                                      const std::string& cut) {
  std::set<std::string> seen{seed};
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& e : curve.edges()) {
      if (e.id == cut) continue;
      bool t = seen.count(e.tail), h = seen.count(e.head);
      if (t != h) {
        seen.insert(t ? e.head : e.tail);
        grew = true;
      }
    }
  }
  int w = 0;
  bool marked = false;
  for (const std::string& v : seen) w += curve.vertex(v).weight;
  for (const auto& l : curve.legs())
    if (l.kind == LegKind::Marking && seen.count(l.base)) marked = true;
  return {w, marked};
}

// Genus of the subgraph induced by the given vertex set.
int induced_genus(const TropCurve& curve, const std::set<std::string>& verts) {
  if (verts.empty()) return 0;
  int e_count = 0;
  for (const auto& e : curve.edges())
    if (verts.count(e.tail) && verts.count(e.head)) ++e_count;
  // components of the induced subgraph
  std::set<std::string> todo = verts;
  int comps = 0;
  while (!todo.empty()) {
    ++comps;
    std::set<std::string> seen{*todo.begin()};
    bool grew = true;
    while (grew) {
      grew = false;
      for (const auto& e : curve.edges()) {
        if (!verts.count(e.tail) || !verts.count(e.head)) continue;
        bool t = seen.count(e.tail), h = seen.count(e.head);
        if (t != h) {
          seen.insert(t ? e.head : e.tail);
          grew = true;
        }
      }
    }
    for (const std::string& v : seen) todo.erase(v);
  }
  int g = e_count - static_cast<int>(verts.size()) + comps;
  for (const std::string& v : verts) g += curve.vertex(v).genus;
  return g;
}

}  // namespace

DeltaData extract_delta(const TropCover& cover, const FanCone& fc) {
  const LambdaRegionData& L = fc.lambda;
  const TropCurve& c = L.curve;
  DeltaData d;
  d.rho1 = LinForm(fc.cone.ambient_dim);

  // The maximum of lambda over a cone need not be a single linear form (the
  // vertex images are only partially ordered on Kummer-merged cones); report
  // the canonically largest among the maximal classes.
  {
    std::vector<LinForm> maximal;
    for (size_t i = 0; i < L.levels.size(); ++i) {
      bool dominated = false;
      for (size_t j = 0; j < L.levels.size(); ++j)
        if (i != j && sign_on(fc.cone, L.levels[j] - L.levels[i]) == Sign::Pos) dominated = true;
      if (!dominated) maximal.push_back(L.levels[i]);
    }
    std::sort(maximal.begin(), maximal.end());
    d.rho_max = maximal.empty() ? LinForm(fc.cone.ambient_dim) : maximal.back();
  }

  std::set<std::string> interior, boundary;
  for (const auto& [vid, lvl] : L.vertex_level)
    if (lvl != 0) interior.insert(vid);
  for (const auto& e : c.edges()) {
    int lt = L.vertex_level.at(e.tail), lh = L.vertex_level.at(e.head);
    if (lt == 0 && lh != 0) boundary.insert(e.tail);
    if (lh == 0 && lt != 0) boundary.insert(e.head);
  }
  d.empty = interior.empty();
  if (d.empty) return d;

  d.interior_vertices.assign(interior.begin(), interior.end());
  d.boundary_vertices.assign(boundary.begin(), boundary.end());
  for (const std::string& v : interior) d.interior_weight += c.vertex(v).weight;
  d.interior_genus = induced_genus(c, interior);

  // Support of (K + div lambda) on Delta; rho1 is the value at its highest
  // support vertices (pairwise comparability is checked, not assumed).
  Divisor kd = corrected_canonical(fc);
  {
    std::vector<std::string> supports;
    for (const auto& [vid, val] : kd.values) {
      if (val <= 0) continue;
      if (!interior.count(vid) && !boundary.count(vid)) continue;
      supports.push_back(vid);
    }
    for (const std::string& v : supports) {
      bool below = false;
      for (const std::string& w : supports) {
        if (v == w) continue;
        Sign s = sign_on(fc.cone, L.value.at(w) - L.value.at(v));
        if (s == Sign::Pos) below = true;
        if (s == Sign::Mixed)
          d.violations.push_back("support vertices " + v + ", " + w +
                                 " carry incomparable lambda values");
      }
      if (!below) d.support_vertices.push_back(v);
    }
    if (!d.support_vertices.empty()) {
      std::vector<LinForm> vals;
      for (const std::string& v : d.support_vertices) vals.push_back(L.value.at(v));
      std::sort(vals.begin(), vals.end());
      d.rho1 = vals.back();
    }
  }
  d.rho1_positive = sign_on(fc.cone, d.rho1) == Sign::Pos;
  d.d1_component = d.rho1_positive ? d.interior_weight : -1;

  // Crossing pieces from the boundary into the interior, separated into
  // stable ones (weight or markings behind them) and collapsible conjugates.
  for (const auto& e : c.edges()) {
    int lt = L.vertex_level.at(e.tail), lh = L.vertex_level.at(e.head);
    if (std::min(lt, lh) != 0 || std::max(lt, lh) == 0) continue;
    const std::string& bd = lt == 0 ? e.tail : e.head;
    auto [w, marked] = component_weight(c, bd, e.id);
    if (w > 0 || marked)
      d.crossing_pieces.push_back(e.id);
    else
      d.unstable_crossings.push_back(e.id);
  }

  // Paper invariants.
  bool pos_on_boundary = false;
  for (const std::string& v : boundary)
    if (c.vertex(v).weight > 0) pos_on_boundary = true;
  if (!pos_on_boundary)
    d.violations.push_back("no positive-weight vertex on the boundary of Delta");

  // Does the boundary vertex support the divisor of an adjacent active lift?
  auto supports_active_d = [&](const std::string& v) {
    if (!cover.source().has_vertex(v)) return false;
    const std::string& image = cover.vertex_image(v);
    for (const auto& e : c.edges()) {
      if (e.tail != v && e.head != v) continue;
      if (L.vertex_level.at(e.tail) == 0 && L.vertex_level.at(e.head) == 0) continue;
      int a = L.piece_active.at(e.id);
      if (a >= 0 && L.lifts[a].support == image) return true;
    }
    return false;
  };

  // The unique-boundary-vertex lemma describes the contraction of the
  // genus-two core; its push argument needs the interior to carry that core.
  if (d.interior_weight == 0 && d.interior_genus == 2) {
    std::vector<std::string> posb;
    for (const std::string& v : boundary)
      if (c.vertex(v).weight > 0 && c.vertex(v).genus == 0) posb.push_back(v);
    // Positive-genus boundary vertices belong to the genus-one pattern below.
    bool any_positive_genus_boundary = false;
    for (const std::string& v : boundary)
      if (c.vertex(v).genus > 0 && c.vertex(v).weight > 0) any_positive_genus_boundary = true;
    if (posb.size() == 1 && !any_positive_genus_boundary) {
      const std::string& v = posb.front();
      if (!supports_active_d(v))
        d.violations.push_back("unique positive-weight boundary vertex " + v +
                               " does not carry D with value one");
      if (cover.source().vertex(v).weight < 3)
        d.violations.push_back("unique positive-weight boundary vertex " + v + " has weight < 3");
    }
  }

  for (const std::string& v : boundary) {
    if (c.vertex(v).genus == 0) continue;
    bool ok = c.vertex(v).genus == 1 && d.interior_genus == 1 && supports_active_d(v);
    if (!ok)
      d.violations.push_back("positive-genus boundary vertex " + v +
                             " outside the sanctioned genus-one pattern");
  }

  if (d.interior_weight > 2)
    d.violations.push_back("interior of Delta has weight " + std::to_string(d.interior_weight));

  // Weight of the minimal genus-two subcurve of the fibre: the lift rule pins
  // the zero level so that everything at level >= 0 is kept, which is the
  // whole curve; hence the bound reduces to the total weight.
  if (d.rho1_positive) {
    int total = 0;
    for (const auto& v : cover.source().vertices()) total += v.weight;
    if (total < 3)
      d.violations.push_back("minimal genus-two subcurve has weight " + std::to_string(total) +
                             " < 3");
  }

  // Top-level profile: the subcurve at the maximal classes together with the
  // multiplicity of its downward edges.
  {
    std::set<int> top_classes;
    for (size_t i = 0; i < L.levels.size(); ++i) {
      bool below = false;
      for (size_t j = 0; j < L.levels.size(); ++j)
        if (i != j && sign_on(fc.cone, L.levels[j] - L.levels[i]) == Sign::Pos) below = true;
      if (!below && sign_on(fc.cone, L.levels[i]) == Sign::Pos) top_classes.insert(static_cast<int>(i));
    }
    std::set<std::string> topv;
    for (const auto& [vid, lvl] : L.vertex_level)
      if (top_classes.count(lvl)) topv.insert(vid);
    int topg = induced_genus(c, topv);
    int down = 0;
    for (const auto& e : c.edges()) {
      bool t = topv.count(e.tail), h = topv.count(e.head);
      if (t != h) ++down;
    }
    std::ostringstream os;
    if (topv.size() == 1 && topg == 2)
      os << "g2-vertex";
    else if (topg == 2 && topv.size() > 1)
      os << (down <= 2 ? "g2-top" : "g2-top");  // dumbbell/theta tops collapse here
    else if (topg == 1 && down == 2)
      os << "g1-double-edge";
    else
      os << "other:g" << topg << ".v" << topv.size() << ".down" << down;
    d.top_profile = os.str();
  }
  return d;
}

std::vector<std::string> FiberClass::component_labels() const {
  std::vector<std::string> out;
  switch (kind) {
    case Kind::IsolatedTypeI:
    case Kind::RamphoidalCusp:
    case Kind::GenusOneCompound:
      out.push_back("special");
      for (int i = 2; i <= branches; ++i) out.push_back("branch" + std::to_string(i));
      break;
    case Kind::IsolatedTypeII:
      out.push_back("special1");
      out.push_back("special2");
      for (int i = 3; i <= branches; ++i) out.push_back("branch" + std::to_string(i));
      break;
    case Kind::TailedRibbon:
    case Kind::TailedRibbonChain: {
      out.push_back("R");
      for (size_t i = 0; i < ribbon_signature.size(); ++i) out.push_back("tail" + std::to_string(i + 1));
      break;
    }
    default:
      break;
  }
  return out;
}

std::string FiberClass::tag() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::Nodal: return "nodal";
    case Kind::IsolatedTypeI: os << "type-I(m=" << branches << ")"; break;
    case Kind::IsolatedTypeII: os << "type-II(m=" << branches << ")"; break;
    case Kind::RamphoidalCusp: return "ramphoid-cusp";
    case Kind::TailedRibbon:
    case Kind::TailedRibbonChain: {
      os << (kind == Kind::TailedRibbon ? "tailed-ribbon(" : "tailed-ribbon-chain(");
      for (size_t i = 0; i < ribbon_signature.size(); ++i)
        os << (i ? "," : "") << ribbon_signature[i];
      os << ")";
      if (non_geometric) os << "[non-geometric]";
      break;
    }
    case Kind::GenusOneCompound: os << "genus-one-compound(m=" << branches << ")"; break;
    case Kind::Unclassified: os << "unclassified[" << diagnostics << "]"; break;
  }
  return os.str();
}

namespace {

// Conjugacy of two support vertices of the subdivided curve under the deck
// involution: original vertices via the involution map, subdivision points by
// matching conjugate edges at mirrored positions.
bool conjugate_pair(const TropCover& cover, const FanCone& fc, const Involution& inv,
                    const std::string& a, const std::string& b) {
  const auto& cut = fc.lambda.cut_vertex;
  bool ca = cut.count(a), cb = cut.count(b);
  if (ca != cb) return false;
  if (!ca) {
    if (!cover.source().has_vertex(a) || !cover.source().has_vertex(b)) return false;
    return inv.on_vertices.at(a) == b && a != b;
  }
  const auto& [ea, pa] = cut.at(a);
  const auto& [eb, pb] = cut.at(b);
  if (!inv.on_edges.count(ea)) return false;
  if (inv.on_edges.at(ea) != eb || ea == eb) return false;
  const GraphEdge& e1 = cover.source().edge(ea);
  const GraphEdge& e2 = cover.source().edge(eb);
  bool same_dir = inv.on_vertices.at(e1.tail) == e2.tail;
  LinForm expect = same_dir ? pa : e2.length - pa;
  return sign_on(fc.cone, pb - expect) == Sign::Zero;
}

// Is the support vertex fixed by the involution (a Weierstrass-side point)?
bool involution_fixed(const TropCover& cover, const FanCone& fc, const Involution& inv,
                      const std::string& v) {
  const auto& cut = fc.lambda.cut_vertex;
  if (cut.count(v)) {
    const std::string& e = cut.at(v).first;
    return cover.expansion(e) == 2;
  }
  if (!cover.source().has_vertex(v)) return false;  // sprout tips never carry D
  return inv.on_vertices.at(v) == v;
}

}  // namespace

FiberClass classify_fiber(const DeltaData& delta, const TropCover& cover, const FanCone& fc) {
  FiberClass out;
  if (delta.empty || !delta.rho1_positive) {
    out.kind = FiberClass::Kind::Nodal;
    return out;
  }
  out.branches = static_cast<int>(delta.crossing_pieces.size());

  auto ribbon_signature = [&]() {
    // attachment points on the boundary; k_i = number of stable crossings there
    std::map<std::string, int> at;
    for (const std::string& pid : delta.crossing_pieces) {
      const GraphEdge& e = fc.lambda.curve.edge(pid);
      const std::string& bd =
          fc.lambda.vertex_level.at(e.tail) == 0 ? e.tail : e.head;
      at[bd] += 1;
    }
    std::vector<int> sig;
    for (const auto& [v, k] : at) {
      (void)v;
      sig.push_back(k);
    }
    std::sort(sig.begin(), sig.end());
    return sig;
  };

  if (delta.interior_weight > 2) {
    out.kind = FiberClass::Kind::Unclassified;
    out.diagnostics = "interior weight exceeds two";
    return out;
  }

  if (delta.interior_genus == 1) {
    out.kind = FiberClass::Kind::GenusOneCompound;
    out.diagnostics = "interior of Delta has genus one";
    return out;
  }

  if (delta.interior_weight >= 1) {
    // The ribbon strata: weight two is the hyperelliptic one, weight one is
    // classified but tagged as non-geometric.
    out.ribbon_signature = ribbon_signature();
    out.non_geometric = delta.interior_weight == 1;
    // chain detection: positive-weight interior vertices on several levels
    std::set<int> wlevels;
    for (const std::string& v : delta.interior_vertices)
      if (fc.lambda.curve.vertex(v).weight > 0) wlevels.insert(fc.lambda.vertex_level.at(v));
    out.kind = wlevels.size() > 1 ? FiberClass::Kind::TailedRibbonChain : FiberClass::Kind::TailedRibbon;
    return out;
  }

  // Weight-zero interior from here on.
  if (delta.interior_genus != 2) {
    out.kind = FiberClass::Kind::Unclassified;
    out.diagnostics = "interior genus " + std::to_string(delta.interior_genus) + " with weight zero";
    return out;
  }

  Involution inv = conjugate_involution(cover);
  const auto& S = delta.support_vertices;
  bool support_at_top = true;
  for (const std::string& v : S) {
    const LinForm& val = fc.lambda.value.at(v);
    for (const LinForm& c : fc.lambda.levels)
      if (sign_on(fc.cone, c - val) == Sign::Pos) support_at_top = false;
  }

  if (support_at_top) {
    // D rides the contracted top: the interpolation locus between isolated
    // singularities with different special branches; the fibre is a sprouted
    // ribbon.
    out.kind = FiberClass::Kind::TailedRibbon;
    out.ribbon_signature = ribbon_signature();
    out.diagnostics = "support at the top level (rho1 = rho_max)";
    return out;
  }

  // Contracted clusters: connected interior components on which the twisted
  // dualising bundle has degree zero. One cluster of genus two collapses to
  // an isolated genus-two germ; genus spread over several clusters yields a
  // compound of genus-one singularities instead.
  {
    Divisor kd = corrected_canonical(fc);
    const TropCurve& c = fc.lambda.curve;
    std::set<std::string> contracted;
    for (const std::string& v : delta.interior_vertices)
      if (kd.at(v) + rat(2 * c.vertex(v).weight) == 0) contracted.insert(v);
    std::vector<std::set<std::string>> clusters;
    std::set<std::string> todo = contracted;
    while (!todo.empty()) {
      std::set<std::string> cl{*todo.begin()};
      bool grew = true;
      while (grew) {
        grew = false;
        for (const auto& e : c.edges()) {
          if (!contracted.count(e.tail) || !contracted.count(e.head)) continue;
          bool t = cl.count(e.tail), h = cl.count(e.head);
          if (t != h) {
            cl.insert(t ? e.head : e.tail);
            grew = true;
          }
        }
      }
      for (const std::string& v : cl) todo.erase(v);
      clusters.push_back(std::move(cl));
    }
    std::vector<int> genera;
    for (const auto& cl : clusters) {
      int g = induced_genus(c, cl);
      if (g > 0) genera.push_back(g);
    }
    std::sort(genera.begin(), genera.end());
    if (genera.empty()) {
      out.kind = FiberClass::Kind::Nodal;
      out.diagnostics = "no positive-genus contraction happens over this cone";
      return out;
    }
    if (genera != std::vector<int>{2}) {
      out.kind = FiberClass::Kind::GenusOneCompound;
      std::ostringstream os;
      os << "contracted clusters of genus";
      for (int g : genera) os << " " << g;
      out.diagnostics = os.str();
      return out;
    }
  }

  if (S.size() == 1 && involution_fixed(cover, fc, inv, S.front())) {
    out.attachment = FiberClass::Attachment::Weierstrass;
    out.kind = out.branches == 1 ? FiberClass::Kind::RamphoidalCusp : FiberClass::Kind::IsolatedTypeI;
    return out;
  }
  if (S.size() == 2 && conjugate_pair(cover, fc, inv, S[0], S[1])) {
    out.attachment = FiberClass::Attachment::ConjugatePair;
    out.kind = FiberClass::Kind::IsolatedTypeII;
    return out;
  }

  out.kind = FiberClass::Kind::Unclassified;
  std::ostringstream os;
  os << "support pattern not catalogued (" << S.size() << " support vertices)";
  out.diagnostics = os.str();
  return out;
}

bool h1_vanishing(const FiberClass& fiber, const std::vector<int>& multidegree) {
  for (int d : multidegree)
    if (d < 0) throw std::invalid_argument("multidegree must be nonnegative");
  auto labels = fiber.component_labels();
  if (labels.size() != multidegree.size())
    throw std::invalid_argument("multidegree length does not match the component labels");
  int total = 0;
  for (int d : multidegree) total += d;

  switch (fiber.kind) {
    case FiberClass::Kind::TailedRibbon:
    case FiberClass::Kind::TailedRibbonChain: {
      int pos_tails = 0;
      for (size_t i = 1; i < multidegree.size(); ++i)
        if (multidegree[i] > 0) ++pos_tails;
      if (pos_tails >= 2) return true;
      return multidegree[0] == 1 && pos_tails >= 1;
    }
    case FiberClass::Kind::IsolatedTypeI:
    case FiberClass::Kind::RamphoidalCusp:
    case FiberClass::Kind::GenusOneCompound: {
      if (total < 2) return false;
      if (multidegree[0] < 1) return false;  // positive on the genus-one subcurve
      bool omega = multidegree[0] == 2;
      for (size_t i = 1; i < multidegree.size(); ++i)
        if (multidegree[i] != 0) omega = false;
      return !omega;
    }
    case FiberClass::Kind::IsolatedTypeII: {
      if (total < 2) return false;
      if (multidegree[0] + multidegree[1] < 1) return false;
      bool omega = multidegree[0] == 1 && multidegree[1] == 1;
      for (size_t i = 2; i < multidegree.size(); ++i)
        if (multidegree[i] != 0) omega = false;
      return !omega;
    }
    default:
      throw std::invalid_argument("h1 criterion applies to classified Gorenstein fibres");
  }
}

}  // namespace tvz
