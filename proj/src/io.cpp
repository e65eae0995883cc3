#include "tvz/io.hpp"

#include <json.hpp>

#include <set>
#include <sstream>

#include "tvz/pipeline.hpp"

namespace tvz {

using Json = nlohmann::ordered_json;

namespace {

std::string require_string(const Json& j, const char* field, const std::string& where) {
  if (!j.contains(field) || !j[field].is_string())
    throw ParseError("missing or non-string field '" + std::string(field) + "' in " + where);
  return j[field].get<std::string>();
}

int optional_int(const Json& j, const char* field, int dflt, const std::string& where) {
  if (!j.contains(field)) return dflt;
  if (!j[field].is_number_integer())
    throw ParseError("field '" + std::string(field) + "' must be an integer in " + where);
  return j[field].get<int>();
}

}  // namespace

CoverDocument parse_cover_document(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("JSON parse error: ") + e.what());
  }
  CoverDocument d;
  if (!j.contains("target") || !j["target"].is_object())
    throw ParseError("missing 'target' section");
  const Json& t = j["target"];
  if (t.contains("vertices"))
    for (const Json& v : t["vertices"]) d.target_vertices.push_back(require_string(v, "id", "target vertex"));
  if (t.contains("edges"))
    for (const Json& e : t["edges"]) {
      std::string id = require_string(e, "id", "target edge");
      if (!e.contains("ends") || !e["ends"].is_array() || e["ends"].size() != 2)
        throw ParseError("target edge '" + id + "' needs an 'ends' pair");
      d.target_edges.push_back({id, {e["ends"][0].get<std::string>(), e["ends"][1].get<std::string>()}});
    }
  if (t.contains("legs"))
    for (const Json& l : t["legs"]) {
      CoverDocument::Leg leg;
      leg.id = require_string(l, "id", "target leg");
      leg.base = require_string(l, "base", "target leg " + leg.id);
      leg.kind = require_string(l, "kind", "target leg " + leg.id);
      if (l.contains("label")) leg.label = l["label"].get<std::string>();
      if (leg.kind != "marking" && leg.kind != "branch")
        throw ParseError("target leg '" + leg.id + "' has unknown kind '" + leg.kind + "'");
      d.target_legs.push_back(std::move(leg));
    }
  if (j.contains("vertices"))
    for (const Json& v : j["vertices"]) {
      CoverDocument::Vertex sv;
      sv.id = require_string(v, "id", "source vertex");
      sv.genus = optional_int(v, "genus", 0, "vertex " + sv.id);
      sv.weight = optional_int(v, "weight", 0, "vertex " + sv.id);
      sv.target_vertex = require_string(v, "target_vertex", "vertex " + sv.id);
      d.vertices.push_back(std::move(sv));
    }
  if (j.contains("edges"))
    for (const Json& e : j["edges"]) {
      CoverDocument::Edge se;
      se.id = require_string(e, "id", "source edge");
      if (!e.contains("ends") || !e["ends"].is_array() || e["ends"].size() != 2)
        throw ParseError("edge '" + se.id + "' needs an 'ends' pair");
      se.end0 = e["ends"][0].get<std::string>();
      se.end1 = e["ends"][1].get<std::string>();
      se.target_edge = require_string(e, "target_edge", "edge " + se.id);
      se.expansion = optional_int(e, "expansion", 1, "edge " + se.id);
      if (se.expansion != 1 && se.expansion != 2)
        throw ParseError("edge '" + se.id + "' has expansion outside {1,2}");
      d.edges.push_back(std::move(se));
    }
  if (j.contains("legs"))
    for (const Json& l : j["legs"]) {
      CoverDocument::Leg leg;
      leg.id = require_string(l, "id", "source leg");
      leg.base = require_string(l, "base", "leg " + leg.id);
      leg.kind = require_string(l, "kind", "leg " + leg.id);
      if (l.contains("label")) leg.label = l["label"].get<std::string>();
      if (l.contains("target_leg")) leg.target_leg = l["target_leg"].get<std::string>();
      if (leg.kind != "marking")
        throw ParseError("source leg '" + leg.id + "' must be a marking (branch legs live on the target)");
      d.legs.push_back(std::move(leg));
    }
  if (j.contains("options")) {
    d.options.truncation = optional_int(j["options"], "truncation", 12, "options");
    if (j["options"].contains("coarsen")) d.options.coarsen = j["options"]["coarsen"].get<bool>();
  }

  // id sanity
  std::set<std::string> ids;
  for (const auto& v : d.target_vertices)
    if (!ids.insert("tv:" + v).second) throw ParseError("duplicate target vertex id " + v);
  for (const auto& [id, ends] : d.target_edges) {
    if (!ids.insert("te:" + id).second) throw ParseError("duplicate target edge id " + id);
    if (!ids.count("tv:" + ends.first) || !ids.count("tv:" + ends.second))
      throw ParseError("target edge '" + id + "' references unknown vertices");
  }
  for (const auto& l : d.target_legs) {
    if (!ids.insert("tl:" + l.id).second) throw ParseError("duplicate target leg id " + l.id);
    if (!ids.count("tv:" + l.base)) throw ParseError("target leg '" + l.id + "' has unknown base");
  }
  for (const auto& v : d.vertices) {
    if (!ids.insert("v:" + v.id).second) throw ParseError("duplicate vertex id " + v.id);
    if (!ids.count("tv:" + v.target_vertex))
      throw ParseError("vertex '" + v.id + "' maps to unknown target vertex");
  }
  for (const auto& e : d.edges) {
    if (!ids.insert("e:" + e.id).second) throw ParseError("duplicate edge id " + e.id);
    if (!ids.count("v:" + e.end0) || !ids.count("v:" + e.end1))
      throw ParseError("edge '" + e.id + "' references unknown vertices");
    if (!ids.count("te:" + e.target_edge))
      throw ParseError("edge '" + e.id + "' maps to unknown target edge");
  }
  for (const auto& l : d.legs) {
    if (!ids.insert("l:" + l.id).second) throw ParseError("duplicate leg id " + l.id);
    if (!ids.count("v:" + l.base)) throw ParseError("leg '" + l.id + "' has unknown base");
    if (!ids.count("tl:" + l.target_leg))
      throw ParseError("leg '" + l.id + "' maps to unknown target leg");
  }
  return d;
}

std::string serialize_cover_document(const CoverDocument& d) {
  Json j;
  Json tv = Json::array(), te = Json::array(), tl = Json::array();
  for (const auto& v : d.target_vertices) tv.push_back(Json{{"id", v}});
  for (const auto& [id, ends] : d.target_edges)
    te.push_back(Json{{"id", id}, {"ends", Json::array({ends.first, ends.second})}});
  for (const auto& l : d.target_legs) {
    Json e{{"id", l.id}, {"base", l.base}, {"kind", l.kind}};
    if (!l.label.empty()) e["label"] = l.label;
    tl.push_back(e);
  }
  j["target"] = Json{{"vertices", tv}, {"edges", te}, {"legs", tl}};
  Json vs = Json::array(), es = Json::array(), ls = Json::array();
  for (const auto& v : d.vertices)
    vs.push_back(Json{{"id", v.id}, {"genus", v.genus}, {"weight", v.weight}, {"target_vertex", v.target_vertex}});
  for (const auto& e : d.edges)
    es.push_back(Json{{"id", e.id},
                      {"ends", Json::array({e.end0, e.end1})},
                      {"target_edge", e.target_edge},
                      {"expansion", e.expansion}});
  for (const auto& l : d.legs) {
    Json e{{"id", l.id}, {"base", l.base}, {"kind", l.kind}};
    if (!l.label.empty()) e["label"] = l.label;
    if (!l.target_leg.empty()) e["target_leg"] = l.target_leg;
    ls.push_back(e);
  }
  j["vertices"] = vs;
  j["edges"] = es;
  j["legs"] = ls;
  j["options"] = Json{{"truncation", d.options.truncation}, {"coarsen", d.options.coarsen}};
  return j.dump(2) + "\n";
}

TropCover cover_from_document(const CoverDocument& d) {
  // coordinate per target edge, in id order; expansion from the source edges
  std::map<std::string, int> coord;
  {
    std::vector<std::string> ids;
    for (const auto& [id, ends] : d.target_edges) {
      (void)ends;
      ids.push_back(id);
    }
    std::sort(ids.begin(), ids.end());
    int k = 0;
    for (const std::string& id : ids) coord[id] = k++;
  }
  int dim = static_cast<int>(coord.size());
  std::map<std::string, int> texp;
  for (const auto& [id, ends] : d.target_edges) {
    (void)ends;
    texp[id] = 1;
  }
  for (const auto& e : d.edges)
    if (e.expansion == 2) texp[e.target_edge] = 2;

  std::vector<GraphVertex> tvs;
  for (const auto& v : d.target_vertices) tvs.push_back({v, 0, 0});
  std::vector<GraphEdge> tes;
  for (const auto& [id, ends] : d.target_edges)
    tes.push_back({id, ends.first, ends.second,
                   LinForm::coordinate(dim, coord.at(id)) * rat(texp.at(id))});
  std::vector<GraphLeg> tls;
  for (const auto& l : d.target_legs)
    tls.push_back({l.id, l.base, l.kind == "branch" ? LegKind::Branch : LegKind::Marking, l.label});
  TropCurve target(dim, std::move(tvs), std::move(tes), std::move(tls));

  std::vector<GraphVertex> svs;
  std::map<std::string, std::string> vmap, emap, lmap;
  std::map<std::string, int> eexp, lexp;
  for (const auto& v : d.vertices) {
    svs.push_back({v.id, v.genus, v.weight});
    vmap[v.id] = v.target_vertex;
  }
  std::vector<GraphEdge> ses;
  for (const auto& e : d.edges) {
    ses.push_back({e.id, e.end0, e.end1, LinForm::coordinate(dim, coord.at(e.target_edge))});
    emap[e.id] = e.target_edge;
    eexp[e.id] = e.expansion;
  }
  std::vector<GraphLeg> sls;
  for (const auto& l : d.legs) {
    sls.push_back({l.id, l.base, LegKind::Marking, l.label});
    lmap[l.id] = l.target_leg;
    lexp[l.id] = 1;
  }
  TropCurve source(dim, std::move(svs), std::move(ses), std::move(sls));
  return TropCover(std::move(source), std::move(target), std::move(vmap), std::move(emap),
                   std::move(lmap), std::move(eexp), std::move(lexp));
}

std::string fnv1a_hex(const std::string& bytes) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

std::string rat_vec_str(const std::vector<Rat>& v) {
  std::string s = "[";
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + rat_str(v[i]);
  return s + "]";
}

namespace {

Json linform_json(const LinForm& f) {
  Json a = Json::array();
  for (int i = 0; i < f.dim(); ++i) a.push_back(rat_str(f.coeff(i)));
  return a;
}

Json cone_json(const FanCone& fc, const ConeLabel& label) {
  Json c;
  Json rays = Json::array();
  for (const auto& r : fc.cone.rays) {
    Json rr = Json::array();
    for (const Int& x : r) rr.push_back(x.get_str());
    rays.push_back(rr);
  }
  c["rays"] = rays;
  Json ineqs = Json::array();
  for (const LinForm& a : fc.cone.ineqs) ineqs.push_back(linform_json(a));
  c["inequalities"] = ineqs;
  c["simplicial"] = label.diag.simplicial;
  c["smooth"] = label.diag.smooth;
  c["lattice_index"] = label.diag.index.get_str();
  Json kum;
  Json kc = Json::array();
  for (int k : label.diag.kummer_coords) kc.push_back(k);
  Json kl = Json::array();
  for (const LinForm& f : label.diag.kummer_lengths) kl.push_back(linform_json(f));
  kum["coords"] = kc;
  kum["lengths"] = kl;
  c["kummer"] = kum;
  c["unexpected_index"] = label.diag.unexpected_index;
  Json lv = Json::array();
  for (const LinForm& f : fc.lambda.levels) lv.push_back(linform_json(f));
  c["levels"] = lv;
  c["level_count"] = label.levels;
  Json vl;
  for (const auto& [v, l] : fc.lambda.vertex_level) vl[v] = l;
  c["vertex_levels"] = vl;
  Json act;
  for (const auto& [v, a] : fc.lambda.active) act[v] = a;
  c["active"] = act;
  c["type"] = fc.type;
  c["fiber"] = label.fiber.tag();
  c["equidimensional"] = label.equidim.equidimensional;
  c["reduced"] = label.equidim.reduced;
  c["needs_kummer"] = label.equidim.needs_kummer;
  Json dd;
  dd["empty"] = label.delta.empty;
  dd["interior_weight"] = label.delta.interior_weight;
  dd["interior_genus"] = label.delta.interior_genus;
  dd["d1_component"] = label.delta.d1_component;
  dd["rho1"] = linform_json(label.delta.rho1);
  dd["rho_max"] = linform_json(label.delta.rho_max);
  dd["branches"] = static_cast<int>(label.delta.crossing_pieces.size());
  dd["top_profile"] = label.delta.top_profile;
  Json viol = Json::array();
  for (const std::string& v : label.delta.violations) viol.push_back(v);
  dd["violations"] = viol;
  c["delta"] = dd;
  return c;
}

}  // namespace

std::string serialize_fan_document(const PipelineResult& result, bool coarsened,
                                   const std::string& input_hash) {
  const Fan& fan = coarsened && result.sigma_prime ? *result.sigma_prime : result.sigma;
  const std::vector<ConeLabel>& labels =
      coarsened && result.sigma_prime ? result.prime_labels : result.sigma_labels;
  Json j;
  j["provenance"] = Json{{"tool", "tvz"}, {"version", "0.1.0"}, {"input_hash", input_hash}};
  Json base;
  base["dim"] = fan.dim;
  Json coords = Json::array();
  for (const std::string& c : result.cover.coordinate_names()) coords.push_back(c);
  base["coordinates"] = coords;
  j["base"] = base;
  j["coarsened"] = coarsened;
  Json walls = Json::array();
  for (const Wall& w : fan.walls) {
    Json n = Json::array();
    for (const Int& x : w.normal) n.push_back(x.get_str());
    walls.push_back(Json{{"normal", n}, {"origin", wall_origin_name(w.origin)}});
  }
  j["walls"] = walls;
  Json cones = Json::array();
  for (size_t i = 0; i < fan.maximal.size(); ++i) cones.push_back(cone_json(fan.maximal[i], labels[i]));
  j["cones"] = cones;
  Json reports = Json::array(), disc = Json::array();
  for (const std::string& r : result.reports) reports.push_back(r);
  for (const std::string& d : result.discrepancies) disc.push_back(d);
  j["reports"] = reports;
  j["discrepancies"] = disc;
  return j.dump(2) + "\n";
}

std::string reserialize_fan_document(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("JSON parse error: ") + e.what());
  }
  if (!j.contains("provenance") || !j.contains("cones"))
    throw ParseError("not a fan document (missing provenance/cones)");
  return j.dump(2) + "\n";
}

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string export_dot(const TropCover& cover, const FanCone* labelled) {
  std::ostringstream os;
  const std::vector<std::string>& names = cover.coordinate_names();
  os << "graph cover {\n";
  os << "  rankdir=BT;\n";
  os << "  subgraph cluster_source {\n    label=\"source\";\n";
  const TropCurve& curve = labelled ? labelled->lambda.curve : cover.source();
  for (const auto& v : curve.vertices()) {
    os << "    \"s:" << dot_escape(v.id) << "\" [label=\"" << dot_escape(v.id) << "\\ng" << v.genus
       << " w" << v.weight;
    if (labelled) {
      auto it = labelled->lambda.value.find(v.id);
      if (it != labelled->lambda.value.end())
        os << "\\nlevel " << labelled->lambda.vertex_level.at(v.id) << ": "
           << dot_escape(it->second.to_string(names));
    }
    os << "\"];\n";
  }
  for (const auto& e : curve.edges()) {
    os << "    \"s:" << dot_escape(e.tail) << "\" -- \"s:" << dot_escape(e.head) << "\" [label=\""
       << dot_escape(e.id) << ": " << dot_escape(e.length.to_string(names));
    if (labelled) os << " slope " << labelled->lambda.piece_slope.at(e.id).get_str();
    os << "\"];\n";
  }
  for (const auto& l : curve.legs())
    os << "    \"s:" << dot_escape(l.base) << "\" -- \"s:leg:" << dot_escape(l.id)
       << "\" [style=dashed];\n    \"s:leg:" << dot_escape(l.id) << "\" [shape=plaintext,label=\""
       << dot_escape(l.id) << "\"];\n";
  os << "  }\n";
  os << "  subgraph cluster_target {\n    label=\"target\";\n";
  for (const auto& v : cover.target().vertices())
    os << "    \"t:" << dot_escape(v.id) << "\" [label=\"" << dot_escape(v.id) << "\\nB"
       << cover.branch_legs_at(v.id) << "\"];\n";
  for (const auto& e : cover.target().edges())
    os << "    \"t:" << dot_escape(e.tail) << "\" -- \"t:" << dot_escape(e.head) << "\" [label=\""
       << dot_escape(e.id) << ": " << dot_escape(e.length.to_string(names)) << "\"];\n";
  for (const auto& l : cover.target().legs())
    os << "    \"t:" << dot_escape(l.base) << "\" -- \"t:leg:" << dot_escape(l.id)
       << "\" [style=" << (l.kind == LegKind::Branch ? "dotted" : "dashed")
       << "];\n    \"t:leg:" << dot_escape(l.id) << "\" [shape=plaintext,label=\"" << dot_escape(l.id)
       << "\"];\n";
  os << "  }\n}\n";
  return os.str();
}

std::string export_tikz(const TropCover& cover, const FanCone* labelled) {
  std::ostringstream os;
  const std::vector<std::string>& names = cover.coordinate_names();
  const TropCurve& curve = labelled ? labelled->lambda.curve : cover.source();
  os << "\\begin{tikzpicture}[every node/.style={font=\\small}]\n";
  int i = 0;
  std::map<std::string, int> pos;
  for (const auto& v : curve.vertices()) {
    pos[v.id] = i;
    int lvl = labelled ? labelled->lambda.vertex_level.at(v.id) : 0;
    os << "  \\node[circle,draw] (s" << i << ") at (" << i << "," << lvl << ") {" << v.id << "};\n";
    ++i;
  }
  for (const auto& e : curve.edges())
    os << "  \\draw (s" << pos[e.tail] << ") -- node[above] {$" << e.length.to_string(names)
       << "$} (s" << pos[e.head] << ");\n";
  int j = 0;
  for (const auto& v : cover.target().vertices()) {
    pos["t:" + v.id] = j;
    os << "  \\node[circle,draw,fill=black!10] (t" << j << ") at (" << j << ",-3) {" << v.id << "};\n";
    ++j;
  }
  for (const auto& e : cover.target().edges())
    os << "  \\draw (t" << pos["t:" + e.tail] << ") -- node[below] {$" << e.length.to_string(names)
       << "$} (t" << pos["t:" + e.head] << ");\n";
  os << "\\end{tikzpicture}\n";
  return os.str();
}

}  // namespace tvz
