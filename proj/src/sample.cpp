#include "tvz/sample.hpp"

#include <algorithm>
#include <set>

namespace tvz {

std::optional<TropCover> sample_cover(std::mt19937_64& rng) {
  auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<unsigned>(n)); };

  int nt = 2 + pick(3);  // 2..4 target vertices
  std::vector<std::pair<int, int>> tree;
  for (int i = 1; i < nt; ++i) tree.push_back({pick(i), i});

  std::vector<int> legs(nt, 0);
  for (int k = 0; k < 6; ++k) legs[pick(nt)]++;

  auto tname = [](int i) { return "t" + std::to_string(i); };

  // expansion of each target edge from the leg parity of one side
  std::vector<int> exp_of(tree.size(), 1);
  for (size_t e = 0; e < tree.size(); ++e) {
    std::set<int> side{tree[e].second};
    bool grew = true;
    while (grew) {
      grew = false;
      for (size_t f = 0; f < tree.size(); ++f) {
        if (f == e) continue;
        bool a = side.count(tree[f].first), b = side.count(tree[f].second);
        if (a != b) {
          side.insert(a ? tree[f].second : tree[f].first);
          grew = true;
        }
      }
    }
    int b = 0;
    for (int v : side) b += legs[v];
    exp_of[e] = (b % 2 == 1) ? 2 : 1;
  }

  // preimage structure
  std::vector<int> e2(nt, 0);
  for (size_t e = 0; e < tree.size(); ++e)
    if (exp_of[e] == 2) {
      e2[tree[e].first]++;
      e2[tree[e].second]++;
    }
  std::vector<bool> single(nt);
  std::vector<int> genus(nt, 0);
  for (int v = 0; v < nt; ++v) {
    int r = legs[v] + e2[v];
    if (r == 0) {
      single[v] = false;
    } else {
      if (r < 2 || r % 2 == 1) return std::nullopt;
      single[v] = true;
      genus[v] = (r - 2) / 2;
    }
  }

  std::vector<GraphVertex> tvs;
  std::vector<GraphLeg> tls;
  for (int v = 0; v < nt; ++v) tvs.push_back({tname(v), 0, 0});
  int legid = 0;
  for (int v = 0; v < nt; ++v)
    for (int k = 0; k < legs[v]; ++k)
      tls.push_back({"b" + std::to_string(legid++), tname(v), LegKind::Branch, ""});

  int dim = static_cast<int>(tree.size());
  // coordinates in target-edge id order; name edges e0..e{k-1}
  std::vector<GraphEdge> tes;
  for (size_t e = 0; e < tree.size(); ++e) {
    std::string id = "e" + std::to_string(e);
    tes.push_back({id, tname(tree[e].first), tname(tree[e].second), LinForm(dim)});
  }
  std::sort(tes.begin(), tes.end(), [](const GraphEdge& a, const GraphEdge& b) { return a.id < b.id; });
  std::map<std::string, int> coord;
  for (size_t i = 0; i < tes.size(); ++i) coord[tes[i].id] = static_cast<int>(i);
  std::map<std::string, int> exp_by_id;
  for (size_t e = 0; e < tree.size(); ++e) exp_by_id["e" + std::to_string(e)] = exp_of[e];
  for (auto& te : tes) te.length = LinForm::coordinate(dim, coord[te.id]) * rat(exp_by_id[te.id]);

  std::vector<GraphVertex> svs;
  std::map<std::string, std::string> vmap;
  auto sname = [&](int v, int copy) {
    return tname(v) + (single[v] ? "s" : (copy == 0 ? "a" : "b"));
  };
  for (int v = 0; v < nt; ++v) {
    if (single[v]) {
      svs.push_back({sname(v, 0), genus[v], 0});
      vmap[sname(v, 0)] = tname(v);
    } else {
      svs.push_back({sname(v, 0), 0, 0});
      svs.push_back({sname(v, 1), 0, 0});
      vmap[sname(v, 0)] = tname(v);
      vmap[sname(v, 1)] = tname(v);
    }
  }

  std::vector<GraphEdge> ses;
  std::map<std::string, std::string> emap;
  std::map<std::string, int> eexp;
  int seid = 0;
  for (size_t e = 0; e < tree.size(); ++e) {
    int u = tree[e].first, v = tree[e].second;
    std::string te = "e" + std::to_string(e);
    LinForm len = LinForm::coordinate(dim, coord[te]);
    auto add = [&](const std::string& a, const std::string& b, int x) {
      std::string id = "s" + std::to_string(seid++);
      ses.push_back({id, a, b, len});
      emap[id] = te;
      eexp[id] = x;
    };
    if (exp_of[e] == 2) {
      add(sname(u, 0), sname(v, 0), 2);
    } else if (single[u] && single[v]) {
      add(sname(u, 0), sname(v, 0), 1);
      add(sname(u, 0), sname(v, 0), 1);
    } else if (single[u]) {
      add(sname(u, 0), sname(v, 0), 1);
      add(sname(u, 0), sname(v, 1), 1);
    } else if (single[v]) {
      add(sname(u, 0), sname(v, 0), 1);
      add(sname(u, 1), sname(v, 0), 1);
    } else {
      add(sname(u, 0), sname(v, 0), 1);
      add(sname(u, 1), sname(v, 1), 1);
    }
  }

  // weights
  int total = 3 + pick(3);
  std::vector<GraphVertex*> all;
  for (auto& v : svs) all.push_back(&v);
  for (int k = 0; k < total; ++k) all[pick(static_cast<int>(all.size()))]->weight++;

  // occasional marking
  std::vector<GraphLeg> sls;
  std::map<std::string, std::string> lmap;
  std::map<std::string, int> lexp;
  if (pick(10) < 3) {
    int v = pick(nt);
    tls.push_back({"y0", tname(v), LegKind::Marking, "y0"});
    if (single[v]) {
      sls.push_back({"x0", sname(v, 0), LegKind::Marking, "x0"});
      sls.push_back({"x1", sname(v, 0), LegKind::Marking, "x1"});
      lmap["x0"] = "y0";
      lmap["x1"] = "y0";
      lexp["x0"] = lexp["x1"] = 1;
    } else {
      sls.push_back({"x0", sname(v, 0), LegKind::Marking, "x0"});
      sls.push_back({"x1", sname(v, 1), LegKind::Marking, "x1"});
      lmap["x0"] = "y0";
      lmap["x1"] = "y0";
      lexp["x0"] = lexp["x1"] = 1;
    }
  }

  TropCurve source(dim, std::move(svs), std::move(ses), std::move(sls));
  TropCurve target(dim, std::move(tvs), std::move(tes), std::move(tls));
  TropCover cover(std::move(source), std::move(target), std::move(vmap), std::move(emap),
                  std::move(lmap), std::move(eexp), std::move(lexp));
  if (!validate(cover).pass()) return std::nullopt;
  return cover;
}

}  // namespace tvz
