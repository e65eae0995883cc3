#include "tvz/fan.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>

namespace tvz {

std::vector<Int> canonical_wall(const LinForm& h) {
  std::vector<Int> v = h.primitive();
  for (const Int& x : v) {
    if (x == 0) continue;
    if (x < 0)
      for (Int& y : v) y = -y;
    break;
  }
  return v;
}

namespace {

LinForm wall_form(const std::vector<Int>& normal) {
  std::vector<Rat> c(normal.size());
  for (size_t i = 0; i < normal.size(); ++i) c[i] = Rat(normal[i]);
  return LinForm{c};
}

void record_wall(std::vector<Wall>& walls, const std::vector<Int>& normal, WallOrigin origin) {
  for (const Wall& w : walls)
    if (w.normal == normal) return;
  walls.push_back({normal, origin});
}

}  // namespace

Fan build_alignment_fan(const TropCover& cover, const std::vector<AdmissibleFunction>& fns) {
  Fan fan;
  fan.dim = cover.base_dim();
  fan.support = orthant(fan.dim);

  // Pre-alignment: all pairwise value differences of every admissible
  // function, over the source vertices.
  std::vector<std::vector<Int>> pre;
  for (const AdmissibleFunction& f : fns) {
    const auto& vv = f.source_function.vertex_values;
    for (auto a = vv.begin(); a != vv.end(); ++a)
      for (auto b = std::next(a); b != vv.end(); ++b) {
        LinForm h = a->second - b->second;
        if (h.is_zero()) continue;
        std::vector<Int> n = canonical_wall(h);
        bool seen = false;
        for (const auto& m : pre)
          if (m == n) seen = true;
        if (!seen) pre.push_back(n);
      }
  }

  std::deque<Cone> queue{fan.support};
  if (fan.dim == 0) queue = {fan.support};
  for (const auto& n : pre) {
    LinForm h = wall_form(n);
    std::deque<Cone> next;
    bool used = false;
    for (Cone& c : queue) {
      if (sign_on(c, h) == Sign::Mixed) {
        auto [plus, minus] = split(c, h);
        next.push_back(std::move(plus));
        next.push_back(std::move(minus));
        used = true;
      } else {
        next.push_back(std::move(c));
      }
    }
    queue = std::move(next);
    if (used) record_wall(fan.walls, n, WallOrigin::Alignment);
  }

  // Resolve lambda on every cone, splitting on demand.
  while (!queue.empty()) {
    Cone c = std::move(queue.front());
    queue.pop_front();
    try {
      LambdaRegionData data = lambda_max(cover, fns, c);
      std::string type = data.combinatorial_type();
      fan.maximal.push_back({std::move(c), std::move(data), std::move(type)});
    } catch (const SplitRequest& req) {
      std::vector<Int> n = canonical_wall(req.wall);
      record_wall(fan.walls, n, req.origin);
      auto [plus, minus] = split(c, wall_form(n));
      if (plus.rays.empty() || minus.rays.empty() || plus.rays == c.rays || minus.rays == c.rays)
        throw std::logic_error("split request did not refine the cone");
      queue.push_back(std::move(plus));
      queue.push_back(std::move(minus));
    }
  }
  std::sort(fan.maximal.begin(), fan.maximal.end(),
            [](const FanCone& a, const FanCone& b) { return a.cone < b.cone; });
  return fan;
}

namespace {

bool is_face_of(const Cone& big, const Cone& small) {
  // Smallest face of `big` containing `small`: intersect the facets tight on
  // all of small's rays; compare ray sets.
  std::vector<LinForm> tight;
  for (const LinForm& a : big.ineqs) {
    bool all0 = true;
    for (const auto& r : small.rays)
      if (a.eval_ray(r) != 0) {
        all0 = false;
        break;
      }
    if (all0) tight.push_back(a);
  }
  std::vector<std::vector<Int>> face_rays;
  for (const auto& r : big.rays) {
    bool on = true;
    for (const LinForm& a : tight)
      if (a.eval_ray(r) != 0) {
        on = false;
        break;
      }
    if (on) face_rays.push_back(r);
  }
  std::sort(face_rays.begin(), face_rays.end());
  return face_rays == small.rays;
}

}  // namespace

Fan coarsen(const TropCover& cover, const Fan& sigma,
            const std::vector<std::string>* fiber_tags, std::vector<std::string>* reports) {
  (void)cover;
  int n = static_cast<int>(sigma.maximal.size());

  auto forms_agree = [&](const FanCone& a, const FanCone& b) {
    if (a.lambda.value.size() != b.lambda.value.size()) return false;
    for (const auto& [vid, va] : a.lambda.value) {
      auto it = b.lambda.value.find(vid);
      if (it == b.lambda.value.end() || it->second != va) return false;
    }
    if (a.lambda.levels != b.lambda.levels) return false;
    for (const auto& [pid, span] : a.lambda.piece_span) {
      auto it = b.lambda.piece_span.find(pid);
      if (it == b.lambda.piece_span.end() || it->second != span) return false;
    }
    return true;
  };

  // Greedy pairwise merging. A merge is accepted only if the union is a
  // convex *simplicial* cone (simpliciality keeps the level heights a free
  // basis of the monoid, the locally-free rank statement; incomparable level
  // pairs merge exactly this way into the Kummer cones) and the collection
  // stays face-to-face. Same-type neighbours whose merge would break either
  // condition stay separate and are reported.
  struct Work {
    Cone cone;
    Rat volume;
    int rep;  // representative index into sigma.maximal
  };
  std::vector<Work> work;
  for (int i = 0; i < n; ++i)
    work.push_back({sigma.maximal[i].cone, cone_volume(sigma.maximal[i].cone), i});

  auto mergeable_types = [&](int a, int b) {
    return sigma.maximal[a].type == sigma.maximal[b].type &&
           forms_agree(sigma.maximal[a], sigma.maximal[b]);
  };

  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i < work.size() && !changed; ++i)
      for (size_t j = i + 1; j < work.size() && !changed; ++j) {
        if (!mergeable_types(work[i].rep, work[j].rep)) continue;
        if (!share_facet(work[i].cone, work[j].cone)) continue;
        std::vector<std::vector<Int>> rays = work[i].cone.rays;
        rays.insert(rays.end(), work[j].cone.rays.begin(), work[j].cone.rays.end());
        std::sort(rays.begin(), rays.end());
        rays.erase(std::unique(rays.begin(), rays.end()), rays.end());
        Cone u = cone_from_rays(sigma.dim, rays);
        if (cone_volume(u) != work[i].volume + work[j].volume || !u.is_simplicial()) continue;
        // the merged cone must remain face-to-face with every other cone
        bool ok = true;
        for (size_t k = 0; k < work.size() && ok; ++k) {
          if (k == i || k == j) continue;
          Cone inter = intersect(u, work[k].cone);
          if (inter.rays.empty()) continue;
          if (!is_face_of(u, inter) || !is_face_of(work[k].cone, inter)) ok = false;
        }
        if (!ok) continue;
        if (fiber_tags && (*fiber_tags)[work[i].rep] != (*fiber_tags)[work[j].rep] && reports)
          reports->push_back("coarsening merged cones with different fibre classes: '" +
                             (*fiber_tags)[work[i].rep] + "' vs '" + (*fiber_tags)[work[j].rep] +
                             "'");
        Rat vol = work[i].volume + work[j].volume;
        int rep = std::min(work[i].rep, work[j].rep);
        work.erase(work.begin() + j);
        work[i] = {std::move(u), vol, rep};
        std::sort(work.begin(), work.end(),
                  [](const Work& a, const Work& b) { return a.cone < b.cone; });
        changed = true;
      }
  }

  for (size_t i = 0; i < work.size(); ++i)
    for (size_t j = i + 1; j < work.size(); ++j)
      if (mergeable_types(work[i].rep, work[j].rep) && share_facet(work[i].cone, work[j].cone) &&
          reports)
        reports->push_back("same-type neighbours left unmerged to keep the coarsening simplicial");

  Fan out;
  out.dim = sigma.dim;
  out.support = sigma.support;
  out.walls = sigma.walls;
  for (const Work& w : work) {
    FanCone fc = sigma.maximal[w.rep];
    fc.cone = w.cone;
    fc.lambda.region = w.cone;
    out.maximal.push_back(std::move(fc));
  }
  std::sort(out.maximal.begin(), out.maximal.end(),
            [](const FanCone& a, const FanCone& b) { return a.cone < b.cone; });

  for (const FanCone& fc : out.maximal)
    if (!fc.cone.is_simplicial())
      throw DiscrepancyError("a coarsened cone is not simplicial; this falsifies the paper's claim");

  FanChecks checks = check_fan(out);
  if (!checks.pass())
    throw DiscrepancyError("coarsening did not produce a fan: " +
                           (checks.problems.empty() ? std::string("unknown") : checks.problems.front()));
  return out;
}

FanChecks check_fan(const Fan& fan) {
  FanChecks out;
  out.support_volume = cone_volume(fan.support);
  out.total_volume = 0;
  for (const FanCone& fc : fan.maximal) out.total_volume += cone_volume(fc.cone);
  out.volume_additive = out.total_volume == out.support_volume;
  if (!out.volume_additive)
    out.problems.push_back("volumes of maximal cones do not add up to the base cone");

  out.interiors_disjoint = true;
  out.intersections_are_faces = true;
  for (size_t i = 0; i < fan.maximal.size(); ++i)
    for (size_t j = i + 1; j < fan.maximal.size(); ++j) {
      Cone inter = intersect(fan.maximal[i].cone, fan.maximal[j].cone);
      if (inter.rank() == fan.dim && fan.dim > 0) {
        out.interiors_disjoint = false;
        out.problems.push_back("two maximal cones overlap in the interior");
        continue;
      }
      if (!inter.rays.empty() &&
          (!is_face_of(fan.maximal[i].cone, inter) || !is_face_of(fan.maximal[j].cone, inter))) {
        out.intersections_are_faces = false;
        out.problems.push_back("an intersection of maximal cones is not a common face");
      }
    }
  return out;
}

namespace {

std::vector<LinForm> derived_lengths(const FanCone& fc) {
  // The smoothing parameters of the subdivided curve: one per piece.
  std::vector<LinForm> out;
  for (const auto& [pid, span] : fc.lambda.piece_span) {
    (void)pid;
    out.push_back(span.second - span.first);
  }
  return out;
}

}  // namespace

ConeDiagnostics cone_diagnostics(const FanCone& fc) {
  ConeDiagnostics d;
  d.simplicial = fc.cone.is_simplicial();
  if (d.simplicial) {
    d.index = lattice_index(fc.cone);
    d.smooth = d.index == 1;
    if (d.index > 2) d.unexpected_index = true;
  }
  for (const LinForm& len : derived_lengths(fc)) {
    if (len.has_integer_coeffs()) continue;
    bool seen = false;
    for (const LinForm& k : d.kummer_lengths)
      if (k == len) seen = true;
    if (!seen) d.kummer_lengths.push_back(len);
    if (!integral_on_ray_lattice(fc.cone, len)) d.unexpected_index = true;
  }
  std::sort(d.kummer_lengths.begin(), d.kummer_lengths.end());

  // Which ray coordinates take half-integral values on lattice points: probe
  // the unit vectors through the inverse of the ray matrix.
  if (d.simplicial && d.smooth == false && d.index == 2 && fc.cone.full_dim()) {
    int n = fc.cone.ambient_dim;
    // solve R^T t = e_j for each j; collect coords of the first fractional t
    for (int j = 0; j < n && d.kummer_coords.empty(); ++j) {
      std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n + 1));
      for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) m[r][c] = Rat(fc.cone.rays[c][r]);
        m[r][n] = r == j ? 1 : 0;
      }
      // gaussian solve
      bool ok = true;
      for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
          if (m[r][col] != 0) {
            piv = r;
            break;
          }
        if (piv < 0) {
          ok = false;
          break;
        }
        std::swap(m[piv], m[col]);
        Rat p = m[col][col];
        for (int c = col; c <= n; ++c) m[col][c] /= p;
        for (int r = 0; r < n; ++r) {
          if (r == col || m[r][col] == 0) continue;
          Rat f = m[r][col];
          for (int c = col; c <= n; ++c) m[r][c] -= f * m[col][c];
        }
      }
      if (!ok) continue;
      bool fractional = false;
      for (int r = 0; r < n; ++r)
        if (!is_integer(m[r][n])) fractional = true;
      if (fractional)
        for (int r = 0; r < n; ++r)
          if (!is_integer(m[r][n])) d.kummer_coords.push_back(r);
    }
  }
  return d;
}

EquidimReport equidim_reducedness_check(const FanCone& fc, bool use_kummer) {
  EquidimReport rep;
  rep.equidimensional = true;
  rep.reduced = true;

  auto check_length = [&](const LinForm& len, const std::string& what) {
    if (len.has_integer_coeffs()) return;
    rep.needs_kummer = true;
    if (!integral_on_ray_lattice(fc.cone, len)) {
      rep.reduced = false;
      rep.detail.push_back(what + " is not integral even on the ray lattice");
    } else if (!use_kummer) {
      rep.reduced = false;
      rep.detail.push_back(what + " fails reducedness on the standard lattice");
    }
  };

  for (const LinForm& len : derived_lengths(fc)) check_length(len, "a piece length");

  // Level classes provably interior to a piece's value interval demand a
  // (virtual) subdivision point; it must exist in the half-integral lattice
  // for the universal curve to map onto level intervals with the right
  // lattice behaviour. Interior levels that are incomparable on the cone
  // impose nothing (the merged Kummer cones are exactly this situation).
  for (const auto& [pid, span] : fc.lambda.piece_span) {
    (void)span;
    const GraphEdge& pe = fc.lambda.curve.edge(pid);
    const LinForm& a = fc.lambda.value.at(pe.tail);
    const LinForm& b = fc.lambda.value.at(pe.head);
    const Rat& s = fc.lambda.piece_slope.at(pid);
    if (s == 0) continue;
    for (const LinForm& c : fc.lambda.levels) {
      bool inside = (sign_on(fc.cone, c - a) == Sign::Pos && sign_on(fc.cone, b - c) == Sign::Pos) ||
                    (sign_on(fc.cone, c - b) == Sign::Pos && sign_on(fc.cone, a - c) == Sign::Pos);
      if (!inside) continue;
      try {
        LinForm offset = (c - a).divided_by(s.get_num());
        check_length(offset, "a virtual level-subdivision length on " + pid);
        check_length((b - c).divided_by(s.get_num()), "a virtual level-subdivision length on " + pid);
      } catch (const DenominatorError&) {
        rep.equidimensional = false;
        rep.detail.push_back("level subdivision of " + pid + " leaves the half-integral lattice");
      }
    }
  }
  return rep;
}

}  // namespace tvz
