#include "tvz/cone.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace tvz {

namespace {

// Rank of a rational matrix by Gaussian elimination.
int rat_rank(std::vector<std::vector<Rat>> m) {
  int rows = static_cast<int>(m.size());
  if (rows == 0) return 0;
  int cols = static_cast<int>(m[0].size());
  int rank = 0;
  for (int col = 0; col < cols && rank < rows; ++col) {
    int pivot = -1;
    for (int r = rank; r < rows; ++r)
      if (m[r][col] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(m[rank], m[pivot]);
    for (int r = 0; r < rows; ++r) {
      if (r == rank || m[r][col] == 0) continue;
      Rat f = m[r][col] / m[rank][col];
      for (int c2 = col; c2 < cols; ++c2) m[r][c2] -= f * m[rank][c2];
    }
    ++rank;
  }
  return rank;
}

std::vector<Rat> ray_to_rat(const std::vector<Int>& r) {
  std::vector<Rat> x(r.size());
  for (size_t i = 0; i < r.size(); ++i) x[i] = Rat(r[i]);
  return x;
}

// Kernel vector of a set of forms whose joint rank is dim-1; nullopt
// otherwise. Result is a primitive integer vector.
std::optional<std::vector<Int>> corank_one_kernel(const std::vector<const LinForm*>& forms, int dim) {
  std::vector<std::vector<Rat>> m;
  m.reserve(forms.size());
  for (const LinForm* f : forms) m.push_back(f->coeffs());
  // Eliminate.
  int rows = static_cast<int>(m.size());
  std::vector<int> pivot_col;
  int rank = 0;
  for (int col = 0; col < dim && rank < rows; ++col) {
    int pivot = -1;
    for (int r = rank; r < rows; ++r)
      if (m[r][col] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(m[rank], m[pivot]);
    for (int r = 0; r < rows; ++r) {
      if (r == rank || m[r][col] == 0) continue;
      Rat f = m[r][col] / m[rank][col];
      for (int c2 = 0; c2 < dim; ++c2) m[r][c2] -= f * m[rank][c2];
    }
    pivot_col.push_back(col);
    ++rank;
  }
  if (rank != dim - 1) return std::nullopt;
  std::vector<bool> is_pivot(dim, false);
  for (int c : pivot_col) is_pivot[c] = true;
  int free_col = -1;
  for (int c = 0; c < dim; ++c)
    if (!is_pivot[c]) {
      free_col = c;
      break;
    }
  std::vector<Rat> x(dim, Rat(0));
  x[free_col] = 1;
  for (int r = rank - 1; r >= 0; --r) {
    int pc = pivot_col[r];
    Rat s = 0;
    for (int c = pc + 1; c < dim; ++c) s += m[r][c] * x[c];
    x[pc] = -s / m[r][pc];
  }
  std::vector<Int> v(dim);
  Int lcm = 1;
  for (const Rat& q : x) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den().get_mpz_t());
  for (int i = 0; i < dim; ++i) {
    Rat y = x[i] * Rat(lcm);
    y.canonicalize();
    v[i] = y.get_num();
  }
  Int g = ivec_gcd(v);
  if (g > 1)
    for (Int& e : v) e /= g;
  return v;
}

// Extreme rays of {x : all ineqs ≥ 0}, assuming the cone is pointed.
// Brute force over (dim-1)-subsets of the inequalities; exact and complete
// for the small dimensions this artifact works in.
std::vector<std::vector<Int>> extreme_rays(int dim, const std::vector<LinForm>& ineqs) {
  std::set<std::vector<Int>> found;
  if (dim == 0) return {};
  if (dim == 1) {
    // The ray (1) if feasible.
    std::vector<Int> e{Int(1)};
    bool ok = true;
    for (const LinForm& a : ineqs)
      if (a.eval_ray(e) < 0) ok = false;
    if (ok) found.insert(e);
    std::vector<Int> en{Int(-1)};
    ok = true;
    for (const LinForm& a : ineqs)
      if (a.eval_ray(en) < 0) ok = false;
    if (ok) found.insert(en);
    return {found.begin(), found.end()};
  }
  int m = static_cast<int>(ineqs.size());
  int k = dim - 1;
  if (m < k) return {};
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  auto advance = [&]() {
    int i = k - 1;
    while (i >= 0 && idx[i] == m - k + i) --i;
    if (i < 0) return false;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    return true;
  };
  do {
    std::vector<const LinForm*> forms;
    forms.reserve(k);
    for (int i : idx) forms.push_back(&ineqs[i]);
    auto v = corank_one_kernel(forms, dim);
    if (!v) continue;
    for (int s = 0; s < 2; ++s) {
      std::vector<Int> r = *v;
      if (s == 1)
        for (Int& e : r) e = -e;
      bool ok = true;
      for (const LinForm& a : ineqs)
        if (a.eval_ray(r) < 0) {
          ok = false;
          break;
        }
      if (ok) found.insert(r);
    }
  } while (advance());
  return {found.begin(), found.end()};
}

// Keep only inequalities that define facets (tight on a rank-1 subset of the
// rays) and drop duplicates up to positive scaling.
std::vector<LinForm> facet_inequalities(int dim, const std::vector<LinForm>& ineqs,
                                        const std::vector<std::vector<Int>>& rays) {
  int r = 0;
  {
    std::vector<std::vector<Rat>> m;
    for (const auto& ray : rays) m.push_back(ray_to_rat(ray));
    r = rat_rank(m);
  }
  std::vector<LinForm> out;
  std::set<std::vector<Int>> seen;
  for (const LinForm& a : ineqs) {
    if (a.is_zero()) continue;
    std::vector<std::vector<Rat>> tight;
    for (const auto& ray : rays)
      if (a.eval_ray(ray) == 0) tight.push_back(ray_to_rat(ray));
    if (rat_rank(tight) != r - 1) continue;
    std::vector<Int> key = a.primitive();
    if (seen.insert(key).second) {
      std::vector<Rat> coeffs(key.size());
      for (size_t i = 0; i < key.size(); ++i) coeffs[i] = Rat(key[i]);
      out.push_back(LinForm{coeffs});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Cone assemble(int dim, std::vector<LinForm> ineqs) {
  Cone c;
  c.ambient_dim = dim;
  c.rays = extreme_rays(dim, ineqs);
  std::sort(c.rays.begin(), c.rays.end());
  c.ineqs = facet_inequalities(dim, ineqs, c.rays);
  return c;
}

}  // namespace

int Cone::rank() const {
  std::vector<std::vector<Rat>> m;
  m.reserve(rays.size());
  for (const auto& r : rays) m.push_back(ray_to_rat(r));
  return rat_rank(m);
}

std::vector<Rat> Cone::interior_sample() const {
  std::vector<Rat> x(ambient_dim, Rat(0));
  for (const auto& r : rays)
    for (int i = 0; i < ambient_dim; ++i) x[i] += Rat(r[i]);
  return x;
}

bool Cone::contains(const std::vector<Rat>& x) const {
  for (const LinForm& a : ineqs)
    if (a.eval(x) < 0) return false;
  // Lower-dimensional cones: must also lie in the span. Check by rank.
  if (!full_dim()) {
    std::vector<std::vector<Rat>> m;
    for (const auto& r : rays) m.push_back(ray_to_rat(r));
    int r0 = rat_rank(m);
    m.push_back(x);
    if (rat_rank(m) != r0) return false;
  }
  return true;
}

Cone orthant(int dim) {
  std::vector<LinForm> ineqs;
  ineqs.reserve(dim);
  for (int i = 0; i < dim; ++i) ineqs.push_back(LinForm::coordinate(dim, i));
  Cone c;
  c.ambient_dim = dim;
  for (int i = 0; i < dim; ++i) {
    std::vector<Int> e(dim, Int(0));
    e[i] = 1;
    c.rays.push_back(e);
  }
  std::sort(c.rays.begin(), c.rays.end());
  c.ineqs = std::move(ineqs);
  std::sort(c.ineqs.begin(), c.ineqs.end());
  return c;
}

Cone cone_from_inequalities(int dim, const std::vector<LinForm>& ineqs) {
  return assemble(dim, ineqs);
}

Cone cone_from_rays(int dim, const std::vector<std::vector<Int>>& rays) {
  if (rays.empty()) {
    Cone c;
    c.ambient_dim = dim;
    return c;
  }
  {
    std::vector<std::vector<Rat>> m;
    for (const auto& r : rays) m.push_back(ray_to_rat(r));
    if (rat_rank(m) != dim)
      throw std::invalid_argument("cone_from_rays requires a full-dimensional ray set");
  }
  // Facet normals = extreme rays of the dual cone {y : <y, r> ≥ 0 for all r}.
  std::vector<LinForm> dual_ineqs;
  for (const auto& r : rays) {
    std::vector<Rat> coeffs(dim);
    for (int i = 0; i < dim; ++i) coeffs[i] = Rat(r[i]);
    dual_ineqs.push_back(LinForm{coeffs});
  }
  std::vector<std::vector<Int>> normals = extreme_rays(dim, dual_ineqs);
  std::vector<LinForm> ineqs;
  for (const auto& n : normals) {
    std::vector<Rat> coeffs(dim);
    for (int i = 0; i < dim; ++i) coeffs[i] = Rat(n[i]);
    ineqs.push_back(LinForm{coeffs});
  }
  return assemble(dim, ineqs);
}

Sign sign_on(const Cone& c, const LinForm& h) {
  bool pos = false, neg = false;
  for (const auto& r : c.rays) {
    int s = rsign(h.eval_ray(r));
    if (s > 0) pos = true;
    if (s < 0) neg = true;
  }
  if (pos && neg) return Sign::Mixed;
  if (pos) return Sign::Pos;
  if (neg) return Sign::Neg;
  return Sign::Zero;
}

std::pair<Cone, Cone> split(const Cone& c, const LinForm& wall) {
  std::vector<LinForm> plus = c.ineqs, minus = c.ineqs;
  plus.push_back(wall);
  minus.push_back(-wall);
  return {assemble(c.ambient_dim, plus), assemble(c.ambient_dim, minus)};
}

Cone face_of(const Cone& c, const LinForm& wall) {
  Cone f;
  f.ambient_dim = c.ambient_dim;
  for (const auto& r : c.rays)
    if (wall.eval_ray(r) == 0) f.rays.push_back(r);
  std::sort(f.rays.begin(), f.rays.end());
  f.ineqs = c.ineqs;
  f.ineqs.push_back(wall);
  f.ineqs.push_back(-wall);
  return f;
}

Cone intersect(const Cone& a, const Cone& b) {
  std::vector<LinForm> ineqs = a.ineqs;
  ineqs.insert(ineqs.end(), b.ineqs.begin(), b.ineqs.end());
  return assemble(a.ambient_dim, ineqs);
}

std::vector<Cone> facets(const Cone& c) {
  std::vector<Cone> out;
  for (const LinForm& a : c.ineqs) out.push_back(face_of(c, a));
  return out;
}

bool cone_contains_cone(const Cone& outer, const Cone& inner) {
  for (const auto& r : inner.rays) {
    for (const LinForm& a : outer.ineqs)
      if (a.eval_ray(r) < 0) return false;
  }
  return true;
}

namespace {

Rat simplex_volume(const std::vector<std::vector<Int>>& rays) {
  int n = static_cast<int>(rays.size());
  // det of the matrix with rows r_i / (sum of coords of r_i)
  std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n));
  for (int i = 0; i < n; ++i) {
    Rat s = 0;
    for (int j = 0; j < n; ++j) s += Rat(rays[i][j]);
    if (s == 0) throw std::logic_error("ray outside the positive orthant closure");
    for (int j = 0; j < n; ++j) m[i][j] = Rat(rays[i][j]) / s;
  }
  // Gaussian determinant.
  Rat det = 1;
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r)
      if (m[r][col] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) return Rat(0);
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (int r = col + 1; r < n; ++r) {
      if (m[r][col] == 0) continue;
      Rat f = m[r][col] / m[col][col];
      for (int c2 = col; c2 < n; ++c2) m[r][c2] -= f * m[col][c2];
    }
  }
  return abs(det);
}

void triangulate(const Cone& c, std::vector<std::vector<std::vector<Int>>>& out) {
  int rk = c.rank();
  if (static_cast<int>(c.rays.size()) == rk) {
    out.push_back(c.rays);
    return;
  }
  const std::vector<Int>& r0 = c.rays.front();
  for (const LinForm& a : c.ineqs) {
    if (a.eval_ray(r0) == 0) continue;
    Cone f = face_of(c, a);
    if (f.rays.empty() || f.rank() != rk - 1) continue;
    std::vector<std::vector<std::vector<Int>>> sub;
    triangulate(f, sub);
    for (auto& s : sub) {
      s.push_back(r0);
      std::sort(s.begin(), s.end());
      out.push_back(std::move(s));
    }
  }
}

}  // namespace

Rat cone_volume(const Cone& c) {
  if (!c.full_dim()) return Rat(0);
  std::vector<std::vector<std::vector<Int>>> simplices;
  triangulate(c, simplices);
  std::set<std::vector<std::vector<Int>>> dedup(simplices.begin(), simplices.end());
  Rat v = 0;
  for (const auto& s : dedup) v += simplex_volume(s);
  return v;
}

Int lattice_index(const Cone& c) {
  int k = c.rank();
  if (static_cast<int>(c.rays.size()) != k) throw std::logic_error("lattice_index needs a simplicial cone");
  if (k == 0) return 1;
  int n = c.ambient_dim;
  // gcd of all k x k minors of the k x n ray matrix (integer arithmetic).
  std::vector<int> cols(k);
  for (int i = 0; i < k; ++i) cols[i] = i;
  Int g = 0;
  auto advance = [&]() {
    int i = k - 1;
    while (i >= 0 && cols[i] == n - k + i) --i;
    if (i < 0) return false;
    ++cols[i];
    for (int j = i + 1; j < k; ++j) cols[j] = cols[j - 1] + 1;
    return true;
  };
  do {
    // integer determinant of the submatrix via fraction-free elimination
    std::vector<std::vector<Rat>> m(k, std::vector<Rat>(k));
    for (int r = 0; r < k; ++r)
      for (int ci = 0; ci < k; ++ci) m[r][ci] = Rat(c.rays[r][cols[ci]]);
    Rat det = 1;
    bool singular = false;
    for (int col = 0; col < k; ++col) {
      int pivot = -1;
      for (int r = col; r < k; ++r)
        if (m[r][col] != 0) {
          pivot = r;
          break;
        }
      if (pivot < 0) {
        singular = true;
        break;
      }
      if (pivot != col) {
        std::swap(m[pivot], m[col]);
        det = -det;
      }
      det *= m[col][col];
      for (int r = col + 1; r < k; ++r) {
        if (m[r][col] == 0) continue;
        Rat f = m[r][col] / m[col][col];
        for (int c2 = col; c2 < k; ++c2) m[r][c2] -= f * m[col][c2];
      }
    }
    if (!singular) {
      Rat a = abs(det);
      a.canonicalize();
      Int d = a.get_num();  // denominators cancel: entries were integers
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
    }
  } while (advance());
  return g == 0 ? Int(0) : g;
}

bool integral_on_ray_lattice(const Cone& c, const LinForm& h) {
  for (const auto& r : c.rays)
    if (!is_integer(h.eval_ray(r))) return false;
  return true;
}

std::optional<std::vector<Rat>> farkas_certificate(const Cone& c, const LinForm& h) {
  Sign s = sign_on(c, h);
  if (s == Sign::Mixed || s == Sign::Neg) return std::nullopt;
  // Phase-1 simplex for { mu ≥ 0 : A^T mu = h } where the columns of A^T are
  // the facet forms. Rows: ambient_dim equations.
  int n = c.ambient_dim;
  int m = static_cast<int>(c.ineqs.size());
  if (n == 0) return std::vector<Rat>{};
  // Tableau with artificial variables; minimize their sum, Bland's rule.
  std::vector<std::vector<Rat>> T(n, std::vector<Rat>(m + n + 1, Rat(0)));
  for (int i = 0; i < n; ++i) {
    Rat rhs = h.coeff(i);
    for (int j = 0; j < m; ++j) T[i][j] = c.ineqs[j].coeff(i);
    T[i][m + n] = rhs;
    if (rhs < 0)
      for (int j = 0; j <= m + n; ++j) T[i][j] = -T[i][j];
    T[i][m + i] = 1;
  }
  std::vector<int> basis(n);
  for (int i = 0; i < n; ++i) basis[i] = m + i;
  // objective row: sum of artificial rows
  std::vector<Rat> obj(m + n + 1, Rat(0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= m + n; ++j) obj[j] += T[i][j];
  while (true) {
    int enter = -1;
    for (int j = 0; j < m + n; ++j)
      if (obj[j] > 0) {
        enter = j;
        break;
      }
    if (enter < 0) break;
    int leave = -1;
    Rat best;
    for (int i = 0; i < n; ++i) {
      if (T[i][enter] <= 0) continue;
      Rat ratio = T[i][m + n] / T[i][enter];
      if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        best = ratio;
        leave = i;
      }
    }
    if (leave < 0) return std::nullopt;  // unbounded: should not happen
    Rat piv = T[leave][enter];
    for (int j = 0; j <= m + n; ++j) T[leave][j] /= piv;
    for (int i = 0; i < n; ++i) {
      if (i == leave || T[i][enter] == 0) continue;
      Rat f = T[i][enter];
      for (int j = 0; j <= m + n; ++j) T[i][j] -= f * T[leave][j];
    }
    Rat fo = obj[enter];
    for (int j = 0; j <= m + n; ++j) obj[j] -= fo * T[leave][j];
    basis[leave] = enter;
  }
  if (obj[m + n] != 0) return std::nullopt;  // infeasible
  std::vector<Rat> mu(m, Rat(0));
  for (int i = 0; i < n; ++i) {
    if (basis[i] < m)
      mu[basis[i]] = T[i][m + n];
    else if (T[i][m + n] != 0)
      return std::nullopt;  // artificial stuck at nonzero level
  }
  return mu;
}

bool share_facet(const Cone& a, const Cone& b) {
  if (!a.full_dim() || !b.full_dim()) return false;
  Cone i = intersect(a, b);
  return i.rank() == a.rank() - 1;
}

}  // namespace tvz
