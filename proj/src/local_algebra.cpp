#include "tvz/local_algebra.hpp"

#include <algorithm>
#include <stdexcept>

namespace tvz {

int GermSpec::reduced_branch_count() const {
  int m = 0;
  for (BranchKind k : branches)
    if (k == BranchKind::Reduced) ++m;
  return m;
}

bool GermSpec::has_ribbon() const {
  for (BranchKind k : branches)
    if (k == BranchKind::Ribbon) return true;
  return false;
}

TruncatedRing::TruncatedRing(std::vector<BranchKind> branches, int order)
    : branches_(std::move(branches)), order_(order) {
  for (int d = 0; d < order_; ++d)
    for (int b = 0; b < static_cast<int>(branches_.size()); ++b) {
      // monomials of total degree d on branch b, eps last within a branch
      if (d < order_) monos_.push_back({b, d, 0});
      if (branches_[b] == BranchKind::Ribbon && d >= 1) monos_.push_back({b, d - 1, 1});
    }
  for (int i = 0; i < static_cast<int>(monos_.size()); ++i)
    index_[{monos_[i].branch, monos_[i].power, monos_[i].eps}] = i;
}

int TruncatedRing::mono_index(int branch, int power, int eps) const {
  auto it = index_.find({branch, power, eps});
  return it == index_.end() ? -1 : it->second;
}

TruncatedRing::Vec TruncatedRing::one() const {
  Vec v = zero();
  for (int b = 0; b < static_cast<int>(branches_.size()); ++b) v[mono_index(b, 0, 0)] = 1;
  return v;
}

TruncatedRing::Vec TruncatedRing::mul(const Vec& a, const Vec& b) const {
  Vec out = zero();
  for (int i = 0; i < dim(); ++i) {
    if (a[i] == 0) continue;
    const Monomial& mi = monos_[i];
    for (int j = 0; j < dim(); ++j) {
      if (b[j] == 0) continue;
      const Monomial& mj = monos_[j];
      if (mi.branch != mj.branch) continue;
      int eps = mi.eps + mj.eps;
      if (eps > 1) continue;  // eps^2 = 0
      int k = mono_index(mi.branch, mi.power + mj.power, eps);
      if (k < 0) continue;  // truncated away
      out[k] += a[i] * b[j];
    }
  }
  return out;
}

TruncatedRing::Vec TruncatedRing::element(const std::vector<GermTerm>& terms) const {
  Vec v = zero();
  for (const GermTerm& t : terms) {
    int k = mono_index(t.branch, t.power, t.eps);
    if (k >= 0) v[k] += t.coeff;
  }
  return v;
}

int TruncatedRing::order_of(const Vec& v) const {
  int best = order_;
  for (int i = 0; i < dim(); ++i)
    if (v[i] != 0) best = std::min(best, monos_[i].degree());
  return best;
}

bool Echelon::insert(Vec v) {
  v = reduce(std::move(v));
  int piv = -1;
  for (int i = 0; i < static_cast<int>(v.size()); ++i)
    if (v[i] != 0) {
      piv = i;
      break;
    }
  if (piv < 0) return false;
  Rat lead = v[piv];
  for (Rat& x : v) x /= lead;
  // keep reduced row-echelon form: eliminate the new pivot from older rows
  for (auto& [p, row] : rows_) {
    if (row[piv] == 0) continue;
    Rat f = row[piv];
    for (size_t i = 0; i < row.size(); ++i) row[i] -= f * v[i];
  }
  rows_[piv] = std::move(v);
  return true;
}

Echelon::Vec Echelon::reduce(Vec v) const {
  for (const auto& [piv, row] : rows_) {
    if (v[piv] == 0) continue;
    Rat f = v[piv];
    for (size_t i = 0; i < v.size(); ++i) v[i] -= f * row[i];
  }
  return v;
}

bool Echelon::contains(const Vec& v) const {
  Vec r = reduce(v);
  for (const Rat& x : r)
    if (x != 0) return false;
  return true;
}

std::optional<std::vector<Rat>> Echelon::coordinates(const Vec& v) const {
  Vec r = v;
  std::vector<Rat> coords;
  coords.reserve(rows_.size());
  for (const auto& [piv, row] : rows_) {
    Rat f = r[piv];
    coords.push_back(f);
    if (f != 0)
      for (size_t i = 0; i < r.size(); ++i) r[i] -= f * row[i];
  }
  for (const Rat& x : r)
    if (x != 0) return std::nullopt;
  return coords;
}

LocalAlgebra build_algebra(const GermSpec& spec, int order) {
  LocalAlgebra A{TruncatedRing(spec.branches, order), {}, {}};
  for (const auto& g : spec.generators) A.generators.push_back(A.ring.element(g));
  A.basis.insert(A.ring.one());
  for (const auto& g : A.generators) A.basis.insert(g);
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<TruncatedRing::Vec> snapshot;
    for (const auto& [piv, row] : A.basis.rows()) {
      (void)piv;
      snapshot.push_back(row);
    }
    for (const auto& g : A.generators)
      for (const auto& row : snapshot)
        if (A.basis.insert(A.ring.mul(g, row))) grew = true;
  }
  return A;
}

namespace {

int delta_at(const GermSpec& spec, int order) {
  LocalAlgebra A = build_algebra(spec, order);
  return A.ring.dim() - A.basis.dim();
}

ConductorResult conductor_at(const GermSpec& spec, int order) {
  LocalAlgebra A = build_algebra(spec, order);
  const TruncatedRing& R = A.ring;
  int n = R.dim();
  // f in the conductor iff f * m lies in A for every ambient monomial m.
  // Unknown f over the ambient monomial basis; one block of conditions per
  // multiplier monomial, expressed in the quotient ambient/A. Products of
  // monomials are monomials, so residuals come from a precomputed table.
  std::vector<TruncatedRing::Vec> unit_residual(n);
  for (int k = 0; k < n; ++k) {
    TruncatedRing::Vec e = R.zero();
    e[k] = 1;
    unit_residual[k] = A.basis.reduce(e);
  }
  auto prod_index = [&](int i, int j) {
    const Monomial& a = R.monomials()[i];
    const Monomial& b = R.monomials()[j];
    if (a.branch != b.branch || a.eps + b.eps > 1) return -1;
    return R.mono_index(a.branch, a.power + b.power, a.eps + b.eps);
  };
  std::vector<std::vector<Rat>> rows_acc;
  for (int m = 0; m < n; ++m) {
    std::vector<int> res(n);
    for (int f = 0; f < n; ++f) res[f] = prod_index(f, m);
    for (int coord = 0; coord < n; ++coord) {
      bool nz = false;
      for (int f = 0; f < n; ++f)
        if (res[f] >= 0 && unit_residual[res[f]][coord] != 0) nz = true;
      if (!nz) continue;
      std::vector<Rat> row(n, Rat(0));
      for (int f = 0; f < n; ++f)
        if (res[f] >= 0) row[f] = unit_residual[res[f]][coord];
      rows_acc.push_back(std::move(row));
    }
  }
  // kernel of rows_acc
  Echelon rowspace;
  for (auto& r : rows_acc) rowspace.insert(std::move(r));
  // free coordinates = non-pivots; kernel basis by back substitution
  std::vector<bool> is_pivot(n, false);
  for (const auto& [p, r] : rowspace.rows()) {
    (void)r;
    is_pivot[p] = true;
  }
  ConductorResult out;
  Echelon cond;
  for (int fcoord = 0; fcoord < n; ++fcoord) {
    if (is_pivot[fcoord]) continue;
    std::vector<Rat> sol(n, Rat(0));
    sol[fcoord] = 1;
    // rows are in reduced echelon form: pivot value = -(row * free part)
    for (const auto& [p, r] : rowspace.rows()) sol[p] = -r[fcoord];
    cond.insert(sol);
  }
  out.colength = n - cond.dim();
  for (const auto& [p, r] : cond.rows()) {
    (void)p;
    out.generators.push_back(r);
  }
  return out;
}

// Socle dimension of A/(xi) for the first regular xi among deterministic
// integer combinations of the generators; -1 if none is regular.
int socle_dim_at(const GermSpec& spec, int order) {
  LocalAlgebra A = build_algebra(spec, order);
  const TruncatedRing& R = A.ring;
  int dim_a = A.basis.dim();

  std::vector<TruncatedRing::Vec> arows;
  for (const auto& [p, r] : A.basis.rows()) {
    (void)p;
    arows.push_back(r);
  }

  auto in_a_coords = [&](const TruncatedRing::Vec& v) {
    auto c = A.basis.coordinates(v);
    if (!c) throw std::logic_error("product left the subalgebra span");
    return *c;
  };

  const int ng = static_cast<int>(A.generators.size());
  std::vector<std::vector<long>> patterns;
  {
    std::vector<long> p1(ng, 1);
    std::vector<long> p2(ng), p3(ng);
    for (int i = 0; i < ng; ++i) p2[i] = i + 1;
    for (int i = 0; i < ng; ++i) p3[i] = (i % 2 == 0 ? 1 : -1) * (i / 2 + 1);
    patterns = {p1, p2, p3};
  }

  for (const auto& pat : patterns) {
    TruncatedRing::Vec xi = R.zero();
    for (int i = 0; i < ng; ++i)
      for (int k = 0; k < R.dim(); ++k) xi[k] += Rat(pat[i]) * A.generators[i][k];

    // multiplication matrix in A-coordinates
    std::vector<std::vector<Rat>> mult(dim_a);
    for (int i = 0; i < dim_a; ++i) mult[i] = in_a_coords(R.mul(xi, arows[i]));

    // regularity: kernel vectors of low order are genuine zero divisors
    {
      // kernel of the dim_a x dim_a matrix whose columns are mult[i]
      Echelon rowsp;
      for (int coord = 0; coord < dim_a; ++coord) {
        std::vector<Rat> row(dim_a);
        for (int i = 0; i < dim_a; ++i) row[i] = mult[i][coord];
        rowsp.insert(std::move(row));
      }
      std::vector<bool> is_piv(dim_a, false);
      for (const auto& [p, r] : rowsp.rows()) {
        (void)p;
        is_piv[p] = true;
      }
      bool zero_divisor = false;
      for (int f = 0; f < dim_a && !zero_divisor; ++f) {
        if (is_piv[f]) continue;
        std::vector<Rat> sol(dim_a, Rat(0));
        sol[f] = 1;
        for (const auto& [p, r] : rowsp.rows()) sol[p] = -r[f];
        TruncatedRing::Vec elt = R.zero();
        for (int i = 0; i < dim_a; ++i)
          if (sol[i] != 0)
            for (int k = 0; k < R.dim(); ++k) elt[k] += sol[i] * arows[i][k];
        if (R.order_of(elt) < order - 2) zero_divisor = true;  // genuine, not a truncation artifact
      }
      if (zero_divisor) continue;
    }

    // the ideal (xi) in A-coordinates
    Echelon ideal;
    for (int i = 0; i < dim_a; ++i) ideal.insert(mult[i]);
    std::vector<bool> ideal_piv(dim_a, false);
    for (const auto& [p, r] : ideal.rows()) {
      (void)r;
      ideal_piv[p] = true;
    }
    std::vector<int> free_coords;
    for (int i = 0; i < dim_a; ++i)
      if (!ideal_piv[i]) free_coords.push_back(i);

    // socle of Q = A/(xi): kernel of q -> (q * g mod (xi)) over all generators
    int nf = static_cast<int>(free_coords.size());
    std::vector<std::vector<Rat>> conditions;  // rows over the nf unknowns
    for (const auto& g : A.generators) {
      // column for each free coordinate
      std::vector<std::vector<Rat>> col(nf);
      for (int fi = 0; fi < nf; ++fi) {
        const TruncatedRing::Vec& rep = arows[free_coords[fi]];
        std::vector<Rat> prod = in_a_coords(R.mul(g, rep));
        col[fi] = ideal.reduce(prod);
      }
      for (int coord = 0; coord < dim_a; ++coord) {
        bool nz = false;
        for (int fi = 0; fi < nf; ++fi)
          if (col[fi][coord] != 0) nz = true;
        if (!nz) continue;
        std::vector<Rat> row(nf);
        for (int fi = 0; fi < nf; ++fi) row[fi] = col[fi][coord];
        conditions.push_back(std::move(row));
      }
    }
    Echelon condspace;
    for (auto& r : conditions) condspace.insert(std::move(r));
    return nf - condspace.dim();
  }
  return -1;
}

}  // namespace

int delta_invariant(const GermSpec& spec, int order) {
  int d0 = delta_at(spec, order), d1 = delta_at(spec, order + 1);
  if (d0 != d1)
    throw std::runtime_error("increase N: delta-invariant of '" + spec.name + "' is not stable at order " +
                             std::to_string(order));
  return d0;
}

int genus(const GermSpec& spec, int order) {
  if (spec.has_ribbon())
    throw std::invalid_argument("genus via delta - m + 1 applies to reduced germs only");
  return delta_invariant(spec, order) - spec.reduced_branch_count() + 1;
}

ConductorResult conductor(const GermSpec& spec, int order) {
  ConductorResult a = conductor_at(spec, order), b = conductor_at(spec, order + 1);
  if (a.colength != b.colength)
    throw std::runtime_error("increase N: conductor colength of '" + spec.name + "' is not stable");
  return a;
}

bool check_two_delta(const GermSpec& spec, int order) {
  return conductor(spec, order).colength == 2 * delta_invariant(spec, order);
}

bool gorenstein_check(const GermSpec& spec, int order) {
  int s0 = socle_dim_at(spec, order), s1 = socle_dim_at(spec, order + 1);
  if (s0 < 0 || s1 < 0)
    throw std::runtime_error("no regular element found for '" + spec.name + "'");
  if (s0 != s1)
    throw std::runtime_error("increase N: socle dimension of '" + spec.name + "' is not stable");
  return s0 == 1;
}

namespace {

bool decomposable_at(const GermSpec& spec, int order) {
  LocalAlgebra A = build_algebra(spec, order);
  const TruncatedRing& R = A.ring;
  int nb = static_cast<int>(spec.branches.size());
  if (nb < 2) return false;
  // all bipartitions: subsets with branch 0 on the left, proper and nonempty
  for (int mask = 1; mask < (1 << (nb - 1)); ++mask) {
    std::vector<bool> left(nb, false);
    left[0] = true;
    for (int b = 1; b < nb; ++b) left[b] = (mask >> (b - 1)) & 1;
    bool proper = false;
    for (int b = 0; b < nb; ++b)
      if (!left[b]) proper = true;
    if (!proper) continue;
    bool split = true;
    for (const auto& [piv, row] : A.basis.rows()) {
      if (R.monomials()[piv].degree() == 0) continue;  // the constants need not split
      TruncatedRing::Vec proj = R.zero();
      for (int k = 0; k < R.dim(); ++k)
        if (left[R.monomials()[k].branch]) proj[k] = row[k];
      if (!A.basis.contains(proj)) {
        split = false;
        break;
      }
    }
    if (split) return true;
  }
  return false;
}

}  // namespace

bool decomposability_check(const GermSpec& spec, int order) {
  bool a = decomposable_at(spec, order), b = decomposable_at(spec, order + 1);
  if (a != b) throw std::runtime_error("increase N: decomposability of '" + spec.name + "' is not stable");
  return a;
}

bool conductor_equals_ideal(const GermSpec& spec, int order,
                            const std::vector<std::vector<GermTerm>>& ideal_gens) {
  LocalAlgebra A = build_algebra(spec, order);
  const TruncatedRing& R = A.ring;
  ConductorResult c = conductor_at(spec, order);
  Echelon cond;
  for (const auto& g : c.generators) cond.insert(g);
  Echelon ideal;
  for (const auto& gt : ideal_gens) {
    TruncatedRing::Vec g = R.element(gt);
    for (int m = 0; m < R.dim(); ++m) {
      TruncatedRing::Vec mv = R.zero();
      mv[m] = 1;
      ideal.insert(R.mul(g, mv));
    }
  }
  if (cond.dim() != ideal.dim()) return false;
  for (const auto& [p, r] : ideal.rows()) {
    (void)p;
    if (!cond.contains(r)) return false;
  }
  return true;
}

GermSpec table_germ(const std::string& kind, int m) {
  GermSpec s;
  s.name = kind + (m > 0 ? "(" + std::to_string(m) + ")" : "");
  auto reduced = [&](int n) { s.branches.assign(n, BranchKind::Reduced); };
  if (kind == "node") {
    reduced(2);
    s.generators = {{{0, 1, 0, 1}}, {{1, 1, 0, 1}}};
  } else if (kind == "cusp") {
    reduced(1);
    s.generators = {{{0, 2, 0, 1}}, {{0, 3, 0, 1}}};
  } else if (kind == "tacnode") {
    reduced(2);
    s.generators = {{{0, 1, 0, 1}, {1, 1, 0, 1}}, {{1, 2, 0, 1}}};
  } else if (kind == "ramphoid" || (kind == "typeI" && m == 1)) {
    reduced(1);
    s.name = kind == "ramphoid" ? "ramphoid" : s.name;
    s.generators = {{{0, 2, 0, 1}}, {{0, 5, 0, 1}}};
  } else if (kind == "typeI") {
    if (m < 2) throw std::invalid_argument("typeI needs m >= 1");
    reduced(m);
    for (int j = 0; j < m - 1; ++j)
      s.generators.push_back({{j, 1, 0, 1}, {m - 1, 3, 0, 1}});
    s.generators.push_back({{m - 1, 2, 0, 1}});
  } else if (kind == "typeII") {
    if (m < 2) throw std::invalid_argument("typeII needs m >= 2");
    reduced(m);
    s.generators.push_back({{0, 1, 0, 1}, {m - 1, 1, 0, 1}});
    for (int j = 1; j < m - 1; ++j)
      s.generators.push_back({{j, 1, 0, 1}, {m - 1, 2, 0, 1}});
    if (m == 2) s.generators.push_back({{1, 3, 0, 1}});
  } else if (kind == "lines") {
    if (m < 3) throw std::invalid_argument("lines needs m >= 3");
    reduced(m);
    for (int j = 0; j < m - 1; ++j) {
      std::vector<GermTerm> g;
      for (int b = 0; b < m; ++b) {
        long c = 1;
        for (int p = 0; p < j; ++p) c *= (b + 1);
        g.push_back({b, 1, 0, rat(c)});
      }
      s.generators.push_back(std::move(g));
    }
  } else if (kind == "ribbon-tail") {
    if (m < 1) throw std::invalid_argument("ribbon-tail needs k >= 1");
    s.branches.assign(1, BranchKind::Ribbon);
    for (int i = 0; i < m; ++i) s.branches.push_back(BranchKind::Reduced);
    s.generators.push_back({{0, 1, 0, 1}});  // y = s on the ribbon
    for (int i = 0; i < m; ++i)
      s.generators.push_back({{0, 0, 1, 1}, {i + 1, 1, 0, 1}});  // x_i = eps + t_i
  } else if (kind == "ribbon-line") {
    s.branches = {BranchKind::Ribbon, BranchKind::Reduced};
    s.generators = {{{0, 1, 0, 1}}, {{0, 0, 1, 1}}, {{1, 1, 0, 1}}};
  } else if (kind == "two-cusps") {
    reduced(2);
    s.generators = {{{0, 2, 0, 1}}, {{0, 3, 0, 1}}, {{1, 2, 0, 1}}, {{1, 3, 0, 1}}};
  } else {
    throw std::invalid_argument("unknown germ kind: " + kind);
  }
  return s;
}

}  // namespace tvz
