#include "equising/jacobian.hpp"

#include <algorithm>

namespace equising {

unsigned GermPresentation::dim() const {
  if (dimension) return *dimension;
  if (f.size() > ring->arity()) throw AlgebraError("more components than variables; give the dimension");
  return static_cast<unsigned>(ring->arity() - f.size());
}

void GermPresentation::validate() const {
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!f[i].ring()->compatible(*ring)) throw AlgebraError("component in a different ring");
    for (const auto& [m, c] : f[i].terms()) {
      bool pure_y = true;
      for (std::size_t v = 0; v < m.arity(); ++v)
        if (m[v] > 0 && !ring->is_y(v)) pure_y = false;
      if (pure_y) throw AlgebraError("component " + std::to_string(i + 1) + " does not vanish on Y: " + f[i].to_string());
    }
  }
  if (F && !F->ring()->compatible(*ring)) throw AlgebraError("F in a different ring");
}

std::vector<std::string> GermPresentation::assumptions() const {
  std::vector<std::string> out;
  out.push_back(equidimensional ? "equidimensional (asserted)" : "equidimensional (not asserted)");
  if (wa) out.push_back("W_A (asserted)");
  return out;
}

namespace {

PolyVector column(const std::vector<Polynomial>& comps, std::size_t var) {
  PolyVector v;
  v.reserve(comps.size());
  for (const auto& c : comps) v.push_back(partial_derivative(c, var));
  return v;
}

PolyVector directional(const std::vector<Polynomial>& comps, const RingPtr& ring, const std::vector<Rational>& dir,
                       std::size_t offset) {
  PolyVector v = zero_vector(ring, comps.size());
  for (std::size_t i = 0; i < dir.size(); ++i) {
    if (dir[i] == 0) continue;
    PolyVector col = column(comps, offset + i);
    for (std::size_t k = 0; k < v.size(); ++k) v[k] += col[k] * dir[i];
  }
  return v;
}

Polynomial determinant(const std::vector<PolyVector>& m, const RingPtr& ring) {
  const std::size_t n = m.size();
  if (n == 0) return Polynomial::constant(ring, 1);
  if (n == 1) return m[0][0];
  Polynomial det(ring);
  for (std::size_t j = 0; j < n; ++j) {
    if (m[0][j].is_zero()) continue;
    std::vector<PolyVector> minor;
    for (std::size_t i = 1; i < n; ++i) {
      PolyVector row;
      for (std::size_t c = 0; c < n; ++c)
        if (c != j) row.push_back(m[i][c]);
      minor.push_back(std::move(row));
    }
    Polynomial term = m[0][j] * determinant(minor, ring);
    if (j % 2)
      det -= term;
    else
      det += term;
  }
  return det;
}

void combinations(std::size_t n, std::size_t k, std::vector<std::vector<std::size_t>>& out) {
  std::vector<std::size_t> cur;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
}

PolyVector unit_row(const RingPtr& ring, std::size_t size, std::size_t at, const Polynomial& value) {
  PolyVector v = zero_vector(ring, size);
  v[at] = value;
  return v;
}

PolyVector certificate_row(const Polynomial& h, const std::vector<Polynomial>& gens, const IdealSpec& ideal,
                           const std::string& what) {
  const RingPtr& ring = ideal.ring();
  for (std::size_t j = 0; j < gens.size(); ++j)
    if (gens[j] == h) return unit_row(ring, gens.size(), j, Polynomial::constant(ring, 1));
  auto mem = membership(h, ideal, true);
  if (!mem.member) throw AlgebraError(what + ": " + h.to_string());
  return mem.certificate->generator_coefficients;
}

Polynomial dot(const PolyVector& a, const std::vector<Polynomial>& b, const RingPtr& ring) {
  Polynomial s(ring);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

JacobianModules jacobian_modules(const RingPtr& ring, const std::vector<Polynomial>& components,
                                 const std::vector<Polynomial>& relations) {
  const std::size_t p = components.size();
  std::vector<PolyVector> all, z, y, mz;
  for (std::size_t v = 0; v < ring->arity(); ++v) {
    if (!ring->is_y(v) && !ring->is_z(v)) continue;
    PolyVector c = column(components, v);
    all.push_back(c);
    (ring->is_y(v) ? y : z).push_back(c);
  }
  for (std::size_t i = 0; i < ring->z_count(); ++i) {
    const Polynomial zi = Polynomial::variable(ring, ring->z_var(i));
    for (const auto& c : z) {
      PolyVector v;
      for (const auto& e : c) v.push_back(zi * e);
      mz.push_back(std::move(v));
    }
  }
  return {SubmoduleSpec(ring, p, std::move(all), relations), SubmoduleSpec(ring, p, std::move(z), relations),
          SubmoduleSpec(ring, p, std::move(y), relations), SubmoduleSpec(ring, p, std::move(mz), relations)};
}

JacobianModules jacobian_modules(const GermPresentation& germ) {
  return jacobian_modules(germ.ring, germ.f, germ.f);
}

std::vector<PolyVector> y_columns(const RingPtr& ring, const std::vector<Polynomial>& components) {
  std::vector<PolyVector> out;
  for (std::size_t i = 0; i < ring->y_count(); ++i) out.push_back(column(components, ring->y_var(i)));
  return out;
}

bool Hyperplane::contains_Y() const {
  return std::all_of(y_coeffs.begin(), y_coeffs.end(), [](const Rational& a) { return a == 0; });
}

bool Hyperplane::is_zero() const {
  return contains_Y() && std::all_of(z_coeffs.begin(), z_coeffs.end(), [](const Rational& a) { return a == 0; });
}

Polynomial Hyperplane::form(const RingPtr& ring) const {
  if (y_coeffs.size() > ring->y_count() || z_coeffs.size() != ring->z_count())
    throw AlgebraError("hyperplane has " + std::to_string(z_coeffs.size()) + " z-coefficients, ring has " +
                       std::to_string(ring->z_count()));
  Polynomial l(ring);
  for (std::size_t i = 0; i < y_coeffs.size(); ++i)
    l += Polynomial::variable(ring, ring->y_var(i)) * y_coeffs[i];
  for (std::size_t j = 0; j < z_coeffs.size(); ++j)
    l += Polynomial::variable(ring, ring->z_var(j)) * z_coeffs[j];
  return l;
}

std::string Hyperplane::to_string(const RingPtr& ring) const { return form(ring).to_string() + " = 0"; }

std::vector<std::vector<Rational>> kernel_basis(const std::vector<Rational>& coeffs) {
  std::optional<std::size_t> pivot;
  for (std::size_t i = coeffs.size(); i-- > 0;)
    if (coeffs[i] != 0) {
      pivot = i;
      break;
    }
  std::vector<std::vector<Rational>> out;
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    if (pivot && j == *pivot) continue;
    std::vector<Rational> v(coeffs.size(), Rational(0));
    v[j] = 1;
    if (pivot) v[*pivot] = -coeffs[j] / coeffs[*pivot];
    out.push_back(std::move(v));
  }
  return out;
}

SubmoduleSpec hyperplane_restricted(const GermPresentation& germ, const Hyperplane& h) {
  if (h.is_zero()) throw AlgebraError("zero linear form does not define a hyperplane");
  h.form(germ.ring);
  std::vector<Rational> all(germ.k(), Rational(0));
  std::copy(h.y_coeffs.begin(), h.y_coeffs.end(), all.begin());
  all.insert(all.end(), h.z_coeffs.begin(), h.z_coeffs.end());
  std::vector<PolyVector> gens;
  for (const auto& v : kernel_basis(all)) gens.push_back(directional(germ.f, germ.ring, v, 0));
  return SubmoduleSpec(germ.ring, germ.p(), std::move(gens), germ.f);
}

SubmoduleSpec hyperplane_restricted_z(const GermPresentation& germ, const Hyperplane& h) {
  if (!h.contains_Y()) throw AlgebraError("JM_z(f)_H needs a hyperplane containing Y");
  if (h.is_zero()) throw AlgebraError("zero linear form does not define a hyperplane");
  h.form(germ.ring);
  std::vector<PolyVector> gens;
  for (const auto& v : kernel_basis(h.z_coeffs)) gens.push_back(directional(germ.f, germ.ring, v, germ.k()));
  return SubmoduleSpec(germ.ring, germ.p(), std::move(gens), germ.f);
}

GermPresentation specialize_fiber(const GermPresentation& germ, const std::vector<Rational>& y0) {
  if (y0.size() != germ.k())
    throw AlgebraError("fiber point has " + std::to_string(y0.size()) + " coordinates, Y has " +
                       std::to_string(germ.k()));
  std::vector<std::string> z;
  for (std::size_t j = 0; j < germ.n(); ++j) z.push_back(germ.ring->name(germ.ring->z_var(j)));
  std::vector<std::string> aux;
  for (std::size_t a = 0; a < germ.ring->aux_count(); ++a) aux.push_back(germ.ring->name(germ.ring->aux_var(a)));
  RingPtr target = RingContext::make({}, z, aux);
  Substitution sub;
  for (std::size_t i = 0; i < germ.k(); ++i)
    sub.insert_or_assign(germ.ring->y_var(i), Polynomial::constant(target, y0[i]));
  GermPresentation out;
  out.ring = target;
  for (const auto& c : germ.f) out.f.push_back(substitute(c, sub, target));
  if (germ.F) out.F = substitute(*germ.F, sub, target);
  out.equidimensional = germ.equidimensional;
  if (germ.dimension) out.dimension = *germ.dimension - static_cast<unsigned>(germ.k());
  return out;
}

GrassmannModification grassmann_modification(const GermPresentation& germ, std::size_t chart) {
  const RingPtr& src = germ.ring;
  if (chart >= germ.n()) throw AlgebraError("chart index outside the z-block");
  if (germ.n() < 2) throw AlgebraError("the modification needs at least two z variables");
  std::vector<std::string> y, z, a;
  for (std::size_t i = 0; i < germ.k(); ++i) y.push_back(src->name(src->y_var(i)));
  for (std::size_t j = 0; j < germ.n(); ++j)
    if (j != chart) z.push_back(src->name(src->z_var(j)));
  for (std::size_t j = 0; j < germ.n(); ++j) {
    if (j == chart) continue;
    std::string base = "a" + std::to_string(j + 1);
    while (src->index_of(base)) base += "_";
    a.push_back(base);
  }
  RingPtr dst = RingContext::make(y, z, a);

  Polynomial image(dst);
  for (std::size_t i = 0; i < z.size(); ++i)
    image += Polynomial::variable(dst, dst->aux_var(i)) * Polynomial::variable(dst, dst->z_var(i));
  Substitution beta;
  beta.insert_or_assign(src->z_var(chart), image);
  auto pull = [&](const Polynomial& p) { return substitute(p, beta, dst); };

  GrassmannModification out;
  out.chart = chart;
  out.a_names = a;
  out.G.ring = dst;
  for (const auto& c : germ.f) out.G.f.push_back(pull(c));
  if (germ.F) out.G.F = pull(*germ.F);
  out.G.equidimensional = germ.equidimensional;
  if (germ.dimension) out.G.dimension = *germ.dimension + static_cast<unsigned>(a.size());

  std::vector<Polynomial> dfc;
  for (const auto& c : germ.f) dfc.push_back(pull(partial_derivative(c, src->z_var(chart))));
  bool ok_a = true, ok_y = true, ok_z = true;
  for (std::size_t k = 0; k < germ.p(); ++k) {
    const Polynomial& g = out.G.f[k];
    for (std::size_t i = 0; i < a.size(); ++i)
      ok_a &= partial_derivative(g, dst->aux_var(i)) == Polynomial::variable(dst, dst->z_var(i)) * dfc[k];
    for (std::size_t i = 0; i < germ.k(); ++i)
      ok_y &= partial_derivative(g, dst->y_var(i)) == pull(partial_derivative(germ.f[k], src->y_var(i)));
    for (std::size_t i = 0, j = 0; j < germ.n(); ++j) {
      if (j == chart) continue;
      ok_z &= partial_derivative(g, dst->z_var(i)) ==
              pull(partial_derivative(germ.f[k], src->z_var(j))) + Polynomial::variable(dst, dst->aux_var(i)) * dfc[k];
      ++i;
    }
  }
  out.identities = {{"dG/da_i = z_i * (df/dz_c o beta)", ok_a},
                    {"dG/dy_i = df/dy_i o beta", ok_y},
                    {"dG/dz_j = df/dz_j o beta + a_j * (df/dz_c o beta)", ok_z}};
  for (const auto& id : out.identities)
    if (!id.holds) throw AlgebraError("chain-rule identity fails: " + id.identity);
  return out;
}

std::vector<Polynomial> minors(const std::vector<PolyVector>& rows, std::size_t size, const RingPtr& ring) {
  std::vector<Polynomial> out;
  if (rows.empty() || size == 0 || size > rows.size() || size > rows[0].size()) return out;
  std::vector<std::vector<std::size_t>> rs, cs;
  combinations(rows.size(), size, rs);
  combinations(rows[0].size(), size, cs);
  for (const auto& ri : rs)
    for (const auto& ci : cs) {
      std::vector<PolyVector> m;
      for (std::size_t r : ri) {
        PolyVector row;
        for (std::size_t c : ci) row.push_back(rows[r][c]);
        m.push_back(std::move(row));
      }
      Polynomial det = determinant(m, ring);
      if (!det.is_zero() && std::find(out.begin(), out.end(), det) == out.end()) out.push_back(std::move(det));
    }
  return out;
}

std::vector<Polynomial> jacobian_singular_ideal(const GermPresentation& germ) {
  const RingPtr& ring = germ.ring;
  const std::size_t c = ring->arity() - germ.dim();
  std::vector<Polynomial> out = germ.f;
  std::vector<PolyVector> df;
  for (const auto& f : germ.f) {
    PolyVector row;
    for (std::size_t v = 0; v < ring->arity(); ++v) row.push_back(partial_derivative(f, v));
    df.push_back(std::move(row));
  }
  for (auto& m : minors(df, c, ring))
    if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(std::move(m));
  return out;
}

WitnessMatrices structure_witnesses(const GermPresentation& f_germ, const GermPresentation& g_germ,
                                    const WitnessOptions& options) {
  const RingPtr& ring = f_germ.ring;
  if (!g_germ.ring->compatible(*ring)) throw AlgebraError("J and I live in different rings");
  IdealSpec J(ring, f_germ.f);
  IdealSpec I(ring, g_germ.f);
  WitnessMatrices out;
  for (const auto& g : g_germ.f) out.H0.push_back(certificate_row(g, f_germ.f, J, "generator of I outside J"));
  for (const auto& f : f_germ.f)
    if (!radical_membership(f, I).member) throw AlgebraError("V(I) differs from V(J): " + f.to_string());

  out.K = options.K ? *options.K : jacobian_singular_ideal(f_germ);
  IdealSpec K(ring, out.K);
  bool found = false;
  for (unsigned r = 0; r <= options.r_cap; ++r) {
    if (contains(I, ideal_product(ideal_power(K, r), J))) {
      out.r = r;
      found = true;
      break;
    }
  }
  if (!found) throw AlgebraError("no r <= " + std::to_string(options.r_cap) + " with K^r J inside I");

  for (const auto& k : out.K) {
    const Polynomial kr = k.pow(out.r);
    for (std::size_t t = 0; t < f_germ.p(); ++t) {
      out.H2.push_back(unit_row(ring, f_germ.p(), t, kr));
      out.H1.push_back(certificate_row(kr * f_germ.f[t], g_germ.f, I, "K^r J not inside I"));
    }
  }
  for (std::size_t i = 0; i < out.H0.size(); ++i)
    if (!(dot(out.H0[i], f_germ.f, ring) == g_germ.f[i])) throw AlgebraError("H0 certificate does not replay");
  for (std::size_t i = 0; i < out.H1.size(); ++i)
    if (!(dot(out.H1[i], g_germ.f, ring) == dot(out.H2[i], f_germ.f, ring)))
      throw AlgebraError("H1 g != H2 f");
  return out;
}

}  // namespace equising
