#include "equising/curves.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "equising/parse.hpp"

namespace equising {

namespace {

std::size_t sat_add(std::size_t a, std::size_t b) {
  if (a == Series::kExact || b == Series::kExact) return Series::kExact;
  return a + b;
}

}  // namespace

// ---------------------------------------------------------------- Series

Series::Series(std::vector<Rational> coeffs, std::size_t precision) : coeffs_(std::move(coeffs)), prec_(precision) {
  trim();
}

void Series::trim() {
  if (prec_ != kExact && coeffs_.size() > prec_) coeffs_.resize(prec_);
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Series Series::monomial(const Rational& c, std::size_t power, std::size_t precision) {
  std::vector<Rational> v(power + 1);
  v[power] = c;
  return Series(std::move(v), precision);
}

Series Series::from_polynomial(const Polynomial& p, std::size_t precision) {
  if (p.ring()->arity() != 1) throw AlgebraError("series from a polynomial in more than one variable");
  std::vector<Rational> v(static_cast<std::size_t>(std::max(p.total_degree(), 0L)) + 1);
  for (const auto& [m, c] : p.terms()) v[m[0]] = c;
  return Series(std::move(v), precision);
}

Rational Series::coefficient(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rational(0); }

std::optional<std::size_t> Series::valuation() const {
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) return i;
  return std::nullopt;
}

std::size_t Series::order_bound() const {
  if (auto v = valuation()) return *v;
  return prec_;
}

Series Series::operator-() const { return scaled(-1); }

Series Series::scaled(const Rational& c) const {
  Series out = *this;
  for (auto& x : out.coeffs_) x *= c;
  out.trim();
  return out;
}

Series operator+(const Series& a, const Series& b) {
  const std::size_t prec = std::min(a.prec_, b.prec_);
  std::vector<Rational> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) v[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) v[i] += b.coeffs_[i];
  return Series(std::move(v), prec);
}

Series operator-(const Series& a, const Series& b) { return a + (-b); }

Series operator*(const Series& a, const Series& b) {
  if ((a.known_zero() && a.exact()) || (b.known_zero() && b.exact())) return Series();
  const std::size_t prec = std::min(sat_add(a.prec_, b.order_bound()), sat_add(b.prec_, a.order_bound()));
  std::size_t len = a.coeffs_.size() + b.coeffs_.size();
  if (len > 0) --len;
  if (prec != Series::kExact) len = std::min(len, prec);
  std::vector<Rational> v(len);
  for (std::size_t i = 0; i < a.coeffs_.size() && i < len; ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size() && i + j < len; ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return Series(std::move(v), prec);
}

Series Series::shift_up(std::size_t k) const {
  std::vector<Rational> v(k);
  v.insert(v.end(), coeffs_.begin(), coeffs_.end());
  return Series(std::move(v), sat_add(prec_, k));
}

Series Series::shift_down(std::size_t k) const {
  if (order_bound() < k) throw AlgebraError("series shift below its order");
  std::vector<Rational> v;
  if (coeffs_.size() > k) v.assign(coeffs_.begin() + static_cast<long>(k), coeffs_.end());
  return Series(std::move(v), prec_ == kExact ? kExact : prec_ - k);
}

Series Series::truncated(std::size_t precision) const { return Series(coeffs_, std::min(prec_, precision)); }

Series Series::inverse(std::size_t precision) const {
  if (coefficient(0) == 0) throw AlgebraError("inverse of a non-unit series");
  const std::size_t prec = std::min(prec_, precision);
  if (prec == kExact) throw AlgebraError("inverse needs a finite precision");
  std::vector<Rational> v(prec);
  const Rational inv = 1 / coeffs_[0];
  for (std::size_t n = 0; n < prec; ++n) {
    Rational s = n == 0 ? Rational(1) : Rational(0);
    for (std::size_t i = 1; i <= n && i < coeffs_.size(); ++i) s -= coeffs_[i] * v[n - i];
    v[n] = s * inv;
  }
  return Series(std::move(v), prec);
}

std::string Series::to_string(const std::string& var) const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const Rational& c = coeffs_[i];
    if (c == 0) continue;
    Rational mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0) {
      os << equising::to_string(mag);
      continue;
    }
    if (mag != 1) os << equising::to_string(mag) << "*";
    os << var;
    if (i > 1) os << "^" << i;
  }
  if (first && exact()) os << "0";
  if (!exact()) {
    if (!first) os << " + ";
    os << "O(" << var << "^" << prec_ << ")";
  }
  return os.str();
}

// ---------------------------------------------------------------- curves

struct NewtonData {
  std::vector<Polynomial> relations;
  // Perturbed seed, exact polynomial components.
  std::vector<Series> start;
  std::vector<std::size_t> solve_vars;
  std::size_t nu = 0;
  std::string origin;
};

bool CurveGerm::exact() const {
  return std::all_of(components.begin(), components.end(), [](const Series& s) { return s.exact(); });
}

std::size_t CurveGerm::precision() const {
  std::size_t p = Series::kExact;
  for (const auto& s : components) p = std::min(p, s.precision());
  return p;
}

std::string CurveGerm::to_string() const {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < components.size(); ++i) {
    if (i) os << ", ";
    os << Series(components[i].coefficients(), Series::kExact).to_string();
  }
  os << ")";
  if (!exact()) os << " + O(t^" << precision() << ")";
  return os.str();
}

void validate_curve(const CurveGerm& curve) {
  if (!curve.ring || curve.components.size() != curve.ring->arity())
    throw CurveError("curve arity does not match the ring");
  bool nonzero = false;
  for (const auto& s : curve.components) {
    if (s.coefficient(0) != 0) throw CurveError("curve does not pass through the origin");
    nonzero = nonzero || !s.known_zero();
  }
  if (!nonzero) throw CurveError("curve is identically zero");
}

Series pullback(const CurveGerm& curve, const Polynomial& p) {
  if (p.ring()->arity() != curve.components.size()) throw AlgebraError("pullback arity mismatch");
  const std::size_t prec = curve.precision();
  std::vector<std::vector<Series>> powers(curve.components.size());
  auto power = [&](std::size_t v, std::uint32_t e) -> const Series& {
    auto& cache = powers[v];
    if (cache.empty()) cache.push_back(Series::monomial(1, 0, prec));
    while (cache.size() <= e) cache.push_back(cache.back() * curve.components[v]);
    return cache[e];
  };
  Series out(std::vector<Rational>{}, prec);
  for (const auto& [m, c] : p.terms()) {
    Series t = Series::monomial(c, 0, prec);
    for (std::size_t v = 0; v < m.arity(); ++v)
      if (m[v]) t = t * power(v, m[v]);
    out = out + t;
  }
  return out;
}

std::vector<Series> pullback(const CurveGerm& curve, const PolyVector& v) {
  std::vector<Series> out;
  for (const auto& p : v) out.push_back(pullback(curve, p));
  return out;
}

DVRModule pullback(const CurveGerm& curve, const SubmoduleSpec& module) {
  for (const auto& r : module.relations()) {
    Series s = pullback(curve, r);
    if (!s.known_zero()) {
      std::ostringstream os;
      os << "curve not on variety: relation " << r.to_string() << " pulls back to order " << *s.valuation();
      throw CurveError(os.str());
    }
  }
  DVRModule out;
  out.rank = module.rank();
  for (const auto& g : module.generators()) out.columns.push_back(pullback(curve, g));
  return out;
}

// ---------------------------------------------------------------- membership

DVRMembership dvr_membership(const std::vector<Series>& v_in, const DVRModule& module, bool strict) {
  if (v_in.size() != module.rank) throw AlgebraError("rank mismatch in series membership");
  DVRMembership out;
  const std::size_t p = module.rank;
  std::vector<std::vector<Series>> cols = module.columns;
  if (strict)
    for (auto& c : cols)
      for (auto& s : c) s = s.shift_up(1);
  std::vector<Series> v = v_in;
  std::size_t min_prec = Series::kExact;
  for (const auto& s : v) min_prec = std::min(min_prec, s.precision());
  for (const auto& c : cols)
    for (const auto& s : c) min_prec = std::min(min_prec, s.precision());

  std::vector<bool> row_free(p, true);
  std::vector<bool> col_free(cols.size(), true);
  struct Pivot {
    std::size_t row, col, nu;
  };
  std::vector<Pivot> pivots;
  for (;;) {
    std::optional<Pivot> best;
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (!col_free[j]) continue;
      for (std::size_t i = 0; i < p; ++i) {
        if (!row_free[i]) continue;
        auto val = cols[j][i].valuation();
        if (!val) continue;
        if (!best || *val < best->nu) best = Pivot{i, j, *val};
      }
    }
    if (!best) break;
    const Pivot pv = *best;
    const Series unit = cols[pv.col][pv.row].shift_down(pv.nu);
    for (std::size_t k = 0; k < cols.size(); ++k) {
      if (!col_free[k] || k == pv.col) continue;
      const Series& a = cols[k][pv.row];
      if (a.known_zero() && a.exact()) continue;
      if (a.order_bound() < pv.nu) return out;  // insufficient precision
      const Series w = a.shift_down(pv.nu);
      for (std::size_t i = 0; i < p; ++i) cols[k][i] = unit * cols[k][i] - w * cols[pv.col][i];
    }
    row_free[pv.row] = false;
    col_free[pv.col] = false;
    pivots.push_back(pv);
    out.pivots.push_back({pv.row, pv.nu});
  }
  std::size_t max_nu = 0;
  for (const auto& pv : pivots) max_nu = std::max(max_nu, pv.nu);
  if (min_prec != Series::kExact && min_prec <= 2 * max_nu) return out;

  for (const auto& pv : pivots) {
    const Series& x = v[pv.row];
    auto val = x.valuation();
    if (val && *val < pv.nu) {
      out.outcome = DVROutcome::NonMember;
      out.row = pv.row;
      out.element_order = static_cast<long>(*val);
      out.module_order = static_cast<long>(pv.nu);
      return out;
    }
    if (!val && !x.exact() && x.precision() < pv.nu) return out;
    if (x.known_zero() && x.exact()) continue;
    const Series unit = cols[pv.col][pv.row].shift_down(pv.nu);
    const Series w = x.shift_down(pv.nu);
    for (std::size_t i = 0; i < p; ++i) v[i] = unit * v[i] - w * cols[pv.col][i];
  }
  for (std::size_t i = 0; i < p; ++i) {
    if (!row_free[i]) continue;
    auto val = v[i].valuation();
    if (!val) continue;
    // Remaining free columns vanish in this row to their known precision.
    std::size_t bound = Series::kExact;
    for (std::size_t j = 0; j < cols.size(); ++j)
      if (col_free[j]) bound = std::min(bound, cols[j][i].precision());
    if (*val >= bound) return out;
    out.outcome = DVROutcome::NonMember;
    out.row = i;
    out.element_order = static_cast<long>(*val);
    out.module_order = bound == Series::kExact ? -1 : static_cast<long>(bound);
    return out;
  }
  out.outcome = DVROutcome::Member;
  return out;
}

// ---------------------------------------------------------------- Newton lifts

namespace {

Series det(const std::vector<std::vector<Series>>& a) {
  const std::size_t n = a.size();
  if (n == 0) return Series::monomial(1, 0);
  if (n == 1) return a[0][0];
  Series out(std::vector<Rational>{}, Series::kExact);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::vector<Series>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<Series> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(a[i][k]);
      minor.push_back(std::move(row));
    }
    Series term = a[0][j] * det(minor);
    out = (j % 2 == 0) ? out + term : out - term;
  }
  return out;
}

// adj[i][j] = (-1)^(i+j) det(a without row j and column i).
std::vector<std::vector<Series>> adjugate(const std::vector<std::vector<Series>>& a) {
  const std::size_t n = a.size();
  std::vector<std::vector<Series>> adj(n, std::vector<Series>(n));
  if (n == 1) {
    adj[0][0] = Series::monomial(1, 0);
    return adj;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<std::vector<Series>> minor;
      for (std::size_t r = 0; r < n; ++r) {
        if (r == j) continue;
        std::vector<Series> row;
        for (std::size_t c = 0; c < n; ++c)
          if (c != i) row.push_back(a[r][c]);
        minor.push_back(std::move(row));
      }
      Series d = det(minor);
      adj[i][j] = ((i + j) % 2 == 0) ? d : -d;
    }
  }
  return adj;
}

std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
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
  return out;
}

CurveGerm with_components(const RingPtr& ring, std::vector<Series> comps, std::string origin) {
  CurveGerm c;
  c.ring = ring;
  c.components = std::move(comps);
  c.origin = std::move(origin);
  return c;
}

std::vector<std::vector<Series>> jacobian_at(const CurveGerm& curve, const std::vector<Polynomial>& rels,
                                             const std::vector<std::size_t>& vars) {
  std::vector<std::vector<Series>> a;
  for (const auto& f : rels) {
    std::vector<Series> row;
    for (std::size_t v : vars) row.push_back(pullback(curve, partial_derivative(f, v)));
    a.push_back(std::move(row));
  }
  return a;
}

std::optional<CurveGerm> newton_lift(const RingPtr& ring, const std::shared_ptr<const NewtonData>& data,
                                     std::size_t precision) {
  const std::size_t nu = data->nu;
  const std::size_t target = precision + nu;
  const std::size_t work = precision + 2 * nu + 2;
  std::vector<Series> phi = data->start;
  for (int iter = 0; iter < 64; ++iter) {
    CurveGerm cur = with_components(ring, phi, data->origin);
    for (auto& s : cur.components) s = s.truncated(work);
    std::vector<Series> f;
    bool done = true;
    std::size_t ord = Series::kExact;
    for (const auto& r : data->relations) {
      f.push_back(pullback(cur, r));
      const std::size_t o = f.back().order_bound();
      ord = std::min(ord, o);
      if (o < target) done = false;
    }
    if (done) {
      CurveGerm out = with_components(ring, phi, data->origin);
      for (auto& s : out.components) s = s.truncated(precision);
      out.newton = data;
      return out;
    }
    if (ord <= 2 * nu) return std::nullopt;
    auto a = jacobian_at(cur, data->relations, data->solve_vars);
    Series d = det(a);
    auto dv = d.valuation();
    if (!dv || *dv != nu) return std::nullopt;
    const Series unit_inv = d.shift_down(nu).inverse(work);
    auto adj = adjugate(a);
    for (std::size_t i = 0; i < data->solve_vars.size(); ++i) {
      Series acc(std::vector<Rational>{}, work);
      for (std::size_t j = 0; j < f.size(); ++j) acc = acc + adj[i][j] * f[j];
      Series delta = -(acc.shift_down(nu) * unit_inv);
      std::size_t v = data->solve_vars[i];
      phi[v] = phi[v] + Series(delta.coefficients(), Series::kExact);
    }
  }
  return std::nullopt;
}

std::optional<std::shared_ptr<const NewtonData>> newton_setup(const CurveGerm& seed,
                                                              const std::vector<Polynomial>& rels,
                                                              std::mt19937_64& rng) {
  const std::size_t n = seed.components.size();
  const std::size_t c = rels.size();
  if (c == 0 || c > n) return std::nullopt;
  std::optional<std::size_t> best_nu;
  std::vector<std::size_t> best_vars;
  for (const auto& vars : subsets(n, c)) {
    auto v = det(jacobian_at(seed, rels, vars)).valuation();
    if (v && (!best_nu || *v < *best_nu)) {
      best_nu = v;
      best_vars = vars;
    }
  }
  if (!best_nu) return std::nullopt;
  auto data = std::make_shared<NewtonData>();
  data->relations = rels;
  data->solve_vars = best_vars;
  data->nu = *best_nu;
  std::uniform_int_distribution<int> coef(-3, 3);
  const std::size_t start = 2 * data->nu + 1;
  std::ostringstream origin;
  origin << "lift of " << seed.to_string() << " perturbed at t^" << start << " by (";
  data->start = seed.components;
  for (std::size_t v = 0; v < n; ++v) {
    const int r = coef(rng);
    origin << (v ? ", " : "") << r;
    data->start[v] = data->start[v] + Series::monomial(r, start);
  }
  origin << ")";
  data->origin = origin.str();
  return data;
}

bool on_variety(const CurveGerm& c, const std::vector<Polynomial>& rels) {
  return std::all_of(rels.begin(), rels.end(), [&](const Polynomial& r) { return pullback(c, r).known_zero(); });
}

Series compose(const Series& s, const Series& q) {
  Series out;
  Series power = Series::monomial(1, 0);
  for (std::size_t i = 0; i < s.coefficients().size(); ++i) {
    if (i) power = power * q;
    if (s.coefficients()[i] != 0) out = out + power.scaled(s.coefficients()[i]);
  }
  return out;
}

bool all_homogeneous(const std::vector<Polynomial>& rels) {
  for (const auto& r : rels) {
    long d = -1;
    for (const auto& [m, c] : r.terms()) {
      if (d < 0) d = static_cast<long>(m.degree());
      if (static_cast<long>(m.degree()) != d) return false;
    }
  }
  return true;
}

}  // namespace

CurveGerm refine(const CurveGerm& curve, std::size_t precision) {
  if (!curve.newton) return curve;
  auto lifted = newton_lift(curve.ring, curve.newton, precision);
  if (!lifted) throw CurveError("lift could not be recomputed");
  return *lifted;
}

std::vector<CurveGerm> generate_probes(const RingPtr& ring, const std::vector<Polynomial>& relations,
                                       const std::vector<CurveGerm>& user, const ProbeOptions& options) {
  std::vector<CurveGerm> out;
  for (const auto& c : user) {
    validate_curve(c);
    if (!on_variety(c, relations)) throw CurveError("user curve " + c.to_string() + " is not on the variety");
    out.push_back(c);
  }
  const std::size_t n = ring->arity();
  const std::size_t budget = options.probe_count;
  std::mt19937_64 rng(options.seed);

  // Monomial curves, by increasing largest exponent.
  std::vector<CurveGerm> monomial;
  const std::size_t monomial_cap = budget;
  for (unsigned e = 1; e <= options.exponent_bound && monomial.size() < monomial_cap; ++e) {
    const std::size_t choices = 2 * e + 1;
    std::vector<std::size_t> idx(n, 0);
    for (;;) {
      bool top = false;
      std::vector<Series> comps;
      for (std::size_t v = 0; v < n; ++v) {
        if (idx[v] == 0) {
          comps.emplace_back();
          continue;
        }
        const unsigned a = static_cast<unsigned>((idx[v] + 1) / 2);
        const int sign = idx[v] % 2 == 1 ? 1 : -1;
        top = top || a == e;
        comps.push_back(Series::monomial(sign, a));
      }
      if (top) {
        CurveGerm c = with_components(ring, std::move(comps), "monomial");
        if (on_variety(c, relations)) monomial.push_back(std::move(c));
        if (monomial.size() >= monomial_cap) break;
      }
      std::size_t v = 0;
      while (v < n && ++idx[v] == choices) idx[v++] = 0;
      if (v == n) break;
    }
  }

  // Lifted curves from exact seeds.
  std::vector<CurveGerm> lifted;
  const std::size_t lift_cap = budget / 4;
  if (!relations.empty()) {
    for (const auto& seed : monomial) {
      if (lifted.size() >= lift_cap) break;
      for (unsigned k = 0; k < options.lifts_per_seed && lifted.size() < lift_cap; ++k) {
        auto data = newton_setup(seed, relations, rng);
        if (!data) break;
        if (auto c = newton_lift(ring, *data, options.precision)) lifted.push_back(std::move(*c));
      }
    }
  }

  // Reparametrizations of exact seeds.
  std::vector<CurveGerm> reparam;
  const std::size_t reparam_cap = budget / 8;
  const std::vector<std::pair<Series, std::string>> maps{
      {Series(std::vector<Rational>{0, 1, 1}, Series::kExact), "t + t^2"},
      {Series(std::vector<Rational>{0, 0, 1, 1}, Series::kExact), "t^2 + t^3"}};
  for (const auto& seed : monomial) {
    for (const auto& [q, name] : maps) {
      if (reparam.size() >= reparam_cap) break;
      std::vector<Series> comps;
      for (const auto& s : seed.components) comps.push_back(compose(s, q));
      reparam.push_back(with_components(ring, std::move(comps), "reparametrization t -> " + name));
    }
  }

  // Lines through rational points of a cone.
  std::vector<CurveGerm> lines;
  if (!relations.empty() && all_homogeneous(relations)) {
    const std::size_t line_cap = budget / 8;
    std::vector<std::vector<Rational>> points;
    for (const auto& c : monomial) {
      bool linear = true;
      std::vector<Rational> p;
      for (const auto& s : c.components) {
        if (!s.known_zero() && s.valuation() != std::size_t{1}) linear = false;
        p.push_back(s.coefficient(1));
      }
      if (linear) points.push_back(std::move(p));
    }
    std::uniform_int_distribution<int> dir(-4, 4);
    const RingPtr sring = RingContext::plain({"s"});
    for (std::size_t attempt = 0; attempt < 8 * line_cap && lines.size() < line_cap && !points.empty(); ++attempt) {
      const auto& u = points[attempt % points.size()];
      std::vector<Rational> w(n);
      for (auto& x : w) x = dir(rng);
      Substitution sub;
      for (std::size_t v = 0; v < n; ++v)
        sub.insert_or_assign(v, Polynomial::constant(sring, u[v]) +
                                    Polynomial::constant(sring, w[v]) * Polynomial::variable(sring, 0));
      auto restricted = substitute(relations.front(), sub, sring);
      std::vector<Rational> coeffs(static_cast<std::size_t>(std::max(restricted.total_degree(), 0L)) + 1);
      for (const auto& [m, c] : restricted.terms()) coeffs[m[0]] = c;
      for (const auto& s : rational_roots(coeffs)) {
        if (s == 0) continue;
        std::vector<Series> comps;
        bool nonzero = false;
        for (std::size_t v = 0; v < n; ++v) {
          Rational x = u[v] + s * w[v];
          nonzero = nonzero || x != 0;
          comps.push_back(Series::monomial(x, 1));
        }
        if (!nonzero) continue;
        CurveGerm c = with_components(ring, std::move(comps), "line through a rational point");
        if (on_variety(c, relations) && lines.size() < line_cap) lines.push_back(std::move(c));
      }
    }
  }

  const std::size_t total = budget;
  std::size_t taken_mono = 0;
  auto take = [&](std::vector<CurveGerm>& from, std::size_t cap, std::size_t& taken) {
    while (taken < from.size() && taken < cap && out.size() < user.size() + total) out.push_back(from[taken++]);
  };
  std::size_t t_lift = 0, t_rep = 0, t_line = 0;
  take(monomial, budget / 2, taken_mono);
  take(lifted, lifted.size(), t_lift);
  take(reparam, reparam.size(), t_rep);
  take(lines, lines.size(), t_line);
  take(monomial, monomial.size(), taken_mono);
  return out;
}

bool on_smooth_part(const CurveGerm& curve, const std::vector<Polynomial>& relations, std::size_t codimension) {
  if (!curve.exact()) return false;
  for (const Rational& t0 : {Rational(1, 3), Rational(2, 7)}) {
    std::vector<Rational> point;
    for (const auto& s : curve.components) {
      Rational acc = 0;
      for (std::size_t i = s.coefficients().size(); i-- > 0;) acc = acc * t0 + s.coefficients()[i];
      point.push_back(acc);
    }
    std::vector<std::vector<Rational>> m;
    for (const auto& f : relations) {
      std::vector<Rational> row;
      for (std::size_t v = 0; v < point.size(); ++v) row.push_back(partial_derivative(f, v).evaluate(point));
      m.push_back(std::move(row));
    }
    std::size_t rank = 0;
    const std::size_t cols = point.size();
    for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
      std::size_t piv = rank;
      while (piv < m.size() && m[piv][c] == 0) ++piv;
      if (piv == m.size()) continue;
      std::swap(m[piv], m[rank]);
      for (std::size_t r = 0; r < m.size(); ++r) {
        if (r == rank || m[r][c] == 0) continue;
        const Rational f = m[r][c] / m[rank][c];
        for (std::size_t k = c; k < cols; ++k) m[r][k] -= f * m[rank][k];
      }
      ++rank;
    }
    if (rank != codimension) return false;
  }
  return true;
}

DVRMembership curve_membership(const PolyVector& h, const SubmoduleSpec& module, CurveGerm& curve, bool strict,
                               std::size_t max_precision) {
  for (;;) {
    DVRModule m = pullback(curve, module);
    DVRMembership res = dvr_membership(pullback(curve, h), m, strict);
    if (res.outcome != DVROutcome::InsufficientPrecision || curve.exact() || !curve.newton) return res;
    const std::size_t next = 2 * curve.precision();
    if (next > max_precision) return res;
    curve = refine(curve, next);
  }
}

Verdict icl_refute(const PolyVector& h, const SubmoduleSpec& module, const std::vector<CurveGerm>& probes,
                   const ProbeOptions& options, bool strict) {
  Verdict v;
  v.claim = strict ? "strict dependence along probe curves" : "integral dependence along probe curves";
  std::size_t undecided = 0;
  for (std::size_t i = 0; i < probes.size(); ++i) {
    CurveGerm c = probes[i];
    DVRMembership res = curve_membership(h, module, c, strict, options.max_precision);
    if (res.outcome == DVROutcome::InsufficientPrecision) {
      ++undecided;
      continue;
    }
    if (res.outcome == DVROutcome::NonMember) {
      v.status = Status::Refuted;
      v.probe_count = i + 1;
      v.curve_witness = CurveWitness{i, c.to_string(), res.element_order, res.module_order, strict};
      v.step("curve criterion", strict ? "strict dependence along arcs" : "integral dependence along arcs",
             {{"probe", i}, {"curve", c.to_string()}, {"origin", c.origin}, {"row", res.row},
              {"element_order", res.element_order}, {"module_order", res.module_order}});
      return v;
    }
  }
  v.status = Status::NotRefuted;
  v.probe_count = probes.size();
  v.step("curve criterion", strict ? "strict dependence along arcs" : "integral dependence along arcs",
         {{"probes", probes.size()}, {"undecided", undecided}});
  return v;
}

SecantResult limiting_Y_secant(const CurveGerm& curve) {
  const RingPtr& ring = curve.ring;
  std::optional<std::size_t> order;
  for (std::size_t j = 0; j < ring->z_count(); ++j) {
    auto v = curve.components[ring->z_var(j)].valuation();
    if (v && (!order || *v < *order)) order = v;
  }
  if (!order) throw CurveError("curve inside Y: the z-block vanishes identically");
  SecantResult out;
  out.order = *order;
  for (std::size_t j = 0; j < ring->z_count(); ++j) out.direction.push_back(curve.components[ring->z_var(j)].coefficient(*order));
  Rational lead = 0;
  for (const auto& x : out.direction)
    if (lead == 0) lead = x;
  for (auto& x : out.direction) x /= lead;
  return out;
}

bool secant_in_hyperplane(const SecantResult& secant, const std::vector<Rational>& a) {
  if (a.size() != secant.direction.size()) throw AlgebraError("hyperplane arity mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * secant.direction[i];
  return s == 0;
}

CurveGerm parse_curve(const std::string& text, const RingPtr& ring, std::size_t first_line) {
  const RingPtr tring = RingContext::plain({"t"});
  CurveGerm c;
  c.ring = ring;
  c.components.assign(ring->arity(), Series());
  c.origin = "user";
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = first_line - 1;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(lineno, 1, "expected `var = <series>`");
    std::string name = line.substr(0, eq);
    name.erase(0, name.find_first_not_of(" \t"));
    name.erase(name.find_last_not_of(" \t") + 1);
    auto idx = ring->index_of(name);
    if (!idx) throw ParseError(lineno, 1, "unknown variable `" + name + "`");
    c.components[*idx] = Series::from_polynomial(parse_polynomial(line.substr(eq + 1), tring, lineno, eq + 2));
  }
  validate_curve(c);
  return c;
}

}  // namespace equising
