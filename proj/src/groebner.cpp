#include "equising/groebner.hpp"

#include <algorithm>
#include <mutex>

namespace equising {

using kernel::Vec;

namespace {

struct KernelBasis {
  Basis basis;
  std::vector<Vec> polys;
  std::vector<Vec> cofs;
};

KernelBasis compute_basis(const RingPtr& ring, std::size_t rank, const std::vector<PolyVector>& inputs,
                          const MonomialOrder& order, bool track) {
  std::vector<Vec> vecs;
  vecs.reserve(inputs.size());
  for (const auto& v : inputs) vecs.push_back(kernel::from_vector(v, order));
  kernel::BuchbergerConfig cfg;
  cfg.order = order;
  cfg.track = track;
  cfg.product_criterion = rank == 1;
  auto elems = kernel::buchberger(vecs, cfg);
  KernelBasis kb;
  kb.basis.ring = ring;
  kb.basis.rank = rank;
  kb.basis.order = order;
  for (auto& e : elems) {
    kb.basis.elements.push_back(kernel::to_vector(e.poly, ring, rank));
    if (track) kb.basis.cofactors.push_back(kernel::to_vector(e.cofactor, ring, inputs.size()));
    kb.polys.push_back(std::move(e.poly));
    kb.cofs.push_back(std::move(e.cofactor));
  }
  return kb;
}

std::vector<PolyVector> as_vectors(const std::vector<Polynomial>& ps) {
  std::vector<PolyVector> out;
  out.reserve(ps.size());
  for (const auto& p : ps) out.push_back(PolyVector{p});
  return out;
}

}  // namespace

bool Basis::is_unit_ideal() const {
  for (const auto& e : elements)
    for (const auto& p : e)
      if (!p.is_zero() && p.is_constant()) return true;
  return false;
}

std::vector<std::string> Basis::to_strings() const {
  std::vector<std::string> out;
  for (const auto& e : elements) out.push_back(rank == 1 ? e[0].to_string() : to_string(e));
  return out;
}

// ---------------------------------------------------------------- IdealSpec

struct IdealSpec::Cache {
  std::mutex mutex;
  std::optional<Basis> basis;
};

IdealSpec::IdealSpec(RingPtr ring, std::vector<Polynomial> generators)
    : ring_(std::move(ring)), cache_(std::make_shared<Cache>()) {
  for (auto& g : generators) {
    if (!g.ring()->compatible(*ring_)) throw AlgebraError("ideal generator lives in a different ring");
    if (!g.is_zero()) gens_.push_back(std::move(g));
  }
}

const Basis& IdealSpec::basis() const {
  std::lock_guard lock(cache_->mutex);
  if (!cache_->basis) cache_->basis = groebner_basis(*this);
  return *cache_->basis;
}

// ---------------------------------------------------------------- SubmoduleSpec

SubmoduleSpec::SubmoduleSpec(RingPtr ring, std::size_t rank, std::vector<PolyVector> generators,
                             std::vector<Polynomial> relations)
    : ring_(std::move(ring)), rank_(rank) {
  if (rank_ == 0) throw AlgebraError("submodule of a rank-zero free module");
  for (auto& g : generators) {
    if (g.size() != rank_) throw AlgebraError("generator length does not match module rank");
    for (const auto& p : g)
      if (!p.ring()->compatible(*ring_)) throw AlgebraError("generator entry lives in a different ring");
    if (!is_zero(g)) gens_.push_back(std::move(g));
  }
  for (auto& r : relations) {
    if (!r.ring()->compatible(*ring_)) throw AlgebraError("relation lives in a different ring");
    if (!r.is_zero()) relations_.push_back(std::move(r));
  }
}

SubmoduleSpec SubmoduleSpec::from_ideal(const IdealSpec& ideal, std::vector<Polynomial> relations) {
  return SubmoduleSpec(ideal.ring(), 1, as_vectors(ideal.generators()), std::move(relations));
}

std::vector<PolyVector> SubmoduleSpec::presentation() const {
  std::vector<PolyVector> out = gens_;
  for (const auto& r : relations_) {
    for (std::size_t k = 0; k < rank_; ++k) {
      PolyVector v = zero_vector(ring_, rank_);
      v[k] = r;
      out.push_back(std::move(v));
    }
  }
  return out;
}

SubmoduleSpec SubmoduleSpec::with_generator(PolyVector h) const {
  auto gens = gens_;
  gens.push_back(std::move(h));
  return SubmoduleSpec(ring_, rank_, std::move(gens), relations_);
}

SubmoduleSpec SubmoduleSpec::with_relations(std::vector<Polynomial> relations) const {
  return SubmoduleSpec(ring_, rank_, gens_, std::move(relations));
}

// ---------------------------------------------------------------- bases

Basis groebner_basis(const IdealSpec& ideal, const MonomialOrder& order, bool track) {
  return compute_basis(ideal.ring(), 1, as_vectors(ideal.generators()), order, track).basis;
}

Basis groebner_basis(const SubmoduleSpec& module, const MonomialOrder& order, bool track) {
  return compute_basis(module.ring(), module.rank(), module.presentation(), order, track).basis;
}

DivisionResult divide(const PolyVector& v, const std::vector<PolyVector>& reducers,
                      const MonomialOrder& order) {
  if (v.empty()) throw AlgebraError("division of an empty vector");
  const RingPtr& ring = v[0].ring();
  std::vector<Vec> rv;
  for (const auto& r : reducers) {
    if (r.size() != v.size()) throw AlgebraError("rank mismatch in division");
    if (is_zero(r)) throw AlgebraError("zero reducer");
    rv.push_back(kernel::from_vector(r, order));
  }
  std::vector<const Vec*> ptrs;
  for (const auto& r : rv) ptrs.push_back(&r);
  std::vector<kernel::DivisionStep> steps;
  Vec rem = kernel::reduce(kernel::from_vector(v, order), ptrs, order, 0, true, &steps);
  DivisionResult out;
  out.quotients.assign(reducers.size(), Polynomial(ring));
  for (const auto& s : steps) out.quotients[s.reducer].add_term(s.mono, s.coef);
  out.remainder = kernel::to_vector(rem, ring, v.size());
  return out;
}

Polynomial normal_form(const Polynomial& p, const std::vector<Polynomial>& reducers, const MonomialOrder& order) {
  return divide(PolyVector{p}, as_vectors(reducers), order).remainder[0];
}

PolyVector normal_form(const PolyVector& v, const std::vector<PolyVector>& reducers, const MonomialOrder& order) {
  return divide(v, reducers, order).remainder;
}

// ---------------------------------------------------------------- membership

MembershipResult membership(const PolyVector& h, const SubmoduleSpec& module, bool certify) {
  if (h.size() != module.rank()) throw AlgebraError("rank mismatch in membership test");
  const auto order = MonomialOrder::degrevlex();
  const auto inputs = module.presentation();
  const KernelBasis kb = compute_basis(module.ring(), module.rank(), inputs, order, certify);
  std::vector<const Vec*> ptrs;
  for (const auto& p : kb.polys) ptrs.push_back(&p);
  std::vector<kernel::DivisionStep> steps;
  Vec rem = kernel::reduce(kernel::from_vector(h, order), ptrs, order, 0, true, certify ? &steps : nullptr);
  MembershipResult out;
  out.member = rem.empty();
  out.remainder = kernel::to_vector(rem, module.ring(), module.rank());
  if (!out.member || !certify) return out;
  Vec combo;
  for (const auto& s : steps) combo = kernel::add_scaled(combo, s.coef, s.mono, kb.cofs[s.reducer], kernel::cofactor_order());
  PolyVector coeffs = kernel::to_vector(combo, module.ring(), inputs.size());
  MembershipCertificate cert;
  const std::size_t ng = module.generators().size();
  cert.generator_coefficients.assign(coeffs.begin(), coeffs.begin() + static_cast<long>(ng));
  for (std::size_t r = 0; r < module.relations().size(); ++r) {
    PolyVector d;
    for (std::size_t k = 0; k < module.rank(); ++k) d.push_back(coeffs[ng + r * module.rank() + k]);
    cert.relation_coefficients.push_back(std::move(d));
  }
  if (!verify_certificate(h, module, cert)) throw AlgebraError("membership certificate failed to replay");
  out.certificate = std::move(cert);
  return out;
}

MembershipResult membership(const Polynomial& h, const IdealSpec& ideal, bool certify) {
  if (!certify) {
    const Basis& b = ideal.basis();
    std::vector<PolyVector> reducers = b.elements;
    MembershipResult out;
    out.remainder = reducers.empty() ? PolyVector{h} : normal_form(PolyVector{h}, reducers);
    out.member = is_zero(out.remainder);
    return out;
  }
  return membership(PolyVector{h}, SubmoduleSpec::from_ideal(ideal), true);
}

bool verify_certificate(const PolyVector& h, const SubmoduleSpec& module, const MembershipCertificate& cert) {
  if (cert.generator_coefficients.size() != module.generators().size()) return false;
  if (cert.relation_coefficients.size() != module.relations().size()) return false;
  PolyVector acc = zero_vector(module.ring(), module.rank());
  for (std::size_t i = 0; i < module.generators().size(); ++i)
    for (std::size_t k = 0; k < module.rank(); ++k)
      acc[k] += cert.generator_coefficients[i] * module.generators()[i][k];
  for (std::size_t r = 0; r < module.relations().size(); ++r)
    for (std::size_t k = 0; k < module.rank(); ++k)
      acc[k] += cert.relation_coefficients[r][k] * module.relations()[r];
  for (std::size_t k = 0; k < module.rank(); ++k)
    if (!(acc[k] == h[k])) return false;
  return true;
}

bool contains(const SubmoduleSpec& outer, const SubmoduleSpec& inner) {
  if (outer.rank() != inner.rank()) throw AlgebraError("rank mismatch in containment test");
  const Basis b = groebner_basis(outer);
  for (const auto& g : inner.generators()) {
    if (b.elements.empty()) return false;
    if (!is_zero(normal_form(g, b.elements))) return false;
  }
  return true;
}

bool contains(const IdealSpec& outer, const IdealSpec& inner) {
  const Basis& b = outer.basis();
  for (const auto& g : inner.generators()) {
    if (b.elements.empty()) return false;
    if (!is_zero(normal_form(PolyVector{g}, b.elements))) return false;
  }
  return true;
}

// ---------------------------------------------------------------- ideal calculus

IdealSpec ideal_sum(const IdealSpec& a, const IdealSpec& b) {
  auto gens = a.generators();
  gens.insert(gens.end(), b.generators().begin(), b.generators().end());
  return IdealSpec(a.ring(), std::move(gens));
}

IdealSpec ideal_product(const IdealSpec& a, const IdealSpec& b) {
  std::vector<Polynomial> gens;
  for (const auto& f : a.generators())
    for (const auto& g : b.generators()) gens.push_back(f * g);
  return IdealSpec(a.ring(), std::move(gens));
}

IdealSpec ideal_power(const IdealSpec& a, unsigned n) {
  IdealSpec acc(a.ring(), {Polynomial::constant(a.ring(), 1)});
  for (unsigned i = 0; i < n; ++i) acc = ideal_product(acc, a);
  return acc;
}

std::string fresh_name(const RingContext& ring, const std::string& base) {
  if (!ring.index_of(base)) return base;
  for (unsigned i = 1;; ++i) {
    std::string candidate = base + "_" + std::to_string(i);
    if (!ring.index_of(candidate)) return candidate;
  }
}

IdealSpec ideal_intersection(const IdealSpec& a, const IdealSpec& b) {
  if (!a.ring()->compatible(*b.ring())) throw AlgebraError("intersection of ideals in different rings");
  const RingPtr& ring = a.ring();
  if (a.is_zero() || b.is_zero()) return IdealSpec(ring, {});
  // Eliminate a tag variable s from s*a + (1 - s)*b.
  const RingPtr ext = ring->with_aux({fresh_name(*ring, "s")});
  const std::size_t tag = ext->arity() - 1;
  const Polynomial s = Polynomial::variable(ext, tag);
  const Polynomial one_minus_s = Polynomial::constant(ext, 1) - s;
  std::vector<Polynomial> gens;
  for (const auto& f : a.generators()) gens.push_back(s * change_ring(f, ext));
  for (const auto& g : b.generators()) gens.push_back(one_minus_s * change_ring(g, ext));
  std::vector<bool> mask(ext->arity(), false);
  mask[tag] = true;
  const Basis basis = groebner_basis(IdealSpec(ext, std::move(gens)), MonomialOrder::elimination(mask));
  std::vector<Polynomial> out;
  for (const auto& e : basis.elements)
    if (e[0].degree_in(tag) == 0) out.push_back(change_ring(e[0], ring));
  return IdealSpec(ring, std::move(out));
}

Polynomial exact_divide(const Polynomial& p, const Polynomial& q) {
  if (q.is_zero()) throw AlgebraError("division by zero polynomial");
  auto d = divide(PolyVector{p}, {PolyVector{q}});
  if (!is_zero(d.remainder)) throw AlgebraError("polynomial division is not exact");
  return d.quotients[0];
}

IdealSpec ideal_quotient(const IdealSpec& a, const IdealSpec& b) {
  const RingPtr& ring = a.ring();
  std::optional<IdealSpec> acc;
  for (const auto& g : b.generators()) {
    IdealSpec inter = ideal_intersection(a, IdealSpec(ring, {g}));
    std::vector<Polynomial> gens;
    for (const auto& h : inter.generators()) gens.push_back(exact_divide(h, g));
    IdealSpec q(ring, std::move(gens));
    acc = acc ? ideal_intersection(*acc, q) : q;
  }
  if (!acc) return IdealSpec(ring, {Polynomial::constant(ring, 1)});
  return *acc;
}

RadicalMembership radical_membership(const Polynomial& h, const IdealSpec& ideal, unsigned bound) {
  const RingPtr& ring = ideal.ring();
  RadicalMembership out;
  out.bound = bound;
  const RingPtr ext = ring->with_aux({fresh_name(*ring, "w")});
  const Polynomial w = Polynomial::variable(ext, ext->arity() - 1);
  std::vector<Polynomial> gens;
  for (const auto& g : ideal.generators()) gens.push_back(change_ring(g, ext));
  gens.push_back(Polynomial::constant(ext, 1) - w * change_ring(h, ext));
  out.member = groebner_basis(IdealSpec(ext, gens)).is_unit_ideal();
  if (!out.member) return out;
  Polynomial power = Polynomial::constant(ring, 1);
  for (unsigned m = 1; m <= bound; ++m) {
    power = power * h;
    if (membership(power, ideal, false).member) {
      out.exponent = m;
      break;
    }
  }
  return out;
}

std::vector<Rational> rational_roots(std::vector<Rational> coeffs) {
  while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
  std::vector<Rational> roots;
  std::size_t low = 0;
  while (low < coeffs.size() && coeffs[low] == 0) ++low;
  if (low > 0) roots.push_back(0);
  coeffs.erase(coeffs.begin(), coeffs.begin() + static_cast<long>(low));
  if (coeffs.size() < 2) return roots;
  Integer lcm_den = 1;
  for (const auto& c : coeffs) lcm_den = lcm(lcm_den, Integer(c.get_den()));
  std::vector<Integer> ints;
  for (const auto& c : coeffs) ints.push_back(Integer(c * lcm_den));
  const Integer a0 = abs(ints.front());
  const Integer an = abs(ints.back());
  const Integer limit = 100000;
  if (a0 > limit || an > limit) return roots;
  auto divisors = [](long x) {
    std::vector<long> d;
    for (long i = 1; i <= x; ++i)
      if (x % i == 0) d.push_back(i);
    return d;
  };
  for (long p : divisors(a0.get_si())) {
    for (long q : divisors(an.get_si())) {
      for (int sign : {1, -1}) {
        Rational r(sign * p, q);
        r.canonicalize();
        Rational acc = 0;
        for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * r + coeffs[i];
        if (acc == 0 && std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
      }
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}


std::optional<std::vector<std::vector<Rational>>> rational_points(const IdealSpec& ideal) {
  const RingPtr& ring = ideal.ring();
  const std::size_t n = ring->arity();
  std::vector<std::vector<Rational>> out;
  std::vector<Rational> point(n);
  bool positive_dimensional = false;
  // Lex makes variable 0 the largest, so variables are fixed from the last one.
  auto rec = [&](auto&& self, const std::vector<Polynomial>& gens, std::size_t remaining) -> void {
    if (positive_dimensional) return;
    const Basis gb = groebner_basis(IdealSpec(ring, gens), MonomialOrder::lex());
    if (gb.is_unit_ideal()) return;
    if (remaining == 0) {
      out.push_back(point);
      return;
    }
    const std::size_t var = remaining - 1;
    const Polynomial* univariate = nullptr;
    for (const auto& e : gb.elements) {
      const Polynomial& p = e[0];
      bool only = p.degree_in(var) > 0;
      for (const auto& [m, c] : p.terms())
        for (std::size_t v = 0; v < n && only; ++v)
          if (v != var && m[v] > 0) only = false;
      if (only) {
        univariate = &p;
        break;
      }
    }
    if (!univariate) {
      positive_dimensional = true;
      return;
    }
    std::vector<Rational> coeffs(univariate->degree_in(var) + 1);
    for (const auto& [m, c] : univariate->terms()) coeffs[m[var]] = c;
    for (const Rational& r : rational_roots(coeffs)) {
      point[var] = r;
      auto next = gens;
      next.push_back(Polynomial::variable(ring, var) - Polynomial::constant(ring, r));
      self(self, next, remaining - 1);
    }
  };
  rec(rec, ideal.generators(), n);
  if (positive_dimensional) return std::nullopt;
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace equising
