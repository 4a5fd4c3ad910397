#include "equising/multiplicity.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

namespace equising {

std::string to_string(MultiplicityMethod m) {
  return m == MultiplicityMethod::FiniteDifference ? "finite-difference" : "generic-reduction";
}

Json MultiplicityResult::to_json() const {
  Json j;
  j["e"] = e;
  j["method"] = to_string(method);
  j["dimension"] = dimension;
  j["rank"] = rank;
  Json s = Json::array();
  for (auto [n, c] : samples) s.push_back({n, c});
  j["samples"] = s;
  if (generic_value) j["generic_value"] = *generic_value;
  if (generic_seed) j["generic_seed"] = *generic_seed;
  if (!cross_check_note.empty()) j["cross_check"] = cross_check_note;
  return j;
}

namespace {

// Exponent vectors of length p and total degree n, in a fixed order.
std::vector<std::vector<unsigned>> degree_monomials(std::size_t p, unsigned n) {
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> cur(p, 0);
  auto rec = [&](auto&& self, std::size_t i, unsigned left) -> void {
    if (i + 1 == p) {
      cur[i] = left;
      out.push_back(cur);
      return;
    }
    for (unsigned a = left + 1; a-- > 0;) {
      cur[i] = a;
      self(self, i + 1, left - a);
    }
  };
  if (p > 0) rec(rec, 0, n);
  return out;
}

using SymElement = std::map<std::vector<unsigned>, Polynomial>;

SymElement times_linear(const SymElement& a, const PolyVector& g) {
  SymElement out;
  for (const auto& [e, c] : a) {
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (g[i].is_zero()) continue;
      auto f = e;
      ++f[i];
      auto prod = c * g[i];
      auto it = out.find(f);
      if (it == out.end())
        out.emplace(std::move(f), std::move(prod));
      else
        it->second += prod;
    }
  }
  return out;
}

std::vector<std::vector<std::size_t>> multisets(std::size_t m, unsigned n) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (cur.size() == n) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i < m; ++i) {
      cur.push_back(i);
      self(self, i);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

std::uint64_t finite_colength(const SubmoduleSpec& m, const LocalOptions& opts, unsigned n) {
  ColengthResult c = local_colength(m, opts);
  if (!c.finite())
    throw MultiplicityError("colength at power " + std::to_string(n) + " is " + to_string(c.status));
  return c.value;
}

Integer binomial(unsigned n, unsigned k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

Rational small_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-7, 7);
  std::uniform_int_distribution<int> den(1, 3);
  int a = 0;
  while (a == 0) a = num(rng);
  Rational q(a, den(rng));
  q.canonicalize();
  return q;
}

// Colength of the module generated by `count` random combinations of the generators.
std::optional<std::uint64_t> generic_colength(const SubmoduleSpec& m, unsigned count, std::uint64_t seed,
                                              const LocalOptions& opts) {
  std::mt19937_64 rng(seed);
  std::vector<PolyVector> gens;
  for (unsigned k = 0; k < count; ++k) {
    PolyVector v = zero_vector(m.ring(), m.rank());
    for (const auto& g : m.generators()) {
      const Rational c = small_rational(rng);
      for (std::size_t i = 0; i < v.size(); ++i) v[i] += g[i] * c;
    }
    gens.push_back(std::move(v));
  }
  ColengthResult c = local_colength(SubmoduleSpec(m.ring(), m.rank(), std::move(gens), m.relations()), opts);
  if (!c.finite()) return std::nullopt;
  return c.value;
}

}  // namespace

SubmoduleSpec rees_power(const SubmoduleSpec& module, unsigned n) {
  const std::size_t p = module.rank();
  const auto basis = degree_monomials(p, n);
  std::map<std::vector<unsigned>, std::size_t> index;
  for (std::size_t i = 0; i < basis.size(); ++i) index[basis[i]] = i;
  std::vector<PolyVector> gens;
  std::set<std::string> seen;
  const auto& g = module.generators();
  for (const auto& ms : multisets(g.size(), n)) {
    SymElement acc;
    acc.emplace(std::vector<unsigned>(p, 0), Polynomial::constant(module.ring(), 1));
    for (std::size_t k : ms) acc = times_linear(acc, g[k]);
    PolyVector v = zero_vector(module.ring(), basis.size());
    for (auto& [e, c] : acc) v[index.at(e)] = std::move(c);
    if (is_zero(v)) continue;
    if (seen.insert(to_string(v)).second) gens.push_back(std::move(v));
  }
  return SubmoduleSpec(module.ring(), basis.size(), std::move(gens), module.relations());
}

MultiplicityResult buchsbaum_rim(const SubmoduleSpec& module, unsigned d, const MultiplicityOptions& options) {
  if (options.window < 1) throw MultiplicityError("stabilization window must be positive");
  const std::size_t p = module.rank();
  const unsigned D = d + static_cast<unsigned>(p) - 1;
  MultiplicityResult out;
  out.dimension = d;
  out.rank = p;
  std::vector<Integer> lambda;
  std::vector<Integer> diffs;
  bool stable = false;
  for (unsigned n = 1; n <= options.max_samples; ++n) {
    const std::uint64_t c = finite_colength(rees_power(module, n), options.local, n);
    out.samples.emplace_back(n, c);
    lambda.push_back(Integer(static_cast<unsigned long>(c)));
    if (lambda.size() < D + 1) continue;
    Integer diff = 0;
    const std::size_t base = lambda.size() - D - 1;
    for (unsigned i = 0; i <= D; ++i) {
      Integer term = binomial(D, i) * lambda[base + i];
      if ((D - i) % 2 == 0)
        diff += term;
      else
        diff -= term;
    }
    diffs.push_back(diff);
    if (diffs.size() < options.window) continue;
    const bool flat = std::all_of(diffs.end() - options.window, diffs.end(), [&](const Integer& x) { return x == diff; });
    if (!flat) continue;
    if (diff < 0) throw MultiplicityError("negative top difference");
    out.e = diff.get_ui();
    stable = true;
    break;
  }
  if (!stable)
    throw MultiplicityError("finite differences did not stabilize within " + std::to_string(options.max_samples) +
                            " samples");

  const bool complete_intersection = module.relations().size() + d == module.ring()->arity();
  if (!options.cross_check) {
    out.cross_check_note = "disabled";
  } else if (!complete_intersection) {
    out.cross_check_note = "skipped: relations are not a complete intersection of the stated dimension";
  } else {
    for (unsigned a = 0; a < options.cross_check_attempts; ++a) {
      const std::uint64_t seed = options.seed + a;
      auto g = generic_colength(module, D, seed, options.local);
      if (g && *g == out.e) {
        out.generic_value = g;
        out.generic_seed = seed;
        out.cross_check_note = "agrees";
        return out;
      }
    }
    throw MultiplicityError("generic-reduction cross-check disagrees with finite differences (e = " +
                            std::to_string(out.e) + ")");
  }
  return out;
}

MultiplicityResult hilbert_samuel(const IdealSpec& ideal, unsigned d, const std::vector<Polynomial>& relations,
                                  const MultiplicityOptions& options) {
  return buchsbaum_rim(SubmoduleSpec::from_ideal(ideal, relations), d, options);
}

Verdict is_reduction(const SubmoduleSpec& small, const SubmoduleSpec& large, const ReductionContext& ctx) {
  if (small.rank() != large.rank()) throw AlgebraError("rank mismatch in reduction test");
  if (!contains(large, small)) throw AlgebraError("reduction test requires N inside M");
  Verdict v;
  v.claim = ctx.small_label + " is a reduction of " + ctx.large_label;
  v.assumptions.push_back(ctx.equidimensional_asserted ? "equidimensional (asserted)" : "equidimensional (not asserted)");
  v.step("containment", "reduction test requires N inside M", {{"verified", true}});
  const auto cs = local_colength(small, ctx.multiplicity.local);
  const auto cl = local_colength(large, ctx.multiplicity.local);
  v.step("colengths", "finite colength for multiplicities",
         {{ctx.small_label, cs.finite() ? Json(cs.value) : Json(to_string(cs.status))},
          {ctx.large_label, cl.finite() ? Json(cl.value) : Json(to_string(cl.status))}});
  MultiplicityWitness w{ctx.small_label, ctx.large_label, std::nullopt, std::nullopt};
  if (cs.finite() && cl.finite()) {
    const auto es = buchsbaum_rim(small, ctx.dimension, ctx.multiplicity);
    const auto el = buchsbaum_rim(large, ctx.dimension, ctx.multiplicity);
    w.small_e = es.e;
    w.large_e = el.e;
    v.multiplicity_witness = w;
    v.step("multiplicities", "equal multiplicity with containment gives a reduction",
           {{ctx.small_label, es.to_json()}, {ctx.large_label, el.to_json()}});
    v.status = es.e == el.e ? Status::CertifiedTrue : Status::CertifiedFalse;
    return v;
  }
  if (cl.finite() && cs.status == ColengthStatus::Infinite) {
    const auto el = buchsbaum_rim(large, ctx.dimension, ctx.multiplicity);
    w.large_e = el.e;
    v.multiplicity_witness = w;
    v.step("support", "a reduction has the same cosupport", {{ctx.large_label, el.to_json()}});
    v.status = Status::CertifiedFalse;
    return v;
  }
  v.status = Status::Inconclusive;
  v.step("outside multiplicity criterion", "both colengths infinite or undetermined");
  return v;
}

Verdict icl_certify(const PolyVector& h, const SubmoduleSpec& module, const ClosureContext& ctx) {
  if (h.size() != module.rank()) throw AlgebraError("rank mismatch in integral closure test");
  Verdict v;
  v.claim = "element lies in the integral closure";
  v.assumptions.push_back(ctx.reduction.equidimensional_asserted ? "equidimensional (asserted)"
                                                                 : "equidimensional (not asserted)");
  auto mem = membership(h, module, false);
  if (mem.member) {
    v.status = Status::CertifiedTrue;
    v.step("membership", "elements of a module are integral over it");
    return v;
  }
  if (!module.relations().empty()) {
    IdealSpec rel(module.ring(), module.relations());
    bool nilpotent = true;
    Json exps = Json::array();
    for (const auto& c : h) {
      if (c.is_zero()) continue;
      auto r = radical_membership(c, rel);
      if (!r.member) {
        nilpotent = false;
        break;
      }
      exps.push_back(r.exponent ? Json(*r.exponent) : Json("beyond bound"));
    }
    if (nilpotent) {
      v.status = Status::CertifiedTrue;
      v.step("nilpotent", "nilpotents lie in every integral closure", {{"exponents", exps}});
      return v;
    }
  }
  ReductionContext rc = ctx.reduction;
  rc.small_label = ctx.reduction.large_label;
  rc.large_label = ctx.reduction.large_label + " + h";
  Verdict red = is_reduction(module, module.with_generator(h), rc);
  v.provenance.insert(v.provenance.end(), red.provenance.begin(), red.provenance.end());
  v.multiplicity_witness = red.multiplicity_witness;
  if (red.status == Status::CertifiedTrue || red.status == Status::CertifiedFalse) {
    v.status = red.status;
    return v;
  }
  if (ctx.probes.empty()) {
    v.status = Status::Inconclusive;
    return v;
  }
  Verdict probe = icl_refute(h, module, ctx.probes, ctx.probe_options);
  v.provenance.insert(v.provenance.end(), probe.provenance.begin(), probe.provenance.end());
  v.status = probe.status;
  v.curve_witness = probe.curve_witness;
  v.probe_count = probe.probe_count;
  return v;
}

}  // namespace equising
