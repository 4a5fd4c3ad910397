#include "equising/equising.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

namespace equising {

namespace {

std::vector<Rational> zeros(std::size_t k) { return std::vector<Rational>(k, Rational(0)); }

std::string point_string(const std::vector<Rational>& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? ", " : "") + to_string(p[i]);
  return s + ")";
}

std::size_t rank_of(std::vector<std::vector<Rational>> m) {
  std::size_t rank = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
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
  return rank;
}

bool is_homogeneous(const Polynomial& p) {
  long d = -1;
  for (const auto& [m, c] : p.terms()) {
    const long e = static_cast<long>(m.degree());
    if (d >= 0 && e != d) return false;
    d = e;
  }
  return true;
}

std::size_t pivot_of(const Hyperplane& h) {
  for (std::size_t j = h.z_coeffs.size(); j-- > 0;)
    if (h.z_coeffs[j] != 0) return j;
  throw AlgebraError("zero linear form does not define a hyperplane");
}

Status aggregate(const std::vector<Verdict>& parts) {
  auto any = [&](Status s) {
    return std::any_of(parts.begin(), parts.end(), [&](const Verdict& v) { return v.status == s; });
  };
  if (any(Status::Refuted)) return Status::Refuted;
  if (any(Status::CertifiedFalse)) return Status::CertifiedFalse;
  if (!parts.empty() && std::all_of(parts.begin(), parts.end(),
                                    [](const Verdict& v) { return v.status == Status::CertifiedTrue; }))
    return Status::CertifiedTrue;
  if (any(Status::Inconclusive)) return Status::Inconclusive;
  return Status::NotRefuted;
}

// Column-by-column integral (or strict) dependence along probes.
Verdict dependence_check(const GermPresentation& germ, const std::vector<Polynomial>& comps,
                         const std::vector<CurveGerm>& probes, const ProbeOptions& popts, bool strict,
                         bool use_my, std::string claim, const std::string& anchor) {
  Verdict v;
  v.claim = std::move(claim);
  v.assumptions = germ.assumptions();
  const RingPtr& ring = germ.ring;
  const auto cols = y_columns(ring, comps);
  if (cols.empty()) {
    v.status = Status::CertifiedTrue;
    v.step("no parameter directions", anchor);
    return v;
  }
  const auto jm = jacobian_modules(ring, comps, germ.f);
  const SubmoduleSpec& M = use_my ? jm.my_jm_z : jm.jm_z;
  if (use_my)
    v.step("colength", "m_Y JM_z lies in m_Y O^p, whose quotient maps onto O_Y^p",
           {{"status", to_string(ColengthStatus::Infinite)}, {"path", "curve probes"}});
  std::vector<Verdict> parts;
  for (std::size_t i = 0; i < cols.size(); ++i) {
    Verdict part = icl_refute(cols[i], M, probes, popts, strict);
    Json data{{"column", "d/d" + ring->name(ring->y_var(i))},
              {"element", to_string(cols[i])},
              {"status", part.outcome()},
              {"probes", part.probe_count}};
    if (part.curve_witness) {
      data["witness"] = {{"curve", part.curve_witness->curve},
                         {"element_order", part.curve_witness->element_order},
                         {"module_order", part.curve_witness->module_order}};
      if (!v.curve_witness) v.curve_witness = part.curve_witness;
    }
    v.step("column", anchor, std::move(data));
    v.probe_count = std::max(v.probe_count, part.probe_count);
    parts.push_back(std::move(part));
  }
  v.status = aggregate(parts);
  return v;
}

std::vector<Polynomial> augmented(const GermPresentation& germ) {
  if (!germ.F) throw AlgebraError("the relative conditions need F");
  auto comps = germ.f;
  comps.push_back(*germ.F);
  return comps;
}

Json matrix_json(const std::vector<PolyVector>& rows) {
  Json out = Json::array();
  for (const auto& r : rows) {
    Json row = Json::array();
    for (const auto& p : r) row.push_back(p.to_string());
    out.push_back(row);
  }
  return out;
}

Json hyperplane_json(const Hyperplane& h, const RingPtr& ring) {
  Json c = Json::array();
  for (const auto& a : h.z_coeffs) c.push_back(to_string(a));
  return {{"equation", h.to_string(ring)}, {"z_coefficients", c}};
}

std::string indent_text(const std::string& text, int by) {
  std::istringstream in(text);
  std::string line, out;
  while (std::getline(in, line)) out += std::string(by, ' ') + line + "\n";
  return out;
}

Rational small_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-3, 3);
  std::uniform_int_distribution<int> den(1, 2);
  Rational q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

}  // namespace

std::vector<CurveGerm> default_probes(const GermPresentation& germ, const std::vector<CurveGerm>& user,
                                      const ProbeOptions& options) {
  return generate_probes(germ.ring, germ.f, user, options);
}

Verdict check_whitney_w(const GermPresentation& germ, const std::vector<CurveGerm>& probes,
                        const EquisingOptions& options) {
  return dependence_check(germ, germ.f, probes, options.probes, false, true, "(X_0, Y) satisfies condition W",
                          "df/dy_i in the integral closure of m_Y JM_z(f)");
}

Verdict check_AF_WF(const GermPresentation& germ, const std::vector<CurveGerm>& probes, RelativeMode mode,
                    const EquisingOptions& options) {
  const auto comps = augmented(germ);
  if (mode == RelativeMode::AF)
    return dependence_check(germ, comps, probes, options.probes, true, false, "condition A_F holds",
                            "d(f,F)/dy_i strictly dependent on JM_z(f,F)");
  return dependence_check(germ, comps, probes, options.probes, false, true, "condition W_F holds",
                          "d(f,F)/dy_i in the integral closure of m_Y JM_z(f,F)");
}

Json BlindnessReport::to_json() const {
  Json k = Json::array();
  for (const auto& p : witnesses.K) k.push_back(p.to_string());
  Json rs = Json::array();
  for (const auto& r : rows)
    rs.push_back({{"probe", r.probe},
                  {"curve", r.curve},
                  {"column", r.column},
                  {"f_member", r.f_member},
                  {"g_member", r.g_member},
                  {"agree", r.agree()}});
  return {{"assumptions", assumptions},
          {"r", witnesses.r},
          {"K", k},
          {"H0", matrix_json(witnesses.H0)},
          {"probes_used", probes_used},
          {"probes_skipped", probes_skipped},
          {"disagreements", disagreements},
          {"rows", rs}};
}

std::string BlindnessReport::to_text() const {
  std::ostringstream out;
  out << "structure blindness: " << (disagreements == 0 ? "no disagreements" : "DISAGREEMENT") << "\n";
  out << "  r = " << witnesses.r << ", K = (";
  for (std::size_t i = 0; i < witnesses.K.size(); ++i) out << (i ? ", " : "") << witnesses.K[i].to_string();
  out << ")\n";
  out << "  H0 rows:\n";
  for (const auto& row : witnesses.H0) out << "    " << equising::to_string(row) << "\n";
  out << "  probes used " << probes_used << ", skipped " << probes_skipped << ", disagreements " << disagreements
      << "\n";
  for (const auto& r : rows)
    if (!r.agree())
      out << "  probe " << r.probe << " " << r.curve << " " << r.column << ": f " << r.f_member << ", g "
          << r.g_member << "\n";
  return out.str();
}

BlindnessReport structure_blindness_check(const GermPresentation& f_germ, const GermPresentation& g_germ,
                                          const std::vector<CurveGerm>& probes,
                                          const WitnessOptions& witness_options) {
  BlindnessReport rep;
  rep.assumptions = f_germ.assumptions();
  rep.assumptions.push_back("generically reduced structures (asserted)");
  rep.witnesses = structure_witnesses(f_germ, g_germ, witness_options);
  const RingPtr& ring = f_germ.ring;
  const auto cf = y_columns(ring, f_germ.f);
  const auto cg = y_columns(ring, g_germ.f);
  if (cf.empty()) return rep;
  const auto jf = jacobian_modules(f_germ);
  const auto jg = jacobian_modules(g_germ);
  for (std::size_t i = 0; i < probes.size(); ++i) {
    const CurveGerm& c = probes[i];
    auto off_K = [&] {
      return std::any_of(rep.witnesses.K.begin(), rep.witnesses.K.end(),
                         [&](const Polynomial& k) { return !pullback(c, k).known_zero(); });
    };
    auto on = [&](const std::vector<Polynomial>& rels) {
      return std::all_of(rels.begin(), rels.end(), [&](const Polynomial& r) { return pullback(c, r).known_zero(); });
    };
    if (!c.exact() || !on(f_germ.f) || !on(g_germ.f) || !off_K()) {
      ++rep.probes_skipped;
      continue;
    }
    ++rep.probes_used;
    const DVRModule mf = pullback(c, jf.jm_z);
    const DVRModule mg = pullback(c, jg.jm_z);
    for (std::size_t j = 0; j < cf.size(); ++j) {
      BlindnessRow row;
      row.probe = i;
      row.curve = c.to_string();
      row.column = "d/d" + ring->name(ring->y_var(j));
      row.f_member = dvr_membership(pullback(c, cf[j]), mf).member();
      row.g_member = dvr_membership(pullback(c, cg[j]), mg).member();
      if (!row.agree()) ++rep.disagreements;
      rep.rows.push_back(std::move(row));
    }
  }
  return rep;
}

Verdict limiting_tangent_hyperplane(const GermPresentation& fiber, const Hyperplane& h,
                                    const EquisingOptions& options) {
  if (fiber.k() != 0) throw AlgebraError("the tangent-hyperplane test takes a fiber germ without parameters");
  Verdict v;
  v.claim = "H is not a limiting tangent hyperplane";
  v.assumptions = fiber.assumptions();
  const auto jm = jacobian_modules(fiber).jm;
  const ColengthResult c = local_colength(jm, options.multiplicity.local);
  v.step("ICIS check", "JM(f) of finite colength",
         {{"colength", c.finite() ? Json(c.value) : Json(to_string(c.status))}});
  if (!c.finite()) {
    v.status = Status::Inconclusive;
    v.step("not an isolated singularity", "multiplicity criterion needs finite colength");
    return v;
  }
  ReductionContext rc;
  rc.dimension = fiber.dim();
  rc.multiplicity = options.multiplicity;
  rc.equidimensional_asserted = fiber.equidimensional;
  rc.small_label = "JM(f)_H";
  rc.large_label = "JM(f)";
  const Verdict red = is_reduction(hyperplane_restricted(fiber, h), jm, rc);
  v.provenance.insert(v.provenance.end(), red.provenance.begin(), red.provenance.end());
  v.multiplicity_witness = red.multiplicity_witness;
  v.status = red.status;
  if (red.status == Status::CertifiedTrue) v.label = "NOT-TANGENT";
  if (red.status == Status::CertifiedFalse) v.label = "TANGENT";
  return v;
}

Json ICISProfile::to_json() const {
  Json fs = Json::array();
  for (const auto& f : fibers) {
    Json j{{"y0", point_string(f.y0)},
           {"colength", f.status == ColengthStatus::Finite ? Json(f.colength) : Json(to_string(f.status))}};
    if (f.e) j["e"] = *f.e;
    if (!f.note.empty()) j["note"] = f.note;
    fs.push_back(j);
  }
  return {{"complete_intersection", complete_intersection},
          {"seed", seed},
          {"constant_multiplicity", constant_multiplicity},
          {"fibers", fs}};
}

ICISProfile icis_profile(const GermPresentation& germ, const EquisingOptions& options) {
  ICISProfile prof;
  prof.seed = options.probes.seed;
  prof.complete_intersection = germ.p() + germ.dim() == germ.ring->arity();
  std::vector<std::vector<Rational>> points{zeros(germ.k())};
  if (germ.k() > 0) {
    std::mt19937_64 rng(options.probes.seed);
    for (unsigned s = 0; s < options.fiber_samples; ++s) {
      std::vector<Rational> y0;
      for (std::size_t i = 0; i < germ.k(); ++i) y0.push_back(small_rational(rng));
      if (std::find(points.begin(), points.end(), y0) == points.end()) points.push_back(std::move(y0));
    }
  }
  for (const auto& y0 : points) {
    FiberSample fs;
    fs.y0 = y0;
    const GermPresentation fiber = specialize_fiber(germ, y0);
    const auto jm = jacobian_modules(fiber).jm;
    const ColengthResult c = local_colength(jm, options.multiplicity.local);
    fs.status = c.status;
    fs.colength = c.value;
    if (c.finite()) {
      try {
        fs.e = buchsbaum_rim(jm, fiber.dim(), options.multiplicity).e;
      } catch (const MultiplicityError& e) {
        fs.note = e.what();
      }
    }
    prof.fibers.push_back(std::move(fs));
  }
  prof.constant_multiplicity = std::all_of(prof.fibers.begin(), prof.fibers.end(), [&](const FiberSample& f) {
    return f.e && f.e == prof.fibers.front().e;
  });
  return prof;
}

GermPresentation hyperplane_section(const GermPresentation& germ, const Hyperplane& h) {
  if (!h.contains_Y()) throw AlgebraError("the hyperplane must contain Y");
  h.form(germ.ring);
  const std::size_t c = pivot_of(h);
  const RingPtr& src = germ.ring;
  std::vector<std::string> y, z, aux;
  for (std::size_t i = 0; i < germ.k(); ++i) y.push_back(src->name(src->y_var(i)));
  for (std::size_t j = 0; j < germ.n(); ++j)
    if (j != c) z.push_back(src->name(src->z_var(j)));
  for (std::size_t a = 0; a < src->aux_count(); ++a) aux.push_back(src->name(src->aux_var(a)));
  RingPtr dst = RingContext::make(y, z, aux);
  Polynomial expr(dst);
  for (std::size_t j = 0, i = 0; j < germ.n(); ++j) {
    if (j == c) continue;
    expr += Polynomial::variable(dst, dst->z_var(i++)) * Rational(-h.z_coeffs[j] / h.z_coeffs[c]);
  }
  Substitution sub;
  sub.insert_or_assign(src->z_var(c), expr);
  GermPresentation out;
  out.ring = dst;
  for (const auto& f : germ.f) {
    Polynomial g = substitute(f, sub, dst);
    if (g.is_zero()) throw AlgebraError("the hyperplane contains the zero set of " + f.to_string());
    out.f.push_back(std::move(g));
  }
  if (germ.F) out.F = substitute(*germ.F, sub, dst);
  if (germ.dimension) out.dimension = *germ.dimension - 1;
  out.equidimensional = germ.equidimensional;
  out.wa = germ.wa;
  return out;
}

GermPresentation modification_at(const GermPresentation& germ, const Hyperplane& h) {
  if (!h.contains_Y()) throw AlgebraError("the hyperplane must contain Y");
  h.form(germ.ring);
  const std::size_t c = pivot_of(h);
  const GrassmannModification mod = grassmann_modification(germ, c);
  const RingPtr& mid = mod.G.ring;
  std::vector<std::string> params, z;
  for (std::size_t i = 0; i < mid->y_count(); ++i) params.push_back(mid->name(mid->y_var(i)));
  for (const auto& a : mod.a_names) params.push_back(a);
  for (std::size_t j = 0; j < mid->z_count(); ++j) z.push_back(mid->name(mid->z_var(j)));
  RingPtr dst = RingContext::make(params, z);
  Substitution shift;
  for (std::size_t j = 0, i = 0; j < germ.n(); ++j) {
    if (j == c) continue;
    const Rational alpha = -h.z_coeffs[j] / h.z_coeffs[c];
    shift.insert_or_assign(mid->aux_var(i), Polynomial::variable(dst, dst->y_var(germ.k() + i)) +
                                                 Polynomial::constant(dst, alpha));
    ++i;
  }
  GermPresentation out;
  out.ring = dst;
  for (const auto& g : mod.G.f) out.f.push_back(substitute(g, shift, dst));
  if (mod.G.F) out.F = substitute(*mod.G.F, shift, dst);
  out.dimension = germ.dim() + static_cast<unsigned>(mod.a_names.size());
  out.equidimensional = germ.equidimensional;
  out.wa = germ.wa;
  return out;
}

Verdict w_generic_check(const GermPresentation& germ, const Hyperplane& h, const std::vector<CurveGerm>& probes,
                        const EquisingOptions& options) {
  if (!h.contains_Y()) throw AlgebraError("a W-generic hyperplane contains Y; its equation has y-terms");
  h.form(germ.ring);
  Verdict v;
  v.claim = "H is W-generic for (X_0, Y)";
  v.assumptions = germ.assumptions();
  if (options.w_asserted) {
    v.assumptions.push_back("W for (X_0, Y) (asserted)");
  } else {
    const Verdict w = check_whitney_w(germ, probes, options);
    v.step("precondition", "condition W for (X_0, Y)", {{"status", w.outcome()}, {"probes", w.probe_count}});
    if (w.status == Status::Refuted || w.status == Status::CertifiedFalse) {
      v.status = Status::Inconclusive;
      v.curve_witness = w.curve_witness;
      v.step("precondition fails", "genericity is defined for pairs satisfying W");
      return v;
    }
  }

  const ICISProfile prof = icis_profile(germ, options);
  v.step("ICIS profile", "fiber multiplicity e(JM(f_y)) over sampled y", prof.to_json());
  if (prof.complete_intersection && prof.constant_multiplicity) {
    const GermPresentation fiber = specialize_fiber(germ, zeros(germ.k()));
    const Verdict ft = limiting_tangent_hyperplane(fiber, h.iota(), options);
    v.step("fiber multiplicity criterion", "e(JM(f_0)) = e(JM(f_0)_iota(H))",
           {{"reading", "restricted module taken in the fiber: JM(f_0)_iota(H)"},
            {"fiber_verdict", to_json(ft)}});
    v.multiplicity_witness = ft.multiplicity_witness;
    if (ft.status == Status::CertifiedTrue || ft.status == Status::CertifiedFalse) {
      v.status = ft.status;
      v.label = ft.status == Status::CertifiedTrue ? "GENERIC" : "NOT-GENERIC";
      return v;
    }
  }

  ReductionContext rc;
  rc.dimension = germ.dim();
  rc.multiplicity = options.multiplicity;
  rc.equidimensional_asserted = germ.equidimensional;
  rc.small_label = "JM(f)_H";
  rc.large_label = "JM(f)";
  const Verdict red = is_reduction(hyperplane_restricted(germ, h), jacobian_modules(germ).jm, rc);
  v.provenance.insert(v.provenance.end(), red.provenance.begin(), red.provenance.end());
  if (red.status == Status::CertifiedTrue || red.status == Status::CertifiedFalse) {
    v.status = red.status;
    v.label = red.status == Status::CertifiedTrue ? "GENERIC" : "NOT-GENERIC";
    v.multiplicity_witness = red.multiplicity_witness;
    return v;
  }

  const GermPresentation G = modification_at(germ, h);
  const auto mprobes = default_probes(G, {}, options.probes);
  const Verdict w = check_whitney_w(G, mprobes, options);
  Json data{{"status", w.outcome()}, {"probes", w.probe_count}};
  if (w.curve_witness) data["witness"] = w.curve_witness->curve;
  v.step("modification", "condition W for G = f o beta at the chart point of H", std::move(data));
  v.probe_count = w.probe_count;
  v.curve_witness = w.curve_witness;
  if (w.status == Status::Refuted) {
    v.status = Status::Refuted;
    v.label = "NOT-GENERIC";
  } else {
    v.status = w.status == Status::CertifiedTrue ? Status::NotRefuted : w.status;
  }
  return v;
}

Json SequenceReport::to_json() const {
  Json ss = Json::array();
  for (const auto& s : steps)
    ss.push_back({{"section", s.section}, {"generic", equising::to_json(s.generic)},
                  {"section_w", equising::to_json(s.section_w)}});
  return {{"consistent", consistent}, {"steps", ss}};
}

std::string SequenceReport::to_text() const {
  std::ostringstream out;
  out << "W-generic sequence: " << steps.size() << " step(s), " << (consistent ? "consistent" : "INCONSISTENT")
      << "\n";
  for (std::size_t i = 0; i < steps.size(); ++i) {
    out << "  step " << i + 1 << ": section " << steps[i].section << "\n";
    out << indent_text(equising::to_text(steps[i].generic), 4);
    out << indent_text(equising::to_text(steps[i].section_w), 4);
  }
  return out.str();
}

SequenceReport w_generic_sequence(const GermPresentation& germ, const std::vector<Hyperplane>& hs,
                                  const EquisingOptions& options) {
  SequenceReport rep;
  GermPresentation cur = germ;
  std::vector<Polynomial> forms;
  // Eliminations performed so far, applied to later hyperplanes.
  std::vector<std::pair<RingPtr, Substitution>> chain;
  for (std::size_t i = 0; i < hs.size(); ++i) {
    const Hyperplane& h = hs[i];
    if (!h.contains_Y()) throw AlgebraError("hyperplane " + std::to_string(i + 1) + " does not contain Y");
    Polynomial l = h.form(germ.ring);
    for (const auto& [ring, sub] : chain) l = substitute(l, sub, ring);
    Hyperplane local;
    local.z_coeffs.assign(cur.n(), Rational(0));
    for (const auto& [m, c] : l.terms())
      for (std::size_t j = 0; j < cur.n(); ++j)
        if (m[cur.ring->z_var(j)] == 1) local.z_coeffs[j] = c;
    if (local.is_zero())
      throw AlgebraError("hyperplane " + std::to_string(i + 1) + " is dependent on the earlier ones");

    SequenceStep step;
    step.local = local;
    const auto probes = default_probes(cur, {}, options.probes);
    step.generic = w_generic_check(cur, local, probes, options);

    const std::size_t c = pivot_of(local);
    GermPresentation next = hyperplane_section(cur, local);
    Polynomial expr(next.ring);
    for (std::size_t j = 0, k = 0; j < cur.n(); ++j) {
      if (j == c) continue;
      expr += Polynomial::variable(next.ring, next.ring->z_var(k++)) *
              Rational(-local.z_coeffs[j] / local.z_coeffs[c]);
    }
    Substitution sub;
    sub.insert_or_assign(cur.ring->z_var(c), expr);
    chain.emplace_back(next.ring, std::move(sub));

    std::string desc;
    for (std::size_t k = 0; k < next.f.size(); ++k) desc += (k ? ", " : "") + next.f[k].to_string();
    step.section = "(" + desc + ")";
    const auto sprobes = default_probes(next, {}, options.probes);
    step.section_w = check_whitney_w(next, sprobes, options);
    if (step.generic.status == Status::CertifiedTrue &&
        (step.section_w.status == Status::Refuted || step.section_w.status == Status::CertifiedFalse))
      rep.consistent = false;
    rep.steps.push_back(std::move(step));
    cur = std::move(next);
  }
  return rep;
}

std::vector<CurveGerm> polar_lines(const GermPresentation& germ, const Hyperplane& h) {
  const GermPresentation fiber = specialize_fiber(germ, zeros(germ.k()));
  if (!std::all_of(fiber.f.begin(), fiber.f.end(), is_homogeneous)) return {};
  const RingPtr& fr = fiber.ring;
  const std::size_t n = fiber.n();
  if (fr->aux_count() != 0 || h.z_coeffs.size() != n) return {};
  std::vector<PolyVector> rows;
  for (const auto& f : fiber.f) {
    PolyVector row;
    for (std::size_t j = 0; j < n; ++j) row.push_back(partial_derivative(f, fr->z_var(j)));
    rows.push_back(std::move(row));
  }
  PolyVector arow;
  for (const auto& a : h.z_coeffs) arow.push_back(Polynomial::constant(fr, a));
  auto with_a = rows;
  with_a.push_back(arow);
  const std::vector<Polynomial> tangency = minors(with_a, fiber.p() + 1, fr);

  std::vector<CurveGerm> out;
  std::set<std::vector<Rational>> seen;
  for (std::size_t chart = 0; chart < n; ++chart) {
    std::vector<Polynomial> gens = fiber.f;
    gens.insert(gens.end(), tangency.begin(), tangency.end());
    gens.push_back(Polynomial::variable(fr, fr->z_var(chart)) - Polynomial::constant(fr, 1));
    for (std::size_t j = 0; j < chart; ++j) gens.push_back(Polynomial::variable(fr, fr->z_var(j)));
    const auto pts = rational_points(IdealSpec(fr, gens));
    if (!pts) continue;
    for (const auto& p : *pts) {
      std::vector<std::vector<Rational>> jac;
      for (const auto& row : rows) {
        std::vector<Rational> r;
        for (const auto& e : row) r.push_back(e.evaluate(p));
        jac.push_back(std::move(r));
      }
      if (rank_of(jac) != fiber.p()) continue;
      // Primitive integer direction.
      Integer den = 1, num = 0;
      for (const auto& x : p) den = lcm(den, Integer(x.get_den()));
      for (const auto& x : p) num = gcd(num, Integer(x * den));
      std::vector<Rational> dir;
      for (const auto& x : p) dir.push_back(Rational(x * den / num));
      if (!seen.insert(dir).second) continue;
      CurveGerm c;
      c.ring = germ.ring;
      c.components.assign(germ.ring->arity(), Series());
      for (std::size_t j = 0; j < n; ++j) c.components[germ.ring->z_var(j)] = Series::monomial(dir[j], 1);
      c.origin = "polar line";
      out.push_back(std::move(c));
    }
  }
  return out;
}

Json ScanReport::to_json(const RingPtr& ring) const {
  Json rs = Json::array();
  for (const auto& r : rows)
    rs.push_back({{"hyperplane", hyperplane_json(r.h, ring)},
                  {"fiber", r.fiber.outcome()},
                  {"family", r.family.outcome()},
                  {"agree", r.agree},
                  {"contradiction", r.contradiction},
                  {"fiber_verdict", equising::to_json(r.fiber)},
                  {"family_verdict", equising::to_json(r.family)}});
  return {{"assumptions", assumptions},
          {"hypothesis_failed", hypothesis_failed},
          {"failures", failures},
          {"profile", profile.to_json()},
          {"contradictions", contradictions},
          {"rows", rs}};
}

std::string ScanReport::to_text(const RingPtr& ring) const {
  std::ostringstream out;
  out << "ICIS correspondence scan" << (hypothesis_failed ? ": HYPOTHESIS FAILED" : "") << "\n";
  for (const auto& f : failures) out << "  failed: " << f << "\n";
  out << "  fibers:\n";
  for (const auto& f : profile.fibers) {
    out << "    y0 = " << point_string(f.y0) << ": colength "
        << (f.status == ColengthStatus::Finite ? std::to_string(f.colength) : to_string(f.status));
    if (f.e) out << ", e = " << *f.e;
    out << "\n";
  }
  std::size_t agree = 0;
  for (const auto& r : rows) agree += r.agree;
  out << "  hyperplanes: " << rows.size() << ", agreements " << agree << ", contradictions " << contradictions << "\n";
  for (const auto& r : rows)
    out << "    " << r.h.to_string(ring) << ": fiber " << r.fiber.outcome() << ", family " << r.family.outcome()
        << (r.agree ? "" : " (disagree)") << "\n";
  return out.str();
}

ScanReport icis_correspondence_scan(const GermPresentation& germ, const std::vector<Hyperplane>& hs,
                                    const EquisingOptions& options) {
  ScanReport rep;
  rep.assumptions = germ.assumptions();
  if (!germ.wa) rep.assumptions.push_back("W_A (not asserted)");
  rep.profile = icis_profile(germ, options);
  if (!rep.profile.complete_intersection) rep.failures.push_back("not a complete intersection: p + dim != arity");
  for (const auto& f : rep.profile.fibers)
    if (f.status != ColengthStatus::Finite)
      rep.failures.push_back("fiber at y0 = " + point_string(f.y0) + " is not an isolated singularity (colength " +
                             to_string(f.status) + ")");
  if (!rep.profile.constant_multiplicity) {
    std::string s = "fiber multiplicity is not constant:";
    for (const auto& f : rep.profile.fibers)
      s += " e = " + (f.e ? std::to_string(*f.e) : std::string("?")) + " at y0 = " + point_string(f.y0) + ";";
    s.pop_back();
    rep.failures.push_back(s);
  }
  rep.hypothesis_failed = !rep.failures.empty();
  if (hs.empty()) return rep;

  const GermPresentation fiber = specialize_fiber(germ, zeros(germ.k()));
  const auto jm = jacobian_modules(germ);
  const auto base = default_probes(germ, {}, options.probes);
  for (const auto& h : hs) {
    if (!h.contains_Y()) throw AlgebraError("scan hyperplanes must contain Y");
    ScanRow row;
    row.h = h;
    row.fiber = limiting_tangent_hyperplane(fiber, h.iota(), options);

    auto probes = polar_lines(germ, h);
    probes.insert(probes.end(), base.begin(), base.end());
    const SubmoduleSpec jmh = hyperplane_restricted_z(germ, h);
    Verdict fam;
    fam.claim = "JM_z(f)_H is a reduction of JM_z(f) along probes";
    fam.status = Status::NotRefuted;
    fam.probe_count = probes.size();
    for (std::size_t g = 0; g < jm.jm_z.generators().size(); ++g) {
      const Verdict part = icl_refute(jm.jm_z.generators()[g], jmh, probes, options.probes);
      if (part.status == Status::Refuted) {
        fam.status = Status::Refuted;
        fam.label = "TANGENT";
        fam.curve_witness = part.curve_witness;
        fam.step("generator outside the closure", "curve criterion for reductions",
                 {{"generator", g}, {"curve", part.curve_witness->curve}});
        break;
      }
    }
    if (fam.status == Status::NotRefuted) fam.step("curve criterion for reductions", "no probe separates the modules",
                                                    {{"probes", probes.size()}});
    row.family = std::move(fam);
    const bool tangent = row.fiber.status == Status::CertifiedFalse;
    const bool not_tangent = row.fiber.status == Status::CertifiedTrue;
    row.agree = (tangent && row.family.status == Status::Refuted) ||
                (not_tangent && row.family.status == Status::NotRefuted);
    row.contradiction = !rep.hypothesis_failed && not_tangent && row.family.status == Status::Refuted;
    rep.contradictions += row.contradiction;
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

std::vector<Hyperplane> sample_hyperplanes(std::size_t n, std::size_t count, std::uint64_t seed, int bound) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coef(-bound, bound);
  std::vector<Hyperplane> out;
  while (out.size() < count) {
    Hyperplane h;
    for (std::size_t j = 0; j < n; ++j) h.z_coeffs.emplace_back(coef(rng));
    if (!h.is_zero()) out.push_back(std::move(h));
  }
  return out;
}

}  // namespace equising
