#include "equising/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "equising/equising.hpp"
#include "equising/io.hpp"

namespace equising {

namespace {

struct Context {
  const JobSpec& job;
  LocalOptions local;
  ProbeOptions probes;
  MultiplicityOptions multiplicity;
  EquisingOptions equising;
  std::ostringstream text;
  Json result = Json::object();
  int exit_code = kExitOk;

  explicit Context(const JobSpec& j) : job(j) {
    if (j.truncation_cap) local.cap = *j.truncation_cap;
    if (j.precision) {
      probes.precision = *j.precision;
      probes.max_precision = std::max(probes.max_precision, 4 * *j.precision);
    }
    if (j.probe_exponent_bound) probes.exponent_bound = *j.probe_exponent_bound;
    if (j.probe_count) probes.probe_count = *j.probe_count;
    probes.seed = j.seed;
    if (j.mult_window) multiplicity.window = *j.mult_window;
    multiplicity.seed = j.seed;
    multiplicity.local = local;
    equising.probes = probes;
    equising.multiplicity = multiplicity;
  }

  Json options_json() const {
    Json o{{"truncation_cap", local.cap},
           {"precision", probes.precision},
           {"probe_exponent_bound", probes.exponent_bound},
           {"probe_count", probes.probe_count},
           {"mult_window", multiplicity.window},
           {"seed", job.seed}};
    if (job.command == "icis-scan") o["sample"] = job.sample;
    if (job.chart) o["chart"] = *job.chart;
    return o;
  }

  ProblemFile input(std::size_t i = 0) const {
    if (job.inputs.size() <= i) throw InputError("`" + job.command + "` needs an input file");
    return load_problem(job.inputs[i]);
  }

  void verdict(const std::string& heading, const Verdict& v) {
    text << heading << ": " << v.outcome() << "\n" << to_text(v, 2);
  }
};

Json strings(const std::vector<Polynomial>& ps) {
  Json out = Json::array();
  for (const auto& p : ps) out.push_back(p.to_string());
  return out;
}

std::string list(const std::vector<Polynomial>& ps) {
  std::string out = "(";
  for (std::size_t i = 0; i < ps.size(); ++i) out += (i ? ", " : "") + ps[i].to_string();
  return out + ")";
}

unsigned file_dimension(const ProblemFile& pf) {
  if (pf.dimension) return *pf.dimension;
  if (pf.relations.empty()) return static_cast<unsigned>(pf.ring->arity());
  throw AlgebraError("`dimension:` is required when relations are present");
}

PolyVector file_element(const ProblemFile& pf) {
  if (!pf.element) throw AlgebraError("problem file has no `element:`");
  return *pf.element;
}

IdealSpec with_relations(const IdealSpec& ideal, const std::vector<Polynomial>& relations) {
  auto gens = ideal.generators();
  gens.insert(gens.end(), relations.begin(), relations.end());
  return IdealSpec(ideal.ring(), gens);
}

std::string label_of(const ProblemFile& pf, std::size_t i) {
  pf.module(i);  // throws with a readable message when missing
  return pf.modules[i].name;
}

Json colength_json(const ColengthResult& c) {
  Json dims = Json::array();
  for (auto d : c.dims) dims.push_back(d);
  Json out{{"status", to_string(c.status)}, {"dims", dims}, {"last_level", c.last_level}};
  if (c.finite()) {
    out["value"] = c.value;
    out["stabilized_at"] = c.stabilized_at;
  }
  if (c.free_direction) out["free_direction"] = {{"component", c.free_direction->first}, {"variable", c.free_direction->second}};
  return out;
}

// ---- ideal and module calculus ----

void cmd_gb(Context& cx) {
  auto pf = cx.input();
  auto m = pf.module(0);
  Basis b = groebner_basis(m);
  auto gens = b.to_strings();
  cx.text << "Groebner basis of " << label_of(pf, 0) << " (degrevlex, " << gens.size() << " elements):\n";
  for (const auto& g : gens) cx.text << "  " << g << "\n";
  cx.result = {{"module", label_of(pf, 0)}, {"rank", m.rank()}, {"order", "degrevlex"}, {"basis", gens}};
}

void cmd_member(Context& cx) {
  auto pf = cx.input();
  auto m = pf.module(0);
  PolyVector h = file_element(pf);
  auto res = membership(h, m, true);
  cx.text << to_string(h) << (res.member ? " is in " : " is not in ") << label_of(pf, 0) << "\n";
  cx.result = {{"element", to_string(h)}, {"module", label_of(pf, 0)}, {"member", res.member},
               {"remainder", to_string(res.remainder)}};
  if (res.certificate) {
    bool ok = verify_certificate(h, m, *res.certificate);
    cx.result["certificate"] = strings(res.certificate->generator_coefficients);
    cx.result["certificate_verified"] = ok;
    cx.text << "  certificate " << list(res.certificate->generator_coefficients) << (ok ? " verified" : " FAILED")
            << "\n";
  } else {
    cx.text << "  normal form " << to_string(res.remainder) << "\n";
  }
}

void cmd_intersect(Context& cx) {
  auto pf = cx.input();
  auto a = with_relations(pf.ideal(0), pf.relations);
  auto b = with_relations(pf.ideal(1), pf.relations);
  auto c = ideal_intersection(a, b);
  auto gens = c.basis().to_strings();
  cx.text << label_of(pf, 0) << " cap " << label_of(pf, 1) << ":\n";
  for (const auto& g : gens) cx.text << "  " << g << "\n";
  cx.result = {{"ideals", {label_of(pf, 0), label_of(pf, 1)}}, {"intersection", gens}};
}

void cmd_radical_member(Context& cx) {
  auto pf = cx.input();
  PolyVector h = file_element(pf);
  if (h.size() != 1) throw AlgebraError("radical-member needs a polynomial element");
  auto r = radical_membership(h[0], with_relations(pf.ideal(0), pf.relations));
  cx.text << h[0].to_string() << (r.member ? " is in " : " is not shown to be in ") << "the radical of "
          << label_of(pf, 0);
  if (r.exponent) cx.text << " (least exponent " << *r.exponent << ")";
  cx.text << "\n";
  cx.result = {{"element", h[0].to_string()}, {"ideal", label_of(pf, 0)}, {"member", r.member},
               {"exponent", r.exponent ? Json(*r.exponent) : Json(nullptr)}, {"bound", r.bound}};
}

void cmd_colength(Context& cx) {
  auto pf = cx.input();
  auto c = local_colength(pf.module(0), cx.local);
  cx.text << "colength of " << label_of(pf, 0) << " at the origin: "
          << (c.finite() ? std::to_string(c.value) : to_string(c.status)) << "\n";
  cx.result = colength_json(c);
  cx.result["module"] = label_of(pf, 0);
}

void cmd_mult(Context& cx) {
  auto pf = cx.input();
  unsigned d = file_dimension(pf);
  auto r = hilbert_samuel(pf.ideal(0), d, pf.relations, cx.multiplicity);
  cx.text << "e(" << label_of(pf, 0) << ") = " << r.e << " (dimension " << d << ", " << to_string(r.method) << ")\n";
  if (!r.cross_check_note.empty()) cx.text << "  " << r.cross_check_note << "\n";
  cx.result = r.to_json();
}

void cmd_br_mult(Context& cx) {
  auto pf = cx.input();
  unsigned d = file_dimension(pf);
  auto r = buchsbaum_rim(pf.module(0), d, cx.multiplicity);
  cx.text << "e_BR(" << label_of(pf, 0) << ") = " << r.e << " (dimension " << d << ", rank " << r.rank << ")\n";
  if (!r.cross_check_note.empty()) cx.text << "  " << r.cross_check_note << "\n";
  cx.result = r.to_json();
}

ReductionContext reduction_context(const Context& cx, const ProblemFile& pf) {
  ReductionContext rc;
  rc.dimension = file_dimension(pf);
  rc.multiplicity = cx.multiplicity;
  rc.equidimensional_asserted = pf.equidimensional;
  return rc;
}

void cmd_is_reduction(Context& cx) {
  auto pf = cx.input();
  auto rc = reduction_context(cx, pf);
  rc.small_label = label_of(pf, 0);
  rc.large_label = label_of(pf, 1);
  auto v = is_reduction(pf.module(0), pf.module(1), rc);
  cx.verdict(rc.small_label + " reduction of " + rc.large_label, v);
  cx.result = to_json(v);
}

void cmd_icl(Context& cx) {
  auto pf = cx.input();
  ClosureContext cc;
  cc.reduction = reduction_context(cx, pf);
  cc.reduction.large_label = label_of(pf, 0);
  cc.probe_options = cx.probes;
  cc.probes = generate_probes(pf.ring, pf.relations, pf.curves, cx.probes);
  PolyVector h = file_element(pf);
  auto v = icl_certify(h, pf.module(0), cc);
  cx.verdict(to_string(h) + " in the integral closure of " + label_of(pf, 0), v);
  cx.result = to_json(v);
}

// ---- germ conditions ----

void cmd_whitney_w(Context& cx) {
  auto pf = cx.input();
  auto g = pf.germ();
  auto v = check_whitney_w(g, default_probes(g, pf.curves, cx.probes), cx.equising);
  cx.verdict("condition W", v);
  cx.result = to_json(v);
}

void cmd_relative(Context& cx, RelativeMode mode) {
  auto pf = cx.input();
  auto g = pf.germ();
  auto v = check_AF_WF(g, default_probes(g, pf.curves, cx.probes), mode, cx.equising);
  cx.verdict(mode == RelativeMode::AF ? "condition A_F" : "condition W_F", v);
  cx.result = to_json(v);
}

void cmd_blindness(Context& cx) {
  auto pf = cx.input();
  auto f = pf.germ();
  auto g = pf.second_structure();
  WitnessOptions wo;
  if (!pf.K.empty()) wo.K = pf.K;
  auto rep = structure_blindness_check(f, g, default_probes(f, pf.curves, cx.probes), wo);
  cx.text << rep.to_text();
  cx.result = rep.to_json();
  if (rep.disagreements > 0) cx.exit_code = kExitSentinel;
}

std::vector<Hyperplane> file_hyperplanes(const ProblemFile& pf) {
  if (pf.hyperplanes.empty()) throw AlgebraError("problem file has no `hyperplane:` lines");
  return pf.hyperplanes;
}

void cmd_tangent_hyperplane(Context& cx) {
  auto pf = cx.input();
  auto g = pf.germ();
  bool family = g.k() > 0;
  if (family) g = specialize_fiber(g, std::vector<Rational>(g.k(), Rational(0)));
  if (family) cx.text << "family given: working in the fiber at y = 0\n";
  Json rows = Json::array();
  for (const auto& h : file_hyperplanes(pf)) {
    Hyperplane fh = family ? h.iota() : h;
    auto v = limiting_tangent_hyperplane(g, fh, cx.equising);
    cx.verdict(fh.to_string(g.ring), v);
    rows.push_back({{"hyperplane", fh.to_string(g.ring)}, {"verdict", to_json(v)}});
  }
  cx.result = {{"fiber_at_origin", family}, {"hyperplanes", rows}};
}

void cmd_w_generic(Context& cx) {
  auto pf = cx.input();
  auto g = pf.germ();
  auto probes = default_probes(g, pf.curves, cx.probes);
  Json rows = Json::array();
  for (const auto& h : file_hyperplanes(pf)) {
    auto v = w_generic_check(g, h, probes, cx.equising);
    cx.verdict(h.to_string(g.ring), v);
    rows.push_back({{"hyperplane", h.to_string(g.ring)}, {"verdict", to_json(v)}});
  }
  cx.result = {{"hyperplanes", rows}};
}

void cmd_w_generic_seq(Context& cx) {
  auto pf = cx.input();
  auto rep = w_generic_sequence(pf.germ(), file_hyperplanes(pf), cx.equising);
  cx.text << rep.to_text();
  cx.result = rep.to_json();
  if (!rep.consistent) cx.exit_code = kExitSentinel;
}

void cmd_icis_scan(Context& cx) {
  auto pf = cx.input();
  auto g = pf.germ();
  auto hs = pf.hyperplanes;
  auto extra = sample_hyperplanes(g.n(), cx.job.sample, cx.job.seed);
  for (auto& h : extra) h.y_coeffs.assign(g.k(), Rational(0));
  hs.insert(hs.end(), extra.begin(), extra.end());
  auto rep = icis_correspondence_scan(g, hs, cx.equising);
  cx.text << rep.to_text(g.ring);
  cx.result = rep.to_json(g.ring);
  if (rep.contradictions > 0) cx.exit_code = kExitSentinel;
}

void cmd_secant(Context& cx) {
  auto pf = cx.input();
  if (pf.curves.empty()) throw AlgebraError("problem file has no curves");
  Json rows = Json::array();
  for (const auto& c : pf.curves) {
    auto s = limiting_Y_secant(c);
    std::string dir = "(";
    for (std::size_t i = 0; i < s.direction.size(); ++i) dir += (i ? ", " : "") + to_string(s.direction[i]);
    dir += ")";
    cx.text << "curve " << c.to_string() << ": limiting Y-secant " << dir << " (order " << s.order << ")\n";
    Json lifts = Json::array();
    for (const auto& h : pf.hyperplanes) {
      bool in = secant_in_hyperplane(s, h.z_coeffs);
      cx.text << "  " << h.to_string(pf.ring) << (in ? ": contains the secant, the curve lifts\n"
                                                        : ": misses the secant, no lift\n");
      lifts.push_back({{"hyperplane", h.to_string(pf.ring)}, {"lifts", in}});
    }
    rows.push_back({{"curve", c.to_string()}, {"direction", dir}, {"order", s.order}, {"hyperplanes", lifts}});
  }
  cx.result = {{"curves", rows}};
}

void cmd_grassmann(Context& cx) {
  auto pf = cx.input();
  auto g = pf.germ();
  std::size_t chart = cx.job.chart ? *cx.job.chart : g.n();
  if (chart == 0 || chart > g.n()) throw AlgebraError("chart must be between 1 and " + std::to_string(g.n()));
  auto mod = grassmann_modification(g, chart - 1);
  cx.text << "chart " << g.ring->name(g.ring->z_var(chart - 1)) << " = sum a_i z_i\n";
  cx.text << "G = " << list(mod.G.f) << "\n";
  Json ids = Json::array();
  for (const auto& id : mod.identities) {
    cx.text << "  " << id.identity << (id.holds ? ": holds\n" : ": FAILS\n");
    ids.push_back({{"identity", id.identity}, {"holds", id.holds}});
  }
  cx.result = {{"chart", chart}, {"a", mod.a_names}, {"G", strings(mod.G.f)}, {"identities", ids}};
}

// ---- the two-planes family ----

void cmd_example_1_1(Context& cx) {
  // Two 2-planes in C^5 over the t-line; the section is x = b*z + c*w with b = c = 1.
  const Rational b = 1, c = 1;
  auto family_ring = RingContext::make({"t"}, {"x", "y", "z", "w"});
  auto P = [](const RingPtr& r, const std::string& s) { return parse_polynomial(s, r); };
  GermPresentation family;
  family.ring = family_ring;
  for (const char* s : {"x*(w + t*y)", "x*z", "y*(w + t*y)", "y*z"}) family.f.push_back(P(family_ring, s));
  auto fiber = specialize_fiber(family, {Rational(0)});
  IdealSpec fam(family_ring, family.f);
  IdealSpec fam_radical = ideal_intersection(IdealSpec(family_ring, {P(family_ring, "x"), P(family_ring, "y")}),
                                             IdealSpec(family_ring, {P(family_ring, "w + t*y"), P(family_ring, "z")}));
  bool family_reduced = contains(fam, fam_radical) && contains(fam_radical, fam);

  auto R = RingContext::make({"t"}, {"y", "z", "w"});
  Substitution sub;
  sub.emplace(family_ring->index_of("x").value(), b * P(R, "z") + c * P(R, "w"));
  std::vector<Polynomial> section;
  for (const auto& p : family.f) section.push_back(substitute(p, sub, R));
  IdealSpec I(R, section);
  IdealSpec I1(R, {b * P(R, "z") + c * P(R, "w"), P(R, "y")});
  IdealSpec I2(R, {P(R, "w + t*y"), P(R, "z")});
  IdealSpec prod = ideal_product(I1, I2);
  bool is_product = contains(I, prod) && contains(prod, I);
  IdealSpec inter = ideal_intersection(I1, I2);
  Polynomial h = (b / c) * P(R, "z") + P(R, "w + t*y");

  auto in_inter = membership(h, inter, true);
  bool cert_ok = in_inter.certificate &&
                 verify_certificate({h}, SubmoduleSpec::from_ideal(inter), *in_inter.certificate);
  auto in_prod = membership(h, prod, false);
  auto nil = radical_membership(h, prod);

  IdealSpec m(R, {P(R, "t"), P(R, "y"), P(R, "z"), P(R, "w")});
  auto e_prod = hilbert_samuel(m, 2, prod.generators(), cx.multiplicity);
  auto e_red = hilbert_samuel(m, 2, inter.generators(), cx.multiplicity);

  auto& os = cx.text;
  os << "family X in C^5 over t: " << list(family.f) << "\n";
  os << "fiber at t = 0: " << list(fiber.f) << "\n";
  os << "family ideal equals (x, y) cap (w + t*y, z): " << (family_reduced ? "yes" : "no") << "\n";
  os << "hyperplane H: x = z + w (b = c = 1); section generators " << list(section) << "\n";
  os << "I1 = " << list(I1.generators()) << ", I2 = " << list(I2.generators()) << "\n";
  os << "section ideal equals I1*I2: " << (is_product ? "yes" : "no") << "\n";
  os << "I1 cap I2 = (";
  auto inter_gens = inter.basis().to_strings();
  for (std::size_t i = 0; i < inter_gens.size(); ++i) os << (i ? ", " : "") << inter_gens[i];
  os << ")\n";
  os << h.to_string() << (in_inter.member ? " is in I1 cap I2" : " is NOT in I1 cap I2")
     << (cert_ok ? " (certificate verified)" : "") << "\n";
  os << h.to_string() << (in_prod.member ? " is in I1*I2" : " is not in I1*I2; normal form ")
     << (in_prod.member ? "" : in_prod.remainder[0].to_string()) << "\n";
  os << "nilpotent modulo I1*I2 with exponent " << (nil.exponent ? std::to_string(*nil.exponent) : "none") << "\n";
  os << "Hilbert-Samuel multiplicity of the maximal ideal: " << e_prod.e << " on I1*I2, " << e_red.e
     << " on I1 cap I2\n";

  cx.result = {{"b", to_string(b)},
               {"c", to_string(c)},
               {"family", strings(family.f)},
               {"fiber_t0", strings(fiber.f)},
               {"family_reduced", family_reduced},
               {"section", strings(section)},
               {"I1", strings(I1.generators())},
               {"I2", strings(I2.generators())},
               {"section_is_product", is_product},
               {"intersection", inter_gens},
               {"element", h.to_string()},
               {"in_intersection", in_inter.member},
               {"certificate_verified", cert_ok},
               {"in_product", in_prod.member},
               {"product_remainder", in_prod.remainder[0].to_string()},
               {"nilpotent_exponent", nil.exponent ? Json(*nil.exponent) : Json(nullptr)},
               {"e_product", e_prod.e},
               {"e_radical", e_red.e},
               {"multiplicities_agree", e_prod.e == e_red.e}};
  if (e_prod.e != e_red.e) cx.exit_code = kExitSentinel;
}

using Handler = std::function<void(Context&)>;

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> table = {
      {"gb", cmd_gb},
      {"member", cmd_member},
      {"intersect", cmd_intersect},
      {"radical-member", cmd_radical_member},
      {"colength", cmd_colength},
      {"mult", cmd_mult},
      {"br-mult", cmd_br_mult},
      {"is-reduction", cmd_is_reduction},
      {"icl", cmd_icl},
      {"whitney-w", cmd_whitney_w},
      {"af", [](Context& cx) { cmd_relative(cx, RelativeMode::AF); }},
      {"wf", [](Context& cx) { cmd_relative(cx, RelativeMode::WF); }},
      {"blindness", cmd_blindness},
      {"tangent-hyperplane", cmd_tangent_hyperplane},
      {"w-generic", cmd_w_generic},
      {"w-generic-seq", cmd_w_generic_seq},
      {"icis-scan", cmd_icis_scan},
      {"secant", cmd_secant},
      {"grassmann", cmd_grassmann},
      {"example-1-1", cmd_example_1_1},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {
      "gb",        "member",    "intersect", "radical-member",     "colength",  "mult",          "br-mult",
      "is-reduction", "icl",    "whitney-w", "af",                 "wf",        "blindness",     "tangent-hyperplane",
      "w-generic", "w-generic-seq", "icis-scan", "secant",         "grassmann", "example-1-1"};
  return names;
}

JobResult run_job(const JobSpec& job) {
  JobResult out;
  auto it = handlers().find(job.command);
  if (it == handlers().end()) {
    out.exit_code = kExitInputError;
    out.error = "unknown command `" + job.command + "`";
    return out;
  }
  Context cx(job);
  try {
    it->second(cx);
  } catch (const ParseError& e) {
    out.exit_code = kExitInputError;
    std::string where = job.inputs.empty() ? std::string("input") : job.inputs.front();
    out.error = where + ":" + e.what();  // what() starts with line:column
    return out;
  } catch (const InputError& e) {
    out.exit_code = kExitInputError;
    out.error = e.what();
    return out;
  } catch (const AlgebraError& e) {
    out.exit_code = kExitInputError;
    out.error = e.what();
    return out;
  }
  Json inputs = Json::array();
  for (const auto& p : job.inputs) inputs.push_back(p);
  Json doc{{"format", kReportFormat},
           {"command", job.command},
           {"inputs", inputs},
           {"seed", job.seed},
           {"options", cx.options_json()},
           {"exit_code", cx.exit_code},
           {"result", cx.result}};
  std::ostringstream report;
  report << "equising " << job.command;
  for (const auto& p : job.inputs) report << " " << p;
  report << "\nseed " << job.seed << "\n\n" << cx.text.str();
  if (cx.exit_code == kExitSentinel) report << "\nSENTINEL: result contradicts the theory this check relies on\n";
  report << "\n--- machine-readable ---\n" << doc.dump(2) << "\n";
  out.exit_code = cx.exit_code;
  out.report = report.str();
  out.result = std::move(cx.result);
  return out;
}

void write_atomically(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw InputError("cannot write `" + tmp.string() + "`");
    os << contents;
    if (!os.flush()) throw InputError("write to `" + tmp.string() + "` failed");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw InputError("cannot rename onto `" + path + "`: " + ec.message());
  }
}

}  // namespace equising
