#include "equising/kernel.hpp"

#include <algorithm>
#include <utility>

namespace equising {

MonomialOrder MonomialOrder::elimination(std::vector<bool> eliminate) {
  MonomialOrder o(Kind::Elimination);
  o.eliminate_ = std::move(eliminate);
  return o;
}

namespace {

int degrevlex_tie(const Monomial& a, const Monomial& b, std::size_t end) {
  for (std::size_t i = end; i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
  }
  return 0;
}

int sign_u64(std::uint64_t a, std::uint64_t b) { return a < b ? -1 : (a > b ? 1 : 0); }

}  // namespace

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
  switch (kind_) {
    case Kind::DegRevLex: {
      if (int s = sign_u64(a.degree(), b.degree())) return s;
      return degrevlex_tie(a, b, a.arity());
    }
    case Kind::Lex: {
      for (std::size_t i = 0; i < a.arity(); ++i)
        if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
      return 0;
    }
    case Kind::Elimination: {
      std::uint64_t ea = 0, eb = 0;
      for (std::size_t i = 0; i < a.arity(); ++i) {
        if (i < eliminate_.size() && eliminate_[i]) {
          ea += a[i];
          eb += b[i];
        }
      }
      if (int s = sign_u64(ea, eb)) return s;
      if (int s = sign_u64(a.degree(), b.degree())) return s;
      return degrevlex_tie(a, b, a.arity());
    }
    case Kind::LocalDegRevLex: {
      if (int s = sign_u64(a.degree(), b.degree())) return -s;
      return degrevlex_tie(a, b, a.arity());
    }
    case Kind::HomogenizedLocal: {
      if (int s = sign_u64(a.degree(), b.degree())) return s;
      const std::size_t h = a.arity() - 1;
      if (a[h] != b[h]) return a[h] > b[h] ? 1 : -1;
      return degrevlex_tie(a, b, h);
    }
  }
  return 0;
}

int MonomialOrder::compare(const Monomial& a, std::uint32_t ca, const Monomial& b,
                           std::uint32_t cb) const {
  if (module_ == Module::PositionOverTerm) {
    if (ca != cb) return ca < cb ? 1 : -1;
    return compare(a, b);
  }
  if (int s = compare(a, b)) return s;
  if (ca != cb) return ca < cb ? 1 : -1;
  return 0;
}

std::string MonomialOrder::name() const {
  std::string base;
  switch (kind_) {
    case Kind::DegRevLex: base = "degrevlex"; break;
    case Kind::Lex: base = "lex"; break;
    case Kind::Elimination: base = "elimination"; break;
    case Kind::LocalDegRevLex: base = "local-degrevlex"; break;
    case Kind::HomogenizedLocal: base = "homogenized-local"; break;
  }
  return base + (module_ == Module::PositionOverTerm ? "/pot" : "/top");
}

namespace kernel {

namespace {

bool less(const MonomialOrder& order, const Term& a, const Term& b) {
  return order.compare(a.mono, a.comp, b.mono, b.comp) < 0;
}

std::uint64_t vec_degree(const Vec& v) {
  std::uint64_t d = 0;
  for (const auto& t : v) d = std::max(d, t.mono.degree());
  return d;
}

}  // namespace

void canonicalize(Vec& v, const MonomialOrder& order, unsigned truncation) {
  if (truncation > 0)
    std::erase_if(v, [&](const Term& t) { return t.mono.degree() >= truncation; });
  std::sort(v.begin(), v.end(), [&](const Term& a, const Term& b) { return less(order, a, b); });
  Vec out;
  out.reserve(v.size());
  for (auto& t : v) {
    if (!out.empty() && out.back().comp == t.comp && out.back().mono == t.mono) {
      out.back().coef += t.coef;
      if (out.back().coef == 0) out.pop_back();
    } else if (t.coef != 0) {
      out.push_back(std::move(t));
    }
  }
  v = std::move(out);
}

Vec from_polynomial(const Polynomial& p, const MonomialOrder& order, std::uint32_t comp,
                    unsigned truncation) {
  Vec v;
  v.reserve(p.size());
  for (const auto& [m, c] : p.terms()) v.push_back(Term{m, comp, c});
  canonicalize(v, order, truncation);
  return v;
}

Vec from_vector(const PolyVector& pv, const MonomialOrder& order, unsigned truncation) {
  Vec v;
  for (std::size_t i = 0; i < pv.size(); ++i)
    for (const auto& [m, c] : pv[i].terms()) v.push_back(Term{m, static_cast<std::uint32_t>(i), c});
  canonicalize(v, order, truncation);
  return v;
}

Polynomial to_polynomial(const Vec& v, const RingPtr& ring) {
  Polynomial p(ring);
  for (const auto& t : v) p.add_term(t.mono, t.coef);
  return p;
}

PolyVector to_vector(const Vec& v, const RingPtr& ring, std::size_t rank) {
  PolyVector out = zero_vector(ring, rank);
  for (const auto& t : v) {
    if (t.comp >= rank) throw AlgebraError("term component exceeds module rank");
    out[t.comp].add_term(t.mono, t.coef);
  }
  return out;
}

Vec scaled(const Vec& b, const Rational& c, const Monomial& m, const MonomialOrder& order,
           unsigned truncation) {
  Vec out;
  if (c == 0) return out;
  out.reserve(b.size());
  const auto md = m.degree();
  for (const auto& t : b) {
    if (truncation > 0 && t.mono.degree() + md >= truncation) continue;
    out.push_back(Term{t.mono * m, t.comp, t.coef * c});
  }
  (void)order;
  return out;
}

Vec add_scaled(const Vec& a, const Rational& c, const Monomial& m, const Vec& b,
               const MonomialOrder& order, unsigned truncation) {
  Vec sb = scaled(b, c, m, order, truncation);
  Vec out;
  out.reserve(a.size() + sb.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < sb.size()) {
    const int s = order.compare(a[i].mono, a[i].comp, sb[j].mono, sb[j].comp);
    if (s < 0) {
      out.push_back(a[i++]);
    } else if (s > 0) {
      out.push_back(std::move(sb[j++]));
    } else {
      Rational sum = a[i].coef + sb[j].coef;
      if (sum != 0) out.push_back(Term{a[i].mono, a[i].comp, std::move(sum)});
      ++i;
      ++j;
    }
  }
  for (; i < a.size(); ++i) out.push_back(a[i]);
  for (; j < sb.size(); ++j) out.push_back(std::move(sb[j]));
  return out;
}

void make_monic(Vec& v) {
  if (v.empty()) return;
  const Rational lc = v.back().coef;
  if (lc == 1) return;
  for (auto& t : v) t.coef /= lc;
}

Vec reduce(Vec f, const std::vector<const Vec*>& reducers, const MonomialOrder& order,
           unsigned truncation, bool full, std::vector<DivisionStep>* steps) {
  Vec rem;
  while (!f.empty()) {
    const Term& lt = f.back();
    std::size_t hit = reducers.size();
    for (std::size_t r = 0; r < reducers.size(); ++r) {
      const Vec& g = *reducers[r];
      if (g.empty()) continue;
      const Term& lg = g.back();
      if (lg.comp == lt.comp && lg.mono.divides(lt.mono)) {
        hit = r;
        break;
      }
    }
    if (hit == reducers.size()) {
      if (!full) break;
      rem.push_back(std::move(f.back()));
      f.pop_back();
      continue;
    }
    const Term& lg = reducers[hit]->back();
    Rational q = lt.coef / lg.coef;
    Monomial m = lt.mono / lg.mono;
    if (steps) steps->push_back(DivisionStep{hit, q, m});
    f = add_scaled(f, -q, m, *reducers[hit], order, truncation);
  }
  if (!full) return f;
  std::reverse(rem.begin(), rem.end());
  return rem;
}

const MonomialOrder& cofactor_order() {
  static const MonomialOrder order = MonomialOrder::degrevlex();
  return order;
}

namespace {

struct Element {
  Vec poly;
  Vec cof;
  std::uint64_t sugar = 0;
  bool redundant = false;
};

struct Pair {
  std::size_t i;
  std::size_t j;
  Monomial lcm;
  std::uint32_t comp;
  std::uint64_t sugar;
};

class Engine {
 public:
  explicit Engine(const BuchbergerConfig& cfg) : cfg_(cfg) {}

  void add_input(Vec f, Vec cof) {
    canonicalize(f, cfg_.order, cfg_.truncation);
    if (f.empty()) return;
    const auto sugar = vec_degree(f);
    insert(std::move(f), std::move(cof), sugar);
  }

  void run() {
    while (!pairs_.empty()) {
      auto best = std::min_element(pairs_.begin(), pairs_.end(), [&](const Pair& a, const Pair& b) {
        // Normal strategy, sugar breaks ties.
        if (int s = cfg_.order.compare(a.lcm, a.comp, b.lcm, b.comp)) return s < 0;
        if (a.sugar != b.sugar) return a.sugar < b.sugar;
        return std::tie(a.i, a.j) < std::tie(b.i, b.j);
      });
      Pair p = *best;
      pairs_.erase(best);
      process(p);
    }
  }

  std::vector<BasisElement> finish() {
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < elems_.size(); ++i)
      if (!elems_[i].redundant) keep.push_back(i);
    // Interreduce tails against the minimal basis.
    std::vector<Element> reduced;
    for (std::size_t a : keep) {
      std::vector<const Vec*> others;
      std::vector<std::size_t> idx;
      for (std::size_t b : keep) {
        if (b == a) continue;
        others.push_back(&elems_[b].poly);
        idx.push_back(b);
      }
      std::vector<DivisionStep> steps;
      Vec r = reduce(elems_[a].poly, others, cfg_.order, cfg_.truncation, true,
                     cfg_.track ? &steps : nullptr);
      Vec cof = elems_[a].cof;
      for (const auto& s : steps) cof = add_scaled(cof, -s.coef, s.mono, elems_[idx[s.reducer]].cof, cofactor_order());
      Element e{std::move(r), std::move(cof), 0, false};
      normalize(e);
      reduced.push_back(std::move(e));
    }
    std::sort(reduced.begin(), reduced.end(), [&](const Element& x, const Element& y) {
      return less(cfg_.order, x.poly.back(), y.poly.back());
    });
    std::vector<BasisElement> out;
    out.reserve(reduced.size());
    for (auto& e : reduced) out.push_back(BasisElement{std::move(e.poly), std::move(e.cof)});
    return out;
  }

 private:
  void normalize(Element& e) {
    if (e.poly.empty()) return;
    const Rational lc = e.poly.back().coef;
    if (lc == 1) return;
    for (auto& t : e.poly) t.coef /= lc;
    for (auto& t : e.cof) t.coef /= lc;
  }

  std::vector<const Vec*> active(std::vector<std::size_t>& idx) const {
    std::vector<const Vec*> out;
    idx.clear();
    for (std::size_t i = 0; i < elems_.size(); ++i) {
      if (elems_[i].redundant) continue;
      out.push_back(&elems_[i].poly);
      idx.push_back(i);
    }
    return out;
  }

  // Fraction-free full reduction: e <- a*e - b*m*g with integral a, b,
  // followed by content removal. Keeps coefficient growth in check.
  void reduce_into(Element& e) {
    std::vector<std::size_t> idx;
    auto reducers = active(idx);
    make_integral(e);
    Vec rem;
    Vec& f = e.poly;
    while (!f.empty()) {
      const Term& lt = f.back();
      std::size_t hit = reducers.size();
      for (std::size_t r = 0; r < reducers.size(); ++r) {
        const Term& lg = reducers[r]->back();
        if (lg.comp == lt.comp && lg.mono.divides(lt.mono)) {
          hit = r;
          break;
        }
      }
      if (hit == reducers.size()) {
        rem.push_back(std::move(f.back()));
        f.pop_back();
        continue;
      }
      const Element& g = elems_[idx[hit]];
      const Term& lg = g.poly.back();
      const Monomial m = lt.mono / lg.mono;
      // lg.coef and lt.coef are integers.
      Integer ga = lg.coef.get_num();
      Integer fb = lt.coef.get_num();
      Integer d = gcd(ga, fb);
      ga /= d;
      fb /= d;
      if (ga != 1) {
        const Rational a(ga);
        for (auto& t : f) t.coef *= a;
        for (auto& t : rem) t.coef *= a;
        for (auto& t : e.cof) t.coef *= a;
      }
      const Rational b(fb);
      e.sugar = std::max(e.sugar, g.sugar + m.degree());
      f = add_scaled(f, -b, m, g.poly, cfg_.order, cfg_.truncation);
      if (cfg_.track) e.cof = add_scaled(e.cof, -b, m, g.cof, cofactor_order());
    }
    std::reverse(rem.begin(), rem.end());
    f = std::move(rem);
    remove_content(e);
  }

  static void make_integral(Element& e) {
    Integer l = 1;
    for (const auto& t : e.poly) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coef.get_den_mpz_t());
    if (l == 1) return;
    const Rational s(l);
    for (auto& t : e.poly) t.coef *= s;
    for (auto& t : e.cof) t.coef *= s;
  }

  static void remove_content(Element& e) {
    if (e.poly.empty()) return;
    Integer c = 0;
    for (const auto& t : e.poly) {
      mpz_gcd(c.get_mpz_t(), c.get_mpz_t(), t.coef.get_num_mpz_t());
      if (c == 1) break;
    }
    if (e.poly.back().coef < 0) c = -c;
    if (c == 1) return;
    Rational inv(Integer(1), c);
    inv.canonicalize();
    for (auto& t : e.poly) t.coef *= inv;
    for (auto& t : e.cof) t.coef *= inv;
  }

  void insert(Vec f, Vec cof, std::uint64_t sugar) {
    Element e{std::move(f), std::move(cof), sugar, false};
    reduce_into(e);
    if (e.poly.empty()) return;
    elems_.push_back(std::move(e));
    update(elems_.size() - 1);
  }

  bool product_criterion_applies(const Term& a, const Term& b) const {
    if (!cfg_.product_criterion || !cfg_.order.is_global() || cfg_.truncation > 0) return false;
    if (a.comp != 0 || b.comp != 0) return false;
    for (std::size_t v = 0; v < a.mono.arity(); ++v)
      if (a.mono[v] > 0 && b.mono[v] > 0) return false;
    return true;
  }

  void update(std::size_t h) {
    const Term& lh = elems_[h].poly.back();
    struct Cand {
      std::size_t g;
      Monomial lcm;
      bool coprime;
    };
    std::vector<Cand> c;
    for (std::size_t g = 0; g < h; ++g) {
      if (elems_[g].redundant) continue;
      const Term& lg = elems_[g].poly.back();
      if (lg.comp != lh.comp) continue;
      c.push_back(Cand{g, lg.mono.lcm(lh.mono), product_criterion_applies(lg, lh)});
    }
    std::vector<Cand> d;
    for (std::size_t k = 0; k < c.size(); ++k) {
      bool keep = c[k].coprime;
      if (!keep) {
        keep = true;
        for (std::size_t l = k + 1; l < c.size() && keep; ++l)
          if (c[l].lcm.divides(c[k].lcm)) keep = false;
        for (std::size_t l = 0; l < d.size() && keep; ++l)
          if (d[l].lcm.divides(c[k].lcm)) keep = false;
      }
      if (keep) d.push_back(c[k]);
    }
    std::vector<Pair> kept;
    for (auto& p : pairs_) {
      if (p.comp != lh.comp || !lh.mono.divides(p.lcm)) {
        kept.push_back(std::move(p));
        continue;
      }
      const Monomial li = elems_[p.i].poly.back().mono.lcm(lh.mono);
      const Monomial lj = elems_[p.j].poly.back().mono.lcm(lh.mono);
      if (li == p.lcm || lj == p.lcm) kept.push_back(std::move(p));
    }
    pairs_ = std::move(kept);
    for (auto& cand : d) {
      if (cand.coprime) continue;
      if (cfg_.truncation > 0 && cand.lcm.degree() >= cfg_.truncation) continue;
      const auto& eg = elems_[cand.g];
      const auto& eh = elems_[h];
      const auto sg = eg.sugar + cand.lcm.degree() - eg.poly.back().mono.degree();
      const auto sh = eh.sugar + cand.lcm.degree() - eh.poly.back().mono.degree();
      pairs_.push_back(Pair{cand.g, h, cand.lcm, lh.comp, std::max(sg, sh)});
    }
    for (std::size_t g = 0; g < h; ++g) {
      if (elems_[g].redundant) continue;
      const Term& lg = elems_[g].poly.back();
      if (lg.comp == lh.comp && lh.mono.divides(lg.mono)) elems_[g].redundant = true;
    }
  }

  void process(const Pair& p) {
    const auto& ei = elems_[p.i];
    const auto& ej = elems_[p.j];
    const Monomial mi = p.lcm / ei.poly.back().mono;
    const Monomial mj = p.lcm / ej.poly.back().mono;
    Integer ci = ei.poly.back().coef.get_num();
    Integer cj = ej.poly.back().coef.get_num();
    const Integer d = gcd(ci, cj);
    ci /= d;
    cj /= d;
    const Rational a(cj), b(ci);
    Vec s = add_scaled(scaled(ei.poly, a, mi, cfg_.order, cfg_.truncation), -b, mj, ej.poly, cfg_.order,
                       cfg_.truncation);
    Vec cof;
    if (cfg_.track)
      cof = add_scaled(scaled(ei.cof, a, mi, cofactor_order()), -b, mj, ej.cof, cofactor_order());
    if (s.empty()) return;
    insert(std::move(s), std::move(cof), p.sugar);
  }

  BuchbergerConfig cfg_;
  std::vector<Element> elems_;
  std::vector<Pair> pairs_;
};

}  // namespace

std::vector<BasisElement> buchberger(const std::vector<Vec>& inputs, const BuchbergerConfig& config) {
  if (config.track && config.truncation > 0)
    throw AlgebraError("cofactor tracking is not available under truncation");
  Engine engine(config);
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    Vec cof;
    if (config.track && !inputs[i].empty()) {
      const std::size_t arity = inputs[i].back().mono.arity();
      cof.push_back(Term{Monomial(arity), static_cast<std::uint32_t>(i), Rational(1)});
    }
    engine.add_input(inputs[i], std::move(cof));
  }
  engine.run();
  return engine.finish();
}

}  // namespace kernel
}  // namespace equising
