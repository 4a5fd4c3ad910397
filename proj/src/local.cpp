#include "equising/local.hpp"

#include <algorithm>

namespace equising {

std::string to_string(ColengthStatus s) {
  switch (s) {
    case ColengthStatus::Finite: return "finite";
    case ColengthStatus::Infinite: return "infinite";
    case ColengthStatus::Undetermined: return "undetermined";
  }
  return "?";
}

namespace {

// Per-component leading monomials of a truncated local basis.
std::vector<std::vector<Monomial>> truncated_leads(const SubmoduleSpec& module, unsigned degree) {
  const MonomialOrder order = MonomialOrder::local();
  std::vector<kernel::Vec> inputs;
  for (const auto& g : module.presentation()) inputs.push_back(kernel::from_vector(g, order, degree));
  kernel::BuchbergerConfig cfg;
  cfg.order = order;
  cfg.truncation = degree;
  cfg.product_criterion = false;
  std::vector<std::vector<Monomial>> leads(module.rank());
  for (const auto& e : kernel::buchberger(inputs, cfg)) {
    const auto& lt = e.poly.back();
    leads[lt.comp].push_back(lt.mono);
  }
  return leads;
}

std::size_t last_nonzero(const Monomial& m) {
  for (std::size_t v = m.arity(); v-- > 0;)
    if (m[v] != 0) return v;
  return 0;
}

bool divisible(const Monomial& m, const std::vector<Monomial>& leads) {
  return std::any_of(leads.begin(), leads.end(), [&](const Monomial& l) { return l.divides(m); });
}

// Standard monomials grouped by degree below `degree`; every one arises
// from a standard monomial one degree lower by multiplying with a variable
// of index at least its last nonzero index.
std::vector<std::vector<StandardMonomial>> enumerate(const std::vector<std::vector<Monomial>>& leads,
                                                     std::size_t arity, unsigned degree) {
  std::vector<std::vector<StandardMonomial>> by_degree;
  if (degree == 0) return by_degree;
  std::vector<StandardMonomial> level;
  for (std::size_t c = 0; c < leads.size(); ++c) {
    Monomial one(arity);
    if (!divisible(one, leads[c])) level.push_back({one, c});
  }
  by_degree.push_back(level);
  for (unsigned d = 1; d < degree && !level.empty(); ++d) {
    std::vector<StandardMonomial> next;
    for (const auto& s : level) {
      const std::size_t start = s.mono.is_one() ? 0 : last_nonzero(s.mono);
      for (std::size_t v = start; v < arity; ++v) {
        Monomial m = s.mono * Monomial::variable(arity, v);
        if (!divisible(m, leads[s.comp])) next.push_back({std::move(m), s.comp});
      }
    }
    level = std::move(next);
    by_degree.push_back(level);
  }
  by_degree.resize(degree);
  return by_degree;
}

std::vector<unsigned> levels(unsigned cap) {
  std::vector<unsigned> out;
  for (unsigned n = 2; n < cap; n *= 2) out.push_back(n);
  out.push_back(std::max(cap, 1u));
  return out;
}

}  // namespace

std::vector<std::vector<StandardMonomial>> truncated_standard_monomials(const SubmoduleSpec& module,
                                                                        const TruncationContext& ctx) {
  if (ctx.degree == 0) throw AlgebraError("truncation degree must be positive");
  return enumerate(truncated_leads(module, ctx.degree), module.ring()->arity(), ctx.degree);
}

std::optional<std::pair<std::size_t, std::size_t>> infinite_direction(const SubmoduleSpec& module) {
  const RingPtr& ring = module.ring();
  const std::size_t n = ring->arity();
  const MonomialOrder order = MonomialOrder::homogenized_local();
  std::vector<kernel::Vec> inputs;
  for (const auto& g : module.presentation()) {
    long top = -1;
    for (const auto& c : g) top = std::max(top, c.total_degree());
    if (top < 0) continue;
    kernel::Vec v;
    for (std::size_t k = 0; k < g.size(); ++k) {
      for (const auto& [m, c] : g[k].terms()) {
        auto e = m.exponents();
        e.push_back(static_cast<std::uint32_t>(top - static_cast<long>(m.degree())));
        v.push_back({Monomial(std::move(e)), static_cast<std::uint32_t>(k), c});
      }
    }
    kernel::canonicalize(v, order);
    inputs.push_back(std::move(v));
  }
  kernel::BuchbergerConfig cfg;
  cfg.order = order;
  cfg.product_criterion = false;
  std::vector<std::vector<bool>> bounded(module.rank(), std::vector<bool>(n, false));
  for (const auto& e : kernel::buchberger(inputs, cfg)) {
    const auto& lt = e.poly.back();
    std::size_t support = 0;
    std::size_t var = 0;
    for (std::size_t v = 0; v < n; ++v) {
      if (lt.mono[v] != 0) {
        ++support;
        var = v;
      }
    }
    if (support == 0) std::fill(bounded[lt.comp].begin(), bounded[lt.comp].end(), true);
    if (support == 1) bounded[lt.comp][var] = true;
  }
  for (std::size_t c = 0; c < bounded.size(); ++c)
    for (std::size_t v = 0; v < n; ++v)
      if (!bounded[c][v]) return std::make_pair(c, v);
  return std::nullopt;
}

ColengthResult local_colength(const SubmoduleSpec& module, const LocalOptions& options) {
  ColengthResult out;
  const std::size_t arity = module.ring()->arity();
  bool probed = false;
  for (unsigned level : levels(options.cap)) {
    auto by_degree = enumerate(truncated_leads(module, level), arity, level);
    out.last_level = level;
    out.dims.assign(1, 0);
    std::uint64_t total = 0;
    for (const auto& d : by_degree) out.dims.push_back(total += d.size());
    // dims[n] == dims[n + 1] exactly when degree n has no standard monomial.
    for (unsigned n = 0; n + 1 <= level && n < by_degree.size(); ++n) {
      if (!by_degree[n].empty()) continue;
      out.status = ColengthStatus::Finite;
      out.stabilized_at = n;
      out.value = out.dims[n];
      for (unsigned d = 0; d < n; ++d)
        out.basis.insert(out.basis.end(), by_degree[d].begin(), by_degree[d].end());
      return out;
    }
    if (!probed && level >= options.infinite_probe_level) {
      probed = true;
      if (auto dir = infinite_direction(module)) {
        out.status = ColengthStatus::Infinite;
        out.free_direction = dir;
        return out;
      }
    }
  }
  if (!probed) {
    if (auto dir = infinite_direction(module)) {
      out.status = ColengthStatus::Infinite;
      out.free_direction = dir;
      return out;
    }
  }
  out.status = ColengthStatus::Undetermined;
  return out;
}

ColengthResult local_colength(const IdealSpec& ideal, const LocalOptions& options) {
  return local_colength(SubmoduleSpec::from_ideal(ideal), options);
}

}  // namespace equising
