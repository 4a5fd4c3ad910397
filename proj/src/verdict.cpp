#include "equising/verdict.hpp"

#include <sstream>

namespace equising {

std::string to_string(Status s) {
  switch (s) {
    case Status::CertifiedTrue: return "CERTIFIED-TRUE";
    case Status::CertifiedFalse: return "CERTIFIED-FALSE";
    case Status::Refuted: return "REFUTED";
    case Status::NotRefuted: return "NOT-REFUTED";
    case Status::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

Verdict& Verdict::step(std::string criterion, std::string anchor, Json data) {
  provenance.push_back({std::move(criterion), std::move(anchor), std::move(data)});
  return *this;
}

Json to_json(const Verdict& v) {
  Json j;
  j["claim"] = v.claim;
  j["status"] = to_string(v.status);
  j["outcome"] = v.outcome();
  if (v.probe_count) j["probe_count"] = v.probe_count;
  j["assumptions"] = v.assumptions;
  if (v.curve_witness) {
    const auto& w = *v.curve_witness;
    j["witness"] = {{"kind", "curve"},
                    {"probe_index", w.probe_index},
                    {"curve", w.curve},
                    {"element_order", w.element_order},
                    {"module_order", w.module_order},
                    {"strict", w.strict}};
  }
  if (v.multiplicity_witness) {
    const auto& w = *v.multiplicity_witness;
    Json m = {{"kind", "multiplicity"}, {"small", w.small_label}, {"large", w.large_label}};
    m["small_e"] = w.small_e ? Json(*w.small_e) : Json("infinite colength");
    m["large_e"] = w.large_e ? Json(*w.large_e) : Json("infinite colength");
    j["certificate"] = m;
  }
  Json steps = Json::array();
  for (const auto& s : v.provenance) steps.push_back({{"criterion", s.criterion}, {"anchor", s.anchor}, {"data", s.data}});
  j["provenance"] = steps;
  return j;
}

std::string to_text(const Verdict& v, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  std::ostringstream os;
  os << pad << v.claim << ": " << v.outcome();
  if (v.outcome() != to_string(v.status)) os << " (" << to_string(v.status) << ")";
  os << "\n";
  if (!v.assumptions.empty()) {
    os << pad << "  assumptions:";
    for (const auto& a : v.assumptions) os << " " << a << ";";
    os << "\n";
  }
  if (v.curve_witness) {
    const auto& w = *v.curve_witness;
    os << pad << "  witness: probe " << w.probe_index << " " << w.curve << " orders " << w.element_order
       << " vs " << w.module_order << (w.strict ? " (strict)" : "") << "\n";
  }
  if (v.multiplicity_witness) {
    const auto& w = *v.multiplicity_witness;
    auto show = [](const std::optional<std::uint64_t>& e) { return e ? std::to_string(*e) : std::string("inf"); };
    os << pad << "  multiplicities: e(" << w.small_label << ") = " << show(w.small_e) << ", e(" << w.large_label
       << ") = " << show(w.large_e) << "\n";
  }
  for (const auto& s : v.provenance) {
    os << pad << "  - " << s.criterion << " [" << s.anchor << "]";
    if (!s.data.empty()) os << " " << s.data.dump();
    os << "\n";
  }
  return os.str();
}

}  // namespace equising
