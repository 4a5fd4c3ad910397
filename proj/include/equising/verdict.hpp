#pragma once

// Three-valued verdicts with a provenance trail.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace equising {

using Json = nlohmann::ordered_json;

enum class Status { CertifiedTrue, CertifiedFalse, Refuted, NotRefuted, Inconclusive };

std::string to_string(Status s);

struct ProvenanceStep {
  std::string criterion;
  std::string anchor;
  Json data = Json::object();
};

// A probe curve along which the pulled-back element is not in the pulled-back module.
struct CurveWitness {
  std::size_t probe_index = 0;
  std::string curve;
  // Valuation of the pulled-back element at the deciding pivot and the
  // valuation the module requires there (plus one when strict).
  long element_order = 0;
  long module_order = 0;
  bool strict = false;
};

struct MultiplicityWitness {
  std::string small_label;
  std::string large_label;
  std::optional<std::uint64_t> small_e;
  std::optional<std::uint64_t> large_e;
};

struct Verdict {
  std::string claim;
  Status status = Status::Inconclusive;
  // Domain phrasing of the outcome, e.g. "NOT-TANGENT"; defaults to the status name.
  std::string label;
  std::vector<ProvenanceStep> provenance;
  std::vector<std::string> assumptions;
  std::optional<CurveWitness> curve_witness;
  std::optional<MultiplicityWitness> multiplicity_witness;
  std::size_t probe_count = 0;

  std::string outcome() const { return label.empty() ? to_string(status) : label; }
  Verdict& step(std::string criterion, std::string anchor, Json data = Json::object());
};

Json to_json(const Verdict& v);
// Indented text tree, one node per provenance step.
std::string to_text(const Verdict& v, int indent = 0);

}  // namespace equising
