#pragma once

// Hilbert-Samuel and Buchsbaum-Rim multiplicities by finite differences of
// colengths, with a generic-reduction cross-check, and the reduction and
// integral-closure tests built on them.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "equising/curves.hpp"
#include "equising/local.hpp"
#include "equising/verdict.hpp"

namespace equising {

enum class MultiplicityMethod { FiniteDifference, GenericReduction };

std::string to_string(MultiplicityMethod m);

class MultiplicityError : public AlgebraError {
 public:
  using AlgebraError::AlgebraError;
};

struct MultiplicityOptions {
  // Equal consecutive top differences required.
  unsigned window = 3;
  unsigned max_samples = 14;
  std::uint64_t seed = 1;
  bool cross_check = true;
  // Fresh seeds tried before a cross-check disagreement is fatal.
  unsigned cross_check_attempts = 3;
  LocalOptions local;
};

struct MultiplicityResult {
  std::uint64_t e = 0;
  MultiplicityMethod method = MultiplicityMethod::FiniteDifference;
  std::vector<std::pair<unsigned, std::uint64_t>> samples;
  unsigned dimension = 0;
  std::size_t rank = 1;
  // Colength of the generic parameter module, when the cross-check ran.
  std::optional<std::uint64_t> generic_value;
  std::optional<std::uint64_t> generic_seed;
  std::string cross_check_note;

  Json to_json() const;
};

// e(I) for an ideal of finite colength in R / relations of local dimension d.
MultiplicityResult hilbert_samuel(const IdealSpec& ideal, unsigned d, const std::vector<Polynomial>& relations = {},
                                  const MultiplicityOptions& options = {});
// Buchsbaum-Rim multiplicity of a finite-colength submodule of R^p over
// R / relations of local dimension d.
MultiplicityResult buchsbaum_rim(const SubmoduleSpec& module, unsigned d, const MultiplicityOptions& options = {});

// Generators of R^n(M) inside Sym^n of the free module, as a submodule of
// rank binomial(p + n - 1, n) with M's relations.
SubmoduleSpec rees_power(const SubmoduleSpec& module, unsigned n);

struct ReductionContext {
  unsigned dimension = 0;
  MultiplicityOptions multiplicity;
  // Echoed in the verdict.
  bool equidimensional_asserted = true;
  std::string small_label = "N";
  std::string large_label = "M";
};

// Rees-type test: N a reduction of M, decided by comparing multiplicities.
Verdict is_reduction(const SubmoduleSpec& small, const SubmoduleSpec& large, const ReductionContext& ctx);

struct ClosureContext {
  ReductionContext reduction;
  std::vector<CurveGerm> probes;
  ProbeOptions probe_options;
};

// h in the integral closure of M: plain membership, nilpotency over the
// relations, the multiplicity test for M inside M + h, then curve probes.
Verdict icl_certify(const PolyVector& h, const SubmoduleSpec& module, const ClosureContext& ctx);

}  // namespace equising
