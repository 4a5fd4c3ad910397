#pragma once

// Colengths at the origin computed by truncation modulo powers of the
// maximal ideal, with a Nakayama stop rule.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "equising/groebner.hpp"

namespace equising {

struct TruncationContext {
  // Work modulo m^degree, m generated by every ambient variable.
  unsigned degree = 1;
};

enum class ColengthStatus { Finite, Infinite, Undetermined };

std::string to_string(ColengthStatus s);

struct StandardMonomial {
  Monomial mono;
  std::size_t comp = 0;
};

struct ColengthResult {
  ColengthStatus status = ColengthStatus::Undetermined;
  std::uint64_t value = 0;
  // Least N with dim at N equal to dim at N + 1; valid when finite.
  unsigned stabilized_at = 0;
  // Largest truncation degree that was computed.
  unsigned last_level = 0;
  std::vector<StandardMonomial> basis;
  // dims[n] = dim R^p / (M + m^n R^p) for n <= last_level.
  std::vector<std::uint64_t> dims;
  // For an infinite result: a component and a variable whose powers are all standard.
  std::optional<std::pair<std::size_t, std::size_t>> free_direction;

  bool finite() const { return status == ColengthStatus::Finite; }
};

struct LocalOptions {
  unsigned cap = 40;
  // Truncation level from which a positive-dimensional quotient is tested for.
  unsigned infinite_probe_level = 8;
};

ColengthResult local_colength(const SubmoduleSpec& module, const LocalOptions& options = {});
ColengthResult local_colength(const IdealSpec& ideal, const LocalOptions& options = {});

// Standard monomials of M + m^N, by degree, under the local order.
std::vector<std::vector<StandardMonomial>> truncated_standard_monomials(const SubmoduleSpec& module,
                                                                        const TruncationContext& ctx);

// Certifies an infinite colength from a local standard basis obtained by
// homogenization. Returns the (component, variable) with no pure power in
// the leading module, or nothing when every direction is bounded.
std::optional<std::pair<std::size_t, std::size_t>> infinite_direction(const SubmoduleSpec& module);

}  // namespace equising
