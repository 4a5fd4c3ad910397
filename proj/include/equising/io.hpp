#pragma once

// Problem files: one versioned text format for rings, ideals, modules, germs,
// hyperplanes and curves.
//
//   equising 1                     header (first non-comment line)
//   vars: x, y                     ring without parameters, or
//   y: t                           parameter block
//   z: x, y, z, w                  fiber block
//   aux: a                         auxiliary block
//   relations: p, q                ambient relations
//   f: p, q                        components of f (lines accumulate)
//   g: p, q                        second structure on the same set
//   F: p                           function for the relative conditions
//   K: p, q                        ideal for the structure witnesses
//   dimension: 2                   local dimension of X
//   ideal N: p, q                  named ideal
//   module M 2: (p, q); (r, s)     named submodule of a free module of rank 2
//   element: p   |   element: (p, q)
//   hyperplane: z1 + z2            linear form
//   curve                          one `var = <polynomial in t>` per line
//     z1 = t
//   end
//   assert: equidimensional, wa
//
// '#' starts a comment.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "equising/curves.hpp"
#include "equising/groebner.hpp"
#include "equising/jacobian.hpp"
#include "equising/parse.hpp"

namespace equising {

inline constexpr const char* kFormatHeader = "equising 1";

// Missing or unreadable input files.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct NamedModule {
  std::string name;
  bool ideal = true;
  std::size_t rank = 1;
  std::vector<PolyVector> generators;
};

struct ProblemFile {
  RingPtr ring;
  std::vector<Polynomial> relations;
  std::vector<Polynomial> f;
  std::vector<Polynomial> g;
  std::vector<Polynomial> K;
  std::optional<Polynomial> F;
  std::optional<unsigned> dimension;
  std::vector<NamedModule> modules;
  std::optional<PolyVector> element;
  std::vector<Hyperplane> hyperplanes;
  std::vector<CurveGerm> curves;
  bool equidimensional = false;
  bool wa = false;

  GermPresentation germ() const;
  GermPresentation second_structure() const;
  // modules[i] as a submodule carrying the file's relations.
  SubmoduleSpec module(std::size_t i) const;
  IdealSpec ideal(std::size_t i) const;
};

ProblemFile parse_problem(const std::string& text);
std::string serialize(const ProblemFile& problem);
// Same ring, same polynomials, same curves and flags.
bool equivalent(const ProblemFile& a, const ProblemFile& b);

Hyperplane parse_hyperplane(const std::string& text, const RingPtr& ring, std::size_t line = 1,
                            std::size_t column = 1);

// Existing paths are used as given; otherwise the name is looked up in the
// corpus directory ($EQUISING_CORPUS, else the built-in default).
std::string resolve_input(const std::string& path);
std::string corpus_directory();
ProblemFile load_problem(const std::string& path);

}  // namespace equising
