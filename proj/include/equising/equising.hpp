#pragma once

// Equisingularity checks: condition W, A_F and W_F, structure blindness,
// limiting tangent hyperplanes, W-generic hyperplanes and sequences, and the
// fiberwise correspondence scan for families of ICIS.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "equising/curves.hpp"
#include "equising/jacobian.hpp"
#include "equising/local.hpp"
#include "equising/multiplicity.hpp"
#include "equising/verdict.hpp"

namespace equising {

struct EquisingOptions {
  ProbeOptions probes;
  MultiplicityOptions multiplicity;
  // Fiber points sampled besides y = 0 in the multiplicity scan.
  unsigned fiber_samples = 4;
  // Skip the W re-check that guards w_generic_check.
  bool w_asserted = false;
};

// Probe curves on X: the user's curves first, then generated ones.
std::vector<CurveGerm> default_probes(const GermPresentation& germ, const std::vector<CurveGerm>& user,
                                      const ProbeOptions& options);

// d f / d y_i in the integral closure of m_Y JM_z(f) for every i.
Verdict check_whitney_w(const GermPresentation& germ, const std::vector<CurveGerm>& probes,
                        const EquisingOptions& options = {});

enum class RelativeMode { AF, WF };

// Conditions for the augmented map (f, F): strict dependence on JM_z(f, F)
// (A_F, refutation only) or integral dependence on m_Y JM_z(f, F) (W_F).
Verdict check_AF_WF(const GermPresentation& germ, const std::vector<CurveGerm>& probes, RelativeMode mode,
                    const EquisingOptions& options = {});

struct BlindnessRow {
  std::size_t probe = 0;
  std::string curve;
  std::string column;
  bool f_member = false;
  bool g_member = false;
  bool agree() const { return f_member == g_member; }
};

struct BlindnessReport {
  WitnessMatrices witnesses;
  std::vector<BlindnessRow> rows;
  std::size_t probes_used = 0;
  std::size_t probes_skipped = 0;
  std::size_t disagreements = 0;
  std::vector<std::string> assumptions;

  Json to_json() const;
  std::string to_text() const;
};

// Two structures on the same X: compares d f/d y_i against JM_z(f) with
// d g/d y_i against JM_z(g) along every probe not inside V(K).
BlindnessReport structure_blindness_check(const GermPresentation& f_germ, const GermPresentation& g_germ,
                                          const std::vector<CurveGerm>& probes,
                                          const WitnessOptions& witness_options = {});

// For a fiber germ (empty y-block): TANGENT when JM(f)_H is not a reduction of JM(f).
Verdict limiting_tangent_hyperplane(const GermPresentation& fiber, const Hyperplane& h,
                                    const EquisingOptions& options = {});

struct FiberSample {
  std::vector<Rational> y0;
  ColengthStatus status = ColengthStatus::Undetermined;
  std::uint64_t colength = 0;
  std::optional<std::uint64_t> e;
  std::string note;
};

struct ICISProfile {
  bool complete_intersection = false;
  std::vector<FiberSample> fibers;
  std::uint64_t seed = 0;
  // Every sampled fiber has finite colength and the same multiplicity.
  bool constant_multiplicity = false;

  Json to_json() const;
};

ICISProfile icis_profile(const GermPresentation& germ, const EquisingOptions& options = {});

// H must contain Y. GENERIC when (X_0 cap H, Y) keeps condition W.
Verdict w_generic_check(const GermPresentation& germ, const Hyperplane& h, const std::vector<CurveGerm>& probes,
                        const EquisingOptions& options = {});

// X cap H in the coordinates of H: the pivot z-variable is eliminated.
GermPresentation hyperplane_section(const GermPresentation& germ, const Hyperplane& h);

// The modification G = f o beta at the chart point of H, recentred so that
// the point is the origin; (y, a) form the parameter block.
GermPresentation modification_at(const GermPresentation& germ, const Hyperplane& h);

struct SequenceStep {
  Hyperplane local;  // coefficients in the section's coordinates
  std::string section;
  Verdict generic;
  Verdict section_w;
};

struct SequenceReport {
  std::vector<SequenceStep> steps;
  bool consistent = true;

  Json to_json() const;
  std::string to_text() const;
};

// Hyperplanes are given in the original z-coordinates; each must be
// independent of its predecessors.
SequenceReport w_generic_sequence(const GermPresentation& germ, const std::vector<Hyperplane>& hs,
                                  const EquisingOptions& options = {});

// Lines in the fiber at y = 0 along which H is tangent, for homogeneous fibers.
std::vector<CurveGerm> polar_lines(const GermPresentation& germ, const Hyperplane& h);

struct ScanRow {
  Hyperplane h;
  Verdict fiber;
  Verdict family;
  bool agree = false;
  bool contradiction = false;
};

struct ScanReport {
  ICISProfile profile;
  bool hypothesis_failed = false;
  std::vector<std::string> failures;
  std::vector<ScanRow> rows;
  std::size_t contradictions = 0;
  std::vector<std::string> assumptions;

  Json to_json(const RingPtr& ring) const;
  std::string to_text(const RingPtr& ring) const;
};

ScanReport icis_correspondence_scan(const GermPresentation& germ, const std::vector<Hyperplane>& hs,
                                    const EquisingOptions& options = {});

// Seeded hyperplanes containing Y with integer z-coefficients in [-bound, bound].
std::vector<Hyperplane> sample_hyperplanes(std::size_t n, std::size_t count, std::uint64_t seed, int bound = 4);

}  // namespace equising
