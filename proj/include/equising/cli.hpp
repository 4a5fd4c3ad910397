#pragma once

// Batch front end: one job per call, a text narrative followed by a
// machine-readable JSON block.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "equising/verdict.hpp"

namespace equising {

inline constexpr const char* kReportFormat = "equising-report 1";

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 2;
// A result that the underlying theory rules out: structure disagreement,
// fiber/family contradiction or an inconsistent sequence.
inline constexpr int kExitSentinel = 3;

struct JobSpec {
  std::string command;
  std::vector<std::string> inputs;
  std::optional<unsigned> truncation_cap;
  std::optional<std::size_t> precision;
  std::optional<unsigned> probe_exponent_bound;
  std::optional<std::size_t> probe_count;
  std::optional<unsigned> mult_window;
  std::uint64_t seed = 1;
  // Extra seeded hyperplanes for icis-scan.
  std::size_t sample = 0;
  // Chart index (1-based z-variable) for grassmann; defaults to the last.
  std::optional<std::size_t> chart;
  std::string out;
};

struct JobResult {
  int exit_code = kExitOk;
  std::string report;  // empty on input errors
  std::string error;
  Json result;
};

const std::vector<std::string>& command_names();

// Never throws for input problems; they become exit code 2 with `error` set.
JobResult run_job(const JobSpec& job);

// Writes through a temporary file and a rename.
void write_atomically(const std::string& path, const std::string& contents);

}  // namespace equising
