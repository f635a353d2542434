#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "skydyon/observables.hpp"
#include "skydyon/solver.hpp"

namespace skydyon {

/// Significant digits of every real written to a profile CSV. Extended
/// precision needs 21 for a lossless round-trip.
inline constexpr int kProfileDigits = 21;

/// Header block (`# omega=`, `# q=`, `# kappa=`, `# R=`, `# N=`, `# grading=`,
/// `# outer=`, `# tail_rate=`), then `r,a,f,g` rows.
void write_profile_csv(std::ostream& out, const ModelParams& p, const FieldProfile& s);
void write_profile_csv(const std::string& path, const ModelParams& p, const FieldProfile& s);

struct LoadedProfile {
  real omega = 0;
  real q = 0;
  real kappa = 0;
  FieldProfile profile;
};

/// Rebuilds the grid from the header and checks it against the r column.
/// ParameterError on malformed input.
LoadedProfile read_profile_csv(std::istream& in);
LoadedProfile read_profile_csv(const std::string& path);

/// `key = value` lines.
void write_observables(std::ostream& out, const ModelParams& p, const ObservableReport& o,
                       const SolveReport* solve = nullptr);

struct SummaryRow {
  real omega = 0, q = 0, kappa = 0;
  real Qe = 0, QS_numeric = 0, QS_closed = 0, gamma_fit = 0, gamma_theory = 0, E = 0, L = 0;
  bool converged = false;
};

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows);

/// Two whitespace-separated columns per line.
void write_series(const std::string& path, const std::vector<std::pair<real, real>>& points);

}  // namespace skydyon
