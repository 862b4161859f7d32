#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "djcm/entangle.hpp"
#include "djcm/evolve.hpp"
#include "djcm/hamiltonian.hpp"
#include "djcm/states.hpp"

namespace djcm {

/// A parameter swept across runs. Recognized names: n_c, n_s, n_th (applied
/// to both fields), lambda, theta, J_z, Delta, k, and "none" with the single
/// value 0.
struct Sweep {
  std::string name = "none";
  std::vector<double> values{0.0};
};

inline constexpr int kMinCutoff = 16;

struct Scenario {
  std::string id = "custom";
  AtomSpec atom = AtomSpec::bell(0.7853981633974483);
  FieldSpec field_a = FieldSpec::squeezed_coherent(0.5, 0.0);
  FieldSpec field_b = FieldSpec::squeezed_coherent(0.5, 0.0);
  ModelParams model;
  TimeGrid grid;
  std::optional<int> cutoff;  // unset: recommended_cutoff()
  Sweep sweep;

  // Throws ConfigError if any component is invalid or the sweep parameter
  // does not apply to this scenario.
  void validate() const;
  // Copy with the sweep parameter set to `value` and no sweep.
  Scenario with_sweep_value(double value) const;
  std::string describe() const;
};

/// Smallest cutoff >= kMinCutoff for which every field over the sweep has
/// P(n >= N-3) <= 2.5e-7 and P(n >= N) <= 1e-8. Each cavity conserves atom +
/// photon excitations, so no evolution can move more than the first bound
/// into levels N-2 and N-1; the second bounds the truncation loss.
int recommended_cutoff(const Scenario& s);
int resolved_cutoff(const Scenario& s);

std::vector<std::string> preset_ids();
// Throws ConfigError for an unknown id.
Scenario preset(const std::string& id);
std::string preset_summary(const std::string& id);

struct ResultRow {
  double gt = 0.0;
  double sweep_value = 0.0;
  EntanglementPoint values;
  double trace_err = 0.0;
  double leakage = 0.0;
};

struct ResultTable {
  std::string sweep_name = "none";
  std::vector<ResultRow> rows;
  std::vector<std::string> warnings;
};

struct RunOptions {
  MeasureOptions measure;
};

/// Runs every sweep value: prepare, build H, evolve, measure. Errors are
/// rethrown with the same type and the sweep value in the message.
ResultTable run(const Scenario& s, const RunOptions& options = {});
// One sweep value, as the series.
EntanglementSeries run_single(const Scenario& s, const RunOptions& options = {});

inline constexpr const char* kCsvHeader = "gt,sweep_name,sweep_value,C_AB,N_Aa,N_Ab,N_ab,trace_err,leakage";

// Rows sorted by (sweep_value, gt), values with 12 significant digits.
void emit_csv(const ResultTable& table, std::ostream& out);
// Throws std::system_error / std::ios_base::failure style errors verbatim.
void write_csv(const ResultTable& table, const std::string& path);
ResultTable parse_csv(std::istream& in);
ResultTable read_csv(const std::string& path);

/// Flat `key = value` configuration; `#` starts a comment. Keys:
///   preset, atom (bell|werner), theta, lambda, field (scs|gl), n_c, n_s,
///   n_th, model (bare|ising|detuned|kerr), g, J_z, Delta, k, omega, t_max,
///   points, cutoff (integer or auto), sweep, sweep_values (comma list).
/// A preset supplies defaults that the remaining keys override.
Scenario parse_config(std::istream& in);
Scenario load_config(const std::string& path);

}  // namespace djcm
