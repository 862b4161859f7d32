#pragma once

#include <array>
#include <string>
#include <vector>

#include "djcm/evolve.hpp"
#include "djcm/qops.hpp"

namespace djcm {

/// Two kept factors of the (A, B, a, b) space, stored in canonical order.
struct BipartiteCut {
  Factor first;
  Factor second;

  BipartiteCut(Factor x, Factor y);
  std::string name() const;
  std::array<int, 2> dims(const CompositeSpace& space) const;

  static BipartiteCut atoms() { return {Factor::AtomA, Factor::AtomB}; }
  static BipartiteCut atom_field_a() { return {Factor::AtomA, Factor::FieldA}; }
  static BipartiteCut atom_field_b() { return {Factor::AtomA, Factor::FieldB}; }
  static BipartiteCut fields() { return {Factor::FieldA, Factor::FieldB}; }
};

// Reduced state on the two kept factors; dims = the kept factor dims.
Operator partial_trace(const Operator& rho, const CompositeSpace& space, const BipartiteCut& cut);
Operator partial_trace(const StateSnapshot& state, const CompositeSpace& space, const BipartiteCut& cut);

enum class Subsystem { First, Second };

// Transpose of the chosen factor of a d1 x d2 bipartite matrix.
Matrix partial_transpose(const Matrix& rho, int d1, int d2, Subsystem which = Subsystem::Second);

/// Wootters concurrence of a two-qubit density matrix. Throws
/// ContractViolation when rho is not Hermitian, unit-trace and PSD within 1e-8.
double concurrence(const Matrix& rho);

/// Sum of |ξ| - ξ over the eigenvalues ξ of the partial transpose, halved.
double negativity(const Matrix& rho, int d1, int d2, Subsystem which = Subsystem::Second);

/// Negativity evaluated after restricting both factors to the eigenvectors of
/// their reduced states with eigenvalue above `rank_tol`. The partial
/// transpose of a state supported on S1 ⊗ S2 is supported on S1 ⊗ S2*, so the
/// result equals `negativity` whenever the discarded eigenvalues vanish.
/// Falls back to the full computation when the restriction would keep more
/// than half of the dimension.
double negativity_on_support(const Matrix& rho, int d1, int d2, double rank_tol = 1e-15);

inline constexpr double kEsdThreshold = 1e-6;

struct EntanglementPoint {
  double concurrence_AB = 0.0;
  double negativity_Aa = 0.0;
  double negativity_Ab = 0.0;
  double negativity_ab = 0.0;
};

struct MeasureOptions {
  // Worker threads across time points; 0 picks the hardware concurrency.
  unsigned threads = 0;
  // Full eigendecomposition for the field-field cut instead of the support
  // restriction.
  bool exact_field_negativity = false;
  double support_tol = 1e-15;
};

EntanglementPoint measure_state(const StateSnapshot& state, const CompositeSpace& space,
                                const MeasureOptions& options = {});

struct EntanglementSeries {
  std::vector<double> gt;
  std::vector<double> concurrence_AB;
  std::vector<double> negativity_Aa;
  std::vector<double> negativity_Ab;
  std::vector<double> negativity_ab;
  std::vector<double> trace_error;
  std::vector<double> leakage;
  std::vector<std::string> warnings;

  std::size_t size() const { return gt.size(); }
  EntanglementPoint at(std::size_t k) const;
};

EntanglementSeries measure_trajectory(const Trajectory& traj, const MeasureOptions& options = {});

struct Interval {
  double start = 0.0;
  double end = 0.0;
  double length() const { return end - start; }
};

/// Maximal runs with series < threshold, endpoints linearly interpolated at
/// the threshold crossing. A run that begins at the first sample is not a
/// death and is skipped.
std::vector<Interval> esd_intervals(const std::vector<double>& series, const std::vector<double>& gt,
                                    double threshold = kEsdThreshold);
double total_duration(const std::vector<Interval>& intervals);

}  // namespace djcm
