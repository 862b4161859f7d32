#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "djcm/qops.hpp"
#include "djcm/states.hpp"

namespace djcm {

/// `points` uniform samples of [0, t_max], both ends included. Times are in
/// units of 1/g.
class TimeGrid {
 public:
  TimeGrid() = default;
  TimeGrid(double t_max, int points);

  double t_max() const { return t_max_; }
  int points() const { return points_; }
  double at(int k) const;
  std::vector<double> times() const;

 private:
  double t_max_ = 25.0;
  int points_ = 1001;
};

/// Unitary that is block diagonal after a permutation of the basis. Each
/// block acts on the listed flat indices.
class BlockUnitary {
 public:
  struct Block {
    std::vector<Index> indices;
    Matrix u;
  };

  BlockUnitary() = default;
  BlockUnitary(Index dim, std::vector<Block> blocks);

  Index dim() const { return dim_; }
  const std::vector<Block>& blocks() const { return blocks_; }

  // U * kets for a (dim x R) matrix of column vectors.
  Matrix apply(const Matrix& kets) const;
  // U rho U†
  Matrix conjugate(const Matrix& rho) const;
  // Basis order in which the blocks are contiguous (concatenated index lists).
  std::vector<Index> order() const;
  // U rho U† with rho and the result both expressed in order(). Reuses the
  // storage of `out` when it already has the right shape.
  void conjugate_sorted(const Matrix& rho_sorted, Matrix& out) const;
  // diag(U rho U†), using only the diagonal blocks of rho.
  RealVector populations(const Matrix& rho) const;
  Matrix dense() const;

 private:
  Index dim_ = 0;
  std::vector<Block> blocks_;
};

/// One eigendecomposition of H, reused for every t. H is split into the
/// connected components of its nonzero pattern (the excitation sectors for
/// every model variant) and each component is diagonalized separately; the
/// result equals herm_eig of the full matrix up to roundoff.
class SpectralPropagator {
 public:
  explicit SpectralPropagator(const Operator& h);

  BlockUnitary at(double t) const;
  Index dim() const { return dim_; }
  std::size_t block_count() const { return blocks_.size(); }
  Index largest_block() const;

 private:
  struct Block {
    std::vector<Index> indices;
    RealVector energies;
    Matrix vectors;
  };
  Index dim_ = 0;
  std::vector<Block> blocks_;
};

// exp(-i H t) as a dense operator.
Operator propagator(const Operator& h, double t);

/// Closed-form propagator of the resonant bare model. Within each cavity
/// |e,n> -> cos(g√(n+1)t)|e,n> - i sin(g√(n+1)t)|g,n+1> and
/// |g,n> -> cos(g√n t)|g,n> - i sin(g√n t)|e,n-1>; the top level |e,N-1>
/// has no partner inside the cutoff and is left unchanged.
BlockUnitary analytic_block_unitary(const CompositeSpace& space, double g, double t);
Operator analytic_propagator(const CompositeSpace& space, double g, double t);

/// A state at one time: either a set of weighted kets (columns, rho = K K†)
/// or a dense density matrix.
struct StateSnapshot {
  std::optional<Matrix> kets;
  std::optional<Matrix> rho;
  // When set, rho is stored permuted: rho(p, q) = <order[p]| ρ |order[q]>.
  std::shared_ptr<const std::vector<Index>> order;

  Matrix density() const;
  double trace() const;
};

using UnitarySource = std::function<BlockUnitary(double)>;

inline constexpr double kLeakageWarn = 1e-6;
inline constexpr double kLeakageFail = 1e-3;

/// Unitary evolution of a prepared state over a time grid. States are not
/// stored; `state(k)` recomputes U(t_k) applied to the initial state. The
/// constructor evaluates the diagnostics at every grid point.
class Trajectory {
 public:
  // Throws LeakageError when the leakage exceeds kLeakageFail anywhere.
  Trajectory(const PreparedState& initial, UnitarySource source, TimeGrid grid, Index max_ensemble_rank = 16);

  const TimeGrid& grid() const { return grid_; }
  const CompositeSpace& space() const { return space_; }
  bool uses_kets() const { return kets0_.has_value(); }

  StateSnapshot state(int k) const;
  StateSnapshot state_at(double t) const;
  // As state(k), reusing the buffers already held by `out`.
  void state_into(int k, StateSnapshot& out) const;

  // |Tr rho(t_k) - 1|
  const std::vector<double>& trace_error() const { return trace_error_; }
  // max over the two fields of the population in levels n >= N-2
  const std::vector<double>& leakage() const { return leakage_; }
  double max_leakage() const;
  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  CompositeSpace space_;
  TimeGrid grid_;
  UnitarySource source_;
  std::optional<Matrix> kets0_;
  std::optional<Matrix> rho0_;
  std::optional<Matrix> rho0_sorted_;
  std::shared_ptr<const std::vector<Index>> order_;
  std::vector<double> trace_error_;
  std::vector<double> leakage_;
  std::vector<std::string> warnings_;
};

// Populations of field a and field b at or above level N-2, maximized.
double field_leakage(const RealVector& populations, const CompositeSpace& space);

Trajectory trajectory(const PreparedState& initial, const Operator& h, const TimeGrid& grid);
Trajectory trajectory(const PreparedState& initial, std::shared_ptr<const SpectralPropagator> prop,
                      const TimeGrid& grid);
// Resonant bare model through the closed-form propagator.
Trajectory analytic_trajectory(const PreparedState& initial, double g, const TimeGrid& grid);

}  // namespace djcm
