#pragma once

#include <array>
#include <optional>
#include <string>

#include "djcm/qops.hpp"

namespace djcm {

enum class FieldKind { SqueezedCoherent, GlauberLachs };

/// Preparation parameters for one cavity mode. Exactly one of
/// `squeezed_mean` / `thermal_mean` is set, matching `kind`.
struct FieldSpec {
  FieldKind kind = FieldKind::SqueezedCoherent;
  double coherent_mean = 0.0;
  std::optional<double> squeezed_mean;
  std::optional<double> thermal_mean;

  static FieldSpec squeezed_coherent(double coherent_mean, double squeezed_mean);
  static FieldSpec glauber_lachs(double coherent_mean, double thermal_mean);

  // Throws DomainError on negative/non-finite means or a kind/parameter mismatch.
  void validate() const;
  std::string describe() const;
};

enum class AtomKind { Bell, Werner };

struct AtomSpec {
  AtomKind kind = AtomKind::Bell;
  std::optional<double> theta;   // Bell: cos(theta)|e,g> + sin(theta)|g,e>
  std::optional<double> lambda;  // Werner mixing parameter in [0, 1]

  static AtomSpec bell(double theta);
  static AtomSpec werner(double lambda);

  void validate() const;
  std::string describe() const;
};

// Largest Fock-tail probability accepted when truncating a field state.
inline constexpr double kMaxTailLoss = 1e-6;

struct FieldKet {
  Vector amplitudes;        // length = cutoff, unit norm
  double tail_loss = 0.0;   // probability outside the retained levels
};

struct FieldDensity {
  Operator rho;             // cutoff x cutoff, unit trace
  double tail_loss = 0.0;
};

/// D(alpha) S(r) |0> with alpha = sqrt(n_c) and r = asinh(sqrt(n_s)), both real.
/// The squeeze generator is exp(r/2 (a^2 - a†^2)), the sign under which the
/// closed-form distribution `scs_pmf` holds. Generators are exponentiated in an
/// enlarged Fock space, projected onto `cutoff` levels and renormalized.
FieldKet squeezed_coherent_ket(double coherent_mean, double squeezed_mean, int cutoff);

/// Photon-counting distribution of the squeezed coherent state, with
/// mu = sqrt(1+n_s), nu = sqrt(n_s), beta = sqrt(n_c)(mu + nu).
double scs_pmf(double coherent_mean, double squeezed_mean, int n);

/// D(alpha) rho_thermal D†(alpha), renormalized on `cutoff` levels.
FieldDensity glauber_lachs_rho(double coherent_mean, double thermal_mean, int cutoff);

/// Photon-counting distribution of the displaced thermal state (Laguerre form).
double gl_pmf(double coherent_mean, double thermal_mean, int n);

// Closed-form distribution for either field kind.
double photon_pmf(const FieldSpec& field, int n);
// P(n >= level) from the closed-form distribution.
double photon_tail(const FieldSpec& field, int level);

/// cos(theta)|e,g> + sin(theta)|g,e> in basis (ee, eg, ge, gg).
Vector bell_atoms(double theta);

/// (1 - lambda) I/4 + lambda |psi-><psi-| with |psi-> = (|g,e> - |e,g>)/sqrt(2).
Operator werner_atoms(double lambda);

struct FactorState {
  Operator rho;
  std::optional<Vector> ket;  // set when the factor state is pure by construction
};

struct PreparedState {
  CompositeSpace space{2};
  Operator rho;                         // rho_AB ⊗ rho_a ⊗ rho_b
  bool purity_hint = false;             // Bell atoms and both fields SCS
  std::array<double, 2> truncation_loss{};  // per field (a, b)
  FactorState atoms;
  FactorState field_a;
  FactorState field_b;

  /// Columns sqrt(p_i)|psi_i> with sum_i p_i |psi_i><psi_i| = rho, built from
  /// the factor decompositions. Empty when the rank would exceed `max_rank`.
  std::optional<Matrix> ensemble(Index max_rank = 16) const;
};

PreparedState assemble_initial(const AtomSpec& atom, const FieldSpec& field_a, const FieldSpec& field_b,
                               const CompositeSpace& space);

FactorState prepare_field(const FieldSpec& field, int cutoff, double* tail_loss = nullptr);
FactorState prepare_atoms(const AtomSpec& atom);

}  // namespace djcm
