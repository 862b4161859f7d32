#pragma once

#include <optional>
#include <string>
#include <vector>

#include "djcm/qops.hpp"

namespace djcm {

enum class Variant { Bare, Ising, Detuned, Kerr };

std::string variant_name(Variant v);

/// Model parameters in units of the atom-field coupling g.
struct ModelParams {
  Variant variant = Variant::Bare;
  double g = 1.0;
  std::optional<double> j_z;        // Ising
  std::optional<double> detuning;   // Detuned: omega - nu
  std::optional<double> kerr;       // Kerr: chi = kerr * omega
  double omega = 1.0;               // atomic frequency, enters only through chi

  static ModelParams bare(double g = 1.0);
  static ModelParams ising(double j_z, double g = 1.0);
  static ModelParams detuned(double detuning, double g = 1.0);
  static ModelParams kerr_medium(double k, double omega = 1.0, double g = 1.0);

  // Throws ConfigError when g <= 0, a parameter is non-finite, or the
  // variant-specific parameter is missing or set on the wrong variant.
  void validate() const;
  std::string describe() const;
};

/// Interaction-picture generator:
///   Bare    g(a†σ-A + aσ+A) + g(b†σ-B + bσ+B)
///   Ising   Bare + J σzA σzB
///   Detuned Δ σ-Aσ+A + Δ σ-Bσ+B + JC terms
///   Kerr    Bare + kω(a†²a² + b†²b²)
Operator build(const ModelParams& params, const CompositeSpace& space);

// σ+Aσ-A + σ+Bσ-B + n_a + n_b
Operator excitation_operator(const CompositeSpace& space);

// Per flat index, kA*(N+1) + kB with kX = (atom X excited) + n_x. Every
// variant is block diagonal in these labels.
std::vector<int> cavity_sector_labels(const CompositeSpace& space);

// (ω/2)(σzA + σzB) + ν(n_a + n_b). At ω = ν this is ω times the excitation
// operator up to a constant, so it commutes with every variant.
Operator free_terms(double omega, double nu, const CompositeSpace& space);

}  // namespace djcm
