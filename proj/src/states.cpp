#include "djcm/states.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "djcm/error.hpp"

namespace djcm {

namespace {

// Below this mean the squeezed/thermal part is treated as absent and the
// distributions reduce to Poisson.
constexpr double kDegenerateMean = 1e-12;

// Eigenvalues of the atomic state below this are exact zeros in practice.
constexpr double kAtomRankTol = 1e-14;

void require_mean(double value, const char* name) {
  if (!std::isfinite(value) || value < 0.0) {
    std::ostringstream msg;
    msg << name << " must be finite and non-negative, got " << value;
    throw DomainError(msg.str());
  }
}

int working_levels(int cutoff) { return 2 * cutoff + 32; }

double poisson_pmf(double mean, int n) {
  if (mean == 0.0) return n == 0 ? 1.0 : 0.0;
  return std::exp(n * std::log(mean) - mean - std::lgamma(n + 1.0));
}

Operator displacement(double alpha, int levels) {
  const Operator a = annihilation(levels);
  // exp(-i H) with H = i alpha (a† - a) equals exp(alpha (a† - a)).
  const Operator generator = Complex(0.0, alpha) * (a.adjoint() - a);
  return unitary_exp(generator, 1.0);
}

Operator squeeze(double r, int levels) {
  const Operator a = annihilation(levels);
  const Operator a2 = a * a;
  // exp(-i H) with H = i r/2 (a^2 - a†^2) equals exp(r/2 (a^2 - a†^2)).
  const Operator generator = Complex(0.0, 0.5 * r) * (a2 - a2.adjoint());
  return unitary_exp(generator, 1.0);
}

void check_tail(double loss, const std::string& what, int cutoff) {
  if (loss > kMaxTailLoss) {
    std::ostringstream msg;
    msg << what << ": Fock cutoff " << cutoff << " discards probability " << loss << " (limit "
        << kMaxTailLoss << "); increase the cutoff";
    throw CutoffTooSmall(msg.str());
  }
}

}  // namespace

FieldSpec FieldSpec::squeezed_coherent(double coherent_mean, double squeezed_mean) {
  FieldSpec f;
  f.kind = FieldKind::SqueezedCoherent;
  f.coherent_mean = coherent_mean;
  f.squeezed_mean = squeezed_mean;
  f.validate();
  return f;
}

FieldSpec FieldSpec::glauber_lachs(double coherent_mean, double thermal_mean) {
  FieldSpec f;
  f.kind = FieldKind::GlauberLachs;
  f.coherent_mean = coherent_mean;
  f.thermal_mean = thermal_mean;
  f.validate();
  return f;
}

void FieldSpec::validate() const {
  require_mean(coherent_mean, "n_c");
  if (kind == FieldKind::SqueezedCoherent) {
    if (!squeezed_mean || thermal_mean) {
      throw DomainError("squeezed coherent field needs n_s and no n_th");
    }
    require_mean(*squeezed_mean, "n_s");
  } else {
    if (!thermal_mean || squeezed_mean) {
      throw DomainError("Glauber-Lachs field needs n_th and no n_s");
    }
    require_mean(*thermal_mean, "n_th");
  }
}

std::string FieldSpec::describe() const {
  std::ostringstream out;
  if (kind == FieldKind::SqueezedCoherent) {
    out << "SCS(n_c=" << coherent_mean << ", n_s=" << squeezed_mean.value_or(0.0) << ")";
  } else {
    out << "GL(n_c=" << coherent_mean << ", n_th=" << thermal_mean.value_or(0.0) << ")";
  }
  return out.str();
}

AtomSpec AtomSpec::bell(double theta) {
  AtomSpec a;
  a.kind = AtomKind::Bell;
  a.theta = theta;
  a.validate();
  return a;
}

AtomSpec AtomSpec::werner(double lambda) {
  AtomSpec a;
  a.kind = AtomKind::Werner;
  a.lambda = lambda;
  a.validate();
  return a;
}

void AtomSpec::validate() const {
  if (kind == AtomKind::Bell) {
    if (!theta || lambda) throw DomainError("Bell atoms need theta and no lambda");
    if (!std::isfinite(*theta)) throw DomainError("Bell angle theta must be finite");
  } else {
    if (!lambda || theta) throw DomainError("Werner atoms need lambda and no theta");
    if (!(*lambda >= 0.0 && *lambda <= 1.0)) {
      std::ostringstream msg;
      msg << "Werner mixing parameter must lie in [0, 1], got " << *lambda;
      throw DomainError(msg.str());
    }
  }
}

std::string AtomSpec::describe() const {
  std::ostringstream out;
  if (kind == AtomKind::Bell) {
    out << "Bell(theta=" << theta.value_or(0.0) << ")";
  } else {
    out << "Werner(lambda=" << lambda.value_or(0.0) << ")";
  }
  return out.str();
}

FieldKet squeezed_coherent_ket(double coherent_mean, double squeezed_mean, int cutoff) {
  require_mean(coherent_mean, "n_c");
  require_mean(squeezed_mean, "n_s");
  if (cutoff < 2) throw InvalidDimension("squeezed_coherent_ket: cutoff must be >= 2");

  const int levels = working_levels(cutoff);
  const double alpha = std::sqrt(coherent_mean);
  const double r = std::asinh(std::sqrt(squeezed_mean));

  Vector vacuum = Vector::Zero(levels);
  vacuum(0) = 1.0;
  const Vector full = displacement(alpha, levels).matrix() * (squeeze(r, levels).matrix() * vacuum);

  FieldKet out;
  const Vector kept = full.head(cutoff);
  out.tail_loss = std::max(0.0, 1.0 - kept.squaredNorm());
  std::ostringstream what;
  what << "squeezed_coherent_ket(n_c=" << coherent_mean << ", n_s=" << squeezed_mean << ")";
  check_tail(out.tail_loss, what.str(), cutoff);
  out.amplitudes = kept / kept.norm();
  return out;
}

double scs_pmf(double coherent_mean, double squeezed_mean, int n) {
  require_mean(coherent_mean, "n_c");
  require_mean(squeezed_mean, "n_s");
  if (n < 0) throw DomainError("scs_pmf: photon number must be non-negative");
  if (squeezed_mean < kDegenerateMean) return poisson_pmf(coherent_mean, n);

  const double mu = std::sqrt(1.0 + squeezed_mean);
  const double nu = std::sqrt(squeezed_mean);
  const double beta = std::sqrt(coherent_mean) * (mu + nu);
  const double x = beta / std::sqrt(2.0 * mu * nu);

  // q_k = (nu/mu)^{k/2} H_k(x) / sqrt(2^k k!) so that
  // P(k) = q_k^2 exp(-beta^2 (1 - nu/mu)) / mu. The scaled recurrence keeps
  // every term O(1) where the raw Hermite values would overflow.
  const double s = std::sqrt(nu / mu);
  double prev = 0.0;
  double cur = 1.0;
  for (int k = 0; k < n; ++k) {
    const double next = x * s * std::sqrt(2.0 / (k + 1)) * cur - (nu / mu) * std::sqrt(k / (k + 1.0)) * prev;
    prev = cur;
    cur = next;
  }
  return cur * cur * std::exp(-beta * beta * (1.0 - nu / mu)) / mu;
}

FieldDensity glauber_lachs_rho(double coherent_mean, double thermal_mean, int cutoff) {
  require_mean(coherent_mean, "n_c");
  require_mean(thermal_mean, "n_th");
  if (cutoff < 2) throw InvalidDimension("glauber_lachs_rho: cutoff must be >= 2");

  const int levels = working_levels(cutoff);
  RealVector thermal(levels);
  const double ratio = thermal_mean / (1.0 + thermal_mean);
  for (int n = 0; n < levels; ++n) thermal(n) = std::pow(ratio, n) / (1.0 + thermal_mean);

  const Matrix d = displacement(std::sqrt(coherent_mean), levels).matrix();
  const Matrix full = d * thermal.cast<Complex>().asDiagonal() * d.adjoint();
  Matrix kept = full.topLeftCorner(cutoff, cutoff);
  const double trace = kept.trace().real();

  FieldDensity out;
  out.tail_loss = std::max(0.0, 1.0 - trace);
  std::ostringstream what;
  what << "glauber_lachs_rho(n_c=" << coherent_mean << ", n_th=" << thermal_mean << ")";
  check_tail(out.tail_loss, what.str(), cutoff);
  kept /= trace;
  kept = 0.5 * (kept + kept.adjoint()).eval();
  out.rho = Operator(std::move(kept));
  return out;
}

double gl_pmf(double coherent_mean, double thermal_mean, int n) {
  require_mean(coherent_mean, "n_c");
  require_mean(thermal_mean, "n_th");
  if (n < 0) throw DomainError("gl_pmf: photon number must be non-negative");
  if (thermal_mean < kDegenerateMean) return poisson_pmf(coherent_mean, n);

  // w_k = u^k L_k(-y), u = n_th/(1+n_th), y = n_c/(n_th(n_th+1)); the
  // Laguerre recurrence (k+1)L_{k+1} = (2k+1+y)L_k - k L_{k-1} scaled by u^k.
  // u*y = n_c/(1+n_th)^2 stays finite as n_th -> 0.
  const double u = thermal_mean / (1.0 + thermal_mean);
  const double uy = coherent_mean / ((1.0 + thermal_mean) * (1.0 + thermal_mean));
  double prev = 0.0;
  double cur = 1.0;
  for (int k = 0; k < n; ++k) {
    const double next = ((u * (2.0 * k + 1.0) + uy) * cur - k * u * u * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur * std::exp(-coherent_mean / (1.0 + thermal_mean)) / (1.0 + thermal_mean);
}

double photon_pmf(const FieldSpec& field, int n) {
  field.validate();
  if (field.kind == FieldKind::SqueezedCoherent) {
    return scs_pmf(field.coherent_mean, *field.squeezed_mean, n);
  }
  return gl_pmf(field.coherent_mean, *field.thermal_mean, n);
}

double photon_tail(const FieldSpec& field, int level) {
  double head = 0.0;
  for (int n = 0; n < level; ++n) head += photon_pmf(field, n);
  return std::max(0.0, 1.0 - head);
}

Vector bell_atoms(double theta) {
  Vector v = Vector::Zero(4);
  v(kExcited * 2 + kGround) = std::cos(theta);
  v(kGround * 2 + kExcited) = std::sin(theta);
  return v;
}

Operator werner_atoms(double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    std::ostringstream msg;
    msg << "werner_atoms: lambda must lie in [0, 1], got " << lambda;
    throw DomainError(msg.str());
  }
  Vector singlet = Vector::Zero(4);
  singlet(kGround * 2 + kExcited) = std::numbers::sqrt2 / 2.0;
  singlet(kExcited * 2 + kGround) = -std::numbers::sqrt2 / 2.0;
  Matrix rho = (1.0 - lambda) / 4.0 * Matrix::Identity(4, 4) + lambda * singlet * singlet.adjoint();
  return Operator(std::move(rho), {2, 2});
}

FactorState prepare_atoms(const AtomSpec& atom) {
  atom.validate();
  if (atom.kind == AtomKind::Bell) {
    Vector ket = bell_atoms(*atom.theta);
    Operator rho(ket * ket.adjoint(), {2, 2});
    return {std::move(rho), std::move(ket)};
  }
  return {werner_atoms(*atom.lambda), std::nullopt};
}

FactorState prepare_field(const FieldSpec& field, int cutoff, double* tail_loss) {
  field.validate();
  if (field.kind == FieldKind::SqueezedCoherent) {
    FieldKet ket = squeezed_coherent_ket(field.coherent_mean, *field.squeezed_mean, cutoff);
    if (tail_loss) *tail_loss = ket.tail_loss;
    Operator rho(ket.amplitudes * ket.amplitudes.adjoint());
    return {std::move(rho), std::move(ket.amplitudes)};
  }
  if (*field.thermal_mean < kDegenerateMean) {
    // Zero temperature: the displaced vacuum, kept as a ket.
    FieldKet ket = squeezed_coherent_ket(field.coherent_mean, 0.0, cutoff);
    if (tail_loss) *tail_loss = ket.tail_loss;
    Operator rho(ket.amplitudes * ket.amplitudes.adjoint());
    return {std::move(rho), std::move(ket.amplitudes)};
  }
  FieldDensity density = glauber_lachs_rho(field.coherent_mean, *field.thermal_mean, cutoff);
  if (tail_loss) *tail_loss = density.tail_loss;
  return {std::move(density.rho), std::nullopt};
}

PreparedState assemble_initial(const AtomSpec& atom, const FieldSpec& field_a, const FieldSpec& field_b,
                               const CompositeSpace& space) {
  PreparedState out;
  out.space = space;
  out.atoms = prepare_atoms(atom);
  out.field_a = prepare_field(field_a, space.cutoff(), &out.truncation_loss[0]);
  out.field_b = prepare_field(field_b, space.cutoff(), &out.truncation_loss[1]);
  out.purity_hint = atom.kind == AtomKind::Bell && field_a.kind == FieldKind::SqueezedCoherent &&
                    field_b.kind == FieldKind::SqueezedCoherent;
  out.rho = kron(kron(out.atoms.rho, out.field_a.rho), out.field_b.rho);
  return out;
}

std::optional<Matrix> PreparedState::ensemble(Index max_rank) const {
  if (!field_a.ket || !field_b.ket) return std::nullopt;

  std::vector<Vector> atom_columns;
  if (atoms.ket) {
    atom_columns.push_back(*atoms.ket);
  } else {
    const EigDecomposition eig = herm_eig(atoms.rho);
    for (Index k = 0; k < eig.eigenvalues.size(); ++k) {
      if (eig.eigenvalues(k) > kAtomRankTol) {
        atom_columns.push_back(std::sqrt(eig.eigenvalues(k)) * eig.eigenvectors.col(k));
      }
    }
  }
  if (static_cast<Index>(atom_columns.size()) > max_rank) return std::nullopt;

  const Matrix fields = kron(Matrix(*field_a.ket), Matrix(*field_b.ket));
  Matrix out(space.dim(), static_cast<Index>(atom_columns.size()));
  for (std::size_t i = 0; i < atom_columns.size(); ++i) {
    out.col(static_cast<Index>(i)) = kron(Matrix(atom_columns[i]), fields);
  }
  return out;
}

}  // namespace djcm
