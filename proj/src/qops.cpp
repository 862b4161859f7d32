#include "djcm/qops.hpp"

#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>

#include "djcm/error.hpp"

namespace djcm {

namespace {

Index product(const std::vector<int>& dims) {
  return std::accumulate(dims.begin(), dims.end(), Index{1}, std::multiplies<>());
}

void require_same_dims(const Operator& a, const Operator& b, const char* what) {
  if (a.dims() != b.dims()) {
    throw InvalidDimension(std::string(what) + ": operand factor dimensions differ");
  }
}

constexpr double kHermitianTol = 1e-10;

}  // namespace

Operator::Operator(Matrix data, std::vector<int> dims) : data_(std::move(data)), dims_(std::move(dims)) {
  if (data_.rows() != data_.cols()) {
    throw InvalidDimension("Operator: matrix must be square");
  }
  for (int d : dims_) {
    if (d < 1) throw InvalidDimension("Operator: factor dimensions must be positive");
  }
  if (product(dims_) != data_.rows()) {
    throw InvalidDimension("Operator: product of factor dims (" + std::to_string(product(dims_)) +
                           ") != side length (" + std::to_string(data_.rows()) + ")");
  }
}

Operator::Operator(Matrix data) {
  const Index side = data.rows();
  *this = Operator(std::move(data), std::vector<int>{static_cast<int>(side)});
}

Operator Operator::identity(std::vector<int> dims) {
  const Index n = product(dims);
  return Operator(Matrix::Identity(n, n), std::move(dims));
}

Operator Operator::zero(std::vector<int> dims) {
  const Index n = product(dims);
  return Operator(Matrix::Zero(n, n), std::move(dims));
}

double Operator::hermiticity_error() const {
  if (data_.size() == 0) return 0.0;
  return (data_ - data_.adjoint()).cwiseAbs().maxCoeff();
}

double Operator::unitarity_error() const {
  if (data_.size() == 0) return 0.0;
  return (data_.adjoint() * data_ - Matrix::Identity(side(), side())).cwiseAbs().maxCoeff();
}

Operator Operator::adjoint() const { return Operator(data_.adjoint(), dims_); }

Operator operator+(const Operator& a, const Operator& b) {
  require_same_dims(a, b, "operator+");
  return Operator(a.data_ + b.data_, a.dims_);
}

Operator operator-(const Operator& a, const Operator& b) {
  require_same_dims(a, b, "operator-");
  return Operator(a.data_ - b.data_, a.dims_);
}

Operator operator*(const Operator& a, const Operator& b) {
  require_same_dims(a, b, "operator*");
  return Operator(a.data_ * b.data_, a.dims_);
}

Operator operator*(Complex s, const Operator& a) { return Operator(s * a.data_, a.dims_); }

Operator commutator(const Operator& a, const Operator& b) { return a * b - b * a; }

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index j = 0; j < a.cols(); ++j) {
    for (Index i = 0; i < a.rows(); ++i) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()).noalias() = a(i, j) * b;
    }
  }
  return out;
}

Operator kron(const Operator& a, const Operator& b) {
  std::vector<int> dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  return Operator(kron(a.matrix(), b.matrix()), std::move(dims));
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw InvalidDimension("max_abs_diff: shape mismatch");
  }
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

double max_abs_diff(const Operator& a, const Operator& b) {
  require_same_dims(a, b, "max_abs_diff");
  return max_abs_diff(a.matrix(), b.matrix());
}

CompositeSpace::CompositeSpace(int cutoff) : cutoff_(cutoff) {
  if (cutoff < 2) {
    throw InvalidDimension("CompositeSpace: Fock cutoff must be >= 2, got " + std::to_string(cutoff));
  }
}

Index CompositeSpace::index(int atom_a, int atom_b, int photons_a, int photons_b) const {
  return ((Index{atom_a} * 2 + atom_b) * cutoff_ + photons_a) * cutoff_ + photons_b;
}

BasisLabel CompositeSpace::label(Index flat) const {
  BasisLabel l;
  l.photons_b = static_cast<int>(flat % cutoff_);
  flat /= cutoff_;
  l.photons_a = static_cast<int>(flat % cutoff_);
  flat /= cutoff_;
  l.atom_b = static_cast<int>(flat % 2);
  l.atom_a = static_cast<int>(flat / 2);
  return l;
}

Operator annihilation(int cutoff) {
  if (cutoff < 2) {
    throw InvalidDimension("annihilation: cutoff must be >= 2, got " + std::to_string(cutoff));
  }
  Matrix a = Matrix::Zero(cutoff, cutoff);
  for (int n = 1; n < cutoff; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return Operator(std::move(a));
}

Operator creation(int cutoff) { return annihilation(cutoff).adjoint(); }

Operator number_op(int cutoff) {
  if (cutoff < 2) {
    throw InvalidDimension("number_op: cutoff must be >= 2, got " + std::to_string(cutoff));
  }
  Matrix n = Matrix::Zero(cutoff, cutoff);
  for (int k = 0; k < cutoff; ++k) n(k, k) = static_cast<double>(k);
  return Operator(std::move(n));
}

AtomicOps atomic_ops() {
  Matrix z = Matrix::Zero(2, 2);
  z(kExcited, kExcited) = 1.0;
  z(kGround, kGround) = -1.0;
  Matrix plus = Matrix::Zero(2, 2);
  plus(kExcited, kGround) = 1.0;
  return {Operator(z), Operator(plus), Operator(Matrix(plus.adjoint()))};
}

Operator embed_product(std::initializer_list<std::pair<Factor, const Operator*>> ops,
                       const CompositeSpace& space) {
  const auto dims = space.dims();
  std::array<const Operator*, 4> placed{};
  for (const auto& [slot, op] : ops) {
    const int s = static_cast<int>(slot);
    if (s < 0 || s > 3) throw InvalidDimension("embed: slot out of range");
    if (placed[s] != nullptr) throw InvalidDimension("embed: slot used twice");
    if (op->side() != dims[s]) {
      std::ostringstream msg;
      msg << "embed: operator side " << op->side() << " does not match slot " << s << " dimension "
          << dims[s];
      throw InvalidDimension(msg.str());
    }
    placed[s] = op;
  }
  Matrix out = Matrix::Identity(1, 1);
  for (int s = 0; s < 4; ++s) {
    if (placed[s] != nullptr) {
      out = kron(out, placed[s]->matrix());
    } else {
      out = kron(out, Matrix(Matrix::Identity(dims[s], dims[s])));
    }
  }
  return Operator(std::move(out), space.dim_list());
}

Operator embed(const Operator& op, Factor slot, const CompositeSpace& space) {
  return embed_product({{slot, &op}}, space);
}

double EigDecomposition::reconstruction_error(const Operator& h) const {
  const Matrix rebuilt = eigenvectors * eigenvalues.cast<Complex>().asDiagonal() * eigenvectors.adjoint();
  return max_abs_diff(rebuilt, h.matrix());
}

EigDecomposition herm_eig(const Operator& h) {
  const double asym = h.hermiticity_error();
  if (!(asym < kHermitianTol)) {
    std::ostringstream msg;
    msg << "herm_eig: input is not Hermitian (||H - H^dagger||_max = " << asym << ")";
    throw ContractViolation(msg.str());
  }
  // Symmetrize so roundoff asymmetry below the tolerance does not leak in.
  const Matrix sym = 0.5 * (h.matrix() + h.matrix().adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw ContractViolation("herm_eig: eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

RealVector herm_eigenvalues(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw ContractViolation("herm_eigenvalues: eigensolver did not converge");
  }
  return solver.eigenvalues();
}

Operator unitary_exp(const Operator& h, double t) {
  const EigDecomposition eig = herm_eig(h);
  Vector phases(eig.eigenvalues.size());
  for (Index k = 0; k < phases.size(); ++k) phases(k) = std::polar(1.0, -eig.eigenvalues(k) * t);
  Matrix u = eig.eigenvectors * phases.asDiagonal() * eig.eigenvectors.adjoint();
  return Operator(std::move(u), h.dims());
}

}  // namespace djcm
