#pragma once

#include <array>
#include <complex>
#include <initializer_list>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace djcm {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Dense complex square matrix tagged with the dimensions of the tensor
/// factors it acts on. The product of `dims` always equals the side length.
class Operator {
 public:
  Operator() = default;
  Operator(Matrix data, std::vector<int> dims);
  // Single-factor operator; dims = {side}.
  explicit Operator(Matrix data);

  static Operator identity(std::vector<int> dims);
  static Operator zero(std::vector<int> dims);

  const Matrix& matrix() const { return data_; }
  const std::vector<int>& dims() const { return dims_; }
  Index side() const { return data_.rows(); }
  Complex operator()(Index row, Index col) const { return data_(row, col); }

  // max_ij |A_ij - conj(A_ji)|
  double hermiticity_error() const;
  bool is_hermitian(double tol = 1e-12) const { return hermiticity_error() < tol; }
  // max_ij |(A†A - I)_ij|
  double unitarity_error() const;
  bool is_unitary(double tol = 1e-10) const { return unitarity_error() < tol; }

  Operator adjoint() const;
  Complex trace() const { return data_.trace(); }

  friend Operator operator+(const Operator& a, const Operator& b);
  friend Operator operator-(const Operator& a, const Operator& b);
  friend Operator operator*(const Operator& a, const Operator& b);
  friend Operator operator*(Complex s, const Operator& a);
  friend Operator operator*(const Operator& a, Complex s) { return s * a; }

 private:
  Matrix data_;
  std::vector<int> dims_;
};

Operator commutator(const Operator& a, const Operator& b);
// Tensor product; dims are concatenated.
Operator kron(const Operator& a, const Operator& b);
Matrix kron(const Matrix& a, const Matrix& b);
// max_ij |A_ij - B_ij|; dimension mismatch throws.
double max_abs_diff(const Operator& a, const Operator& b);
double max_abs_diff(const Matrix& a, const Matrix& b);

/// Factor slots of the double Jaynes-Cummings space, in storage order.
enum class Factor : int { AtomA = 0, AtomB = 1, FieldA = 2, FieldB = 3 };

// Atom basis convention: |e> is index 0, |g> is index 1.
inline constexpr int kExcited = 0;
inline constexpr int kGround = 1;

struct BasisLabel {
  int atom_a = 0;
  int atom_b = 0;
  int photons_a = 0;
  int photons_b = 0;
};

/// The (atom A, atom B, field a, field b) product space with Fock cutoff N
/// (levels 0..N-1). Flat index = ((iA*2 + iB)*N + n_a)*N + n_b.
class CompositeSpace {
 public:
  explicit CompositeSpace(int cutoff);

  int cutoff() const { return cutoff_; }
  std::array<int, 4> dims() const { return {2, 2, cutoff_, cutoff_}; }
  std::vector<int> dim_list() const { return {2, 2, cutoff_, cutoff_}; }
  int dim(Factor f) const { return dims()[static_cast<int>(f)]; }
  Index dim() const { return Index{4} * cutoff_ * cutoff_; }

  Index index(int atom_a, int atom_b, int photons_a, int photons_b) const;
  Index index(const BasisLabel& l) const { return index(l.atom_a, l.atom_b, l.photons_a, l.photons_b); }
  BasisLabel label(Index flat) const;

  friend bool operator==(const CompositeSpace&, const CompositeSpace&) = default;

 private:
  int cutoff_;
};

// Bosonic annihilation operator on levels 0..cutoff-1: <n-1|a|n> = sqrt(n).
Operator annihilation(int cutoff);
Operator creation(int cutoff);
Operator number_op(int cutoff);

struct AtomicOps {
  Operator sigma_z;      // diag(+1, -1) in (|e>, |g>)
  Operator sigma_plus;   // |e><g|
  Operator sigma_minus;  // |g><e|
};
AtomicOps atomic_ops();

/// I ⊗ … ⊗ op ⊗ … ⊗ I with `op` at `slot`.
Operator embed(const Operator& op, Factor slot, const CompositeSpace& space);

/// Product of local operators on distinct slots, built as one Kronecker
/// product (no dense matrix multiplication). Slots may appear at most once.
Operator embed_product(std::initializer_list<std::pair<Factor, const Operator*>> ops,
                       const CompositeSpace& space);

struct EigDecomposition {
  RealVector eigenvalues;  // ascending
  Matrix eigenvectors;     // columns, unitary

  // max |V diag(λ) V† - H|
  double reconstruction_error(const Operator& h) const;
};

// Hermitian eigendecomposition. Throws ContractViolation when
// ||H - H†||_max >= 1e-10.
EigDecomposition herm_eig(const Operator& h);
RealVector herm_eigenvalues(const Matrix& h);

// exp(-i H t) = V diag(exp(-i λ t)) V†.
Operator unitary_exp(const Operator& h, double t);

}  // namespace djcm
