#include "djcm/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "djcm/error.hpp"

namespace djcm {

namespace {

// Union-find over basis indices, used to split H into independent blocks.
class DisjointSets {
 public:
  explicit DisjointSets(Index n) : parent_(static_cast<std::size_t>(n)) {
    std::iota(parent_.begin(), parent_.end(), Index{0});
  }
  Index find(Index i) {
    while (parent_[i] != i) {
      parent_[i] = parent_[parent_[i]];
      i = parent_[i];
    }
    return i;
  }
  void unite(Index a, Index b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<Index> parent_;
};

Matrix jc_pair(double g, int k, double t) {
  // Basis (|e,k-1>, |g,k>).
  const double w = g * std::sqrt(static_cast<double>(k)) * t;
  Matrix u(2, 2);
  u << std::cos(w), Complex(0.0, -std::sin(w)), Complex(0.0, -std::sin(w)), std::cos(w);
  return u;
}

struct CavityState {
  int atom;
  int photons;
};

// States of one cavity with k excitations inside the cutoff.
std::vector<CavityState> cavity_sector(int k, int cutoff) {
  std::vector<CavityState> out;
  if (k >= 1 && k - 1 < cutoff) out.push_back({kExcited, k - 1});
  if (k < cutoff) out.push_back({kGround, k});
  return out;
}

// out[:, o+j] = sum_k in[:, o+k] conj(u(j, k)) for the strip starting at o.
// Column axpys beat a general product for the tiny inner dimension here.
void right_multiply_adjoint(const Matrix& in, const Matrix& u, Index o, Matrix& out) {
  const Index s = u.rows();
  for (Index j = 0; j < s; ++j) {
    auto col = out.col(o + j);
    col.noalias() = std::conj(u(j, 0)) * in.col(o);
    for (Index k = 1; k < s; ++k) col.noalias() += std::conj(u(j, k)) * in.col(o + k);
  }
}

// out = u * in for an S x S block, in split real arithmetic; markedly faster
// than std::complex products for these sizes.
template <int S>
void small_matvec(const Matrix& u, const Complex* in, Complex* out) {
  const double* ud = reinterpret_cast<const double*>(u.data());
  const double* x = reinterpret_cast<const double*>(in);
  double re[S] = {};
  double im[S] = {};
  for (int k = 0; k < S; ++k) {
    const double xr = x[2 * k], xi = x[2 * k + 1];
    for (int j = 0; j < S; ++j) {
      const double ur = ud[2 * (j + S * k)], ui = ud[2 * (j + S * k) + 1];
      re[j] += ur * xr - ui * xi;
      im[j] += ur * xi + ui * xr;
    }
  }
  for (int j = 0; j < S; ++j) out[j] = Complex(re[j], im[j]);
}

}  // namespace

TimeGrid::TimeGrid(double t_max, int points) : t_max_(t_max), points_(points) {
  if (!std::isfinite(t_max) || !(t_max > 0.0)) {
    std::ostringstream msg;
    msg << "time grid: t_max must be positive, got " << t_max;
    throw ConfigError(msg.str());
  }
  if (points < 2) {
    throw ConfigError("time grid: at least 2 points required, got " + std::to_string(points));
  }
}

double TimeGrid::at(int k) const {
  if (k < 0 || k >= points_) throw ConfigError("time grid: index out of range");
  if (k == points_ - 1) return t_max_;
  return t_max_ * static_cast<double>(k) / static_cast<double>(points_ - 1);
}

std::vector<double> TimeGrid::times() const {
  std::vector<double> out(static_cast<std::size_t>(points_));
  for (int k = 0; k < points_; ++k) out[static_cast<std::size_t>(k)] = at(k);
  return out;
}

BlockUnitary::BlockUnitary(Index dim, std::vector<Block> blocks) : dim_(dim), blocks_(std::move(blocks)) {
  std::vector<char> seen(static_cast<std::size_t>(dim), 0);
  for (const Block& b : blocks_) {
    const Index s = static_cast<Index>(b.indices.size());
    if (b.u.rows() != s || b.u.cols() != s) {
      throw InvalidDimension("BlockUnitary: block matrix does not match its index list");
    }
    for (Index i : b.indices) {
      if (i < 0 || i >= dim || seen[static_cast<std::size_t>(i)]) {
        throw InvalidDimension("BlockUnitary: blocks must partition the basis");
      }
      seen[static_cast<std::size_t>(i)] = 1;
    }
  }
  if (std::find(seen.begin(), seen.end(), 0) != seen.end()) {
    throw InvalidDimension("BlockUnitary: blocks must cover the basis");
  }
}

Matrix BlockUnitary::apply(const Matrix& kets) const {
  if (kets.rows() != dim_) throw InvalidDimension("BlockUnitary::apply: row count mismatch");
  Matrix out(kets.rows(), kets.cols());
  for (const Block& b : blocks_) {
    out(b.indices, Eigen::all) = b.u * kets(b.indices, Eigen::all);
  }
  return out;
}

Matrix BlockUnitary::conjugate(const Matrix& rho) const {
  if (rho.rows() != dim_ || rho.cols() != dim_) {
    throw InvalidDimension("BlockUnitary::conjugate: shape mismatch");
  }
  const std::vector<Index> perm = order();
  const Matrix sorted = rho(perm, perm);
  Matrix x;
  conjugate_sorted(sorted, x);
  Matrix out(dim_, dim_);
  out(perm, perm) = x;
  return out;
}

std::vector<Index> BlockUnitary::order() const {
  std::vector<Index> out;
  out.reserve(static_cast<std::size_t>(dim_));
  for (const Block& b : blocks_) out.insert(out.end(), b.indices.begin(), b.indices.end());
  return out;
}

void BlockUnitary::conjugate_sorted(const Matrix& rho, Matrix& out) const {
  if (rho.rows() != dim_ || rho.cols() != dim_) {
    throw InvalidDimension("BlockUnitary::conjugate_sorted: shape mismatch");
  }
  thread_local Matrix left;
  left.resize(dim_, dim_);
  out.resize(dim_, dim_);

  // left = U rho, one column at a time; each block is a small dense matvec on
  // a contiguous segment.
  for (Index c = 0; c < dim_; ++c) {
    const Complex* in = rho.data() + c * dim_;
    Complex* dst = left.data() + c * dim_;
    Index offset = 0;
    for (const Block& b : blocks_) {
      const Index s = b.u.rows();
      switch (s) {
        case 1: dst[offset] = b.u(0, 0) * in[offset]; break;
        case 2: small_matvec<2>(b.u, in + offset, dst + offset); break;
        case 3: small_matvec<3>(b.u, in + offset, dst + offset); break;
        case 4: small_matvec<4>(b.u, in + offset, dst + offset); break;
        default:
          Eigen::Map<Vector>(dst + offset, s).noalias() = b.u * Eigen::Map<const Vector>(in + offset, s);
      }
      offset += s;
    }
  }
  // out = left U†, by column strips.
  Index offset = 0;
  for (const Block& b : blocks_) {
    right_multiply_adjoint(left, b.u, offset, out);
    offset += b.u.rows();
  }
}

RealVector BlockUnitary::populations(const Matrix& rho) const {
  if (rho.rows() != dim_ || rho.cols() != dim_) {
    throw InvalidDimension("BlockUnitary::populations: shape mismatch");
  }
  RealVector out(dim_);
  for (const Block& b : blocks_) {
    const Matrix sub = rho(b.indices, b.indices);
    const Matrix rotated = b.u * sub * b.u.adjoint();
    for (std::size_t k = 0; k < b.indices.size(); ++k) {
      out(b.indices[k]) = rotated(static_cast<Index>(k), static_cast<Index>(k)).real();
    }
  }
  return out;
}

Matrix BlockUnitary::dense() const {
  Matrix out = Matrix::Zero(dim_, dim_);
  for (const Block& b : blocks_) out(b.indices, b.indices) = b.u;
  return out;
}

SpectralPropagator::SpectralPropagator(const Operator& h) : dim_(h.side()) {
  const double asym = h.hermiticity_error();
  if (!(asym < 1e-10)) {
    std::ostringstream msg;
    msg << "SpectralPropagator: generator is not Hermitian (||H - H^dagger||_max = " << asym << ")";
    throw ContractViolation(msg.str());
  }
  const Matrix& m = h.matrix();
  DisjointSets sets(dim_);
  for (Index j = 0; j < dim_; ++j) {
    for (Index i = 0; i < j; ++i) {
      if (m(i, j) != Complex(0.0) || m(j, i) != Complex(0.0)) sets.unite(i, j);
    }
  }
  std::vector<Index> slot(static_cast<std::size_t>(dim_), -1);
  std::vector<std::vector<Index>> groups;
  for (Index i = 0; i < dim_; ++i) {
    const Index root = sets.find(i);
    if (slot[root] < 0) {
      slot[root] = static_cast<Index>(groups.size());
      groups.emplace_back();
    }
    groups[static_cast<std::size_t>(slot[root])].push_back(i);
  }
  blocks_.reserve(groups.size());
  for (auto& indices : groups) {
    Matrix sub = m(indices, indices);
    sub = 0.5 * (sub + sub.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<Matrix> solver(sub);
    if (solver.info() != Eigen::Success) {
      throw ContractViolation("SpectralPropagator: eigensolver did not converge");
    }
    blocks_.push_back({std::move(indices), solver.eigenvalues(), solver.eigenvectors()});
  }
}

BlockUnitary SpectralPropagator::at(double t) const {
  std::vector<BlockUnitary::Block> out;
  out.reserve(blocks_.size());
  for (const Block& b : blocks_) {
    Vector phases(b.energies.size());
    for (Index k = 0; k < phases.size(); ++k) phases(k) = std::polar(1.0, -b.energies(k) * t);
    out.push_back({b.indices, b.vectors * phases.asDiagonal() * b.vectors.adjoint()});
  }
  return BlockUnitary(dim_, std::move(out));
}

Index SpectralPropagator::largest_block() const {
  Index out = 0;
  for (const Block& b : blocks_) out = std::max(out, static_cast<Index>(b.indices.size()));
  return out;
}

Operator propagator(const Operator& h, double t) { return unitary_exp(h, t); }

BlockUnitary analytic_block_unitary(const CompositeSpace& space, double g, double t) {
  const int n = space.cutoff();
  // Per-cavity sector unitaries, indexed by excitation number 0..N.
  std::vector<std::vector<CavityState>> states(static_cast<std::size_t>(n + 1));
  std::vector<Matrix> local(static_cast<std::size_t>(n + 1));
  for (int k = 0; k <= n; ++k) {
    states[k] = cavity_sector(k, n);
    local[k] = states[k].size() == 2 ? jc_pair(g, k, t) : Matrix::Identity(1, 1);
  }

  std::vector<BlockUnitary::Block> blocks;
  blocks.reserve(static_cast<std::size_t>((n + 1) * (n + 1)));
  for (int ka = 0; ka <= n; ++ka) {
    for (int kb = 0; kb <= n; ++kb) {
      BlockUnitary::Block block;
      for (const CavityState& sa : states[ka]) {
        for (const CavityState& sb : states[kb]) {
          block.indices.push_back(space.index(sa.atom, sb.atom, sa.photons, sb.photons));
        }
      }
      block.u = kron(local[ka], local[kb]);
      blocks.push_back(std::move(block));
    }
  }
  return BlockUnitary(space.dim(), std::move(blocks));
}

Operator analytic_propagator(const CompositeSpace& space, double g, double t) {
  return Operator(analytic_block_unitary(space, g, t).dense(), space.dim_list());
}

Matrix StateSnapshot::density() const {
  if (rho && order) {
    Matrix out(rho->rows(), rho->cols());
    out(*order, *order) = *rho;
    return out;
  }
  if (rho) return *rho;
  if (kets) return *kets * kets->adjoint();
  throw ContractViolation("StateSnapshot: empty state");
}

double StateSnapshot::trace() const {
  if (rho) return rho->trace().real();
  if (kets) return kets->squaredNorm();
  throw ContractViolation("StateSnapshot: empty state");
}

double field_leakage(const RealVector& populations, const CompositeSpace& space) {
  const int top = space.cutoff() - 2;
  double a = 0.0;
  double b = 0.0;
  for (Index i = 0; i < populations.size(); ++i) {
    const BasisLabel l = space.label(i);
    if (l.photons_a >= top) a += populations(i);
    if (l.photons_b >= top) b += populations(i);
  }
  return std::max(a, b);
}

Trajectory::Trajectory(const PreparedState& initial, UnitarySource source, TimeGrid grid,
                       Index max_ensemble_rank)
    : space_(initial.space), grid_(grid), source_(std::move(source)) {
  if (initial.rho.side() != space_.dim()) {
    throw InvalidDimension("trajectory: initial state does not match its space");
  }
  kets0_ = initial.ensemble(max_ensemble_rank);
  if (!kets0_) {
    rho0_ = initial.rho.matrix();
    auto order = std::make_shared<const std::vector<Index>>(source_(0.0).order());
    rho0_sorted_ = (*rho0_)(*order, *order);
    order_ = std::move(order);
  }

  const int points = grid_.points();
  trace_error_.resize(static_cast<std::size_t>(points));
  leakage_.resize(static_cast<std::size_t>(points));
  for (int k = 0; k < points; ++k) {
    const BlockUnitary u = source_(grid_.at(k));
    if (u.dim() != space_.dim()) throw InvalidDimension("trajectory: propagator dimension mismatch");
    RealVector pops;
    if (kets0_) {
      pops = u.apply(*kets0_).rowwise().squaredNorm();
    } else {
      pops = u.populations(*rho0_);
    }
    trace_error_[k] = std::abs(pops.sum() - 1.0);
    leakage_[k] = field_leakage(pops, space_);
  }

  const auto worst = std::max_element(leakage_.begin(), leakage_.end());
  const double gt = grid_.at(static_cast<int>(worst - leakage_.begin()));
  if (*worst > kLeakageFail) {
    std::ostringstream msg;
    msg << "population " << *worst << " reaches the top two Fock levels at gt=" << gt << " with cutoff "
        << space_.cutoff() << "; increase the cutoff";
    throw LeakageError(msg.str());
  }
  if (*worst > kLeakageWarn) {
    std::ostringstream msg;
    msg << "leakage " << *worst << " at gt=" << gt << " exceeds " << kLeakageWarn << " (cutoff "
        << space_.cutoff() << ")";
    warnings_.push_back(msg.str());
  }
}

namespace {

void fill_state(const BlockUnitary& u, const std::optional<Matrix>& kets0, const std::optional<Matrix>& rho0,
                const std::optional<Matrix>& rho0_sorted, const std::shared_ptr<const std::vector<Index>>& order,
                StateSnapshot& out) {
  if (kets0) {
    out.rho.reset();
    out.order.reset();
    out.kets = u.apply(*kets0);
    return;
  }
  out.kets.reset();
  if (u.order() == *order) {
    if (!out.rho) out.rho.emplace();
    u.conjugate_sorted(*rho0_sorted, *out.rho);
    out.order = order;
  } else {
    out.rho = u.conjugate(*rho0);
    out.order.reset();
  }
}

}  // namespace

StateSnapshot Trajectory::state_at(double t) const {
  StateSnapshot out;
  fill_state(source_(t), kets0_, rho0_, rho0_sorted_, order_, out);
  return out;
}

StateSnapshot Trajectory::state(int k) const { return state_at(grid_.at(k)); }

void Trajectory::state_into(int k, StateSnapshot& out) const {
  fill_state(source_(grid_.at(k)), kets0_, rho0_, rho0_sorted_, order_, out);
}

double Trajectory::max_leakage() const {
  return leakage_.empty() ? 0.0 : *std::max_element(leakage_.begin(), leakage_.end());
}

Trajectory trajectory(const PreparedState& initial, std::shared_ptr<const SpectralPropagator> prop,
                      const TimeGrid& grid) {
  return Trajectory(initial, [prop](double t) { return prop->at(t); }, grid);
}

Trajectory trajectory(const PreparedState& initial, const Operator& h, const TimeGrid& grid) {
  if (h.side() != initial.space.dim()) throw InvalidDimension("trajectory: Hamiltonian dimension mismatch");
  return trajectory(initial, std::make_shared<const SpectralPropagator>(h), grid);
}

Trajectory analytic_trajectory(const PreparedState& initial, double g, const TimeGrid& grid) {
  const CompositeSpace space = initial.space;
  return Trajectory(initial, [space, g](double t) { return analytic_block_unitary(space, g, t); }, grid);
}

}  // namespace djcm
