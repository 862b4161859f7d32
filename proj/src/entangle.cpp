#include "djcm/entangle.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "djcm/error.hpp"

namespace djcm {

namespace {

constexpr double kStateTol = 1e-8;
// Eigenvalues of a two-qubit state at or below this are treated as exact zeros.
constexpr double kRankFloor = 1e-15;

// Flat index of the digits (iA, iB, n_a, n_b).
Index flat(const std::array<int, 4>& digit, const std::array<int, 4>& dims) {
  Index out = 0;
  for (int s = 0; s < 4; ++s) out = out * dims[s] + digit[s];
  return out;
}

// Flat indices of the full space grouped by the traced digits: rows[t][k] is
// the full index whose kept digits encode k and traced digits encode t.
std::vector<std::vector<Index>> cut_layout(const CompositeSpace& space, const BipartiteCut& cut) {
  const auto dims = space.dims();
  const int s1 = static_cast<int>(cut.first);
  const int s2 = static_cast<int>(cut.second);
  std::array<int, 2> traced{};
  int n = 0;
  for (int s = 0; s < 4; ++s) {
    if (s != s1 && s != s2) traced[n++] = s;
  }
  const int d1 = dims[s1], d2 = dims[s2], t1 = dims[traced[0]], t2 = dims[traced[1]];
  std::vector<std::vector<Index>> rows(static_cast<std::size_t>(t1 * t2),
                                       std::vector<Index>(static_cast<std::size_t>(d1 * d2)));
  std::array<int, 4> digit{};
  for (int x = 0; x < t1; ++x) {
    for (int y = 0; y < t2; ++y) {
      digit[traced[0]] = x;
      digit[traced[1]] = y;
      auto& row = rows[static_cast<std::size_t>(x * t2 + y)];
      for (int i = 0; i < d1; ++i) {
        for (int j = 0; j < d2; ++j) {
          digit[s1] = i;
          digit[s2] = j;
          row[static_cast<std::size_t>(i * d2 + j)] = flat(digit, dims);
        }
      }
    }
  }
  return rows;
}

void check_density(const Matrix& rho, const char* what) {
  const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  const double trace_err = std::abs(rho.trace() - Complex(1.0));
  if (herm > kStateTol || trace_err > kStateTol) {
    std::ostringstream msg;
    msg << what << ": not a density matrix (Hermiticity error " << herm << ", trace error " << trace_err << ")";
    throw ContractViolation(msg.str());
  }
}

// Rows of X indexed (i1, i2), replaced by rows (k1, k2) of (V1 ⊗ V2)† X.
Matrix compress_rows(const Matrix& x, const Matrix& v1, const Matrix& v2) {
  const Index d1 = v1.rows(), r1 = v1.cols(), d2 = v2.rows(), r2 = v2.cols();
  Matrix y(d1 * r2, x.cols());
  for (Index i1 = 0; i1 < d1; ++i1) {
    y.middleRows(i1 * r2, r2).noalias() = v2.adjoint() * x.middleRows(i1 * d2, d2);
  }
  Matrix z = Matrix::Zero(r1 * r2, x.cols());
  for (Index k1 = 0; k1 < r1; ++k1) {
    for (Index i1 = 0; i1 < d1; ++i1) {
      z.middleRows(k1 * r2, r2) += std::conj(v1(i1, k1)) * y.middleRows(i1 * r2, r2);
    }
  }
  return z;
}

Matrix support_basis(const Matrix& reduced, double tol) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (reduced + reduced.adjoint()));
  if (solver.info() != Eigen::Success) throw ContractViolation("negativity: eigensolver did not converge");
  const RealVector& w = solver.eigenvalues();
  Index keep = 0;
  while (keep < w.size() && w(w.size() - 1 - keep) > tol) ++keep;
  return solver.eigenvectors().rightCols(std::max<Index>(keep, 1));
}

}  // namespace

BipartiteCut::BipartiteCut(Factor x, Factor y) : first(std::min(x, y)), second(std::max(x, y)) {
  if (x == y) throw InvalidDimension("bipartite cut needs two distinct factors");
}

std::string BipartiteCut::name() const {
  static const char* names[] = {"A", "B", "a", "b"};
  return std::string(names[static_cast<int>(first)]) + names[static_cast<int>(second)];
}

std::array<int, 2> BipartiteCut::dims(const CompositeSpace& space) const {
  return {space.dim(first), space.dim(second)};
}

namespace {

Operator trace_dense(const Matrix& m, const CompositeSpace& space, const BipartiteCut& cut,
                     const std::vector<Index>* order = nullptr) {
  if (m.rows() != space.dim() || m.cols() != space.dim()) {
    throw InvalidDimension("partial_trace: operator does not match space");
  }
  auto layout = cut_layout(space, cut);
  if (order) {
    std::vector<Index> position(order->size());
    for (std::size_t p = 0; p < order->size(); ++p) position[static_cast<std::size_t>((*order)[p])] = static_cast<Index>(p);
    for (auto& rows : layout) {
      for (Index& i : rows) i = position[static_cast<std::size_t>(i)];
    }
  }
  const auto [d1, d2] = cut.dims(space);
  const Index kept = Index{d1} * d2;
  Matrix out = Matrix::Zero(kept, kept);
  for (const auto& rows : layout) {
    for (Index l = 0; l < kept; ++l) {
      const Index col = rows[static_cast<std::size_t>(l)];
      for (Index k = 0; k < kept; ++k) out(k, l) += m(rows[static_cast<std::size_t>(k)], col);
    }
  }
  return Operator(std::move(out), {d1, d2});
}

}  // namespace

Operator partial_trace(const Operator& rho, const CompositeSpace& space, const BipartiteCut& cut) {
  return trace_dense(rho.matrix(), space, cut);
}

Operator partial_trace(const StateSnapshot& state, const CompositeSpace& space, const BipartiteCut& cut) {
  if (state.rho) return trace_dense(*state.rho, space, cut, state.order.get());
  if (!state.kets) throw ContractViolation("partial_trace: empty state");
  const Matrix& kets = *state.kets;
  if (kets.rows() != space.dim()) throw InvalidDimension("partial_trace: state does not match space");
  const auto layout = cut_layout(space, cut);
  const auto [d1, d2] = cut.dims(space);
  const Index kept = Index{d1} * d2;
  const Index r = kets.cols();
  // rho_kept = sum over traced configurations of K_t K_t†.
  Matrix stacked(kept, static_cast<Index>(layout.size()) * r);
  for (std::size_t t = 0; t < layout.size(); ++t) {
    stacked.middleCols(static_cast<Index>(t) * r, r) = kets(layout[t], Eigen::all);
  }
  Matrix out(kept, kept);
  out.noalias() = stacked * stacked.adjoint();
  return Operator(std::move(out), {d1, d2});
}

Matrix partial_transpose(const Matrix& rho, int d1, int d2, Subsystem which) {
  const Index n = Index{d1} * d2;
  if (d1 < 1 || d2 < 1 || rho.rows() != n || rho.cols() != n) {
    throw InvalidDimension("partial_transpose: matrix is not " + std::to_string(d1) + "x" + std::to_string(d2) +
                           " bipartite");
  }
  Matrix out(n, n);
  for (int i1 = 0; i1 < d1; ++i1) {
    for (int j1 = 0; j1 < d1; ++j1) {
      const Index r = Index{i1} * d2, c = Index{j1} * d2;
      if (which == Subsystem::Second) {
        out.block(r, c, d2, d2) = rho.block(r, c, d2, d2).transpose();
      } else {
        out.block(r, c, d2, d2) = rho.block(c, r, d2, d2);
      }
    }
  }
  return out;
}

double concurrence(const Matrix& rho) {
  if (rho.rows() != 4 || rho.cols() != 4) throw InvalidDimension("concurrence: expected a 4x4 matrix");
  check_density(rho, "concurrence");
  const EigDecomposition eig = herm_eig(Operator(0.5 * (rho + rho.adjoint()), {2, 2}));
  if (eig.eigenvalues(0) < -kStateTol) {
    std::ostringstream msg;
    msg << "concurrence: state is not positive semidefinite (min eigenvalue " << eig.eigenvalues(0) << ")";
    throw ContractViolation(msg.str());
  }
  // rho = W W† with W = V sqrt(Λ). The eigenvalues of rho (σy⊗σy) rho* (σy⊗σy)
  // are the squared singular values of W^T (σy⊗σy) W, which avoids square
  // roots of near-zero eigenvalues.
  std::vector<Index> kept;
  for (Index k = 0; k < 4; ++k) {
    if (eig.eigenvalues(k) > kRankFloor) kept.push_back(k);
  }
  Matrix w(4, static_cast<Index>(kept.size()));
  for (std::size_t c = 0; c < kept.size(); ++c) {
    w.col(static_cast<Index>(c)) = std::sqrt(eig.eigenvalues(kept[c])) * eig.eigenvectors.col(kept[c]);
  }
  Matrix yy = Matrix::Zero(4, 4);
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;
  const Matrix tau = w.transpose() * yy * w;
  RealVector xi = RealVector::Zero(4);
  if (tau.size() > 0) {
    const RealVector s = Eigen::JacobiSVD<Matrix>(tau).singularValues();
    xi.head(s.size()) = s;
  }
  return std::clamp(xi(0) - xi(1) - xi(2) - xi(3), 0.0, 1.0);
}

double negativity(const Matrix& rho, int d1, int d2, Subsystem which) {
  const Matrix pt = partial_transpose(rho, d1, d2, which);
  const RealVector xi = herm_eigenvalues(0.5 * (pt + pt.adjoint()));
  double out = 0.0;
  for (Index k = 0; k < xi.size(); ++k) out += 0.5 * (std::abs(xi(k)) - xi(k));
  return out;
}

double negativity_on_support(const Matrix& rho, int d1, int d2, double rank_tol) {
  const Index n = Index{d1} * d2;
  if (rho.rows() != n || rho.cols() != n) throw InvalidDimension("negativity_on_support: shape mismatch");
  // Reduced states of the two factors, by index reshuffling.
  Matrix r1 = Matrix::Zero(d1, d1);
  Matrix r2 = Matrix::Zero(d2, d2);
  for (int i = 0; i < d1; ++i) {
    for (int j = 0; j < d1; ++j) r1(i, j) = rho.block(Index{i} * d2, Index{j} * d2, d2, d2).trace();
    r2 += rho.block(Index{i} * d2, Index{i} * d2, d2, d2);
  }
  const Matrix v1 = support_basis(r1, rank_tol);
  const Matrix v2 = support_basis(r2, rank_tol);
  // Restriction only pays off when it at least halves the dimension.
  if (2 * v1.cols() * v2.cols() > n) return negativity(rho, d1, d2);
  const Matrix half = compress_rows(rho, v1, v2);
  const Matrix compressed = compress_rows(Matrix(half.adjoint()), v1, v2).adjoint();
  return negativity(compressed, static_cast<int>(v1.cols()), static_cast<int>(v2.cols()));
}

EntanglementPoint measure_state(const StateSnapshot& state, const CompositeSpace& space,
                                const MeasureOptions& options) {
  EntanglementPoint p;
  const int n = space.cutoff();
  p.concurrence_AB = concurrence(partial_trace(state, space, BipartiteCut::atoms()).matrix());
  p.negativity_Aa = negativity(partial_trace(state, space, BipartiteCut::atom_field_a()).matrix(), 2, n);
  p.negativity_Ab = negativity(partial_trace(state, space, BipartiteCut::atom_field_b()).matrix(), 2, n);
  const Matrix fields = partial_trace(state, space, BipartiteCut::fields()).matrix();
  p.negativity_ab = options.exact_field_negativity ? negativity(fields, n, n)
                                                   : negativity_on_support(fields, n, n, options.support_tol);
  return p;
}

EntanglementPoint EntanglementSeries::at(std::size_t k) const {
  return {concurrence_AB.at(k), negativity_Aa.at(k), negativity_Ab.at(k), negativity_ab.at(k)};
}

EntanglementSeries measure_trajectory(const Trajectory& traj, const MeasureOptions& options) {
  const int points = traj.grid().points();
  EntanglementSeries out;
  out.gt = traj.grid().times();
  out.trace_error = traj.trace_error();
  out.leakage = traj.leakage();
  out.warnings = traj.warnings();
  std::vector<EntanglementPoint> values(static_cast<std::size_t>(points));

  unsigned threads = options.threads != 0 ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(points));
  auto work = [&](unsigned offset) {
    StateSnapshot state;
    for (int k = static_cast<int>(offset); k < points; k += static_cast<int>(threads)) {
      traj.state_into(k, state);
      values[static_cast<std::size_t>(k)] = measure_state(state, traj.space(), options);
    }
  };
  if (threads <= 1) {
    work(0);
  } else {
    std::exception_ptr failure;
    std::mutex guard;
    {
      std::vector<std::jthread> pool;
      for (unsigned w = 0; w < threads; ++w) {
        pool.emplace_back([&, w] {
          try {
            work(w);
          } catch (...) {
            std::lock_guard lock(guard);
            if (!failure) failure = std::current_exception();
          }
        });
      }
    }
    if (failure) std::rethrow_exception(failure);
  }

  for (const EntanglementPoint& p : values) {
    out.concurrence_AB.push_back(p.concurrence_AB);
    out.negativity_Aa.push_back(p.negativity_Aa);
    out.negativity_Ab.push_back(p.negativity_Ab);
    out.negativity_ab.push_back(p.negativity_ab);
  }
  return out;
}

std::vector<Interval> esd_intervals(const std::vector<double>& series, const std::vector<double>& gt,
                                    double threshold) {
  if (series.size() != gt.size()) throw DomainError("esd_intervals: series and time axis differ in length");
  if (!(threshold > 0.0)) throw DomainError("esd_intervals: threshold must be positive");
  auto crossing = [&](std::size_t above, std::size_t below) {
    const double f = (series[above] - threshold) / (series[above] - series[below]);
    return gt[above] + f * (gt[below] - gt[above]);
  };
  std::vector<Interval> out;
  const std::size_t n = series.size();
  std::size_t i = 0;
  while (i < n) {
    if (series[i] >= threshold) {
      ++i;
      continue;
    }
    const std::size_t begin = i;
    while (i < n && series[i] < threshold) ++i;
    if (begin == 0) continue;
    const std::size_t last = i - 1;
    Interval iv;
    iv.start = crossing(begin - 1, begin);
    iv.end = last + 1 < n ? crossing(last + 1, last) : gt[last];
    out.push_back(iv);
  }
  return out;
}

double total_duration(const std::vector<Interval>& intervals) {
  double out = 0.0;
  for (const Interval& iv : intervals) out += iv.length();
  return out;
}

}  // namespace djcm
