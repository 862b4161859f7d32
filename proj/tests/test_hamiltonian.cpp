#include <cmath>
#include <random>

#include "doctest.h"
#include "djcm/error.hpp"
#include "djcm/hamiltonian.hpp"
#include "support.hpp"

using namespace djcm;

namespace {

std::vector<ModelParams> random_models() {
  std::uniform_real_distribution<double> u(0.1, 3.0);
  auto& r = test::rng();
  return {ModelParams::bare(u(r)), ModelParams::ising(u(r), u(r)), ModelParams::detuned(u(r), u(r)),
          ModelParams::kerr_medium(u(r), u(r), u(r))};
}

}  // namespace

TEST_CASE("bare coupling matrix element") {
  const CompositeSpace space(16);
  const Operator h = build(ModelParams::bare(), space);
  CHECK(h(space.index(kExcited, kGround, 0, 0), space.index(kGround, kGround, 1, 0)) == Complex(1.0));
  for (int n = 0; n < 15; ++n) {
    CHECK(std::abs(h(space.index(kExcited, kGround, n, 3), space.index(kGround, kGround, n + 1, 3)) -
                   std::sqrt(n + 1.0)) < 1e-14);
    CHECK(std::abs(h(space.index(kGround, kExcited, 2, n), space.index(kGround, kGround, 2, n + 1)) -
                   std::sqrt(n + 1.0)) < 1e-14);
  }
  CHECK(std::abs(build(ModelParams::bare(2.5), space)(space.index(kExcited, kGround, 0, 0),
                                                        space.index(kGround, kGround, 1, 0)) -
                 2.5) < 1e-15);
}

TEST_CASE("Ising with zero coupling equals bare") {
  const CompositeSpace space(8);
  CHECK(max_abs_diff(build(ModelParams::ising(0.0), space), build(ModelParams::bare(), space)) == 0.0);
}

TEST_CASE("Ising term is diagonal sigma_z sigma_z") {
  const CompositeSpace space(6);
  const Operator d = build(ModelParams::ising(0.7), space) - build(ModelParams::bare(), space);
  CHECK(d(space.index(kExcited, kExcited, 1, 2), space.index(kExcited, kExcited, 1, 2)) == Complex(0.7));
  CHECK(d(space.index(kExcited, kGround, 1, 2), space.index(kExcited, kGround, 1, 2)) == Complex(-0.7));
  CHECK(d(space.index(kGround, kGround, 0, 0), space.index(kGround, kGround, 0, 0)) == Complex(0.7));
}

TEST_CASE("Kerr shift") {
  const CompositeSpace space(16);
  const Operator d = build(ModelParams::kerr_medium(0.5, 1.0), space) - build(ModelParams::bare(), space);
  CHECK(std::abs(d(space.index(kGround, kGround, 2, 0), space.index(kGround, kGround, 2, 0)) - 1.0) < 1e-14);
  CHECK(std::abs(d(space.index(kGround, kGround, 3, 4), space.index(kGround, kGround, 3, 4)) - 0.5 * (6 + 12)) < 1e-13);
  CHECK(std::abs(d(space.index(kGround, kGround, 1, 1), space.index(kGround, kGround, 1, 1))) < 1e-15);
  const Operator d2 = build(ModelParams::kerr_medium(0.5, 2.0), space) - build(ModelParams::bare(), space);
  CHECK(std::abs(d2(space.index(kGround, kGround, 2, 0), space.index(kGround, kGround, 2, 0)) - 2.0) < 1e-14);
}

TEST_CASE("detuning acts on the ground state of each atom") {
  const CompositeSpace space(6);
  const Operator d = build(ModelParams::detuned(2.0), space) - build(ModelParams::bare(), space);
  CHECK(d(space.index(kGround, kGround, 1, 1), space.index(kGround, kGround, 1, 1)) == Complex(4.0));
  CHECK(d(space.index(kExcited, kGround, 1, 1), space.index(kExcited, kGround, 1, 1)) == Complex(2.0));
  CHECK(d(space.index(kExcited, kExcited, 1, 1), space.index(kExcited, kExcited, 1, 1)) == Complex(0.0));
}

TEST_CASE("every variant is hermitian and conserves excitations") {
  const CompositeSpace space(10);
  const Operator n_exc = excitation_operator(space);
  for (const ModelParams& p : random_models()) {
    const Operator h = build(p, space);
    CHECK(h.hermiticity_error() < 1e-12);
    CHECK(commutator(h, n_exc).matrix().cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("excitation operator eigenvalues") {
  const CompositeSpace space(6);
  const Operator n = excitation_operator(space);
  CHECK(n(space.index(kExcited, kGround, 0, 0), space.index(kExcited, kGround, 0, 0)) == Complex(1.0));
  CHECK(n(space.index(kGround, kGround, 2, 3), space.index(kGround, kGround, 2, 3)) == Complex(5.0));
  CHECK(n(space.index(kExcited, kExcited, 2, 3), space.index(kExcited, kExcited, 2, 3)) == Complex(7.0));
}

TEST_CASE("variants are block diagonal in the cavity sector labels") {
  const CompositeSpace space(7);
  const std::vector<int> labels = cavity_sector_labels(space);
  for (const ModelParams& p : random_models()) {
    const Operator h = build(p, space);
    double off = 0.0;
    for (Index i = 0; i < space.dim(); ++i)
      for (Index j = 0; j < space.dim(); ++j)
        if (labels[i] != labels[j]) off = std::max(off, std::abs(h(i, j)));
    CHECK(off == 0.0);
  }
}

TEST_CASE("free terms at resonance commute with every variant") {
  const CompositeSpace space(8);
  const Operator h0 = free_terms(1.7, 1.7, space);
  CHECK(h0.hermiticity_error() == 0.0);
  for (const ModelParams& p : random_models()) {
    CHECK(commutator(build(p, space), h0).matrix().cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("model parameter validation") {
  ModelParams p = ModelParams::bare();
  p.j_z = 0.3;
  CHECK_THROWS_AS(p.validate(), ConfigError);
  ModelParams q;
  q.variant = Variant::Ising;
  CHECK_THROWS_AS(q.validate(), ConfigError);
  q.variant = Variant::Kerr;
  CHECK_THROWS_AS(q.validate(), ConfigError);
  q.variant = Variant::Detuned;
  CHECK_THROWS_AS(build(q, CompositeSpace(4)), ConfigError);
  CHECK_THROWS_AS(ModelParams::bare(0.0), ConfigError);
  CHECK_THROWS_AS(ModelParams::ising(std::nan("")), ConfigError);
  CHECK_NOTHROW(ModelParams::kerr_medium(0.0).validate());
}
