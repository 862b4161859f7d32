#include "djcm/hamiltonian.hpp"

#include <cmath>
#include <sstream>

#include "djcm/error.hpp"

namespace djcm {

namespace {

void require_finite(double value, const char* name) {
  if (!std::isfinite(value)) {
    throw ConfigError(std::string(name) + " must be finite");
  }
}

void require_only(const ModelParams& p, bool j_z, bool detuning, bool kerr) {
  const std::string v = variant_name(p.variant);
  if (p.j_z.has_value() != j_z) {
    throw ConfigError(v + (j_z ? " model requires J_z" : " model does not take J_z"));
  }
  if (p.detuning.has_value() != detuning) {
    throw ConfigError(v + (detuning ? " model requires Delta" : " model does not take Delta"));
  }
  if (p.kerr.has_value() != kerr) {
    throw ConfigError(v + (kerr ? " model requires k" : " model does not take k"));
  }
}

}  // namespace

std::string variant_name(Variant v) {
  switch (v) {
    case Variant::Bare: return "bare";
    case Variant::Ising: return "ising";
    case Variant::Detuned: return "detuned";
    case Variant::Kerr: return "kerr";
  }
  return "unknown";
}

ModelParams ModelParams::bare(double g) {
  ModelParams p;
  p.g = g;
  p.validate();
  return p;
}

ModelParams ModelParams::ising(double j_z, double g) {
  ModelParams p;
  p.variant = Variant::Ising;
  p.g = g;
  p.j_z = j_z;
  p.validate();
  return p;
}

ModelParams ModelParams::detuned(double detuning, double g) {
  ModelParams p;
  p.variant = Variant::Detuned;
  p.g = g;
  p.detuning = detuning;
  p.validate();
  return p;
}

ModelParams ModelParams::kerr_medium(double k, double omega, double g) {
  ModelParams p;
  p.variant = Variant::Kerr;
  p.g = g;
  p.kerr = k;
  p.omega = omega;
  p.validate();
  return p;
}

void ModelParams::validate() const {
  require_finite(g, "g");
  require_finite(omega, "omega");
  if (!(g > 0.0)) throw ConfigError("coupling g must be positive");
  switch (variant) {
    case Variant::Bare: require_only(*this, false, false, false); break;
    case Variant::Ising: require_only(*this, true, false, false); require_finite(*j_z, "J_z"); break;
    case Variant::Detuned:
      require_only(*this, false, true, false);
      require_finite(*detuning, "Delta");
      break;
    case Variant::Kerr: require_only(*this, false, false, true); require_finite(*kerr, "k"); break;
  }
}

std::string ModelParams::describe() const {
  std::ostringstream out;
  out << variant_name(variant) << "(g=" << g;
  if (j_z) out << ", J_z=" << *j_z;
  if (detuning) out << ", Delta=" << *detuning;
  if (kerr) out << ", k=" << *kerr << ", omega=" << omega;
  out << ")";
  return out.str();
}

Operator build(const ModelParams& params, const CompositeSpace& space) {
  params.validate();
  const int n = space.cutoff();
  const Operator a = annihilation(n);
  const Operator ad = creation(n);
  const auto [sz, sp, sm] = atomic_ops();

  Matrix h = Matrix::Zero(space.dim(), space.dim());
  auto add = [&](Complex c, std::initializer_list<std::pair<Factor, const Operator*>> ops) {
    h.noalias() += c * embed_product(ops, space).matrix();
  };

  const Complex g = params.g;
  add(g, {{Factor::AtomA, &sm}, {Factor::FieldA, &ad}});
  add(g, {{Factor::AtomA, &sp}, {Factor::FieldA, &a}});
  add(g, {{Factor::AtomB, &sm}, {Factor::FieldB, &ad}});
  add(g, {{Factor::AtomB, &sp}, {Factor::FieldB, &a}});

  switch (params.variant) {
    case Variant::Bare: break;
    case Variant::Ising: add(*params.j_z, {{Factor::AtomA, &sz}, {Factor::AtomB, &sz}}); break;
    case Variant::Detuned: {
      const Operator ground = sm * sp;
      add(*params.detuning, {{Factor::AtomA, &ground}});
      add(*params.detuning, {{Factor::AtomB, &ground}});
      break;
    }
    case Variant::Kerr: {
      const Operator pair = ad * ad * a * a;
      const double chi = *params.kerr * params.omega;
      add(chi, {{Factor::FieldA, &pair}});
      add(chi, {{Factor::FieldB, &pair}});
      break;
    }
  }
  return Operator(std::move(h), space.dim_list());
}

Operator excitation_operator(const CompositeSpace& space) {
  const auto [sz, sp, sm] = atomic_ops();
  const Operator excited = sp * sm;
  const Operator num = number_op(space.cutoff());
  return embed(excited, Factor::AtomA, space) + embed(excited, Factor::AtomB, space) +
         embed(num, Factor::FieldA, space) + embed(num, Factor::FieldB, space);
}

std::vector<int> cavity_sector_labels(const CompositeSpace& space) {
  const int n = space.cutoff();
  std::vector<int> labels(static_cast<std::size_t>(space.dim()));
  for (Index i = 0; i < space.dim(); ++i) {
    const BasisLabel l = space.label(i);
    const int ka = (l.atom_a == kExcited ? 1 : 0) + l.photons_a;
    const int kb = (l.atom_b == kExcited ? 1 : 0) + l.photons_b;
    labels[static_cast<std::size_t>(i)] = ka * (n + 1) + kb;
  }
  return labels;
}

Operator free_terms(double omega, double nu, const CompositeSpace& space) {
  const auto [sz, sp, sm] = atomic_ops();
  const Operator num = number_op(space.cutoff());
  const Complex half_omega = 0.5 * omega;
  return half_omega * (embed(sz, Factor::AtomA, space) + embed(sz, Factor::AtomB, space)) +
         Complex(nu) * (embed(num, Factor::FieldA, space) + embed(num, Factor::FieldB, space));
}

}  // namespace djcm
