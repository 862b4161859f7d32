#include "djcm/scenario.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>
#include <system_error>

#include "djcm/error.hpp"

namespace djcm {

namespace {

constexpr double kCutoffTailTarget = 2.5e-7;
constexpr double kTruncationTarget = 1e-8;
constexpr int kMaxCutoff = 96;

const std::vector<std::string> kSweepNames = {"none", "n_c", "n_s", "n_th", "lambda", "theta", "J_z", "Delta", "k"};

std::string format_value(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::vector<double> linspace01(int points) {
  std::vector<double> out;
  for (int k = 0; k < points; ++k) out.push_back(static_cast<double>(k) / (points - 1));
  return out;
}

template <class F>
auto with_context(const std::string& context, F&& body) {
  try {
    return body();
  } catch (const InvalidDimension& e) {
    throw InvalidDimension(context + e.what());
  } catch (const DomainError& e) {
    throw DomainError(context + e.what());
  } catch (const ConfigError& e) {
    throw ConfigError(context + e.what());
  } catch (const ContractViolation& e) {
    throw ContractViolation(context + e.what());
  } catch (const CutoffTooSmall& e) {
    throw CutoffTooSmall(context + e.what());
  } catch (const LeakageError& e) {
    throw LeakageError(context + e.what());
  } catch (const NumericalError& e) {
    throw NumericalError(context + e.what());
  }
}

void set_field_parameter(FieldSpec& f, const std::string& name, double value) {
  if (name == "n_c") {
    f.coherent_mean = value;
  } else if (name == "n_s") {
    if (f.kind != FieldKind::SqueezedCoherent) throw ConfigError("sweep n_s requires squeezed coherent fields");
    f.squeezed_mean = value;
  } else if (name == "n_th") {
    if (f.kind != FieldKind::GlauberLachs) throw ConfigError("sweep n_th requires Glauber-Lachs fields");
    f.thermal_mean = value;
  }
}

// ---------------------------------------------------------------- presets

struct PresetDef {
  const char* id;
  const char* summary;
  std::function<Scenario()> make;
};

const AtomSpec kBell = AtomSpec::bell(std::numbers::pi / 4.0);
const AtomSpec kWerner = AtomSpec::werner(0.75);
const AtomSpec kWernerSeparable = AtomSpec::werner(0.25);
const std::vector<double> kMeans = {0.0, 0.1, 0.3, 0.5};
const std::vector<double> kCouplings = {0.1, 0.3, 0.7, 1.0};
const std::vector<double> kDetunings = {2.0, 5.0, 10.0};
const std::vector<double> kKerr = {0.0, 0.2, 0.5, 1.0};

Scenario make(const char* id, AtomSpec atom, FieldSpec field, ModelParams model, Sweep sweep) {
  Scenario s;
  s.id = id;
  s.atom = std::move(atom);
  s.field_a = field;
  s.field_b = field;
  s.model = std::move(model);
  s.sweep = std::move(sweep);
  return s;
}

FieldSpec scs(double n_s = 0.1) { return FieldSpec::squeezed_coherent(0.5, n_s); }
FieldSpec gl(double n_th = 0.1) { return FieldSpec::glauber_lachs(0.5, n_th); }

const std::vector<PresetDef>& presets() {
  static const std::vector<PresetDef> table = [] {
    using M = ModelParams;
    std::vector<PresetDef> t;
    auto add = [&t](const char* id, const char* summary, std::function<Scenario()> f) {
      t.push_back({id, summary, std::move(f)});
    };
    add("fig1", "Bell(pi/4), SCS n_c=0.5, sweep n_s, bare", [] {
      return make("fig1", kBell, scs(0.0), M::bare(), {"n_s", kMeans});
    });
    add("fig2", "Bell(pi/4), SCS n_c=0.5, sweep n_s, bare (combined panels)", [] {
      return make("fig2", kBell, scs(0.0), M::bare(), {"n_s", kMeans});
    });
    add("fig3", "Werner(0.75), SCS n_c=0.5, sweep n_s, bare", [] {
      return make("fig3", kWerner, scs(0.0), M::bare(), {"n_s", kMeans});
    });
    add("fig4", "Werner(0.75), SCS n_c=0.5, sweep n_s, bare (combined panels)", [] {
      return make("fig4", kWerner, scs(0.0), M::bare(), {"n_s", kMeans});
    });
    add("fig5", "Werner, SCS(0.5, 0.1), lambda grid 0..1, bare", [] {
      return make("fig5", kWerner, scs(), M::bare(), {"lambda", linspace01(21)});
    });
    add("fig6", "Bell(pi/4), GL n_c=0.5, sweep n_th, bare", [] {
      return make("fig6", kBell, gl(0.0), M::bare(), {"n_th", kMeans});
    });
    add("fig7", "Bell(pi/4), GL n_c=0.5, sweep n_th, bare (combined panels)", [] {
      return make("fig7", kBell, gl(0.0), M::bare(), {"n_th", kMeans});
    });
    add("fig8", "Werner(0.75), GL n_c=0.5, sweep n_th, bare", [] {
      return make("fig8", kWerner, gl(0.0), M::bare(), {"n_th", kMeans});
    });
    add("fig9", "Werner(0.75), GL n_c=0.5, sweep n_th, bare (combined panels)", [] {
      return make("fig9", kWerner, gl(0.0), M::bare(), {"n_th", kMeans});
    });
    add("fig10", "Werner, GL(0.5, 0.1), lambda grid 0..1, bare", [] {
      return make("fig10", kWerner, gl(), M::bare(), {"lambda", linspace01(21)});
    });
    add("fig11", "Bell(pi/4), SCS(0.5, 0.1), Ising sweep J_z", [] {
      return make("fig11", kBell, scs(), M::ising(kCouplings[0]), {"J_z", kCouplings});
    });
    add("fig12", "Werner(0.75), SCS(0.5, 0.1), Ising sweep J_z", [] {
      return make("fig12", kWerner, scs(), M::ising(kCouplings[0]), {"J_z", kCouplings});
    });
    add("fig13", "Werner(0.25), SCS(0.5, 0.1), bare", [] {
      return make("fig13", kWernerSeparable, scs(), M::bare(), {});
    });
    add("fig14", "Werner(0.25), SCS(0.5, 0.1), Ising J_z grid 0..1", [] {
      return make("fig14", kWernerSeparable, scs(), M::ising(0.0), {"J_z", linspace01(21)});
    });
    add("fig15", "Bell(pi/4), GL(0.5, 0.1), Ising sweep J_z", [] {
      return make("fig15", kBell, gl(), M::ising(kCouplings[0]), {"J_z", kCouplings});
    });
    add("fig16", "Werner(0.75), GL(0.5, 0.1), Ising sweep J_z", [] {
      return make("fig16", kWerner, gl(), M::ising(kCouplings[0]), {"J_z", kCouplings});
    });
    add("fig17", "Werner(0.25), GL(0.5, 0.1), Ising J_z grid 0..1", [] {
      return make("fig17", kWernerSeparable, gl(), M::ising(0.0), {"J_z", linspace01(21)});
    });
    add("fig18", "Bell(pi/4), SCS(0.5, 0.1), detuning sweep", [] {
      return make("fig18", kBell, scs(), M::detuned(kDetunings[0]), {"Delta", kDetunings});
    });
    add("fig19", "Werner(0.75), SCS(0.5, 0.1), detuning sweep", [] {
      return make("fig19", kWerner, scs(), M::detuned(kDetunings[0]), {"Delta", kDetunings});
    });
    add("fig20", "Bell(pi/4), GL(0.5, 0.1), detuning sweep", [] {
      return make("fig20", kBell, gl(), M::detuned(kDetunings[0]), {"Delta", kDetunings});
    });
    add("fig21", "Werner(0.75), GL(0.5, 0.1), detuning sweep", [] {
      return make("fig21", kWerner, gl(), M::detuned(kDetunings[0]), {"Delta", kDetunings});
    });
    add("fig22", "Bell(pi/4), SCS(0.5, 0.1), Kerr sweep k", [] {
      return make("fig22", kBell, scs(), M::kerr_medium(kKerr[0]), {"k", kKerr});
    });
    add("fig23", "Werner(0.75), SCS(0.5, 0.1), Kerr sweep k", [] {
      return make("fig23", kWerner, scs(), M::kerr_medium(kKerr[0]), {"k", kKerr});
    });
    add("fig24", "Bell(pi/4), GL(0.5, 0.1), Kerr sweep k", [] {
      return make("fig24", kBell, gl(), M::kerr_medium(kKerr[0]), {"k", kKerr});
    });
    add("fig25", "Werner(0.75), GL(0.5, 0.1), Kerr sweep k", [] {
      return make("fig25", kWerner, gl(), M::kerr_medium(kKerr[0]), {"k", kKerr});
    });
    return t;
  }();
  return table;
}

const PresetDef& find_preset(const std::string& id) {
  for (const PresetDef& p : presets()) {
    if (id == p.id) return p;
  }
  throw ConfigError("unknown preset '" + id + "' (expected fig1 ... fig25)");
}

// ---------------------------------------------------------------- parsing

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size() || errno == ERANGE || !std::isfinite(v)) {
    throw ConfigError(what + ": '" + text + "' is not a finite number");
  }
  return v;
}

int parse_int(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  char* end = nullptr;
  errno = 0;
  const long v = std::strtol(t.c_str(), &end, 10);
  if (t.empty() || end != t.c_str() + t.size() || errno == ERANGE || v < -1000000 || v > 1000000) {
    throw ConfigError(what + ": '" + text + "' is not an integer");
  }
  return static_cast<int>(v);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string part;
  std::istringstream in(s);
  while (std::getline(in, part, sep)) out.push_back(part);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

}  // namespace

void Scenario::validate() const {
  atom.validate();
  field_a.validate();
  field_b.validate();
  model.validate();
  TimeGrid(grid.t_max(), grid.points());
  if (cutoff && *cutoff < 2) throw InvalidDimension("cutoff must be >= 2, got " + std::to_string(*cutoff));
  if (std::find(kSweepNames.begin(), kSweepNames.end(), sweep.name) == kSweepNames.end()) {
    throw ConfigError("unknown sweep parameter '" + sweep.name + "'");
  }
  if (sweep.values.empty()) throw ConfigError("sweep '" + sweep.name + "' has no values");
  for (double v : sweep.values) {
    if (!std::isfinite(v)) throw ConfigError("sweep values must be finite");
    const Scenario one = with_sweep_value(v);
    one.atom.validate();
    one.field_a.validate();
    one.field_b.validate();
    one.model.validate();
  }
}

Scenario Scenario::with_sweep_value(double value) const {
  Scenario out = *this;
  out.sweep = Sweep{};
  const std::string& name = sweep.name;
  if (name == "none") return out;
  if (name == "n_c" || name == "n_s" || name == "n_th") {
    set_field_parameter(out.field_a, name, value);
    set_field_parameter(out.field_b, name, value);
  } else if (name == "lambda") {
    if (atom.kind != AtomKind::Werner) throw ConfigError("sweep lambda requires Werner atoms");
    out.atom.lambda = value;
  } else if (name == "theta") {
    if (atom.kind != AtomKind::Bell) throw ConfigError("sweep theta requires Bell atoms");
    out.atom.theta = value;
  } else if (name == "J_z") {
    if (model.variant != Variant::Ising) throw ConfigError("sweep J_z requires the ising model");
    out.model.j_z = value;
  } else if (name == "Delta") {
    if (model.variant != Variant::Detuned) throw ConfigError("sweep Delta requires the detuned model");
    out.model.detuning = value;
  } else if (name == "k") {
    if (model.variant != Variant::Kerr) throw ConfigError("sweep k requires the kerr model");
    out.model.kerr = value;
  } else {
    throw ConfigError("unknown sweep parameter '" + name + "'");
  }
  return out;
}

std::string Scenario::describe() const {
  std::ostringstream out;
  out << id << ": " << atom.describe() << ", a=" << field_a.describe() << ", b=" << field_b.describe() << ", "
      << model.describe() << ", t_max=" << grid.t_max() << ", points=" << grid.points() << ", cutoff="
      << (cutoff ? std::to_string(*cutoff) : std::string("auto")) << ", sweep " << sweep.name << " = {";
  for (std::size_t i = 0; i < sweep.values.size(); ++i) out << (i ? ", " : "") << sweep.values[i];
  out << "}";
  return out.str();
}

int recommended_cutoff(const Scenario& s) {
  int best = kMinCutoff;
  for (double v : s.sweep.values) {
    const Scenario one = s.with_sweep_value(v);
    for (const FieldSpec* f : {&one.field_a, &one.field_b}) {
      int n = kMinCutoff;
      while (photon_tail(*f, n - 3) > kCutoffTailTarget || photon_tail(*f, n) > kTruncationTarget) {
        if (++n > kMaxCutoff) {
          throw ConfigError(f->describe() + " needs a Fock cutoff above " + std::to_string(kMaxCutoff));
        }
      }
      best = std::max(best, n);
    }
  }
  return best;
}

int resolved_cutoff(const Scenario& s) { return s.cutoff ? *s.cutoff : recommended_cutoff(s); }

std::vector<std::string> preset_ids() {
  std::vector<std::string> out;
  for (const PresetDef& p : presets()) out.emplace_back(p.id);
  return out;
}

Scenario preset(const std::string& id) { return find_preset(id).make(); }

std::string preset_summary(const std::string& id) { return find_preset(id).summary; }

EntanglementSeries run_single(const Scenario& s, const RunOptions& options) {
  s.validate();
  const CompositeSpace space(resolved_cutoff(s));
  const PreparedState initial = assemble_initial(s.atom, s.field_a, s.field_b, space);
  const Operator h = build(s.model, space);
  const Trajectory traj = trajectory(initial, h, s.grid);
  return measure_trajectory(traj, options.measure);
}

ResultTable run(const Scenario& s, const RunOptions& options) {
  s.validate();
  ResultTable table;
  table.sweep_name = s.sweep.name;
  for (double v : s.sweep.values) {
    const std::string context = s.id + " (" + s.sweep.name + "=" + format_value(v) + "): ";
    const EntanglementSeries series =
        with_context(context, [&] { return run_single(s.with_sweep_value(v), options); });
    for (std::size_t k = 0; k < series.size(); ++k) {
      table.rows.push_back({series.gt[k], v, series.at(k), series.trace_error[k], series.leakage[k]});
    }
    for (const std::string& w : series.warnings) table.warnings.push_back(context + w);
  }
  return table;
}

void emit_csv(const ResultTable& table, std::ostream& out) {
  std::vector<const ResultRow*> order;
  order.reserve(table.rows.size());
  for (const ResultRow& r : table.rows) order.push_back(&r);
  std::stable_sort(order.begin(), order.end(), [](const ResultRow* x, const ResultRow* y) {
    if (x->sweep_value != y->sweep_value) return x->sweep_value < y->sweep_value;
    return x->gt < y->gt;
  });
  out << kCsvHeader << '\n';
  for (const ResultRow* r : order) {
    out << format_value(r->gt) << ',' << table.sweep_name << ',' << format_value(r->sweep_value) << ','
        << format_value(r->values.concurrence_AB) << ',' << format_value(r->values.negativity_Aa) << ','
        << format_value(r->values.negativity_Ab) << ',' << format_value(r->values.negativity_ab) << ','
        << format_value(r->trace_err) << ',' << format_value(r->leakage) << '\n';
  }
}

void write_csv(const ResultTable& table, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::system_error(errno, std::generic_category(), "cannot open " + path + " for writing");
  emit_csv(table, out);
  out.flush();
  if (!out) throw std::system_error(errno, std::generic_category(), "write to " + path + " failed");
}

ResultTable parse_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || trim(line) != kCsvHeader) {
    throw ConfigError(std::string("CSV header must be '") + kCsvHeader + "'");
  }
  ResultTable table;
  bool named = false;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split(trim(line), ',');
    const std::string where = "CSV line " + std::to_string(line_no);
    if (cells.size() != 9) throw ConfigError(where + ": expected 9 columns");
    if (named && cells[1] != table.sweep_name) throw ConfigError(where + ": mixed sweep names");
    table.sweep_name = cells[1];
    named = true;
    ResultRow r;
    r.gt = parse_double(cells[0], where);
    r.sweep_value = parse_double(cells[2], where);
    r.values.concurrence_AB = parse_double(cells[3], where);
    r.values.negativity_Aa = parse_double(cells[4], where);
    r.values.negativity_Ab = parse_double(cells[5], where);
    r.values.negativity_ab = parse_double(cells[6], where);
    r.trace_err = parse_double(cells[7], where);
    r.leakage = parse_double(cells[8], where);
    table.rows.push_back(r);
  }
  return table;
}

ResultTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::system_error(errno, std::generic_category(), "cannot open " + path);
  return parse_csv(in);
}

Scenario parse_config(std::istream& in) {
  std::map<std::string, std::string> kv;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = "config line " + std::to_string(line_no);
    if (eq == std::string::npos) throw ConfigError(where + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) throw ConfigError(where + ": empty key or value");
    if (!kv.emplace(key, value).second) throw ConfigError(where + ": duplicate key '" + key + "'");
  }

  static const std::vector<std::string> known = {"preset", "atom", "theta", "lambda", "field",  "n_c",   "n_s",
                                                 "n_th",   "model", "g",     "J_z",    "Delta", "k",     "omega",
                                                 "t_max",  "points", "cutoff", "sweep", "sweep_values"};
  for (const auto& [key, value] : kv) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
  auto get = [&](const std::string& key) -> std::optional<std::string> {
    const auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    return it->second;
  };
  auto number = [&](const std::string& key, std::optional<double> fallback) -> std::optional<double> {
    if (const auto v = get(key)) return parse_double(*v, key);
    return fallback;
  };

  Scenario s = get("preset") ? preset(*get("preset")) : Scenario{};

  // Atoms.
  AtomKind atom_kind = s.atom.kind;
  if (const auto a = get("atom")) {
    if (*a == "bell") {
      atom_kind = AtomKind::Bell;
    } else if (*a == "werner") {
      atom_kind = AtomKind::Werner;
    } else {
      throw ConfigError("atom must be bell or werner, got '" + *a + "'");
    }
  }
  if (atom_kind == AtomKind::Bell) {
    if (get("lambda")) throw ConfigError("lambda applies to werner atoms only");
    s.atom = AtomSpec::bell(*number("theta", s.atom.theta.value_or(std::numbers::pi / 4.0)));
  } else {
    if (get("theta")) throw ConfigError("theta applies to bell atoms only");
    s.atom = AtomSpec::werner(*number("lambda", s.atom.lambda.value_or(0.75)));
  }

  // Fields (both cavities share one preparation).
  FieldKind field_kind = s.field_a.kind;
  if (const auto f = get("field")) {
    if (*f == "scs") {
      field_kind = FieldKind::SqueezedCoherent;
    } else if (*f == "gl") {
      field_kind = FieldKind::GlauberLachs;
    } else {
      throw ConfigError("field must be scs or gl, got '" + *f + "'");
    }
  }
  const double n_c = *number("n_c", s.field_a.coherent_mean);
  FieldSpec field;
  if (field_kind == FieldKind::SqueezedCoherent) {
    if (get("n_th")) throw ConfigError("n_th applies to gl fields only");
    field = FieldSpec::squeezed_coherent(n_c, *number("n_s", s.field_a.squeezed_mean.value_or(0.0)));
  } else {
    if (get("n_s")) throw ConfigError("n_s applies to scs fields only");
    field = FieldSpec::glauber_lachs(n_c, *number("n_th", s.field_a.thermal_mean.value_or(0.0)));
  }
  s.field_a = field;
  s.field_b = field;

  // Model.
  Variant variant = s.model.variant;
  if (const auto m = get("model")) {
    if (*m == "bare") {
      variant = Variant::Bare;
    } else if (*m == "ising") {
      variant = Variant::Ising;
    } else if (*m == "detuned") {
      variant = Variant::Detuned;
    } else if (*m == "kerr") {
      variant = Variant::Kerr;
    } else {
      throw ConfigError("model must be bare, ising, detuned or kerr, got '" + *m + "'");
    }
  }
  ModelParams model;
  model.variant = variant;
  model.g = *number("g", s.model.g);
  model.omega = *number("omega", s.model.omega);
  const bool same = variant == s.model.variant;
  model.j_z = number("J_z", same ? s.model.j_z : std::nullopt);
  model.detuning = number("Delta", same ? s.model.detuning : std::nullopt);
  model.kerr = number("k", same ? s.model.kerr : std::nullopt);

  // Sweep, resolved before model validation so a swept parameter may be
  // omitted from the fixed keys.
  if (const auto name = get("sweep")) {
    s.sweep.name = *name;
    if (*name == "none") {
      if (get("sweep_values")) throw ConfigError("sweep = none takes no sweep_values");
      s.sweep.values = {0.0};
    } else {
      const auto list = get("sweep_values");
      if (!list) throw ConfigError("sweep '" + *name + "' needs sweep_values");
      s.sweep.values.clear();
      for (const std::string& item : split(*list, ',')) s.sweep.values.push_back(parse_double(item, "sweep_values"));
    }
  } else if (const auto list = get("sweep_values")) {
    // Replaces the values of the preset's sweep.
    if (s.sweep.name == "none") throw ConfigError("sweep_values given without sweep");
    s.sweep.values.clear();
    for (const std::string& item : split(*list, ',')) s.sweep.values.push_back(parse_double(item, "sweep_values"));
  }
  const std::string& swept = s.sweep.name;
  if (variant == Variant::Ising && !model.j_z && swept == "J_z") model.j_z = s.sweep.values.front();
  if (variant == Variant::Detuned && !model.detuning && swept == "Delta") model.detuning = s.sweep.values.front();
  if (variant == Variant::Kerr && !model.kerr && swept == "k") model.kerr = s.sweep.values.front();
  if (variant != Variant::Ising) model.j_z.reset();
  if (variant != Variant::Detuned) model.detuning.reset();
  if (variant != Variant::Kerr) model.kerr.reset();
  for (const char* key : {"J_z", "Delta", "k"}) {
    const bool needed = (variant == Variant::Ising && std::string(key) == "J_z") ||
                        (variant == Variant::Detuned && std::string(key) == "Delta") ||
                        (variant == Variant::Kerr && std::string(key) == "k");
    if (get(key) && !needed) throw ConfigError(std::string(key) + " does not apply to model " + variant_name(variant));
  }
  model.validate();
  s.model = model;

  s.grid = TimeGrid(*number("t_max", s.grid.t_max()), get("points") ? parse_int(*get("points"), "points")
                                                                     : s.grid.points());
  if (const auto c = get("cutoff")) {
    if (*c == "auto") {
      s.cutoff.reset();
    } else {
      s.cutoff = parse_int(*c, "cutoff");
    }
  }
  if (!get("preset")) s.id = "custom";
  s.validate();
  return s;
}

Scenario load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  return parse_config(in);
}

}  // namespace djcm
