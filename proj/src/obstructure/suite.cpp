#include "acobs/suite.hpp"

#include "acobs/products.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace acobs {

namespace {

double vmax(const Vector& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

std::span<const Vector> first(std::span<const Vector> f, std::size_t k) { return f.first(k); }

ConstCurvResidual cc(const PointContext& ctx, std::span<const Vector> f) {
  return const_curv_residuals(ctx.pg, ctx.curvature(), f, ctx.gate_curvature);
}

void need_orthogonal(const ConstCurvResidual& r) {
  if (r.u5.size() == 0) throw HypothesisError("needs a g-orthogonal A");
}

double phi_minus(const PointContext& ctx, std::span<const Vector> f, double other) {
  return ctx.phi_at()(f[0], f[1], f[2], f[3]) - other;
}

std::vector<Identity> build_catalog() {
  using namespace hyp;
  std::vector<Identity> v;
  auto add = [&](std::string name, unsigned h, int arity, double tol, std::string doc,
                 std::function<double(const PointContext&, std::span<const Vector>)> eval, bool witness = false) {
    v.push_back(Identity{std::move(name), h, arity, tol, witness, std::move(doc), std::move(eval)});
  };

  add("acs_square", none, 0, 1e-10, "A² + Id",
      [](const PointContext& c, auto) { return acs_square_residual(c.pg.structure()); });
  add("orthogonality", orthogonal, 0, 1e-10, "AᵀgA − g",
      [](const PointContext& c, auto) { return orthogonality_residual(c.pg.jet.g, c.pg.structure()); });
  add("metricity", none, 0, 1e-10, "∇g",
      [](const PointContext& c, auto) { return metricity_residual(c.pg.jet, c.pg.conn); });
  add("bianchi", none, 0, 1e-9, "first Bianchi identity of R",
      [](const PointContext& c, auto) { return bianchi_residual(c.pg.curv.r); });
  add("d2_equals_RA", none, 0, 1e-7, "(d∇)²A − R∧A", [](const PointContext& c, auto) {
    return (cov_ext_deriv(c.pg.conn, c.pg.da) - act_left(c.pg.curv.r, c.pg.a.value)).max_abs();
  });
  add("sectional_c", constant_curvature, 0, 1e-8, "max |K − c| over coordinate planes",
      [](const PointContext& c, auto) {
        const int n = c.pg.dim();
        const double k0 = c.curvature();
        double worst = 0.0;
        for (int i = 0; i < n; ++i)
          for (int j = i + 1; j < n; ++j)
            worst = std::max(worst,
                             std::abs(sectional(c.pg.curv, c.pg.g, Vector::Unit(n, i), Vector::Unit(n, j)) - k0));
        return worst;
      });
  add("leap1", none, 0, 1e-9, "(∇_X A)(AY) + A(∇_X A)Y",
      [](const PointContext& c, auto) { return leap_residuals(c.pg).eq10; });
  add("leap2", hermitian, 0, 1e-8, "(∇_{AX} A)Y − A(∇_X A)Y",
      [](const PointContext& c, auto) { return leap_residuals(c.pg).eq11; });
  add("nijenhuis", integrable, 0, 1e-8, "N_A over coordinate pairs",
      [](const PointContext& c, auto) { return nijenhuis(c.pg.jet).max_abs(); });
  add("integrability_form", integrable, 0, 1e-8, "I = d∇A∧(A∧A) − d∇A",
      [](const PointContext& c, auto) { return integrability_form(c.pg).max_abs(); });
  add("dA_a_invariance", integrable, 0, 1e-8, "d∇A(AX,AY) − d∇A(X,Y)",
      [](const PointContext& c, auto) { return a_invariance_defect(c.pg.da.value, c.pg.structure()); });
  add("ni_relation", none, 0, 1e-8, "I + A·N",
      [](const PointContext& c, auto) { return cross_check_NI(c.pg); });
  add("nk_integrability", nearly_kahler, 0, 1e-8, "I + 4∇A",
      [](const PointContext& c, auto) { return nk_integrability_residual(c.pg); });
  add("nk_skew", nearly_kahler, 0, 1e-8, "(∇_X A)Y + (∇_Y A)X",
      [](const PointContext& c, auto) { return nearly_kahler_defect(c.pg); });
  add("simplified_obstructure", none, 0, 1e-8, "first obstructure − ½R∧A − 2d∇A∧(d∇A∧A)",
      [](const PointContext& c, auto) {
        return (first_obstructure(c.pg) - simplified_obstructure(c.pg)).max_abs();
      });
  add("first_obstructure", integrable, 0, 1e-7, "(R∧A)∧(A∧A) + 2d∇A∧(d∇A∧A) − R∧A",
      [](const PointContext& c, auto) { return first_obstructure(c.pg).max_abs(); });
  add("obstructure_direct", integrable, 0, 1e-7, "d∇I computed from the jet of I",
      [](const PointContext& c, auto) { return obstructure_direct(c.pg).max_abs(); });
  add("closed_form_vs_direct", none, 0, 1e-7, "closed-form first obstructure − d∇I",
      [](const PointContext& c, auto) { return (first_obstructure(c.pg) - obstructure_direct(c.pg)).max_abs(); });
  add("expanded_u1", integrable, 3, 1e-7, "vector equation in R and d∇A at (X1,X2,X3)",
      [](const PointContext& c, std::span<const Vector> f) {
        const Vector x4 = Vector::Zero(c.pg.dim());
        const std::array<Vector, 4> fr{f[0], f[1], f[2], x4};
        return vmax(expanded_residual(c.pg, fr).u1);
      });
  add("expanded_u2", integrable, 4, 1e-7, "scalar equation in Rm and d∇A at (X1..X4)",
      [](const PointContext& c, std::span<const Vector> f) { return expanded_residual(c.pg, first(f, 4)).u2; });
  add("const_curv_u3", integrable | constant_curvature, 3, 1e-9, "constant-curvature vector equation",
      [](const PointContext& c, std::span<const Vector> f) {
        const std::array<Vector, 4> fr{f[0], f[1], f[2], Vector::Zero(c.pg.dim())};
        return vmax(cc(c, fr).u3);
      });
  add("const_curv_u4", integrable | constant_curvature, 4, 1e-9, "its pairing with X4",
      [](const PointContext& c, std::span<const Vector> f) { return cc(c, first(f, 4)).u4; });
  add("const_curv_u5", hermitian | constant_curvature, 3, 1e-9, "the Ω form of the vector equation",
      [](const PointContext& c, std::span<const Vector> f) {
        const std::array<Vector, 4> fr{f[0], f[1], f[2], Vector::Zero(c.pg.dim())};
        const auto r = cc(c, fr);
        need_orthogonal(r);
        return vmax(r.u5);
      });
  add("const_curv_u6", hermitian | constant_curvature, 4, 1e-9, "the Ω form paired with X4",
      [](const PointContext& c, std::span<const Vector> f) {
        const auto r = cc(c, first(f, 4));
        need_orthogonal(r);
        return r.u6;
      });
  add("u5_half_u3", orthogonal, 3, 1e-10, "Ω form − ½ g form, any c",
      [](const PointContext& c, std::span<const Vector> f) {
        const std::array<Vector, 4> fr{f[0], f[1], f[2], Vector::Zero(c.pg.dim())};
        const auto r = const_curv_residuals(c.pg, c.c.value_or(1.0), fr, false);
        need_orthogonal(r);
        return vmax(r.u5 - 0.5 * r.u3);
      });
  add("phi_antisym3", none, 0, 1e-12, "Φ antisymmetry in the first three slots",
      [](const PointContext& c, auto) { return c.phi_at().antisymmetry3_residual(); });
  add("phi_antisym4", hermitian | constant_curvature, 0, 1e-9, "full antisymmetry of Φ",
      [](const PointContext& c, auto) { return c.phi_at().antisymmetry4_residual(); });
  add("phi_a_invariance", hermitian | constant_curvature, 0, 1e-9, "Φ(A·,A·,A·,A·) − Φ",
      [](const PointContext& c, auto) { return c.phi_at().a_invariance_residual(c.pg.structure()); });
  add("phi_omega_square", hermitian | constant_curvature, 0, 1e-9, "Φ + (c/2)Ω∧Ω",
      [](const PointContext& c, auto) { return phi_omega_residual(c.pg, c.phi_at(), c.curvature()); });
  add("phi_nabla", hermitian | constant_curvature, 4, 1e-7, "Φ − three-term ∇A expression",
      [](const PointContext& c, std::span<const Vector> f) {
        c.curvature();
        return phi_minus(c, f, phi_via_nabla(c.pg, first(f, 4)).three_term);
      });
  add("phi_half_sum", hermitian | constant_curvature, 4, 1e-7, "Φ − ½ sum of d∇A pairings",
      [](const PointContext& c, std::span<const Vector> f) {
        c.curvature();
        return phi_minus(c, f, phi_via_nabla(c.pg, first(f, 4)).half_sum);
      });
  add("aura", hermitian | constant_curvature, 3, 1e-9, "g(d∇A(X,Y), (∇_Z A)Z)",
      [](const PointContext& c, std::span<const Vector> f) {
        c.curvature();
        return aura_residual(c.pg, f[0], f[1], f[2]);
      });
  add("omega_nabla_pair", hermitian | constant_curvature, 2, 1e-9, "Ω((∇_X A)X, (∇_Y A)Y)",
      [](const PointContext& c, std::span<const Vector> f) {
        c.curvature();
        return omega_residual(c.pg, f[0], f[1]);
      });
  add("structure_eq", hermitian | constant_curvature, 4, 1e-9, "(d∇A ∧_g d∇A + 2cΩ∧Ω)(X1..X4)",
      [](const PointContext& c, std::span<const Vector> f) {
        return structure_eq_residual(c.pg, c.curvature())(first(f, 4));
      });
  add("norm_formula", hermitian | constant_curvature, 2, 1e-9, "‖(∇_X A)Y‖² against the closed form",
      [](const PointContext& c, std::span<const Vector> f) {
        return norm_formula_residual(c.pg, c.curvature(), f[0], f[1]);
      });
  add("norm_symmetry", hermitian | constant_curvature, 2, 1e-9, "‖(∇_X A)Y‖ − ‖(∇_Y A)X‖",
      [](const PointContext& c, std::span<const Vector> f) {
        c.curvature();
        return norm_symmetry(c.pg, f[0], f[1]);
      });
  add("dA_XAX_v1", none, 1, 1e-9, "d∇A(X,AX) + 2(∇_X A)X",
      [](const PointContext& c, std::span<const Vector> f) { return vmax(da_xax_variants(c.pg, f[0])[0]); }, true);
  add("dA_XAX_v2", none, 1, 1e-9, "d∇A(X,AX) + 2A(∇_X A)X",
      [](const PointContext& c, std::span<const Vector> f) { return vmax(da_xax_variants(c.pg, f[0])[1]); }, true);
  return v;
}

bool satisfied(unsigned mask, const Properties& p) {
  if ((mask & hyp::orthogonal) && !p.orthogonal) return false;
  if ((mask & hyp::integrable) && !p.integrable) return false;
  if ((mask & hyp::constant_curvature) && !p.curvature) return false;
  if ((mask & hyp::nearly_kahler) && !p.nearly_kahler) return false;
  return true;
}

std::vector<const Identity*> selection(const SuiteConfig& config) {
  std::vector<const Identity*> out;
  if (config.identities.empty()) {
    for (const auto& id : identity_catalog()) out.push_back(&id);
    return out;
  }
  for (const auto& name : config.identities) out.push_back(find_identity(name));
  return out;
}

Vector gaussian(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  Vector v(n);
  for (int i = 0; i < n; ++i) v(i) = nd(rng);
  return v;
}

// Gram–Schmidt against `basis` in the g inner product; false if degenerate.
bool orthonormalize(const InnerProduct& g, Vector& v, const std::vector<Vector>& basis) {
  for (const auto& b : basis) v -= g(v, b) * b;
  const double nn = g.norm2(v);
  if (nn < 1e-12) return false;
  v /= std::sqrt(nn);
  return true;
}

}  // namespace

std::string describe_hypotheses(unsigned mask) {
  std::vector<std::string> parts;
  if ((mask & hyp::hermitian) == hyp::hermitian)
    parts.push_back("hermitian");
  else if (mask & hyp::orthogonal)
    parts.push_back("orthogonal");
  else if (mask & hyp::integrable)
    parts.push_back("integrable");
  if (mask & hyp::constant_curvature) parts.push_back("constant c");
  if (mask & hyp::nearly_kahler) parts.push_back("nearly-Kähler");
  if (parts.empty()) return "-";
  std::string out = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) out += "+" + parts[i];
  return out;
}

std::string to_string(RowClass c) {
  switch (c) {
    case RowClass::check: return "check";
    case RowClass::witness: return "witness";
    case RowClass::gated: return "gated";
  }
  return "check";
}

const PhiAt& PointContext::phi_at() const {
  if (!phi_) phi_ = phi(pg);
  return *phi_;
}

double PointContext::curvature() const {
  if (!c) throw HypothesisError("no constant sectional curvature declared for this scenario");
  if (gate_curvature) check_constant_curvature(pg, *c);
  return *c;
}

const std::vector<Identity>& identity_catalog() {
  static const std::vector<Identity> catalog = build_catalog();
  return catalog;
}

const Identity* find_identity(const std::string& name) {
  for (const auto& id : identity_catalog())
    if (id.name == name) return &id;
  return nullptr;
}

std::vector<std::string> obstruction_bundle() {
  return {"structure_eq", "aura", "omega_nabla_pair", "norm_formula", "norm_symmetry"};
}

void validate(const SuiteConfig& config) {
  for (const auto& name : config.identities)
    if (!find_identity(name)) throw std::invalid_argument("unknown identity: " + name);
  for (const auto& [name, tol] : config.tolerances) {
    if (!find_identity(name)) throw std::invalid_argument("tolerance for unknown identity: " + name);
    if (!(tol >= 0.0)) throw std::invalid_argument("tolerance must be non-negative: " + name);
  }
  if (config.samples < 1) throw std::invalid_argument("samples must be at least 1");
  if (config.frames < 1) throw std::invalid_argument("frames must be at least 1");
}

std::vector<Vector> make_frame(const PointGeometry& pg, int frame_index, std::mt19937_64& rng) {
  const int n = pg.dim();
  const Matrix& a = pg.structure();
  const bool structured = frame_index == 0 && n >= 4 && orthogonality_residual(pg.jet.g, a) <= 1e-10;
  for (;;) {
    std::vector<Vector> frame;
    if (structured) {
      Vector x = gaussian(n, rng);
      if (!orthonormalize(pg.g, x, {})) continue;
      Vector y = gaussian(n, rng);
      if (!orthonormalize(pg.g, y, {x, a * x})) continue;
      frame = {x, y, a * x, a * y};
    } else {
      bool ok = true;
      for (int k = 0; k < std::min(n, 4) && ok; ++k) {
        Vector v = gaussian(n, rng);
        ok = orthonormalize(pg.g, v, frame);
        frame.push_back(v);
      }
      if (!ok) continue;
    }
    return frame;
  }
}

std::string scenario_label(const Scenario& scenario) {
  const auto& params = scenario.descriptor.params;
  if (params.empty()) return scenario.name();
  std::ostringstream os;
  os << scenario.name() << '[';
  bool sep = false;
  for (const auto& [k, v] : params) {
    os << (sep ? ";" : "") << k << '=' << v;
    sep = true;
  }
  os << ']';
  return os.str();
}

std::vector<ResidualRecord> run_suite(const Scenario& scenario, const SuiteConfig& config) {
  validate(config);
  const auto ids = selection(config);
  const std::string label = scenario_label(scenario);
  const Properties& props = scenario.properties;
  const std::optional<double> c = props.curvature ? props.curvature : config.curvature;

  const auto n_points = static_cast<std::size_t>(config.samples);
  std::vector<std::vector<ResidualRecord>> per_point(n_points);
  std::vector<std::exception_ptr> errors(n_points);

  auto work = [&](std::size_t p) {
    const int pi = static_cast<int>(p);
    std::seed_seq point_seed{config.seed, static_cast<std::uint64_t>(p)};
    std::mt19937_64 point_rng(point_seed);
    const Vector x = scenario.chart.sample(point_rng);
    const PointGeometry pg = evaluate(scenario.chart, x);
    PointContext ctx{pg, c, props.curvature.has_value()};

    std::vector<std::vector<Vector>> frames;
    for (int f = 0; f < config.frames; ++f) {
      std::seed_seq frame_seed{config.seed, static_cast<std::uint64_t>(p), static_cast<std::uint64_t>(f + 1)};
      std::mt19937_64 frame_rng(frame_seed);
      frames.push_back(make_frame(pg, f, frame_rng));
    }

    auto& out = per_point[p];
    for (const Identity* id : ids) {
      const RowClass base =
          id->always_witness || !satisfied(id->hypotheses, props) ? RowClass::witness : RowClass::check;
      const int n_frames = id->arity == 0 ? 1 : config.frames;
      for (int f = 0; f < n_frames; ++f) {
        ResidualRecord r{id->name, label, pi, f, x, 0.0, base, {}};
        try {
          r.residual = id->eval(ctx, frames[static_cast<std::size_t>(f)]);
        } catch (const HypothesisError& e) {
          r.residual = std::nan("");
          r.cls = RowClass::gated;
          r.note = e.what();
        }
        out.push_back(std::move(r));
      }
    }
  };

  unsigned threads = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n_points));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t p; (p = next.fetch_add(1)) < n_points;) {
      try {
        work(p);
      } catch (...) {
        errors[p] = std::current_exception();
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  std::vector<ResidualRecord> rows;
  for (auto& v : per_point)
    for (auto& r : v) rows.push_back(std::move(r));
  return rows;
}

std::vector<IdentitySummary> summarize(const std::vector<ResidualRecord>& rows, const SuiteConfig& config) {
  std::vector<IdentitySummary> out;
  std::map<std::string, std::size_t> slot;
  for (const auto& r : rows) {
    auto [it, fresh] = slot.try_emplace(r.identity, out.size());
    if (fresh) {
      const Identity* id = find_identity(r.identity);
      IdentitySummary s;
      s.identity = r.identity;
      s.cls = RowClass::gated;
      s.hypotheses = id ? id->hypotheses : hyp::none;
      const auto tol = config.tolerances.find(r.identity);
      s.tolerance = tol != config.tolerances.end() ? tol->second : (id ? id->tolerance : 0.0);
      out.push_back(s);
    }
    auto& s = out[it->second];
    ++s.rows;
    if (r.cls == RowClass::gated) {
      ++s.gated;
      if (s.note.empty()) s.note = r.note;
      continue;
    }
    s.cls = r.cls;
    const double a = std::abs(r.residual);
    s.max_abs = std::max(s.max_abs, std::isnan(a) ? INFINITY : a);
    s.mean_abs += a;
    if (r.cls == RowClass::check && !(a <= s.tolerance)) s.pass = false;
  }
  for (auto& s : out) {
    const auto counted = s.rows - s.gated;
    if (counted) s.mean_abs /= static_cast<double>(counted);
  }
  return out;
}

bool all_checks_pass(const std::vector<IdentitySummary>& summary) {
  for (const auto& s : summary)
    if (s.cls == RowClass::check && !s.pass) return false;
  return true;
}

}  // namespace acobs
