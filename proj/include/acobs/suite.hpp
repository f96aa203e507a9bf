#pragma once

#include "acobs/obstructure.hpp"
#include "acobs/zoo.hpp"

#include <cstdint>
#include <random>
#include <span>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace acobs {

namespace hyp {
inline constexpr unsigned none = 0;
inline constexpr unsigned orthogonal = 1;
inline constexpr unsigned integrable = 2;
inline constexpr unsigned constant_curvature = 4;
inline constexpr unsigned nearly_kahler = 8;
inline constexpr unsigned hermitian = orthogonal | integrable;
}  // namespace hyp

std::string describe_hypotheses(unsigned mask);

// check: hypotheses hold, the residual must vanish.
// witness: hypotheses fail (or the value is informational), recorded only.
// gated: the evaluator refused, e.g. no curvature constant or variance gate.
enum class RowClass { check, witness, gated };
std::string to_string(RowClass c);

// Per-point state handed to evaluators. Φ is built on first use.
struct PointContext {
  PointContext(const PointGeometry& geometry, std::optional<double> c_in, bool gate)
      : pg(geometry), c(c_in), gate_curvature(gate) {}

  const PointGeometry& pg;
  std::optional<double> c;  // curvature constant in force, if any
  bool gate_curvature = true;

  const PhiAt& phi_at() const;
  double curvature() const;  // throws HypothesisError when c is absent

 private:
  mutable std::optional<PhiAt> phi_;
};

struct Identity {
  std::string name;
  unsigned hypotheses = hyp::none;
  int arity = 0;  // frame vectors consumed; 0 means one row per point
  double tolerance = 1e-9;
  bool always_witness = false;
  std::string doc;
  std::function<double(const PointContext&, std::span<const Vector>)> eval;
};

const std::vector<Identity>& identity_catalog();
// nullptr when unknown
const Identity* find_identity(const std::string& name);

// The identities cmd_obstruct evaluates.
std::vector<std::string> obstruction_bundle();

struct ResidualRecord {
  std::string identity;
  std::string scenario;
  int point_index = 0;
  int frame_index = 0;
  Vector point;
  double residual = 0.0;
  RowClass cls = RowClass::check;
  std::string note;
};

struct SuiteConfig {
  std::vector<std::string> identities;  // empty means the whole catalog
  int samples = 10;
  int frames = 2;
  std::uint64_t seed = 1;
  std::map<std::string, double> tolerances;  // overrides by identity name
  std::optional<double> curvature;           // c for scenarios that declare none
  unsigned threads = 0;                      // 0: hardware concurrency
};

// Throws std::invalid_argument on unknown identity names, before any work.
void validate(const SuiteConfig& config);

// Rows ordered by (point, identity in selection order, frame).
std::vector<ResidualRecord> run_suite(const Scenario& scenario, const SuiteConfig& config);

// Label used in reports: name, plus parameters when there are any.
std::string scenario_label(const Scenario& scenario);

struct IdentitySummary {
  std::string identity;
  RowClass cls = RowClass::check;
  unsigned hypotheses = hyp::none;
  double tolerance = 0.0;
  std::size_t rows = 0;
  std::size_t gated = 0;
  double max_abs = 0.0;
  double mean_abs = 0.0;
  bool pass = true;  // meaningful for check rows only
  std::string note;
};

std::vector<IdentitySummary> summarize(const std::vector<ResidualRecord>& rows, const SuiteConfig& config);
bool all_checks_pass(const std::vector<IdentitySummary>& summary);

// g-orthonormal frames. frame_index 0 is (X, Y, AX, AY) with X ⟂ Y, AY when
// A is g-orthogonal; everything else is Gram–Schmidt of Gaussian vectors.
std::vector<Vector> make_frame(const PointGeometry& pg, int frame_index, std::mt19937_64& rng);

}  // namespace acobs
