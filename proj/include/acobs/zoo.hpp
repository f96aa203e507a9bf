#pragma once

#include "acobs/chart.hpp"

#include <map>
#include <optional>
#include <string>

namespace acobs {

// Ground-truth claims a scenario makes about itself. Tests re-derive each one.
struct Properties {
  std::optional<double> curvature;  // constant sectional curvature, if any
  bool integrable = false;
  bool orthogonal = false;
  bool kahler = false;
  bool nearly_kahler = false;
};

struct Descriptor {
  std::string name;
  std::map<std::string, double> params;
  std::uint64_t seed = 0;

  std::string to_json() const;
  static Descriptor from_json(const std::string& text);
  bool operator==(const Descriptor&) const = default;
};

struct Scenario {
  Descriptor descriptor;
  Chart chart;
  Properties properties;
  std::string doc;

  const std::string& name() const { return descriptor.name; }
};

class UnknownScenario : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Stereographic chart of the radius-r sphere in R^7 with the octonionic
// structure A_p X = p̂ × X.
Scenario round_sphere6(double radius = 1.0);

// Euclidean metric, constant block-diagonal complex structure.
Scenario flat_torus6();

// |x|^-2 times the Euclidean metric on R^6 minus the origin, standard complex
// structure. Hermitian, not Kähler, not constant curvature.
Scenario hopf6();

Scenario product_s2_cubed(double r1 = 1.0, double r2 = 1.0, double r3 = 1.0);

// Round unit S^6 with ε·exp(−|u|²) added to g_00; same octonionic A.
Scenario perturbed_sphere6(double eps);

// Same A, metric replaced by ½(g + AᵀgA).
Scenario averaged(const Scenario& base);

Scenario make_scenario(const Descriptor& d);
std::vector<std::string> scenario_names();

}  // namespace acobs
