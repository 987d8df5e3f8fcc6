#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pathint/transform.hpp"

namespace pathint::action {

/// Raised when a perturbative order outside the supported range is requested.
class OrderOverflow : public std::invalid_argument {
 public:
  explicit OrderOverflow(const std::string& what) : std::invalid_argument(what) {}
};

/// Evaluation parameters shared by the pipeline. The engine is symbolic in
/// the frequency throughout; omega is only used when a numeric value at D = 1
/// is requested. a_value empty means the checking parameter stays symbolic.
struct ModelParams {
  Rational omega = Rational(1);
  int max_g_order = 2;
  std::optional<Rational> a_value;

  void validate() const {
    if (!(omega > Rational(0))) throw std::domain_error("frequency must be positive");
    if (max_g_order < 1 || max_g_order > 2)
      throw OrderOverflow("supported perturbative orders are 1 and 2, got " +
                          std::to_string(max_g_order));
  }
};

/// One interaction vertex: coefficient * g^g_order * w^omega_power *
/// qdot^qdot_power * q^q_power, with jacobian marking the measure vertex that
/// carries one power of the Dirac factor at the origin.
struct VertexTerm {
  Coeff coefficient;
  int g_order = 0;
  int omega_power = 0;
  int qdot_power = 0;
  int q_power = 0;
  bool jacobian = false;

  int field_count() const { return qdot_power + q_power; }
  std::string str() const;
};

/// Kinetic and potential interaction vertices induced by the transform,
/// truncated at params.max_g_order. The kinetic series contributes
/// (1/2)(f'(q)^2 - 1) qdot^2 and the potential series (w^2/2)(f(q)^2 - q^2).
std::vector<VertexTerm> expand_interaction(const TransformSeries& f, const ModelParams& params);

/// Measure vertices from the transform Jacobian: -d0 * log f'(q) expanded in
/// the coupling, truncated at params.max_g_order.
std::vector<VertexTerm> expand_jacobian(const TransformSeries& f, const ModelParams& params);

}  // namespace pathint::action
