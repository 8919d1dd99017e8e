#pragma once

#include <stdexcept>
#include <string>

namespace biconserv {

/// Typed failure conditions surfaced by the library. Each value corresponds
/// to a contract violation or a geometric degeneracy callers may want to
/// detect and handle (grid sweeps record-and-skip several of them).
enum class errc {
  // jets
  shape_mismatch,
  division_by_zero_value,
  domain_error,
  index_out_of_order,
  // linear algebra
  non_positive_definite_metric,
  // charts
  constraint_violation,
  singular_domain,
  out_of_domain,
  // shape engine
  degenerate_tangents,
  normal_null_vector,
  unordered_curvatures,
  repeated_curvature,
  // curves
  degenerate_frenet,
  null_normal,
  init_off_surface,
  step_underflow,
  curvature_collision,
  gradient_vanishes,
  // ode
  singular_init,
  // cli
  config_parse,
  chart_construction,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::shape_mismatch: return "ShapeMismatch";
    case errc::division_by_zero_value: return "DivisionByZeroValue";
    case errc::domain_error: return "DomainError";
    case errc::index_out_of_order: return "IndexOutOfOrder";
    case errc::non_positive_definite_metric: return "NonPositiveDefiniteMetric";
    case errc::constraint_violation: return "ConstraintViolation";
    case errc::singular_domain: return "SingularDomain";
    case errc::out_of_domain: return "OutOfDomain";
    case errc::degenerate_tangents: return "DegenerateTangents";
    case errc::normal_null_vector: return "NormalNullVector";
    case errc::unordered_curvatures: return "UnorderedCurvatures";
    case errc::repeated_curvature: return "RepeatedCurvature";
    case errc::degenerate_frenet: return "DegenerateFrenet";
    case errc::null_normal: return "NullNormal";
    case errc::init_off_surface: return "InitOffSurface";
    case errc::step_underflow: return "StepUnderflow";
    case errc::curvature_collision: return "CurvatureCollision";
    case errc::gradient_vanishes: return "GradientVanishes";
    case errc::singular_init: return "SingularInit";
    case errc::config_parse: return "ConfigParse";
    case errc::chart_construction: return "ChartConstruction";
  }
  return "UnknownError";
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& msg) { throw error(code, msg); }

}  // namespace biconserv
