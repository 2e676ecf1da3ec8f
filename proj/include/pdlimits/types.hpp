#pragma once

#include <optional>
#include <stdexcept>

#include "pdlimits/multiprec.hpp"

namespace pdl {

enum class ConstructionKind { assembly, multiset, selection };

inline const char* to_string(ConstructionKind k) {
  switch (k) {
    case ConstructionKind::assembly: return "assembly";
    case ConstructionKind::multiset: return "multiset";
    case ConstructionKind::selection: return "selection";
  }
  return "?";
}

/// Singularity metadata of the component series M(x): radius rho, log-pole
/// weight theta, additive constant lambda, plus the tilt phi the object
/// series will be raised to.
struct SingularData {
  Rational rho;     // radius of convergence, in (0,1]
  double theta = 1.0;
  double lambda = 0.0;
  Rational phi = 1;

  void validate(ConstructionKind kind) const {
    if (!(rho > 0) || rho > 1) throw std::domain_error("SingularData: rho must lie in (0,1]");
    if (!(theta > 0)) throw std::domain_error("SingularData: theta must be positive");
    if (!(phi > 0)) throw std::domain_error("SingularData: phi must be positive");
    if (kind == ConstructionKind::multiset && phi * rho >= 1)
      throw std::domain_error(
          "SingularData: multiset tilt requires phi * rho < 1 "
          "(behaviour beyond that restriction is unknown)");
  }
};

}  // namespace pdl
