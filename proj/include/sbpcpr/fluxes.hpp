#ifndef SBPCPR_FLUXES_HPP
#define SBPCPR_FLUXES_HPP

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sbpcpr {

/// Two-point numerical fluxes. Econ, LocalLaxFriedrichs and Osher apply to
/// Burgers' equation; Central applies to linear advection.
enum class FluxKind { Econ, LocalLaxFriedrichs, Osher, Central };

inline const char* flux_name(FluxKind kind) {
  switch (kind) {
    case FluxKind::Econ:               return "econ";
    case FluxKind::LocalLaxFriedrichs: return "llf";
    case FluxKind::Osher:              return "osher";
    case FluxKind::Central:            return "central";
  }
  return "unknown";
}

/// Numerical flux for Burgers' equation, f(u, u) = u^2 / 2 consistent.
///
/// Econ:  (u_+^2 + u_-^2) / 4 - (u_+ - u_-)^2 / 12   (energy conservative)
/// LLF:   (u_+^2 + u_-^2) / 4 - max(|u_+|, |u_-|) (u_+ - u_-) / 2
/// Osher: case split on the signs of u_- and u_+, ties resolving to the
///        first matching case.
inline double burgers_flux(FluxKind kind, double u_minus, double u_plus) {
  switch (kind) {
    case FluxKind::Econ:
      return 0.25 * (u_plus * u_plus + u_minus * u_minus) -
             (u_plus - u_minus) * (u_plus - u_minus) / 12.0;
    case FluxKind::LocalLaxFriedrichs:
      return 0.25 * (u_plus * u_plus + u_minus * u_minus) -
             0.5 * std::max(std::abs(u_plus), std::abs(u_minus)) * (u_plus - u_minus);
    case FluxKind::Osher:
      if (u_plus > 0.0 && u_minus > 0.0) return 0.5 * u_minus * u_minus;
      if (u_plus < 0.0 && u_minus < 0.0) return 0.5 * u_plus * u_plus;
      if (u_minus >= 0.0 && 0.0 >= u_plus)
        return 0.5 * u_plus * u_plus + 0.5 * u_minus * u_minus;
      return 0.0;  // u_- <= 0 <= u_+
    case FluxKind::Central:
      break;
  }
  throw std::invalid_argument("burgers_flux: Central is not a Burgers flux");
}

/// Central flux (u_- + u_+) / 2 for linear advection.
inline double central_flux(double u_minus, double u_plus) {
  return 0.5 * (u_minus + u_plus);
}

/// Entropy condition value (u_-^3 - u_+^3) / 6 - (u_- - u_+) f^num(u_-, u_+).
/// Non-positivity of this quantity at every interface yields energy
/// stability; the Econ flux makes it vanish identically.
inline double entropy_condition(FluxKind kind, double u_minus, double u_plus) {
  const double fnum = burgers_flux(kind, u_minus, u_plus);
  return (u_minus * u_minus * u_minus - u_plus * u_plus * u_plus) / 6.0 -
         (u_minus - u_plus) * fnum;
}

}  // namespace sbpcpr

#endif  // SBPCPR_FLUXES_HPP
