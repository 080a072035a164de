#ifndef SBPCPR_SBPCPR_HPP
#define SBPCPR_SBPCPR_HPP

#include "sbpcpr/advection.hpp"
#include "sbpcpr/burgers.hpp"
#include "sbpcpr/fluxes.hpp"
#include "sbpcpr/harness.hpp"
#include "sbpcpr/mesh.hpp"
#include "sbpcpr/multiplication.hpp"
#include "sbpcpr/operators.hpp"
#include "sbpcpr/time_integration.hpp"

#endif  // SBPCPR_SBPCPR_HPP
