#pragma once

#include "gee/field.hpp"

namespace gee {

//! The unknown u = (g_{mu nu}, B_{mu nu}, phi) and v = dt u on a slice.
//! Also serves as the initial jet produced by the data-setup operations.
struct EvolutionState {
  double t = 0.0;
  Field g, B, phi;
  Field vg, vB, vphi;
};

using InitialJet = EvolutionState;

struct StateRates {
  Field ag, aB, aphi;  // dt v per block
};

//! Per-equation MMS sources, added to the right-hand side f[u].
struct Sources {
  Field sg, sB, sphi;
};

}  // namespace gee
