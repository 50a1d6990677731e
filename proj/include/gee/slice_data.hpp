#pragma once

#include <optional>

#include "gee/field.hpp"

namespace gee {

enum class Frame { String, Einstein };

//! Initial-data tuple on the spatial slice. All member fields are sigma
//! tensors (index range d-1, offset 1). The dilaton slot is labelled by the
//! frame: string data carries (xi0, x0) with an optional potential phi0;
//! Einstein data carries (phi0, phi1) and xi0 = d^Sigma phi0 is derived.
//! x0 and phi1 are the same storage (the paper sets phi1 = x0).
struct SliceData {
  Frame frame = Frame::Einstein;
  Field g0;    // Riemannian slice metric
  Field k;     // symmetric (0,2)
  Field H0;    // closed 3-form (identically zero below 3 spatial dims)
  Field h0;    // 2-form
  Field xi0;   // closed 1-form (string); for Einstein data derived from phi0
  Field x0;    // scalar: x_0 (string) aka phi_1 (Einstein)
  std::optional<Field> phi0;  // dilaton potential; required in Einstein frame

  // optional B-field slice data
  std::optional<Field> B0, b0, B1, b1;

  bool has_potential() const { return phi0.has_value(); }
};

}  // namespace gee
