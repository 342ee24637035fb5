#pragma once

#include "mhdq/field.hpp"

namespace mhdq {

/// Parity of each component under x3 -> -x3 (u3, H3 odd; the rest even).
struct ParitySignature {
    Vector8d sign = wall0_parity();

    /// The signed mirror of a state.
    Vector8d apply(const Vector8d& U) const { return sign.cwiseProduct(U); }
};

/// Even/odd extension of a quarter-box field to the reflected half box.
/// Cells with x3 > 0 are copied verbatim; cell k below the plane takes the
/// signed mirror of quarter cell k' = -1 - k.
Field extend(const Field& quarter);

/// The x3 > 0 part of a half-box field, copied bit for bit.
Field restrict(const Field& half);

/// The signed mirror of a half-box field across x3 = 0.
Field mirror(const Field& half);

/// Per-component max |f - mirror(f)| over the half box. Zero exactly when
/// f has the parity symmetry.
Vector8d parity_defect(const Field& half);

/// First cell (i, j, k) where extend(restrict(g)) differs from g, if any.
struct ParityWitness {
    bool found = false;
    int i = 0, j = 0, k = 0, component = 0;
    double expected = 0.0, actual = 0.0;
};
ParityWitness find_parity_witness(const Field& half);

}  // namespace mhdq
