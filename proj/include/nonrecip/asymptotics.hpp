#pragma once

#include "nonrecip/specfun.hpp"

namespace nonrecip {

/// Plane-wave coefficients of two independent solutions U and V:
///
///   U -> u1_plus  e^{i k+ z} + u2_plus  e^{-i k+ z}   (z -> +inf)
///   U -> u1_minus e^{i k- z} + u2_minus e^{-i k- z}   (z -> -inf)
///
/// and likewise for V with the v coefficients.
struct AsymptoticCoefficients {
  Complex u1_plus, u2_plus, v1_plus, v2_plus;
  Complex u1_minus, u2_minus, v1_minus, v2_minus;
};

enum class Side { left, right };

/// -v2+ u1- + u2+ v1-, common to every reflection and transmission amplitude.
/// Vanishes when U and V are dependent or at a spectral singularity.
Complex shared_denominator(const AsymptoticCoefficients& c);

/// r_l = (u2+ v2- - v2+ u2-) / D,  r_r = (v1- u1+ - u1- v1+) / D.
/// Throws PoleError when |D| underflows.
Complex reflection_from_asymptotics(const AsymptoticCoefficients& c, Side side);

/// t_l = (u2+ v1+ - v2+ u1+) / D,  t_r = (v1- u2- - u1- v2-) / D.
Complex transmission_from_asymptotics(const AsymptoticCoefficients& c, Side side);

/// |u2+ v2- - v2+ u2-| == |v1- u1+ - u1- v1+| within tol relative to the
/// larger magnitude; equivalent to R_l == R_r.
bool reciprocity_condition_holds(const AsymptoticCoefficients& c, double tol);

}  // namespace nonrecip
