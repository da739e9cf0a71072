#pragma once

#include "bmlab/rat.hpp"

namespace bmlab {

// Conservative rational brackets for trig values at rational-degree angles.
// Every returned interval certifiably contains the true value; width shrinks
// with `bits`. Used so that angle thresholds enter predicates only through
// exact rational comparisons.

const RatInterval& pi_bracket();  // ~200-bit enclosure of pi

RatInterval sin_deg(const Rat& degrees, unsigned bits = 96);
RatInterval cos_deg(const Rat& degrees, unsigned bits = 96);
RatInterval tan_deg(const Rat& degrees, unsigned bits = 96);  // degrees in (-90, 90)

// atan of an exact rational slope, in degrees.
RatInterval atan_deg(const Rat& t, unsigned bits = 96);
RatInterval atan_deg(const RatInterval& t, unsigned bits = 96);

}  // namespace bmlab
