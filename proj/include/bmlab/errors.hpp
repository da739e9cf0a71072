#pragma once

#include <stdexcept>
#include <string>

namespace bmlab {

// One exception type per contract violation named in the interfaces.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define BMLAB_ERROR(NAME)                                        \
  struct NAME : Error {                                          \
    explicit NAME(const std::string& what = #NAME) : Error(what) {} \
  }

BMLAB_ERROR(DegenerateInput);
BMLAB_ERROR(MalformedRegion);
BMLAB_ERROR(EmptyRegion);
BMLAB_ERROR(NotOnBoundary);
BMLAB_ERROR(OriginOutside);
BMLAB_ERROR(DegenerateInstance);
BMLAB_ERROR(DegenerateScene);
BMLAB_ERROR(ContainmentViolation);
BMLAB_ERROR(InfeasibleCascade);
BMLAB_ERROR(ProvenanceMissing);
BMLAB_ERROR(ArcTooWide);
BMLAB_ERROR(DeltaZero);
BMLAB_ERROR(BadParams);
BMLAB_ERROR(ExtentOverflow);
BMLAB_ERROR(IoError);

#undef BMLAB_ERROR

}  // namespace bmlab
