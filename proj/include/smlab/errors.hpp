#pragma once

#include <stdexcept>
#include <string>

namespace smlab {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define SMLAB_ERROR_KIND(Name)                  \
  struct Name : Error {                         \
    using Error::Error;                         \
  }

SMLAB_ERROR_KIND(InvalidParameter);
SMLAB_ERROR_KIND(DomainError);
SMLAB_ERROR_KIND(ViewError);
SMLAB_ERROR_KIND(IndexError);
SMLAB_ERROR_KIND(RangeError);
SMLAB_ERROR_KIND(ShapeError);
SMLAB_ERROR_KIND(ResourceError);
SMLAB_ERROR_KIND(EmptySample);
SMLAB_ERROR_KIND(DegenerateSample);
SMLAB_ERROR_KIND(NonFinite);
SMLAB_ERROR_KIND(ParseError);
SMLAB_ERROR_KIND(ConfigError);
SMLAB_ERROR_KIND(IoError);
SMLAB_ERROR_KIND(ToleranceNotMet);

#undef SMLAB_ERROR_KIND

}  // namespace smlab
