#include "biortho/common.hpp"

#include <cstdio>

namespace biortho {

std::string fmt_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw NumericFailure(std::string(what) + ": non-finite value");
  }
}

}  // namespace biortho
