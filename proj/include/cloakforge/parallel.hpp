#pragma once

#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cloakforge::par {

// Scan grids (cloak searches, fusion scans, suite cells) are independent
// work items; each index writes only its own slot, so results are identical
// in serial and parallel runs. CLOAKFORGE_SERIAL=1 forces the serial path.
inline bool& enabled_flag() {
  static bool flag = [] {
    const char* env = std::getenv("CLOAKFORGE_SERIAL");
    return !(env && env[0] == '1');
  }();
  return flag;
}

inline bool enabled() { return enabled_flag(); }
inline void set_enabled(bool on) { enabled_flag() = on; }

template <class Body>
void parallel_for(int n, const Body& body) {
#ifdef _OPENMP
  if (enabled()) {
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
#endif
  for (int i = 0; i < n; ++i) body(i);
}

// Serial reference path, kept so tests can compare against parallel_for.
template <class Body>
void serial_for(int n, const Body& body) {
  for (int i = 0; i < n; ++i) body(i);
}

}  // namespace cloakforge::par
