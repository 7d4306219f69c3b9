#ifndef RINGMODES_FORMAT_HPP
#define RINGMODES_FORMAT_HPP

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

namespace ringmodes {

// 12 significant digits, locale-independent; all CLI numeric output goes
// through here so identical runs emit identical bytes.
inline std::string fmt12(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline void csv_row(std::ostream& os) { os << '\n'; }

template <class T, class... Rest>
void csv_row(std::ostream& os, const T& first, const Rest&... rest) {
  if constexpr (std::is_floating_point_v<T>)
    os << fmt12(first);
  else
    os << first;
  if constexpr (sizeof...(rest) > 0) os << ',';
  csv_row(os, rest...);
}

}  // namespace ringmodes

#endif
