#pragma once

#include <cmath>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace test_support {

inline std::string data(const std::string& name) { return std::string(YIGMAG_TEST_DATA) + "/" + name; }

inline double rel_rms(std::span<const double> got, std::span<const double> want) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < want.size(); ++i) {
    num += (got[i] - want[i]) * (got[i] - want[i]);
    den += want[i] * want[i];
  }
  return std::sqrt(num / den);
}

inline double db10(double x) { return 10.0 * std::log10(x); }
inline double db20(double x) { return 20.0 * std::log10(x); }

// Fresh scratch directory per call site.
inline std::filesystem::path scratch(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("yigmag_test_" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

}  // namespace test_support
