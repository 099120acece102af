#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "pointint/spectral.hpp"

/// Text forms accepted on the command line. All parsers throw
/// pointint::Error(InvalidArgument) with a message naming the bad token.
namespace pointint::cli {

double parse_real(std::string_view text, std::string_view what);
long parse_integer(std::string_view text, std::string_view what);

/// "1", "-0.5", "1+0.3i", "2-1e-3i", "0.3i", "i", "-i".
cplx parse_complex(std::string_view text, std::string_view what);

/// "a:V,a:V,..."
std::vector<PointInteraction> parse_points(std::string_view text);

/// JSON array of {"a": .., "V": ..} objects.
std::vector<PointInteraction> parse_points_json(const std::string& json_text);
std::vector<PointInteraction> load_points_file(const std::string& path);

/// "x,y"
std::pair<double, double> parse_pair(std::string_view text, std::string_view what);

struct Axis {
  double min = 0.0;
  double max = 0.0;
  int steps = 1;  // intervals; steps + 1 nodes including both ends

  int nodes() const noexcept { return steps + 1; }
  double node(int i) const noexcept;
};

/// "xmin:xmax:steps", steps >= 1.
Axis parse_axis(std::string_view text);

/// "K:L", both >= 0.
std::pair<int, int> parse_index_pair(std::string_view text, std::string_view what);

/// POINTINT_THREADS if set (must be a positive integer), else the hardware
/// concurrency; at least 1.
unsigned thread_cap();

}  // namespace pointint::cli
