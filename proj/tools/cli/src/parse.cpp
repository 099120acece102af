#include "parse.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "pointint/error.hpp"

namespace pointint::cli {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

[[noreturn]] void bad(std::string_view what, std::string_view text, std::string_view why = {}) {
  std::string msg = "bad " + std::string(what) + " '" + std::string(text) + "'";
  if (!why.empty()) msg += ": " + std::string(why);
  fail(ErrorCode::InvalidArgument, msg);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

double parse_real(std::string_view text, std::string_view what) {
  const std::string_view s = trim(text);
  if (s.empty()) bad(what, text, "empty");
  // from_chars rejects a leading '+'
  const std::string_view body = s.front() == '+' ? s.substr(1) : s;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), v);
  if (ec != std::errc{} || ptr != body.data() + body.size()) bad(what, text, "not a number");
  if (!std::isfinite(v)) bad(what, text, "not finite");
  return v;
}

long parse_integer(std::string_view text, std::string_view what) {
  const std::string_view s = trim(text);
  long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) bad(what, text, "not an integer");
  return v;
}

cplx parse_complex(std::string_view text, std::string_view what) {
  const std::string_view s = trim(text);
  if (s.empty()) bad(what, text, "empty");
  if (s.back() != 'i') return {parse_real(s, what), 0.0};

  const std::string_view body = s.substr(0, s.size() - 1);
  // split at the last sign that is not leading and not an exponent sign
  std::size_t cut = std::string_view::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      cut = k;
      break;
    }
  }
  const std::string_view re_part = cut == std::string_view::npos ? std::string_view{} : body.substr(0, cut);
  std::string_view im_part = cut == std::string_view::npos ? body : body.substr(cut);
  double im = 0.0;
  if (im_part.empty() || im_part == "+") {
    im = 1.0;
  } else if (im_part == "-") {
    im = -1.0;
  } else {
    im = parse_real(im_part, what);
  }
  const double re = re_part.empty() ? 0.0 : parse_real(re_part, what);
  return {re, im};
}

std::vector<PointInteraction> parse_points(std::string_view text) {
  std::vector<PointInteraction> pts;
  if (trim(text).empty()) bad("points", text, "empty");
  for (std::string_view item : split(text, ',')) {
    const auto parts = split(item, ':');
    if (parts.size() != 2) bad("point", item, "expected a:V");
    pts.push_back({parse_real(parts[0], "position"), parse_real(parts[1], "strength")});
  }
  return pts;
}

std::vector<PointInteraction> parse_points_json(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorCode::InvalidArgument, std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_array() || doc.empty()) fail(ErrorCode::InvalidArgument, "config must be a non-empty JSON array");
  std::vector<PointInteraction> pts;
  for (const auto& item : doc) {
    if (!item.is_object() || !item.contains("a") || !item.contains("V") || !item["a"].is_number() ||
        !item["V"].is_number()) {
      fail(ErrorCode::InvalidArgument, "config entries must be objects {\"a\": number, \"V\": number}");
    }
    pts.push_back({item["a"].get<double>(), item["V"].get<double>()});
  }
  return pts;
}

std::vector<PointInteraction> load_points_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::InvalidArgument, "cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_points_json(buf.str());
}

std::pair<double, double> parse_pair(std::string_view text, std::string_view what) {
  const auto parts = split(text, ',');
  if (parts.size() != 2) bad(what, text, "expected x,y");
  return {parse_real(parts[0], what), parse_real(parts[1], what)};
}

double Axis::node(int i) const noexcept {
  if (i == steps) return max;
  return min + (max - min) * static_cast<double>(i) / static_cast<double>(steps);
}

Axis parse_axis(std::string_view text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) bad("grid", text, "expected xmin:xmax:steps");
  Axis ax;
  ax.min = parse_real(parts[0], "grid min");
  ax.max = parse_real(parts[1], "grid max");
  const long steps = parse_integer(parts[2], "grid steps");
  if (steps < 1) bad("grid", text, "steps must be >= 1");
  if (steps > 100000) bad("grid", text, "steps must be <= 100000");
  if (!(ax.max >= ax.min)) bad("grid", text, "xmax < xmin");
  ax.steps = static_cast<int>(steps);
  return ax;
}

std::pair<int, int> parse_index_pair(std::string_view text, std::string_view what) {
  const auto parts = split(text, ':');
  if (parts.size() != 2) bad(what, text, "expected K:L");
  const long k = parse_integer(parts[0], what);
  const long l = parse_integer(parts[1], what);
  if (k < 0 || l < 0 || k > 100000 || l > 100000) bad(what, text, "indices out of range");
  return {static_cast<int>(k), static_cast<int>(l)};
}

unsigned thread_cap() {
  if (const char* env = std::getenv("POINTINT_THREADS"); env != nullptr && *env != '\0') {
    const long n = parse_integer(env, "POINTINT_THREADS");
    if (n < 1) bad("POINTINT_THREADS", env, "must be >= 1");
    return static_cast<unsigned>(std::min(n, 256L));
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace pointint::cli
