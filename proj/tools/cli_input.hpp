#pragma once

// Text input grammar for the command-line tool: angles, angle pairs, class
// lists, presets and matrices.

#include <array>
#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "chlab/chlab.hpp"

namespace chlab::cli {

/// An angle written either as a rational multiple of pi (kept as num/den) or as a decimal.
struct AngleInput {
  bool exact = false;
  long long num = 0, den = 1;  // angle = num/den * pi when exact
  double value = 0.0;          // radians otherwise

  double radians() const { return exact ? kPi * static_cast<double>(num) / static_cast<double>(den) : value; }

  /// Reduced into [0, 2pi) before conversion when exact.
  double wrapped() const {
    if (!exact) return wrap_2pi(value);
    const long long period = 2 * den;
    const long long r = ((num % period) + period) % period;
    return kPi * static_cast<double>(r) / static_cast<double>(den);
  }
};

namespace detail {

[[noreturn]] inline void parse_fail(const std::string& what, const std::string& text) {
  throw Error(ErrorCode::ParseError, what + ": '" + text + "'");
}

inline std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

inline std::vector<std::string> split(const std::string& s, const std::string& seps) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (seps.find(ch) != std::string::npos) {
      if (!trim(cur).empty()) out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!trim(cur).empty()) out.push_back(trim(cur));
  return out;
}

inline bool parse_integer(const std::string& s, long long& out) {
  if (s.empty()) return false;
  char* end = nullptr;
  errno = 0;
  const long long v = std::strtoll(s.c_str(), &end, 10);
  if (errno != 0 || *end != '\0') return false;
  out = v;
  return true;
}

inline bool parse_decimal(const std::string& s, double& out) {
  if (s.empty()) return false;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (*end != '\0' || !std::isfinite(v)) return false;
  out = v;
  return true;
}

}  // namespace detail

/// Accepts "3π/2", "3pi/2", "-pi/4", "2*pi", "π", "0.25pi" and plain decimals such as "1.5".
inline AngleInput parse_angle(const std::string& text) {
  const std::string s = detail::trim(text);
  if (s.empty()) detail::parse_fail("empty angle", text);
  std::size_t pos = s.find("\xCF\x80");
  std::size_t len = 2;
  if (pos == std::string::npos) {
    std::string lower = s;
    for (char& ch : lower) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    pos = lower.find("pi");
    len = 2;
  }
  AngleInput a;
  if (pos == std::string::npos) {
    if (!detail::parse_decimal(s, a.value)) detail::parse_fail("not an angle", text);
    return a;
  }
  std::string coef = detail::trim(s.substr(0, pos));
  const std::string tail = detail::trim(s.substr(pos + len));
  if (!coef.empty() && coef.back() == '*') coef = detail::trim(coef.substr(0, coef.size() - 1));
  if (coef.empty() || coef == "+") coef = "1";
  if (coef == "-") coef = "-1";
  long long den = 1;
  if (!tail.empty()) {
    if (tail[0] != '/' || !detail::parse_integer(detail::trim(tail.substr(1)), den) || den == 0)
      detail::parse_fail("bad denominator", text);
  }
  long long num = 0;
  if (detail::parse_integer(coef, num)) {
    if (den < 0) {
      den = -den;
      num = -num;
    }
    const long long g = std::gcd(num < 0 ? -num : num, den);
    a.exact = true;
    a.num = g ? num / g : num;
    a.den = g ? den / g : den;
    return a;
  }
  double c = 0.0;
  if (!detail::parse_decimal(coef, c)) detail::parse_fail("bad coefficient", text);
  a.value = c * kPi / static_cast<double>(den);
  return a;
}

/// "a1, a2" or "a1 a2".
inline AnglePair parse_angle_pair(const std::string& text) {
  const auto parts = detail::split(text, ", \t");
  if (parts.size() != 2) detail::parse_fail("an angle pair needs two angles", text);
  return {parse_angle(parts[0]).wrapped(), parse_angle(parts[1]).wrapped()};
}

/// Angle pairs separated by ';'.
inline std::vector<AnglePair> parse_classes(const std::string& text) {
  std::vector<AnglePair> out;
  for (const auto& part : detail::split(text, ";")) out.push_back(parse_angle_pair(part));
  if (out.empty()) detail::parse_fail("no classes given", text);
  return out;
}

struct Preset {
  std::string id;
  std::array<AnglePair, 3> classes;
  std::optional<PQRSignature> signature;
};

/// "rfuchsian:p,q,r" or "exotic:4,5,20".
inline Preset parse_preset(const std::string& text) {
  const std::string s = detail::trim(text);
  const auto colon = s.find(':');
  if (colon == std::string::npos) detail::parse_fail("preset must look like name:p,q,r", text);
  const std::string name = s.substr(0, colon);
  const auto nums = detail::split(s.substr(colon + 1), ", ");
  if (nums.size() != 3) detail::parse_fail("preset needs three orders", text);
  long long o[3];
  for (int k = 0; k < 3; ++k)
    if (!detail::parse_integer(nums[k], o[k]) || o[k] < 2 || o[k] > 100000) detail::parse_fail("bad order", text);
  const PQRSignature sig(static_cast<int>(o[0]), static_cast<int>(o[1]), static_cast<int>(o[2]));
  Preset p;
  p.signature = sig;
  if (name == "rfuchsian") {
    p.id = "rfuchsian-" + std::to_string(sig.p) + "-" + std::to_string(sig.q) + "-" + std::to_string(sig.r);
    p.classes = {rfuchsian_class(sig.p), rfuchsian_class(sig.q), rfuchsian_class(sig.r)};
  } else if (name == "exotic") {
    if (sig.p != 4 || sig.q != 5 || sig.r != 20) detail::parse_fail("the built-in exotic preset is 4,5,20", text);
    p.id = "exotic-4-5-20";
    p.classes = exotic_classes_45_20();
  } else {
    detail::parse_fail("unknown preset", text);
  }
  return p;
}

inline cplx parse_complex_json(const nlohmann::json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw Error(ErrorCode::ParseError, "matrix entries must be numbers or [re, im] pairs");
}

/// A 3x3 matrix as nested JSON arrays of numbers or [re, im] pairs.
inline CMat3 parse_matrix_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::ParseError, std::string("invalid JSON matrix: ") + e.what());
  }
  if (j.is_object() && j.contains("matrix")) j = j["matrix"];
  if (!j.is_array() || j.size() != 3) throw Error(ErrorCode::ParseError, "matrix must have three rows");
  CMat3 m;
  for (int i = 0; i < 3; ++i) {
    if (!j[i].is_array() || j[i].size() != 3) throw Error(ErrorCode::ParseError, "matrix rows must have three entries");
    for (int k = 0; k < 3; ++k) m(i, k) = parse_complex_json(j[i][k]);
  }
  return m;
}

/// "E a1 a2" gives the elliptic element with that angle pair; anything else is read as a JSON matrix.
inline SU21Element parse_element(const std::string& text) {
  const std::string s = detail::trim(text);
  if (!s.empty() && (s[0] == 'E' || s[0] == 'e') && (s.size() == 1 || std::isspace(static_cast<unsigned char>(s[1]))))
    return elliptic_from_angle_pair(parse_angle_pair(s.substr(1)));
  const CMat3 m = parse_matrix_json(s);
  if (!m.is_finite()) throw Error(ErrorCode::NonFinite, "matrix has non-finite entries");
  const cplx d = m.det();
  if (std::abs(d) == 0.0) throw Error(ErrorCode::NotFormPreserving, "singular matrix");
  return su21_lift(m)[0];
}

}  // namespace chlab::cli
