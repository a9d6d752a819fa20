#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "dglab/errors.hpp"

namespace dglab::cli {

namespace {

std::string strip_spaces(const std::string& s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  return out;
}

[[noreturn]] void bad_init(const std::string& text, std::size_t pos, const std::string& why) {
  throw InputError("cannot parse initial data \"" + text + "\" at offset " + std::to_string(pos) + ": " + why);
}

}  // namespace

RealCircleField parse_init(const std::string& text) {
  const std::string s = strip_spaces(text);
  if (s.empty()) throw InputError("empty initial-data expression");
  RealCircleField f(1);
  std::size_t i = 0;
  while (i < s.size()) {
    double sign = 1.0;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1.0 : 1.0;
      ++i;
    } else if (i != 0) {
      bad_init(text, i, "expected '+' or '-'");
    }
    double coef = 1.0;
    bool have_coef = false;
    if (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '.')) {
      const auto r = std::from_chars(s.data() + i, s.data() + s.size(), coef);
      if (r.ec != std::errc()) bad_init(text, i, "bad number");
      i = static_cast<std::size_t>(r.ptr - s.data());
      have_coef = true;
    }
    if (i < s.size() && s[i] == '*') {
      if (!have_coef) bad_init(text, i, "'*' without a coefficient");
      ++i;
    }
    const std::string rest = s.substr(i, 3);
    if (rest == "sin" || rest == "cos") {
      i += 3;
      int m = 1;
      if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
        const auto r = std::from_chars(s.data() + i, s.data() + s.size(), m);
        if (r.ec != std::errc()) bad_init(text, i, "bad mode number");
        i = static_cast<std::size_t>(r.ptr - s.data());
      }
      if (m < 1) bad_init(text, i, "mode must be at least 1");
      if (m > 1 << 20) bad_init(text, i, "mode too large");
      f += rest == "sin" ? RealCircleField::sin_mode(m, sign * coef) : RealCircleField::cos_mode(m, sign * coef);
    } else {
      if (!have_coef) bad_init(text, i, "expected a number, 'sin' or 'cos'");
      f += RealCircleField::constant(sign * coef);
    }
  }
  if (!f.is_finite()) throw InputError("initial data has non-finite coefficients");
  return f;
}

std::vector<double> parse_grid(const std::string& text) {
  const std::string s = strip_spaces(text);
  auto number = [&](const std::string& part) {
    double v = 0.0;
    const auto r = std::from_chars(part.data(), part.data() + part.size(), v);
    if (r.ec != std::errc() || r.ptr != part.data() + part.size() || !std::isfinite(v))
      throw InputError("bad number \"" + part + "\" in grid \"" + text + "\"");
    return v;
  };
  std::vector<double> out;
  if (s.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() != 3) throw InputError("grid must look like start:step:stop");
    const double a = number(parts[0]), h = number(parts[1]), b = number(parts[2]);
    if (!(h > 0.0) || b < a) throw InputError("grid needs step > 0 and stop >= start");
    const long n = static_cast<long>(std::floor((b - a) / h + 1e-9));
    if (n > 1000000) throw InputError("grid too large");
    for (long j = 0; j <= n; ++j) out.push_back(a + j * h);
  } else {
    std::stringstream ss(s);
    for (std::string p; std::getline(ss, p, ',');) out.push_back(number(p));
  }
  if (out.empty()) throw InputError("empty grid");
  return out;
}

std::map<std::string, std::string> parse_config(std::istream& is) {
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw InputError("config line " + std::to_string(lineno) + " has no '='");
    auto trim = [](std::string x) {
      const auto a = x.find_first_not_of(" \t\r");
      if (a == std::string::npos) return std::string();
      const auto b = x.find_last_not_of(" \t\r");
      return x.substr(a, b - a + 1);
    };
    std::string key = trim(line.substr(0, eq));
    if (key.rfind("--", 0) == 0) key.erase(0, 2);
    if (key.empty()) throw InputError("config line " + std::to_string(lineno) + " has an empty key");
    kv[key] = trim(line.substr(eq + 1));
  }
  return kv;
}

}  // namespace dglab::cli
