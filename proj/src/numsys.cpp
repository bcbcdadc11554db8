/**************************************************************************************************
 * Apache License, Version 2.0
 * Copyright (c) 2026 the radixlab authors
 **************************************************************************************************/

#include "radixlab/numsys.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace radixlab {
namespace {

// ceil(a / b) for b > 0 with correct behavior for negative a.
int ceil_div(int a, int b) {
  int q = a / b;
  if (a % b > 0) ++q;
  return q;
}

int ceil_log2(std::int64_t n) {
  int bits = 0;
  std::int64_t v = 1;
  while (v < n) {
    v <<= 1;
    ++bits;
  }
  return bits;
}

[[noreturn]] void reject(const std::string& what) { throw InvalidSpec("invalid system: " + what); }

}  // namespace

std::string to_string(RoundingMode mode) {
  switch (mode) {
    case RoundingMode::RStar: return "rstar";
    case RoundingMode::TruncateTowardZero: return "trunc";
    case RoundingMode::TruncateDownward: return "down";
    case RoundingMode::VonNeumann: return "vn";
  }
  return "rstar";
}

RoundingMode rounding_mode_from_string(std::string_view name) {
  std::string s(name);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (s == "rstar" || s == "r*") return RoundingMode::RStar;
  if (s == "trunc" || s == "chop" || s == "truncate") return RoundingMode::TruncateTowardZero;
  if (s == "down" || s == "truncdown") return RoundingMode::TruncateDownward;
  if (s == "vn" || s == "vonneumann") return RoundingMode::VonNeumann;
  throw InvalidSpec("unknown rounding mode \"" + s + "\"");
}

SystemSpec make_system(int k, int u, int p, int e_min, int e_max, RoundingMode mode, int w) {
  if (k < 1) reject("k must be positive");
  if (u < k) reject("fraction length u must be at least k");
  if (u > 40) reject("fraction length u above the supported limit of 40 bits");
  if (p != 1 && p != 2) reject("p must be 1 or 2");
  if (p == 2 && k != 1) reject("implicit first bit (p=2) requires base 2");
  if (e_min >= e_max) reject("e_min must be below e_max");
  if (std::abs(e_min) > 16000 / k || std::abs(e_max) > 16000 / k)
    reject("exponent bounds exceed the reference range");
  if (w > 0) {
    int budget = u - (p == 2 ? 1 : 0) + 1 + ceil_log2(std::int64_t{e_max} - e_min);
    if (budget > w)
      reject("word budget " + std::to_string(budget) + " exceeds w=" + std::to_string(w));
  }
  return SystemSpec{k, u, p, e_min, e_max, mode, w, true};
}

Real value_of(const SystemSpec& spec, const FpValue& v) {
  if (v.is_zero()) return 0.0L;
  Real mag = std::ldexp(static_cast<Real>(v.F), spec.k * v.e - spec.u);
  return v.sign < 0 ? -mag : mag;
}

Real f_max(const SystemSpec& spec) {
  // (2^u - 1) * 2^(k*e_max - u), formed exactly.
  Real top = static_cast<Real>((std::uint64_t{1} << spec.u) - 1);
  return std::ldexp(top, spec.k * spec.e_max - spec.u);
}

Real f_min(const SystemSpec& spec) { return std::ldexp(1.0L, spec.k * spec.e_min); }

Real range(const SystemSpec& spec) { return static_cast<Real>(spec.k) * (spec.e_max - spec.e_min); }

Real range_exact(const SystemSpec& spec) { return ref_log2(f_max(spec) / f_min(spec)); }

FpValue fl(const SystemSpec& spec, Real x) {
  if (x == 0.0L) return FpValue::zero();
  if (!std::isfinite(x)) throw DomainError("fl: non-finite input");

  Real ax = ref_abs(x);
  if (ax < f_min(spec))
    throw UnderflowError("fl: |x| below f_min in system " + to_string(spec));

  // Pick e so that 2^(k*(e-1)) <= |x| < 2^(k*e), then scale the significand into
  // [2^(u-k), 2^u). Both steps are exact in reference arithmetic.
  int bin_exp = 0;
  (void)std::frexp(ax, &bin_exp);  // ax in [2^(bin_exp-1), 2^bin_exp)
  int e = ceil_div(bin_exp, spec.k);
  Real scaled = std::ldexp(ax, spec.u - spec.k * e);
  auto whole = static_cast<std::uint64_t>(scaled);
  Real frac = scaled - static_cast<Real>(whole);  // exact: a bit-slice of scaled

  bool negative = x < 0.0L;
  std::uint64_t F = whole;
  switch (spec.mode) {
    case RoundingMode::RStar:
      // Nearest; an exact half-way residue keeps the candidate whose last bit is one.
      if (frac > 0.5L || (frac == 0.5L && (whole & 1u) == 0)) ++F;
      break;
    case RoundingMode::TruncateTowardZero:
      break;
    case RoundingMode::TruncateDownward:
      if (negative && frac > 0.0L) ++F;
      break;
    case RoundingMode::VonNeumann:
      if (frac != 0.0L)
        F = whole | 1u;
      else if (!spec.vn_exact_exception)
        F = whole | 1u;
      break;
  }

  // Carry out of the fraction renormalizes one exponent up.
  if (F == (std::uint64_t{1} << spec.u)) {
    F >>= spec.k;
    ++e;
  }
  if (e > spec.e_max)
    throw OverflowError("fl: rounded result above f_max in system " + to_string(spec));

  return FpValue{negative ? -1 : +1, e, F};
}

LogSystemSpec make_log_system(std::int64_t a, std::int64_t b, int w) {
  if (w < 2 || w > 63) reject("log system word length must be in [2, 63]");
  if (a < 1) reject("log system scale a must be positive");
  std::int64_t max_code = (std::int64_t{1} << (w - 1)) - 1;
  if (b < 1 || b > max_code)
    reject("log system offset b must lie in [1, 2^(w-1)-1]");
  return LogSystemSpec{a, b, w};
}

Real value_of(const LogSystemSpec& spec, const LogValue& v) {
  if (v.is_zero()) return 0.0L;
  std::int64_t mag = v.lambda < 0 ? -v.lambda : v.lambda;
  Real exponent = static_cast<Real>(mag - spec.b) / static_cast<Real>(spec.a);
  Real value = std::exp2(exponent);
  return v.lambda < 0 ? -value : value;
}

LogValue fl_log(const LogSystemSpec& spec, Real x) {
  if (x == 0.0L) return LogValue{0};
  if (!std::isfinite(x)) throw DomainError("fl_log: non-finite input");
  Real target = static_cast<Real>(spec.a) * ref_log2(ref_abs(x)) + static_cast<Real>(spec.b);
  // Nearest code; llrint under the ambient nearest mode breaks exact ties to even.
  std::int64_t code = std::llrint(target);
  if (code < 1) throw UnderflowError("fl_log: |x| below f_min of " + to_string(spec));
  if (code > spec.max_code()) throw OverflowError("fl_log: |x| above f_max of " + to_string(spec));
  return LogValue{x < 0.0L ? -code : code};
}

Real log_f_max(const LogSystemSpec& spec) {
  return std::exp2(static_cast<Real>(spec.max_code() - spec.b) / static_cast<Real>(spec.a));
}

Real log_f_min(const LogSystemSpec& spec) {
  return std::exp2(static_cast<Real>(1 - spec.b) / static_cast<Real>(spec.a));
}

Real log_range(const LogSystemSpec& spec) {
  return static_cast<Real>(spec.max_code() - 1) / static_cast<Real>(spec.a);
}

std::vector<NamedSystem> standard_systems() {
  std::vector<NamedSystem> out;
  out.push_back({"S0", make_log_system(std::int64_t{1} << 22, std::int64_t{1} << 30, 32)});
  auto fp = [](int k, int u, int p, RoundingMode mode) {
    int half = 256 / k;
    return make_system(k, u, p, -half, half, mode, 32);
  };
  out.push_back({"S1", fp(1, 23, 2, RoundingMode::RStar)});
  out.push_back({"S2", fp(2, 23, 1, RoundingMode::RStar)});
  out.push_back({"S3", fp(1, 22, 1, RoundingMode::RStar)});
  out.push_back({"S4", fp(4, 24, 1, RoundingMode::RStar)});
  out.push_back({"S4T", fp(4, 24, 1, RoundingMode::TruncateTowardZero)});
  out.push_back({"S5", fp(8, 25, 1, RoundingMode::RStar)});
  return out;
}

namespace {

std::string trimmed(std::string_view text) {
  size_t lo = text.find_first_not_of(" \t");
  size_t hi = text.find_last_not_of(" \t");
  if (lo == std::string_view::npos) return {};
  return std::string(text.substr(lo, hi - lo + 1));
}

// "key=value,key=value" -> ordered pairs; rejects stray tokens.
std::vector<std::pair<std::string, std::string>> parse_kv(const std::string& body) {
  std::vector<std::pair<std::string, std::string>> pairs;
  size_t pos = 0;
  while (pos < body.size()) {
    size_t comma = body.find(',', pos);
    std::string item = body.substr(pos, comma == std::string::npos ? comma : comma - pos);
    pos = comma == std::string::npos ? body.size() : comma + 1;
    item = trimmed(item);
    if (item.empty()) continue;
    size_t eq = item.find('=');
    if (eq == std::string::npos) reject("expected key=value, got \"" + item + "\"");
    pairs.emplace_back(trimmed(item.substr(0, eq)), trimmed(item.substr(eq + 1)));
  }
  return pairs;
}

std::int64_t parse_int(const std::string& key, const std::string& value) {
  try {
    size_t used = 0;
    std::int64_t v = std::stoll(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    reject("field " + key + " is not an integer: \"" + value + "\"");
  }
}

}  // namespace

NamedSystem parse_system(std::string_view text) {
  std::string body = trimmed(text);
  if (body.empty()) reject("empty system spec");

  std::string upper = body;
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return std::toupper(c); });
  for (auto& named : standard_systems())
    if (named.name == upper) return named;

  if (body.rfind("log:", 0) == 0) {
    std::int64_t a = 0, b = 0, w = 0;
    for (auto& [key, value] : parse_kv(body.substr(4))) {
      if (key == "a") a = parse_int(key, value);
      else if (key == "b") b = parse_int(key, value);
      else if (key == "w") w = parse_int(key, value);
      else reject("unknown log-system field \"" + key + "\"");
    }
    if (a == 0 || b == 0 || w == 0) reject("log system needs a, b and w");
    return NamedSystem{body, make_log_system(a, b, static_cast<int>(w))};
  }

  bool have_k = false, have_u = false, have_emin = false, have_emax = false;
  int k = 0, u = 0, p = 1, e_min = 0, e_max = 0, w = 0;
  bool vn_exact = true;
  RoundingMode mode = RoundingMode::RStar;
  for (auto& [key, value] : parse_kv(body)) {
    if (key == "k") { k = static_cast<int>(parse_int(key, value)); have_k = true; }
    else if (key == "u") { u = static_cast<int>(parse_int(key, value)); have_u = true; }
    else if (key == "p") p = static_cast<int>(parse_int(key, value));
    else if (key == "emin") { e_min = static_cast<int>(parse_int(key, value)); have_emin = true; }
    else if (key == "emax") { e_max = static_cast<int>(parse_int(key, value)); have_emax = true; }
    else if (key == "mode") mode = rounding_mode_from_string(value);
    else if (key == "w") w = static_cast<int>(parse_int(key, value));
    else if (key == "vnexact") vn_exact = parse_int(key, value) != 0;
    else reject("unknown system field \"" + key + "\"");
  }
  if (!have_k || !have_u || !have_emin || !have_emax)
    reject("system spec needs at least k, u, emin and emax");
  SystemSpec spec = make_system(k, u, p, e_min, e_max, mode, w);
  spec.vn_exact_exception = vn_exact;
  return NamedSystem{to_string(spec), spec};
}

std::string to_string(const SystemSpec& spec) {
  std::string out = "k=" + std::to_string(spec.k) + ",u=" + std::to_string(spec.u) +
                    ",p=" + std::to_string(spec.p) + ",emin=" + std::to_string(spec.e_min) +
                    ",emax=" + std::to_string(spec.e_max) + ",mode=" + to_string(spec.mode);
  if (spec.w > 0) out += ",w=" + std::to_string(spec.w);
  if (!spec.vn_exact_exception) out += ",vnexact=0";
  return out;
}

std::string to_string(const LogSystemSpec& spec) {
  return "log:a=" + std::to_string(spec.a) + ",b=" + std::to_string(spec.b) +
         ",w=" + std::to_string(spec.w);
}

}  // namespace radixlab
