#include "fanforge/rational.hpp"

#include <cctype>

#include "fanforge/error.hpp"

namespace fanforge {

std::string_view to_string(error_kind kind) {
  switch (kind) {
    case error_kind::out_of_domain: return "OutOfDomain";
    case error_kind::domain_mismatch: return "DomainMismatch";
    case error_kind::invalid_coordinate: return "InvalidCoordinate";
    case error_kind::degenerate_pair: return "DegeneratePair";
    case error_kind::level_violation: return "LevelViolation";
    case error_kind::syntax_error: return "SyntaxError";
    case error_kind::invalid_bounds: return "InvalidBounds";
    case error_kind::point_not_in_truncation: return "PointNotInTruncation";
    case error_kind::not_a_fan_point: return "NotAFanPoint";
    case error_kind::level_mismatch: return "LevelMismatch";
    case error_kind::bad_level: return "BadLevel";
    case error_kind::invalid_offsets: return "InvalidOffsets";
    case error_kind::spoke_too_small: return "SpokeTooSmall";
    case error_kind::budget_too_small: return "BudgetTooSmall";
    case error_kind::invalid_argument: return "InvalidArgument";
  }
  return "Unknown";
}

namespace {

std::size_t scan_digits(std::string_view text, std::size_t pos) {
  std::size_t end = pos;
  while (end < text.size() &&
         std::isdigit(static_cast<unsigned char>(text[end])))
    ++end;
  if (end == pos) throw syntax_error(pos, "expected digit");
  return end;
}

}  // namespace

rational ratio(long num, long den) {
  if (den == 0) throw error(error_kind::invalid_argument, "zero denominator");
  rational r(num, den);
  r.canonicalize();
  return r;
}

rational parse_rational(std::string_view text) {
  std::size_t pos = 0;
  if (pos < text.size() && text[pos] == '-') ++pos;
  std::size_t num_end = scan_digits(text, pos);
  mpz_class num(std::string(text.substr(0, num_end)), 10);
  mpz_class den = 1;
  pos = num_end;
  if (pos < text.size() && text[pos] == '/') {
    std::size_t den_end = scan_digits(text, pos + 1);
    den = mpz_class(std::string(text.substr(pos + 1, den_end - pos - 1)), 10);
    if (den == 0) throw syntax_error(pos + 1, "zero denominator");
    pos = den_end;
  }
  if (pos != text.size()) throw syntax_error(pos, "unexpected character");
  rational r(num, den);
  r.canonicalize();
  return r;
}

std::string to_string(const rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

rational pow2(long k) {
  mpz_class p = 1;
  unsigned long e = k >= 0 ? static_cast<unsigned long>(k)
                           : static_cast<unsigned long>(-(k + 1)) + 1;
  mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), e);
  if (k >= 0) return rational(p);
  return rational(mpz_class(1), p);
}

std::optional<unsigned long> dyadic_exponent(const rational& r) {
  if (r.get_num() != 1) return std::nullopt;
  const mpz_class& den = r.get_den();
  unsigned long k = mpz_scan1(den.get_mpz_t(), 0);
  if (mpz_sizeinbase(den.get_mpz_t(), 2) != k + 1) return std::nullopt;
  return k;
}

rational abs(const rational& r) { return r < 0 ? rational(-r) : r; }

const rational& min(const rational& a, const rational& b) {
  return b < a ? b : a;
}

const rational& max(const rational& a, const rational& b) {
  return a < b ? b : a;
}

std::size_t hash_value(const rational& r) {
  auto mix = [](std::size_t seed, std::size_t v) {
    return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
  };
  std::size_t seed = 0;
  for (const mpz_class* z : {&r.get_num(), &r.get_den()}) {
    const mpz_srcptr raw = z->get_mpz_t();
    seed = mix(seed, static_cast<std::size_t>(raw->_mp_size));
    const std::size_t limbs = mpz_size(raw);
    for (std::size_t i = 0; i < limbs; ++i)
      seed = mix(seed, static_cast<std::size_t>(mpz_getlimbn(raw, i)));
  }
  return seed;
}

}  // namespace fanforge
