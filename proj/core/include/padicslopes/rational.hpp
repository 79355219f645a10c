#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace padicslopes {

/// Canonical "num/den" rendering used by all machine-readable outputs.
inline std::string rational_str(const mpq_class& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

/// Human rendering: "num/den" only when the denominator is not 1.
inline std::string rational_pretty(const mpq_class& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return rational_str(q);
}

/// Accepts "n" or "num/den"; canonicalizes. Throws on malformed input.
inline mpq_class parse_rational(const std::string& s) {
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("malformed rational: " + s);
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  q.canonicalize();
  return q;
}

inline mpz_class floor_rational(const mpq_class& q) {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return r;
}

}  // namespace padicslopes
