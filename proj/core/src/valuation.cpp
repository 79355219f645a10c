#include "padicslopes/valuation.hpp"

namespace padicslopes {

namespace {

bool miller_rabin_composite(const mpz_class& n, const mpz_class& a, const mpz_class& d, long r) {
  mpz_class x;
  mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  if (x == 1 || x == n - 1) return false;
  for (long i = 1; i < r; ++i) {
    x = (x * x) % n;
    if (x == n - 1) return false;
  }
  return true;
}

// Deterministic for n < 3.317e24 with the first twelve prime bases.
bool is_prime_deterministic(const mpz_class& n) {
  if (n < 2) return false;
  static const long small_primes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37,
                                      41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};
  for (long q : small_primes) {
    if (n == q) return true;
    if (mpz_divisible_ui_p(n.get_mpz_t(), q)) return false;
  }
  static const mpz_class mr_limit("3317044064679887385961981");
  if (n >= mr_limit)
    throw std::domain_error("prime candidate too large for the deterministic check");
  mpz_class d = n - 1;
  long r = 0;
  while (mpz_even_p(d.get_mpz_t())) {
    d >>= 1;
    ++r;
  }
  for (long a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (miller_rabin_composite(n, mpz_class(a), d, r)) return false;
  }
  return true;
}

}  // namespace

Prime::Prime(mpz_class p) : p_(std::move(p)) {
  if (!is_prime_deterministic(p_)) throw std::domain_error("not a prime: " + p_.get_str());
}

mpz_class Prime::pow(long e) const {
  if (e < 0) throw std::domain_error("negative prime power");
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), p_.get_mpz_t(), static_cast<unsigned long>(e));
  return r;
}

Valuation vp(const mpz_class& z, const Prime& p) {
  if (z == 0) return Valuation::infinity();
  mpz_class rest;
  unsigned long s = mpz_remove(rest.get_mpz_t(), z.get_mpz_t(), p.value().get_mpz_t());
  return Valuation(static_cast<long>(s));
}

Valuation vp_rational(const mpz_class& num, const mpz_class& den, const Prime& p) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  if (num == 0) return Valuation::infinity();
  return Valuation(vp(num, p).value() - vp(den, p).value());
}

}  // namespace padicslopes
