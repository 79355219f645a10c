#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "padicslopes/matrix.hpp"
#include "padicslopes/valuation.hpp"

namespace padicslopes {

/// 2x2 integer matrix [[a, b], [c, d]].
struct Mat2 {
  mpz_class a, b, c, d;
  mpz_class det() const { return a * d - b * c; }
};

/// The semigroup acting on the filtered modules: c = 0 and d = 1 mod p.
bool in_action_semigroup(const Mat2& g, const Prime& p);

/// Homogeneous polynomial of fixed degree in x, y; c[i] is the coefficient
/// of x^i y^(degree - i).
struct HomogPoly {
  long degree = 0;
  std::vector<mpz_class> c;

  static HomogPoly zero(long k) { return {k, std::vector<mpz_class>(static_cast<size_t>(k) + 1)}; }
  friend bool operator==(const HomogPoly&, const HomogPoly&) = default;
};

HomogPoly poly_mul(const HomogPoly& f, const HomogPoly& g);
HomogPoly poly_pow(const HomogPoly& f, const mpz_class& e);
HomogPoly poly_sub(const HomogPoly& f, const HomogPoly& g);

/// det(g)^twist * f(a x + c y, b x + d y), expanded exactly. Under this
/// substitution convention the action composes covariantly:
/// act(g1 * g2, f) = act(g1, act(g2, f)) (pinned by a property test).
HomogPoly act(const Mat2& g, const HomogPoly& f, long twist);

/// Tensor product of d symmetric powers with one global determinant twist.
/// Coefficients are stored flat in row-major multi-index order (last factor
/// index fastest).
struct TensorPolynomial {
  std::vector<long> degrees;
  long det_twist = 0;
  std::vector<mpz_class> coeffs;

  static TensorPolynomial zero(std::vector<long> degrees, long det_twist);
  long arity() const { return static_cast<long>(degrees.size()); }
  size_t size() const { return coeffs.size(); }
  size_t offset(const std::vector<long>& idx) const;
  /// Advances a multi-index in row-major order; false after the last one.
  bool next_index(std::vector<long>& idx) const;

  friend bool operator==(const TensorPolynomial&, const TensorPolynomial&) = default;
};

TensorPolynomial tensor_sub(const TensorPolynomial& f, const TensorPolynomial& g);

/// g applied to every tensor factor simultaneously, then scaled by
/// det(g)^det_twist.
TensorPolynomial tensor_act(const Mat2& g, const TensorPolynomial& F);

/// Diagonal basis of the degree-k graded piece of the ideal (p, x)^n:
/// entry p^max(n-i, 0) at the monomial x^i y^(k-i).
IntegerMatrix w_basis(long k, long n, const Prime& p);

/// Membership in that graded piece: vp(c_i) >= max(n - i, 0) for every i.
bool w_membership(const HomogPoly& f, long n, const Prime& p);

/// Tensor filtration membership: at each multi-index the required exponent
/// is min over factors of max(n - i_j, 0).
bool tensor_w_membership(const TensorPolynomial& F, long n, const Prime& p);

/// Multiplies by y^(p^(n-1)), raising the degree accordingly.
HomogPoly phi_map(const HomogPoly& f, long n, const Prime& p);

/// Same on tensor factor `factor` (0-based); other factors unchanged.
TensorPolynomial phi_map(const TensorPolynomial& F, long n, long factor, const Prime& p);

/// phi(g F) - g phi(F). Throws std::invalid_argument unless g lies in the
/// action semigroup. The caller checks tensor_w_membership of the result at
/// depth n.
TensorPolynomial phi_equivariance_defect(const TensorPolynomial& F, const Mat2& g, long n, long factor,
                                         const Prime& p);

/// y^(p^(n-1)) - (b x + d y)^(p^(n-1)) lies in (p, x)^n whenever d = 1 mod p.
bool frobenius_power_identity(const mpz_class& b, const mpz_class& d, long n, const Prime& p);

/// Three-way result for checks whose precondition failures must be reported
/// distinctly from property failures.
enum class CheckStatus { holds, fails, precondition_violated };

/// Given f - f' in W^n_k, checks f^(p^s) - f'^(p^s) in W^n_(p^s k).
CheckStatus power_congruence_check(const HomogPoly& f, const HomogPoly& f_prime, long n, long s, const Prime& p);

/// For g with a = c = 0 mod p and F in the tensor filtration at depth n,
/// checks that every coefficient of tensor_act(g, F) is divisible by
/// p^(n + det_twist * vp(det g)).
CheckStatus hecke_divisibility_check(const Mat2& g, const TensorPolynomial& F, long n, const Prime& p);

// Polynomial file format: "degrees ...", "det_twist ...", "coeffs", then the
// flat coefficient array in row-major multi-index order. Bit-exact round trip.
std::string tensor_to_string(const TensorPolynomial& F);
TensorPolynomial tensor_from_string(const std::string& s);

}  // namespace padicslopes
