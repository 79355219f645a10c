#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <string>
#include <vector>

#include "padicslopes/valuation.hpp"

namespace padicslopes {

/// Square matrix of exact integers.
class IntegerMatrix {
 public:
  explicit IntegerMatrix(long t) : t_(t), e_(static_cast<size_t>(t) * t) {
    if (t < 1) throw std::invalid_argument("matrix dimension must be >= 1");
  }

  static IntegerMatrix identity(long t);
  static IntegerMatrix diagonal(const std::vector<mpz_class>& d);

  long dim() const { return t_; }
  mpz_class& at(long i, long j) { return e_[static_cast<size_t>(i) * t_ + j]; }
  const mpz_class& at(long i, long j) const { return e_[static_cast<size_t>(i) * t_ + j]; }

  friend bool operator==(const IntegerMatrix& a, const IntegerMatrix& b) {
    return a.t_ == b.t_ && a.e_ == b.e_;
  }

 private:
  long t_;
  std::vector<mpz_class> e_;
};

/// Coefficients d_0..d_t of det(X*I - A) = sum_s d_s X^(t-s); d_0 = 1.
struct CharPolyCoeffs {
  std::vector<mpz_class> d;
  long degree() const { return static_cast<long>(d.size()) - 1; }
};

/// Elementary-divisor exponents a_1 >= ... >= a_t of a depth-n quotient
/// (+)O/p^{a_i}O, with 0 <= a_i <= n. b_i = n - a_i is weakly increasing.
struct QuotientShape {
  long n = 0;
  long t = 0;
  std::vector<long> a;

  QuotientShape(long depth, std::vector<long> exps);

  long b(long i) const { return n - a[static_cast<size_t>(i)]; }

  /// sum of the first j values of b, extended with slope n beyond rank t.
  long B_at(long j) const;
};

/// Monic characteristic polynomial by the division-free Berkowitz recursion.
/// Exact over the integers; O(t^4) ring operations.
CharPolyCoeffs char_poly(const IntegerMatrix& A);

/// p-valuations of the elementary divisors, sorted weakly decreasing.
/// Rank-deficient input yields Infinity entries. Insensitive to left/right
/// multiplication by matrices invertible over the p-local integers.
std::vector<Valuation> snf_p_exponents(const IntegerMatrix& A, const Prime& p);

/// Shape of L/K for the finite-index sublattice K spanned by the columns of
/// K_in_L. Throws std::domain_error if some elementary divisor exponent
/// exceeds n (including the rank-deficient case).
QuotientShape quotient_shape(const IntegerMatrix& K_in_L, const Prime& p, long n);

/// Basis of the full-rank lattice spanned by arbitrary generator columns,
/// as a lower-triangular matrix with positive diagonal (integer column
/// elimination). Throws if the columns do not span a finite-index lattice.
IntegerMatrix lattice_column_basis(long rows, const std::vector<std::vector<mpz_class>>& cols);

/// Exact solve B*X = D for lower-triangular B with nonzero diagonal; every
/// division must be exact (i.e. the columns of D lie in the lattice of B).
IntegerMatrix solve_lower_triangular(const IntegerMatrix& B, const IntegerMatrix& D);

// Matrix file format: "t <dim>" line, "entries" line, then t rows of t
// decimal integers. Bit-exact round trip.
void write_matrix(std::ostream& os, const IntegerMatrix& m);
IntegerMatrix read_matrix(std::istream& is);
std::string matrix_to_string(const IntegerMatrix& m);
IntegerMatrix matrix_from_string(const std::string& s);

}  // namespace padicslopes
