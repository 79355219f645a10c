#include <doctest.h>

#include <sstream>

#include "oracles.hpp"
#include "padicslopes/matrix.hpp"

using namespace padicslopes;
using oracles::TestRng;

namespace {

IntegerMatrix diag_longs(const std::vector<long>& d) {
  std::vector<mpz_class> v(d.begin(), d.end());
  return IntegerMatrix::diagonal(v);
}

IntegerMatrix random_matrix(long t, TestRng& rng, long bound) {
  IntegerMatrix m(t);
  for (long i = 0; i < t; ++i)
    for (long j = 0; j < t; ++j) m.at(i, j) = rng.signed_below(bound);
  return m;
}

std::vector<long> finite_exponents(const std::vector<Valuation>& exps) {
  std::vector<long> out;
  for (const auto& v : exps) out.push_back(v.value());
  return out;
}

}  // namespace

TEST_CASE("char_poly on small diagonal matrices") {
  CHECK(char_poly(IntegerMatrix::identity(2)).d == std::vector<mpz_class>{1, -2, 1});
  CHECK(char_poly(diag_longs({1, 2, 4})).d == std::vector<mpz_class>{1, -7, 14, -8});
  IntegerMatrix one(1);
  one.at(0, 0) = 5;
  CHECK(char_poly(one).d == std::vector<mpz_class>{1, -5});
}

TEST_CASE("char_poly matches the cofactor-expansion oracle") {
  TestRng rng(42);
  for (int trial = 0; trial < 25; ++trial) {
    long t = rng.in_range(1, 5);
    IntegerMatrix a = random_matrix(t, rng, 9);
    CHECK(char_poly(a).d == oracles::charpoly_cofactor(a));
  }
}

TEST_CASE("char_poly of a block-triangular matrix is the product of the blocks") {
  TestRng rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    long t1 = rng.in_range(1, 3), t2 = rng.in_range(1, 3);
    IntegerMatrix a = random_matrix(t1, rng, 9);
    IntegerMatrix b = random_matrix(t2, rng, 9);
    IntegerMatrix block(t1 + t2);
    for (long i = 0; i < t1; ++i)
      for (long j = 0; j < t1; ++j) block.at(i, j) = a.at(i, j);
    for (long i = 0; i < t2; ++i)
      for (long j = 0; j < t2; ++j) block.at(t1 + i, t1 + j) = b.at(i, j);
    for (long i = 0; i < t1; ++i)
      for (long j = 0; j < t2; ++j) block.at(i, t1 + j) = rng.signed_below(9);
    // product via the oracle's poly helpers, in descending-power layout
    auto pa = char_poly(a).d, pb = char_poly(b).d;
    oracles::Poly prod = oracles::poly_mul(oracles::Poly(pa.begin(), pa.end()), oracles::Poly(pb.begin(), pb.end()));
    CHECK(char_poly(block).d == std::vector<mpz_class>(prod.begin(), prod.end()));
  }
}

TEST_CASE("char_poly is invariant under unimodular conjugation") {
  TestRng rng(99);
  for (int trial = 0; trial < 8; ++trial) {
    long t = rng.in_range(2, 5);
    IntegerMatrix a = random_matrix(t, rng, 9);
    // Matched shear pairs (row i += k row j, then col j -= k col i) conjugate
    // by an elementary unimodular matrix.
    IntegerMatrix c = a;
    for (int s = 0; s < 10; ++s) {
      long i = rng.in_range(0, t - 1), j = rng.in_range(0, t - 1);
      if (i == j) continue;
      mpz_class k = rng.signed_below(3);
      for (long col = 0; col < t; ++col) c.at(i, col) += k * c.at(j, col);
      for (long row = 0; row < t; ++row) c.at(row, j) -= k * c.at(row, i);
    }
    CHECK(char_poly(c).d == char_poly(a).d);
  }
}

TEST_CASE("snf exponents of diagonal and conjugated matrices") {
  Prime p3(3);
  CHECK(finite_exponents(snf_p_exponents(diag_longs({9, 3, 1}), p3)) == std::vector<long>{2, 1, 0});

  TestRng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    IntegerMatrix d = diag_longs({9, 3, 1});
    IntegerMatrix u = oracles::random_unimodular(3, rng);
    IntegerMatrix v = oracles::random_unimodular(3, rng);
    IntegerMatrix m = oracles::mat_mul(oracles::mat_mul(u, d), v);
    CHECK(finite_exponents(snf_p_exponents(m, p3)) == std::vector<long>{2, 1, 0});
  }
}

TEST_CASE("snf of the zero matrix is all infinity") {
  Prime p5(5);
  IntegerMatrix z(2);
  auto exps = snf_p_exponents(z, p5);
  REQUIRE(exps.size() == 2);
  CHECK(exps[0].is_infinity());
  CHECK(exps[1].is_infinity());
}

TEST_CASE("snf exponent sum equals the determinant valuation") {
  TestRng rng(11);
  Prime p2(2);
  for (int trial = 0; trial < 30; ++trial) {
    long t = rng.in_range(1, 4);
    IntegerMatrix a = random_matrix(t, rng, 30);
    mpz_class det = oracles::charpoly_cofactor(a).back();
    if (t % 2) det = -det;  // d_t = (-1)^t det(A)
    if (det == 0) continue;
    long sum = 0;
    for (const auto& v : snf_p_exponents(a, p2)) sum += v.value();
    CHECK(sum == vp(det, p2).value());
  }
}

TEST_CASE("snf is insensitive to right multiplication by a unimodular matrix") {
  TestRng rng(13);
  Prime p3(3);
  for (int trial = 0; trial < 15; ++trial) {
    long t = rng.in_range(2, 4);
    IntegerMatrix a = random_matrix(t, rng, 40);
    IntegerMatrix u = oracles::random_unimodular(t, rng);
    auto lhs = snf_p_exponents(oracles::mat_mul(a, u), p3);
    auto rhs = snf_p_exponents(a, p3);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("quotient_shape from diagonal sublattices") {
  Prime p3(3);
  auto shape = quotient_shape(diag_longs({27, 9, 3, 1, 1, 1}), p3, 3);
  CHECK(shape.a == std::vector<long>{3, 2, 1, 0, 0, 0});
  CHECK(shape.n == 3);

  auto full = quotient_shape(IntegerMatrix::identity(4), p3, 0);
  CHECK(full.a == std::vector<long>{0, 0, 0, 0});

  CHECK_THROWS_AS(quotient_shape(diag_longs({27, 1}), p3, 2), std::domain_error);
  CHECK_THROWS_AS(quotient_shape(IntegerMatrix(2), p3, 5), std::domain_error);
}

TEST_CASE("shape invariants are validated") {
  CHECK_THROWS_AS(QuotientShape(2, {1, 2}), std::invalid_argument);   // not decreasing
  CHECK_THROWS_AS(QuotientShape(2, {3, 1}), std::invalid_argument);   // exceeds n
  CHECK_THROWS_AS(QuotientShape(2, {1, -1}), std::invalid_argument);  // negative
  QuotientShape s(3, {3, 2, 1, 0});
  CHECK(s.b(0) == 0);
  CHECK(s.B_at(4) == 6);
  CHECK(s.B_at(6) == 12);  // slope n beyond rank
}

TEST_CASE("matrix file round trip is bit exact") {
  TestRng rng(77);
  for (int trial = 0; trial < 10; ++trial) {
    long t = rng.in_range(1, 5);
    IntegerMatrix m(t);
    for (long i = 0; i < t; ++i)
      for (long j = 0; j < t; ++j) m.at(i, j) = rng.signed_below(mpz_class(1) << 200);
    std::string text = matrix_to_string(m);
    IntegerMatrix back = matrix_from_string(text);
    CHECK(back == m);
    CHECK(matrix_to_string(back) == text);
  }
}

TEST_CASE("malformed matrix files are rejected") {
  CHECK_THROWS_AS(matrix_from_string("nope"), std::runtime_error);
  CHECK_THROWS_AS(matrix_from_string("t 2\nentries\n1 2 3"), std::runtime_error);
  CHECK_THROWS_AS(matrix_from_string("t 2\nentries\n1 2\n3 x"), std::runtime_error);
  CHECK_THROWS_AS(matrix_from_string("t 0\nentries\n"), std::runtime_error);
}

TEST_CASE("lattice basis and triangular solve round trip") {
  TestRng rng(21);
  Prime p2(2);
  for (int trial = 0; trial < 10; ++trial) {
    long t = rng.in_range(1, 4);
    std::vector<std::vector<mpz_class>> cols;
    for (long j = 0; j < t + 2; ++j) {
      std::vector<mpz_class> col(static_cast<size_t>(t));
      for (long i = 0; i < t; ++i) col[static_cast<size_t>(i)] = rng.signed_below(20);
      cols.push_back(col);
    }
    // ensure full rank by adding a scaled identity block
    for (long i = 0; i < t; ++i) {
      std::vector<mpz_class> col(static_cast<size_t>(t), mpz_class(0));
      col[static_cast<size_t>(i)] = 8;
      cols.push_back(col);
    }
    IntegerMatrix basis = lattice_column_basis(t, cols);
    // every generator must be an integer combination of the basis columns
    for (const auto& col : cols) {
      IntegerMatrix d(t);
      for (long i = 0; i < t; ++i) d.at(i, 0) = col[static_cast<size_t>(i)];
      CHECK_NOTHROW(solve_lower_triangular(basis, d));
    }
  }
}
