#include "padicslopes/matrix.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

namespace padicslopes {

IntegerMatrix IntegerMatrix::identity(long t) {
  IntegerMatrix m(t);
  for (long i = 0; i < t; ++i) m.at(i, i) = 1;
  return m;
}

IntegerMatrix IntegerMatrix::diagonal(const std::vector<mpz_class>& d) {
  IntegerMatrix m(static_cast<long>(d.size()));
  for (long i = 0; i < m.dim(); ++i) m.at(i, i) = d[static_cast<size_t>(i)];
  return m;
}

QuotientShape::QuotientShape(long depth, std::vector<long> exps)
    : n(depth), t(static_cast<long>(exps.size())), a(std::move(exps)) {
  if (n < 0) throw std::invalid_argument("negative filtration depth");
  if (t < 1) throw std::invalid_argument("empty quotient shape");
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] < 0 || a[i] > n) throw std::invalid_argument("exponent outside [0, n]");
    if (i > 0 && a[i] > a[i - 1]) throw std::invalid_argument("exponents must be weakly decreasing");
  }
}

long QuotientShape::B_at(long j) const {
  if (j < 0) return 0;
  long s = 0;
  for (long i = 0; i < std::min(j, t); ++i) s += b(i);
  if (j > t) s += (j - t) * n;
  return s;
}

CharPolyCoeffs char_poly(const IntegerMatrix& A) {
  const long t = A.dim();
  std::vector<mpz_class> poly{mpz_class(1), -A.at(0, 0)};
  std::vector<mpz_class> items, vec, nxt, conv;
  for (long r = 1; r < t; ++r) {
    // Incorporate the leading (r+1)x(r+1) block. With the split
    //   [ Asub  C ]
    //   [ R     a ]
    // the new coefficient vector is the truncated convolution of the old one
    // with (1, -a, -R.C, -R.Asub.C, ..., -R.Asub^{r-1}.C).
    items.assign(static_cast<size_t>(r) + 2, mpz_class(0));
    items[0] = 1;
    items[1] = -A.at(r, r);
    vec.resize(static_cast<size_t>(r));
    for (long i = 0; i < r; ++i) vec[static_cast<size_t>(i)] = A.at(i, r);
    for (long i = 0; i < r; ++i) {
      if (i > 0) {
        nxt.assign(static_cast<size_t>(r), mpz_class(0));
        for (long row = 0; row < r; ++row)
          for (long col = 0; col < r; ++col) nxt[static_cast<size_t>(row)] += A.at(row, col) * vec[static_cast<size_t>(col)];
        vec.swap(nxt);
      }
      mpz_class dot = 0;
      for (long col = 0; col < r; ++col) dot += A.at(r, col) * vec[static_cast<size_t>(col)];
      items[static_cast<size_t>(i) + 2] = -dot;
    }
    conv.assign(static_cast<size_t>(r) + 2, mpz_class(0));
    for (size_t s = 0; s < conv.size(); ++s)
      for (size_t j = 0; j < poly.size() && j <= s; ++j)
        if (s - j < items.size()) conv[s] += items[s - j] * poly[j];
    poly.swap(conv);
  }
  return CharPolyCoeffs{std::move(poly)};
}

std::vector<Valuation> snf_p_exponents(const IntegerMatrix& A, const Prime& p) {
  const long t = A.dim();
  std::vector<std::vector<mpz_class>> m(static_cast<size_t>(t), std::vector<mpz_class>(static_cast<size_t>(t)));
  for (long i = 0; i < t; ++i)
    for (long j = 0; j < t; ++j) m[static_cast<size_t>(i)][static_cast<size_t>(j)] = A.at(i, j);
  auto entry = [&m](long i, long j) -> mpz_class& { return m[static_cast<size_t>(i)][static_cast<size_t>(j)]; };

  // Diagonalize with integer row/column operations (classical Euclidean
  // reduction on a minimal-magnitude pivot). All operations are invertible
  // over the p-local integers, and for a diagonal matrix over a local ring
  // the elementary divisor exponents are the sorted diagonal valuations, so
  // no divisibility-chain fixup is needed.
  std::vector<Valuation> exps;
  for (long k = 0; k < t; ++k) {
    while (true) {
      long bi = -1, bj = -1;
      for (long i = k; i < t; ++i)
        for (long j = k; j < t; ++j) {
          if (entry(i, j) == 0) continue;
          if (bi < 0 || mpz_cmpabs(entry(i, j).get_mpz_t(), entry(bi, bj).get_mpz_t()) < 0) {
            bi = i;
            bj = j;
          }
        }
      if (bi < 0) goto rank_deficient;
      std::swap(m[static_cast<size_t>(k)], m[static_cast<size_t>(bi)]);
      for (long i = 0; i < t; ++i) std::swap(entry(i, k), entry(i, bj));

      // One reduction sweep; leftover remainders shrink the next pivot.
      bool lone = true;
      mpz_class q;
      for (long i = k + 1; i < t; ++i) {
        if (entry(i, k) == 0) continue;
        q = entry(i, k) / entry(k, k);
        if (q != 0)
          for (long j = k; j < t; ++j) entry(i, j) -= q * entry(k, j);
        if (entry(i, k) != 0) lone = false;
      }
      for (long j = k + 1; j < t; ++j) {
        if (entry(k, j) == 0) continue;
        q = entry(k, j) / entry(k, k);
        if (q != 0)
          for (long i = k; i < t; ++i) entry(i, j) -= q * entry(i, k);
        if (entry(k, j) != 0) lone = false;
      }
      if (lone) break;
    }
    exps.push_back(vp(entry(k, k), p));
  }
rank_deficient:
  while (static_cast<long>(exps.size()) < t) exps.push_back(Valuation::infinity());
  std::sort(exps.begin(), exps.end(), [](const Valuation& x, const Valuation& y) { return y < x; });
  return exps;
}

QuotientShape quotient_shape(const IntegerMatrix& K_in_L, const Prime& p, long n) {
  auto exps = snf_p_exponents(K_in_L, p);
  std::vector<long> a;
  a.reserve(exps.size());
  for (const Valuation& v : exps) {
    if (v.is_infinity() || v.value() > n)
      throw std::domain_error("elementary divisor exponent exceeds depth n");
    a.push_back(v.value());
  }
  return QuotientShape(n, std::move(a));
}

IntegerMatrix lattice_column_basis(long rows, const std::vector<std::vector<mpz_class>>& cols) {
  std::vector<std::vector<mpz_class>> w = cols;
  for (const auto& c : w)
    if (static_cast<long>(c.size()) != rows) throw std::invalid_argument("generator column of wrong length");
  IntegerMatrix basis(rows);
  long placed = 0;
  for (long r = 0; r < rows; ++r) {
    // Column-eliminate row r across the not-yet-placed columns via gcd steps.
    size_t piv = SIZE_MAX;
    for (size_t j = static_cast<size_t>(placed); j < w.size(); ++j) {
      if (w[j][static_cast<size_t>(r)] == 0) continue;
      if (piv == SIZE_MAX) {
        piv = j;
        continue;
      }
      mpz_class g, x, y;
      mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), w[piv][static_cast<size_t>(r)].get_mpz_t(),
                 w[j][static_cast<size_t>(r)].get_mpz_t());
      mpz_class u = w[piv][static_cast<size_t>(r)] / g, v = w[j][static_cast<size_t>(r)] / g;
      for (long i = r; i < rows; ++i) {
        mpz_class np = x * w[piv][static_cast<size_t>(i)] + y * w[j][static_cast<size_t>(i)];
        mpz_class nj = u * w[j][static_cast<size_t>(i)] - v * w[piv][static_cast<size_t>(i)];
        w[piv][static_cast<size_t>(i)] = np;
        w[j][static_cast<size_t>(i)] = nj;
      }
    }
    if (piv == SIZE_MAX) throw std::domain_error("columns do not span a finite-index lattice");
    std::swap(w[static_cast<size_t>(placed)], w[piv]);
    if (w[static_cast<size_t>(placed)][static_cast<size_t>(r)] < 0)
      for (long i = r; i < rows; ++i) w[static_cast<size_t>(placed)][static_cast<size_t>(i)] *= -1;
    for (long i = 0; i < rows; ++i) basis.at(i, placed) = w[static_cast<size_t>(placed)][static_cast<size_t>(i)];
    ++placed;
  }
  return basis;
}

IntegerMatrix solve_lower_triangular(const IntegerMatrix& B, const IntegerMatrix& D) {
  const long t = B.dim();
  if (D.dim() != t) throw std::invalid_argument("dimension mismatch");
  IntegerMatrix x(t);
  mpz_class acc, q, r;
  for (long col = 0; col < t; ++col) {
    for (long i = 0; i < t; ++i) {
      acc = D.at(i, col);
      for (long j = 0; j < i; ++j) acc -= B.at(i, j) * x.at(j, col);
      mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), acc.get_mpz_t(), B.at(i, i).get_mpz_t());
      if (r != 0) throw std::domain_error("right-hand side not in the lattice");
      x.at(i, col) = q;
    }
  }
  return x;
}

void write_matrix(std::ostream& os, const IntegerMatrix& m) {
  os << "t " << m.dim() << "\n" << "entries\n";
  for (long i = 0; i < m.dim(); ++i) {
    for (long j = 0; j < m.dim(); ++j) {
      if (j) os << ' ';
      os << m.at(i, j).get_str();
    }
    os << '\n';
  }
}

IntegerMatrix read_matrix(std::istream& is) {
  std::string key;
  long t = 0;
  if (!(is >> key >> t) || key != "t" || t < 1) throw std::runtime_error("malformed matrix file: missing dimension");
  if (!(is >> key) || key != "entries") throw std::runtime_error("malformed matrix file: missing entries");
  IntegerMatrix m(t);
  std::string tok;
  for (long i = 0; i < t; ++i)
    for (long j = 0; j < t; ++j) {
      if (!(is >> tok)) throw std::runtime_error("malformed matrix file: truncated entries");
      if (m.at(i, j).set_str(tok, 10) != 0) throw std::runtime_error("malformed matrix file: bad integer " + tok);
    }
  return m;
}

std::string matrix_to_string(const IntegerMatrix& m) {
  std::ostringstream os;
  write_matrix(os, m);
  return os.str();
}

IntegerMatrix matrix_from_string(const std::string& s) {
  std::istringstream is(s);
  return read_matrix(is);
}

}  // namespace padicslopes
