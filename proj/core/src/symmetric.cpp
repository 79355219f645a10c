#include "padicslopes/symmetric.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace padicslopes {

bool in_action_semigroup(const Mat2& g, const Prime& p) {
  return g.c % p.value() == 0 && (g.d - 1) % p.value() == 0;
}

HomogPoly poly_mul(const HomogPoly& f, const HomogPoly& g) {
  HomogPoly r = HomogPoly::zero(f.degree + g.degree);
  for (size_t i = 0; i < f.c.size(); ++i) {
    if (f.c[i] == 0) continue;
    for (size_t j = 0; j < g.c.size(); ++j)
      if (g.c[j] != 0) r.c[i + j] += f.c[i] * g.c[j];
  }
  return r;
}

HomogPoly poly_pow(const HomogPoly& f, const mpz_class& e) {
  if (e < 0) throw std::invalid_argument("negative polynomial power");
  if (!e.fits_slong_p()) throw std::invalid_argument("polynomial power too large");
  long k = e.get_si();
  HomogPoly result{0, {mpz_class(1)}};
  HomogPoly base = f;
  while (k > 0) {
    if (k & 1) result = poly_mul(result, base);
    k >>= 1;
    if (k) base = poly_mul(base, base);
  }
  return result;
}

HomogPoly poly_sub(const HomogPoly& f, const HomogPoly& g) {
  if (f.degree != g.degree) throw std::invalid_argument("degree mismatch in subtraction");
  HomogPoly r = f;
  for (size_t i = 0; i < r.c.size(); ++i) r.c[i] -= g.c[i];
  return r;
}

namespace {

// Column i holds the coefficients of (a x + c y)^i (b x + d y)^(k-i), the
// untwisted image of the monomial x^i y^(k-i).
std::vector<std::vector<mpz_class>> substitution_matrix(const Mat2& g, long k) {
  size_t dim = static_cast<size_t>(k) + 1;
  // powers of the two linear forms, built incrementally
  std::vector<std::vector<mpz_class>> pow_ac(dim), pow_bd(dim);
  pow_ac[0] = {mpz_class(1)};
  pow_bd[0] = {mpz_class(1)};
  for (size_t i = 1; i < dim; ++i) {
    pow_ac[i].assign(i + 1, mpz_class(0));
    pow_bd[i].assign(i + 1, mpz_class(0));
    for (size_t s = 0; s < i; ++s) {
      pow_ac[i][s + 1] += g.a * pow_ac[i - 1][s];
      pow_ac[i][s] += g.c * pow_ac[i - 1][s];
      pow_bd[i][s + 1] += g.b * pow_bd[i - 1][s];
      pow_bd[i][s] += g.d * pow_bd[i - 1][s];
    }
  }
  std::vector<std::vector<mpz_class>> cols(dim, std::vector<mpz_class>(dim, mpz_class(0)));
  for (size_t i = 0; i < dim; ++i) {
    const auto& u = pow_ac[i];
    const auto& v = pow_bd[dim - 1 - i];
    for (size_t s = 0; s < u.size(); ++s) {
      if (u[s] == 0) continue;
      for (size_t r = 0; r < v.size(); ++r)
        if (v[r] != 0) cols[i][s + r] += u[s] * v[r];
    }
  }
  return cols;
}

mpz_class det_power(const Mat2& g, long twist) {
  mpz_class dp;
  mpz_class dt = g.det();
  mpz_pow_ui(dp.get_mpz_t(), dt.get_mpz_t(), static_cast<unsigned long>(twist));
  return dp;
}

}  // namespace

HomogPoly act(const Mat2& g, const HomogPoly& f, long twist) {
  auto cols = substitution_matrix(g, f.degree);
  HomogPoly r = HomogPoly::zero(f.degree);
  for (size_t i = 0; i < f.c.size(); ++i) {
    if (f.c[i] == 0) continue;
    for (size_t s = 0; s < r.c.size(); ++s) r.c[s] += f.c[i] * cols[i][s];
  }
  if (twist > 0) {
    mpz_class dp = det_power(g, twist);
    for (auto& x : r.c) x *= dp;
  }
  return r;
}

TensorPolynomial TensorPolynomial::zero(std::vector<long> degrees, long det_twist) {
  TensorPolynomial F;
  F.degrees = std::move(degrees);
  F.det_twist = det_twist;
  size_t total = 1;
  for (long k : F.degrees) {
    if (k < 0) throw std::invalid_argument("negative degree");
    total *= static_cast<size_t>(k) + 1;
  }
  F.coeffs.assign(total, mpz_class(0));
  return F;
}

size_t TensorPolynomial::offset(const std::vector<long>& idx) const {
  size_t off = 0;
  for (size_t j = 0; j < degrees.size(); ++j) {
    if (idx[j] < 0 || idx[j] > degrees[j]) throw std::out_of_range("multi-index out of range");
    off = off * (static_cast<size_t>(degrees[j]) + 1) + static_cast<size_t>(idx[j]);
  }
  return off;
}

bool TensorPolynomial::next_index(std::vector<long>& idx) const {
  for (size_t j = degrees.size(); j-- > 0;) {
    if (idx[j] < degrees[j]) {
      ++idx[j];
      std::fill(idx.begin() + static_cast<long>(j) + 1, idx.end(), 0);
      return true;
    }
  }
  return false;
}

TensorPolynomial tensor_sub(const TensorPolynomial& f, const TensorPolynomial& g) {
  if (f.degrees != g.degrees || f.det_twist != g.det_twist)
    throw std::invalid_argument("tensor shape mismatch in subtraction");
  TensorPolynomial r = f;
  for (size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] -= g.coeffs[i];
  return r;
}

TensorPolynomial tensor_act(const Mat2& g, const TensorPolynomial& F) {
  TensorPolynomial cur = F;
  for (size_t axis = 0; axis < F.degrees.size(); ++axis) {
    auto cols = substitution_matrix(g, F.degrees[axis]);
    size_t dim = static_cast<size_t>(F.degrees[axis]) + 1;
    size_t inner = 1;
    for (size_t j = axis + 1; j < F.degrees.size(); ++j) inner *= static_cast<size_t>(F.degrees[j]) + 1;
    size_t outer = cur.coeffs.size() / (dim * inner);
    TensorPolynomial out = TensorPolynomial::zero(F.degrees, F.det_twist);
    for (size_t o = 0; o < outer; ++o)
      for (size_t i = 0; i < dim; ++i) {
        size_t src_base = (o * dim + i) * inner;
        for (size_t r = 0; r < dim; ++r) {
          if (cols[i][r] == 0) continue;
          size_t dst_base = (o * dim + r) * inner;
          for (size_t in = 0; in < inner; ++in)
            if (cur.coeffs[src_base + in] != 0) out.coeffs[dst_base + in] += cols[i][r] * cur.coeffs[src_base + in];
        }
      }
    cur = std::move(out);
  }
  if (F.det_twist > 0) {
    mpz_class dp = det_power(g, F.det_twist);
    for (auto& x : cur.coeffs) x *= dp;
  }
  return cur;
}

namespace {
long required_exponent(long n, long i) { return std::max(n - i, 0L); }
}  // namespace

IntegerMatrix w_basis(long k, long n, const Prime& p) {
  if (k < 0 || n < 0) throw std::invalid_argument("w_basis needs k, n >= 0");
  IntegerMatrix m(k + 1);
  for (long i = 0; i <= k; ++i) m.at(i, i) = p.pow(required_exponent(n, i));
  return m;
}

bool w_membership(const HomogPoly& f, long n, const Prime& p) {
  for (size_t i = 0; i < f.c.size(); ++i)
    if (!(vp(f.c[i], p) >= required_exponent(n, static_cast<long>(i)))) return false;
  return true;
}

bool tensor_w_membership(const TensorPolynomial& F, long n, const Prime& p) {
  std::vector<long> idx(F.degrees.size(), 0);
  do {
    long need = n;
    for (size_t j = 0; j < idx.size(); ++j) need = std::min(need, required_exponent(n, idx[j]));
    if (!(vp(F.coeffs[F.offset(idx)], p) >= need)) return false;
  } while (F.next_index(idx));
  return true;
}

HomogPoly phi_map(const HomogPoly& f, long n, const Prime& p) {
  if (n < 1) throw std::invalid_argument("phi_map needs n >= 1");
  mpz_class q = p.pow(n - 1);
  if (!q.fits_slong_p()) throw std::invalid_argument("p^(n-1) too large");
  HomogPoly r = HomogPoly::zero(f.degree + q.get_si());
  for (size_t i = 0; i < f.c.size(); ++i) r.c[i] = f.c[i];
  return r;
}

TensorPolynomial phi_map(const TensorPolynomial& F, long n, long factor, const Prime& p) {
  if (factor < 0 || factor >= F.arity()) throw std::invalid_argument("factor index out of range");
  mpz_class q = p.pow(n - 1);
  if (n < 1 || !q.fits_slong_p()) throw std::invalid_argument("phi_map needs n >= 1 with small p^(n-1)");
  std::vector<long> degrees = F.degrees;
  degrees[static_cast<size_t>(factor)] += q.get_si();
  TensorPolynomial r = TensorPolynomial::zero(std::move(degrees), F.det_twist);
  std::vector<long> idx(F.degrees.size(), 0);
  do {
    r.coeffs[r.offset(idx)] = F.coeffs[F.offset(idx)];
  } while (F.next_index(idx));
  return r;
}

TensorPolynomial phi_equivariance_defect(const TensorPolynomial& F, const Mat2& g, long n, long factor,
                                         const Prime& p) {
  if (!in_action_semigroup(g, p))
    throw std::invalid_argument("matrix outside the action semigroup (need c = 0, d = 1 mod p)");
  return tensor_sub(phi_map(tensor_act(g, F), n, factor, p), tensor_act(g, phi_map(F, n, factor, p)));
}

bool frobenius_power_identity(const mpz_class& b, const mpz_class& d, long n, const Prime& p) {
  mpz_class q = p.pow(n - 1);
  HomogPoly lin = HomogPoly::zero(1);
  lin.c[0] = d;  // y coefficient
  lin.c[1] = b;  // x coefficient
  HomogPoly diff = poly_pow(lin, q);
  diff.c[0] -= 1;  // subtract y^(p^(n-1))
  for (auto& coef : diff.c) coef = -coef;
  return w_membership(diff, n, p);
}

CheckStatus power_congruence_check(const HomogPoly& f, const HomogPoly& f_prime, long n, long s, const Prime& p) {
  if (f.degree != f_prime.degree) return CheckStatus::precondition_violated;
  if (!w_membership(poly_sub(f, f_prime), n, p)) return CheckStatus::precondition_violated;
  mpz_class q = p.pow(s);
  HomogPoly diff = poly_sub(poly_pow(f, q), poly_pow(f_prime, q));
  return w_membership(diff, n, p) ? CheckStatus::holds : CheckStatus::fails;
}

CheckStatus hecke_divisibility_check(const Mat2& g, const TensorPolynomial& F, long n, const Prime& p) {
  if (g.a % p.value() != 0 || g.c % p.value() != 0) return CheckStatus::precondition_violated;
  if (!tensor_w_membership(F, n, p)) return CheckStatus::precondition_violated;
  TensorPolynomial image = tensor_act(g, F);
  Valuation required(n);
  if (F.det_twist > 0) {
    Valuation dv = vp(g.det(), p);
    if (dv.is_infinity())
      required = Valuation::infinity();  // image must vanish identically
    else
      required = Valuation(n + F.det_twist * dv.value());
  }
  for (const auto& coef : image.coeffs) {
    if (!(vp(coef, p) >= required)) return CheckStatus::fails;
  }
  return CheckStatus::holds;
}

std::string tensor_to_string(const TensorPolynomial& F) {
  std::ostringstream os;
  os << "degrees";
  for (long k : F.degrees) os << ' ' << k;
  os << "\ndet_twist " << F.det_twist << "\ncoeffs\n";
  size_t last = F.degrees.empty() ? 1 : static_cast<size_t>(F.degrees.back()) + 1;
  for (size_t i = 0; i < F.coeffs.size(); ++i) {
    os << F.coeffs[i].get_str();
    os << ((i % last == last - 1) ? '\n' : ' ');
  }
  return os.str();
}

TensorPolynomial tensor_from_string(const std::string& s) {
  std::istringstream is(s);
  std::string line, key;
  if (!std::getline(is, line)) throw std::runtime_error("malformed polynomial file");
  std::istringstream degline(line);
  if (!(degline >> key) || key != "degrees") throw std::runtime_error("malformed polynomial file: missing degrees");
  std::vector<long> degrees;
  long k;
  while (degline >> k) degrees.push_back(k);
  if (degrees.empty()) throw std::runtime_error("malformed polynomial file: empty degrees");
  long twist;
  if (!(is >> key >> twist) || key != "det_twist")
    throw std::runtime_error("malformed polynomial file: missing det_twist");
  if (!(is >> key) || key != "coeffs") throw std::runtime_error("malformed polynomial file: missing coeffs");
  TensorPolynomial F = TensorPolynomial::zero(std::move(degrees), twist);
  std::string tok;
  for (size_t i = 0; i < F.coeffs.size(); ++i) {
    if (!(is >> tok)) throw std::runtime_error("malformed polynomial file: truncated coeffs");
    if (F.coeffs[i].set_str(tok, 10) != 0) throw std::runtime_error("malformed polynomial file: bad integer " + tok);
  }
  return F;
}

}  // namespace padicslopes
