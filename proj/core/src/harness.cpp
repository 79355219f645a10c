#include "padicslopes/harness.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

#include <json.hpp>

#include "padicslopes/rational.hpp"

namespace padicslopes {

namespace {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(gmp_randinit_mt) { state_.seed(static_cast<unsigned long>(seed)); }

  mpz_class below(const mpz_class& bound) {
    if (bound <= 1) return 0;
    return state_.get_z_range(bound);
  }

  long index(long bound) { return bound <= 1 ? 0 : static_cast<long>(below(bound).get_ui()); }

 private:
  gmp_randclass state_;
};

long resolve_entry_bound(const CampaignConfig& config) {
  long e = config.entry_bound == 0 ? config.shape.n + 2 : config.entry_bound;
  if (e < config.shape.n + 1) throw std::invalid_argument("entry bound must be at least n + 1");
  return e;
}

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

}  // namespace

IntegerMatrix gen_matrix(const QuotientShape& shape, const Prime& p, std::uint64_t seed, long entry_bound) {
  Rng rng(seed);
  const mpz_class bound = p.pow(entry_bound);
  IntegerMatrix u(shape.t);
  std::vector<mpz_class> col_scale(static_cast<size_t>(shape.t));
  for (long j = 0; j < shape.t; ++j) col_scale[static_cast<size_t>(j)] = p.pow(shape.b(j));
  for (long i = 0; i < shape.t; ++i)
    for (long j = 0; j < shape.t; ++j) u.at(i, j) = col_scale[static_cast<size_t>(j)] * rng.below(bound);
  return u;
}

IntegerMatrix random_multiplier_matrix(long t, const Prime& p, std::uint64_t seed, long entry_bound) {
  Rng rng(seed);
  const mpz_class bound = p.pow(entry_bound);
  IntegerMatrix r(t);
  for (long i = 0; i < t; ++i)
    for (long j = 0; j < t; ++j) r.at(i, j) = rng.below(bound);
  return r;
}

IntegerMatrix apply_perturbation(const IntegerMatrix& u, const QuotientShape& shape, const Prime& p,
                                 const IntegerMatrix& R, std::optional<long> t_prime) {
  const long t = shape.t;
  if (u.dim() != t || R.dim() != t) throw std::invalid_argument("matrix rank does not match the shape");
  if (t_prime) {
    if (*t_prime < 1 || *t_prime > t) throw std::invalid_argument("t_prime must lie in [1, t]");
    for (long i = *t_prime; i < t; ++i)
      if (shape.a[static_cast<size_t>(i)] != 0)
        throw std::invalid_argument("rank drop requires trailing a_i = 0 positions");
  }
  IntegerMatrix out(t);
  for (long j = 0; j < t; ++j)
    for (long k = 0; k < t; ++k) {
      long e = std::max(shape.a[static_cast<size_t>(j)], shape.b(k));
      out.at(j, k) = u.at(j, k) + p.pow(e) * R.at(j, k);
    }
  if (t_prime) {
    // Zeroing these entries is itself a perturbation of the allowed form:
    // dropped rows have a_j = 0 and dropped columns have b_k = n.
    for (long j = 0; j < t; ++j)
      for (long k = 0; k < t; ++k)
        if (j >= *t_prime || k >= *t_prime) out.at(j, k) = 0;
  }
  return out;
}

IntegerMatrix perturb_matrix(const IntegerMatrix& u, const QuotientShape& shape, const Prime& p,
                             std::uint64_t seed, long entry_bound, std::optional<long> t_prime) {
  return apply_perturbation(u, shape, p, random_multiplier_matrix(shape.t, p, seed, entry_bound), t_prime);
}

VerificationReport verify_divisibility(const IntegerMatrix& u, const QuotientShape& shape, const Prime& p) {
  auto start = Clock::now();
  VerificationReport rep;
  rep.kind = "divisibility";
  rep.shape = shape;
  rep.p = p.value();
  rep.trials_run = 1;
  CharPolyCoeffs cp = char_poly(u);
  for (long s = 1; s <= shape.t; ++s) {
    long need = shape.B_at(s);
    Valuation got = vp(cp.d[static_cast<size_t>(s)], p);
    if (!(got >= need)) {
      rep.failures.push_back({0, 0, "d_" + std::to_string(s),
                              got.is_infinity() ? "inf" : std::to_string(got.value()), std::to_string(need)});
    }
  }
  rep.elapsed_ms = ms_since(start);
  return rep;
}

VerificationReport verify_coeff_congruence(const IntegerMatrix& u, const IntegerMatrix& u_prime,
                                           const QuotientShape& shape, const Prime& p) {
  auto start = Clock::now();
  VerificationReport rep;
  rep.kind = "congruence";
  rep.shape = shape;
  rep.p = p.value();
  rep.trials_run = 1;
  CharPolyCoeffs cp = char_poly(u);
  CharPolyCoeffs cq = char_poly(u_prime);
  const long m = half_depth(shape.n);
  for (long s = 1; s <= shape.t; ++s) {
    long ts = m + shape.B_at(s - 1);
    mpz_class modulus = p.pow(ts);
    mpz_class diff = cp.d[static_cast<size_t>(s)] - cq.d[static_cast<size_t>(s)];
    if (diff % modulus != 0) {
      Valuation got = vp(diff, p);
      rep.failures.push_back({0, 0, "d_" + std::to_string(s),
                              got.is_infinity() ? "inf" : std::to_string(got.value()), std::to_string(ts)});
    }
  }
  rep.elapsed_ms = ms_since(start);
  return rep;
}

VerificationReport verify_slope_match(const IntegerMatrix& u, const IntegerMatrix& u_prime,
                                      const QuotientShape& shape, const Prime& p) {
  auto start = Clock::now();
  VerificationReport rep;
  rep.kind = "slopes";
  rep.shape = shape;
  rep.p = p.value();
  rep.trials_run = 1;
  const mpq_class c = critical_slope_c(shape);
  rep.critical_slope = rational_str(c);

  SlopeCount left = slope_multiplicities(newton_polygon(char_poly(u), p));
  SlopeCount right = slope_multiplicities(newton_polygon(char_poly(u_prime), p));

  SlopeTableEntry table;
  for (const auto& [slope, count] : left) table.left.emplace_back(rational_str(slope), count);
  for (const auto& [slope, count] : right) table.right.emplace_back(rational_str(slope), count);
  rep.slope_tables.push_back(std::move(table));

  SlopeCount all = left;
  for (const auto& [slope, count] : right) all.emplace(slope, 0);
  for (const auto& entry : all) {
    const mpq_class& slope = entry.first;
    long lc = left.count(slope) ? left.at(slope) : 0;
    long rc = right.count(slope) ? right.at(slope) : 0;
    if (slope < c) {
      ++rep.matched_segments;
      if (lc != rc)
        rep.failures.push_back({0, 0, rational_str(slope), std::to_string(lc), std::to_string(rc)});
    } else if (lc != rc) {
      ++rep.unconstrained_diffs;
    }
  }
  rep.elapsed_ms = ms_since(start);
  return rep;
}

std::vector<long> layer_sizes(const QuotientShape& shape) {
  std::vector<long> layers(static_cast<size_t>(shape.n), 0);
  for (long mu = 0; mu < shape.n; ++mu)
    for (long x : shape.a)
      if (x > mu) ++layers[static_cast<size_t>(mu)];
  return layers;
}

namespace {

QuotientShape shape_from_exponents(long n, std::vector<Valuation> exps) {
  std::vector<long> a;
  a.reserve(exps.size());
  for (const Valuation& v : exps) {
    if (v.is_infinity() || v.value() > n) throw std::logic_error("subquotient exponent exceeds depth");
    a.push_back(v.value());
  }
  std::sort(a.begin(), a.end(), std::greater<long>());
  return QuotientShape(n, std::move(a));
}

std::vector<std::vector<mpz_class>> with_relation_columns(const QuotientShape& group, const Prime& p,
                                                          std::vector<std::vector<mpz_class>> gens) {
  for (long i = 0; i < group.t; ++i) {
    std::vector<mpz_class> rel(static_cast<size_t>(group.t), mpz_class(0));
    rel[static_cast<size_t>(i)] = p.pow(group.a[static_cast<size_t>(i)]);
    gens.push_back(std::move(rel));
  }
  return gens;
}

}  // namespace

QuotientShape subgroup_shape(const QuotientShape& parent, const std::vector<std::vector<mpz_class>>& gens,
                             const Prime& p) {
  // The subgroup is L/K for L spanned by the generators together with the
  // relation lattice K = diag(p^(a_i)) Z^t.
  IntegerMatrix basis = lattice_column_basis(parent.t, with_relation_columns(parent, p, gens));
  std::vector<mpz_class> diag(static_cast<size_t>(parent.t));
  for (long i = 0; i < parent.t; ++i) diag[static_cast<size_t>(i)] = p.pow(parent.a[static_cast<size_t>(i)]);
  IntegerMatrix k_in_l = solve_lower_triangular(basis, IntegerMatrix::diagonal(diag));
  return shape_from_exponents(parent.n, snf_p_exponents(k_in_l, p));
}

QuotientShape quotient_by(const QuotientShape& group, const std::vector<std::vector<mpz_class>>& gens,
                          const Prime& p) {
  IntegerMatrix basis = lattice_column_basis(group.t, with_relation_columns(group, p, gens));
  return shape_from_exponents(group.n, snf_p_exponents(basis, p));
}

QuotientShape random_subquotient(const QuotientShape& shape, const Prime& p, std::uint64_t seed) {
  Rng rng(seed);
  auto random_gens = [&rng, &p](const QuotientShape& group) {
    long count = rng.index(group.t + 2);
    std::vector<std::vector<mpz_class>> gens;
    gens.reserve(static_cast<size_t>(count));
    for (long c = 0; c < count; ++c) {
      std::vector<mpz_class> col(static_cast<size_t>(group.t));
      for (long i = 0; i < group.t; ++i) col[static_cast<size_t>(i)] = rng.below(p.pow(group.a[static_cast<size_t>(i)]));
      gens.push_back(std::move(col));
    }
    return gens;
  };
  QuotientShape sub = subgroup_shape(shape, random_gens(shape), p);
  return quotient_by(sub, random_gens(sub), p);
}

bool verify_layer_monotonic(const QuotientShape& parent, const QuotientShape& sub) {
  std::vector<long> lp = layer_sizes(parent);
  std::vector<long> ls = layer_sizes(sub);
  for (size_t mu = 0; mu < std::max(lp.size(), ls.size()); ++mu) {
    long a = mu < lp.size() ? lp[mu] : 0;
    long b = mu < ls.size() ? ls[mu] : 0;
    if (b > a) return false;
  }
  return true;
}

namespace {

void merge_trial(VerificationReport& into, const VerificationReport& one, long trial, std::uint64_t trial_seed) {
  into.trials_run += 1;
  for (FailureRecord f : one.failures) {
    f.trial = trial;
    f.seed = trial_seed;
    into.failures.push_back(std::move(f));
  }
  for (SlopeTableEntry e : one.slope_tables) {
    e.trial = trial;
    into.slope_tables.push_back(std::move(e));
  }
  into.matched_segments += one.matched_segments;
  into.unconstrained_diffs += one.unconstrained_diffs;
  into.critical_slope = one.critical_slope;
}

VerificationReport make_campaign_report(const char* kind, const CampaignConfig& config) {
  VerificationReport rep;
  rep.kind = kind;
  rep.shape = config.shape;
  rep.p = config.p.value();
  rep.seed = config.seed;
  rep.trials = config.trials;
  rep.t_prime = config.t_prime;
  return rep;
}

}  // namespace

VerificationReport run_campaign(CampaignKind kind, const CampaignConfig& config) {
  auto start = Clock::now();
  if (kind == CampaignKind::congruence || kind == CampaignKind::slopes) {
    PairedReports pair = run_paired_campaign(config);
    return kind == CampaignKind::congruence ? std::move(pair.congruence) : std::move(pair.slopes);
  }
  if (kind == CampaignKind::layers) {
    VerificationReport rep = make_campaign_report("layers", config);
    for (long trial = 0; trial < config.trials; ++trial) {
      std::uint64_t s = mix_seed(config.seed, static_cast<std::uint64_t>(trial));
      QuotientShape sub = random_subquotient(config.shape, config.p, s);
      rep.trials_run += 1;
      if (!verify_layer_monotonic(config.shape, sub)) {
        std::string got;
        for (long x : layer_sizes(sub)) got += std::to_string(x) + " ";
        std::string want;
        for (long x : layer_sizes(config.shape)) want += std::to_string(x) + " ";
        rep.failures.push_back({trial, s, "layers", got, want});
      }
    }
    rep.elapsed_ms = ms_since(start);
    return rep;
  }
  // divisibility
  VerificationReport rep = make_campaign_report("divisibility", config);
  rep.entry_bound = resolve_entry_bound(config);
  for (long trial = 0; trial < config.trials; ++trial) {
    std::uint64_t s = mix_seed(config.seed, 2 * static_cast<std::uint64_t>(trial));
    IntegerMatrix u = gen_matrix(config.shape, config.p, s, rep.entry_bound);
    merge_trial(rep, verify_divisibility(u, config.shape, config.p), trial, s);
  }
  std::stable_sort(rep.failures.begin(), rep.failures.end(),
                   [](const FailureRecord& x, const FailureRecord& y) { return x.trial < y.trial; });
  rep.elapsed_ms = ms_since(start);
  return rep;
}

PairedReports run_paired_campaign(const CampaignConfig& config) {
  auto start = Clock::now();
  PairedReports out{make_campaign_report("congruence", config), make_campaign_report("slopes", config)};
  out.congruence.entry_bound = out.slopes.entry_bound = resolve_entry_bound(config);
  for (long trial = 0; trial < config.trials; ++trial) {
    std::uint64_t s_gen = mix_seed(config.seed, 2 * static_cast<std::uint64_t>(trial));
    std::uint64_t s_pert = mix_seed(config.seed, 2 * static_cast<std::uint64_t>(trial) + 1);
    IntegerMatrix u = gen_matrix(config.shape, config.p, s_gen, out.congruence.entry_bound);
    IntegerMatrix u_prime =
        perturb_matrix(u, config.shape, config.p, s_pert, out.congruence.entry_bound, config.t_prime);
    merge_trial(out.congruence, verify_coeff_congruence(u, u_prime, config.shape, config.p), trial, s_gen);
    merge_trial(out.slopes, verify_slope_match(u, u_prime, config.shape, config.p), trial, s_gen);
  }
  for (VerificationReport* rep : {&out.congruence, &out.slopes}) {
    std::stable_sort(rep->failures.begin(), rep->failures.end(),
                     [](const FailureRecord& x, const FailureRecord& y) { return x.trial < y.trial; });
    rep->elapsed_ms = ms_since(start);
  }
  return out;
}

std::string report_body_json(const VerificationReport& report) {
  using json = nlohmann::ordered_json;
  json body;
  json config;
  config["kind"] = report.kind;
  config["p"] = report.p.get_str();
  if (report.shape) {
    config["n"] = report.shape->n;
    config["t"] = report.shape->t;
    config["shape"] = report.shape->a;
  }
  config["seed"] = report.seed;
  config["trials"] = report.trials;
  config["entry_bound"] = report.entry_bound;
  if (report.t_prime)
    config["t_prime"] = *report.t_prime;
  else
    config["t_prime"] = nullptr;
  body["config"] = config;

  json totals;
  totals["trials_run"] = report.trials_run;
  totals["failures"] = report.failures.size();
  if (report.kind == "slopes") {
    totals["matched_segments"] = report.matched_segments;
    totals["unconstrained_diffs"] = report.unconstrained_diffs;
    body["critical_slope"] = report.critical_slope;
  }
  body["totals"] = totals;

  json failures = json::array();
  for (const auto& f : report.failures) {
    json rec;
    rec["trial"] = f.trial;
    rec["seed"] = f.seed;
    rec["where"] = f.where;
    rec["observed"] = f.observed;
    rec["required"] = f.required;
    failures.push_back(rec);
  }
  body["failures"] = failures;

  if (report.kind == "slopes") {
    json tables = json::array();
    for (const auto& e : report.slope_tables) {
      json rec;
      rec["trial"] = e.trial;
      rec["left"] = e.left;
      rec["right"] = e.right;
      tables.push_back(rec);
    }
    body["slope_tables"] = tables;
  }
  return body.dump(2) + "\n";
}

}  // namespace padicslopes
