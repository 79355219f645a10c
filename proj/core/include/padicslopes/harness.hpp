#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "padicslopes/bounds.hpp"
#include "padicslopes/matrix.hpp"
#include "padicslopes/newton.hpp"

namespace padicslopes {

/// Stream split for per-trial seeds (splitmix64). Uniform big integers are
/// drawn from GMP's Mersenne Twister seeded with the derived value, so a
/// campaign is fully determined by its top-level seed.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t k) {
  std::uint64_t z = seed + (k + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Matrix with entry (i, j) = p^(b_j) * r, r uniform in [0, p^entry_bound):
/// column j is divisible by p^(b_j) by construction. Deterministic in seed.
IntegerMatrix gen_matrix(const QuotientShape& shape, const Prime& p, std::uint64_t seed, long entry_bound);

/// Uniform t x t matrix with entries in [0, p^entry_bound).
IntegerMatrix random_multiplier_matrix(long t, const Prime& p, std::uint64_t seed, long entry_bound);

/// u' with u'_{j,k} = u_{j,k} + p^max(a_j, b_k) * R_{j,k}, preserving both the
/// row congruence mod p^(a_j) and the column divisibility by p^(b_k). When
/// t_prime < t the rows and columns beyond t_prime are zeroed (legal only for
/// shapes whose dropped positions have a_i = 0; enforced).
IntegerMatrix apply_perturbation(const IntegerMatrix& u, const QuotientShape& shape, const Prime& p,
                                 const IntegerMatrix& R, std::optional<long> t_prime);

IntegerMatrix perturb_matrix(const IntegerMatrix& u, const QuotientShape& shape, const Prime& p,
                             std::uint64_t seed, long entry_bound, std::optional<long> t_prime);

struct FailureRecord {
  long trial = 0;
  std::uint64_t seed = 0;
  std::string where;     // coefficient index, slope, or layer
  std::string observed;
  std::string required;
};

struct SlopeTableEntry {
  long trial = 0;
  std::vector<std::pair<std::string, long>> left;   // slope "num/den" -> multiplicity
  std::vector<std::pair<std::string, long>> right;
};

/// Outcome of one verification or one campaign. `elapsed_ms` is display-only
/// and excluded from the serialized body so reruns are byte-identical.
struct VerificationReport {
  std::string kind;
  // config echo
  std::optional<QuotientShape> shape;
  mpz_class p = 0;
  std::uint64_t seed = 0;
  long trials = 0;
  long entry_bound = 0;
  std::optional<long> t_prime;

  long trials_run = 0;
  std::vector<FailureRecord> failures;
  std::vector<SlopeTableEntry> slope_tables;  // slopes kind only
  std::string critical_slope;                 // slopes kind only, "num/den"
  long matched_segments = 0;       // slope comparisons below c
  long unconstrained_diffs = 0;    // multiplicity differences at slopes >= c
  double elapsed_ms = 0.0;

  bool passed() const { return failures.empty(); }
};

/// vp(d_s) >= B(s) for every 1 <= s <= t.
VerificationReport verify_divisibility(const IntegerMatrix& u, const QuotientShape& shape, const Prime& p);

/// d_s = d'_s mod p^(T(s)) for every s, with T(s) = M + B(s-1).
VerificationReport verify_coeff_congruence(const IntegerMatrix& u, const IntegerMatrix& u_prime,
                                           const QuotientShape& shape, const Prime& p);

/// For every rational slope alpha < c present in either polygon, the
/// multiplicities agree. Differences at slopes >= c are tallied separately.
VerificationReport verify_slope_match(const IntegerMatrix& u, const IntegerMatrix& u_prime,
                                      const QuotientShape& shape, const Prime& p);

/// Layer mu holds #{i : a_i > mu} for mu = 0..n-1.
std::vector<long> layer_sizes(const QuotientShape& shape);

/// Shape of the subgroup of (+)O/p^(a_i) generated by the given columns.
QuotientShape subgroup_shape(const QuotientShape& parent, const std::vector<std::vector<mpz_class>>& gens,
                             const Prime& p);

/// Shape of the quotient of (+)O/p^(a_i) by the subgroup the columns generate.
QuotientShape quotient_by(const QuotientShape& group, const std::vector<std::vector<mpz_class>>& gens,
                          const Prime& p);

/// Random subgroup followed by a random quotient of it. Deterministic in seed.
QuotientShape random_subquotient(const QuotientShape& shape, const Prime& p, std::uint64_t seed);

bool verify_layer_monotonic(const QuotientShape& parent, const QuotientShape& sub);

enum class CampaignKind { divisibility, congruence, slopes, layers };

struct CampaignConfig {
  QuotientShape shape;
  Prime p;
  std::uint64_t seed = 0;
  long trials = 100;
  long entry_bound = 0;  // 0: default n + 2; must be >= n + 1
  std::optional<long> t_prime;
};

VerificationReport run_campaign(CampaignKind kind, const CampaignConfig& config);

/// Shares the generated pairs between the congruence and slope checks.
struct PairedReports {
  VerificationReport congruence;
  VerificationReport slopes;
};
PairedReports run_paired_campaign(const CampaignConfig& config);

/// Canonical JSON body: config echo, totals, failures (sorted by trial), and
/// slope tables. Excludes elapsed time.
std::string report_body_json(const VerificationReport& report);

}  // namespace padicslopes
