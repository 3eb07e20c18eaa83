#ifndef HAUPTMODUL_IDENTITIES_HPP
#define HAUPTMODUL_IDENTITIES_HPP

#include <string>
#include <utility>
#include <vector>

#include "hauptmodul/qseries.hpp"
#include "hauptmodul/traces.hpp"

namespace hm {

/* Outcome of one verification run.  Mismatches are recorded, not thrown;
 * the first failing index keeps both values. */
struct VerificationReport {
  std::string label;
  int p = 0;
  long lo = 0, hi = 0; // inclusive checked range (coefficient indices)
  long checked = 0;
  long mismatch_count = 0;
  long first_index = 0;
  std::string first_lhs, first_rhs;
  std::vector<std::string> lines; // per-index records and failure notes
  double elapsed_s = 0;
  mpfr_prec_t max_bits = 0;  // largest working precision among trace sums
  double max_residual = 0;   // worst certified pre-rounding residual
  bool ok() const { return mismatch_count == 0; }
};

/* c_n^(p) assembled from trace values: 1/(2n) times
 *   -sum_{r = 0 mod p} t_2^(p*)(4n - r^2) + K_p sigma_1^(p)(n)   (p | n)
 *    sum_{r in Z}      t_2^(p*)(4n - r^2) + K_p sigma_1(n)       (else)
 * with K = 24, 36, 18 for p = 2, 3, 5 and r bounded by 4n - r^2 >= -4.
 * p = 1 takes the plain sum over all r with no sigma term.  A sum not
 * divisible by 2n is a hard error. */
mpz_class coefficient_via_traces(int p, long n, const PrecisionBudget &budget = {});

/* c_n^(p*) = c_n^(p) - p c_{pn}^(p), from the unstarred expansion. */
mpz_class star_coefficient(int p, long n);

/* Compares coefficient_via_traces with the eta-quotient expansion for
 * 1 <= n <= n_max; needed traces are prefetched across d in parallel. */
VerificationReport verify_theorem1(int p, long n_max, int threads = 1,
                                   const PrecisionBudget &budget = {});

/* H = q dj_p/dq - lambda_p E_2^(p) with lambda_p = (p-1) K_p / 48, so the
 * q^n coefficient is n c_n^(p) - (K_p/2) sigma_1^(p)(n). */
QSeries build_H(int p, long N);

/* F = (g_2^(p*) theta_0)|U_4 and G = (g_2^(p*) theta_0(p^2 tau))|U_4 on
 * [-1, N): the q^n coefficients are sum_r t_2^(p*)(4n - r^2) over all r
 * resp. over r = 0 mod p. */
std::pair<QSeries, QSeries> build_F_G(int p, long N, int threads = 1,
                                      const PrecisionBudget &budget = {});

/* Sector identities on [-1, N): 2 H~_0 = -G~_0 and 2 H~_k = F~_k for
 * k != 0, where ~_k keeps exponents = k mod p. */
VerificationReport verify_weight2_sectors(int p, long N, int threads = 1,
                                          const PrecisionBudget &budget = {});

/* j_p* = j_p - p (j_p | U_p) compared coefficientwise on [-1, N). */
VerificationReport verify_star_relation(int p, long N);

} // namespace hm

#endif
