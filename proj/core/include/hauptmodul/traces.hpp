#ifndef HAUPTMODUL_TRACES_HPP
#define HAUPTMODUL_TRACES_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "hauptmodul/hauptmodul.hpp"
#include "hauptmodul/qseries.hpp"

namespace hm {

enum class TraceProvenance { special_value, cm_sum, zero_nonsquare };

/* One modular trace t_m^(p)(d) or t_m^(p*)(d), exactly. */
struct TraceValue {
  int p = 1;
  bool starred = true;
  int m = 1;
  int64_t d = 0;
  mpz_class value;
  TraceProvenance provenance = TraceProvenance::zero_nonsquare;
  double residual = 0;       // certified pre-rounding distance, cm_sum only
  mpfr_prec_t bits_used = 0; // working precision that passed the gate
};

/* Closed values for d <= 0: sigma_1(m) + p sigma_1(m/p) at d = 0 and -k at
 * d = -k^2 for k | m, else 0 (p = 1 reads the formula with both terms
 * sigma_1(m)).  Unstarred values double exactly when -d is congruent to 0
 * or p^2 mod 4p. */
mpz_class special_value(int p, bool starred, int m, int64_t d);

/* Trace for d > 0: a certified sum of phi_m(j_p*(alpha_Q)) / |stabilizer|
 * over the class list of the group, rounded to the nearest integer once
 * the certified residual passes 0.1; precision doubles up to the budget
 * ceiling.  Unstarred sums are computed in every valid sector beta and
 * must agree.  Returns 0 (zero_nonsquare) when -d is not a square mod 4p. */
TraceValue trace(int p, bool starred, int m, int64_t d, const PrecisionBudget &budget = {});

/* t at any d: special values at d <= 0, trace above d > 0. */
mpz_class trace_any(int p, bool starred, int m, int64_t d, const PrecisionBudget &budget = {});

/* The section-5 style table: one row per valid d in [-4, d_max], columns
 * t_m^(p*) then t_m^(p) for m = 1..m_max. */
struct TraceTable {
  int p = 2;
  int m_max = 2;
  int64_t d_max = 50;
  struct Row {
    int64_t d;
    std::vector<mpz_class> starred, unstarred; // index m-1
  };
  std::vector<Row> rows;

  /* Header "d,t1_star,t2_star,t1,t2" (m_max columns of each), decimal
   * integers, one row per line. */
  std::string csv() const;
};

TraceTable trace_table(int p, int m_max = 2, int64_t d_max = 50, int threads = 1,
                       const PrecisionBudget &budget = {});

/* Generating series q^-m-principal part + constant + sum of traces:
 * -sum_{k|m} k q^{-k^2} + (sigma_1(m) + p sigma_1(m/p)) + sum_{d>0} t_m^(p*)(d) q^d
 * on the window [-m^2, N). */
QSeries g_series(int p, int m, long N, int threads = 1, const PrecisionBudget &budget = {});

} // namespace hm

#endif
