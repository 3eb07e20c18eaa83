#ifndef HAUPTMODUL_QSERIES_HPP
#define HAUPTMODUL_QSERIES_HPP

#include <cstdint>
#include <gmpxx.h>
#include <utility>
#include <vector>

#include "hauptmodul/errors.hpp"

namespace hm {

/* Truncated Laurent series in q with exact rational coefficients.
 *
 * Coefficients are known exactly for exponents in [val, trunc); exponents
 * below val are known to be zero; exponents at or beyond trunc are unknown
 * and reading them throws.  Truncation bookkeeping is pessimistic: an
 * operation never extends the window beyond what its operands justify. */
class QSeries {
public:
  QSeries(long val, long trunc);

  long val() const { return val_; }
  long trunc() const { return trunc_; }

  /* Exact coefficient of q^n; zero below the valuation, error at or
   * beyond the truncation. */
  const mpq_class &coeff(long n) const;
  void set_coeff(long n, const mpq_class &v);

  bool is_integral() const;
  /* Tightens val upward past leading zeros (window unchanged). */
  QSeries normalized() const;

  QSeries operator+(const QSeries &g) const;
  QSeries operator-(const QSeries &g) const;
  QSeries operator*(const QSeries &g) const;
  QSeries operator*(const mpq_class &s) const;
  QSeries operator-() const;
  bool operator==(const QSeries &g) const; // equal on the joint window, which must be nonempty

  /* Restricts the known window to [val, new_trunc). */
  QSeries truncated(long new_trunc) const;

  friend QSeries U_t(const QSeries &f, long t);
  friend QSeries V_t(const QSeries &f, long t);
  friend QSeries sector_filter(const QSeries &f, long k, long M);
  friend QSeries q_derivative(const QSeries &f);

private:
  long val_;
  long trunc_;
  std::vector<mpq_class> c_; // c_[i] is the coefficient of q^(val_+i)
  static const mpq_class zero_;
};

QSeries mul(const QSeries &f, const QSeries &g);
QSeries add(const QSeries &f, const QSeries &g);

/* Coefficient extraction (sum a_n q^n) |U_t = sum a_{tn} q^n. */
QSeries U_t(const QSeries &f, long t);
/* Substitution q -> q^t. */
QSeries V_t(const QSeries &f, long t);
/* Keeps coefficients with exponent congruent to k mod M, zeroes the rest. */
QSeries sector_filter(const QSeries &f, long k, long M);
/* q d/dq: the coefficient of q^n becomes n a_n. */
QSeries q_derivative(const QSeries &f);

/* Euler product prod_{n>=1} (1 - q^n) on [0, N) via the pentagonal-number
 * expansion (the q^{1/24} prefactor of eta is tracked by the caller). */
QSeries eta_series(long N);

/* Pentagonal expansion of prod (1 - q^{t n}) as a sparse exponent/sign
 * list, exponents < N.  Signs are +1/-1. */
std::vector<std::pair<long, int>> eta_sparse(long t, long N);

/* f times the sparse polynomial sum_i sign_i q^{e_i} (e_0 = 0 with sign +1
 * required for div).  Both run in O(window * terms). */
QSeries mul_sparse(const QSeries &f, const std::vector<std::pair<long, int>> &g);
QSeries div_sparse(const QSeries &f, const std::vector<std::pair<long, int>> &g);

/* theta_0 = sum_{n in Z} q^{n^2} on [0, N). */
QSeries theta0(long N);

/* E_2 = 1 - 24 sum sigma_1(n) q^n on [0, N). */
QSeries eisenstein_E2(long N);
/* E_2^(p) = (p E_2(p tau) - E_2(tau)) / (p - 1) = 1 + (24/(p-1)) sum sigma_1^(p)(n) q^n. */
QSeries eisenstein_E2_p(int p, long N);

int64_t sigma1(int64_t n);
/* Sum of divisors of n not divisible by p. */
int64_t sigma1_p(int64_t n, int p);

/* One multiplicative term prod_t eta(t tau)^{e_t} with a scalar factor.
 * The q-power offset sum t*e/24 must be an integer. */
struct EtaTerm {
  std::vector<std::pair<long, long>> factors; // (scale t, exponent e)
  mpq_class scalar = 1;
};

/* Sum of eta-quotient terms plus an additive constant. */
struct EtaQuotientSpec {
  std::vector<EtaTerm> terms;
  mpq_class constant = 0;
};

/* Exact expansion of the spec on the window [v, N) where v is the smallest
 * term offset.  Throws domain_error if any term offset is non-integral. */
QSeries eta_quotient(const EtaQuotientSpec &spec, long N);

} // namespace hm

#endif
