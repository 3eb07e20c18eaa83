#ifndef HAUPTMODUL_HAUPTMODUL_HPP
#define HAUPTMODUL_HAUPTMODUL_HPP

#include <vector>

#include "hauptmodul/ball.hpp"
#include "hauptmodul/forms.hpp"
#include "hauptmodul/qseries.hpp"

namespace hm {

/* Selects one of the seven Hauptmoduln: level p in {1, 2, 3, 5} and the
 * group Gamma0(p) (unstarred) or Gamma0*(p) (starred).  Level 1 is always
 * starred: the normalized j - 744. */
struct Level {
  int p = 1;
  bool starred = true;

  void validate() const;
  /* Eta-quotient exponent 24/(p-1) for p > 1. */
  int eta_exponent() const { return 24 / (p - 1); }
  std::string str() const;
};

/* Exact expansion q^-1 + sum_{n>=1} c_n q^n on [-1, N); the constant term
 * vanishes by normalization. */
QSeries hauptmodul_series(const Level &level, long N);

/* Monic degree-m polynomial in the starred Hauptmodul whose expansion is
 * q^-m + O(q).  coeff[i] multiplies the i-th power. */
struct FaberPoly {
  int m = 1;
  std::vector<mpz_class> coeff;
  QSeries expansion{0, 1}; // cached, q^-m + O(q) on [-m, 4)
};

FaberPoly faber(const Level &level, int m);

/* phi_m evaluated by Horner's rule. */
CBall evaluate_faber(const FaberPoly &poly, const CBall &x);

/* Initial working precision and hard ceiling for certified CM sums. */
struct PrecisionBudget {
  mpfr_prec_t working_bits = 128;
  mpfr_prec_t ceiling_bits = 1 << 16;
};

/* Working precision that comfortably resolves phi_m(j_p*(alpha_Q)) at
 * discriminant -d, whose magnitude reaches exp(pi m sqrt(d) / a_min). */
mpfr_prec_t suggest_precision(int p, int m, int64_t d);

/* eta(t tau) at tau = (-b + i sqrt(d)) / (2a), as a certified ball; the
 * pentagonal series is truncated with a rigorous geometric tail bound. */
CBall eval_eta(const CMPoint &tau, long t, mpfr_prec_t bits);

/* j_p*(alpha_Q) as a certified ball (p = 1 gives j - 744). */
CBall eval_hauptmodul_star(const Level &level, const QuadForm &q, mpfr_prec_t bits);

} // namespace hm

#endif
