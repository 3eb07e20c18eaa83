#ifndef HAUPTMODUL_BALL_HPP
#define HAUPTMODUL_BALL_HPP

#include <gmpxx.h>
#include <mpfr.h>
#include <string>
#include <utility>

#include "hauptmodul/errors.hpp"

namespace hm {

/* Real ball: midpoint at working precision, radius at a fixed small
 * precision always rounded upward.  Every operation returns a ball
 * containing the exact image of the operand balls. */
class RBall {
public:
  explicit RBall(mpfr_prec_t prec);
  RBall(const RBall &o);
  RBall(RBall &&o) noexcept;
  RBall &operator=(const RBall &o);
  RBall &operator=(RBall &&o) noexcept;
  ~RBall();

  static RBall exact(long v, mpfr_prec_t prec);
  static RBall exact(const mpz_class &v, mpfr_prec_t prec);
  static RBall exact(const mpq_class &v, mpfr_prec_t prec); // radius one ulp if rounded
  static RBall pi(mpfr_prec_t prec);

  mpfr_prec_t prec() const { return mpfr_get_prec(mid_); }
  mpfr_srcptr mid() const { return mid_; }
  mpfr_srcptr rad() const { return rad_; }

  double mid_d() const { return mpfr_get_d(mid_, MPFR_RNDN); }
  double rad_d() const { return mpfr_get_d(rad_, MPFR_RNDU); }
  std::string str(size_t digits = 20) const;

  /* Adds 2^(exp(mid) - prec) to the radius unless the last midpoint
   * operation was exact (ternary 0). */
  void bump_ulp(int ternary);

  friend RBall add(const RBall &a, const RBall &b);
  friend RBall sub(const RBall &a, const RBall &b);
  friend RBall mul(const RBall &a, const RBall &b);
  friend RBall div(const RBall &a, const RBall &b);
  friend RBall neg(const RBall &a);
  friend RBall sqrt_pos(const RBall &a);
  friend RBall exp_ball(const RBall &a);
  friend std::pair<RBall, RBall> sin_cos(const RBall &a);
  friend RBall mul_q(const RBall &a, const mpq_class &s);
  friend void add_error(RBall &a, mpfr_srcptr extra);

private:
  mpfr_t mid_;
  mpfr_t rad_;
};

RBall add(const RBall &a, const RBall &b);
RBall sub(const RBall &a, const RBall &b);
RBall mul(const RBall &a, const RBall &b);
/* Throws precision_exceeded when the divisor ball contains zero. */
RBall div(const RBall &a, const RBall &b);
RBall neg(const RBall &a);
/* Square root; the ball must be strictly positive. */
RBall sqrt_pos(const RBall &a);
/* Exponential; requires radius <= 1/4 (else precision_exceeded). */
RBall exp_ball(const RBall &a);
std::pair<RBall, RBall> sin_cos(const RBall &a);
/* Multiplication by an exact rational. */
RBall mul_q(const RBall &a, const mpq_class &s);
/* Inflates the radius by a nonnegative amount. */
void add_error(RBall &a, mpfr_srcptr extra);

/* Nearest integer to the midpoint plus the certified distance bound
 * |mid - n| + rad. */
struct Rounding {
  mpz_class value;
  double residual = 0;
};
Rounding round_to_integer(const RBall &x);

/* Complex ball with independently certified components. */
struct CBall {
  RBall re, im;

  explicit CBall(mpfr_prec_t prec) : re(prec), im(prec) {}
  CBall(RBall r, RBall i) : re(std::move(r)), im(std::move(i)) {}
  static CBall exact(long r, long i, mpfr_prec_t prec) {
    return {RBall::exact(r, prec), RBall::exact(i, prec)};
  }
};

CBall add(const CBall &a, const CBall &b);
CBall sub(const CBall &a, const CBall &b);
CBall mul(const CBall &a, const CBall &b);
CBall div(const CBall &a, const CBall &b);
CBall neg(const CBall &a);
CBall mul_q(const CBall &a, const mpq_class &s);
CBall mul_z(const CBall &a, const mpz_class &s);
/* Integer power by binary exponentiation, e >= 0. */
CBall pow_ui(const CBall &a, unsigned long e);

} // namespace hm

#endif
