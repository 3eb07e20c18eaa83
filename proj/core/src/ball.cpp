#include "hauptmodul/ball.hpp"

#include <vector>

namespace hm {

namespace {

constexpr mpfr_prec_t kRadPrec = 32;

/* Scratch at radius precision; RNDU everywhere radii are involved. */
struct Tmp {
  mpfr_t x;
  explicit Tmp(mpfr_prec_t prec = kRadPrec) { mpfr_init2(x, prec); }
  ~Tmp() { mpfr_clear(x); }
};

} // namespace

RBall::RBall(mpfr_prec_t prec) {
  mpfr_init2(mid_, prec);
  mpfr_set_zero(mid_, 1);
  mpfr_init2(rad_, kRadPrec);
  mpfr_set_zero(rad_, 1);
}

RBall::RBall(const RBall &o) {
  mpfr_init2(mid_, mpfr_get_prec(o.mid_));
  mpfr_set(mid_, o.mid_, MPFR_RNDN);
  mpfr_init2(rad_, kRadPrec);
  mpfr_set(rad_, o.rad_, MPFR_RNDU);
}

RBall::RBall(RBall &&o) noexcept {
  mpfr_init2(mid_, mpfr_get_prec(o.mid_));
  mpfr_swap(mid_, o.mid_);
  mpfr_init2(rad_, kRadPrec);
  mpfr_swap(rad_, o.rad_);
}

RBall &RBall::operator=(const RBall &o) {
  if (this != &o) {
    mpfr_set_prec(mid_, mpfr_get_prec(o.mid_));
    mpfr_set(mid_, o.mid_, MPFR_RNDN);
    mpfr_set(rad_, o.rad_, MPFR_RNDU);
  }
  return *this;
}

RBall &RBall::operator=(RBall &&o) noexcept {
  mpfr_swap(mid_, o.mid_);
  mpfr_swap(rad_, o.rad_);
  return *this;
}

RBall::~RBall() {
  mpfr_clear(mid_);
  mpfr_clear(rad_);
}

void RBall::bump_ulp(int ternary) {
  if (ternary == 0 || mpfr_zero_p(mid_))
    return;
  Tmp u;
  mpfr_set_ui_2exp(u.x, 1, mpfr_get_exp(mid_) - prec(), MPFR_RNDU);
  mpfr_add(rad_, rad_, u.x, MPFR_RNDU);
}

RBall RBall::exact(long v, mpfr_prec_t prec) {
  RBall r(prec);
  int t = mpfr_set_si(r.mid_, v, MPFR_RNDN);
  r.bump_ulp(t);
  return r;
}

RBall RBall::exact(const mpz_class &v, mpfr_prec_t prec) {
  RBall r(prec);
  int t = mpfr_set_z(r.mid_, v.get_mpz_t(), MPFR_RNDN);
  r.bump_ulp(t);
  return r;
}

RBall RBall::exact(const mpq_class &v, mpfr_prec_t prec) {
  RBall r(prec);
  int t = mpfr_set_q(r.mid_, v.get_mpq_t(), MPFR_RNDN);
  r.bump_ulp(t);
  return r;
}

RBall RBall::pi(mpfr_prec_t prec) {
  RBall r(prec);
  int t = mpfr_const_pi(r.mid_, MPFR_RNDN);
  r.bump_ulp(t);
  return r;
}

std::string RBall::str(size_t digits) const {
  std::vector<char> buf(digits + 64);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", static_cast<int>(digits), mid_);
  char rad[32];
  std::snprintf(rad, sizeof rad, "%.3g", rad_d());
  return std::string(buf.data()) + " +/- " + rad;
}

void add_error(RBall &a, mpfr_srcptr extra) {
  mpfr_add(a.rad_, a.rad_, extra, MPFR_RNDU);
}

RBall add(const RBall &a, const RBall &b) {
  RBall r(std::max(a.prec(), b.prec()));
  int t = mpfr_add(r.mid_, a.mid_, b.mid_, MPFR_RNDN);
  mpfr_add(r.rad_, a.rad_, b.rad_, MPFR_RNDU);
  r.bump_ulp(t);
  return r;
}

RBall sub(const RBall &a, const RBall &b) {
  RBall r(std::max(a.prec(), b.prec()));
  int t = mpfr_sub(r.mid_, a.mid_, b.mid_, MPFR_RNDN);
  mpfr_add(r.rad_, a.rad_, b.rad_, MPFR_RNDU);
  r.bump_ulp(t);
  return r;
}

RBall neg(const RBall &a) {
  RBall r(a.prec());
  mpfr_neg(r.mid_, a.mid_, MPFR_RNDN);
  mpfr_set(r.rad_, a.rad_, MPFR_RNDU);
  return r;
}

RBall mul(const RBall &a, const RBall &b) {
  RBall r(std::max(a.prec(), b.prec()));
  int t = mpfr_mul(r.mid_, a.mid_, b.mid_, MPFR_RNDN);
  // |a||rb| + |b||ra| + ra rb
  Tmp am, bm, term;
  mpfr_abs(am.x, a.mid_, MPFR_RNDU);
  mpfr_abs(bm.x, b.mid_, MPFR_RNDU);
  mpfr_mul(term.x, am.x, b.rad_, MPFR_RNDU);
  mpfr_add(r.rad_, r.rad_, term.x, MPFR_RNDU);
  mpfr_mul(term.x, bm.x, a.rad_, MPFR_RNDU);
  mpfr_add(r.rad_, r.rad_, term.x, MPFR_RNDU);
  mpfr_mul(term.x, a.rad_, b.rad_, MPFR_RNDU);
  mpfr_add(r.rad_, r.rad_, term.x, MPFR_RNDU);
  r.bump_ulp(t);
  return r;
}

RBall div(const RBall &a, const RBall &b) {
  Tmp bl;
  mpfr_abs(bl.x, b.mid_, MPFR_RNDD);
  mpfr_sub(bl.x, bl.x, b.rad_, MPFR_RNDD);
  if (!(mpfr_sgn(bl.x) > 0))
    throw precision_exceeded("division by a ball containing zero");
  RBall r(std::max(a.prec(), b.prec()));
  int t = mpfr_div(r.mid_, a.mid_, b.mid_, MPFR_RNDN);
  // (ra + |a/b| rb) / (|b| - rb)
  Tmp q, num;
  mpfr_abs(q.x, r.mid_, MPFR_RNDU);
  mpfr_mul(num.x, q.x, b.rad_, MPFR_RNDU);
  mpfr_add(num.x, num.x, a.rad_, MPFR_RNDU);
  mpfr_div(num.x, num.x, bl.x, MPFR_RNDU);
  mpfr_add(r.rad_, r.rad_, num.x, MPFR_RNDU);
  r.bump_ulp(t);
  return r;
}

RBall sqrt_pos(const RBall &a) {
  Tmp lo;
  mpfr_sub(lo.x, a.mid_, a.rad_, MPFR_RNDD);
  if (!(mpfr_sgn(lo.x) > 0))
    throw precision_exceeded("square root of a ball reaching zero");
  RBall r(a.prec());
  int t = mpfr_sqrt(r.mid_, a.mid_, MPFR_RNDN);
  Tmp s, term;
  mpfr_sqrt(s.x, lo.x, MPFR_RNDD);
  mpfr_mul_2si(s.x, s.x, 1, MPFR_RNDD);
  mpfr_div(term.x, a.rad_, s.x, MPFR_RNDU);
  mpfr_add(r.rad_, r.rad_, term.x, MPFR_RNDU);
  r.bump_ulp(t);
  return r;
}

RBall exp_ball(const RBall &a) {
  if (mpfr_cmp_d(a.rad_, 0.25) > 0)
    throw precision_exceeded("exp of a ball with radius above 1/4");
  RBall r(a.prec());
  int t = mpfr_exp(r.mid_, a.mid_, MPFR_RNDN);
  // e^x (e^ra - 1) <= |mid| * 1.3 ra for ra <= 1/4
  Tmp term;
  mpfr_abs(term.x, r.mid_, MPFR_RNDU);
  mpfr_mul(term.x, term.x, a.rad_, MPFR_RNDU);
  mpfr_mul_d(term.x, term.x, 1.3, MPFR_RNDU);
  mpfr_add(r.rad_, r.rad_, term.x, MPFR_RNDU);
  r.bump_ulp(t);
  return r;
}

std::pair<RBall, RBall> sin_cos(const RBall &a) {
  RBall s(a.prec()), c(a.prec());
  mpfr_sin_cos(s.mid_, c.mid_, a.mid_, MPFR_RNDN);
  // derivative bound 1, plus one ulp for each rounded midpoint
  mpfr_add(s.rad_, s.rad_, a.rad_, MPFR_RNDU);
  mpfr_add(c.rad_, c.rad_, a.rad_, MPFR_RNDU);
  s.bump_ulp(1);
  c.bump_ulp(1);
  return {std::move(s), std::move(c)};
}

RBall mul_q(const RBall &a, const mpq_class &s) {
  RBall factor = RBall::exact(s, a.prec());
  return mul(a, factor);
}

Rounding round_to_integer(const RBall &x) {
  Rounding out;
  mpfr_t n;
  mpfr_init2(n, std::max<mpfr_prec_t>(x.prec(), 64));
  mpfr_round(n, x.mid());
  mpfr_get_z(out.value.get_mpz_t(), n, MPFR_RNDN);
  mpfr_sub(n, x.mid(), n, MPFR_RNDA);
  mpfr_abs(n, n, MPFR_RNDU);
  mpfr_add(n, n, x.rad(), MPFR_RNDU);
  out.residual = mpfr_get_d(n, MPFR_RNDU);
  mpfr_clear(n);
  return out;
}

CBall add(const CBall &a, const CBall &b) { return {add(a.re, b.re), add(a.im, b.im)}; }
CBall sub(const CBall &a, const CBall &b) { return {sub(a.re, b.re), sub(a.im, b.im)}; }
CBall neg(const CBall &a) { return {neg(a.re), neg(a.im)}; }

CBall mul(const CBall &a, const CBall &b) {
  return {sub(mul(a.re, b.re), mul(a.im, b.im)),
          add(mul(a.re, b.im), mul(a.im, b.re))};
}

CBall div(const CBall &a, const CBall &b) {
  RBall norm = add(mul(b.re, b.re), mul(b.im, b.im));
  return {div(add(mul(a.re, b.re), mul(a.im, b.im)), norm),
          div(sub(mul(a.im, b.re), mul(a.re, b.im)), norm)};
}

CBall mul_q(const CBall &a, const mpq_class &s) { return {mul_q(a.re, s), mul_q(a.im, s)}; }

CBall mul_z(const CBall &a, const mpz_class &s) {
  mpq_class q(s);
  return mul_q(a, q);
}

CBall pow_ui(const CBall &a, unsigned long e) {
  CBall r = CBall::exact(1, 0, a.re.prec());
  CBall base = a;
  while (e > 0) {
    if (e & 1)
      r = mul(r, base);
    base = mul(base, base);
    e >>= 1;
  }
  return r;
}

} // namespace hm
