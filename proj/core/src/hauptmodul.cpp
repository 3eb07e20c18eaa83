#include "hauptmodul/hauptmodul.hpp"

#include <cmath>
#include <string>

namespace hm {

void Level::validate() const {
  if (p != 1 && p != 2 && p != 3 && p != 5)
    throw domain_error("level must be one of 1, 2, 3, 5");
  if (p == 1 && !starred)
    throw domain_error("level 1 exists only in the starred normalization");
}

std::string Level::str() const {
  return "j_" + std::to_string(p) + (starred ? "*" : "");
}

static long star_scalar(int p) {
  // p^(k/2) with k = 24/(p-1)
  switch (p) {
  case 2: return 4096;
  case 3: return 729;
  case 5: return 125;
  }
  throw domain_error("no star scalar for this level");
}

namespace {

QSeries shift_series(const QSeries &f, long s) {
  QSeries r(f.val() + s, f.trunc() + s);
  for (long n = f.val(); n < f.trunc(); ++n)
    r.set_coeff(n + s, f.coeff(n));
  return r;
}

/* {(eta/eta_2)^8 + 2^8 (eta_2/eta)^16}^3 - 744.  The two summands have
 * q-offsets -1/3 and +2/3, so the brace is expanded in u = q^{1/3}; the
 * cube is supported on exponents divisible by 3, which is checked before
 * reindexing u^3 -> q. */
QSeries level1_series(long N) {
  const long L = N + 2;
  auto s1 = eta_sparse(1, L);
  auto s2 = eta_sparse(2, L);

  QSeries one(0, L);
  one.set_coeff(0, 1);
  QSeries A0 = one, B0 = one; // bodies of (eta/eta_2)^8 and (eta_2/eta)^16
  for (int i = 0; i < 8; ++i)
    A0 = mul_sparse(A0, s1);
  for (int i = 0; i < 8; ++i)
    A0 = div_sparse(A0, s2);
  for (int i = 0; i < 16; ++i)
    B0 = mul_sparse(B0, s2);
  for (int i = 0; i < 16; ++i)
    B0 = div_sparse(B0, s1);

  QSeries S = shift_series(V_t(A0, 3), -1) + shift_series(V_t(B0, 3), 2) * mpq_class(256);
  QSeries C = S * S * S;
  for (long e = C.val(); e < C.trunc(); ++e)
    if (((e % 3) + 3) % 3 != 0 && C.coeff(e) != 0)
      throw series_error("level-1 cube has a coefficient off the cubic lattice");
  QSeries J = U_t(C, 3).truncated(N);
  J.set_coeff(0, J.coeff(0) - 744);
  if (J.coeff(0) != 0 || J.coeff(-1) != 1)
    throw series_error("level-1 expansion head is wrong");
  return J;
}

} // namespace

QSeries hauptmodul_series(const Level &level, long N) {
  level.validate();
  if (N < 1)
    throw domain_error("series window must reach q^0");
  if (level.p == 1)
    return level1_series(N);

  const int p = level.p;
  const long k = level.eta_exponent();
  EtaQuotientSpec spec;
  spec.terms.push_back({{{1, k}, {p, -k}}, 1});
  spec.constant = k;
  if (level.starred)
    spec.terms.push_back({{{p, k}, {1, -k}}, star_scalar(p)});
  QSeries J = eta_quotient(spec, N);
  if (J.val() != -1 || J.coeff(-1) != 1 || J.coeff(0) != 0)
    throw series_error("hauptmodul expansion head is wrong");
  return J;
}

FaberPoly faber(const Level &level, int m) {
  level.validate();
  if (m < 1)
    throw domain_error("faber index must be positive");

  const long T = m + 3;
  QSeries J = hauptmodul_series(level, T);
  std::vector<QSeries> pow; // pow[i] = J^(i+1)
  pow.push_back(J);
  for (int i = 2; i <= m; ++i)
    pow.push_back(pow.back() * J);

  FaberPoly f;
  f.m = m;
  f.coeff.assign(m + 1, 0);
  f.coeff[m] = 1;

  QSeries P = pow[m - 1];
  for (int i = m - 1; i >= 1; --i) {
    mpq_class g = P.coeff(-i);
    if (g.get_den() != 1)
      throw series_error("faber elimination hit a non-integral coefficient");
    f.coeff[i] = -g.get_num();
    P = P - pow[i - 1] * g;
  }
  mpq_class g0 = P.coeff(0);
  if (g0.get_den() != 1)
    throw series_error("faber elimination hit a non-integral coefficient");
  f.coeff[0] = -g0.get_num();
  QSeries one(0, P.trunc());
  one.set_coeff(0, 1);
  P = P - one * g0;

  if (P.coeff(-m) != 1)
    throw series_error("faber polynomial is not monic in q^-m");
  for (long n = -m + 1; n <= 0; ++n)
    if (P.coeff(n) != 0)
      throw series_error("faber polynomial expansion is not q^-m + O(q)");
  f.expansion = P;
  return f;
}

CBall evaluate_faber(const FaberPoly &poly, const CBall &x) {
  const mpfr_prec_t prec = x.re.prec();
  auto lift = [&](const mpz_class &z) {
    return CBall{RBall::exact(z, prec), RBall::exact(0L, prec)};
  };
  CBall r = lift(poly.coeff[poly.m]);
  for (int i = poly.m - 1; i >= 0; --i)
    r = add(mul(r, x), lift(poly.coeff[i]));
  return r;
}

mpfr_prec_t suggest_precision(int p, int m, int64_t d) {
  const double a_min = p == 1 ? 1.0 : double(p);
  double bits = 3.1415926535897932 * m * std::sqrt(double(d)) / (a_min * 0.6931471805599453);
  bits += 64;
  if (bits < 128)
    bits = 128;
  return mpfr_prec_t(std::ceil(bits));
}

CBall eval_eta(const CMPoint &tau, long t, mpfr_prec_t bits) {
  if (tau.d <= 0 || tau.two_a <= 0 || t < 1)
    throw domain_error("eta evaluation point must lie in the upper half plane");

  // eta(t tau) = sum_k (-1)^k e^{2 pi i s_k tau}, s_k = t (6k+1)^2 / 24.
  // With tau = (minus_b + i sqrt(d)) / two_a the term modulus is
  // exp(-u0 (6k+1)^2) where u0 = 2 pi sqrt(d) t / (24 two_a).

  // Rigorous truncation index: lower-bound u0, then grow K until the
  // geometric tail bound drops below 2^-(bits+8) of the leading modulus.
  mpfr_t u0lo, tmp, tail, target, den;
  mpfr_inits2(64, u0lo, tmp, tail, target, den, (mpfr_ptr)nullptr);

  // target = exp(-u0) * 2^-(bits+9) from below, via an upper bound of u0
  mpfr_const_pi(tmp, MPFR_RNDU);
  mpfr_mul_si(tmp, tmp, 2 * t, MPFR_RNDU);
  mpfr_sqrt_ui(target, (unsigned long)tau.d, MPFR_RNDU);
  mpfr_mul(tmp, tmp, target, MPFR_RNDU);
  mpfr_div_si(tmp, tmp, 24 * tau.two_a, MPFR_RNDU);
  mpfr_neg(tmp, tmp, MPFR_RNDD);
  mpfr_exp(target, tmp, MPFR_RNDD);
  mpfr_mul_2si(target, target, -(long)(bits + 9), MPFR_RNDD);

  mpfr_const_pi(u0lo, MPFR_RNDD);
  mpfr_mul_si(u0lo, u0lo, 2 * t, MPFR_RNDD);
  mpfr_sqrt_ui(tmp, (unsigned long)tau.d, MPFR_RNDD);
  mpfr_mul(u0lo, u0lo, tmp, MPFR_RNDD);
  mpfr_div_si(u0lo, u0lo, 24 * tau.two_a, MPFR_RNDD);

  const double u0d = mpfr_get_d(u0lo, MPFR_RNDD);
  long K = (long)std::ceil((std::sqrt((double(bits) + 16) * 0.6931 / std::max(u0d, 1e-12) + 1.0) - 1.0) / 6.0);
  if (K < 1)
    K = 1;
  for (;; ++K) {
    if (K > 20000000L)
      throw precision_exceeded("eta truncation index exceeded its cap");
    // tail <= 2 exp(-u0 (6K+5)^2) / (1 - exp(-u0 (72K+96))), upper bound
    mpfr_mul_si(tmp, u0lo, (6 * K + 5) * (6 * K + 5), MPFR_RNDD);
    mpfr_neg(tmp, tmp, MPFR_RNDU);
    mpfr_exp(tail, tmp, MPFR_RNDU);
    mpfr_mul_ui(tail, tail, 2, MPFR_RNDU);
    mpfr_mul_si(tmp, u0lo, 72 * K + 96, MPFR_RNDD);
    mpfr_neg(tmp, tmp, MPFR_RNDU);
    mpfr_exp(tmp, tmp, MPFR_RNDU);
    mpfr_ui_sub(den, 1, tmp, MPFR_RNDD);
    if (mpfr_sgn(den) <= 0)
      continue;
    mpfr_div(tail, tail, den, MPFR_RNDU);
    if (mpfr_cmp(tail, target) <= 0)
      break;
  }

  // Main sum at working precision.
  RBall two_pi = mul_q(RBall::pi(bits), 2);
  RBall sqrtd = sqrt_pos(RBall::exact(mpz_class((unsigned long)tau.d), bits));
  RBall inv2a = div(two_pi, RBall::exact((long)tau.two_a, bits));
  RBall mod_base = neg(mul(inv2a, sqrtd));               // times s_k: log-modulus
  RBall phase_base = mul_q(inv2a, mpq_class((long)tau.minus_b)); // times s_k: argument

  RBall acc_re = RBall::exact(0L, bits), acc_im = RBall::exact(0L, bits);
  for (long k = -K; k <= K; ++k) {
    const long w = 6 * k + 1;
    mpq_class s(mpz_class(t) * w * w, mpz_class(24));
    s.canonicalize();
    RBall modulus = exp_ball(mul_q(mod_base, s));
    auto [sn, cs] = sin_cos(mul_q(phase_base, s));
    RBall re = mul(modulus, cs), im = mul(modulus, sn);
    if (k & 1) {
      acc_re = sub(acc_re, re);
      acc_im = sub(acc_im, im);
    } else {
      acc_re = add(acc_re, re);
      acc_im = add(acc_im, im);
    }
  }
  add_error(acc_re, tail);
  add_error(acc_im, tail);
  mpfr_clears(u0lo, tmp, tail, target, den, (mpfr_ptr)nullptr);
  return {std::move(acc_re), std::move(acc_im)};
}

CBall eval_hauptmodul_star(const Level &level, const QuadForm &q, mpfr_prec_t bits) {
  level.validate();
  if (!q.positive_definite())
    throw domain_error("evaluation point must come from a positive definite form");
  const CMPoint tau = cm_point(q);
  CBall eA = eval_eta(tau, 1, bits);

  if (level.p == 1) {
    CBall R = div(eA, eval_eta(tau, 2, bits));
    CBall brace = add(pow_ui(R, 8), div(CBall::exact(256, 0, bits), pow_ui(R, 16)));
    return sub(pow_ui(brace, 3), CBall::exact(744, 0, bits));
  }

  const long k = level.eta_exponent();
  CBall A = pow_ui(div(eA, eval_eta(tau, level.p, bits)), (unsigned long)k);
  CBall j = add(A, CBall::exact(k, 0, bits));
  if (level.starred)
    j = add(j, div(CBall::exact(star_scalar(level.p), 0, bits), A));
  return j;
}

} // namespace hm
