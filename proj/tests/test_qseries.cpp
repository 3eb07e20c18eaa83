#include "hauptmodul/qseries.hpp"

#include <doctest.h>

#include <random>
#include <vector>

using namespace hm;

namespace {

QSeries random_series(std::mt19937 &rng, long val, long trunc) {
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 5);
  QSeries f(val, trunc);
  for (long n = val; n < trunc; n++) {
    mpq_class v(num(rng), den(rng));
    v.canonicalize();
    f.set_coeff(n, v);
  }
  return f;
}

QSeries monomial(long e, long trunc) {
  QSeries f(e, trunc);
  f.set_coeff(e, 1);
  return f;
}

} // namespace

TEST_CASE("ring laws on random series") {
  std::mt19937 rng(0xa5a5);
  for (int iter = 0; iter < 40; iter++) {
    QSeries f = random_series(rng, -2, 9);
    QSeries g = random_series(rng, -2, 9);
    QSeries h = random_series(rng, -2, 9);
    CHECK(f + g == g + f);
    CHECK((f + g) + h == f + (g + h));
    CHECK(f * g == g * f);
    CHECK((f * g) * h == f * (g * h));
    CHECK(f * (g + h) == f * g + f * h);
    CHECK(f - f == f * mpq_class(0));
    CHECK(-(-f) == f);
    CHECK(f * mpq_class(3) + f * mpq_class(-3) == f - f);
  }
}

TEST_CASE("window bookkeeping") {
  QSeries f(-1, 5);
  f.set_coeff(-1, 1);
  f.set_coeff(2, 7);
  CHECK(f.coeff(-3) == 0); // below valuation: known zero
  CHECK(f.coeff(0) == 0);
  CHECK_THROWS_AS((void)f.coeff(5), series_error);
  QSeries t = f.truncated(3);
  CHECK(t.trunc() == 3);
  CHECK_THROWS_AS((void)t.coeff(4), series_error);

  QSeries g(0, 4);
  g.set_coeff(1, 2);
  QSeries prod = f * g; // val -1, trunc limited by both windows
  CHECK(prod.val() == -1);
  CHECK(prod.trunc() == std::min(5 + 0, 4 + (-1)));
  CHECK(prod.coeff(0) == 2);

  // normalized() tightens leading zeros without touching the window
  QSeries z(-3, 4);
  z.set_coeff(1, 5);
  QSeries nz = z.normalized();
  CHECK(nz.val() == 1);
  CHECK(nz.trunc() == 4);
}

TEST_CASE("U_t, V_t, sector filter and derivative") {
  std::mt19937 rng(0x517e);
  QSeries f = random_series(rng, -2, 12);
  for (long t : {2L, 3L, 5L}) {
    CHECK(U_t(V_t(f, t), t) == f);
    QSeries g = random_series(rng, 0, 12);
    CHECK(V_t(f * g, t) == V_t(f, t) * V_t(g, t));
    // U_t(V_t(f) g) = f U_t(g)
    CHECK(U_t(V_t(f, t) * g, t) == f * U_t(g, t));
  }
  // sector filters partition the series
  for (long M : {2L, 3L, 4L}) {
    QSeries sum = sector_filter(f, 0, M);
    for (long k = 1; k < M; k++)
      sum = sum + sector_filter(f, k, M);
    CHECK(sum == f);
  }
  // q d/dq satisfies the product rule
  QSeries g = random_series(rng, -1, 10);
  CHECK(q_derivative(f * g) == q_derivative(f) * g + f * q_derivative(g));
  CHECK(q_derivative(monomial(-3, 5)) == monomial(-3, 5) * mpq_class(-3));
}

TEST_CASE("theta0 counts representations as sums of two squares") {
  const long N = 201;
  QSeries th = theta0(N);
  QSeries th2 = th * th;
  std::vector<long> r2(N, 0);
  for (long x = -15; x <= 15; x++)
    for (long y = -15; y <= 15; y++)
      if (x * x + y * y < N)
        r2[x * x + y * y]++;
  for (long n = 0; n < N; n++)
    CHECK(th2.coeff(n) == r2[n]);
}

TEST_CASE("pentagonal eta expansion matches the brute-force product") {
  const long N = 100;
  QSeries prod(0, N);
  prod.set_coeff(0, 1);
  for (long n = 1; n < N; n++) {
    QSeries factor(0, N);
    factor.set_coeff(0, 1);
    factor.set_coeff(n, -1);
    prod = (prod * factor).truncated(N);
  }
  CHECK(eta_series(N) == prod);

  QSeries one(0, N);
  one.set_coeff(0, 1);
  CHECK(mul_sparse(one, eta_sparse(1, N)) == eta_series(N));
  // div undoes mul
  CHECK(div_sparse(mul_sparse(prod, eta_sparse(3, N)), eta_sparse(3, N)) == prod);
}

TEST_CASE("Eisenstein series heads and divisor sums") {
  QSeries e2 = eisenstein_E2(61);
  CHECK(e2.coeff(0) == 1);
  for (long n = 1; n <= 60; n++)
    CHECK(e2.coeff(n) == -24 * sigma1(n));
  CHECK(sigma1(1) == 1);
  CHECK(sigma1(6) == 12);
  CHECK(sigma1(28) == 56);
  for (int p : {2, 3, 5}) {
    QSeries e2p = eisenstein_E2_p(p, 61);
    CHECK(e2p.coeff(0) == 1);
    for (long n = 1; n <= 60; n++) {
      int64_t sp = sigma1(n) - (n % p == 0 ? p * sigma1(n / p) : 0);
      CHECK(sigma1_p(n, p) == sp);
      mpq_class want(24 * sp, p - 1);
      want.canonicalize();
      CHECK(e2p.coeff(n) == want);
    }
  }
}

TEST_CASE("eta quotient offsets and cross-check by multiplication") {
  const long N = 64;
  // (eta(tau)/eta(2 tau))^24 = q^-1 prod(1-q^n)^24 / prod(1-q^2n)^24
  EtaQuotientSpec spec;
  spec.terms.push_back({{{1, 24}, {2, -24}}, 1});
  QSeries eq = eta_quotient(spec, N);
  CHECK(eq.val() == -1);
  CHECK(eq.coeff(-1) == 1);

  QSeries A(0, N + 1), B(0, N + 1);
  A.set_coeff(0, 1);
  B.set_coeff(0, 1);
  for (int i = 0; i < 24; i++) {
    A = mul_sparse(A, eta_sparse(1, N + 1));
    B = mul_sparse(B, eta_sparse(2, N + 1));
  }
  CHECK(eq * B == A * monomial(-1, N + 1));

  // non-integral q-power offset is rejected
  EtaQuotientSpec bad;
  bad.terms.push_back({{{1, 1}}, 1});
  CHECK_THROWS_AS(eta_quotient(bad, 8), domain_error);
}

TEST_CASE("integrality detection") {
  QSeries f(0, 3);
  f.set_coeff(0, 4);
  CHECK(f.is_integral());
  mpq_class half(1, 2);
  f.set_coeff(2, half);
  CHECK_FALSE(f.is_integral());
}
