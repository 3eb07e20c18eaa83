#include "hauptmodul/hauptmodul.hpp"
#include "hauptmodul/reference_tables.hpp"

#include <doctest.h>
#include <mpfr.h>

#include <cmath>
#include <vector>

using namespace hm;

namespace {

const std::vector<Level> all_levels = {
    {1, true}, {2, false}, {2, true}, {3, false},
    {3, true}, {5, false}, {5, true},
};

int64_t sigma3(int64_t n) {
  int64_t s = 0;
  for (int64_t d = 1; d * d <= n; d++)
    if (n % d == 0) {
      s += d * d * d;
      int64_t e = n / d;
      if (e != d)
        s += e * e * e;
    }
  return s;
}

} // namespace

TEST_CASE("level selection validates and prints") {
  CHECK(Level{3, false}.str() == "j_3");
  CHECK(Level{5, true}.str() == "j_5*");
  CHECK(Level{2, false}.eta_exponent() == 24);
  CHECK(Level{3, false}.eta_exponent() == 12);
  CHECK(Level{5, false}.eta_exponent() == 6);
  CHECK_THROWS_AS((Level{4, false}.validate()), domain_error);
  CHECK_THROWS_AS((Level{1, false}.validate()), domain_error);
  CHECK_NOTHROW((Level{1, true}.validate()));
}

TEST_CASE("expansion heads") {
  for (const auto &h : reference::expansion_heads()) {
    Level level{h.p, h.starred};
    QSeries f = hauptmodul_series(level, 4);
    CHECK(f.val() == -1);
    CHECK(f.coeff(-1) == 1);
    CHECK(f.coeff(0) == 0);
    CHECK_MESSAGE(f.coeff(1) == h.c1, level.str());
    CHECK_MESSAGE(f.coeff(2) == h.c2, level.str());
    CHECK_MESSAGE(f.coeff(3) == h.c3, level.str());
  }
}

TEST_CASE("level 1 equals E4^3 / Delta - 744") {
  const long N = 200;
  QSeries e4(0, N);
  e4.set_coeff(0, 1);
  for (long n = 1; n < N; n++)
    e4.set_coeff(n, 240 * sigma3(n));
  QSeries j = e4 * e4 * e4; // trunc N - 2
  QSeries shift(-1, N);
  shift.set_coeff(-1, 1);
  j = j * shift;
  auto unit = eta_sparse(1, N);
  for (int i = 0; i < 24; i++)
    j = div_sparse(j, unit);
  j.set_coeff(0, j.coeff(0) - 744);
  CHECK(j.coeff(0) == 0);
  CHECK(j.coeff(1) == 196884);
  CHECK(j.coeff(2) == 21493760);
  CHECK(j == hauptmodul_series(Level{1, true}, N - 3));
}

TEST_CASE("long expansions are integral and normalized") {
  for (const Level &level : all_levels) {
    QSeries f = hauptmodul_series(level, 2000);
    CHECK_MESSAGE(f.is_integral(), level.str());
    CHECK(f.val() == -1);
    CHECK(f.trunc() == 2000);
    CHECK(f.coeff(-1) == 1);
    CHECK(f.coeff(0) == 0);
  }
}

TEST_CASE("star and unstarred expansions agree where the twist vanishes") {
  // j_p* - j_p = p^{k/2} (eta_p / eta)^k = p^{k/2} q^{(p-1)k/24} (1 + ...),
  // so the two agree strictly below exponent (p-1)k/24 = 1.
  for (int p : {2, 3, 5}) {
    QSeries a = hauptmodul_series(Level{p, false}, 30);
    QSeries b = hauptmodul_series(Level{p, true}, 30);
    QSeries diff = (b - a).normalized();
    CHECK(diff.val() == 1);
    long scalar = p == 2 ? 4096 : p == 3 ? 729 : 125;
    CHECK(diff.coeff(1) == scalar);
  }
}

TEST_CASE("Faber polynomials are monic, integral and normalized") {
  for (const Level &level : all_levels) {
    QSeries s = hauptmodul_series(level, 16);
    for (int m = 1; m <= 10; m++) {
      FaberPoly poly = faber(level, m);
      REQUIRE(poly.coeff.size() == size_t(m) + 1);
      CHECK(poly.coeff[m] == 1);
      CHECK(poly.expansion.val() == -m);
      CHECK(poly.expansion.coeff(-m) == 1);
      for (int k = -m + 1; k <= 0; k++)
        CHECK(poly.expansion.coeff(k) == 0);
      // independent re-expansion by Horner on the series
      QSeries acc(0, 40);
      acc.set_coeff(0, mpq_class(poly.coeff[m]));
      for (int i = m - 1; i >= 0; i--) {
        acc = acc * s;
        acc.set_coeff(0, acc.coeff(0) + mpq_class(poly.coeff[i]));
      }
      CHECK(acc.coeff(-m) == 1);
      for (int k = -m + 1; k <= 0; k++)
        CHECK_MESSAGE(acc.coeff(k) == 0, level.str(), " m = ", m, " k = ", k);
    }
  }
}

TEST_CASE("eta at the fixed point of the order-4 automorph") {
  // eta(i) = Gamma(1/4) / (2 pi^{3/4})
  CMPoint tau = cm_point(QuadForm{1, 0, 1});
  CHECK(tau.minus_b == 0);
  CHECK(tau.d == 4);
  CHECK(tau.two_a == 2);
  CBall v = eval_eta(tau, 1, 128);
  CHECK(v.re.rad_d() < 1e-18);
  CHECK(v.im.rad_d() < 1e-18);
  CHECK(v.re.mid_d() == doctest::Approx(0.76822542232605658).epsilon(1e-15));
  CHECK(std::abs(v.im.mid_d()) < 1e-18);
  // eta(2i) = eta(i) / 2^{3/8}
  CBall w = eval_eta(tau, 2, 128);
  CHECK(w.re.mid_d() ==
        doctest::Approx(0.76822542232605658 / std::pow(2.0, 0.375)).epsilon(1e-15));
}

TEST_CASE("singular values round to the classical integers") {
  auto check_int = [](const CBall &v, long expect) {
    Rounding r = round_to_integer(v.re);
    CHECK(r.value == expect);
    CHECK(r.residual < 1e-10);
    Rounding ri = round_to_integer(v.im);
    CHECK(ri.value == 0);
    CHECK(ri.residual < 1e-10);
  };
  // j(i) = 1728, j(rho) = 0, shifted by -744
  check_int(eval_hauptmodul_star(Level{1, true}, QuadForm{1, 0, 1}, 128), 984);
  check_int(eval_hauptmodul_star(Level{1, true}, QuadForm{1, 1, 1}, 128), -744);
  check_int(eval_hauptmodul_star(Level{3, true}, QuadForm{3, 3, 1}, 128), -42);
}

TEST_CASE("balls at different precisions agree and nest") {
  for (const QuadForm &q : {QuadForm{3, 0, 1}, QuadForm{3, 2, 4}}) {
    CBall lo = eval_hauptmodul_star(Level{3, true}, q, 128);
    CBall hi = eval_hauptmodul_star(Level{3, true}, q, 512);
    CHECK(hi.re.rad_d() < lo.re.rad_d());
    // the high-precision midpoint lies inside the low-precision ball
    mpfr_t diff, tol;
    mpfr_init2(diff, 512);
    mpfr_init2(tol, 64);
    mpfr_sub(diff, hi.re.mid(), lo.re.mid(), MPFR_RNDN);
    mpfr_abs(diff, diff, MPFR_RNDU);
    mpfr_add(tol, lo.re.rad(), hi.re.rad(), MPFR_RNDU);
    CHECK(mpfr_cmp(diff, tol) <= 0);
    mpfr_clears(diff, tol, (mpfr_ptr)nullptr);
  }
}

TEST_CASE("precision suggestions scale with the discriminant") {
  mpfr_prec_t a = suggest_precision(3, 2, 50);
  mpfr_prec_t b = suggest_precision(3, 2, 2000);
  CHECK(a >= 128); // floor: small discriminants share one working precision
  CHECK(b > a);    // past the floor the exponent pi m sqrt(d) / a_min rules
  CHECK(suggest_precision(1, 2, 2000) > suggest_precision(3, 2, 2000));
}
