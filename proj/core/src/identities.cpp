#include "hauptmodul/identities.hpp"

#include <chrono>
#include <cmath>

#include "hauptmodul/forms.hpp"
#include "hauptmodul/parallel.hpp"

namespace hm {

namespace {

int kp_constant(int p) {
  switch (p) {
  case 2: return 24;
  case 3: return 36;
  case 5: return 18;
  }
  throw domain_error("no trace-formula constant for this level");
}

void require_p(int p, bool allow_level1 = false) {
  if (p == 2 || p == 3 || p == 5)
    return;
  if (allow_level1 && p == 1)
    return;
  throw domain_error(allow_level1 ? "level must be one of 1, 2, 3, 5"
                                  : "level must be one of 2, 3, 5");
}

long r_bound(long n) {
  // largest r with 4n - r^2 >= -4
  long r = long(std::sqrt(4.0 * double(n) + 4.0)) + 2;
  while (int64_t(r) * r > 4 * int64_t(n) + 4)
    --r;
  return r;
}

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

/* Traces for every valid 0 < d <= d_max into the cache, tracking the
 * precision statistics of the certified sums. */
void prefetch_traces(int p, int64_t d_max, int threads, const PrecisionBudget &budget,
                     VerificationReport &rep) {
  std::vector<int64_t> ds;
  for (int64_t d = 1; d <= d_max; ++d)
    if (discriminant_ok(d, p).ok)
      ds.push_back(d);
  std::vector<TraceValue> tv(ds.size());
  parallel_for(long(ds.size()), threads,
               [&](long i) { tv[size_t(i)] = trace(p, true, 2, ds[size_t(i)], budget); });
  for (const TraceValue &t : tv) {
    rep.max_bits = std::max(rep.max_bits, t.bits_used);
    rep.max_residual = std::max(rep.max_residual, t.residual);
  }
}

std::string coeff_str(const mpq_class &v) {
  if (v.get_den() != 1)
    throw series_error("expected an integral series coefficient");
  return v.get_num().get_str();
}

} // namespace

mpz_class coefficient_via_traces(int p, long n, const PrecisionBudget &budget) {
  require_p(p, true);
  if (n < 1)
    throw domain_error("coefficient index must be positive");

  const long R = r_bound(n);
  mpz_class num = 0;
  if (p == 1) {
    for (long r = -R; r <= R; ++r)
      num += trace_any(1, true, 2, 4 * int64_t(n) - int64_t(r) * r, budget);
  } else if (n % p == 0) {
    for (long r = -R; r <= R; ++r)
      if (r % p == 0)
        num -= trace_any(p, true, 2, 4 * int64_t(n) - int64_t(r) * r, budget);
    num += mpz_class(kp_constant(p)) * sigma1_p(n, p);
  } else {
    for (long r = -R; r <= R; ++r)
      num += trace_any(p, true, 2, 4 * int64_t(n) - int64_t(r) * r, budget);
    num += mpz_class(kp_constant(p)) * sigma1(n);
  }
  if (!mpz_divisible_ui_p(num.get_mpz_t(), 2 * (unsigned long)n))
    throw series_error("coefficient numerator is not divisible by 2n");
  return num / (2 * n);
}

mpz_class star_coefficient(int p, long n) {
  require_p(p);
  if (n < 1)
    throw domain_error("coefficient index must be positive");
  QSeries J = hauptmodul_series(Level{p, false}, p * n + 1);
  mpq_class v = J.coeff(n) - p * J.coeff(p * n);
  if (v.get_den() != 1)
    throw series_error("star coefficient is not integral");
  return v.get_num();
}

VerificationReport verify_theorem1(int p, long n_max, int threads, const PrecisionBudget &budget) {
  require_p(p, true);
  if (n_max < 1)
    throw domain_error("n range is empty");
  Timer timer;
  VerificationReport rep;
  rep.label = "thm1 p=" + std::to_string(p);
  rep.p = p;
  rep.lo = 1;
  rep.hi = n_max;

  prefetch_traces(p, 4 * n_max, threads, budget, rep);
  QSeries J = hauptmodul_series(Level{p, p == 1}, n_max + 1);

  for (long n = 1; n <= n_max; ++n) {
    std::string lhs, rhs = coeff_str(J.coeff(n));
    bool match = false;
    try {
      lhs = coefficient_via_traces(p, n, budget).get_str();
      match = lhs == rhs;
    } catch (const series_error &e) {
      lhs = std::string("error: ") + e.what();
    }
    ++rep.checked;
    if (match) {
      rep.lines.push_back("n=" + std::to_string(n) + ": " + lhs + " = " + rhs);
    } else {
      rep.lines.push_back("n=" + std::to_string(n) + ": " + lhs + " != " + rhs);
      if (rep.mismatch_count++ == 0) {
        rep.first_index = n;
        rep.first_lhs = lhs;
        rep.first_rhs = rhs;
      }
    }
  }
  rep.elapsed_s = timer.seconds();
  return rep;
}

QSeries build_H(int p, long N) {
  require_p(p);
  QSeries H = q_derivative(hauptmodul_series(Level{p, false}, N));
  mpq_class lam(-(p - 1) * kp_constant(p), 48);
  lam.canonicalize();
  return H + eisenstein_E2_p(p, N) * lam;
}

std::pair<QSeries, QSeries> build_F_G(int p, long N, int threads, const PrecisionBudget &budget) {
  require_p(p);
  if (N < 1)
    throw domain_error("series window must reach q^0");
  const long T = 4 * N + 2;
  QSeries g = g_series(p, 2, T, threads, budget);
  QSeries F = U_t(g * theta0(T), 4);
  const long tp = (T - 1) / (p * p) + 2;
  QSeries G = U_t(g * V_t(theta0(tp), p * p).truncated(T), 4);
  return {F.truncated(N), G.truncated(N)};
}

VerificationReport verify_weight2_sectors(int p, long N, int threads,
                                          const PrecisionBudget &budget) {
  require_p(p);
  Timer timer;
  VerificationReport rep;
  rep.label = "sectors p=" + std::to_string(p);
  rep.p = p;
  rep.lo = -1;
  rep.hi = N - 1;

  prefetch_traces(p, 4 * N + 1, threads, budget, rep);
  QSeries H2 = build_H(p, N) * mpq_class(2);
  auto [F, G] = build_F_G(p, N, threads, budget);

  for (int k = 0; k < p; ++k) {
    QSeries lhs = sector_filter(H2, k, p);
    QSeries rhs = k == 0 ? -sector_filter(G, 0, p) : sector_filter(F, k, p);
    long bad = 0;
    for (long n = -1; n < N; ++n) {
      ++rep.checked;
      if (lhs.coeff(n) == rhs.coeff(n))
        continue;
      ++bad;
      if (rep.mismatch_count++ == 0) {
        rep.first_index = n;
        rep.first_lhs = coeff_str(lhs.coeff(n));
        rep.first_rhs = coeff_str(rhs.coeff(n));
      }
      rep.lines.push_back("sector " + std::to_string(k) + " q^" + std::to_string(n) + ": " +
                          coeff_str(lhs.coeff(n)) + " != " + coeff_str(rhs.coeff(n)));
    }
    const std::string id = k == 0 ? "2H~_0 = -G~_0" : "2H~_" + std::to_string(k) + " = F~_" +
                                                          std::to_string(k);
    rep.lines.push_back(id + (bad == 0 ? ": match" : ": MISMATCH") + " on q^-1..q^" +
                        std::to_string(N - 1));
  }
  rep.elapsed_s = timer.seconds();
  return rep;
}

VerificationReport verify_star_relation(int p, long N) {
  require_p(p);
  if (N < 1)
    throw domain_error("series window must reach q^0");
  Timer timer;
  VerificationReport rep;
  rep.label = "star p=" + std::to_string(p);
  rep.p = p;
  rep.lo = -1;
  rep.hi = N - 1;

  QSeries star = hauptmodul_series(Level{p, true}, N);
  QSeries J = hauptmodul_series(Level{p, false}, p * N);
  QSeries rhs = J + U_t(J, p) * mpq_class(-p);

  for (long n = -1; n < N; ++n) {
    ++rep.checked;
    if (star.coeff(n) == rhs.coeff(n))
      continue;
    if (rep.mismatch_count++ == 0) {
      rep.first_index = n;
      rep.first_lhs = coeff_str(star.coeff(n));
      rep.first_rhs = coeff_str(rhs.coeff(n));
    }
    rep.lines.push_back("q^" + std::to_string(n) + ": " + coeff_str(star.coeff(n)) +
                        " != " + coeff_str(rhs.coeff(n)));
  }
  rep.lines.push_back(rep.mismatch_count == 0 ? "identity holds on the window"
                                              : "identity FAILS on the window");
  rep.elapsed_s = timer.seconds();
  return rep;
}

} // namespace hm
