#include "hauptmodul/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "hauptmodul/forms.hpp"
#include "hauptmodul/hauptmodul.hpp"

namespace hm {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require_p(int p) {
  if (p != 2 && p != 3 && p != 5)
    throw domain_error("level must be one of 2, 3, 5");
}

AlgebraicConstant main_term_constant(int p, int residue) {
  auto q = [](long num, long den) {
    mpq_class v(num, den);
    v.canonicalize();
    return v;
  };
  if (p == 2) {
    return residue == 0 ? AlgebraicConstant{-1, 0} : AlgebraicConstant{1, 0};
  }
  if (p == 3) {
    return residue == 1 ? AlgebraicConstant{2, 0} : AlgebraicConstant{-1, 0};
  }
  switch (residue) {
  case 0: return {-1, 0};
  case 1: return {q(3, 2), q(1, 2)};
  case 2: return {-1, 1};
  case 3: return {-1, -1};
  default: return {q(3, 2), q(-1, 2)};
  }
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

} // namespace

double AlgebraicConstant::value() const { return a.get_d() + b.get_d() * std::sqrt(5.0); }

std::string AlgebraicConstant::str() const {
  if (b == 0)
    return a.get_str();
  const mpq_class babs = abs(b);
  std::string s = a == 0 ? "" : a.get_str() + (b > 0 ? " + " : " - ");
  if (a == 0 && b < 0)
    s = "-";
  if (babs != 1)
    s += babs.get_str() + "*";
  return s + "sqrt(5)";
}

AsymptoticPrediction predict(int p, long n) {
  require_p(p);
  if (n < 1)
    throw domain_error("prediction index must be positive");
  AsymptoticPrediction out;
  out.p = p;
  out.n = n;
  out.residue_class = int(n % p);
  out.constant = main_term_constant(p, out.residue_class);
  out.predicted = out.constant.value() * std::exp(4.0 * kPi * std::sqrt(double(n)) / p) /
                  (std::sqrt(2.0 * p) * std::pow(double(n), 0.75));
  return out;
}

double principal_trace_approx(int p, int m, int64_t d) {
  require_p(p);
  if (m < 1 || d < 1)
    throw domain_error("approximation needs m >= 1 and d >= 1");
  const DiscCheck dc = discriminant_ok(d, p);
  if (!dc.ok)
    throw domain_error("-d is not a square mod 4p");
  double w = 0;
  for (int beta : dc.betas) {
    const int b = beta > p ? beta - 2 * p : beta;
    w += std::cos(kPi * m * b / p);
  }
  return w * std::exp(kPi * m * std::sqrt(double(d)) / p);
}

double S_sum(int p, long n, int k) {
  require_p(p);
  if (n < 1 || k < 0 || k >= p)
    throw domain_error("S sum needs n >= 1 and a residue 0 <= k < p");
  long R = long(std::sqrt(4.0 * double(n))) + 2;
  while (int64_t(R) * R > 4 * int64_t(n))
    --R;
  long r = -R + ((k + R) % p + p) % p;
  double sum = 0;
  for (; r <= R; r += p)
    sum += std::exp(4.0 * kPi / p * std::sqrt(double(n) - 0.25 * double(r) * double(r)));
  return p / (2.0 * std::sqrt(double(n))) * sum;
}

namespace {

double adapt(const std::function<double(double)> &f, double a, double fa, double b, double fb,
             double m, double fm, double whole, double eps, int depth) {
  const double lm = (a + m) / 2, rm = (m + b) / 2;
  const double flm = f(lm), frm = f(rm);
  const double L = (m - a) / 6 * (fa + 4 * flm + fm);
  const double R = (b - m) / 6 * (fm + 4 * frm + fb);
  if (depth <= 0 || std::abs(L + R - whole) <= 15 * eps)
    return L + R + (L + R - whole) / 15;
  return adapt(f, a, fa, m, fm, lm, flm, L, eps / 2, depth - 1) +
         adapt(f, m, fm, b, fb, rm, frm, R, eps / 2, depth - 1);
}

} // namespace

double adaptive_simpson(const std::function<double(double)> &f, double a, double b,
                        double rel_tol) {
  const double m = (a + b) / 2;
  const double fa = f(a), fb = f(b), fm = f(m);
  const double whole = (b - a) / 6 * (fa + 4 * fm + fb);
  const double eps = std::abs(whole) * rel_tol + 1e-300;
  return adapt(f, a, fa, b, fb, m, fm, whole, eps, 30);
}

LaplaceResult laplace_integral(int p, long n) {
  require_p(p);
  if (n < 1)
    throw domain_error("integral index must be positive");
  const double ksn = 4.0 * kPi * std::sqrt(double(n)) / p;
  // scale by e^-ksn so the integrand stays in [0, 1]
  auto f = [ksn](double th) { return std::exp(ksn * (std::cos(th) - 1.0)) * std::cos(th); };
  LaplaceResult out;
  out.quadrature = std::exp(ksn) * adaptive_simpson(f, -kPi / 2, kPi / 2, 1e-6);
  out.laplace_form = std::sqrt(p / 2.0) * std::exp(ksn) / std::pow(double(n), 0.25);
  return out;
}

std::string ConvergenceReport::csv() const {
  std::ostringstream os;
  os << "n,residue,exact,predicted,ratio\n";
  for (const Row &r : rows)
    os << r.n << "," << r.residue << "," << r.exact << "," << fmt(r.predicted) << ","
       << fmt(r.ratio) << "\n";
  return os.str();
}

ConvergenceReport convergence_report(int p, std::vector<long> grid) {
  require_p(p);
  if (grid.empty())
    throw domain_error("grid is empty");
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  if (grid.front() < 1)
    throw domain_error("grid entries must be positive");

  ConvergenceReport rep;
  rep.p = p;
  QSeries J = hauptmodul_series(Level{p, false}, grid.back() + 1);
  for (long n : grid) {
    const AsymptoticPrediction pr = predict(p, n);
    const mpq_class &c = J.coeff(n);
    if (c.get_den() != 1)
      throw series_error("expected an integral series coefficient");
    ConvergenceReport::Row row{n, pr.residue_class, c.get_num(), pr.predicted, 0};
    row.ratio = row.exact.get_d() / pr.predicted;
    rep.rows.push_back(std::move(row));
  }
  rep.err_non_increasing.assign(size_t(p), true);
  for (int k = 0; k < p; ++k) {
    double prev = -1;
    for (const auto &row : rep.rows) {
      if (row.residue != k)
        continue;
      const double err = std::abs(row.ratio - 1.0);
      if (prev >= 0 && err > prev)
        rep.err_non_increasing[size_t(k)] = false;
      prev = err;
    }
  }
  return rep;
}

} // namespace hm
