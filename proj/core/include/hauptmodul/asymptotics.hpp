#ifndef HAUPTMODUL_ASYMPTOTICS_HPP
#define HAUPTMODUL_ASYMPTOTICS_HPP

#include <cstdint>
#include <functional>
#include <gmpxx.h>
#include <string>
#include <vector>

namespace hm {

/* a + b sqrt(5), kept exact (b = 0 away from level 5). */
struct AlgebraicConstant {
  mpq_class a, b;
  double value() const;
  std::string str() const;
};

/* Main term C(p, n mod p) e^{4 pi sqrt(n)/p} / (sqrt(2p) n^{3/4}). */
struct AsymptoticPrediction {
  int p = 2;
  long n = 1;
  int residue_class = 0;
  AlgebraicConstant constant;
  double predicted = 0;
};

AsymptoticPrediction predict(int p, long n);

/* Leading principal-form term e^{pi m sqrt(d)/p} sum_b cos(pi m b/p), b
 * running over residues mod 2p in (-p, p] with b^2 = -d (mod 4p).  Throws
 * when -d is not a square mod 4p. */
double principal_trace_approx(int p, int m, int64_t d);

/* S_n^(k) = (p / 2 sqrt(n)) sum_{r = k (p), r^2 <= 4n} e^{(4 pi/p) sqrt(n - r^2/4)}. */
double S_sum(int p, long n, int k);

/* J_n = int_{-1}^1 e^{(4 pi sqrt(n)/p) sqrt(1 - t^2)} dt: adaptive
 * quadrature under t = sin theta (which removes the endpoint derivative
 * blowup) next to the closed Laplace form sqrt(p/2) e^{4 pi sqrt(n)/p} / n^{1/4}. */
struct LaplaceResult {
  double quadrature = 0;
  double laplace_form = 0;
};
LaplaceResult laplace_integral(int p, long n);

/* Recursive Simpson refinement to a relative tolerance. */
double adaptive_simpson(const std::function<double(double)> &f, double a, double b,
                        double rel_tol);

/* Exact c_n^(p) against predict over a grid, with per-residue trend flags. */
struct ConvergenceReport {
  int p = 2;
  struct Row {
    long n;
    int residue;
    mpz_class exact;
    double predicted;
    double ratio; // exact / predicted
  };
  std::vector<Row> rows;
  std::vector<bool> err_non_increasing; // indexed by n mod p: |ratio - 1| trend
  std::string csv() const;              // "n,residue,exact,predicted,ratio"
};
ConvergenceReport convergence_report(int p, std::vector<long> grid);

} // namespace hm

#endif
