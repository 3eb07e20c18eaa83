#include "hauptmodul/qseries.hpp"

#include <algorithm>
#include <cstdlib>

namespace hm {

const mpq_class QSeries::zero_ = 0;

namespace {

long floor_div(long a, long b) {
  long q = a / b, r = a % b;
  return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
}

long ceil_div(long a, long b) { return -floor_div(-a, b); }

} // namespace

QSeries::QSeries(long val, long trunc) : val_(val), trunc_(trunc) {
  if (trunc <= val)
    throw series_error("empty truncation window");
  c_.resize(static_cast<size_t>(trunc - val));
}

const mpq_class &QSeries::coeff(long n) const {
  if (n < val_)
    return zero_;
  if (n >= trunc_)
    throw series_error("coefficient of q^" + std::to_string(n) +
                       " is beyond the truncation q^" + std::to_string(trunc_));
  return c_[static_cast<size_t>(n - val_)];
}

void QSeries::set_coeff(long n, const mpq_class &v) {
  if (n < val_ || n >= trunc_)
    throw series_error("assignment outside the window");
  c_[static_cast<size_t>(n - val_)] = v;
}

bool QSeries::is_integral() const {
  for (const mpq_class &x : c_)
    if (x.get_den() != 1)
      return false;
  return true;
}

QSeries QSeries::normalized() const {
  long v = val_;
  while (v + 1 < trunc_ && c_[static_cast<size_t>(v - val_)] == 0)
    v++;
  QSeries r(v, trunc_);
  for (long n = v; n < trunc_; n++)
    r.set_coeff(n, coeff(n));
  return r;
}

QSeries add(const QSeries &f, const QSeries &g) {
  long val = std::min(f.val(), g.val());
  long trunc = std::min(f.trunc(), g.trunc());
  QSeries r(val, trunc);
  for (long n = val; n < trunc; n++)
    r.set_coeff(n, f.coeff(n) + g.coeff(n));
  return r;
}

QSeries QSeries::operator+(const QSeries &g) const { return add(*this, g); }

QSeries QSeries::operator-() const {
  QSeries r(val_, trunc_);
  for (long n = val_; n < trunc_; n++)
    r.set_coeff(n, -coeff(n));
  return r;
}

QSeries QSeries::operator-(const QSeries &g) const { return add(*this, -g); }

QSeries mul(const QSeries &f, const QSeries &g) {
  long val = f.val() + g.val();
  long trunc = std::min(f.trunc() + g.val(), g.trunc() + f.val());
  if (trunc <= val)
    throw series_error("product has an empty truncation window");

  // The factor with fewer nonzero coefficients drives the outer loop.
  auto nnz = [](const QSeries &s) {
    long k = 0;
    for (long n = s.val(); n < s.trunc(); n++)
      if (s.coeff(n) != 0)
        k++;
    return k;
  };
  const QSeries &a = nnz(f) <= nnz(g) ? f : g;
  const QSeries &b = nnz(f) <= nnz(g) ? g : f;

  QSeries r(val, trunc);
  mpq_class t;
  for (long i = a.val(); i < a.trunc(); i++) {
    const mpq_class &ai = a.coeff(i);
    if (ai == 0)
      continue;
    long jmax = std::min(b.trunc(), trunc - i);
    for (long j = b.val(); j < jmax; j++) {
      const mpq_class &bj = b.coeff(j);
      if (bj == 0)
        continue;
      t = ai * bj;
      r.set_coeff(i + j, r.coeff(i + j) + t);
    }
  }
  return r;
}

QSeries QSeries::operator*(const QSeries &g) const { return mul(*this, g); }

QSeries QSeries::operator*(const mpq_class &s) const {
  QSeries r(val_, trunc_);
  for (long n = val_; n < trunc_; n++)
    r.set_coeff(n, coeff(n) * s);
  return r;
}

bool QSeries::operator==(const QSeries &g) const {
  long lo = std::min(val_, g.val());
  long hi = std::min(trunc_, g.trunc());
  if (hi <= lo)
    throw series_error("comparison window is empty");
  for (long n = lo; n < hi; n++)
    if (coeff(n) != g.coeff(n))
      return false;
  return true;
}

QSeries QSeries::truncated(long new_trunc) const {
  if (new_trunc > trunc_)
    throw series_error("cannot extend a truncation window");
  QSeries r(val_, new_trunc);
  for (long n = val_; n < new_trunc; n++)
    r.set_coeff(n, coeff(n));
  return r;
}

QSeries U_t(const QSeries &f, long t) {
  if (t < 1)
    throw series_error("U_t needs t >= 1");
  long val = ceil_div(f.val_, t);
  long trunc = floor_div(f.trunc_ - 1, t) + 1;
  if (trunc <= val)
    throw series_error("U_t result has an empty truncation window");
  QSeries r(val, trunc);
  for (long n = val; n < trunc; n++)
    r.set_coeff(n, f.coeff(t * n));
  return r;
}

QSeries V_t(const QSeries &f, long t) {
  if (t < 1)
    throw series_error("V_t needs t >= 1");
  QSeries r(t * f.val_, t * f.trunc_);
  for (long n = f.val_; n < f.trunc_; n++)
    r.set_coeff(t * n, f.coeff(n));
  return r;
}

QSeries sector_filter(const QSeries &f, long k, long M) {
  if (M < 1 || k < 0 || k >= M)
    throw series_error("sector_filter needs 0 <= k < M");
  QSeries r(f.val_, f.trunc_);
  for (long n = f.val_; n < f.trunc_; n++)
    if (((n % M) + M) % M == k)
      r.set_coeff(n, f.coeff(n));
  return r;
}

QSeries q_derivative(const QSeries &f) {
  QSeries r(f.val_, f.trunc_);
  for (long n = f.val_; n < f.trunc_; n++)
    r.set_coeff(n, f.coeff(n) * n);
  return r;
}

std::vector<std::pair<long, int>> eta_sparse(long t, long N) {
  std::vector<std::pair<long, int>> g;
  g.emplace_back(0, 1);
  for (long k = 1;; k++) {
    long e1 = t * (k * (3 * k - 1) / 2);
    long e2 = t * (k * (3 * k + 1) / 2);
    int s = (k % 2 == 0) ? 1 : -1;
    if (e1 >= N)
      break;
    g.emplace_back(e1, s);
    if (e2 < N)
      g.emplace_back(e2, s);
  }
  std::sort(g.begin(), g.end());
  return g;
}

QSeries eta_series(long N) {
  QSeries r(0, N);
  for (auto [e, s] : eta_sparse(1, N))
    r.set_coeff(e, s);
  return r;
}

QSeries mul_sparse(const QSeries &f, const std::vector<std::pair<long, int>> &g) {
  QSeries r(f.val(), f.trunc());
  for (long n = f.val(); n < f.trunc(); n++) {
    mpq_class acc = 0;
    for (auto [e, s] : g) {
      long m = n - e;
      if (m < f.val())
        break; // exponents are sorted ascending
      if (s > 0)
        acc += f.coeff(m);
      else
        acc -= f.coeff(m);
    }
    r.set_coeff(n, acc);
  }
  return r;
}

QSeries div_sparse(const QSeries &f, const std::vector<std::pair<long, int>> &g) {
  if (g.empty() || g[0].first != 0 || g[0].second != 1)
    throw series_error("sparse divisor must have constant term 1");
  QSeries r(f.val(), f.trunc());
  for (long n = f.val(); n < f.trunc(); n++) {
    mpq_class acc = f.coeff(n);
    for (size_t i = 1; i < g.size(); i++) {
      long m = n - g[i].first;
      if (m < f.val())
        break;
      if (g[i].second > 0)
        acc -= r.coeff(m);
      else
        acc += r.coeff(m);
    }
    r.set_coeff(n, acc);
  }
  return r;
}

QSeries theta0(long N) {
  QSeries r(0, N);
  r.set_coeff(0, 1);
  for (long n = 1; n * n < N; n++)
    r.set_coeff(n * n, 2);
  return r;
}

int64_t sigma1(int64_t n) {
  if (n < 1)
    return 0;
  int64_t s = 0;
  for (int64_t a = 1; a * a <= n; a++) {
    if (n % a != 0)
      continue;
    s += a;
    if (a != n / a)
      s += n / a;
  }
  return s;
}

int64_t sigma1_p(int64_t n, int p) {
  if (n < 1)
    return 0;
  int64_t s = 0;
  for (int64_t a = 1; a * a <= n; a++) {
    if (n % a != 0)
      continue;
    if (a % p != 0)
      s += a;
    int64_t b = n / a;
    if (b != a && b % p != 0)
      s += b;
  }
  return s;
}

QSeries eisenstein_E2(long N) {
  QSeries r(0, N);
  r.set_coeff(0, 1);
  for (long n = 1; n < N; n++)
    r.set_coeff(n, mpq_class(-24) * sigma1(n));
  return r;
}

QSeries eisenstein_E2_p(int p, long N) {
  if (p < 2)
    throw domain_error("E2^(p) needs p >= 2");
  QSeries e2 = eisenstein_E2(N);
  QSeries r = (V_t(e2, p).truncated(N) * mpq_class(p) - e2) * mpq_class(1, p - 1);
  return r;
}

QSeries eta_quotient(const EtaQuotientSpec &spec, long N) {
  if (spec.terms.empty())
    throw domain_error("eta quotient needs at least one term");

  std::vector<long> offsets;
  for (const EtaTerm &term : spec.terms) {
    mpq_class off = 0;
    for (auto [t, e] : term.factors) {
      mpq_class part(t * e, 24);
      part.canonicalize();
      off += part;
    }
    if (off.get_den() != 1)
      throw domain_error("eta quotient q-power offset is not an integer");
    offsets.push_back(static_cast<long>(off.get_num().get_si()));
  }
  long min_off = *std::min_element(offsets.begin(), offsets.end());

  QSeries sum(min_off, N);
  for (size_t i = 0; i < spec.terms.size(); i++) {
    long off = offsets[i];
    long W = N - off; // expansion length needed before the q^off shift
    QSeries body(0, W);
    body.set_coeff(0, 1);
    for (auto [t, e] : spec.terms[i].factors) {
      auto sp = eta_sparse(t, W);
      for (long k = 0; k < std::labs(e); k++)
        body = e > 0 ? mul_sparse(body, sp) : div_sparse(body, sp);
    }
    for (long n = 0; n < W; n++)
      sum.set_coeff(n + off, sum.coeff(n + off) + body.coeff(n) * spec.terms[i].scalar);
  }
  if (spec.constant != 0) {
    if (min_off > 0 || N <= 0)
      throw domain_error("additive constant outside the expansion window");
    sum.set_coeff(0, sum.coeff(0) + spec.constant);
  }
  return sum;
}

} // namespace hm
