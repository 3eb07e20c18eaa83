#include "hauptmodul/traces.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <tuple>
#include <utility>

#include "hauptmodul/forms.hpp"
#include "hauptmodul/parallel.hpp"

namespace hm {

namespace {

void validate_level_args(int p, bool starred, int m) {
  if (p != 1 && p != 2 && p != 3 && p != 5)
    throw domain_error("level must be one of 1, 2, 3, 5");
  if (p == 1 && !starred)
    throw domain_error("level 1 exists only in the starred normalization");
  if (m < 1)
    throw domain_error("trace index m must be positive");
}

const FaberPoly &faber_cached(int p, int m) {
  static std::map<std::pair<int, int>, FaberPoly> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lk(mu);
  auto key = std::make_pair(p, m);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, faber(Level{p, true}, m)).first;
  return it->second;
}

struct ClassSummand {
  QuadForm rep;
  int stab;
};

std::vector<ClassSummand> class_list(int p, bool starred, int64_t d, int beta) {
  std::vector<ClassSummand> out;
  if (p == 1) {
    for (const QuadForm &q : enumerate_sl2_classes(d))
      out.push_back({q, int(automorphs(q).size())});
  } else if (starred) {
    for (const FormClass &c : gamma0star_classes(d, p))
      out.push_back({c.rep, c.stabilizer_order});
  } else {
    for (const FormClass &c : gamma0_classes(d, p, beta))
      out.push_back({c.rep, c.stabilizer_order});
  }
  if (out.empty())
    throw series_error("empty class list for a valid discriminant");
  return out;
}

CBall list_sum(int p, int m, const std::vector<ClassSummand> &cs, mpfr_prec_t bits) {
  const FaberPoly &phi = faber_cached(p, m);
  const Level lv{p, true};
  CBall acc = CBall::exact(0, 0, bits);
  for (const auto &c : cs) {
    CBall v = evaluate_faber(phi, eval_hauptmodul_star(lv, c.rep, bits));
    acc = add(acc, mul_q(v, mpq_class(1, c.stab)));
  }
  return acc;
}

struct RoundedBall {
  mpz_class v;
  double res;
  bool ok;
};

RoundedBall round_ball(const CBall &x) {
  Rounding r = round_to_integer(x.re);
  const double imag = std::abs(x.im.mid_d()) + x.im.rad_d();
  const double res = std::max(r.residual, imag);
  return {std::move(r.value), res, res < 0.1};
}

TraceValue cm_trace(int p, bool starred, int m, int64_t d, const DiscCheck &dc,
                    const PrecisionBudget &budget) {
  std::vector<std::vector<ClassSummand>> lists;
  if (starred || p == 1) {
    lists.push_back(class_list(p, starred, d, 0));
  } else {
    for (int beta : dc.betas)
      lists.push_back(class_list(p, false, d, beta));
  }

  mpfr_prec_t bits = std::max<mpfr_prec_t>(budget.working_bits, suggest_precision(p, m, d));
  for (;; bits *= 2) {
    if (bits > budget.ceiling_bits)
      throw precision_exceeded("trace residual failed the rounding gate at the precision ceiling");
    bool pass = true;
    mpz_class v0;
    double worst = 0;
    for (size_t i = 0; i < lists.size(); ++i) {
      RoundedBall r = round_ball(list_sum(p, m, lists[i], bits));
      worst = std::max(worst, r.res);
      if (!r.ok) {
        pass = false;
        break;
      }
      if (i == 0)
        v0 = std::move(r.v);
      else if (r.v != v0)
        throw series_error("unstarred trace differs between beta sectors");
    }
    if (pass)
      return {p, starred, m, d, std::move(v0), TraceProvenance::cm_sum, worst, bits};
  }
}

} // namespace

mpz_class special_value(int p, bool starred, int m, int64_t d) {
  validate_level_args(p, starred, m);
  if (d > 0)
    throw domain_error("special values exist only for d <= 0");

  mpz_class base = 0;
  if (d == 0) {
    base = sigma1(m);
    if (p == 1)
      base += sigma1(m);
    else if (m % p == 0)
      base += p * sigma1(m / p);
  } else {
    mpz_class s;
    mpz_sqrt(s.get_mpz_t(), mpz_class(-d).get_mpz_t());
    const long k = long(s.get_si());
    if (int64_t(k) * k == -d && m % k == 0)
      base = -k;
  }
  if (m == 2 && p >= 2) {
    const mpz_class expect = d == 0 ? (p == 2 ? 5 : 3) : d == -1 ? -1 : d == -4 ? -2 : 0;
    if (base != expect)
      throw series_error("special value disagrees with its closed form");
  }
  if (!starred) {
    const int64_t r = ((-d) % (4 * p) + 4 * p) % (4 * p);
    if (r == 0 || r == int64_t(p) * p % (4 * p))
      base *= 2;
  }
  return base;
}

TraceValue trace(int p, bool starred, int m, int64_t d, const PrecisionBudget &budget) {
  validate_level_args(p, starred, m);
  if (d <= 0)
    throw domain_error("trace requires d > 0; special_value covers d <= 0");
  const DiscCheck dc = discriminant_ok(d, p);
  if (!dc.ok)
    return {p, starred, m, d, 0, TraceProvenance::zero_nonsquare, 0, 0};

  using Key = std::tuple<int, int, int, int64_t>;
  static std::map<Key, TraceValue> cache;
  static std::mutex mu;
  const Key key{p, starred, m, d};
  {
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(key);
    if (it != cache.end())
      return it->second;
  }
  TraceValue t = cm_trace(p, starred, m, d, dc, budget);
  std::lock_guard<std::mutex> lk(mu);
  return cache.emplace(key, std::move(t)).first->second;
}

mpz_class trace_any(int p, bool starred, int m, int64_t d, const PrecisionBudget &budget) {
  if (d <= 0)
    return special_value(p, starred, m, d);
  return trace(p, starred, m, d, budget).value;
}

std::string TraceTable::csv() const {
  std::ostringstream os;
  os << "d";
  for (int m = 1; m <= m_max; ++m)
    os << ",t" << m << "_star";
  for (int m = 1; m <= m_max; ++m)
    os << ",t" << m;
  os << "\n";
  for (const Row &r : rows) {
    os << r.d;
    for (const auto &v : r.starred)
      os << "," << v;
    for (const auto &v : r.unstarred)
      os << "," << v;
    os << "\n";
  }
  return os.str();
}

TraceTable trace_table(int p, int m_max, int64_t d_max, int threads, const PrecisionBudget &budget) {
  if (p != 2 && p != 3 && p != 5)
    throw domain_error("trace tables are rendered for p in {2, 3, 5}");
  if (m_max < 1)
    throw domain_error("table needs at least one trace column");

  TraceTable t;
  t.p = p;
  t.m_max = m_max;
  t.d_max = d_max;
  std::vector<int64_t> ds;
  for (int64_t d = -4; d <= d_max; ++d)
    if (discriminant_ok(d, p).ok)
      ds.push_back(d);
  t.rows.resize(ds.size());
  parallel_for(long(ds.size()), threads, [&](long i) {
    const int64_t d = ds[size_t(i)];
    TraceTable::Row &r = t.rows[size_t(i)];
    r.d = d;
    for (int m = 1; m <= m_max; ++m) {
      r.starred.push_back(d <= 0 ? special_value(p, true, m, d) : trace(p, true, m, d, budget).value);
      r.unstarred.push_back(d <= 0 ? special_value(p, false, m, d)
                                   : trace(p, false, m, d, budget).value);
    }
  });
  return t;
}

QSeries g_series(int p, int m, long N, int threads, const PrecisionBudget &budget) {
  if (p != 2 && p != 3 && p != 5)
    throw domain_error("the generating series is assembled for p in {2, 3, 5}");
  validate_level_args(p, true, m);
  if (N < 1)
    throw domain_error("series window must reach q^0");

  QSeries g(-long(m) * m, N);
  for (long k = 1; k <= m; ++k)
    if (m % k == 0)
      g.set_coeff(-k * k, mpq_class(-k));
  g.set_coeff(0, mpq_class(special_value(p, true, m, 0)));
  if (m == 2) {
    for (int64_t d : {0, -1, -4})
      if (g.coeff(d) != special_value(p, true, 2, d))
        throw series_error("generating series head disagrees with the closed special values");
  }

  std::vector<mpz_class> vals(size_t(N > 1 ? N - 1 : 0));
  parallel_for(N - 1, threads, [&](long i) { vals[size_t(i)] = trace(p, true, m, i + 1, budget).value; });
  for (long d = 1; d < N; ++d)
    g.set_coeff(d, mpq_class(vals[size_t(d - 1)]));
  return g;
}

} // namespace hm
