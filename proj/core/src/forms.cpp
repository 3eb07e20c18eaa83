#include "hauptmodul/forms.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <tuple>

namespace hm {

namespace {

int64_t floor_div(int64_t a, int64_t b) {
  int64_t q = a / b, r = a % b;
  return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
}

int64_t gcd64(int64_t a, int64_t b) { return std::gcd(std::abs(a), std::abs(b)); }

/* Largest r with r^2 <= n, exact. */
int64_t isqrt(int64_t n) {
  if (n < 0)
    return -1;
  auto r = static_cast<int64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n)
    r--;
  while ((r + 1) * (r + 1) <= n)
    r++;
  return r;
}

bool is_square(int64_t n, int64_t *root = nullptr) {
  if (n < 0)
    return false;
  int64_t r = isqrt(n);
  if (root)
    *root = r;
  return r * r == n;
}

/* b shifted by translations into (-a, a], with c kept consistent. */
QuadForm normalize_b(QuadForm q) {
  int64_t k = floor_div(q.a - q.b, 2 * q.a);
  return {q.a, q.b + 2 * q.a * k, q.a * k * k + q.b * k + q.c};
}

/* P^1(F_p) indexing: i in [0, p) is [i : 1], p is [1 : 0]. */
int p1_index(int64_t x, int64_t y, int p) {
  x = ((x % p) + p) % p;
  y = ((y % p) + p) % p;
  if (y == 0)
    return p;
  // y^(p-2) = y^-1 mod p for prime p
  int64_t inv = 1, base = y, e = p - 2;
  while (e > 0) {
    if (e & 1)
      inv = inv * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return static_cast<int>(x * inv % p);
}

std::pair<int64_t, int64_t> p1_lift(int idx, int p) {
  if (idx == p)
    return {1, 0};
  return {idx, 1};
}

std::vector<int> conic_zeros(const QuadForm &q, int p) {
  std::vector<int> z;
  for (int idx = 0; idx <= p; idx++) {
    auto [x, y] = p1_lift(idx, p);
    if (((q.eval(x, y) % p) + p) % p == 0)
      z.push_back(idx);
  }
  return z;
}

int act_p1(const Mat2 &g, int idx, int p) {
  auto [x, y] = p1_lift(idx, p);
  return p1_index(g.m11 * x + g.m12 * y, g.m21 * x + g.m22 * y, p);
}

/* Orbits of the automorph group on a zero set; each orbit reported as
 * (smallest member, orbit size). */
std::vector<std::pair<int, int>> aut_orbits(const std::vector<Mat2> &auts,
                                            const std::vector<int> &zeros, int p) {
  std::vector<std::pair<int, int>> orbits;
  std::vector<bool> seen(zeros.size(), false);
  for (size_t i = 0; i < zeros.size(); i++) {
    if (seen[i])
      continue;
    int lo = zeros[i], size = 0;
    for (const Mat2 &g : auts) {
      int img = act_p1(g, zeros[i], p);
      auto it = std::find(zeros.begin(), zeros.end(), img);
      if (it == zeros.end())
        throw domain_error("automorph image left the zero set");
      size_t j = static_cast<size_t>(it - zeros.begin());
      if (!seen[j]) {
        seen[j] = true;
        size++;
        lo = std::min(lo, img);
      }
    }
    orbits.emplace_back(lo, size);
  }
  std::sort(orbits.begin(), orbits.end());
  return orbits;
}

/* Representative of the class over coset point idx within the SL2-class
 * of q0: q0 composed with a matrix whose first column lifts idx. */
QuadForm class_representative(const QuadForm &q0, int idx, int p) {
  QuadForm s;
  if (idx == p) {
    s = q0;
  } else {
    Mat2 g{idx, -1, 1, 0};
    s = apply(q0, g);
  }
  if (s.a % p != 0)
    throw domain_error("coset point is not a zero of the form");
  return normalize_b(s);
}

} // namespace

int64_t QuadForm::content() const { return gcd64(gcd64(a, b), c); }

std::string QuadForm::str() const {
  return "[" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + "]";
}

Mat2 Mat2::mul(const Mat2 &o) const {
  return {m11 * o.m11 + m12 * o.m21, m11 * o.m12 + m12 * o.m22,
          m21 * o.m11 + m22 * o.m21, m21 * o.m12 + m22 * o.m22};
}

Mat2 Mat2::inverse() const {
  if (det() != 1)
    throw domain_error("only determinant-1 matrices are inverted");
  return {m22, -m12, -m21, m11};
}

QuadForm apply(const QuadForm &q, const Mat2 &g) {
  int64_t a = q.eval(g.m11, g.m21);
  int64_t c = q.eval(g.m12, g.m22);
  int64_t b = 2 * (q.a * g.m11 * g.m12 + q.c * g.m21 * g.m22) +
              q.b * (g.m11 * g.m22 + g.m12 * g.m21);
  return {a, b, c};
}

DiscCheck discriminant_ok(int64_t d, int p) {
  DiscCheck r;
  for (int beta = 0; beta < 2 * p; beta++)
    if (((beta * beta + d) % (4 * p) + 4 * p) % (4 * p) == 0)
      r.betas.push_back(beta);
  r.ok = !r.betas.empty();
  return r;
}

QuadForm sl2_reduce(const QuadForm &q, Mat2 *g) {
  if (!q.positive_definite())
    throw domain_error("sl2_reduce needs a positive definite form");
  QuadForm f = q;
  Mat2 acc{};
  for (;;) {
    int64_t k = floor_div(f.a - f.b, 2 * f.a);
    if (k != 0) {
      Mat2 t{1, k, 0, 1};
      f = apply(f, t);
      acc = acc.mul(t);
    }
    if (f.a > f.c || (f.a == f.c && f.b < 0)) {
      Mat2 s{0, -1, 1, 0};
      f = apply(f, s);
      acc = acc.mul(s);
      continue;
    }
    break;
  }
  if (g)
    *g = acc;
  return f;
}

std::vector<QuadForm> enumerate_sl2_classes(int64_t d) {
  std::vector<QuadForm> out;
  if (d <= 0)
    return out;
  int64_t m = d % 4;
  if (m != 0 && m != 3)
    return out;
  for (int64_t b = (d % 2 == 0) ? 0 : 1; 3 * b * b <= d; b += 2) {
    int64_t n = (b * b + d) / 4;
    for (int64_t a = std::max<int64_t>(b, 1); a * a <= n; a++) {
      if (n % a != 0)
        continue;
      int64_t c = n / a;
      out.push_back({a, b, c});
      if (b > 0 && b < a && a < c)
        out.push_back({a, -b, c});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Mat2> automorphs(const QuadForm &q) {
  if (!q.positive_definite())
    throw domain_error("automorphs need a positive definite form");
  int64_t lam = q.content();
  int64_t a = q.a / lam, b = q.b / lam, c = q.c / lam;
  int64_t d0 = 4 * a * c - b * b;
  std::vector<std::pair<int64_t, int64_t>> tu = {{2, 0}};
  if (d0 == 3) {
    tu.emplace_back(1, 1);
    tu.emplace_back(1, -1);
  } else if (d0 == 4) {
    tu.emplace_back(0, 1);
  }
  std::vector<Mat2> out;
  for (auto [t, u] : tu)
    out.push_back({(t - b * u) / 2, -c * u, a * u, (t + b * u) / 2});
  return out;
}

std::vector<FormClass> gamma0_all_classes(int64_t d, int p) {
  if (d <= 0)
    throw domain_error("class enumeration needs d > 0");
  if (!discriminant_ok(d, p).ok)
    throw domain_error("-d is not a square mod 4p");
  std::vector<FormClass> out;
  for (const QuadForm &q0 : enumerate_sl2_classes(d)) {
    std::vector<Mat2> auts = automorphs(q0);
    std::vector<int> zeros = conic_zeros(q0, p);
    for (auto [z, orbit_size] : aut_orbits(auts, zeros, p)) {
      QuadForm rep = class_representative(q0, z, p);
      FormClass fc;
      fc.rep = rep;
      fc.group = FormGroup::Gamma0;
      fc.stabilizer_order = static_cast<int>(auts.size()) / orbit_size;
      fc.beta = static_cast<int>(((rep.b % (2 * p)) + 2 * p) % (2 * p));
      out.push_back(fc);
    }
  }
  std::sort(out.begin(), out.end(), [](const FormClass &x, const FormClass &y) {
    return std::tie(x.beta, x.rep.a, x.rep.b, x.rep.c) <
           std::tie(y.beta, y.rep.a, y.rep.b, y.rep.c);
  });
  return out;
}

std::vector<FormClass> gamma0_classes(int64_t d, int p, int beta) {
  DiscCheck dc = discriminant_ok(d, p);
  if (d <= 0 || !dc.ok)
    throw domain_error("invalid discriminant for class enumeration");
  if (std::find(dc.betas.begin(), dc.betas.end(), beta) == dc.betas.end())
    throw domain_error("beta^2 = -d (mod 4p) fails");
  std::vector<FormClass> out;
  for (const FormClass &fc : gamma0_all_classes(d, p))
    if (fc.beta == beta)
      out.push_back(fc);
  return out;
}

ClassKey class_key(const QuadForm &q, int p) {
  if (!q.positive_definite() || q.a % p != 0)
    throw domain_error("class_key needs a positive definite form with p | a");
  Mat2 g;
  QuadForm r = sl2_reduce(q, &g);
  Mat2 ginv = g.inverse();
  int idx = p1_index(ginv.m11, ginv.m21, p);
  std::vector<Mat2> auts = automorphs(r);
  int lo = idx;
  for (const Mat2 &s : auts)
    lo = std::min(lo, act_p1(s, idx, p));
  return {r, lo};
}

QuadForm fricke_action(const QuadForm &q, int p) {
  if (q.a % p != 0)
    throw domain_error("Fricke action needs p | a");
  return {p * q.c, -q.b, q.a / p};
}

std::vector<FormClass> gamma0star_classes(int64_t d, int p) {
  std::vector<FormClass> classes = gamma0_all_classes(d, p);
  std::map<ClassKey, size_t> index;
  for (size_t i = 0; i < classes.size(); i++)
    index.emplace(class_key(classes[i].rep, p), i);

  std::vector<bool> used(classes.size(), false);
  std::vector<FormClass> out;
  for (size_t i = 0; i < classes.size(); i++) {
    if (used[i])
      continue;
    used[i] = true;
    size_t j = index.at(class_key(fricke_action(classes[i].rep, p), p));
    FormClass fc = classes[i];
    fc.group = FormGroup::Gamma0Star;
    if (j == i) {
      fc.stabilizer_order *= 2;
    } else {
      if (used[j] || classes[j].stabilizer_order != classes[i].stabilizer_order)
        throw domain_error("Fricke pairing is not an involution on classes");
      used[j] = true;
    }
    out.push_back(fc);
  }
  return out;
}

int stabilizer_order(const QuadForm &q, int p, FormGroup group) {
  std::vector<Mat2> auts = automorphs(q);
  if (group == FormGroup::SL2 || p == 1)
    return static_cast<int>(auts.size());
  if (q.a % p != 0)
    throw domain_error("stabilizer in Gamma0(p) needs p | a");
  int n = 0;
  for (const Mat2 &g : auts)
    if (g.m21 % p == 0)
      n++;
  if (group == FormGroup::Gamma0)
    return n;

  // Existence of a Fricke-coset element fixing q: an integer matrix
  // N = ((s - bC)/(2a), -cC/a; C, (s + bC)/(2a)) of determinant p with
  // p | N11, N21, N22, where s^2 = 4p a^2 - d C^2.
  int64_t d = -q.disc();
  bool doubled = false;
  for (int64_t C = p; C * C * d <= 4 * p * q.a * q.a; C += p) {
    int64_t s;
    if (!is_square(4 * p * q.a * q.a - d * C * C, &s))
      continue;
    int64_t bc = q.b * C;
    if ((s - bc) % (2 * q.a) != 0 || (s + bc) % (2 * q.a) != 0 || (q.c * C) % q.a != 0)
      continue;
    int64_t A = (s - bc) / (2 * q.a), D = (s + bc) / (2 * q.a);
    if (A % p == 0 && D % p == 0) {
      doubled = true;
      break;
    }
  }
  return doubled ? 2 * n : n;
}

std::vector<QuadForm> principal_forms(int64_t d, int p) {
  DiscCheck dc = discriminant_ok(d, p);
  if (d <= 0 || !dc.ok)
    throw domain_error("-d is not a square mod 4p");
  std::vector<QuadForm> out;
  for (int beta : dc.betas) {
    int64_t b = beta <= p ? beta : beta - 2 * p;
    out.push_back({p, b, (b * b + d) / (4 * p)});
  }
  std::sort(out.begin(), out.end(),
            [](const QuadForm &x, const QuadForm &y) { return x.b < y.b; });
  return out;
}

bool represents(const QuadForm &q, int64_t value, int64_t y_mod) {
  if (!q.positive_definite() || value <= 0 || y_mod <= 0)
    throw domain_error("representation test needs a positive definite form and value > 0");
  int64_t d = -q.disc();
  // 4a q(x,y) = (2ax + by)^2 + d y^2
  for (int64_t y = 0; d * y * y <= 4 * q.a * value; y += y_mod) {
    int64_t s;
    if (!is_square(4 * q.a * value - d * y * y, &s))
      continue;
    for (int64_t sg : {s, -s}) {
      if ((sg - q.b * y) % (2 * q.a) == 0)
        return true;
      if (sg == 0)
        break;
    }
  }
  return false;
}

bool is_equiv_principal(const QuadForm &q, int64_t d, int p) {
  if (q.disc() != -d || q.a % p != 0)
    throw domain_error("form is not in Q_{d,p}");
  ClassKey k = class_key(q, p);
  ClassKey kw = class_key(fricke_action(q, p), p);
  for (const QuadForm &f : principal_forms(d, p)) {
    ClassKey kf = class_key(f, p);
    if (k == kf || kw == kf)
      return true;
  }
  return false;
}

CMPoint cm_point(const QuadForm &q) {
  if (!q.positive_definite())
    throw domain_error("CM point needs a positive definite form");
  return {-q.b, -q.disc(), 2 * q.a};
}

OrbitPartition orbit_classes_bruteforce(int64_t d, int p, int beta, int64_t bound) {
  OrbitPartition out;
  int64_t b0 = beta;
  while (b0 - 2 * p >= -bound)
    b0 -= 2 * p;
  for (int64_t a = p; a <= bound; a += p)
    for (int64_t b = b0; b <= bound; b += 2 * p) {
      int64_t num = b * b + d;
      if (num <= 0 || num % (4 * a) != 0)
        continue;
      int64_t c = num / (4 * a);
      if (c > bound)
        continue;
      out.forms.push_back({a, b, c});
    }
  std::sort(out.forms.begin(), out.forms.end());

  std::map<QuadForm, int> id;
  for (size_t i = 0; i < out.forms.size(); i++)
    id.emplace(out.forms[i], static_cast<int>(i));

  // Generator moves: T, T^-1, and every determinant-1 matrix with
  // m21 in {+-p, +-2p} and entries bounded by 3p.
  std::vector<Mat2> gens = {{1, 1, 0, 1}, {1, -1, 0, 1}};
  for (int64_t m21 : {static_cast<int64_t>(p), static_cast<int64_t>(-p),
                      static_cast<int64_t>(2 * p), static_cast<int64_t>(-2 * p)})
    for (int64_t m11 = -3 * p; m11 <= 3 * p; m11++)
      for (int64_t m22 = -3 * p; m22 <= 3 * p; m22++) {
        int64_t num = m11 * m22 - 1;
        if (num % m21 != 0)
          continue;
        int64_t m12 = num / m21;
        if (std::abs(m12) <= 3 * p)
          gens.push_back({m11, m12, m21, m22});
      }

  std::vector<int> parent(out.forms.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x)
      x = parent[x] = parent[parent[x]];
    return x;
  };
  for (size_t i = 0; i < out.forms.size(); i++)
    for (const Mat2 &g : gens) {
      auto it = id.find(apply(out.forms[i], g));
      if (it != id.end()) {
        int ri = find(static_cast<int>(i)), rj = find(it->second);
        if (ri != rj)
          parent[std::max(ri, rj)] = std::min(ri, rj);
      }
    }

  out.component.resize(out.forms.size());
  std::map<int, int> remap;
  for (size_t i = 0; i < out.forms.size(); i++) {
    int r = find(static_cast<int>(i));
    auto [it, fresh] = remap.emplace(r, out.component_count);
    if (fresh)
      out.component_count++;
    out.component[i] = it->second;
  }
  return out;
}

} // namespace hm
