#ifndef HAUPTMODUL_FORMS_HPP
#define HAUPTMODUL_FORMS_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "hauptmodul/errors.hpp"

namespace hm {

/* Positive definite integer form a X^2 + b X Y + c Y^2. */
struct QuadForm {
  int64_t a = 0, b = 0, c = 0;

  int64_t disc() const { return b * b - 4 * a * c; } // negative for valid forms
  int64_t eval(int64_t x, int64_t y) const { return a * x * x + b * x * y + c * y * y; }
  int64_t content() const;
  bool positive_definite() const { return a > 0 && disc() < 0; }

  bool operator==(const QuadForm &o) const = default;
  auto operator<=>(const QuadForm &o) const = default;
  std::string str() const;
};

/* Unimodular integer matrix (m11 m12; m21 m22) acting on forms by
 * (Q.g)(x, y) = Q(m11 x + m12 y, m21 x + m22 y). */
struct Mat2 {
  int64_t m11 = 1, m12 = 0, m21 = 0, m22 = 1;
  int64_t det() const { return m11 * m22 - m12 * m21; }
  Mat2 mul(const Mat2 &o) const;
  Mat2 inverse() const; // requires det == 1
};

QuadForm apply(const QuadForm &q, const Mat2 &g);

enum class FormGroup { SL2, Gamma0, Gamma0Star };

struct FormClass {
  QuadForm rep;
  FormGroup group = FormGroup::Gamma0;
  int stabilizer_order = 1; // projective stabilizer
  int beta = 0;             // residue of b mod 2p; meaningful for Gamma0 classes
};

/* Whether -d is a square mod 4p, plus every beta in [0, 2p) with
 * beta^2 = -d (mod 4p). */
struct DiscCheck {
  bool ok = false;
  std::vector<int> betas;
};
DiscCheck discriminant_ok(int64_t d, int p);

/* Unique reduced representative (|b| <= a <= c, b >= 0 when |b| = a or
 * a = c) of the SL2(Z)-class of q.  If g is non-null it receives a matrix
 * with q.g = reduced. */
QuadForm sl2_reduce(const QuadForm &q, Mat2 *g = nullptr);

/* All reduced forms of discriminant -d, imprimitive ones included. */
std::vector<QuadForm> enumerate_sl2_classes(int64_t d);

/* Projective automorphs of q (one matrix per {g, -g} pair, identity first).
 * Size is 3 for primitive discriminant -3, 2 for -4, 1 otherwise. */
std::vector<Mat2> automorphs(const QuadForm &q);

/* One representative per Gamma0(p)-class of forms of discriminant -d with
 * p | a, all beta sectors together, deterministically ordered.  Each
 * SL2-class contributes one class per orbit of its automorph group on the
 * zeros of the form on P^1(F_p); forms with p | content meet all p+1
 * points of P^1(F_p). */
std::vector<FormClass> gamma0_all_classes(int64_t d, int p);

/* The classes of gamma0_all_classes restricted to one beta sector. */
std::vector<FormClass> gamma0_classes(int64_t d, int p, int beta);

/* Key identifying the Gamma0(p)-class of an arbitrary form with p | a:
 * the reduced SL2 representative together with the automorph-orbit of the
 * coset point the form sits over. */
struct ClassKey {
  QuadForm sl2_rep;
  int orbit_point = 0; // smallest P^1(F_p) index in the orbit

  bool operator==(const ClassKey &o) const = default;
  auto operator<=>(const ClassKey &o) const = default;
};
ClassKey class_key(const QuadForm &q, int p);

/* [a, b, c] -> [p c, -b, a / p]; requires p | a.  Involution up to
 * Gamma0(p)-equivalence; maps the beta sector to the -beta sector. */
QuadForm fricke_action(const QuadForm &q, int p);

/* Gamma0(p)-classes of all sectors merged under the Fricke involution:
 * a Fricke-fixed class keeps its representative with doubled stabilizer,
 * a swapped pair fuses into one class. */
std::vector<FormClass> gamma0star_classes(int64_t d, int p);

/* Order of the projective stabilizer of q in the given group.  The
 * Gamma0Star count doubles the Gamma0 one exactly when some element of
 * the Fricke coset fixes q; that is decided by an exact bounded search
 * over integer matrices N of determinant p fixing the root of q. */
int stabilizer_order(const QuadForm &q, int p, FormGroup group);

/* Principal forms [p, b, (b^2 + d) / 4p] of discriminant -d, one per
 * valid residue b mod 2p reduced into (-p, p]. */
std::vector<QuadForm> principal_forms(int64_t d, int p = 3);

/* Whether q(x, y) = value has an integer solution with y_mod | y.
 * Plain representation is y_mod = 1; the level-aware variant (y_mod = p)
 * is the one that is invariant under Gamma0(p) and detects equivalence
 * to a form with leading coefficient p. */
bool represents(const QuadForm &q, int64_t value, int64_t y_mod = 1);

/* Whether q is Gamma0*(p)-equivalent to a principal form, decided by
 * reduction-based class keys (not by the representation search above,
 * so the two predicates can cross-check each other). */
bool is_equiv_principal(const QuadForm &q, int64_t d, int p = 3);

/* alpha_Q = (-b + i sqrt(d)) / (2a), kept symbolic. */
struct CMPoint {
  int64_t minus_b = 0;
  int64_t d = 0;
  int64_t two_a = 0;
};
CMPoint cm_point(const QuadForm &q);

/* Validation path: forms of Q_{d,p,beta} with a, |b|, c <= bound,
 * partitioned into connected components under a fixed Gamma0(p) generator
 * move set.  Independent of the class_key machinery. */
struct OrbitPartition {
  std::vector<QuadForm> forms;          // deterministic order
  std::vector<int> component;           // component[i] for forms[i]
  int component_count = 0;
};
OrbitPartition orbit_classes_bruteforce(int64_t d, int p, int beta, int64_t bound);

} // namespace hm

#endif
