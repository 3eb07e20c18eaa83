/* hm: command line access to the Hauptmodul library.
 *
 * Exit codes: 0 success, 1 verification mismatch, 2 usage error,
 * 3 precision ceiling exceeded. */

#include "hauptmodul/asymptotics.hpp"
#include "hauptmodul/errors.hpp"
#include "hauptmodul/hauptmodul.hpp"
#include "hauptmodul/identities.hpp"
#include "hauptmodul/reference_tables.hpp"
#include "hauptmodul/traces.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using json = nlohmann::json;

namespace {

constexpr int schema_version = 1;

struct GlobalOpts {
  std::string format = "text"; // text | json | csv
  std::string out;             // empty = stdout
  int threads = 1;
  long prec_ceiling = 1 << 16;
  bool seed_tables = false;
};

void emit(const GlobalOpts &g, const std::string &body) {
  if (g.out.empty()) {
    std::fputs(body.c_str(), stdout);
    return;
  }
  std::ofstream f(g.out, std::ios::binary);
  if (!f)
    throw hm::domain_error("cannot open output file " + g.out);
  f << body;
}

hm::PrecisionBudget budget_of(const GlobalOpts &g) {
  hm::PrecisionBudget b;
  b.ceiling_bits = g.prec_ceiling;
  return b;
}

std::string json_dump(const json &j) { return j.dump(2) + "\n"; }

/* Deterministic %.17g rendering for doubles destined for reports. */
std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

int require_level(int p, bool allow_level1 = false) {
  if (p == 2 || p == 3 || p == 5 || (allow_level1 && p == 1))
    return p;
  throw CLI::ValidationError("--p", allow_level1 ? "level must be 1, 2, 3 or 5"
                                                 : "level must be 2, 3 or 5");
}

std::string report_text(const hm::VerificationReport &r) {
  std::ostringstream os;
  os << "# " << r.label << " (p = " << r.p << ", indices " << r.lo << ".." << r.hi
     << ")\n";
  for (const std::string &l : r.lines)
    os << l << "\n";
  os << "checked = " << r.checked << "\n";
  os << "mismatches = " << r.mismatch_count << "\n";
  if (r.mismatch_count > 0)
    os << "first mismatch: index " << r.first_index << ": " << r.first_lhs
       << " != " << r.first_rhs << "\n";
  if (r.max_bits > 0)
    os << "max working precision = " << r.max_bits
       << " bits, max residual = " << fmt_double(r.max_residual) << "\n";
  os << "elapsed = " << fmt_double(r.elapsed_s) << " s\n";
  os << (r.ok() ? "OK" : "FAIL") << "\n";
  return os.str();
}

json report_json(const hm::VerificationReport &r, const std::string &command) {
  json j;
  j["schema_version"] = schema_version;
  j["command"] = command;
  j["label"] = r.label;
  j["p"] = r.p;
  j["lo"] = r.lo;
  j["hi"] = r.hi;
  j["checked"] = r.checked;
  j["mismatch_count"] = r.mismatch_count;
  if (r.mismatch_count > 0) {
    j["first_index"] = r.first_index;
    j["first_lhs"] = r.first_lhs;
    j["first_rhs"] = r.first_rhs;
  }
  j["lines"] = r.lines;
  j["max_bits"] = static_cast<long>(r.max_bits);
  j["max_residual"] = r.max_residual;
  j["ok"] = r.ok();
  return j;
}

int finish_report(const GlobalOpts &g, const hm::VerificationReport &r,
                  const std::string &command) {
  if (g.format == "json")
    emit(g, json_dump(report_json(r, command)));
  else
    emit(g, report_text(r));
  return r.ok() ? 0 : 1;
}

/* ---- coeffs ---- */

int run_coeffs(const GlobalOpts &g, int p, bool star, long n_max) {
  hm::Level level{p, p == 1 ? true : star};
  hm::QSeries s = hm::hauptmodul_series(level, n_max + 1);
  std::ostringstream os;
  if (g.format == "csv") {
    os << "n,c\n";
    for (long n = s.val(); n <= n_max; n++)
      os << n << "," << s.coeff(n) << "\n";
  } else if (g.format == "json") {
    json j;
    j["schema_version"] = schema_version;
    j["command"] = "coeffs";
    j["p"] = p;
    j["starred"] = level.starred;
    j["function"] = level.str();
    json arr = json::array();
    for (long n = s.val(); n <= n_max; n++)
      arr.push_back({{"n", n}, {"c", s.coeff(n).get_str()}});
    j["coefficients"] = arr;
    os << json_dump(j);
  } else {
    os << "# " << level.str() << " = 1/q + O(q), coefficients up to n = "
       << n_max << "\n";
    for (long n = s.val(); n <= n_max; n++)
      os << "c(" << n << ") = " << s.coeff(n) << "\n";
  }
  emit(g, os.str());
  return 0;
}

/* ---- trace ---- */

const char *provenance_name(hm::TraceProvenance pr) {
  switch (pr) {
  case hm::TraceProvenance::special_value:
    return "special_value";
  case hm::TraceProvenance::cm_sum:
    return "cm_sum";
  default:
    return "zero_nonsquare";
  }
}

int run_trace(const GlobalOpts &g, int p, bool star, int m, int64_t d) {
  hm::TraceValue t;
  if (d > 0) {
    t = hm::trace(p, star, m, d, budget_of(g));
  } else {
    t.p = p;
    t.starred = star;
    t.m = m;
    t.d = d;
    t.value = hm::special_value(p, star, m, d);
    t.provenance = hm::TraceProvenance::special_value;
  }
  std::string fn = "t_" + std::to_string(m) + "^(" + std::to_string(p) +
                   (star ? "*" : "") + ")(" + std::to_string(d) + ")";
  if (g.format == "json") {
    json j;
    j["schema_version"] = schema_version;
    j["command"] = "trace";
    j["p"] = p;
    j["starred"] = star;
    j["m"] = m;
    j["d"] = d;
    j["value"] = t.value.get_str();
    j["provenance"] = provenance_name(t.provenance);
    if (t.provenance == hm::TraceProvenance::cm_sum) {
      j["residual"] = t.residual;
      j["bits"] = static_cast<long>(t.bits_used);
    }
    emit(g, json_dump(j));
  } else if (g.format == "csv") {
    std::ostringstream os;
    os << "p,starred,m,d,value\n"
       << p << "," << (star ? 1 : 0) << "," << m << "," << d << "," << t.value
       << "\n";
    emit(g, os.str());
  } else {
    std::ostringstream os;
    os << fn << " = " << t.value << "\n";
    os << "provenance = " << provenance_name(t.provenance) << "\n";
    if (t.provenance == hm::TraceProvenance::cm_sum)
      os << "residual = " << fmt_double(t.residual) << "\nbits = " << t.bits_used
         << "\n";
    emit(g, os.str());
  }
  return 0;
}

/* ---- table ---- */

int run_table(const GlobalOpts &g, int p, int64_t d_max) {
  hm::TraceTable t = hm::trace_table(p, 2, d_max, g.threads, budget_of(g));
  if (g.format == "json") {
    json j;
    j["schema_version"] = schema_version;
    j["command"] = "table";
    j["p"] = p;
    j["d_max"] = d_max;
    json rows = json::array();
    for (const auto &r : t.rows) {
      json row;
      row["d"] = r.d;
      json st = json::array(), un = json::array();
      for (const auto &v : r.starred)
        st.push_back(v.get_str());
      for (const auto &v : r.unstarred)
        un.push_back(v.get_str());
      row["t_star"] = st;
      row["t"] = un;
      rows.push_back(row);
    }
    j["rows"] = rows;
    emit(g, json_dump(j));
  } else {
    emit(g, t.csv()); // text and csv share the tabular layout
  }
  return 0;
}

/* ---- faber ---- */

int run_faber(const GlobalOpts &g, int p, bool star, int m) {
  hm::Level level{p, p == 1 ? true : star};
  hm::FaberPoly poly = hm::faber(level, m);
  if (g.format == "json") {
    json j;
    j["schema_version"] = schema_version;
    j["command"] = "faber";
    j["p"] = p;
    j["starred"] = level.starred;
    j["m"] = m;
    json arr = json::array();
    for (const auto &c : poly.coeff)
      arr.push_back(c.get_str());
    j["coefficients"] = arr;
    emit(g, json_dump(j));
  } else if (g.format == "csv") {
    std::ostringstream os;
    os << "k,coeff\n";
    for (size_t k = 0; k < poly.coeff.size(); k++)
      os << k << "," << poly.coeff[k] << "\n";
    emit(g, os.str());
  } else {
    std::ostringstream os;
    os << "# phi_" << m << " as a polynomial in " << level.str()
       << ", ascending powers\n";
    for (size_t k = 0; k < poly.coeff.size(); k++)
      os << "a(" << k << ") = " << poly.coeff[k] << "\n";
    emit(g, os.str());
  }
  return 0;
}

/* ---- asym ---- */

int run_asym(const GlobalOpts &g, int p, const std::string &grid_arg) {
  std::vector<long> grid;
  std::stringstream ss(grid_arg);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty())
      grid.push_back(std::stol(item));
  if (grid.empty())
    throw CLI::ValidationError("--grid", "needs a comma separated list of n");
  hm::ConvergenceReport r = hm::convergence_report(p, grid);
  if (g.format == "csv") {
    emit(g, r.csv());
  } else if (g.format == "json") {
    json j;
    j["schema_version"] = schema_version;
    j["command"] = "asym";
    j["p"] = p;
    json rows = json::array();
    for (const auto &row : r.rows)
      rows.push_back({{"n", row.n},
                      {"residue", row.residue},
                      {"exact", row.exact.get_str()},
                      {"predicted", row.predicted},
                      {"ratio", row.ratio}});
    j["rows"] = rows;
    json trend = json::array();
    for (size_t k = 0; k < r.err_non_increasing.size(); k++)
      trend.push_back((bool)r.err_non_increasing[k]);
    j["err_non_increasing"] = trend;
    emit(g, json_dump(j));
  } else {
    std::ostringstream os;
    os << "# c_n vs asymptotic prediction, p = " << p << "\n";
    for (const auto &row : r.rows) {
      hm::AsymptoticPrediction pr = hm::predict(p, row.n);
      os << "n=" << row.n << " (n mod " << p << " = " << row.residue
         << "): exact = " << row.exact << ", predicted = "
         << fmt_double(row.predicted) << " (constant " << pr.constant.str()
         << "), ratio = " << fmt_double(row.ratio) << "\n";
    }
    for (size_t k = 0; k < r.err_non_increasing.size(); k++)
      os << "|ratio - 1| non-increasing on class " << k << " mod " << p << ": "
         << (r.err_non_increasing[k] ? "yes" : "no") << "\n";
    emit(g, os.str());
  }
  return 0;
}

/* ---- eval-cm ---- */

int run_eval_cm(const GlobalOpts &g, int p, const std::string &form_arg,
                long prec) {
  std::vector<int64_t> abc;
  std::stringstream ss(form_arg);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty())
      abc.push_back(std::stoll(item));
  if (abc.size() != 3)
    throw CLI::ValidationError("--form", "expects a,b,c");
  hm::QuadForm q{abc[0], abc[1], abc[2]};
  if (!q.positive_definite())
    throw CLI::ValidationError("--form", "form must be positive definite");
  int a_mod = p == 1 ? 1 : p;
  if (q.a % a_mod != 0)
    throw CLI::ValidationError("--form", "leading coefficient must be divisible by p");
  hm::Level level{p, true};
  hm::CBall v = hm::eval_hauptmodul_star(level, q, prec);
  if (g.format == "json") {
    json j;
    j["schema_version"] = schema_version;
    j["command"] = "eval-cm";
    j["p"] = p;
    j["form"] = {q.a, q.b, q.c};
    j["bits"] = prec;
    j["re"] = v.re.str();
    j["re_radius"] = v.re.rad_d();
    j["im"] = v.im.str();
    j["im_radius"] = v.im.rad_d();
    emit(g, json_dump(j));
  } else {
    std::ostringstream os;
    os << level.str() << "(alpha_[" << q.a << "," << q.b << "," << q.c
       << "]) at " << prec << " bits\n";
    os << "re = " << v.re.str() << "\n";
    os << "im = " << v.im.str() << "\n";
    emit(g, os.str());
  }
  return 0;
}

/* ---- seed-tables ---- */

int run_seed_tables(const GlobalOpts &g) {
  std::string dir = g.out.empty() ? "." : g.out;
  for (int p : {2, 3, 5}) {
    std::string path = dir + "/reference_table_p" + std::to_string(p) + ".csv";
    std::ofstream f(path, std::ios::binary);
    if (!f)
      throw hm::domain_error("cannot open output file " + path);
    f << hm::reference::trace_csv(p);
    std::printf("wrote %s\n", path.c_str());
  }
  return 0;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Hauptmodul coefficients, singular-moduli traces and "
               "asymptotics for Gamma0(p), p in {2, 3, 5}"};
  app.require_subcommand(0, 1);

  GlobalOpts g;
  app.add_option("--format", g.format, "output format")
      ->check(CLI::IsMember({"text", "json", "csv"}))
      ->capture_default_str();
  app.add_option("--out", g.out, "write output to this file (seed-tables: directory)");
  app.add_option("--threads", g.threads, "worker threads for d/n sweeps")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--prec-ceiling", g.prec_ceiling,
                 "max working precision in bits before giving up")
      ->check(CLI::Range(128L, 1L << 24))
      ->capture_default_str();
  app.add_flag("--seed-tables", g.seed_tables,
               "write the three published reference trace tables as CSV and exit");

  // coeffs
  auto *coeffs = app.add_subcommand("coeffs", "Fourier coefficients of a Hauptmodul")->fallthrough();
  int co_p = 2;
  bool co_star = false;
  long co_nmax = 10;
  coeffs->add_option("--p", co_p, "level (1, 2, 3 or 5)")->required();
  coeffs->add_flag("--star", co_star, "Fricke-invariant variant j_p*");
  coeffs->add_option("--n-max", co_nmax, "last coefficient index")
      ->required()
      ->check(CLI::PositiveNumber);

  // trace
  auto *trace = app.add_subcommand("trace", "one modular trace value")->fallthrough();
  int tr_p = 2, tr_m = 1;
  bool tr_star = false;
  int64_t tr_d = 0;
  trace->add_option("--p", tr_p, "level (2, 3 or 5)")->required();
  trace->add_flag("--star", tr_star, "trace over Gamma0*(p) classes");
  trace->add_option("--m", tr_m, "Faber index m >= 1")->required()->check(CLI::PositiveNumber);
  trace->add_option("--d", tr_d, "discriminant argument (t(d) for -d)")->required();

  // table
  auto *table = app.add_subcommand("table", "trace table in the published layout")->fallthrough();
  int tb_p = 2;
  int64_t tb_dmax = 50;
  table->add_option("--p", tb_p, "level (2, 3 or 5)")->required();
  table->add_option("--d-max", tb_dmax, "largest discriminant")->required();

  // faber
  auto *faber = app.add_subcommand("faber", "Faber polynomial coefficients")->fallthrough();
  int fa_p = 2, fa_m = 1;
  bool fa_star = false;
  faber->add_option("--p", fa_p, "level (1, 2, 3 or 5)")->required();
  faber->add_flag("--star", fa_star, "polynomial in j_p*");
  faber->add_option("--m", fa_m, "Faber index m >= 1")->required()->check(CLI::PositiveNumber);

  // verify
  auto *verify = app.add_subcommand("verify", "coefficient and identity suites")->fallthrough();
  verify->require_subcommand(1);
  auto *thm1 = verify->add_subcommand("thm1", "trace formula vs eta-quotient coefficients")->fallthrough();
  int v1_p = 3;
  long v1_nmax = 10;
  thm1->add_option("--p", v1_p, "level (1, 2, 3 or 5)")->required();
  thm1->add_option("--n-max", v1_nmax, "check 1 <= n <= n-max")
      ->required()
      ->check(CLI::PositiveNumber);
  auto *sectors = verify->add_subcommand("sectors", "weight-2 sector identities")->fallthrough();
  int vs_p = 3;
  long vs_window = 600;
  bool vs_full = false;
  sectors->add_option("--p", vs_p, "level (2, 3 or 5)")->required();
  sectors->add_option("--window", vs_window, "compare coefficients of q^-1..q^(window-1)")
      ->check(CLI::PositiveNumber);
  sectors->add_flag("--full-sturm", vs_full,
                    "use the full Sturm-bound window (3960 at p = 3, scaled by "
                    "p^2/9 otherwise); long-running");
  auto *star = verify->add_subcommand("star", "j_p* = j_p - p (j_p | U_p)")->fallthrough();
  int vst_p = 3;
  long vst_window = 500;
  star->add_option("--p", vst_p, "level (2, 3 or 5)")->required();
  star->add_option("--window", vst_window, "compare coefficients of q^-1..q^(window-1)")
      ->check(CLI::PositiveNumber);

  // asym
  auto *asym = app.add_subcommand("asym", "exact coefficients vs asymptotic prediction")->fallthrough();
  int as_p = 3;
  std::string as_grid;
  asym->add_option("--p", as_p, "level (2, 3 or 5)")->required();
  asym->add_option("--grid", as_grid, "comma separated n values")->required();

  // eval-cm
  auto *evalcm = app.add_subcommand("eval-cm", "numeric value of j_p* at a CM point")->fallthrough();
  int ec_p = 3;
  std::string ec_form;
  long ec_prec = 128;
  evalcm->add_option("--p", ec_p, "level (1, 2, 3 or 5)")->required();
  evalcm->add_option("--form", ec_form, "quadratic form a,b,c")->required();
  evalcm->add_option("--prec", ec_prec, "working precision in bits")
      ->check(CLI::Range(64L, 1L << 24));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return 2;
  }

  try {
    if (g.seed_tables)
      return run_seed_tables(g);
    if (app.get_subcommands().empty()) {
      std::fputs(app.help().c_str(), stderr);
      return 2;
    }
    if (*coeffs)
      return run_coeffs(g, require_level(co_p, true), co_star, co_nmax);
    if (*trace)
      return run_trace(g, require_level(tr_p), tr_star, tr_m, tr_d);
    if (*table)
      return run_table(g, require_level(tb_p), tb_dmax);
    if (*faber)
      return run_faber(g, require_level(fa_p, true), fa_star, fa_m);
    if (*thm1) {
      hm::VerificationReport r =
          hm::verify_theorem1(require_level(v1_p, true), v1_nmax, g.threads, budget_of(g));
      return finish_report(g, r, "verify thm1");
    }
    if (*sectors) {
      long window = vs_full ? (3960 * vs_p * vs_p + 8) / 9 : vs_window;
      hm::VerificationReport r = hm::verify_weight2_sectors(
          require_level(vs_p), window, g.threads, budget_of(g));
      return finish_report(g, r, "verify sectors");
    }
    if (*star) {
      hm::VerificationReport r =
          hm::verify_star_relation(require_level(vst_p), vst_window);
      return finish_report(g, r, "verify star");
    }
    if (*asym)
      return run_asym(g, require_level(as_p), as_grid);
    if (*evalcm)
      return run_eval_cm(g, require_level(ec_p, true), ec_form, ec_prec);
    std::fputs(app.help().c_str(), stderr);
    return 2;
  } catch (const CLI::ValidationError &e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const hm::precision_exceeded &e) {
    std::fprintf(stderr, "precision ceiling exceeded: %s\n", e.what());
    return 3;
  } catch (const hm::domain_error &e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument &e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception &e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
