#ifndef HAUPTMODUL_REFERENCE_TABLES_HPP
#define HAUPTMODUL_REFERENCE_TABLES_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace hm::reference {

/* Published trace table (-4 <= d <= 50, valid d only), used as fixtures
 * by the test suite and written out by the CLI's --seed-tables. */
struct TableRow {
  int64_t d, t1_star, t2_star, t1, t2;
};

const std::vector<TableRow> &trace_rows(int p);

/* Rows rendered exactly like TraceTable::csv(). */
std::string trace_csv(int p);

/* First positive-index coefficients (n = 1, 2, 3) of each Hauptmodul. */
struct ExpansionHead {
  int p;
  bool starred;
  int64_t c1, c2, c3;
};
const std::vector<ExpansionHead> &expansion_heads();

} // namespace hm::reference

#endif
