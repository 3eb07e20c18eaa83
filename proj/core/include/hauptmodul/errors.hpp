#ifndef HAUPTMODUL_ERRORS_HPP
#define HAUPTMODUL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hm {

/* Requested accuracy could not be certified within the configured
 * precision ceiling. */
struct precision_exceeded : std::runtime_error {
  explicit precision_exceeded(const std::string &what) : std::runtime_error(what) {}
};

/* A series operation produced an empty truncation window, or an exponent
 * outside the known window was accessed. */
struct series_error : std::invalid_argument {
  explicit series_error(const std::string &what) : std::invalid_argument(what) {}
};

/* A trace or form computation received an invalid (d, p, beta) triple, or
 * an exact-integrality postcondition failed. */
struct domain_error : std::invalid_argument {
  explicit domain_error(const std::string &what) : std::invalid_argument(what) {}
};

} // namespace hm

#endif
