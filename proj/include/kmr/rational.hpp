#ifndef KMR_RATIONAL_HPP
#define KMR_RATIONAL_HPP

#include <gmpxx.h>

#include <string>

namespace kmr {

/// Exact rational scalar used throughout; no floating point in the core.
using Rat = mpq_class;

/// Renders a rational as "p/q", or "p" when the denominator is 1.
inline std::string rat_str(const Rat& r) {
  Rat c = r;
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

/// Parses "p", "-p" or "p/q". Throws std::invalid_argument on garbage.
Rat rat_parse(const std::string& s);

/// True iff r is an integer.
inline bool rat_is_integer(const Rat& r) {
  Rat c = r;
  c.canonicalize();
  return c.get_den() == 1;
}

/// Floor of a rational as a Rat.
Rat rat_floor(const Rat& r);

/// Fractional part in [0, 1).
inline Rat rat_frac(const Rat& r) { return r - rat_floor(r); }

/// Rounds an exact integer-valued Rat to long. Throws if not integral.
long rat_to_long(const Rat& r);

}  // namespace kmr

#endif
