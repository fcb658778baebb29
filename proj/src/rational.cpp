#include "kmr/rational.hpp"

#include <stdexcept>

namespace kmr {

Rat rat_parse(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  for (char c : s) {
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' ||
          c == '/')) {
      throw std::invalid_argument("bad rational literal: " + s);
    }
  }
  Rat r;
  if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  r.canonicalize();
  return r;
}

Rat rat_floor(const Rat& r) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
  return Rat(q);
}

long rat_to_long(const Rat& r) {
  Rat c = r;
  c.canonicalize();
  if (c.get_den() != 1) throw std::invalid_argument("not an integer: " + rat_str(r));
  if (!c.get_num().fits_slong_p()) throw std::overflow_error("integer too large");
  return c.get_num().get_si();
}

}  // namespace kmr
