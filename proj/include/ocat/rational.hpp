// Exact rational scalars. All arithmetic in the library is over Q; there is
// deliberately no floating point anywhere.
#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace ocat {

using Rat = mpq_class;

// mpq_class(p, q) does not canonicalize; this does, and checks q != 0.
inline Rat rat(long p, long q = 1) {
    if (q == 0) throw std::invalid_argument("rat: zero denominator");
    Rat r(p, q);
    r.canonicalize();
    return r;
}

inline bool is_zero(const Rat& r) { return sgn(r) == 0; }

// Accepts "p", "-p", "p/q"; used by the presentation and module file parsers.
inline Rat rat_parse(const std::string& s) {
    Rat r;
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
    r.canonicalize();
    if (r.get_den() <= 0) throw std::invalid_argument("bad rational: " + s);
    return r;
}

inline std::string rat_str(const Rat& r) { return r.get_str(); }

}  // namespace ocat
