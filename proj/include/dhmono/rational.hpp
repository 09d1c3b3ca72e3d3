#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace dhmono {

using Rat = mpq_class;

// Canonical "num/den" text, den always present and positive.
inline std::string rat_to_string(const Rat& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Rat rat_from_string(const std::string& s) {
    Rat q;
    if (q.set_str(s, 10) != 0)
        throw std::invalid_argument("bad rational literal: " + s);
    q.canonicalize();
    return q;
}

} // namespace dhmono
