#pragma once

#include <iosfwd>
#include <string>

#include "qcka/params.hpp"

namespace qcka {

// Flat key = value configuration, one entry per line, '#' starts a comment.
// Keys: n, lambda, eta_d, alpha_db_km, distance_km (scalar, symmetric star)
// or distances_km (comma list), y0, e0, ed, f, pz, eps_cor, eps_sec,
// eps_chernoff, pulses. Unset keys keep their defaults.
//
// Parse failures throw std::runtime_error as "<name>:<line>: message".
// The result is not validated; call validate() on it.
SystemParams parse_config(std::istream& in, const std::string& name);
SystemParams load_config(const std::string& path);

}  // namespace qcka
