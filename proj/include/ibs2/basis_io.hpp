#pragma once
#include <string>

#include "ibs2/pswf.hpp"

namespace ibs2 {

// JSON round trip for a retained basis. Doubles survive exactly (shortest
// round-trip representation), so a cached basis reproduces the in-process
// build bit for bit.
std::string basis_to_json(const PswfBasis& basis);
PswfBasis basis_from_json(const std::string& text, const std::string& origin);

// Cache file name for a basis built at bandwidth c and retention alpha_tilde
// on a (T, M) node set.
std::string basis_cache_name(double c, double alpha_tilde, int T, int M);

}  // namespace ibs2
