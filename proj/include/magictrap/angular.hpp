#pragma once

#include "magictrap/atomdata.hpp"

namespace magictrap {

// All arguments are doubled (2j, 2m). Values are exact Racah sums rounded once to double.
// Malformed input (negative j, j/m parity mismatch, |m| > j) throws DomainError;
// triangle or m-sum violations return 0.
double wigner3j(int two_j1, int two_j2, int two_j3, int two_m1, int two_m2, int two_m3);
double wigner6j(int two_j1, int two_j2, int two_j3, int two_j4, int two_j5, int two_j6);

// <J_j F_j m_j | d_p | J_l F_l m_l> in units of e*a0:
//   d_red * (-1)^(2F_j + J_l + I + m_l) * sqrt((2F_j+1)(2F_l+1))
//         * (F_j 1 F_l; m_j p -m_l) * {J_l J_j 1; F_j F_l I}
// Throws DomainError when the dataset lists no reduced element for the level pair.
double dipole_element(const AtomDataset& ds, const HyperfineState& to, const HyperfineState& from, int p = 0);

}  // namespace magictrap
