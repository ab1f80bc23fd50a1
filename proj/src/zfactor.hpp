#pragma once

#include <vector>

#include <gmpxx.h>

namespace turrittin::detail {

using ZPoly = std::vector<mpz_class>;  // low degree first

// Irreducible factors in Z[x] of a squarefree integer polynomial, each primitive
// with positive leading coefficient (content and sign are dropped).
std::vector<ZPoly> factor_squarefree_z(const ZPoly& f);

}  // namespace turrittin::detail
