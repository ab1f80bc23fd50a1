#pragma once

// Reduction of real systems to real Turrittin-Ramis-Sibuya normal forms; every payload stays in the
// real tower.

#include <string>
#include <vector>

#include "turrittin/reduce_complex.hpp"

namespace turrittin {

// Units of a real exponential part: single indices with a real diagonal entry, or consecutive
// pairs (j, j+1) carrying a 2x2 block theta(d) with d non-real in some coefficient.
std::vector<std::vector<int>> real_units(const std::vector<Matrix>& d, int n);

// Reads a system assumed to be in real TRS form. blocks lists the index sets of equal exponential
// entries (pairs for theta blocks); real_size counts the leading real units.
NormalForm read_real_normal_form(const System& b, long mu);
// True when the index set is made of theta pairs.
bool is_theta_block(const NormalForm& nf, const std::vector<int>& idx);

// k < q and Spec(A_k) = {a +- ib}, b != 0: regular real gauge of degree <= mu - k making every
// coefficient through relative order mu a C-matrix.
GaugeResult propagate_c_structure(const System& a, long mu);

Rank0Result rtrs_rank0(const System& a);
std::vector<Matrix> real_eliminate_offdiagonal(const System& a, long q, long mu);
TailResult real_eliminate_tail(const System& a, long mu);
DeresonateResult real_deresonate(const System& a);
long real_deresonation_rounds(const NormalForm& nf);
FormalNormalForm real_formal_normal_form(const System& a, long precision);

std::string real_symbolic_solution(const NormalForm& nf);

}  // namespace turrittin
