#pragma once

// Reduction of systems to Turrittin-Ramis-Sibuya normal forms over the complexified tower.

#include <functional>
#include <string>
#include <vector>

#include "turrittin/const_linalg.hpp"

namespace turrittin {

struct NormalForm {
  int n = 0;
  long q = 0;   // rank of the normal form
  long mu = 0;  // degree
  long r = 1;   // ramification index of the chain producing it
  std::vector<Matrix> D;  // D_0 .. D_{q-1}
  Matrix C;               // residual matrix
  // Index sets on which D is radial (complex forms) or real/complex split data (real forms).
  std::vector<std::vector<int>> blocks;
  int real_size = -1;  // size of the real part D1, C1 in real forms; -1 for complex forms
  System tail;         // B minus its principal part

  // x^-(q+1) (D(x) + x^q C), exact.
  System principal_part() const;
  // Diagonal entries of D as polynomials.
  std::vector<Poly> exponential_entries() const;
};

// Reads q, D, C and the D-block structure from a system assumed to be in TRS form of degree mu.
NormalForm read_normal_form(const System& b, long mu);

// Coefficient of x^j in x^(q+1) A.
inline Matrix tilde_coeff(const System& a, long q, long j) { return a.coeff(j - q - 1); }

// Builds T = I + sum_{s=1}^{smax} T_s x^s order by order. `solve(s, M)` returns T_s, where M is
// the coefficient of x^(s + shift) in x^(q+1) Psi_T[A] computed with T_s = 0.
using OrderSolver = std::function<Matrix(long s, const Matrix& m)>;
std::vector<Matrix> solve_by_order(const System& a, long q, long shift, long smax, const OrderSolver& solve);

// Relative input order needed so that replaying `c` yields a system known through `target_abs`.
long required_input_order(const Chain& c, long input_valuation, long target_abs);

System sub_system(const System& a, const std::vector<int>& idx);
Matrix sub_matrix(const Matrix& m, const std::vector<int>& idx);
Matrix embed_matrix(const Matrix& small, const std::vector<int>& idx, int n);  // identity elsewhere

struct GaugeResult {
  Step gauge;
  System B;
};

// k < q and T0^-1 A_k T0 = M1 (+) M2 with coprime characteristic polynomials (sizes n1, n - n1).
GaugeResult splitting_lemma(const System& a, const Matrix& t0, int n1, long N);
// A_k in Jordan form of type sigma with a single eigenvalue.
GaugeResult specialize_coefficients(const System& a, const std::vector<int>& sigma, long N);

struct ShearingOrder {
  long h = 0, r = 1;  // g = h / r
  std::string witness;
};
ShearingOrder shearing_order(const System& a);
System shear(const System& a, long h);

// (gamma_1(A_k), ..., gamma_n(A_k), q - k)
std::vector<long> termination_measure(const System& a);

struct Rank0Result {
  Chain chain;
  System B;
  NormalForm nf;
  // Termination measures of each single-eigenvalue loop, in iteration order.
  std::vector<std::vector<std::vector<long>>> measures;
  long max_loop_iterations = 0;
};
Rank0Result trs_rank0(const System& a);

// Index sets of equal diagonal entries of D.
std::vector<std::vector<int>> d_blocks(const std::vector<Matrix>& d, int n);
// Regular polynomial gauge (degree <= q + mu) making the tail block diagonal along the D-blocks
// through x^(q+mu) relative to x^-(q+1).
std::vector<Matrix> eliminate_offdiagonal(const System& a, long q, long mu);

struct TailResult {
  Step gauge;  // P^mu
  System B;
  NormalForm nf;
};
TailResult eliminate_tail(const System& a, long mu);

struct DeresonateResult {
  Chain chain;
  System B;
  NormalForm nf;
  long rounds = 0;
  std::vector<long> m_history;  // sum over D-blocks of m(C^jj), before each round and at the end
};
// `complex_mode` allows quadratic extensions by i to split resonant factors.
DeresonateResult deresonate(const System& a, bool complex_mode = true);
long deresonation_rounds(const NormalForm& nf);

struct FormalNormalForm {
  Chain chain;
  std::vector<std::string> phase;  // per chain step: "rank0", "deresonation" or "tail"
  std::vector<Matrix> Q;  // regular gauge of the tail elimination
  System B;               // replay of the chain on the input
  System F;               // principal part
  NormalForm nf;
  Rank0Result rank0;
  long deresonation_rounds = 0;
  std::string solution;
};
FormalNormalForm formal_normal_form(const System& a, long precision);

std::string symbolic_solution(const NormalForm& nf);

}  // namespace turrittin
