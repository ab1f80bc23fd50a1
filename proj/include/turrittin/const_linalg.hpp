#pragma once

// Canonical forms and linear solvers for constant matrices.

#include <vector>

#include "turrittin/system.hpp"

namespace turrittin {

struct SplitResult {
  Matrix T;  // T^-1 M T = M1 (+) M2
  Matrix M1, M2;
};

// Splits M along the kernels of p1(M) and p2(M).
SplitResult coprime_split(const Matrix& m, const Poly& p1, const Poly& p2);

struct JordanData {
  Scalar eigenvalue;
  std::vector<int> sizes;  // ascending
  Matrix T;                // T^-1 M T = (+)_j (lambda I + H)
};

// The nilpotent shifting matrix H (ones on the superdiagonal).
Matrix shifting_matrix(int n);
Matrix jordan_matrix(const Scalar& lambda, const std::vector<int>& sizes);
JordanData jordan_single_eigen(const Matrix& m, const Scalar& lambda);

struct RealCanonicalForm {
  Matrix T;             // real, T^-1 M T = C1 (+) C2
  Matrix C1;            // real spectrum part (Jordan form)
  Matrix C2;            // image of a complex Jordan matrix under theta
  FieldDescriptor field;  // real field holding T
};

// Throws UnsupportedTower when a needed square root lies outside the tower.
RealCanonicalForm real_canonical_form(const Matrix& m);

// Solves R X - X S = M; throws CommonEigenvalue if the spectra meet.
Matrix sylvester_solve(const Matrix& r, const Matrix& s, const Matrix& m);

// Degrees of the determinantal divisors of M - lambda I.
std::vector<int> gamma_invariants(const Matrix& m);
std::vector<int> gamma_invariants_minors(const Matrix& m);
std::vector<int> gamma_invariants_smith(const Matrix& m);

// a + b i  ->  [[a, -b], [b, a]] entrywise.
Matrix theta_embed(const Matrix& m);
Matrix theta_extract(const Matrix& m);  // throws NotACMatrix
bool is_c_matrix(const Matrix& m);
System theta_embed(const System& a);
System theta_extract(const System& a);
bool is_c_system(const System& a);
// Maps a complex gauge step to the real step acting on the theta image.
Step theta_embed(const Step& s);
Chain theta_embed(const Chain& c);

// X with x21 = x22 = 0 such that Lambda X - X Lambda + S is a C-matrix.
Matrix c_completion(const Matrix& lambda, const Matrix& s);

struct ResonanceMember {
  Poly factor;  // monic irreducible
  long offset = 0;  // eigenvalues are those of the class base shifted by offset
  int multiplicity = 1;
};

struct ResonanceClass {
  std::vector<ResonanceMember> members;  // offsets descending
  long spread() const { return members.empty() ? 0 : members.front().offset - members.back().offset; }
  int degree() const { return members.empty() ? 0 : members.front().factor.degree(); }
};

struct ResonanceData {
  std::vector<ResonanceClass> classes;
  long m_value = 0;
  bool resonant() const { return m_value > 0; }
};

ResonanceData resonance_data(const Matrix& c);
// Factors the characteristic polynomial over the join of `over` and the field of C.
ResonanceData resonance_data(const Matrix& c, const FieldDescriptor& over);
// Integer n with g(x) = f(x - n), if any.
bool integer_shift(const Poly& f, const Poly& g, long* n);

}  // namespace turrittin
