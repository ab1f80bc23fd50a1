#pragma once

#include <functional>
#include <vector>

#include "turrittin/reduce_complex.hpp"

namespace turrittin::detail {

struct Rank0State {
  std::vector<std::vector<std::vector<long>>> measures;
  long max_iterations = 0;
};

Matrix embed_zero(const Matrix& small, const std::vector<int>& idx, int n);  // zero elsewhere
std::vector<Matrix> poly_mul(const std::vector<Matrix>& a, const std::vector<Matrix>& b, long deg);
std::vector<Matrix> truncate_poly(std::vector<Matrix> p, long deg);

// Un-normalized rank-0 chain for a system truncated at its determinacy order. In real mode
// every payload stays in the real tower.
Chain rank0_chain(System w, Rank0State& st, bool real);

// Embeds a gauge step acting on the index set idx into an n x n system (identity elsewhere).
Step embed_step(const Step& s, const std::vector<int>& idx, int n);

// Deresonation rounds on one D-block of a TRS form; updates cur, the chain and the bookkeeping.
// `measure` recomputes the total m after each round.
void deresonate_block(System& cur, long q, const std::vector<int>& idx, bool complex_mode,
                      const std::function<long(const System&)>& measure, DeresonateResult& res);


// Two independent square roots cannot be represented; report them as outside the tower.
template <class F>
auto within_tower(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::IncompatibleField) throw Error(ErrorCode::UnsupportedTower, e.what());
    throw;
  }
}

}  // namespace turrittin::detail
