#pragma once

// Oracles written from the definitions alone: chain replay through the multiplied-out gauge
// identity, normal-form predicates and invariant reports.

#include <optional>
#include <string>
#include <vector>

#include "turrittin/system.hpp"

namespace turrittin {

struct Check {
  std::string name;
  bool pass = true;
  std::string witness;  // concrete location and values on failure, data on informational checks
};

struct VerificationReport {
  std::vector<Check> checks;
  bool all_pass() const;
  void add(const std::string& name, bool pass, const std::string& witness = "");
  void append(const VerificationReport& other, const std::string& prefix = "");
  std::string json() const;
};

// Replays the chain on A, checking P B = A P - P' for every gauge step and
// B = r x^(r-1) A(x^r) for every ramification, then compares with the claimed jet.
VerificationReport check_gauge_chain(const System& a, const Chain& chain, const System& claimed);

enum class FormMode { TRS, RTRS };

// Throws PrecisionError when the jet is not known through x^(mu-1).
VerificationReport check_form(const System& a, FormMode mode, long q, long mu);

// Exponential part of a normal form written as exp(sum c x^(-e)) data, ramification-free: one
// string per diagonal entry (theta blocks contribute d and its conjugate), sorted.
std::vector<std::string> exponential_signature(const System& b, long r);

struct InvariantData {
  long nu = 0, q = 0, k = 0, N = 0;
  bool has_normal_form = false;
  long q_tilde = 0, r = 1;
  std::vector<std::string> signature;
};

InvariantData invariant_data(const System& a);
InvariantData invariant_data(const System& a, const System& normal_form, long r);
VerificationReport invariants_report(const InvariantData& d);

}  // namespace turrittin
