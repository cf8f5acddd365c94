#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace cotensor {

// Input data (a file, a serialized object) could not be decoded.
struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A documented mathematical precondition of an operation is violated.
struct precondition_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// The library constructed an object that breaks one of its own invariants.
// Seeing this exception always indicates a bug, never bad user input.
struct internal_error : std::logic_error {
  using std::logic_error::logic_error;
};

// Outcome of a validation pass: pass/fail plus human-readable findings,
// each naming the axiom and the degree where it failed.
struct Report {
  bool ok = true;
  std::vector<std::string> issues;

  void fail(std::string msg) {
    ok = false;
    issues.push_back(std::move(msg));
  }
  void require(bool cond, const std::string& msg) {
    if (!cond) fail(msg);
  }
  void merge(const Report& other, const std::string& prefix) {
    if (other.ok) return;
    ok = false;
    for (const auto& s : other.issues) issues.push_back(prefix + s);
  }
};

}  // namespace cotensor
