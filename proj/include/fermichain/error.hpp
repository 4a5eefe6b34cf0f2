#pragma once

#include <stdexcept>
#include <string>

namespace fermichain {

enum class ErrorCode {
  domain,            // argument outside the mathematical domain
  invalid_argument,  // malformed input (empty lists, bad ordering, ...)
  convergence,       // iteration or quadrature did not reach its tolerance
  singular,          // evaluation point hits a pole / the spectrum
  degenerate,        // ground state not unique
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace fermichain
