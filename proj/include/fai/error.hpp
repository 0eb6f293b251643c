#ifndef FAI_ERROR_HPP
#define FAI_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fai {

enum class Errc {
  parse,
  not_in_chain,
  chain_invalid,
  chain_not_closed,
  chain_not_symmetric,
  invalid_hedge,
  universe_mismatch,
  cap_exceeded,
  not_adjoint,
  not_closure_system,
  not_complete,
  invalid_step,
  goal_mismatch,
  invalid_proof,
  not_provable,
  unknown_connection,
};

inline const char* errc_name(Errc e) noexcept {
  switch (e) {
    case Errc::parse: return "ParseError";
    case Errc::not_in_chain: return "NotInChain";
    case Errc::chain_invalid: return "ChainInvalid";
    case Errc::chain_not_closed: return "ChainNotClosed";
    case Errc::chain_not_symmetric: return "ChainNotSymmetric";
    case Errc::invalid_hedge: return "InvalidHedge";
    case Errc::universe_mismatch: return "UniverseMismatch";
    case Errc::cap_exceeded: return "CapExceeded";
    case Errc::not_adjoint: return "NotAdjoint";
    case Errc::not_closure_system: return "NotClosureSystem";
    case Errc::not_complete: return "NotComplete";
    case Errc::invalid_step: return "InvalidStep";
    case Errc::goal_mismatch: return "GoalMismatch";
    case Errc::invalid_proof: return "InvalidProof";
    case Errc::not_provable: return "NotProvable";
    case Errc::unknown_connection: return "UnknownConnection";
  }
  return "Error";
}

/// Single exception type for the library; `code()` tells the failure apart.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// Raised by the proof checker. `step()` is 1-based, 0 when not tied to a step.
class ProofError : public Error {
 public:
  ProofError(Errc code, std::size_t step, const std::string& reason)
      : Error(code, step ? "step " + std::to_string(step) + ": " + reason : reason),
        step_(step),
        reason_(reason) {}

  std::size_t step() const noexcept { return step_; }
  const std::string& reason() const noexcept { return reason_; }

 private:
  std::size_t step_;
  std::string reason_;
};

}  // namespace fai

#endif  // FAI_ERROR_HPP
