#pragma once

#include <stdexcept>
#include <string>

namespace mapforge {

enum class errc {
  // structural validation (CLI exit code 2)
  fixed_point,
  matching_overlap,
  not_squares,
  bad_corner_count,
  malformed_descriptor,
  symbol_count,
  axiom_am1,
  axiom_am2,
  axiom_am3,
  axiom_am4,
  ground_mismatch,
  not_subspace,
  parse_error,
  bad_params,
  // unmet preconditions / negative answers (CLI exit code 1)
  not_connected,
  not_a_cycle,
  not_a_circuit,
  not_eulerian,
  not_planar,
  not_projective,
  not_disjoint,
  precondition_failed,
  too_large,
  unknown_suite,
  internal,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::fixed_point: return "FixedPoint";
    case errc::matching_overlap: return "MatchingOverlap";
    case errc::not_squares: return "NotSquares";
    case errc::bad_corner_count: return "BadCornerCount";
    case errc::malformed_descriptor: return "MalformedDescriptor";
    case errc::symbol_count: return "SymbolCountNotTwo";
    case errc::axiom_am1: return "AxiomViolation(am1)";
    case errc::axiom_am2: return "AxiomViolation(am2)";
    case errc::axiom_am3: return "AxiomViolation(am3)";
    case errc::axiom_am4: return "AxiomViolation(am4)";
    case errc::ground_mismatch: return "GroundMismatch";
    case errc::not_subspace: return "NotSubspace";
    case errc::parse_error: return "ParseError";
    case errc::bad_params: return "BadParams";
    case errc::not_connected: return "NotConnected";
    case errc::not_a_cycle: return "NotACycle";
    case errc::not_a_circuit: return "NotACircuit";
    case errc::not_eulerian: return "NotEulerian";
    case errc::not_planar: return "NotPlanar";
    case errc::not_projective: return "NotProjective";
    case errc::not_disjoint: return "NotDisjoint";
    case errc::precondition_failed: return "PreconditionFailed";
    case errc::too_large: return "TooLarge";
    case errc::unknown_suite: return "UnknownSuite";
    case errc::internal: return "InternalError";
  }
  return "Error";
}

// True for errors that mean "the input itself is ill-formed" rather than a
// well-formed input failing a precondition.
inline bool errc_is_validation(errc c) {
  switch (c) {
    case errc::fixed_point:
    case errc::matching_overlap:
    case errc::not_squares:
    case errc::bad_corner_count:
    case errc::malformed_descriptor:
    case errc::symbol_count:
    case errc::axiom_am1:
    case errc::axiom_am2:
    case errc::axiom_am3:
    case errc::axiom_am4:
    case errc::ground_mismatch:
    case errc::not_subspace:
    case errc::parse_error:
    case errc::bad_params:
      return true;
    default:
      return false;
  }
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

inline void require(bool ok, errc code, const std::string& what) {
  if (!ok) fail(code, what);
}

}  // namespace mapforge
