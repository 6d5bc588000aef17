#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace heisgamma {

// Every failure the library can signal.  The CLI echoes the enum name in its
// error reports, so the spelling here is part of the wire format.
enum class errc {
    division_by_zero,
    incompatible_radicands,
    mode_unavailable,
    singular_matrix,
    not_automorphism,
    constraint_violated,
    not_involution,
    closure_bound_exceeded,
    not_abelian,
    not_simultaneously_diagonalizable,
    grading_axiom_violated,
    invalid_grading,
    no_conjugator_found,
    not_adapted,
    degenerate_metric,
    degenerate_plane,
    malformed_input,
    internal_error,
};

constexpr std::string_view to_string(errc c) {
    switch (c) {
        case errc::division_by_zero: return "DivisionByZero";
        case errc::incompatible_radicands: return "IncompatibleRadicands";
        case errc::mode_unavailable: return "ModeUnavailable";
        case errc::singular_matrix: return "SingularMatrix";
        case errc::not_automorphism: return "NotAutomorphism";
        case errc::constraint_violated: return "ConstraintViolated";
        case errc::not_involution: return "NotInvolution";
        case errc::closure_bound_exceeded: return "ClosureBoundExceeded";
        case errc::not_abelian: return "NotAbelian";
        case errc::not_simultaneously_diagonalizable: return "NotSimultaneouslyDiagonalizable";
        case errc::grading_axiom_violated: return "GradingAxiomViolated";
        case errc::invalid_grading: return "InvalidGrading";
        case errc::no_conjugator_found: return "NoConjugatorFound";
        case errc::not_adapted: return "NotAdapted";
        case errc::degenerate_metric: return "DegenerateMetric";
        case errc::degenerate_plane: return "DegeneratePlane";
        case errc::malformed_input: return "MalformedInput";
        case errc::internal_error: return "InternalError";
    }
    return "UnknownError";
}

class error : public std::runtime_error {
  public:
    error(errc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    errc code() const noexcept { return code_; }

  private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

}  // namespace heisgamma
