#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace scholnet {

/// Error codes covering every failure mode the pipeline can report.
/// The CLI maps these to exit codes: config errors exit 3, internal
/// invariant violations exit 4, everything else (bad input data) exit 2.
enum class Errc {
    MalformedLine,
    SchemaViolation,
    DuplicatePaperId,
    EmptyCorpus,
    EmptyAfterNormalization,
    AliasTargetMissing,
    UnknownInstitution,
    NegativeDistance,
    UnresolvedAffiliation,
    ZeroProductivity,
    EmptyGraph,
    EmptyCategory,
    NoLocatedPairs,
    NonConvergence,
    InvalidInput,
    IoError,
    OutputLocked,
    ConfigError,
    Internal,
};

constexpr std::string_view errc_token(Errc c) {
    switch (c) {
        case Errc::MalformedLine: return "malformed_line";
        case Errc::SchemaViolation: return "schema_violation";
        case Errc::DuplicatePaperId: return "duplicate_paper_id";
        case Errc::EmptyCorpus: return "empty_corpus";
        case Errc::EmptyAfterNormalization: return "empty_after_normalization";
        case Errc::AliasTargetMissing: return "alias_target_missing";
        case Errc::UnknownInstitution: return "unknown_institution";
        case Errc::NegativeDistance: return "negative_distance";
        case Errc::UnresolvedAffiliation: return "unresolved_affiliation";
        case Errc::ZeroProductivity: return "zero_productivity";
        case Errc::EmptyGraph: return "empty_graph";
        case Errc::EmptyCategory: return "empty_category";
        case Errc::NoLocatedPairs: return "no_located_pairs";
        case Errc::NonConvergence: return "non_convergence";
        case Errc::InvalidInput: return "invalid_input";
        case Errc::IoError: return "io_error";
        case Errc::OutputLocked: return "output_locked";
        case Errc::ConfigError: return "config_error";
        case Errc::Internal: return "internal";
    }
    return "unknown";
}

constexpr int exit_code(Errc c) {
    switch (c) {
        case Errc::ConfigError: return 3;
        case Errc::Internal: return 4;
        default: return 2;
    }
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(std::string(errc_token(code)) + ": " + message), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& message) {
    throw Error(code, message);
}

}  // namespace scholnet
