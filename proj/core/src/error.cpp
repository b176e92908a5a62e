#include "trajkit/error.hpp"

namespace trajkit {

std::string_view to_string(Errc code) noexcept {
    switch (code) {
        case Errc::empty_trajectory: return "EmptyTrajectory";
        case Errc::non_increasing_time: return "NonIncreasingTime";
        case Errc::dimension_mismatch: return "DimensionMismatch";
        case Errc::non_finite_value: return "NonFiniteValue";
        case Errc::negative_time: return "NegativeTime";
        case Errc::dimension_unsupported: return "DimensionUnsupported";
        case Errc::too_few_points: return "TooFewPoints";
        case Errc::invalid_interval: return "InvalidInterval";
        case Errc::invalid_region: return "InvalidRegion";
        case Errc::invalid_episode: return "InvalidEpisode";
        case Errc::context_length_mismatch: return "ContextLengthMismatch";
        case Errc::both_degenerate: return "BothDegenerate";
        case Errc::degenerate_region: return "DegenerateRegion";
        case Errc::length_mismatch: return "LengthMismatch";
        case Errc::no_context: return "NoContext";
        case Errc::no_shared_schema: return "NoSharedSchema";
        case Errc::empty_match_set: return "EmptyMatchSet";
        case Errc::invalid_config: return "InvalidConfig";
        case Errc::invalid_parameter: return "InvalidParameter";
        case Errc::invalid_matrix: return "InvalidMatrix";
        case Errc::too_few_clusters: return "TooFewClusters";
        case Errc::pair_failure: return "PairFailure";
        case Errc::parse_error: return "ParseError";
        case Errc::validation_error: return "ValidationError";
        case Errc::unknown_key: return "UnknownKey";
        case Errc::index_out_of_range: return "IndexOutOfRange";
        case Errc::overlapping_episodes: return "OverlappingEpisodes";
        case Errc::unknown_option: return "UnknownOption";
        case Errc::invalid_value: return "InvalidValue";
        case Errc::weight_simplex_violation: return "WeightSimplexViolation";
        case Errc::io_error: return "IoError";
    }
    return "Unknown";
}

namespace {

std::string format_message(Errc code, const std::string& message, std::optional<std::size_t> index) {
    std::string out(to_string(code));
    if (index) {
        out += "(" + std::to_string(*index) + ")";
    }
    if (!message.empty()) {
        out += ": " + message;
    }
    return out;
}

}  // namespace

Error::Error(Errc code, const std::string& message, std::optional<std::size_t> index)
    : std::runtime_error(format_message(code, message, index)), code_(code), detail_(message), index_(index) {}

}  // namespace trajkit
