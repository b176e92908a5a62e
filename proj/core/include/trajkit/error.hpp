#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace trajkit {

/// Every failure raised by the library carries one of these codes.
enum class Errc {
    // trajectory validation
    empty_trajectory,
    non_increasing_time,
    dimension_mismatch,
    non_finite_value,
    negative_time,
    dimension_unsupported,
    too_few_points,
    invalid_interval,
    invalid_region,
    invalid_episode,
    context_length_mismatch,
    // relations and similarity
    both_degenerate,
    degenerate_region,
    length_mismatch,
    no_context,
    no_shared_schema,
    empty_match_set,
    invalid_config,
    // clustering
    invalid_parameter,
    invalid_matrix,
    too_few_clusters,
    pair_failure,
    // io
    parse_error,
    validation_error,
    unknown_key,
    index_out_of_range,
    overlapping_episodes,
    unknown_option,
    invalid_value,
    weight_simplex_violation,
    io_error,
};

std::string_view to_string(Errc code) noexcept;

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message, std::optional<std::size_t> index = std::nullopt);

    Errc code() const noexcept { return code_; }

    /// Offending point/line index, when the failure is positional.
    std::optional<std::size_t> index() const noexcept { return index_; }

    /// The message without the code prefix.
    const std::string& detail() const noexcept { return detail_; }

private:
    Errc code_;
    std::string detail_;
    std::optional<std::size_t> index_;
};

}  // namespace trajkit
