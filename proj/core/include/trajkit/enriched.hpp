#pragma once

#include "trajkit/model.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace trajkit {

/// A context value is numeric or categorical.
using ContextValue = std::variant<double, std::string>;

/// Context observed at one point. Keys missing from the map are absent.
using ContextSample = std::map<std::string, ContextValue>;

enum class ContextKind { numeric, categorical };

struct ContextKeySpec {
    ContextKind kind = ContextKind::numeric;
    double min = 0.0;  // numeric keys only
    double max = 0.0;

    double range() const noexcept { return max - min; }

    friend bool operator==(const ContextKeySpec&, const ContextKeySpec&) = default;
};

using ContextSchema = std::map<std::string, ContextKeySpec>;

/// Checks every value of `sample` against `schema`: the key must be declared,
/// kinds must agree and numeric values must lie in the declared range.
/// Throws Error(unknown_key) or Error(invalid_value).
void check_context(const ContextSample& sample, const ContextSchema& schema);

/// A labelled, inclusive index range [first, last] of a trajectory.
struct SemanticEpisode {
    std::string label;
    std::size_t first = 0;
    std::size_t last = 0;

    std::size_t length() const noexcept { return last - first + 1; }

    friend bool operator==(const SemanticEpisode&, const SemanticEpisode&) = default;
};

/// Trajectory plus per-point context and semantic episodes.
class EnrichedTrajectory {
public:
    explicit EnrichedTrajectory(Trajectory trajectory);

    /// Throws Error(context_length_mismatch) when the context series length
    /// differs from the point count, Error(invalid_episode) for first > last,
    /// Error(index_out_of_range) for episodes past the last point and
    /// Error(overlapping_episodes) unless episodes are sorted and disjoint.
    EnrichedTrajectory(Trajectory trajectory, std::optional<std::vector<ContextSample>> context,
                       std::vector<SemanticEpisode> episodes);

    const Trajectory& trajectory() const noexcept { return trajectory_; }
    const std::string& id() const noexcept { return trajectory_.id(); }
    bool has_context() const noexcept { return context_.has_value(); }
    const std::optional<std::vector<ContextSample>>& context() const noexcept { return context_; }
    const std::vector<SemanticEpisode>& episodes() const noexcept { return episodes_; }

    friend bool operator==(const EnrichedTrajectory&, const EnrichedTrajectory&) = default;

private:
    Trajectory trajectory_;
    std::optional<std::vector<ContextSample>> context_;
    std::vector<SemanticEpisode> episodes_;
};

}  // namespace trajkit

namespace trajkit {

/// Resamples the trajectory (see resample(const Trajectory&, std::size_t)) and
/// carries enrichment along: each new point takes the context and episode
/// label of the original point nearest in time (earlier point on ties).
/// Episodes are rebuilt as maximal runs of one label.
EnrichedTrajectory resample(const EnrichedTrajectory& enriched, std::size_t k);

}  // namespace trajkit
