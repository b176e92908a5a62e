#include "trajkit/enriched.hpp"
#include "trajkit/error.hpp"
#include "trajkit/model.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace trajkit {

TimeInterval::TimeInterval(double start, double end) : start_(start), end_(end) {
    if (!std::isfinite(start) || !std::isfinite(end) || start > end) {
        throw Error(Errc::invalid_interval,
                    "interval [" + std::to_string(start) + ", " + std::to_string(end) + "] is not ordered and finite");
    }
}

Region::Region(double x_min, double y_min, double x_max, double y_max)
    : x_min_(x_min), y_min_(y_min), x_max_(x_max), y_max_(y_max) {
    const bool finite = std::isfinite(x_min) && std::isfinite(y_min) && std::isfinite(x_max) && std::isfinite(y_max);
    if (!finite || x_min > x_max || y_min > y_max) {
        throw Error(Errc::invalid_region, "region corners must be finite with min <= max");
    }
}

Trajectory::Trajectory(std::string id, std::size_t dimension, std::vector<double> coords, std::vector<double> times)
    : id_(std::move(id)), dimension_(dimension), coords_(std::move(coords)), times_(std::move(times)) {}

Trajectory Trajectory::validate(std::string id, std::span<const STPoint> points) {
    if (points.empty()) {
        throw Error(Errc::empty_trajectory, "trajectory '" + id + "' has no points");
    }
    const std::size_t dimension = points.front().coords.size();
    std::vector<double> coords;
    std::vector<double> times;
    coords.reserve(points.size() * dimension);
    times.reserve(points.size());

    for (std::size_t i = 0; i < points.size(); ++i) {
        const STPoint& p = points[i];
        if (p.coords.empty()) {
            throw Error(Errc::dimension_mismatch, "point has no coordinates", i);
        }
        if (p.coords.size() != dimension) {
            throw Error(Errc::dimension_mismatch,
                        "expected " + std::to_string(dimension) + " coordinates, got " +
                            std::to_string(p.coords.size()),
                        i);
        }
        const bool finite = std::isfinite(p.t) && std::all_of(p.coords.begin(), p.coords.end(),
                                                              [](double v) { return std::isfinite(v); });
        if (!finite) {
            throw Error(Errc::non_finite_value, "non-finite coordinate or timestamp", i);
        }
        if (p.t < 0.0) {
            throw Error(Errc::negative_time, "timestamp " + std::to_string(p.t) + " is negative", i);
        }
        if (i > 0 && !(times.back() < p.t)) {
            throw Error(Errc::non_increasing_time, "timestamps must be strictly increasing", i);
        }
        coords.insert(coords.end(), p.coords.begin(), p.coords.end());
        times.push_back(p.t);
    }
    return Trajectory(std::move(id), dimension, std::move(coords), std::move(times));
}

STPoint Trajectory::point(std::size_t i) const {
    const auto c = coords(i);
    return STPoint{std::vector<double>(c.begin(), c.end()), times_[i]};
}

std::vector<STPoint> Trajectory::points() const {
    std::vector<STPoint> out;
    out.reserve(size());
    for (std::size_t i = 0; i < size(); ++i) {
        out.push_back(point(i));
    }
    return out;
}

TimeInterval time_span(const Trajectory& trajectory) noexcept {
    return TimeInterval(trajectory.times().front(), trajectory.times().back());
}

double path_length(const Trajectory& trajectory, DistanceMode mode) noexcept {
    double total = 0.0;
    for (std::size_t i = 1; i < trajectory.size(); ++i) {
        total += base_distance(trajectory.coords(i - 1), trajectory.coords(i), mode);
    }
    return total;
}

Region bounding_region(const Trajectory& trajectory) {
    if (trajectory.dimension() != 2) {
        throw Error(Errc::dimension_unsupported,
                    "bounding region needs planar points, trajectory '" + trajectory.id() + "' has dimension " +
                        std::to_string(trajectory.dimension()));
    }
    double x_min = trajectory.coords(0)[0];
    double x_max = x_min;
    double y_min = trajectory.coords(0)[1];
    double y_max = y_min;
    for (std::size_t i = 1; i < trajectory.size(); ++i) {
        const auto c = trajectory.coords(i);
        x_min = std::min(x_min, c[0]);
        x_max = std::max(x_max, c[0]);
        y_min = std::min(y_min, c[1]);
        y_max = std::max(y_max, c[1]);
    }
    return Region(x_min, y_min, x_max, y_max);
}

Trajectory resample(const Trajectory& trajectory, std::size_t k) {
    if (trajectory.size() < 2) {
        throw Error(Errc::too_few_points, "resampling trajectory '" + trajectory.id() + "' needs at least 2 points");
    }
    if (k < 2) {
        throw Error(Errc::invalid_parameter, "resample target must be at least 2 points");
    }
    const std::size_t dim = trajectory.dimension();
    const double t0 = trajectory.times().front();
    const double t1 = trajectory.times().back();
    const double step = (t1 - t0) / static_cast<double>(k - 1);

    std::vector<STPoint> out;
    out.reserve(k);
    out.push_back(trajectory.point(0));

    std::size_t segment = 0;  // trajectory.time(segment) <= t < trajectory.time(segment + 1)
    for (std::size_t j = 1; j + 1 < k; ++j) {
        const double t = t0 + step * static_cast<double>(j);
        while (segment + 2 < trajectory.size() && trajectory.time(segment + 1) <= t) {
            ++segment;
        }
        const double ta = trajectory.time(segment);
        const double tb = trajectory.time(segment + 1);
        const double w = std::clamp((t - ta) / (tb - ta), 0.0, 1.0);
        const auto a = trajectory.coords(segment);
        const auto b = trajectory.coords(segment + 1);
        STPoint p{std::vector<double>(dim), t};
        for (std::size_t d = 0; d < dim; ++d) {
            p.coords[d] = w == 1.0 ? b[d] : a[d] + w * (b[d] - a[d]);
        }
        out.push_back(std::move(p));
    }
    out.push_back(trajectory.point(trajectory.size() - 1));
    return Trajectory::validate(trajectory.id(), out);
}

void check_context(const ContextSample& sample, const ContextSchema& schema) {
    for (const auto& [key, value] : sample) {
        const auto spec = schema.find(key);
        if (spec == schema.end()) {
            throw Error(Errc::unknown_key, "context key '" + key + "' is not declared");
        }
        const bool numeric = std::holds_alternative<double>(value);
        if (numeric != (spec->second.kind == ContextKind::numeric)) {
            throw Error(Errc::invalid_value, "context key '" + key + "' has the wrong kind");
        }
        if (numeric) {
            const double v = std::get<double>(value);
            if (!(spec->second.min <= v && v <= spec->second.max)) {
                throw Error(Errc::invalid_value, "context value " + std::to_string(v) + " for key '" + key +
                                                     "' lies outside its declared range");
            }
        }
    }
}

EnrichedTrajectory::EnrichedTrajectory(Trajectory trajectory) : trajectory_(std::move(trajectory)) {}

EnrichedTrajectory::EnrichedTrajectory(Trajectory trajectory, std::optional<std::vector<ContextSample>> context,
                                       std::vector<SemanticEpisode> episodes)
    : trajectory_(std::move(trajectory)), context_(std::move(context)), episodes_(std::move(episodes)) {
    if (context_ && context_->size() != trajectory_.size()) {
        throw Error(Errc::context_length_mismatch, "trajectory '" + id() + "' has " +
                                                       std::to_string(trajectory_.size()) + " points but " +
                                                       std::to_string(context_->size()) + " context samples");
    }
    for (std::size_t e = 0; e < episodes_.size(); ++e) {
        const SemanticEpisode& ep = episodes_[e];
        if (ep.first > ep.last) {
            throw Error(Errc::invalid_episode, "episode '" + ep.label + "' of '" + id() + "' ends before it starts", e);
        }
        if (ep.last >= trajectory_.size()) {
            throw Error(Errc::index_out_of_range, "episode '" + ep.label + "' of '" + id() + "' runs past the last point",
                        e);
        }
        if (e > 0 && ep.first <= episodes_[e - 1].last) {
            throw Error(Errc::overlapping_episodes, "episodes of '" + id() + "' overlap or are unsorted", e);
        }
    }
}

}  // namespace trajkit

namespace trajkit {

EnrichedTrajectory resample(const EnrichedTrajectory& enriched, std::size_t k) {
    const Trajectory& source = enriched.trajectory();
    Trajectory target = resample(source, k);

    // Index of the original point nearest in time to each new point.
    std::vector<std::size_t> nearest(k);
    std::size_t cursor = 0;
    for (std::size_t j = 0; j < k; ++j) {
        const double t = target.time(j);
        while (cursor + 1 < source.size() && source.time(cursor + 1) <= t) {
            ++cursor;
        }
        std::size_t pick = cursor;
        if (cursor + 1 < source.size() && source.time(cursor + 1) - t < t - source.time(cursor)) {
            pick = cursor + 1;
        }
        nearest[j] = pick;
    }

    std::optional<std::vector<ContextSample>> context;
    if (enriched.has_context()) {
        context.emplace();
        context->reserve(k);
        for (std::size_t j = 0; j < k; ++j) {
            context->push_back((*enriched.context())[nearest[j]]);
        }
    }

    std::vector<const std::string*> label_at(source.size(), nullptr);
    for (const SemanticEpisode& ep : enriched.episodes()) {
        for (std::size_t i = ep.first; i <= ep.last; ++i) {
            label_at[i] = &ep.label;
        }
    }
    std::vector<SemanticEpisode> episodes;
    for (std::size_t j = 0; j < k; ++j) {
        const std::string* label = label_at[nearest[j]];
        if (label == nullptr) {
            continue;
        }
        if (!episodes.empty() && episodes.back().last + 1 == j && episodes.back().label == *label) {
            episodes.back().last = j;
        } else {
            episodes.push_back(SemanticEpisode{*label, j, j});
        }
    }
    return EnrichedTrajectory(std::move(target), std::move(context), std::move(episodes));
}

}  // namespace trajkit
