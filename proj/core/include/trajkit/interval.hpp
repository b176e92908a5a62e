#pragma once

namespace trajkit {

/// Closed time interval [start, end]. Zero length is allowed.
class TimeInterval {
public:
    /// Throws Error(invalid_interval) unless both ends are finite and start <= end.
    TimeInterval(double start, double end);

    double start() const noexcept { return start_; }
    double end() const noexcept { return end_; }
    double duration() const noexcept { return end_ - start_; }
    bool degenerate() const noexcept { return start_ == end_; }

    friend bool operator==(const TimeInterval&, const TimeInterval&) = default;

private:
    double start_;
    double end_;
};

}  // namespace trajkit
