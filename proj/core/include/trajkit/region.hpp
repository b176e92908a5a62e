#pragma once

namespace trajkit {

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point2&, const Point2&) = default;
};

/// Axis-aligned rectangle [x_min, x_max] x [y_min, y_max]. Degenerate
/// (zero-width or zero-height) rectangles are valid values.
class Region {
public:
    /// Throws Error(invalid_region) on non-finite corners or min > max.
    Region(double x_min, double y_min, double x_max, double y_max);

    double x_min() const noexcept { return x_min_; }
    double y_min() const noexcept { return y_min_; }
    double x_max() const noexcept { return x_max_; }
    double y_max() const noexcept { return y_max_; }

    double width() const noexcept { return x_max_ - x_min_; }
    double height() const noexcept { return y_max_ - y_min_; }
    double area() const noexcept { return width() * height(); }
    bool degenerate() const noexcept { return !(width() > 0.0 && height() > 0.0); }
    Point2 centroid() const noexcept { return {(x_min_ + x_max_) / 2.0, (y_min_ + y_max_) / 2.0}; }

    /// Closed containment.
    bool contains(Point2 p) const noexcept {
        return x_min_ <= p.x && p.x <= x_max_ && y_min_ <= p.y && p.y <= y_max_;
    }

    friend bool operator==(const Region&, const Region&) = default;

private:
    double x_min_;
    double y_min_;
    double x_max_;
    double y_max_;
};

}  // namespace trajkit
