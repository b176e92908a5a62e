#include "trajkit/temporal.hpp"

#include "trajkit/error.hpp"

#include <algorithm>

namespace trajkit {

std::string_view to_string(AllenRelation relation) noexcept {
    switch (relation) {
        case AllenRelation::before: return "before";
        case AllenRelation::meets: return "meets";
        case AllenRelation::overlaps: return "overlaps";
        case AllenRelation::starts: return "starts";
        case AllenRelation::during: return "during";
        case AllenRelation::finishes: return "finishes";
        case AllenRelation::equal: return "equal";
        case AllenRelation::after: return "after";
        case AllenRelation::met_by: return "met_by";
        case AllenRelation::overlapped_by: return "overlapped_by";
        case AllenRelation::started_by: return "started_by";
        case AllenRelation::contains: return "contains";
        case AllenRelation::finished_by: return "finished_by";
    }
    return "unknown";
}

std::optional<AllenRelation> parse_allen_relation(std::string_view name) noexcept {
    for (AllenRelation r : kAllenRelations) {
        if (to_string(r) == name) {
            return r;
        }
    }
    return std::nullopt;
}

AllenRelation inverse(AllenRelation relation) noexcept {
    switch (relation) {
        case AllenRelation::before: return AllenRelation::after;
        case AllenRelation::meets: return AllenRelation::met_by;
        case AllenRelation::overlaps: return AllenRelation::overlapped_by;
        case AllenRelation::starts: return AllenRelation::started_by;
        case AllenRelation::during: return AllenRelation::contains;
        case AllenRelation::finishes: return AllenRelation::finished_by;
        case AllenRelation::equal: return AllenRelation::equal;
        case AllenRelation::after: return AllenRelation::before;
        case AllenRelation::met_by: return AllenRelation::meets;
        case AllenRelation::overlapped_by: return AllenRelation::overlaps;
        case AllenRelation::started_by: return AllenRelation::starts;
        case AllenRelation::contains: return AllenRelation::during;
        case AllenRelation::finished_by: return AllenRelation::finishes;
    }
    return relation;
}

AllenRelation allen_relation(const TimeInterval& x, const TimeInterval& y) noexcept {
    const double xs = x.start();
    const double xe = x.end();
    const double ys = y.start();
    const double ye = y.end();

    if (xs == ys) {
        if (xe == ye) return AllenRelation::equal;
        return xe < ye ? AllenRelation::starts : AllenRelation::started_by;
    }
    if (xe == ye) {
        return xs > ys ? AllenRelation::finishes : AllenRelation::finished_by;
    }
    // From here on the starts differ and the ends differ.
    if (xe < ys) return AllenRelation::before;
    if (xe == ys) return AllenRelation::meets;
    if (xs > ye) return AllenRelation::after;
    if (xs == ye) return AllenRelation::met_by;
    if (xs < ys) {
        return xe > ye ? AllenRelation::contains : AllenRelation::overlaps;
    }
    return xe < ye ? AllenRelation::during : AllenRelation::overlapped_by;
}

double temporal_overlap_ratio(const TimeInterval& x, const TimeInterval& y) {
    if (x.degenerate() && y.degenerate()) {
        throw Error(Errc::both_degenerate, "overlap ratio of two zero-length intervals is undefined");
    }
    const double intersection = std::max(0.0, std::min(x.end(), y.end()) - std::max(x.start(), y.start()));
    const double union_length = x.duration() + y.duration() - intersection;
    return std::clamp(intersection / union_length, 0.0, 1.0);
}

}  // namespace trajkit
