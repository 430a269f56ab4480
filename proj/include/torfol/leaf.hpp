#ifndef TORFOL_LEAF_HPP
#define TORFOL_LEAF_HPP

#include <functional>
#include <optional>
#include <vector>

#include "torfol/direction_field.hpp"

namespace torfol {

struct IntegOptions {
    double tol = 1e-9;        // local error per unit arclength
    double max_step = 1e-2;
    double min_step = 1e-9;
    double tol_hit = 1e-10;   // event location tolerance (on the level function)
    double max_arclen = 50.0; // budget before a leaf is declared trapped
};

/// A finite piece of leaf integrated in the universal cover: polyline with
/// cumulative arclength and the unit field tangents at the samples.
struct LeafSegment {
    std::vector<Vec2> pts;
    std::vector<Vec2> tangents;
    std::vector<double> arclen;
    bool hit = false;     // terminated on the stop set
    double tol = 0.0;
    double max_step = 0.0;

    const Vec2& start() const { return pts.front(); }
    const Vec2& end() const { return pts.back(); }
    double length() const { return arclen.empty() ? 0.0 : arclen.back(); }
    /// Position at a given arclength, cubic Hermite between samples.
    Vec2 at_arclen(double s) const;
    /// First parameter s (arclength) where g(P(s)) crosses `level`; refined to
    /// tol. Searches the stored polyline.
    std::optional<double> first_crossing(const std::function<double(const Vec2&)>& g,
                                         double level, double tol) const;
};

/// Stop set: the first zero of g(p) - level along the lifted trajectory,
/// starting from a point with g(start) != level. A second level may be armed
/// (stop at whichever is crossed first). An empty g integrates until the
/// arclength budget runs out.
struct StopLevel {
    std::function<double(const Vec2&)> g;
    double level = 0.0;
    bool has_level2 = false;
    double level2 = 0.0;
};

inline StopLevel stop_x_equals(double c) {
    return {[](const Vec2& p) { return p.x; }, c};
}
inline StopLevel stop_y_equals(double c) {
    return {[](const Vec2& p) { return p.y; }, c};
}
inline StopLevel stop_none() { return {nullptr, 0.0}; }

/// Integrates the unit direction field from `start` (a lift), with orientation
/// sign +1 along the field or -1 against it. Adaptive RK4 with step doubling;
/// events located on a cubic Hermite reconstruction to tol_hit.
LeafSegment integrate_leaf(const DirectionField& F, Vec2 start, int orient_sign,
                           const StopLevel& stop, const IntegOptions& opts = {});

/// Convenience: direction-field functor variant (chart-local fields).
LeafSegment integrate_leaf_fn(const std::function<Vec2(const Vec2&)>& dir, Vec2 start,
                              const StopLevel& stop, const IntegOptions& opts = {});

}  // namespace torfol

#endif  // TORFOL_LEAF_HPP
