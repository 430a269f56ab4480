#ifndef TORFOL_SECTION_HPP
#define TORFOL_SECTION_HPP

#include <optional>
#include <vector>

#include "torfol/direction_field.hpp"
#include "torfol/leaf.hpp"

namespace torfol {

/// A smooth simple closed curve on the torus in a primitive homotopy class,
/// stored as a graph over its class direction:
///
///   p(s) = frame * (s, w(s)),  s in [0, 1],
///
/// where frame is in SL(2,Z) with first column the class vector and w is a
/// 1-periodic offset graph (a constant for straight lines). Every section
/// carries a straightening chart: the torus diffeomorphism that maps the
/// curve to the horizontal circle {y = 0} and its class to the x-generator.
class CrossSection {
public:
    CrossSection() = default;

    static CrossSection straight(const HomotopyClass& cls, double offset);
    static CrossSection graph(const HomotopyClass& cls, Periodic1D w);
    /// As above with a chosen crossing class (second frame column); needed
    /// when the transverse direction matters, e.g. mapping compact leaves to
    /// verticals. det[cls | crossing] must be +1.
    static CrossSection graph_with_crossing(const HomotopyClass& cls,
                                            const HomotopyClass& crossing, Periodic1D w);

    const HomotopyClass& cls() const { return cls_; }
    const Mat2i& frame() const { return frame_; }
    HomotopyClass crossing_class() const { return {frame_.b, frame_.d}; }
    const Periodic1D& offsets() const { return w_; }

    Vec2 point(double s) const;
    Vec2 tangent(double s) const;  // unit tangent

    /// Straightening chart as a torus diffeomorphism: section -> {y=0}.
    TorusDiffeo chart(int res = kDefaultGridRes) const;
    TorusDiffeo chart_inverse(int res = kDefaultGridRes) const;

    /// Level function whose integer levels are the lifts of the curve:
    /// g(q) = (frame^{-1} q)_y - w((frame^{-1} q)_x).
    double level(const Vec2& lift) const;

    /// Minimum |sin(angle between curve tangent and field)| over the curve.
    double margin_against(const DirectionField& F, int samples = 1024) const;

    /// True when the curve is simple at sample scale (graph representation is
    /// simple by construction; kept for reports).
    bool simple() const { return true; }

private:
    HomotopyClass cls_{1, 0};
    Mat2i frame_ = Mat2i::identity();
    Periodic1D w_ = Periodic1D::constant(0.0);
};

struct CompletenessReport {
    bool complete = false;
    int seeds = 0;
    int hits = 0;
    std::optional<Vec2> trapped_start;  // witness when incomplete
};

/// Statistical completeness: leaves from `seeds` deterministic sample points,
/// integrated both ways within the arclength budget, must all meet the
/// section. A trapped leaf signals a compact leaf in the section's class.
CompletenessReport completeness_check(const DirectionField& F, const CrossSection& s,
                                      int seeds = 1000, std::uint64_t seed = 1,
                                      double budget = 40.0,
                                      const IntegOptions& opts = {});

}  // namespace torfol

#endif  // TORFOL_SECTION_HPP
