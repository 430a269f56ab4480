#ifndef TORFOL_DIRECTION_FIELD_HPP
#define TORFOL_DIRECTION_FIELD_HPP

#include <functional>
#include <string>

#include "torfol/diffeo.hpp"

namespace torfol {

/// A 1-dimensional foliation of the torus encoded by the angle of its tangent
/// line. The angle backing is a genuine periodic real field, so every field
/// this type accepts is orientable with zero winding class; non-orientable or
/// winding inputs are rejected at construction (detect_orientability reports
/// the obstruction).
class DirectionField {
public:
    DirectionField() = default;

    static DirectionField from_angle_expr(const std::string& text, bool oriented = true);
    static DirectionField from_angle_field(PeriodicField angle, bool oriented = true);
    /// Samples atan2(vy, vx) on a grid, unwrapping to a continuous angle field.
    /// Rejects vanishing vectors and nonzero winding.
    static DirectionField from_vector(const std::function<Vec2(double, double)>& v,
                                      int res = kDefaultGridRes);
    /// Unwraps raw angle samples (defined mod pi) into a continuous field.
    /// Rejects non-orientable inputs, naming the generator at fault.
    static DirectionField from_line_angles(const std::function<double(double, double)>& raw,
                                           int res = kDefaultGridRes);
    /// Constant-angle (affine) foliation.
    static DirectionField linear(double angle_radians);

    double angle(double x, double y) const { return angle_.eval(x, y); }
    double angle(const TorusPoint& p) const { return angle_.eval(p.x, p.y); }
    Dual2 angle_grad(double x, double y) const { return angle_.eval_grad(x, y); }
    Vec2 direction(double x, double y) const {
        const double a = angle_.eval(x, y);
        return {std::cos(a), std::sin(a)};
    }
    Vec2 direction(const Vec2& p) const { return direction(p.x, p.y); }

    bool oriented() const { return oriented_; }
    const PeriodicField& angle_field() const { return angle_; }
    DirectionField reversed() const;
    /// Same line field with orientation flag set (angle kept).
    DirectionField orient() const;

private:
    PeriodicField angle_ = PeriodicField::constant(0.0);
    bool oriented_ = true;
};

struct OrientabilityReport {
    bool continuous = true;    // samples admit a continuous mod-pi lift
    bool orientable = false;
    HomotopyClass witness;     // generator with nontrivial monodromy
    double monodromy_x = 0.0;  // in radians; multiples of pi for line fields
    double monodromy_y = 0.0;
};

/// Checks whether raw line-field angles (defined mod pi) lift to an oriented
/// field on the grid: the mod-pi monodromy along both generators must be an
/// even multiple of pi.
OrientabilityReport detect_orientability(const std::function<double(double, double)>& raw,
                                         int res = kDefaultGridRes);

struct TransversalityReport {
    double margin = 0.0;   // min over grid of |sin(theta_F - theta_G)|
    TorusPoint witness;
};

TransversalityReport transversality_margin(const DirectionField& F, const DirectionField& G,
                                           int res = kDefaultGridRes);

/// Direction field of the pushed foliation phi(F): the angle at phi(p) is the
/// angle of Dphi(p) v(p), resampled onto the standard grid via the inverse.
DirectionField pushforward(const TorusDiffeo& phi, const TorusDiffeo& phi_inv,
                           const DirectionField& F, int res = kDefaultGridRes);
DirectionField pushforward(const TorusDiffeo& phi, const DirectionField& F,
                           int res = kDefaultGridRes);

}  // namespace torfol

#endif  // TORFOL_DIRECTION_FIELD_HPP
