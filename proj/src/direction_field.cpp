#include "torfol/direction_field.hpp"

#include <cmath>
#include <vector>

namespace torfol {

namespace {

double wrap_to(double d, double period) { return d - period * std::round(d / period); }

struct UnwrapResult {
    std::vector<double> grid;  // res x res unwrapped values
    double mono_x = 0.0;
    double mono_y = 0.0;
    bool consistent = true;
    int bad_i = -1, bad_j = -1;
};

// Unwraps raw angle samples into a continuous grid, propagating row 0 along x
// and each column upward in y. Monodromies are the continuation defects across
// the two generators.
UnwrapResult unwrap_angles(const std::function<double(double, double)>& raw, int res,
                           double period) {
    UnwrapResult r;
    r.grid.assign(size_t(res) * res, 0.0);
    auto at = [&](int i, int j) -> double& { return r.grid[size_t(j) * res + i]; };
    at(0, 0) = raw(0.0, 0.0);
    for (int i = 1; i < res; ++i) {
        const double v = raw(double(i) / res, 0.0);
        at(i, 0) = at(i - 1, 0) + wrap_to(v - at(i - 1, 0), period);
    }
    for (int j = 1; j < res; ++j)
        for (int i = 0; i < res; ++i) {
            const double v = raw(double(i) / res, double(j) / res);
            at(i, j) = at(i, j - 1) + wrap_to(v - at(i, j - 1), period);
        }
    // Monodromy along (1,0): continue row 0 across the seam.
    r.mono_x = at(res - 1, 0) + wrap_to(raw(0.0, 0.0) - at(res - 1, 0), period) - at(0, 0);
    // Monodromy along (0,1): continue column 0 across the seam.
    r.mono_y = at(0, res - 1) + wrap_to(raw(0.0, 0.0) - at(0, res - 1), period) - at(0, 0);
    // Consistency: every column must report the same y-monodromy, and adjacent
    // unwrapped values must stay within half a period (checked on the x-seam).
    for (int i = 0; i < res && r.consistent; ++i) {
        const double raw00 = raw(double(i) / res, 0.0);
        const double cont = at(i, res - 1) + wrap_to(raw00 - at(i, res - 1), period);
        if (std::abs(cont - at(i, 0) - r.mono_y) > period * 0.25) {
            r.consistent = false;
            r.bad_i = i;
            r.bad_j = res - 1;
        }
    }
    for (int j = 1; j < res && r.consistent; ++j) {
        const double raw0j = raw(0.0, double(j) / res);
        const double cont = at(res - 1, j) + wrap_to(raw0j - at(res - 1, j), period);
        if (std::abs(cont - at(0, j) - r.mono_x) > period * 0.25) {
            r.consistent = false;
            r.bad_i = res - 1;
            r.bad_j = j;
        }
    }
    return r;
}

}  // namespace

DirectionField DirectionField::from_angle_expr(const std::string& text, bool oriented) {
    return from_angle_field(PeriodicField::from_expr(text), oriented);
}

DirectionField DirectionField::from_angle_field(PeriodicField angle, bool oriented) {
    DirectionField f;
    f.angle_ = std::move(angle);
    f.oriented_ = oriented;
    return f;
}

DirectionField DirectionField::linear(double a) {
    return from_angle_field(PeriodicField::constant(a), true);
}

DirectionField DirectionField::from_vector(const std::function<Vec2(double, double)>& v,
                                           int res) {
    auto raw = [&](double x, double y) {
        const Vec2 w = v(x, y);
        if (w.norm() < 1e-12)
            throw Error("vector field vanishes at (" + std::to_string(x) + "," +
                            std::to_string(y) + ")",
                        "direction-field");
        return std::atan2(w.y, w.x);
    };
    UnwrapResult r = unwrap_angles(raw, res, kTwoPi);
    if (!r.consistent)
        throw Error("vector field angles are not continuous at this resolution near node (" +
                        std::to_string(r.bad_i) + "," + std::to_string(r.bad_j) + ")",
                    "direction-field");
    if (std::abs(r.mono_x) > 1e-6 || std::abs(r.mono_y) > 1e-6)
        throw Error("vector field has nonzero winding class (" +
                        std::to_string(int(std::lround(r.mono_x / kTwoPi))) + "," +
                        std::to_string(int(std::lround(r.mono_y / kTwoPi))) +
                        "); only zero-winding fields are representable",
                    "direction-field");
    return from_angle_field(PeriodicField::from_grid(res, std::move(r.grid)), true);
}

DirectionField DirectionField::from_line_angles(
    const std::function<double(double, double)>& raw, int res) {
    const OrientabilityReport rep = detect_orientability(raw, res);
    if (!rep.continuous)
        throw Error("line field is not continuous mod pi at this resolution",
                    "direction-field");
    if (!rep.orientable)
        throw Error("line field is non-orientable: monodromy along generator " +
                        rep.witness.str() + " is an odd multiple of pi",
                    "direction-field");
    UnwrapResult r = unwrap_angles(raw, res, kPi);
    if (std::abs(r.mono_x) > 1e-6 || std::abs(r.mono_y) > 1e-6)
        throw Error("line field has nonzero winding; not representable", "direction-field");
    return from_angle_field(PeriodicField::from_grid(res, std::move(r.grid)), false);
}

DirectionField DirectionField::reversed() const {
    const PeriodicField& a = angle_;
    return from_angle_field(
        PeriodicField::map2(a, a, [](double v, double) { return v + kPi; }, a.grid_res()),
        oriented_);
}

DirectionField DirectionField::orient() const {
    DirectionField f = *this;
    f.oriented_ = true;
    return f;
}

OrientabilityReport detect_orientability(const std::function<double(double, double)>& raw,
                                         int res) {
    OrientabilityReport rep;
    UnwrapResult r = unwrap_angles(raw, res, kPi);
    rep.continuous = r.consistent;
    rep.monodromy_x = r.mono_x;
    rep.monodromy_y = r.mono_y;
    const long long kx = std::llround(r.mono_x / kPi);
    const long long ky = std::llround(r.mono_y / kPi);
    const bool odd_x = (kx % 2) != 0;
    const bool odd_y = (ky % 2) != 0;
    rep.orientable = r.consistent && !odd_x && !odd_y;
    if (odd_x)
        rep.witness = {1, 0};
    else if (odd_y)
        rep.witness = {0, 1};
    return rep;
}

TransversalityReport transversality_margin(const DirectionField& F, const DirectionField& G,
                                           int res) {
    TransversalityReport rep;
    rep.margin = 2.0;
    for (int j = 0; j < res; ++j)
        for (int i = 0; i < res; ++i) {
            const double x = double(i) / res, y = double(j) / res;
            const double m = std::abs(std::sin(F.angle(x, y) - G.angle(x, y)));
            if (m < rep.margin) {
                rep.margin = m;
                rep.witness = TorusPoint(x, y);
            }
        }
    return rep;
}

DirectionField pushforward(const TorusDiffeo& phi, const TorusDiffeo& phi_inv,
                           const DirectionField& F, int res) {
    if (phi.is_exact_identity()) return F;
    auto raw = [&](double x, double y) {
        const Vec2 p = phi_inv.apply_lift({x, y});
        const Vec2 v = F.direction(p.x, p.y);
        const Vec2 w = phi.jacobian(p).apply(v);
        if (w.norm() < 1e-12)
            throw Error("pushforward produced a vanishing direction", "pushforward");
        return std::atan2(w.y, w.x);
    };
    UnwrapResult r = unwrap_angles(raw, res, F.oriented() ? kTwoPi : kPi);
    if (!r.consistent)
        throw Error("pushforward angle field inconsistent at this resolution", "pushforward");
    if (std::abs(r.mono_x) > 1e-6 || std::abs(r.mono_y) > 1e-6)
        throw Error("pushforward produced nonzero winding; inputs inconsistent",
                    "pushforward");
    return DirectionField::from_angle_field(PeriodicField::from_grid(res, std::move(r.grid)),
                                            F.oriented());
}

DirectionField pushforward(const TorusDiffeo& phi, const DirectionField& F, int res) {
    if (phi.is_exact_identity()) return F;
    return pushforward(phi, invert(phi, res), F, res);
}

}  // namespace torfol
