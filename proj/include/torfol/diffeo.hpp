#ifndef TORFOL_DIFFEO_HPP
#define TORFOL_DIFFEO_HPP

#include <functional>
#include <optional>
#include <string>

#include "torfol/periodic_field.hpp"

namespace torfol {

/// Tolerances shared across the toolkit; every default comes from the build
/// configuration and may be overridden per scenario.
struct Tolerances {
    double tol_inv = 1e-6;        // inverse round-trip residual
    double delta_det = 1e-4;      // Jacobian determinant floor
    double tol_leaf = 1e-9;       // leaf integrator tolerance
    double tol_hit = 1e-10;       // section event location
    double max_step = 1e-2;       // leaf integrator max step
    double tol_hol = 1e-5;        // holonomy comparison
    double tol_push = 1e-3;       // pushforward angle deviation (radians)
    double tol_conj = 5e-3;       // circle-map linearization residual
    double tol_rot = 1e-6;        // rotation-number pinning
    double delta_sec = 1e-2;      // section transversality floor
    double delta_cone = 1e-2;     // cone angle floor (radians)
    double continuity_budget = 0.05;  // sup-norm between adjacent family samples
    int grid_res = kDefaultGridRes;
    int t_samples = 33;
    int n_max = 100000;           // rotation-number iterate budget
    int completeness_seeds = 1000;
};

/// A C^1 diffeomorphism of the torus in the canonical form
///   lift(p) = A p + d(p),
/// with A in SL(2,Z) (orientation preserving) and d a pair of periodic
/// displacement fields. This covers every diffeomorphism the toolkit builds:
/// maps isotopic to the identity composed with Dehn twists.
class TorusDiffeo {
public:
    TorusDiffeo() = default;
    TorusDiffeo(Mat2i A, PeriodicField du, PeriodicField dv);

    static TorusDiffeo identity();
    static TorusDiffeo translation(const Vec2& u);
    static TorusDiffeo linear(const Mat2i& A);
    /// Samples p -> f(p) - A p on a res x res grid. f must be given as a lift.
    static TorusDiffeo from_lift(const Mat2i& A, const std::function<Vec2(Vec2)>& lift,
                                 int res = kDefaultGridRes);

    Vec2 apply_lift(const Vec2& p) const;
    TorusPoint apply(const TorusPoint& p) const { return reduce(apply_lift(p.lift())); }
    Mat2 jacobian(const Vec2& p) const;
    const Mat2i& integer_part() const { return A_; }
    const PeriodicField& disp_x() const { return du_; }
    const PeriodicField& disp_y() const { return dv_; }
    HomotopyClass act(const HomotopyClass& c) const { return apply_class(A_, c); }

    bool is_exact_identity() const { return exact_identity_; }

private:
    Mat2i A_;
    PeriodicField du_ = PeriodicField::constant(0.0);
    PeriodicField dv_ = PeriodicField::constant(0.0);
    bool exact_identity_ = true;
};

struct DiffeoCertificate {
    bool ok = false;
    double min_det = 0.0;            // min Jacobian determinant over nodes
    double lip = 0.0;                // sup operator norm of D(A^{-1} d)
    TorusPoint witness;              // node where the binding check is worst
    std::string failure;             // empty when ok
};

/// Checks (a) det J > delta_det at all grid nodes, (b) global injectivity via
/// the displacement Lipschitz bound sup ||D(A^{-1} d)|| < 1, (c) degree +1
/// (unimodular integer part, enforced at construction). Conservative: a true
/// diffeomorphism may fail (b); it is then flagged, never silently accepted.
DiffeoCertificate certify_diffeo(const TorusDiffeo& f, int res = kDefaultGridRes,
                                 double delta_det = 1e-4);

/// Grid-sampled composition f o g; integer parts multiply.
TorusDiffeo compose(const TorusDiffeo& f, const TorusDiffeo& g, int res = kDefaultGridRes);

/// Newton inversion per grid node. Throws naming the node on non-convergence.
TorusDiffeo invert(const TorusDiffeo& f, int res = kDefaultGridRes);

/// Max over a sample grid of |f(p) - g(p)| (torus distance).
double diffeo_distance(const TorusDiffeo& f, const TorusDiffeo& g, int res = 64);

}  // namespace torfol

#endif  // TORFOL_DIFFEO_HPP
