#ifndef TORFOL_CIRCLE_MAP_HPP
#define TORFOL_CIRCLE_MAP_HPP

#include <functional>
#include <optional>
#include <vector>

#include "torfol/geom.hpp"

namespace torfol {

/// Lift of an orientation-preserving circle homeomorphism: a strictly
/// increasing map H of the real line with H(x+1) = H(x) + 1, stored as a
/// monotone sample table on [0,1] with monotone cubic (Fritsch-Carlson)
/// interpolation. Commutation with the unit translation is exact by
/// construction of the evaluation.
class CircleMapLift {
public:
    CircleMapLift() : CircleMapLift(rotation(0.0)) {}

    /// samples[i] = H(i/N) for i in [0,N); strict monotonicity (including the
    /// wrap H(1) = H(0)+1) is enforced.
    static CircleMapLift from_samples(std::vector<double> samples);
    static CircleMapLift from_function(const std::function<double(double)>& H, int n = 1024);
    static CircleMapLift rotation(double rho, int n = 16);
    static CircleMapLift identity(int n = 16) { return rotation(0.0, n); }

    double eval(double x) const;
    double deriv(double x) const;
    double operator()(double x) const { return eval(x); }
    /// Inverse by bisection + Newton polish.
    double inverse(double y) const;
    int size() const { return int(v_.size()); }
    const std::vector<double>& samples() const { return v_; }

    CircleMapLift composed_with(const CircleMapLift& inner, int n = 0) const;
    CircleMapLift inverted(int n = 0) const;
    /// Pointwise convex combination of lifts (1-w)*this + w*other.
    CircleMapLift blend(const CircleMapLift& other, double w, int n = 0) const;

private:
    explicit CircleMapLift(std::vector<double> v, std::vector<double> m)
        : v_(std::move(v)), m_(std::move(m)) {}
    std::vector<double> v_;  // N+1 values, v_[N] = v_[0] + 1
    std::vector<double> m_;  // Fritsch-Carlson tangents (per sample)
};

struct RotationNumberEstimate {
    double tau = 0.0;
    double half_width = 0.0;  // rigorous bracket radius: |(H^n(x)-x)/n - tau| <= 1/n
    long long iterations = 0;
    bool rational_exact = false;  // found exactly via a periodic orbit
    long long period = 0;         // q, when rational_exact (tau = p/q)
    long long offset = 0;         // p
};

/// Long-orbit translation number with the classical 1/n bracket. A periodic
/// orbit of period <= rational_search_limit is searched first; on a hit the
/// estimate is exact (half_width 0).
RotationNumberEstimate translation_number(const CircleMapLift& H, long long n_max = 100000,
                                          double x0 = 0.0,
                                          int rational_search_limit = 64);

struct FixedPointReport {
    std::vector<double> roots;       // zeros of H(x) - x - k in [0,1)
    std::vector<double> degenerate;  // tangential near-zero candidates
};

/// Sign-change roots of the displacement H(x) - x - k, polished by bisection
/// to 1e-10. Tangential candidates (local |displacement| minima below 1e-8
/// without sign change) are reported separately.
FixedPointReport fixed_points(const CircleMapLift& H, long long k, int scan = 4096);

struct OrderReport {
    bool pointwise_strict = false;  // H(x) < F(x) at all grid points
    bool tau_ordered = false;       // brackets disjoint with tau(H) < tau(F)
    bool decided = false;
    std::string note;
};

OrderReport compare_order(const CircleMapLift& H, const CircleMapLift& F,
                          long long n_max = 100000);

struct Linearization {
    CircleMapLift h;     // conjugacy candidate, h(0) = 0
    double rho = 0.0;
    double residual = 0.0;  // sup |h(H(x)) - h(x) - rho| over the test grid
    bool ok = false;
};

/// Birkhoff-averaged conjugacy h(x) = (1/n) sum_{k<n} (H^k(x) - k rho),
/// normalized and monotonized by isotonic projection. Fails (ok = false) when
/// the residual exceeds tol_conj; throws when rho is outside the tau bracket.
Linearization linearize(const CircleMapLift& H, double rho, long long n_avg = 10000,
                        double tol_conj = 5e-3, int n_samples = 1024, int n_test = 1000);

struct DiophantineSelection {
    double t_star = 0.0;
    double target = 0.0;
    RotationNumberEstimate tau;
};

/// Bisection over a one-parameter family of circle maps until the
/// translation-number bracket pins `target` within tol_rot. The family must
/// straddle the target at t = 0, 1. Defaults the target to the golden-section
/// point of (tau(0), tau(1)).
DiophantineSelection select_diophantine(
    const std::function<CircleMapLift(double)>& family,
    std::optional<double> target = std::nullopt, double tol_rot = 1e-6,
    long long n_max = 100000);

/// PAVA isotonic projection (non-decreasing) used by linearize; exposed for
/// tests.
void isotonic_project(std::vector<double>& v);

}  // namespace torfol

#endif  // TORFOL_CIRCLE_MAP_HPP
