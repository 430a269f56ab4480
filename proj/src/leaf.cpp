#include "torfol/leaf.hpp"

#include <algorithm>
#include <cmath>

namespace torfol {

namespace {

Vec2 hermite(const Vec2& p0, const Vec2& t0, const Vec2& p1, const Vec2& t1, double h,
             double s) {
    const double s2 = s * s, s3 = s2 * s;
    const double h00 = 2 * s3 - 3 * s2 + 1;
    const double h10 = s3 - 2 * s2 + s;
    const double h01 = -2 * s3 + 3 * s2;
    const double h11 = s3 - s2;
    return h00 * p0 + (h10 * h) * t0 + h01 * p1 + (h11 * h) * t1;
}

struct Stepper {
    const std::function<Vec2(const Vec2&)>& f;

    Vec2 rk4(const Vec2& p, double h) const {
        const Vec2 k1 = f(p);
        const Vec2 k2 = f(p + (h / 2) * k1);
        const Vec2 k3 = f(p + (h / 2) * k2);
        const Vec2 k4 = f(p + h * k3);
        return p + (h / 6) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
};

}  // namespace

Vec2 LeafSegment::at_arclen(double s) const {
    if (pts.empty()) throw Error("empty leaf segment");
    if (s <= 0.0) return pts.front();
    if (s >= length()) return pts.back();
    const auto it = std::upper_bound(arclen.begin(), arclen.end(), s);
    const size_t i = size_t(it - arclen.begin()) - 1;
    const double h = arclen[i + 1] - arclen[i];
    const double u = (s - arclen[i]) / h;
    return hermite(pts[i], tangents[i], pts[i + 1], tangents[i + 1], h, u);
}

std::optional<double> LeafSegment::first_crossing(
    const std::function<double(const Vec2&)>& g, double level, double tol) const {
    if (pts.size() < 2) return std::nullopt;
    double g0 = g(pts[0]) - level;
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
        const double g1 = g(pts[i + 1]) - level;
        if (g0 == 0.0) return arclen[i];
        if ((g0 < 0 && g1 >= 0) || (g0 > 0 && g1 <= 0)) {
            const double h = arclen[i + 1] - arclen[i];
            double lo = 0.0, hi = 1.0;
            double glo = g0;
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double gm =
                    g(hermite(pts[i], tangents[i], pts[i + 1], tangents[i + 1], h, mid)) -
                    level;
                if (std::abs(gm) < tol) return arclen[i] + mid * h;
                if ((glo < 0) == (gm < 0)) {
                    lo = mid;
                    glo = gm;
                } else {
                    hi = mid;
                }
            }
            return arclen[i] + 0.5 * (lo + hi) * h;
        }
        g0 = g1;
    }
    return std::nullopt;
}

LeafSegment integrate_leaf_fn(const std::function<Vec2(const Vec2&)>& dir, Vec2 start,
                              const StopLevel& stop, const IntegOptions& opts) {
    LeafSegment seg;
    seg.tol = opts.tol;
    seg.max_step = opts.max_step;
    Stepper st{dir};

    Vec2 p = start;
    seg.pts.push_back(p);
    seg.tangents.push_back(dir(p));
    seg.arclen.push_back(0.0);

    const bool has_stop = bool(stop.g);
    double gprev = has_stop ? stop.g(p) - stop.level : 0.0;
    double gprev2 = (has_stop && stop.has_level2) ? stop.g(p) - stop.level2 : 0.0;
    double h = opts.max_step;
    double s = 0.0;

    while (s < opts.max_arclen) {
        // Land exactly on the arclength budget.
        if (s + h > opts.max_arclen) {
            h = opts.max_arclen - s;
            if (h < opts.min_step) break;
        }
        // Step doubling: full step vs two half steps, with local extrapolation.
        Vec2 full = st.rk4(p, h);
        Vec2 half = st.rk4(st.rk4(p, h / 2), h / 2);
        const double err = (full - half).norm();
        if (err > opts.tol * h && h > opts.min_step) {
            h = std::max(opts.min_step,
                         h * std::clamp(0.9 * std::pow(opts.tol * h / (err + 1e-300), 0.25),
                                        0.2, 1.0));
            continue;
        }
        Vec2 pnext = half + (1.0 / 15.0) * (half - full);
        const double ds = h;
        const Vec2 tnext = dir(pnext);

        if (has_stop) {
            const double gnext = stop.g(pnext) - stop.level;
            const double gnext2 = stop.has_level2 ? stop.g(pnext) - stop.level2 : 0.0;
            const bool cross1 = (gprev < 0 && gnext >= 0) || (gprev > 0 && gnext <= 0);
            const bool cross2 =
                stop.has_level2 && ((gprev2 < 0 && gnext2 >= 0) || (gprev2 > 0 && gnext2 <= 0));
            if (cross1 || cross2) {
                const double lvl = cross1 ? stop.level : stop.level2;
                const double g0 = cross1 ? gprev : gprev2;
                // Event inside this step: bisect on the Hermite reconstruction.
                double lo = 0.0, hi = 1.0, glo = g0;
                Vec2 hitp = pnext;
                for (int it = 0; it < 200; ++it) {
                    const double mid = 0.5 * (lo + hi);
                    const Vec2 pm = hermite(p, seg.tangents.back(), pnext, tnext, ds, mid);
                    const double gm = stop.g(pm) - lvl;
                    if (std::abs(gm) < opts.tol_hit) {
                        hitp = pm;
                        lo = hi = mid;
                        break;
                    }
                    if ((glo < 0) == (gm < 0)) {
                        lo = mid;
                        glo = gm;
                    } else {
                        hi = mid;
                    }
                    hitp = pm;
                }
                const double frac = 0.5 * (lo + hi);
                s += ds * frac;
                seg.pts.push_back(hitp);
                seg.tangents.push_back(dir(hitp));
                seg.arclen.push_back(s);
                seg.hit = true;
                return seg;
            }
            gprev = gnext;
            gprev2 = gnext2;
        }

        p = pnext;
        s += ds;
        seg.pts.push_back(p);
        seg.tangents.push_back(tnext);
        seg.arclen.push_back(s);

        if (err < 0.25 * opts.tol * h)
            h = std::min(opts.max_step, h * 1.5);
    }
    seg.hit = false;  // budget exhausted: trapped (or no stop set given)
    return seg;
}

LeafSegment integrate_leaf(const DirectionField& F, Vec2 start, int orient_sign,
                           const StopLevel& stop, const IntegOptions& opts) {
    const double sgn = orient_sign >= 0 ? 1.0 : -1.0;
    return integrate_leaf_fn(
        [&F, sgn](const Vec2& p) { return sgn * F.direction(p.x, p.y); }, start, stop, opts);
}

}  // namespace torfol
