#include "torfol/section.hpp"

#include <cmath>

namespace torfol {

CrossSection CrossSection::straight(const HomotopyClass& cls, double offset) {
    return graph(cls, Periodic1D::constant(offset));
}

CrossSection CrossSection::graph(const HomotopyClass& cls, Periodic1D w) {
    CrossSection s;
    s.cls_ = cls;
    s.frame_ = frame_for_class(cls);
    s.w_ = std::move(w);
    return s;
}

CrossSection CrossSection::graph_with_crossing(const HomotopyClass& cls,
                                               const HomotopyClass& crossing,
                                               Periodic1D w) {
    Mat2i M{cls.h, crossing.h, cls.v, crossing.v};
    if (M.det() != 1)
        throw Error("det[class | crossing] must be +1, got classes " + cls.str() + ", " +
                        crossing.str(),
                    "section");
    CrossSection s;
    s.cls_ = cls;
    s.frame_ = M;
    s.w_ = std::move(w);
    return s;
}

Vec2 CrossSection::point(double s) const {
    return frame_.apply({s, w_.eval(s)});
}

Vec2 CrossSection::tangent(double s) const {
    const Vec2 t = frame_.apply({1.0, w_.deriv(s)});
    return t.normalized();
}

double CrossSection::level(const Vec2& lift) const {
    const Vec2 ab = frame_.inverse().apply(lift);
    return ab.y - w_.eval(ab.x);
}

namespace {
bool constant_samples(const Periodic1D& w) {
    for (double v : w.samples())
        if (v != w.samples().front()) return false;
    return true;
}
}  // namespace

TorusDiffeo CrossSection::chart(int res) const {
    const Mat2i A = frame_.inverse();
    // q -> A q - (0, w((A q)_x)); the displacement is periodic since A is
    // integral. Straight sections get an exact constant displacement.
    if (constant_samples(w_)) {
        const double c = w_.samples().front();
        return TorusDiffeo(A, PeriodicField::constant(0.0), PeriodicField::constant(-c));
    }
    const Periodic1D w = w_;
    auto dy = [A, w](double x, double y) {
        const Vec2 aq = A.apply({x, y});
        return -w.eval(aq.x);
    };
    return TorusDiffeo(A, PeriodicField::constant(0.0),
                       PeriodicField::from_function(dy, res));
}

TorusDiffeo CrossSection::chart_inverse(int res) const {
    // p -> frame * (p + (0, w(p_x))).
    const Mat2i M = frame_;
    if (constant_samples(w_)) {
        const double c = w_.samples().front();
        const Vec2 shift = M.apply({0.0, c});
        return TorusDiffeo(M, PeriodicField::constant(shift.x),
                           PeriodicField::constant(shift.y));
    }
    const Periodic1D w = w_;
    auto lift = [M, w](Vec2 p) { return M.apply({p.x, p.y + w.eval(p.x)}); };
    return TorusDiffeo::from_lift(M, lift, res);
}

double CrossSection::margin_against(const DirectionField& F, int samples) const {
    double worst = 2.0;
    for (int i = 0; i < samples; ++i) {
        const double s = double(i) / samples;
        const Vec2 p = point(s);
        const Vec2 t = tangent(s);
        const double at = std::atan2(t.y, t.x);
        worst = std::min(worst, std::abs(std::sin(at - F.angle(p.x, p.y))));
    }
    return worst;
}

CompletenessReport completeness_check(const DirectionField& F, const CrossSection& s,
                                      int seeds, std::uint64_t seed, double budget,
                                      const IntegOptions& opts) {
    CompletenessReport rep;
    rep.seeds = seeds;
    CounterRng rng{seed, 0xC0FFEE};
    IntegOptions io = opts;
    io.max_arclen = budget;
    for (int k = 0; k < seeds; ++k) {
        const Vec2 p{rng.uniform(2 * size_t(k)), rng.uniform(2 * size_t(k) + 1)};
        const double g0 = s.level(p);
        StopLevel stop;
        stop.g = [&s](const Vec2& q) { return s.level(q); };
        stop.level = std::floor(g0);
        stop.has_level2 = true;
        stop.level2 = std::floor(g0) + 1.0;
        if (g0 == stop.level) {  // started on the curve
            ++rep.hits;
            continue;
        }
        const LeafSegment fwd = integrate_leaf(F, p, +1, stop, io);
        if (fwd.hit) {
            ++rep.hits;
            continue;
        }
        const LeafSegment bwd = integrate_leaf(F, p, -1, stop, io);
        if (bwd.hit) {
            ++rep.hits;
            continue;
        }
        rep.trapped_start = p;
        rep.complete = false;
        return rep;
    }
    rep.complete = true;
    return rep;
}

}  // namespace torfol
