#include "torfol/circle_map.hpp"

#include <algorithm>
#include <cmath>

namespace torfol {

namespace {

// Fritsch-Carlson tangents for a strictly increasing periodic-lift table.
std::vector<double> fc_tangents(const std::vector<double>& v) {
    const int n = int(v.size()) - 1;  // v has n+1 entries
    std::vector<double> d(static_cast<size_t>(n));  // secant slopes (positive)
    for (int i = 0; i < n; ++i) d[size_t(i)] = (v[size_t(i) + 1] - v[size_t(i)]) * n;
    std::vector<double> m(size_t(n) + 1);
    for (int i = 0; i <= n; ++i) {
        const double dl = d[size_t((i - 1 + n) % n)];
        const double dr = d[size_t(i % n)];
        // Harmonic mean keeps the interpolant monotone (both slopes positive).
        m[size_t(i)] = 2.0 * dl * dr / (dl + dr);
    }
    // FC limiter.
    for (int i = 0; i < n; ++i) {
        const double dk = d[size_t(i)];
        double& m0 = m[size_t(i)];
        double& m1 = m[size_t(i) + 1];
        const double a = m0 / dk, b = m1 / dk;
        const double r = a * a + b * b;
        if (r > 9.0) {
            const double t = 3.0 / std::sqrt(r);
            m0 = t * a * dk;
            m1 = t * b * dk;
        }
    }
    m[size_t(n)] = m[0];
    return m;
}

double hermite1(double v0, double m0, double v1, double m1, double h, double s) {
    const double s2 = s * s, s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * v0 + (s3 - 2 * s2 + s) * h * m0 +
           (-2 * s3 + 3 * s2) * v1 + (s3 - s2) * h * m1;
}

double hermite1_deriv(double v0, double m0, double v1, double m1, double h, double s) {
    const double s2 = s * s;
    return ((6 * s2 - 6 * s) * v0 + (3 * s2 - 4 * s + 1) * h * m0 +
            (-6 * s2 + 6 * s) * v1 + (3 * s2 - 2 * s) * h * m1) /
           h;
}

}  // namespace

CircleMapLift CircleMapLift::from_samples(std::vector<double> samples) {
    const int n = int(samples.size());
    if (n < 4) throw Error("circle map lift needs at least 4 samples", "circle-map");
    std::vector<double> v(size_t(n) + 1);
    for (int i = 0; i < n; ++i) v[size_t(i)] = samples[size_t(i)];
    v[size_t(n)] = samples[0] + 1.0;
    for (int i = 0; i < n; ++i)
        if (!(v[size_t(i) + 1] > v[size_t(i)]))
            throw Error("sample table is not strictly increasing at index " +
                            std::to_string(i),
                        "circle-map");
    auto m = fc_tangents(v);
    return CircleMapLift(std::move(v), std::move(m));
}

CircleMapLift CircleMapLift::from_function(const std::function<double(double)>& H, int n) {
    std::vector<double> s(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) s[size_t(i)] = H(double(i) / n);
    return from_samples(std::move(s));
}

CircleMapLift CircleMapLift::rotation(double rho, int n) {
    std::vector<double> s(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) s[size_t(i)] = double(i) / n + rho;
    return from_samples(std::move(s));
}

double CircleMapLift::eval(double x) const {
    const int n = int(v_.size()) - 1;
    const double fl = std::floor(x);
    const double t = (x - fl) * n;
    int i = int(std::floor(t));
    if (i >= n) i = n - 1;
    const double s = t - i;
    const double h = 1.0 / n;
    return fl + hermite1(v_[size_t(i)], m_[size_t(i)], v_[size_t(i) + 1], m_[size_t(i) + 1],
                         h, s);
}

double CircleMapLift::deriv(double x) const {
    const int n = int(v_.size()) - 1;
    const double fl = std::floor(x);
    const double t = (x - fl) * n;
    int i = int(std::floor(t));
    if (i >= n) i = n - 1;
    const double s = t - i;
    const double h = 1.0 / n;
    return hermite1_deriv(v_[size_t(i)], m_[size_t(i)], v_[size_t(i) + 1],
                          m_[size_t(i) + 1], h, s);
}

double CircleMapLift::inverse(double y) const {
    // H is increasing with H(x+1) = H(x)+1, so bracket by integer shifts.
    const double y0 = v_[0];
    double lo = std::floor(y - y0) - 1.0;
    double hi = lo + 3.0;
    while (eval(lo) > y) lo -= 1.0;
    while (eval(hi) < y) hi += 1.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double v = eval(mid);
        if (std::abs(v - y) < 1e-15) return mid;
        if (v < y)
            lo = mid;
        else
            hi = mid;
        if (hi - lo < 1e-15) break;
    }
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < 4; ++it) {
        const double d = deriv(x);
        if (d <= 0) break;
        x -= (eval(x) - y) / d;
    }
    return x;
}

CircleMapLift CircleMapLift::composed_with(const CircleMapLift& inner, int n) const {
    const int m = n > 0 ? n : std::max(size(), inner.size());
    return from_function([&](double x) { return eval(inner.eval(x)); }, m);
}

CircleMapLift CircleMapLift::inverted(int n) const {
    const int m = n > 0 ? n : size();
    return from_function([&](double y) { return inverse(y); }, m);
}

CircleMapLift CircleMapLift::blend(const CircleMapLift& other, double w, int n) const {
    const int m = n > 0 ? n : std::max(size(), other.size());
    return from_function(
        [&](double x) { return (1.0 - w) * eval(x) + w * other.eval(x); }, m);
}

RotationNumberEstimate translation_number(const CircleMapLift& H, long long n_max,
                                          double x0, int rational_search_limit) {
    RotationNumberEstimate est;
    // Exact rational detection: look for sign-change roots of H^q(x) - x - p.
    const int scan = 256;
    std::vector<double> cur(static_cast<size_t>(scan));
    for (int i = 0; i < scan; ++i) cur[size_t(i)] = double(i) / scan;
    for (int q = 1; q <= rational_search_limit; ++q) {
        for (int i = 0; i < scan; ++i) cur[size_t(i)] = H.eval(cur[size_t(i)]);
        double dmin = 1e300, dmax = -1e300;
        for (int i = 0; i < scan; ++i) {
            const double d = cur[size_t(i)] - double(i) / scan;
            dmin = std::min(dmin, d);
            dmax = std::max(dmax, d);
        }
        for (long long p = llround(std::ceil(dmin - 1e-12)); p <= llround(std::floor(dmax + 1e-12));
             ++p) {
            // Root of H^q(x) - x - p: bisect between scan nodes.
            auto disp = [&](double x) {
                double v = x;
                for (int k = 0; k < q; ++k) v = H.eval(v);
                return v - x - double(p);
            };
            double prev = cur[0] - 0.0 - double(p);
            double prev_x = 0.0;
            for (int i = 1; i <= scan; ++i) {
                const double d =
                    (i == scan ? cur[0] + 1.0 : cur[size_t(i)]) - double(i) / scan -
                    double(p);
                if (std::abs(prev) < 1e-12 ||
                    (prev < 0 && d >= 0) || (prev > 0 && d <= 0)) {
                    double lo = prev_x, hi = double(i) / scan;
                    double dlo = prev;
                    if (std::abs(dlo) >= 1e-12) {
                        for (int it = 0; it < 100; ++it) {
                            const double mid = 0.5 * (lo + hi);
                            const double dm = disp(mid);
                            if (std::abs(dm) < 1e-13) { lo = hi = mid; break; }
                            if ((dlo < 0) == (dm < 0)) { lo = mid; dlo = dm; }
                            else hi = mid;
                        }
                    }
                    const double root = 0.5 * (lo + hi);
                    if (std::abs(disp(root)) < 1e-11) {
                        const long long g = gcd_ll(p, q);
                        est.tau = double(p) / double(q);
                        est.half_width = 0.0;
                        est.iterations = q;
                        est.rational_exact = true;
                        est.period = q / std::max(1LL, g);
                        est.offset = p / std::max(1LL, g);
                        return est;
                    }
                }
                prev = d;
                prev_x = double(i) / scan;
            }
        }
    }
    // Long-orbit average with the classical bracket.
    double x = x0;
    for (long long k = 0; k < n_max; ++k) x = H.eval(x);
    est.tau = (x - x0) / double(n_max);
    est.half_width = 1.0 / double(n_max);
    est.iterations = n_max;
    return est;
}

FixedPointReport fixed_points(const CircleMapLift& H, long long k, int scan) {
    FixedPointReport rep;
    auto disp = [&](double x) { return H.eval(x) - x - double(k); };
    double prev = disp(0.0);
    for (int i = 1; i <= scan; ++i) {
        const double x1 = double(i) / scan;
        const double d1 = disp(x1);
        const double x0 = double(i - 1) / scan;
        if (std::abs(prev) < 1e-14) {
            if (rep.roots.empty() || std::abs(rep.roots.back() - x0) > 1e-9)
                rep.roots.push_back(x0);
        } else if ((prev < 0 && d1 >= 0) || (prev > 0 && d1 <= 0)) {
            double lo = x0, hi = x1, dlo = prev;
            for (int it = 0; it < 100; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double dm = disp(mid);
                if ((dlo < 0) == (dm < 0)) { lo = mid; dlo = dm; }
                else hi = mid;
                if (hi - lo < 1e-12) break;
            }
            const double root = 0.5 * (lo + hi);
            // A root at the wrap is the same point as x = 0.
            const bool wraps = root > 1.0 - 1e-9 && !rep.roots.empty() &&
                               rep.roots.front() < 1e-9;
            if (root < 1.0 - 1e-9 || (!wraps && root < 1.0)) {
                if (rep.roots.empty() || std::abs(rep.roots.back() - root) > 1e-9)
                    rep.roots.push_back(root);
            }
        } else if (std::abs(d1) < 1e-8 && i < scan) {
            // Possible tangential root: local minimum of |disp| without a sign
            // change.
            const double d2 = disp(double(i + 1) / scan);
            if (std::abs(d1) <= std::abs(prev) && std::abs(d1) <= std::abs(d2) &&
                (prev < 0) == (d2 < 0))
                rep.degenerate.push_back(x1);
        }
        prev = d1;
    }
    return rep;
}

OrderReport compare_order(const CircleMapLift& H, const CircleMapLift& F, long long n_max) {
    OrderReport rep;
    rep.pointwise_strict = true;
    const int scan = 4096;
    for (int i = 0; i < scan; ++i) {
        const double x = double(i) / scan;
        if (!(H.eval(x) < F.eval(x))) {
            rep.pointwise_strict = false;
            break;
        }
    }
    const auto th = translation_number(H, n_max);
    const auto tf = translation_number(F, n_max);
    if (th.tau + th.half_width < tf.tau - tf.half_width) {
        rep.tau_ordered = true;
        rep.decided = true;
    } else if (th.tau - th.half_width > tf.tau + tf.half_width) {
        rep.tau_ordered = false;
        rep.decided = true;
    } else {
        rep.decided = false;
        rep.note = "tau brackets overlap; undecided at this n_max";
    }
    return rep;
}

void isotonic_project(std::vector<double>& v) {
    // Pool adjacent violators.
    const size_t n = v.size();
    std::vector<double> level(n), weight(n);
    std::vector<size_t> count(n);
    size_t m = 0;
    for (size_t i = 0; i < n; ++i) {
        level[m] = v[i];
        weight[m] = 1.0;
        count[m] = 1;
        ++m;
        while (m > 1 && level[m - 2] > level[m - 1]) {
            const double w = weight[m - 2] + weight[m - 1];
            level[m - 2] = (level[m - 2] * weight[m - 2] + level[m - 1] * weight[m - 1]) / w;
            weight[m - 2] = w;
            count[m - 2] += count[m - 1];
            --m;
        }
    }
    size_t idx = 0;
    for (size_t b = 0; b < m; ++b)
        for (size_t k = 0; k < count[b]; ++k) v[idx++] = level[b];
}

Linearization linearize(const CircleMapLift& H, double rho, long long n_avg,
                        double tol_conj, int n_samples, int n_test) {
    const auto est = translation_number(H);
    if (std::abs(est.tau - rho) > est.half_width + 1e-12)
        throw Error("rho " + std::to_string(rho) + " outside the tau bracket [" +
                        std::to_string(est.tau - est.half_width) + "," +
                        std::to_string(est.tau + est.half_width) + "]",
                    "linearize");
    std::vector<double> hs(static_cast<size_t>(n_samples));
    for (int i = 0; i < n_samples; ++i) {
        const double x0 = double(i) / n_samples;
        double x = x0;
        double acc = 0.0;
        for (long long k = 0; k < n_avg; ++k) {
            acc += x - double(k) * rho;
            x = H.eval(x);
        }
        hs[size_t(i)] = acc / double(n_avg);
    }
    const double h0 = hs[0];
    for (auto& v : hs) v -= h0;
    // Floating-point averaging can break monotonicity at machine scale.
    isotonic_project(hs);
    // Separate ties so the sample table is strictly increasing.
    for (int i = 1; i < n_samples; ++i)
        if (hs[size_t(i)] <= hs[size_t(i) - 1])
            hs[size_t(i)] = hs[size_t(i) - 1] + 1e-12;
    if (hs.back() >= hs[0] + 1.0) {
        // Extremely degenerate; bail out with a failed linearization.
        Linearization lin;
        lin.h = CircleMapLift::identity();
        lin.rho = rho;
        lin.residual = 1e300;
        lin.ok = false;
        return lin;
    }
    Linearization lin;
    lin.h = CircleMapLift::from_samples(std::move(hs));
    lin.rho = rho;
    double worst = 0.0;
    for (int i = 0; i < n_test; ++i) {
        const double x = double(i) / n_test;
        worst = std::max(worst, std::abs(lin.h.eval(H.eval(x)) - lin.h.eval(x) - rho));
    }
    lin.residual = worst;
    lin.ok = worst < tol_conj;
    return lin;
}

DiophantineSelection select_diophantine(const std::function<CircleMapLift(double)>& family,
                                        std::optional<double> target, double tol_rot,
                                        long long n_max) {
    const long long n_use = std::max(n_max, (long long)std::llround(4.0 / tol_rot));
    auto tau_at = [&](double t) { return translation_number(family(t), n_use); };
    auto t0 = tau_at(0.0);
    auto t1 = tau_at(1.0);
    if (std::abs(t0.tau - t1.tau) <= t0.half_width + t1.half_width)
        throw Error("family does not straddle: tau(0) and tau(1) coincide within brackets",
                    "select-diophantine");
    const double golden = 0.61803398874989484820458683436564;
    const double tgt = target.value_or(t0.tau + golden * (t1.tau - t0.tau));
    const double sign = t1.tau > t0.tau ? 1.0 : -1.0;
    if ((tgt - t0.tau) * sign <= 0.0 || (t1.tau - tgt) * sign <= 0.0)
        throw Error("target rotation number is outside (tau(0), tau(1))",
                    "select-diophantine");
    double lo = 0.0, hi = 1.0;
    RotationNumberEstimate cur = t0;
    double t_star = 0.0;
    for (int it = 0; it < 200; ++it) {
        t_star = 0.5 * (lo + hi);
        cur = tau_at(t_star);
        if (std::abs(cur.tau - tgt) <= tol_rot) {
            DiophantineSelection sel;
            sel.t_star = t_star;
            sel.target = tgt;
            sel.tau = cur;
            return sel;
        }
        // Monotonicity guard: the value must stay inside the running bracket.
        const double margin = cur.half_width + 10 * tol_rot;
        if ((cur.tau - t0.tau) * sign < -margin || (t1.tau - cur.tau) * sign < -margin)
            throw Error("translation number not monotone in t at bracket resolution",
                        "select-diophantine");
        if ((cur.tau - tgt) * sign < 0.0)
            lo = t_star;
        else
            hi = t_star;
        if (hi - lo < 1e-14) break;
    }
    DiophantineSelection sel;
    sel.t_star = t_star;
    sel.target = tgt;
    sel.tau = cur;
    if (std::abs(cur.tau - tgt) > tol_rot + cur.half_width)
        throw Error("bisection failed to pin the target rotation number",
                    "select-diophantine");
    return sel;
}

}  // namespace torfol
