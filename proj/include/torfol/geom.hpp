#ifndef TORFOL_GEOM_HPP
#define TORFOL_GEOM_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace torfol {

/// Generic runtime error carrying the pipeline stage that produced it.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg, std::string stage_tag = {})
        : std::runtime_error(stage_tag.empty() ? msg : stage_tag + ": " + msg),
          stage(std::move(stage_tag)) {}
    std::string stage;
};

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2 operator-() const { return {-x, -y}; }
    Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
    Vec2& operator-=(const Vec2& o) { x -= o.x; y -= o.y; return *this; }

    double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    double cross(const Vec2& o) const { return x * o.y - y * o.x; }
    double norm() const { return std::hypot(x, y); }
    Vec2 normalized() const {
        const double n = norm();
        if (n == 0.0) throw Error("cannot normalize zero vector");
        return {x / n, y / n};
    }
};

inline Vec2 operator*(double s, const Vec2& v) { return v * s; }

/// A point of the universal cover R^2.
using PlanePoint = Vec2;

/// Real 2x2 matrix, row major.
struct Mat2 {
    double a = 1.0, b = 0.0, c = 0.0, d = 1.0;  // [[a,b],[c,d]]

    Vec2 apply(const Vec2& v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }
    Mat2 mul(const Mat2& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d,
                c * o.a + d * o.c, c * o.b + d * o.d};
    }
    double det() const { return a * d - b * c; }
    Mat2 inverse() const {
        const double dt = det();
        if (std::abs(dt) < 1e-300) throw Error("singular 2x2 matrix");
        return {d / dt, -b / dt, -c / dt, a / dt};
    }
    /// Spectral norm (largest singular value).
    double op_norm() const {
        // Singular values of [[a,b],[c,d]] via the closed form.
        const double q = a * a + b * b + c * c + d * d;
        const double dt = det();
        const double disc = std::sqrt(std::max(0.0, q * q - 4.0 * dt * dt));
        return std::sqrt(0.5 * (q + disc));
    }
    static Mat2 identity() { return {}; }
};

/// Unimodular integer matrix (det = +1); the linear part of a torus diffeomorphism.
struct Mat2i {
    long long a = 1, b = 0, c = 0, d = 1;

    long long det() const { return a * d - b * c; }
    Mat2i mul(const Mat2i& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d,
                c * o.a + d * o.c, c * o.b + d * o.d};
    }
    Mat2i inverse() const {
        if (det() != 1) throw Error("integer part must be unimodular with det +1");
        return {d, -b, -c, a};
    }
    Vec2 apply(const Vec2& v) const {
        return {double(a) * v.x + double(b) * v.y, double(c) * v.x + double(d) * v.y};
    }
    Mat2 real() const { return {double(a), double(b), double(c), double(d)}; }
    bool is_identity() const { return a == 1 && b == 0 && c == 0 && d == 1; }
    static Mat2i identity() { return {}; }
};

/// A free homotopy class of loops on the torus, written (h, v) =
/// (winding in x, winding in y).
struct HomotopyClass {
    long long h = 0;
    long long v = 0;

    bool operator==(const HomotopyClass& o) const { return h == o.h && v == o.v; }
    bool operator!=(const HomotopyClass& o) const { return !(*this == o); }
    bool is_null() const { return h == 0 && v == 0; }
    HomotopyClass negated() const { return {-h, -v}; }
    /// True when this = n * other for some integer n (other nonzero).
    bool is_multiple_of(const HomotopyClass& o) const {
        if (o.is_null()) return is_null();
        return h * o.v - v * o.h == 0;
    }
    std::string str() const { return "(" + std::to_string(h) + "," + std::to_string(v) + ")"; }
};

inline HomotopyClass apply_class(const Mat2i& M, const HomotopyClass& c) {
    return {M.a * c.h + M.b * c.v, M.c * c.h + M.d * c.v};
}

inline long long gcd_ll(long long a, long long b) {
    a = std::llabs(a); b = std::llabs(b);
    while (b) { const long long t = a % b; a = b; b = t; }
    return a;
}

/// Completes a primitive class to an SL(2,Z) matrix whose first column is the
/// class vector. Used to put a cross-section in standard position.
inline Mat2i frame_for_class(const HomotopyClass& cls) {
    const long long p = cls.h, q = cls.v;
    if (p == 0 && q == 0) throw Error("null homotopy class has no frame");
    if (gcd_ll(p, q) != 1) throw Error("homotopy class " + cls.str() + " is not primitive");
    // Extended Euclid: find (r,s) with p*s - q*r = 1.
    long long old_r = 1, r = 0, old_s = 0, s = 1, aa = p, bb = q;
    while (bb) {
        const long long quot = aa / bb;
        long long t = aa - quot * bb; aa = bb; bb = t;
        t = old_r - quot * r; old_r = r; r = t;
        t = old_s - quot * s; old_s = s; s = t;
    }
    // aa = gcd = ±1 and old_r*p + old_s*q = aa.
    long long u = old_r, v = old_s;
    if (aa < 0) { u = -u; v = -v; }
    // Columns (p, q) and (-v, u): det = p*u + q*v = 1.
    Mat2i M{p, -v, q, u};
    if (M.det() != 1) throw Error("internal: frame construction failed");
    return M;
}

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kPi = 3.1415926535897932384626433832795;

/// Reduce a real number into [0,1). Idempotent; -0.0 and values that round up
/// to 1.0 are mapped to 0.
inline double mod1(double t) {
    double r = t - std::floor(t);
    if (r >= 1.0) r -= 1.0;
    if (r < 0.0) r += 1.0;
    return r;
}

/// A point of the torus R^2/Z^2 with both coordinates reduced into [0,1).
struct TorusPoint {
    double x = 0.0;
    double y = 0.0;

    TorusPoint() = default;
    TorusPoint(double x_, double y_) : x(mod1(x_)), y(mod1(y_)) {}

    Vec2 lift() const { return {x, y}; }
};

inline TorusPoint reduce(const PlanePoint& p) { return TorusPoint(p.x, p.y); }

/// Distance on the torus (shortest representative).
inline double torus_dist(const TorusPoint& p, const TorusPoint& q) {
    double dx = std::abs(p.x - q.x);
    double dy = std::abs(p.y - q.y);
    dx = std::min(dx, 1.0 - dx);
    dy = std::min(dy, 1.0 - dy);
    return std::hypot(dx, dy);
}

/// Signed angular difference wrapped into (-pi, pi].
inline double wrap_angle(double a) {
    double r = std::remainder(a, kTwoPi);
    return r;
}

/// Counter-based deterministic generator (splitmix64). All randomness in the
/// toolkit is derived from one 64-bit seed plus a stream tag and a counter, so
/// runs are reproducible regardless of call order.
struct CounterRng {
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;

    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t bits(std::uint64_t counter) const {
        return mix(mix(seed ^ 0x243f6a8885a308d3ULL * stream) + counter);
    }
    /// Uniform double in [0,1).
    double uniform(std::uint64_t counter) const {
        return double(bits(counter) >> 11) * 0x1.0p-53;
    }
    CounterRng substream(std::uint64_t tag) const { return {seed, mix(stream ^ tag)}; }
};

}  // namespace torfol

#endif  // TORFOL_GEOM_HPP
