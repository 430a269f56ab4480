#include "torfol/diffeo.hpp"

#include <cmath>

namespace torfol {

TorusDiffeo::TorusDiffeo(Mat2i A, PeriodicField du, PeriodicField dv)
    : A_(A), du_(std::move(du)), dv_(std::move(dv)), exact_identity_(false) {
    if (A_.det() != 1)
        throw Error("integer part must be unimodular with det +1 "
                    "(orientation-reversing parts are out of scope)",
                    "diffeo");
}

TorusDiffeo TorusDiffeo::identity() {
    TorusDiffeo f;
    f.exact_identity_ = true;
    return f;
}

TorusDiffeo TorusDiffeo::translation(const Vec2& u) {
    TorusDiffeo f(Mat2i::identity(), PeriodicField::constant(u.x),
                  PeriodicField::constant(u.y));
    f.exact_identity_ = (u.x == 0.0 && u.y == 0.0);
    return f;
}

TorusDiffeo TorusDiffeo::linear(const Mat2i& A) {
    TorusDiffeo f(A, PeriodicField::constant(0.0), PeriodicField::constant(0.0));
    f.exact_identity_ = A.is_identity();
    return f;
}

TorusDiffeo TorusDiffeo::from_lift(const Mat2i& A, const std::function<Vec2(Vec2)>& lift,
                                   int res) {
    std::vector<double> sx(size_t(res) * res), sy(size_t(res) * res);
    for (int j = 0; j < res; ++j)
        for (int i = 0; i < res; ++i) {
            const Vec2 p{double(i) / res, double(j) / res};
            const Vec2 q = lift(p);
            const Vec2 d = q - A.apply(p);
            sx[size_t(j) * res + i] = d.x;
            sy[size_t(j) * res + i] = d.y;
        }
    return TorusDiffeo(A, PeriodicField::from_grid(res, std::move(sx)),
                       PeriodicField::from_grid(res, std::move(sy)));
}

Vec2 TorusDiffeo::apply_lift(const Vec2& p) const {
    if (exact_identity_) return p;
    return A_.apply(p) + Vec2{du_.eval(p.x, p.y), dv_.eval(p.x, p.y)};
}

Mat2 TorusDiffeo::jacobian(const Vec2& p) const {
    if (exact_identity_) return Mat2::identity();
    const Dual2 gx = du_.eval_grad(p.x, p.y);
    const Dual2 gy = dv_.eval_grad(p.x, p.y);
    Mat2 J = A_.real();
    J.a += gx.dx;
    J.b += gx.dy;
    J.c += gy.dx;
    J.d += gy.dy;
    return J;
}

DiffeoCertificate certify_diffeo(const TorusDiffeo& f, int res, double delta_det) {
    DiffeoCertificate cert;
    cert.min_det = 1e300;
    cert.lip = 0.0;
    const Mat2 Ainv = f.integer_part().inverse().real();
    TorusPoint det_witness, lip_witness;
    for (int j = 0; j < res; ++j) {
        for (int i = 0; i < res; ++i) {
            const Vec2 p{double(i) / res, double(j) / res};
            const Mat2 J = f.jacobian(p);
            const double dt = J.det();
            if (dt < cert.min_det) {
                cert.min_det = dt;
                det_witness = TorusPoint(p.x, p.y);
            }
            // Displacement derivative after factoring the integer part.
            const Dual2 gx = f.disp_x().eval_grad(p.x, p.y);
            const Dual2 gy = f.disp_y().eval_grad(p.x, p.y);
            const Mat2 Dd{gx.dx, gx.dy, gy.dx, gy.dy};
            const double lip = Ainv.mul(Dd).op_norm();
            if (lip > cert.lip) {
                cert.lip = lip;
                lip_witness = TorusPoint(p.x, p.y);
            }
        }
    }
    if (cert.min_det <= delta_det) {
        cert.ok = false;
        cert.witness = det_witness;
        cert.failure = "Jacobian determinant " + std::to_string(cert.min_det) +
                       " below floor at node (" + std::to_string(det_witness.x) + "," +
                       std::to_string(det_witness.y) + ")";
        return cert;
    }
    if (cert.lip >= 1.0) {
        cert.ok = false;
        cert.witness = lip_witness;
        cert.failure = "displacement Lipschitz bound " + std::to_string(cert.lip) +
                       " >= 1 at node (" + std::to_string(lip_witness.x) + "," +
                       std::to_string(lip_witness.y) + "); injectivity not certified";
        return cert;
    }
    cert.ok = true;
    cert.witness = lip_witness;
    return cert;
}

TorusDiffeo compose(const TorusDiffeo& f, const TorusDiffeo& g, int res) {
    if (f.is_exact_identity()) return g;
    if (g.is_exact_identity()) return f;
    const Mat2i A = f.integer_part().mul(g.integer_part());
    return TorusDiffeo::from_lift(
        A, [&](Vec2 p) { return f.apply_lift(g.apply_lift(p)); }, res);
}

TorusDiffeo invert(const TorusDiffeo& f, int res) {
    if (f.is_exact_identity()) return f;
    const Mat2i Ai = f.integer_part().inverse();
    std::vector<double> sx(size_t(res) * res), sy(size_t(res) * res);
    for (int j = 0; j < res; ++j) {
        for (int i = 0; i < res; ++i) {
            const Vec2 q{double(i) / res, double(j) / res};
            Vec2 p = Ai.apply(q);  // initial guess: invert the linear part
            bool converged = false;
            for (int it = 0; it < 60; ++it) {
                const Vec2 r = f.apply_lift(p) - q;
                if (std::abs(r.x) < 1e-13 && std::abs(r.y) < 1e-13) {
                    converged = true;
                    break;
                }
                const Mat2 J = f.jacobian(p);
                const Vec2 step = J.inverse().apply(r);
                p -= step;
            }
            if (!converged)
                throw Error("Newton inversion failed to converge at node (" +
                                std::to_string(q.x) + "," + std::to_string(q.y) + ")",
                            "diffeo-invert");
            const Vec2 d = p - Ai.apply(q);
            sx[size_t(j) * res + i] = d.x;
            sy[size_t(j) * res + i] = d.y;
        }
    }
    return TorusDiffeo(Ai, PeriodicField::from_grid(res, std::move(sx)),
                       PeriodicField::from_grid(res, std::move(sy)));
}

double diffeo_distance(const TorusDiffeo& f, const TorusDiffeo& g, int res) {
    double worst = 0.0;
    for (int j = 0; j < res; ++j)
        for (int i = 0; i < res; ++i) {
            const TorusPoint p(double(i) / res, double(j) / res);
            worst = std::max(worst, torus_dist(f.apply(p), g.apply(p)));
        }
    return worst;
}

}  // namespace torfol
