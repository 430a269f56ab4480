#include "torfol/periodic_field.hpp"

#include <cmath>

namespace torfol {

void catmull_rom_weights(double t, double w[4]) {
    const double t2 = t * t, t3 = t2 * t;
    w[0] = -0.5 * t3 + t2 - 0.5 * t;
    w[1] = 1.5 * t3 - 2.5 * t2 + 1.0;
    w[2] = -1.5 * t3 + 2.0 * t2 + 0.5 * t;
    w[3] = 0.5 * t3 - 0.5 * t2;
}

void catmull_rom_dweights(double t, double w[4]) {
    const double t2 = t * t;
    w[0] = -1.5 * t2 + 2.0 * t - 0.5;
    w[1] = 4.5 * t2 - 5.0 * t;
    w[2] = -4.5 * t2 + 4.0 * t + 0.5;
    w[3] = 1.5 * t2 - t;
}

// ---- Periodic1D ----

Periodic1D::Periodic1D(std::vector<double> samples) : v_(std::move(samples)) {
    if (v_.size() < 4) throw Error("Periodic1D needs at least 4 samples");
}

Periodic1D Periodic1D::constant(double c, int n) {
    std::vector<double> s(size_t(n), c);
    return Periodic1D(std::move(s));
}

Periodic1D Periodic1D::from_function(const std::function<double(double)>& f, int n) {
    std::vector<double> s;
    s.resize(size_t(n));
    for (int i = 0; i < n; ++i) s[size_t(i)] = f(double(i) / n);
    return Periodic1D(std::move(s));
}

double Periodic1D::eval(double t) const {
    const int n = int(v_.size());
    const double u = mod1(t) * n;
    int i = int(std::floor(u));
    if (i >= n) i = n - 1;
    const double frac = u - i;
    double w[4];
    catmull_rom_weights(frac, w);
    double acc = 0.0;
    for (int k = -1; k <= 2; ++k) {
        int idx = (i + k) % n;
        if (idx < 0) idx += n;
        acc += w[k + 1] * v_[size_t(idx)];
    }
    return acc;
}

double Periodic1D::deriv(double t) const {
    const int n = int(v_.size());
    const double u = mod1(t) * n;
    int i = int(std::floor(u));
    if (i >= n) i = n - 1;
    const double frac = u - i;
    double w[4];
    catmull_rom_dweights(frac, w);
    double acc = 0.0;
    for (int k = -1; k <= 2; ++k) {
        int idx = (i + k) % n;
        if (idx < 0) idx += n;
        acc += w[k + 1] * v_[size_t(idx)];
    }
    return acc * n;
}

// ---- PeriodicField ----

PeriodicField PeriodicField::from_expr(const std::string& text) {
    return from_expr(Expr::parse(text));
}

PeriodicField PeriodicField::from_expr(Expr e) {
    PeriodicField f;
    f.expr_ = std::make_shared<Expr>(std::move(e));
    f.grid_.reset();
    return f;
}

PeriodicField PeriodicField::constant(double c) {
    PeriodicField f;
    auto g = std::make_shared<Grid>();
    g->res = 4;
    g->v.assign(16, c);
    f.grid_ = std::move(g);
    return f;
}

PeriodicField PeriodicField::from_grid(int res, std::vector<double> samples) {
    if (res < 4 || samples.size() != size_t(res) * size_t(res))
        throw Error("grid field needs res >= 4 and res*res samples");
    PeriodicField f;
    auto g = std::make_shared<Grid>();
    g->res = res;
    g->v = std::move(samples);
    f.grid_ = std::move(g);
    return f;
}

PeriodicField PeriodicField::from_function(const std::function<double(double, double)>& fn,
                                           int res) {
    std::vector<double> s(size_t(res) * size_t(res));
    for (int j = 0; j < res; ++j)
        for (int i = 0; i < res; ++i)
            s[size_t(j) * res + i] = fn(double(i) / res, double(j) / res);
    return from_grid(res, std::move(s));
}

int PeriodicField::grid_res() const { return grid_ ? grid_->res : kDefaultGridRes; }

double PeriodicField::node(int i, int j) const {
    if (!grid_ && !expr_) return 0.0;
    if (grid_) {
        const int n = grid_->res;
        int ii = i % n; if (ii < 0) ii += n;
        int jj = j % n; if (jj < 0) jj += n;
        return grid_->v[size_t(jj) * n + ii];
    }
    const int n = kDefaultGridRes;
    return expr_->eval(double(i) / n, double(j) / n);
}

double PeriodicField::eval(double x, double y) const {
    if (expr_) return expr_->eval(x, y);
    if (!grid_) return 0.0;
    const int n = grid_->res;
    const double ux = mod1(x) * n, uy = mod1(y) * n;
    int i = int(std::floor(ux));
    int j = int(std::floor(uy));
    if (i >= n) i = n - 1;
    if (j >= n) j = n - 1;
    const double fx = ux - i, fy = uy - j;
    double wx[4], wy[4];
    catmull_rom_weights(fx, wx);
    catmull_rom_weights(fy, wy);
    double acc = 0.0;
    for (int b = -1; b <= 2; ++b) {
        int jj = (j + b) % n;
        if (jj < 0) jj += n;
        const double* row = grid_->v.data() + size_t(jj) * n;
        double racc = 0.0;
        for (int a = -1; a <= 2; ++a) {
            int ii = (i + a) % n;
            if (ii < 0) ii += n;
            racc += wx[a + 1] * row[ii];
        }
        acc += wy[b + 1] * racc;
    }
    return acc;
}

Dual2 PeriodicField::eval_grad(double x, double y) const {
    if (expr_) return expr_->eval_grad(x, y);
    if (!grid_) return {0.0, 0.0, 0.0};
    const int n = grid_->res;
    const double ux = mod1(x) * n, uy = mod1(y) * n;
    int i = int(std::floor(ux));
    int j = int(std::floor(uy));
    if (i >= n) i = n - 1;
    if (j >= n) j = n - 1;
    const double fx = ux - i, fy = uy - j;
    double wx[4], wy[4], dwx[4], dwy[4];
    catmull_rom_weights(fx, wx);
    catmull_rom_weights(fy, wy);
    catmull_rom_dweights(fx, dwx);
    catmull_rom_dweights(fy, dwy);
    double v = 0.0, gx = 0.0, gy = 0.0;
    for (int b = -1; b <= 2; ++b) {
        int jj = (j + b) % n;
        if (jj < 0) jj += n;
        const double* row = grid_->v.data() + size_t(jj) * n;
        double r = 0.0, dr = 0.0;
        for (int a = -1; a <= 2; ++a) {
            int ii = (i + a) % n;
            if (ii < 0) ii += n;
            r += wx[a + 1] * row[ii];
            dr += dwx[a + 1] * row[ii];
        }
        v += wy[b + 1] * r;
        gx += wy[b + 1] * dr;
        gy += dwy[b + 1] * r;
    }
    return {v, gx * n, gy * n};
}

PeriodicField PeriodicField::map2(const PeriodicField& a, const PeriodicField& b,
                                  const std::function<double(double, double)>& op, int res) {
    std::vector<double> s(size_t(res) * size_t(res));
    for (int j = 0; j < res; ++j)
        for (int i = 0; i < res; ++i) {
            const double x = double(i) / res, y = double(j) / res;
            s[size_t(j) * res + i] = op(a.eval(x, y), b.eval(x, y));
        }
    return from_grid(res, std::move(s));
}

}  // namespace torfol
