#ifndef TORFOL_PERIODIC_FIELD_HPP
#define TORFOL_PERIODIC_FIELD_HPP

#include <functional>
#include <memory>
#include <vector>

#include "torfol/expr.hpp"
#include "torfol/geom.hpp"

namespace torfol {

/// Default grid resolution for sampled fields.
constexpr int kDefaultGridRes = 256;

/// 1-periodic cubic interpolation of a sample table t_i = f(i/N).
/// Catmull-Rom, so the interpolant passes through the samples and is C^1.
class Periodic1D {
public:
    Periodic1D() = default;
    explicit Periodic1D(std::vector<double> samples);
    static Periodic1D constant(double c, int n = 8);
    static Periodic1D from_function(const std::function<double(double)>& f, int n);

    double eval(double t) const;
    double deriv(double t) const;
    int size() const { return int(v_.size()); }
    const std::vector<double>& samples() const { return v_; }

private:
    std::vector<double> v_;
};

/// A scalar field on the torus: 1-periodic in both coordinates. Backed either
/// by a closed-form expression (exact evaluation, exact gradient) or by an
/// R x R sample grid with bicubic (Catmull-Rom) interpolation, which
/// reproduces node values exactly and is C^1.
class PeriodicField {
public:
    /// Default state is the zero field.
    PeriodicField() = default;

    static PeriodicField from_expr(const std::string& text);
    static PeriodicField from_expr(Expr e);
    static PeriodicField constant(double c);
    /// Grid backing; samples[j*res + i] = f(i/res, j/res), row-major in y.
    static PeriodicField from_grid(int res, std::vector<double> samples);
    static PeriodicField from_function(const std::function<double(double, double)>& f,
                                       int res = kDefaultGridRes);

    double eval(double x, double y) const;
    double eval(const TorusPoint& p) const { return eval(p.x, p.y); }
    Dual2 eval_grad(double x, double y) const;
    Dual2 eval_grad(const TorusPoint& p) const { return eval_grad(p.x, p.y); }

    bool is_grid() const { return grid_ != nullptr; }
    int grid_res() const;
    /// Exact node value (grid backing) or evaluation at the node (closed form).
    double node(int i, int j) const;

    /// Pointwise lift of binary/unary operations into grid fields.
    static PeriodicField map2(const PeriodicField& a, const PeriodicField& b,
                              const std::function<double(double, double)>& op, int res);

private:
    struct Grid {
        int res = 0;
        std::vector<double> v;
    };
    std::shared_ptr<const Expr> expr_;
    std::shared_ptr<const Grid> grid_;
};

/// Bicubic Catmull-Rom weights for local coordinate t in [0,1).
void catmull_rom_weights(double t, double w[4]);
void catmull_rom_dweights(double t, double w[4]);

}  // namespace torfol

#endif  // TORFOL_PERIODIC_FIELD_HPP
