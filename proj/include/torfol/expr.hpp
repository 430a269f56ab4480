#ifndef TORFOL_EXPR_HPP
#define TORFOL_EXPR_HPP

#include <memory>
#include <string>

#include "torfol/geom.hpp"

namespace torfol {

/// Value together with its partial derivatives in x and y (forward-mode pair);
/// what eval_grad of a closed-form field returns.
struct Dual2 {
    double v = 0.0;
    double dx = 0.0;
    double dy = 0.0;
};

/// A closed-form expression in the fixed field grammar:
///
///   expr := term (('+'|'-') term)*
///   term := factor (('*'|'/') factor)*
///   factor := '-'* primary
///   primary := number | 'pi' | 'x' | 'y' | ('sin'|'cos'|'exp') '(' expr ')' | '(' expr ')'
///
/// Construction rejects expressions that are not 1-periodic in both
/// coordinates: every x or y must sit inside a sin/cos whose argument is
/// linear with coefficients that are integer multiples of 2*pi. Evaluation
/// reduces the input mod 1 first, so periodicity holds exactly in floating
/// point.
class Expr {
public:
    /// Parses and checks periodicity. Throws Error naming the offending token
    /// on malformed or non-periodic input.
    static Expr parse(const std::string& text);

    double eval(double x, double y) const;
    Dual2 eval_grad(double x, double y) const;

    const std::string& text() const { return text_; }

    struct Node;
    using NodePtr = std::shared_ptr<const Node>;

private:
    NodePtr root_;
    std::string text_;
};

}  // namespace torfol

#endif  // TORFOL_EXPR_HPP
