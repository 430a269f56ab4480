#include "doctest.h"

#include <cmath>

#include "torfol/direction_field.hpp"
#include "torfol/leaf.hpp"

using namespace torfol;

TEST_CASE("transversality margin: trivial pairs") {
    const DirectionField H = DirectionField::linear(0.0);
    const DirectionField V = DirectionField::linear(kPi / 2);
    CHECK(transversality_margin(H, V, 64).margin == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(transversality_margin(H, H, 64).margin == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("transversality margin vs dense scan") {
    const DirectionField F = DirectionField::linear(0.0);
    const DirectionField G =
        DirectionField::from_angle_expr("pi/4 + 0.1*sin(2*pi*x)");
    const auto rep = transversality_margin(F, G, 512);
    // Oracle: dense 10^6-sample scan of |sin(pi/4 + 0.1 sin(2 pi x))|.
    double oracle = 2.0;
    for (int k = 0; k < 1000000; ++k) {
        const double x = double(k) / 1000000.0;
        oracle = std::min(oracle, std::abs(std::sin(kPi / 4 + 0.1 * std::sin(kTwoPi * x))));
    }
    CHECK(rep.margin == doctest::Approx(oracle).epsilon(1e-6));
}

TEST_CASE("orientability detection") {
    // Constant-angle field: orientable.
    auto const_raw = [](double, double) { return 0.3; };
    CHECK(detect_orientability(const_raw, 64).orientable);

    // Half twist along x: angle = pi*x, non-orientable with witness (1,0).
    auto half_twist = [](double x, double) { return kPi * x; };
    const auto rep = detect_orientability(half_twist, 64);
    CHECK(!rep.orientable);
    CHECK(rep.witness == HomotopyClass{1, 0});
    CHECK_THROWS_AS(DirectionField::from_line_angles(half_twist, 64), Error);

    // Randomly perturbed constant field (perturbation < pi/4): orientable.
    CounterRng rng{31, 4};
    auto perturbed = [&rng](double x, double y) {
        const double wig = std::sin(kTwoPi * x) * std::cos(kTwoPi * y);
        (void)rng;
        return 0.7 + (kPi / 4 - 0.01) * wig;
    };
    CHECK(detect_orientability(perturbed, 128).orientable);
    CHECK_NOTHROW(DirectionField::from_line_angles(perturbed, 128));
}

TEST_CASE("vector-field construction rejects winding") {
    // Unit field rotating once along x has winding class (1,0).
    auto rotor = [](double x, double) {
        return Vec2{std::cos(kTwoPi * x), std::sin(kTwoPi * x)};
    };
    CHECK_THROWS_AS(DirectionField::from_vector(rotor, 64), Error);
    // A gentle zero-winding field passes.
    auto gentle = [](double, double y) {
        return Vec2{1.0, 0.3 + 0.1 * std::sin(kTwoPi * y)};
    };
    CHECK_NOTHROW(DirectionField::from_vector(gentle, 64));
}

TEST_CASE("leaf integration: constant fields") {
    const DirectionField diag = DirectionField::linear(kPi / 4);
    const LeafSegment s = integrate_leaf(diag, {0, 0}, +1, stop_x_equals(1.0));
    REQUIRE(s.hit);
    CHECK(s.end().x == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(s.end().y == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(s.length() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-6));

    const DirectionField horiz = DirectionField::linear(0.0);
    const LeafSegment h = integrate_leaf(horiz, {0, 0.3}, +1, stop_x_equals(1.0));
    REQUIRE(h.hit);
    CHECK(h.end().y == doctest::Approx(0.3).epsilon(1e-10));
}

TEST_CASE("leaf integration vs finer-tolerance oracle") {
    // Field tangent to the vector (1, 0.3 + 0.1*sin(2*pi*y)).
    const DirectionField F = DirectionField::from_vector(
        [](double, double y) {
            return Vec2{1.0, 0.3 + 0.1 * std::sin(kTwoPi * y)};
        },
        512);
    IntegOptions coarse;
    const LeafSegment a = integrate_leaf(F, {0, 0}, +1, stop_x_equals(1.0), coarse);
    IntegOptions fine;
    fine.tol = 1e-12;
    fine.max_step = 1e-3;
    const LeafSegment b = integrate_leaf(F, {0, 0}, +1, stop_x_equals(1.0), fine);
    REQUIRE(a.hit);
    REQUIRE(b.hit);
    CHECK(std::abs(a.end().y - b.end().y) < 1e-7);
}

TEST_CASE("leaf consistency: backwards reintegration returns to start") {
    const DirectionField F = DirectionField::from_angle_expr(
        "0.3 + 0.2*sin(2*pi*x)*cos(2*pi*y)");
    CounterRng rng{9, 5};
    for (int k = 0; k < 12; ++k) {
        const Vec2 p{rng.uniform(2 * k), rng.uniform(2 * k + 1)};
        IntegOptions opts;
        opts.max_arclen = 2.0;
        const LeafSegment fwd = integrate_leaf(F, p, +1, stop_none(), opts);
        IntegOptions back = opts;
        back.max_arclen = fwd.length();
        const LeafSegment bwd = integrate_leaf(F, fwd.end(), -1, stop_none(), back);
        CHECK((bwd.end() - p).norm() < 1e-8);
    }
}

TEST_CASE("leaf tangents stay on the field") {
    const DirectionField F = DirectionField::from_angle_expr("0.5 + 0.3*sin(2*pi*y)");
    IntegOptions opts;
    opts.max_arclen = 3.0;
    const LeafSegment s = integrate_leaf(F, {0.2, 0.8}, +1, stop_none(), opts);
    for (size_t i = 0; i < s.pts.size(); ++i) {
        const Vec2 want = F.direction(s.pts[i].x, s.pts[i].y);
        CHECK(std::abs(s.tangents[i].cross(want)) < 1e-9);
    }
    // Steps bounded by max_step.
    for (size_t i = 1; i < s.arclen.size(); ++i)
        CHECK(s.arclen[i] - s.arclen[i - 1] <= opts.max_step * 1.0001);
}

TEST_CASE("pushforward: identity, translation, linear map") {
    const DirectionField F = DirectionField::from_angle_expr("0.4 + 0.2*sin(2*pi*x)");
    const TorusDiffeo id = TorusDiffeo::identity();
    const DirectionField Fid = pushforward(id, F);
    double worst = 0.0;
    for (int k = 0; k < 200; ++k) {
        const double x = k * 0.017, y = k * 0.031;
        worst = std::max(worst, std::abs(Fid.angle(x, y) - F.angle(x, y)));
    }
    CHECK(worst < 1e-8);

    // Translation: angle field precomposed with T_{-u}.
    const Vec2 u{0.25, 0.125};
    const DirectionField Ft = pushforward(TorusDiffeo::translation(u), F, 256);
    worst = 0.0;
    for (int k = 0; k < 200; ++k) {
        const double x = k * 0.017, y = k * 0.031;
        worst = std::max(worst, std::abs(Ft.angle(x, y) - F.angle(x - u.x, y - u.y)));
    }
    CHECK(worst < 1e-6);

    // Linear map A=[[1,1],[0,1]] fixes the horizontal direction.
    const TorusDiffeo A = TorusDiffeo::linear({1, 1, 0, 1});
    const DirectionField H = DirectionField::linear(0.0);
    const DirectionField AH = pushforward(A, H, 64);
    for (int k = 0; k < 50; ++k)
        CHECK(std::abs(std::sin(AH.angle(k * 0.019, k * 0.027))) < 1e-9);
    // And the vertical maps to slope 1 (direction (1,1)), by exact linear algebra.
    const DirectionField V = DirectionField::linear(kPi / 2);
    const DirectionField AV = pushforward(A, V, 64);
    for (int k = 0; k < 50; ++k)
        CHECK(AV.angle(k * 0.019, k * 0.027) ==
              doctest::Approx(kPi / 4).epsilon(1e-9));
}

TEST_CASE("pushforward functoriality and margin-sign preservation") {
    const DirectionField F = DirectionField::from_angle_expr("0.3 + 0.1*cos(2*pi*y)");
    const DirectionField G = DirectionField::from_angle_expr("1.2 + 0.1*sin(2*pi*x)");
    const TorusDiffeo phi = TorusDiffeo(
        Mat2i::identity(), PeriodicField::from_expr("0.05*sin(2*pi*y)"),
        PeriodicField::from_expr("0.04*cos(2*pi*x)"));
    const TorusDiffeo psi = TorusDiffeo::translation({0.3, 0.6});

    const DirectionField lhs = pushforward(compose(phi, psi, 256), F, 256);
    const DirectionField rhs = pushforward(phi, pushforward(psi, F, 256), 256);
    double worst = 0.0;
    for (int k = 0; k < 300; ++k) {
        const double x = k * 0.013, y = k * 0.023;
        worst = std::max(worst, std::abs(wrap_angle(lhs.angle(x, y) - rhs.angle(x, y))));
    }
    CHECK(worst < 1e-4);

    // Sign preservation of the margin under simultaneous pushforward.
    const double m0 = transversality_margin(F, G, 128).margin;
    const double m1 =
        transversality_margin(pushforward(phi, F, 256), pushforward(phi, G, 256), 128).margin;
    CHECK(m0 > 0.0);
    CHECK(m1 > 0.0);
}
