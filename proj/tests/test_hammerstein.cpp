#include "annular/config.hpp"
#include "annular/hammerstein.hpp"

#include "support.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace annular;

namespace {

constexpr double e = std::numbers::e;

const AnnulusDomain kExample(3, 1.0, e);

ReducedSystem unit_system(const AnnulusDomain& d = kExample) {
    const Expr f = parse(unit_forcing(d));
    return ReducedSystem(d, f, f);
}

double gk(const std::function<double(double)>& f, double a, double b) {
    if (b <= a) return 0.0;
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 8, 1e-13);
}

}  // namespace

TEST(Grid, Construction) {
    EXPECT_THROW(GridFunction({0, 1, 2}, {0, 0, 0}), std::invalid_argument);
    EXPECT_THROW(GridFunction({0, 1, 2, 3, 4, 5}, {0, 0, 0, 0, 0, 0}), std::invalid_argument);
    EXPECT_THROW(GridFunction({0, 1, NAN, 3, 4}, {0, 0, 0, 0, 0}), std::invalid_argument);
    EXPECT_THROW(GridFunction({0, 1, 2, 3, 4}, {0, 0, 0, 0}), std::invalid_argument);
    const GridFunction g = GridFunction::zero(8);
    EXPECT_EQ(g.size(), 9u);
    EXPECT_DOUBLE_EQ(g.node(4), 0.5);
}

TEST(Grid, FiniteDifferenceDerivativesAreExactForQuadratics) {
    std::vector<double> vals(65);
    for (int j = 0; j <= 64; ++j) {
        const double t = j / 64.0;
        vals[j] = 3 * t * t - t + 2;
    }
    const GridFunction g = GridFunction::from_values(vals);
    for (std::size_t j = 0; j < g.size(); ++j) {
        EXPECT_NEAR(g.derivative(j), 6 * g.node(j) - 1, 1e-11);
    }
}

TEST(Grid, HermiteInterpolationReproducesCubics) {
    auto f = [](double t) { return t * t * t - 2 * t + 1; };
    auto df = [](double t) { return 3 * t * t - 2; };
    const GridFunction g = GridFunction::sample(16, f, df);
    for (double t : {0.0, 0.013, 0.5, 0.77, 1.0}) {
        EXPECT_NEAR(g.interpolate(t), f(t), 1e-14);
        EXPECT_NEAR(g.interpolate_derivative(t), df(t), 1e-13);
    }
}

TEST(ComposeG, Examples) {
    const Expr one = parse("1");
    const ReducedSystem sys(kExample, one, one);
    EXPECT_NEAR(compose_g(sys, Component::first, 1.0, 0, 0, 0, 0), e * e * (e - 1) * (e - 1),
                1e-12);
    const ReducedSystem zero(kExample, parse("0"), parse("0"));
    EXPECT_EQ(compose_g(zero, Component::second, 0.3, 1, 2, 3, 4), 0.0);

    const ReducedSystem grad(kExample, parse("gu"), parse("gv"));
    for (double t : {0.1, 0.6, 0.95}) {
        const double rp = radial_map_derivative(kExample, t);
        EXPECT_NEAR(grad.g(Component::first, t, 0, 0, rp, 0), weight_p(kExample, t),
                    1e-12 * weight_p(kExample, t));
    }
}

TEST(ComposeG, ErrorsCarryT) {
    const ReducedSystem sys(kExample, parse("1/u"), parse("1"));
    try {
        sys.g(Component::first, 0.25, 0.0, 1.0, 0.0, 0.0);
        FAIL() << "expected OperatorError";
    } catch (const OperatorError& err) {
        EXPECT_DOUBLE_EQ(err.t(), 0.25);
    }
}

TEST(ApplyT, UnitForcingClosedForms) {
    for (int n : {2, 3, 5}) {
        const ReducedSystem sys = unit_system(AnnulusDomain(n, 0.5, 2.0));
        const GridFunction z = GridFunction::zero(128);
        const auto [T1, T2] = apply_T(sys, z, z);
        for (std::size_t j = 0; j < T1.size(); ++j) {
            const double t = T1.node(j);
            EXPECT_NEAR(T1.value(j), t * (1 - t) / 2, 1e-13);
            EXPECT_NEAR(T1.derivative(j), 0.5 - t, 1e-13);
            EXPECT_NEAR(T2.value(j), t - t * t / 2, 1e-13);
            EXPECT_NEAR(T2.derivative(j), 1 - t, 1e-13);
        }
        EXPECT_EQ(T2.derivative(T2.size() - 1), 0.0);
        EXPECT_NEAR(norms(T1, Component::first).sup, 0.125, 1e-13);
        EXPECT_NEAR(T2.value(T2.size() - 1), 0.5, 1e-13);
    }
}

TEST(ApplyT, ZeroForcing) {
    const ReducedSystem sys(kExample, parse("0"), parse("0"));
    const GridFunction z = GridFunction::zero(64);
    const auto [T1, T2] = apply_T(sys, z, z);
    EXPECT_EQ(norms(T1, Component::first).full(), 0.0);
    EXPECT_EQ(norms(T2, Component::second).full(), 0.0);
}

TEST(ApplyT, RejectsNegativeInput) {
    const ReducedSystem sys = unit_system();
    const GridFunction neg = GridFunction::sample(
        16, [](double t) { return t - 0.5; }, [](double) { return 1.0; });
    EXPECT_THROW(apply_T(sys, neg, GridFunction::zero(16)), std::invalid_argument);
    EXPECT_THROW(apply_T(sys, GridFunction::zero(16), GridFunction::zero(32)),
                 std::invalid_argument);
}

TEST(ApplyT, EvaluationErrorCarriesNode) {
    const ReducedSystem sys(kExample, parse("1/u"), parse("1"));
    const GridFunction z = GridFunction::zero(16);
    try {
        apply_T(sys, z, z);
        FAIL() << "expected OperatorError";
    } catch (const OperatorError& err) {
        ASSERT_TRUE(err.node());
        EXPECT_EQ(*err.node(), 0u);
    }
}

// f = 1 gives g = p, a smooth non-polynomial integrand; the reference values
// come from adaptive Gauss-Kronrod on each side of s = t.
TEST(ApplyT, QuadratureOrderAgainstGaussKronrod) {
    const AnnulusDomain d = kExample;
    const ReducedSystem sys(d, parse("1"), parse("1"));
    auto p = [&](double s) { return weight_p(d, s); };
    auto error = [&](int N) {
        const GridFunction z = GridFunction::zero(N);
        const auto [T1, T2] = apply_T(sys, z, z);
        double err = 0.0;
        for (std::size_t j = 0; j < T1.size(); ++j) {
            const double t = T1.node(j);
            const double ref1 = gk([&](double s) { return s * (1 - t) * p(s); }, 0, t) +
                                gk([&](double s) { return t * (1 - s) * p(s); }, t, 1);
            const double ref2 = gk([&](double s) { return s * p(s); }, 0, t) +
                                gk([&](double s) { return t * p(s); }, t, 1);
            const double dref1 = gk([&](double s) { return -s * p(s); }, 0, t) +
                                 gk([&](double s) { return (1 - s) * p(s); }, t, 1);
            err = std::max({err, std::abs(T1.value(j) - ref1), std::abs(T2.value(j) - ref2),
                            std::abs(T1.derivative(j) - dref1)});
        }
        return err;
    };
    const double e64 = error(64), e128 = error(128), e256 = error(256);
    EXPECT_GT(e64 / e128, 13.0) << e64 << " " << e128;
    EXPECT_GT(e128 / e256, 14.0) << e128 << " " << e256;
    EXPECT_LT(e256, 1e-6);
}

TEST(Norms, Examples) {
    const GridFunction u = GridFunction::sample(
        600, [](double t) { return t * (1 - t) / 2; }, [](double t) { return 0.5 - t; });
    const Norms nu = norms(u, Component::first);
    EXPECT_NEAR(nu.sup, 0.125, 1e-15);
    // max of t(1-t)|1-2t|/2 is sqrt(3)/36 at t = (3 -+ sqrt 3)/6
    EXPECT_NEAR(nu.weighted_derivative, std::sqrt(3.0) / 36, 1e-6);

    const GridFunction v = GridFunction::sample(
        512, [](double t) { return t - t * t / 2; }, [](double t) { return 1 - t; });
    const Norms nv = norms(v, Component::second);
    EXPECT_NEAR(nv.sup, 0.5, 1e-15);
    EXPECT_NEAR(nv.weighted_derivative, 0.25, 1e-12);
    EXPECT_EQ(nv.full(), 0.5);

    const Norms nz = norms(GridFunction::zero(8), Component::first);
    EXPECT_EQ(nz.sup, 0.0);
    EXPECT_EQ(nz.weighted_derivative, 0.0);
}

TEST(ConeCheck, Examples) {
    const ReducedSystem sys = unit_system();
    const GridFunction z = GridFunction::zero(256);
    const auto T1 = apply_T(sys, z, z).first;
    const ConeMembershipReport r = cone_check(T1, ConeWindow(0.25, 0.75, Kernel::k1));
    EXPECT_NEAR(r.window_min, 3.0 / 32, 1e-13);
    EXPECT_TRUE(r.harnack_ok);
    EXPECT_TRUE(r.member());

    const GridFunction one = GridFunction::sample(
        64, [](double) { return 1.0; }, [](double) { return 0.0; });
    EXPECT_TRUE(cone_check(one, ConeWindow(0.5, 1.0, Kernel::k2)).member());

    const GridFunction sign = GridFunction::sample(
        64, [](double t) { return 1 - 2 * t; }, [](double) { return -2.0; });
    const ConeMembershipReport s = cone_check(sign, ConeWindow(0.25, 0.75, Kernel::k1));
    EXPECT_FALSE(s.is_nonneg);
    EXPECT_FALSE(s.member());
}

TEST(ConeCheck, DerivativeBoundCanFail) {
    const GridFunction steep = GridFunction::sample(
        64, [](double t) { return 1 + 0.01 * std::sin(200 * t); },
        [](double t) { return 2 * std::cos(200 * t); });
    const ConeMembershipReport r = cone_check(steep, ConeWindow(0.5, 1.0, Kernel::k2));
    EXPECT_TRUE(r.harnack_ok);
    EXPECT_FALSE(r.derivative_ok);
}

TEST(ConeInvariance, RandomPositiveNonlinearities) {
    std::mt19937_64 rng(20240101);
    for (int i = 0; i < 100; ++i) {
        const std::string f1 = fixtures::random_positive_f(rng);
        const std::string f2 = fixtures::random_positive_f(rng);
        std::uniform_real_distribution<double> radius(0.2, 3.0);
        double r0 = radius(rng), r1 = radius(rng);
        if (r0 > r1) std::swap(r0, r1);
        const AnnulusDomain d(2 + static_cast<int>(rng() % 4), r0, r1 + 0.1);
        const ReducedSystem sys(d, parse(f1), parse(f2));
        const int N = 128;
        const GridFunction u = fixtures::random_nonneg(rng, N, true);
        const GridFunction v = fixtures::random_nonneg(rng, N, false);
        const ConeWindow w1 = fixtures::random_window(rng, Kernel::k1);
        const ConeWindow w2 = fixtures::random_window(rng, Kernel::k2);
        const auto [T1, T2] = apply_T(sys, u, v);
        for (const auto& [w, win, c] : {std::tuple{&T1, w1, Component::first},
                                        std::tuple{&T2, w2, Component::second}}) {
            const Norms nm = norms(*w, c);
            EXPECT_GE(window_min(*w, win.a, win.b), harnack_c(win) * nm.sup - 1e-8)
                << f1 << " | " << f2;
            EXPECT_LE(nm.weighted_derivative, nm.sup + 1e-8) << f1 << " | " << f2;
            EXPECT_GE(*std::min_element(w->values().begin(), w->values().end()), -1e-12);
        }
    }
}

TEST(ApplyT, SupBoundedByKernelConstant) {
    std::mt19937_64 rng(77);
    for (int i = 0; i < 20; ++i) {
        const ReducedSystem sys(kExample, parse(fixtures::random_positive_f(rng)),
                                parse(fixtures::random_positive_f(rng)));
        const GridFunction u = fixtures::random_nonneg(rng, 64, true);
        const GridFunction v = fixtures::random_nonneg(rng, 64, false);
        double g1max = 0.0, g2max = 0.0;
        for (std::size_t j = 0; j < u.size(); ++j) {
            const double args[] = {u.value(j), v.value(j), std::abs(u.derivative(j)),
                                   std::abs(v.derivative(j))};
            g1max = std::max(g1max, sys.g(Component::first, u.node(j), args[0], args[1],
                                          args[2], args[3]));
            g2max = std::max(g2max, sys.g(Component::second, u.node(j), args[0], args[1],
                                          args[2], args[3]));
        }
        const auto [T1, T2] = apply_T(sys, u, v);
        EXPECT_LE(norms(T1, Component::first).sup, g1max / 8 * (1 + 1e-9));
        EXPECT_LE(norms(T2, Component::second).sup, g2max / 2 * (1 + 1e-9));
    }
}
