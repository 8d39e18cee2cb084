#include "annular/kernels.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <random>
#include <stdexcept>

using namespace annular;

TEST(Kernels, K1Values) {
    EXPECT_DOUBLE_EQ(k1(0.5, 0.5), 0.25);
    EXPECT_NEAR(k1(0.3, 0.7), 0.09, 1e-15);
    for (double t : {0.0, 0.2, 0.9, 1.0}) {
        EXPECT_EQ(k1(t, 0.0), 0.0);
        EXPECT_EQ(k1(t, 1.0), 0.0);
    }
    EXPECT_DOUBLE_EQ(k1(0.2, 0.6), k1(0.6, 0.2));
}

TEST(Kernels, K2Values) {
    EXPECT_DOUBLE_EQ(k2(1.0, 0.37), 0.37);
    EXPECT_EQ(k2(0.0, 0.37), 0.0);
    EXPECT_DOUBLE_EQ(k2(0.4, 0.9), 0.4);
}

TEST(Kernels, DomainErrors) {
    EXPECT_THROW(k1(-0.1, 0.5), std::domain_error);
    EXPECT_THROW(k2(0.5, 1.1), std::domain_error);
    EXPECT_THROW(dk_dt(Kernel::k1, 2.0, 0.5), std::domain_error);
}

TEST(Kernels, Slopes) {
    EXPECT_DOUBLE_EQ(dk_dt(Kernel::k1, 0.2, 0.8).value, 0.2);
    EXPECT_DOUBLE_EQ(dk_dt(Kernel::k2, 0.8, 0.2).value, 0.0);
    EXPECT_DOUBLE_EQ(dk_dt(Kernel::k1, 0.9, 0.1).value, -0.1);
    EXPECT_DOUBLE_EQ(dk_dt(Kernel::k2, 0.1, 0.9).value, 1.0);
    EXPECT_FALSE(dk_dt(Kernel::k1, 0.9, 0.1).at_jump);

    const KernelSlope jump = dk_dt(Kernel::k1, 0.4, 0.4);
    EXPECT_TRUE(jump.at_jump);
    EXPECT_DOUBLE_EQ(jump.value, -0.4);
    EXPECT_TRUE(dk_dt(Kernel::k2, 0.4, 0.4).at_jump);
    EXPECT_DOUBLE_EQ(dk_dt(Kernel::k2, 0.4, 0.4).value, 0.0);
}

TEST(Kernels, ConstantsOfTheWorkedExample) {
    EXPECT_EQ(little_m(Kernel::k1), 8.0);
    EXPECT_EQ(little_m(Kernel::k2), 2.0);
    const ConeWindow w1(0.25, 0.75, Kernel::k1), w2(0.5, 1.0, Kernel::k2);
    EXPECT_NEAR(big_M(w1), 16.0, 1e-12);
    EXPECT_NEAR(big_M(w2), 4.0, 1e-12);
    EXPECT_DOUBLE_EQ(harnack_c(w1), 0.25);
    EXPECT_DOUBLE_EQ(harnack_c(w2), 0.5);
    const KernelConstants k = kernel_constants(w1, w2);
    EXPECT_EQ(k.m1, 8.0);
    EXPECT_EQ(k.m2, 2.0);
    EXPECT_NEAR(k.M1, 16.0, 1e-12);
    EXPECT_NEAR(k.M2, 4.0, 1e-12);
    EXPECT_THROW(kernel_constants(w2, w1), std::invalid_argument);
}

TEST(Kernels, OtherWindows) {
    EXPECT_NEAR(big_M(ConeWindow(0.1, 0.6, Kernel::k2)), 20.0, 1e-12);
    EXPECT_NEAR(big_M_numeric(ConeWindow(0.1, 0.6, Kernel::k2)), 20.0, 1e-9);
    EXPECT_DOUBLE_EQ(harnack_c(ConeWindow(0.2, 0.9, Kernel::k1)), 0.1);
}

TEST(Kernels, NumericalModes) {
    EXPECT_NEAR(little_m_numeric(Kernel::k1), 8.0, 1e-6);
    EXPECT_NEAR(little_m_numeric(Kernel::k2), 2.0, 1e-6);
    EXPECT_NEAR(big_M_numeric(ConeWindow(0.25, 0.75, Kernel::k1)), 16.0, 1e-6);
    EXPECT_NEAR(big_M_numeric(ConeWindow(0.5, 1.0, Kernel::k2)), 4.0, 1e-6);
}

TEST(Kernels, WindowValidation) {
    try {
        ConeWindow(0.3, 0.3, Kernel::k1);
        FAIL() << "expected an exception";
    } catch (const std::domain_error& e) {
        EXPECT_NE(std::string(e.what()).find("degenerate window"), std::string::npos);
    }
    EXPECT_THROW(ConeWindow(0.3, 1.0, Kernel::k1), std::domain_error);
    EXPECT_NO_THROW(ConeWindow(0.3, 1.0, Kernel::k2));
    EXPECT_THROW(ConeWindow(0.0, 0.5, Kernel::k2), std::domain_error);
    EXPECT_THROW(ConeWindow(0.6, 0.5, Kernel::k2), std::domain_error);
}

TEST(KernelProperties, ClosedFormMatchesNumericOnRandomWindows) {
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 50; ++i) {
        for (Kernel kind : {Kernel::k1, Kernel::k2}) {
            const ConeWindow w = fixtures::random_window(rng, kind);
            const double exact = big_M(w);
            EXPECT_NEAR(big_M_numeric(w), exact, 1e-6 * exact) << w.a << " " << w.b;
        }
    }
}

TEST(KernelProperties, HarnackAndEnvelopes) {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (Kernel kind : {Kernel::k1, Kernel::k2}) {
        const ConeWindow w = kind == Kernel::k1 ? ConeWindow(0.25, 0.75, kind)
                                                : ConeWindow(0.5, 1.0, kind);
        const double c = harnack_c(w);
        for (int i = 0; i < 10000; ++i) {
            const double s = unit(rng);
            const double t = w.a + (w.b - w.a) * unit(rng);
            const double any = unit(rng);
            EXPECT_GE(kernel(kind, t, s), c * phi(kind, s) - 1e-14);
            EXPECT_LE(kernel(kind, any, s), phi(kind, s) + 1e-14);
            if (any != s) {
                EXPECT_LE(std::abs(dk_dt(kind, any, s).value), psi(kind, s) + 1e-15);
            }
        }
    }
}

TEST(KernelProperties, ReproducesBoundaryConditions) {
    for (double s0 : {0.2, 0.5, 0.77}) {
        EXPECT_EQ(k1(0.0, s0), 0.0);
        EXPECT_EQ(k1(1.0, s0), 0.0);
        EXPECT_EQ(k2(0.0, s0), 0.0);
        for (double t = s0 + 0.01; t <= 1.0; t += 0.05) {
            EXPECT_EQ(dk_dt(Kernel::k2, t, s0).value, 0.0);
        }
    }
}

TEST(KernelProperties, BigMExceedsLittleM) {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 100; ++i) {
        EXPECT_GT(big_M(fixtures::random_window(rng, Kernel::k1)), 8.0);
        EXPECT_GT(big_M(fixtures::random_window(rng, Kernel::k2)), 2.0);
    }
}
