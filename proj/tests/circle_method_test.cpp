#include <gtest/gtest.h>

#include <cmath>

#include <pentaverify/bessel.hpp>
#include <pentaverify/circle_method.hpp>
#include <pentaverify/truncated_sums.hpp>

using namespace pentaverify;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST(Contour, Geometry)
{
    EXPECT_NEAR(circle_height(6), 1.0 / 12, 1e-15);
    const double r = 12 / (12 - kPi * kPi);
    EXPECT_NEAR(arc_constant() * arc_constant(), r * r - 1, 1e-12);
    const auto c = ContourSpec::make(100, 2);
    EXPECT_EQ(c.k, 2);
    EXPECT_NEAR(c.major_half_width(), c.M * c.y, 1e-15);
    EXPECT_EQ(ContourSpec::make(1, 1).major_half_width(), 0.5);
    EXPECT_THROW(ContourSpec::make(0, 1), DomainError);
    EXPECT_THROW(ContourSpec::make(5, 0), DomainError);
}

TEST(GeneratingFunctionEval, MatchesExactCoefficients)
{
    const SeqTable p = build_p_table(200);
    const double y = -std::log(0.3) / (2 * kPi);
    for (long k = 1; k <= 4; ++k) {
        double sum = 0;
        double qn = 1;
        for (long n = 0; n <= 200; ++n, qn *= 0.3) sum += mk(n, k, p).convert_to<double>() * qn;
        const Complex v = mgf_eval({0.0, y}, k);
        EXPECT_NEAR(v.real() / sum, 1.0, 1e-13) << k;
        EXPECT_NEAR(v.imag(), 0.0, 1e-13);
    }
}

TEST(GeneratingFunctionEval, SymmetryAndSmallQ)
{
    const Complex a = mgf_eval({0.13, 0.05}, 2);
    const Complex b = mgf_eval({-0.13, 0.05}, 2);
    EXPECT_NEAR(std::abs(a - std::conj(b)) / std::abs(a), 0.0, 1e-12);
    // q -> 0: M_k(q) -> M_k(0) = (-1)^{k-1}.
    EXPECT_NEAR(mgf_eval({0.2, 5.0}, 1).real(), 1.0, 1e-12);
    EXPECT_NEAR(mgf_eval({0.2, 5.0}, 2).real(), -1.0, 1e-12);
    EXPECT_THROW(mgf_eval({0.0, 0.1}, 0), DomainError);
    EXPECT_THROW(euler_product({0.0, 0.0}), DomainError);
}

TEST(GeneratingFunctionEval, NearOneApproximation)
{
    for (long k : {1L, 3L}) {
        const double kd = static_cast<double>(k);
        for (double y : {0.01, 0.001}) {
            const Complex a = near1_approximation({0.0, y}, k);
            EXPECT_NEAR(std::abs(a) / (2 * kPi * kd * std::pow(y, 1.5) * std::exp(kPi / (12 * y))), 1.0, 1e-12);
        }
        // Relative error shrinks linearly in y, with a k^3-sized constant.
        const double coarse = std::abs(mgf_eval({0.0, 0.01}, k) / near1_approximation({0.0, 0.01}, k) - 1.0);
        const double fine = std::abs(mgf_eval({0.0, 0.001}, k) / near1_approximation({0.0, 0.001}, k) - 1.0);
        EXPECT_LT(fine, coarse / 5);
        EXPECT_LT(fine, 0.1);
    }
}

TEST(EtaInversion, LeadingAndExact)
{
    for (const ComplexTau t : {ComplexTau{0.0, 1.0}, ComplexTau{0.0, 0.1}, ComplexTau{0.0, 10.0},
                               ComplexTau{0.3, 0.2}, ComplexTau{-0.45, 0.05}}) {
        const auto r = eta_inversion_check(t);
        EXPECT_TRUE(r.within_bound()) << t.x << "," << t.y;
        EXPECT_LT(r.exact_defect, 1e-9) << t.x << "," << t.y;
    }
    const auto at_i = eta_inversion_check({0.0, 1.0});
    EXPECT_NEAR(at_i.leading_defect, std::exp(-2 * kPi), 1e-5);
    EXPECT_LT(at_i.exact_defect, 1e-6);
}

TEST(Lemmas, BoundedNormalizedDefects)
{
    for (long k : {1L, 2L}) {
        const auto n0 = lemma_near1_check(400, k);
        const auto a0 = lemma_away1_check(400, k);
        EXPECT_GT(n0.normalized_defect, 0);
        EXPECT_EQ(n0.samples, 257U);
        EXPECT_EQ(a0.samples, 1024U);
        for (long n : {1600L, 6400L}) {
            const auto near = lemma_near1_check(n, k);
            const auto away = lemma_away1_check(n, k);
            EXPECT_LE(near.normalized_defect, 3 * n0.normalized_defect);
            EXPECT_LE(away.normalized_defect, a0.normalized_defect);
            EXPECT_LE(std::abs(near.worst_x), ContourSpec::make(n, k).major_half_width());
            EXPECT_LE(away.max_numerator_ratio, 1.0);
        }
    }
}

TEST(Lemmas, RegimeEnforced)
{
    EXPECT_THROW(lemma_near1_check(400, 3), RegimeViolation);
    EXPECT_THROW(lemma_away1_check(255, 2), RegimeViolation);
    EXPECT_NO_THROW(lemma_near1_check(400, 3, true));
}

TEST(CircleMethod, SmallCases)
{
    const auto r = circle_method_mk(10, 1);
    EXPECT_EQ(r.rounded, 12);
    EXPECT_LT(std::abs(r.value - 12), 1e-6);
    EXPECT_LT(std::abs(r.imag_residual), 1e-6);
    EXPECT_EQ(circle_method_mk(1, 1).rounded, 0);
    EXPECT_EQ(circle_method_mk(50, 2).rounded, 27438);
    EXPECT_EQ(circle_method_mk(80, 1).rounded, 1947826);
    EXPECT_THROW(circle_method_mk(81, 1), DomainError);
    EXPECT_THROW(circle_method_mk(0, 1), DomainError);
}

TEST(CircleMethod, ReconstructsExactValues)
{
    const SeqTable p = build_p_table(50);
    for (long k = 1; k <= 3; ++k)
        for (long n = 1; n <= 50; ++n) {
            const auto r = circle_method_mk(n, k);
            EXPECT_LT(std::abs(r.value - mk(n, k, p).convert_to<double>()), 1e-6) << n << "," << k;
        }
}

TEST(Wright, ImaginaryPartVanishes)
{
    for (double u : {5.0, 10.0}) {
        const auto w = wright_p(1.5, u);
        EXPECT_LT(std::abs(w.im), 1e-10 * std::abs(w.re));
    }
    EXPECT_THROW(wright_p(1.5, 0.0), DomainError);
}

TEST(Wright, ApproachesBessel)
{
    const auto w = wright_p(1.5, 40.0);
    EXPECT_NEAR(w.re / bessel_i(-2.5, 80.0), 1.0, 1e-6);

    // The absolute defect is O(e^u); its e^{-u}-scaled size must not grow.
    const Float50 M = arc_constant();
    const Float50 tol = Float50(1e-30);
    double first = 0;
    for (int u : {5, 10, 20}) {
        const Float50 uu = u;
        const auto p = wright_p<Float50>(Float50(3) / 2, uu, M, tol);
        const Float50 i = bessel_i<Float50>(Float50(-5) / 2, 2 * uu);
        const double scaled = static_cast<double>(abs(p.re - i) * exp(-uu));
        if (u == 5) first = scaled;
        EXPECT_LE(scaled, 10 * first) << u;
        EXPECT_GT(scaled, 0);
    }
}
