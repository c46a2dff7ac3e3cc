#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <sstream>

#include <pentaverify/asymptotics.hpp>
#include <pentaverify/bessel.hpp>
#include <pentaverify/parallel.hpp>
#include <pentaverify/quadrature.hpp>

using namespace pentaverify;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST(MainTerms, Structure)
{
    for (long n : {10L, 100L, 12345L}) {
        EXPECT_NEAR(main_term_mk(n, 2).ln_abs - main_term_mk(n, 1).ln_abs, std::log(2.0), 1e-12);
        EXPECT_NEAR(main_term_mp(n, 6).ln_abs - main_term_mp(n, 3).ln_abs, std::log(2.0), 1e-12);
        EXPECT_DOUBLE_EQ(main_term_mkbar(n, 1).ln_abs, main_term_mkbar(n, 7).ln_abs);
        // Same exponential as Hardy-Ramanujan, different algebraic prefactor.
        const double gap = main_term_mk(n, 1).ln_abs - hardy_ramanujan_p(n).ln_abs;
        EXPECT_NEAR(gap, std::log(kPi * 4 * std::sqrt(3.0) / (12 * std::sqrt(2.0))) -
                             0.5 * std::log(static_cast<double>(n)),
                    1e-10);
    }
    // n = 6: 2 pi sqrt(n/6) = 2 pi.
    EXPECT_NEAR(main_term_mk(6, 1).ln_abs,
                std::log(kPi / (12 * std::sqrt(2.0)) * std::pow(6.0, -1.5)) + 2 * kPi, 1e-12);
    // n = 4: pi sqrt n = 2 pi, and n = 2: pi sqrt(n/2) = pi.
    EXPECT_NEAR(main_term_mkbar(4, 1).ln_abs, std::log(1.0 / 32) + 2 * kPi, 1e-12);
    EXPECT_NEAR(main_term_mp(2, 1).ln_abs, std::log(kPi / 16 * std::pow(2.0, -1.5)) + kPi, 1e-12);
    EXPECT_EQ(main_term(SumFamily::MPk, 50, 2).ln_abs, main_term_mp(50, 2).ln_abs);
}

TEST(MainTerms, DomainErrors)
{
    EXPECT_THROW(main_term_mk(0, 1), DomainError);
    EXPECT_THROW(main_term_mkbar(10, 0), DomainError);
    EXPECT_THROW(hardy_ramanujan_p(0), DomainError);
}

TEST(MainTerms, MatchesExactValueAtTenThousand)
{
    const SeqTable p = build_p_table(10000);
    const auto exact = log_magnitude(mk(10000, 1, p));
    const double ratio = std::exp(main_term_mk(10000, 1).ln_abs - exact.ln_abs);
    EXPECT_NEAR(ratio, 1.0, 0.25);
}

TEST(Regime, ConstantFreeProxies)
{
    EXPECT_TRUE(regime_check(SumFamily::Mk, 256, 2));
    EXPECT_FALSE(regime_check(SumFamily::Mk, 255, 2));
    EXPECT_TRUE(regime_check(SumFamily::MPk, 256, 2));
    EXPECT_FALSE(regime_check(SumFamily::MkBar, 256, 2));
    EXPECT_TRUE(regime_check(SumFamily::MkBar, 4096, 2));
    EXPECT_TRUE(regime_check(SumFamily::Mk, 1, 1));
    EXPECT_FALSE(regime_check(SumFamily::Mk, 1000000, 0));
}

TEST(LogMagnitudeTest, Values)
{
    EXPECT_TRUE(log_magnitude(BigInt(0)).is_zero());
    EXPECT_EQ(log_magnitude(BigInt(-5)).sign, -1);
    EXPECT_NEAR(log_magnitude(BigInt(-5)).ln_abs, std::log(5.0), 1e-15);
    const BigInt big = BigInt(1) << 3000;
    EXPECT_NEAR(log_magnitude(big).ln_abs, 3000 * std::log(2.0), 1e-9);
    EXPECT_NEAR(log_magnitude(big * 3).ln_abs, 3000 * std::log(2.0) + std::log(3.0), 1e-9);
}

class RatioConvergence : public ::testing::TestWithParam<std::pair<SumFamily, double>> {};

TEST_P(RatioConvergence, DecreasesAndEndsBelowThreshold)
{
    const auto [f, threshold] = GetParam();
    const SeqTable base = build_table(base_family(f), 10000);
    const std::vector<long> ns{100, 1000, 10000};
    const std::vector<long> ks{1};
    const auto rows = ratio_table(f, ns, ks, base);
    ASSERT_EQ(rows.size(), 3U);
    EXPECT_TRUE(ratio_converges(rows));
    EXPECT_LT(std::abs(rows.back().rel_dev), threshold);
    for (const auto& r : rows) EXPECT_TRUE(r.defined());
}

INSTANTIATE_TEST_SUITE_P(Families, RatioConvergence,
                         ::testing::Values(std::pair{SumFamily::Mk, 0.25},
                                           std::pair{SumFamily::MkBar, 0.3},
                                           std::pair{SumFamily::MPk, 0.3}));

TEST(RatioTable, OrderingUndefinedRowsAndErrors)
{
    const SeqTable o = build_overp_table(50);
    const std::vector<long> ns{1, 20, 50};
    const std::vector<long> ks{1, 2};
    const auto rows = ratio_table(SumFamily::MkBar, ns, ks, o);
    ASSERT_EQ(rows.size(), 6U);
    EXPECT_EQ(rows[0].k, 1);
    EXPECT_EQ(rows[2].n, 50);
    EXPECT_EQ(rows[3].k, 2);
    // Mbar_1(1) = 0: no logarithm, no ratio.
    EXPECT_FALSE(rows[0].defined());
    EXPECT_TRUE(std::isnan(rows[0].rel_dev));
    EXPECT_FALSE(ratio_converges(rows));

    std::ostringstream os;
    write_ratio_csv(os, rows);
    EXPECT_EQ(os.str().substr(0, os.str().find('\n')), "family,n,k,ln_exact,ln_main,rel_dev,in_regime");
    EXPECT_NE(os.str().find("mkbar,1,1,-inf,"), std::string::npos);
    EXPECT_NE(os.str().find(",nan,"), std::string::npos);

    const std::vector<long> too_far{51};
    EXPECT_THROW(ratio_table(SumFamily::MkBar, too_far, ks, o), TableTooSmall);
    EXPECT_THROW(ratio_table(SumFamily::Mk, ns, ks, o), DomainError);
}

TEST(FormatReal, RoundTrips)
{
    EXPECT_EQ(format_real(0.1), "0.10000000000000001");
    EXPECT_EQ(std::stod(format_real(1.0 / 3)), 1.0 / 3);
    EXPECT_EQ(format_real(std::nan("")), "nan");
}

TEST(Bessel, KnownValues)
{
    EXPECT_NEAR(bessel_i(0.0, 1.0), 1.2660658777520082, 1e-15);
    EXPECT_NEAR(bessel_i(1.0, 1.0), 0.5651591039924851, 1e-15);
    EXPECT_NEAR(bessel_i(-1.0, 1.0), 0.5651591039924851, 1e-15);
    EXPECT_NEAR(bessel_i(2.0, 10.0) / 2281.518967726004, 1.0, 1e-13);
    EXPECT_THROW(bessel_i(0.5, 0.0), DomainError);
    EXPECT_THROW(bessel_i(0.5, -1.0), DomainError);
}

TEST(Bessel, DualPathsAgree)
{
    for (int twice : {1, -1, 3, -3, -5})
        for (double x : {1.0, 5.0, 20.0, 50.0}) {
            const double closed = bessel_i_half_integer<double>(twice, x);
            const double series = bessel_i_series<double>(twice / 2.0, x);
            EXPECT_LT(std::abs(closed / series - 1), 1e-12) << twice << " " << x;
        }
}

TEST(Bessel, HyperbolicRatio)
{
    for (double x : {0.5, 2.0, 7.0}) EXPECT_NEAR(bessel_i(0.5, x) / bessel_i(-0.5, x), std::tanh(x), 1e-14);
}

TEST(Bessel, RecurrenceHolds)
{
    // I_{v-1}(x) - I_{v+1}(x) = (2v/x) I_v(x) on the series path for non-half orders.
    for (double v : {0.3, 1.7, 2.25})
        for (double x : {0.8, 4.0}) {
            const double lhs = bessel_i_series<double>(v - 1, x) - bessel_i_series<double>(v + 1, x);
            EXPECT_NEAR(lhs / (2 * v / x * bessel_i_series<double>(v, x)), 1.0, 1e-12);
        }
}

TEST(Bessel, LeadingAsymptoticTerm)
{
    // I_l(x) sqrt(2 pi x) e^{-x} = 1 - (4 l^2 - 1) / (8x) + O(x^-2).
    for (double l : {-2.5, 0.5, 1.5}) {
        double prev_err = 1;
        for (double x : {10.0, 40.0, 160.0, 640.0}) {
            const double v = bessel_i(l, x) * std::sqrt(2 * kPi * x) * std::exp(-x);
            const double err = std::abs(v - 1);
            EXPECT_LE(err, prev_err);
            EXPECT_NEAR(v, 1 - (4 * l * l - 1) / (8 * x), 3 * (4 * l * l + 9) * (4 * l * l + 9) / (128 * x * x));
            prev_err = err;
        }
    }
}

TEST(Bessel, ExtendedPrecision)
{
    const Float50 x = 3;
    const Float50 a = bessel_i_half_integer<Float50>(-5, x);
    const Float50 b = bessel_i_series<Float50>(Float50(-5) / 2, x);
    EXPECT_LT(static_cast<double>(abs(a / b - 1)), 1e-45);
}

TEST(Quadrature, GaussLegendreRule)
{
    const auto r = gauss_legendre<double>(20);
    double wsum = 0;
    for (double w : r.weights) wsum += w;
    EXPECT_NEAR(wsum, 2.0, 1e-14);
    // Exact for polynomials of degree 39.
    double m38 = 0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) m38 += r.weights[i] * std::pow(r.nodes[i], 38);
    EXPECT_NEAR(m38, 2.0 / 39, 1e-14);
}

TEST(Quadrature, KnownIntegrals)
{
    EXPECT_NEAR(integrate([](double x) { return x * x; }, 0.0, 1.0).value, 1.0 / 3, 1e-14);
    EXPECT_NEAR(integrate([](double x) { return std::sin(x); }, 0.0, kPi).value, 2.0, 1e-13);
    const auto osc = integrate([](double x) { return std::cos(40 * x); }, 0.0, kPi);
    EXPECT_NEAR(osc.value, 0.0, 1e-10);
    EXPECT_GT(osc.l1, 1.0);
    const auto cx = integrate([](double x) { return std::polar(1.0, x); }, 0.0, 2 * kPi);
    EXPECT_LT(std::abs(cx.value), 1e-12);

    QuadratureOptions<Float50> opt;
    opt.tol = Float50(1e-40);
    const auto e = integrate([](const Float50& x) { return exp(x); }, Float50(0), Float50(1), opt);
    EXPECT_LT(static_cast<double>(abs(e.value - (exp(Float50(1)) - 1))), 1e-38);
}

TEST(Quadrature, NodeCapRaises)
{
    QuadratureOptions<double> opt;
    opt.max_nodes = 200;
    opt.tol = 1e-15;
    EXPECT_THROW(integrate([](double x) { return std::sin(1 / (x + 1e-4)); }, 0.0, 1.0, opt), NoConvergence);
}

TEST(Parallel, OrderAndExceptions)
{
    ::setenv("PENTAVERIFY_THREADS", "4", 1);
    EXPECT_EQ(thread_count(), 4U);
    const auto v = parallel_map(100, [](std::size_t i) { return static_cast<long>(i * i); });
    for (std::size_t i = 0; i < v.size(); ++i) EXPECT_EQ(v[i], static_cast<long>(i * i));
    EXPECT_THROW(parallel_map(10,
                              [](std::size_t i) {
                                  if (i == 7) throw DomainError("boom");
                                  return 0;
                              }),
                 DomainError);
    ::setenv("PENTAVERIFY_THREADS", "bogus", 1);
    EXPECT_GE(thread_count(), 1U);
    ::unsetenv("PENTAVERIFY_THREADS");
}
