#include <doctest.h>

#include <random>

#include "weierkit/genus0.hpp"

using namespace weierkit;

namespace {

// f_{n,m} by repeated complex-step free differentiation of w^n/(z-w): Leibniz on the two factors.
Complex leibniz(int n, int m, Complex z, Complex w)
{
    // (d/dw)^m [w^n (z-w)^{-1}] = sum_j C(m,j) (d^j w^n) (d^{m-j} (z-w)^{-1})
    Complex s = 0.0;
    double cmj = 1.0;
    for (int j = 0; j <= m; ++j) {
        if (j > 0)
            cmj = cmj * (m - j + 1) / j;
        if (j > n)
            break;
        double falling = 1.0;
        for (int t = 0; t < j; ++t)
            falling *= n - t;
        const int r = m - j;
        const double rf = std::tgamma(r + 1.0);
        s += cmj * falling * std::pow(w, n - j) * rf * std::pow(z - w, -(r + 1));
    }
    return std::pow(z, -n) * s / std::tgamma(m + 1.0);
}

} // namespace

TEST_SUITE("genus0")
{
    TEST_CASE("closed forms")
    {
        const Complex z{1.3, 0.4}, w{-0.2, 0.5};
        CHECK(std::abs(f_rational({0, 0}, z, w) - 1.0 / (z - w)) < 1e-15);
        CHECK(std::abs(f_rational({1, 0}, z, w) - w / (z * (z - w))) < 1e-15);
        CHECK(std::abs(f_rational({1, 1}, z, w) - 1.0 / ((z - w) * (z - w))) < 1e-14);
        for (int n = 0; n <= 5; ++n)
            for (int m = 0; m <= 5; ++m)
                CHECK(std::abs(f_rational({n, m}, z, w) - leibniz(n, m, z, w)) <
                      1e-12 * std::max(1.0, std::abs(leibniz(n, m, z, w))));
    }

    TEST_CASE("poles")
    {
        CHECK_THROWS_AS(f_rational({0, 0}, 0.5, 0.5), PoleError);
        CHECK_THROWS_AS(f_rational({2, 1}, 0.0, 0.5), PoleError);
        CHECK_NOTHROW(f_rational({0, 1}, 0.0, 0.5));
        CHECK_THROWS_AS(f_rational({-1, 0}, 1.0, 0.5), DomainError);
    }

    TEST_CASE("derivative recursion is exact")
    {
        for (int n = 0; n <= 4; ++n)
            for (int m = 0; m <= 3; ++m) {
                const auto& k = RationalKernel::get({n, m});
                const auto next = RationalKernel::get({n, m + 1});
                const auto d = k.w_derivative();
                const Complex z{0.9, -0.3}, w{0.2, 0.1};
                Complex dv = 0.0;
                for (const auto& t : d)
                    dv += to_double(t.coeff) * std::pow(z, t.z_power) * std::pow(w, t.w_power) *
                          std::pow(z - w, -t.pole_order);
                CHECK(std::abs(dv / double(m + 1) - next.evaluate(z, w)) < 1e-13);
            }
    }

    TEST_CASE("expansions")
    {
        const auto g = f_rational_expansion({0, 0}, 10);
        for (int i = 0; i < 10; ++i) {
            const auto& c = g.coefficient(i);
            REQUIRE(c.size() == 1);
            CHECK(c.begin()->first == -i - 1);
            CHECK(c.begin()->second == Rational(1));
        }
        const auto h = f_rational_expansion({1, 1}, 10);
        for (int i = 0; i < 10; ++i) {
            const auto& c = h.coefficient(i);
            REQUIRE(c.size() == 1);
            CHECK(c.begin()->first == -i - 2);
            CHECK(c.begin()->second == Rational(i + 1));
        }
    }

    TEST_CASE("expansion partial sums converge geometrically")
    {
        std::mt19937 gen(17);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        for (int trial = 0; trial < 20; ++trial) {
            const int n = trial % 5, m = (trial / 5) % 5;
            const Complex z{1.0 + u(gen), u(gen)};
            const Complex w = 0.3 * z * std::polar(std::abs(u(gen)), 3.0 * u(gen));
            const Complex exact = f_rational({n, m}, z, w);
            double prev = 1e300;
            for (int order : {10, 20, 40}) {
                const double err = std::abs(f_rational_expansion({n, m}, order).evaluate(z, w) - exact);
                CHECK(err <= prev);
                prev = err;
            }
            CHECK(prev < 1e-12 * std::max(1.0, std::abs(exact)));
        }
    }

    TEST_CASE("cache is shared and thread safe")
    {
        const auto* a = &RationalKernel::get({3, 2});
        const auto* b = &RationalKernel::get({3, 2});
        CHECK(a == b);
        CHECK_FALSE(a->to_string().empty());
    }
}
