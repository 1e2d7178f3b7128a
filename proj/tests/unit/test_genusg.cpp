#include <doctest.h>

#include <memory>
#include <random>

#include "weierkit/family.hpp"
#include "weierkit/genusg.hpp"

using namespace weierkit;

namespace {

SchottkyData data(int p, std::vector<Complex> rho, int N = 12, bool with_f = true)
{
    SchottkyData d;
    d.g = 2;
    d.w_minus = {{-1.0, 0.0}, {0.0, -1.5}};
    d.w_plus = {{1.2, 0.1}, {0.2, 1.4}};
    d.rho = std::move(rho);
    d.p = p;
    d.N = N;
    if (with_f) {
        d.f.resize(static_cast<std::size_t>(2 * p - 1));
        d.f[0].terms = {{-1, {0.3, 0.0}}, {1, {0.05, -0.02}}};
        if (p > 1)
            d.f[1].terms = {{0, {0.1, 0.2}}, {2, {-0.01, 0.0}}};
    }
    return d;
}

const Complex x{0.3, 0.2}, y{-0.4, 0.5};

} // namespace

TEST_SUITE("genusg")
{
    TEST_CASE("psi0")
    {
        CHECK(std::abs(psi0(1, x, y, {}) - 1.0 / (x - y)) <= 1e-15 * std::abs(1.0 / (x - y)));
        LaurentPolynomial one;
        one.terms = {{0, 1.0}};
        CHECK(std::abs(psi0(1, x, y, {one}) - (1.0 / (x - y) + 1.0)) < 1e-15);
        LaurentPolynomial f;
        f.terms = {{-2, 0.5}, {1, {0.0, 1.0}}};
        CHECK(std::abs(psi0(1, x, y, {f}) + psi0(1, y, x, {f}) - (f.evaluate(x) + f.evaluate(y))) < 1e-14);
        CHECK_THROWS_AS(psi0(1, x, x, {}), PoleError);
    }

    TEST_CASE("mixed partials against finite differences")
    {
        const auto d = data(2, {0.01, 0.01});
        const double h = 1e-3;
        for (int i = 0; i <= 3; ++i)
            for (int j = 0; j <= 3; ++j) {
                // normalized derivative d^{(i,j)} via nested 5-point stencils
                const auto fx = [&](Complex xx, Complex yy, int order) {
                    const auto g = [&](Complex t) { return psi0_derivative(0, j, 2, t, yy, d.f); };
                    if (order == 0)
                        return g(xx);
                    const Complex h1 = h;
                    switch (order) {
                    case 1:
                        return (-g(xx + 2.0 * h1) + 8.0 * g(xx + h1) - 8.0 * g(xx - h1) + g(xx - 2.0 * h1)) / (12.0 * h);
                    case 2:
                        return (-g(xx + 2.0 * h1) + 16.0 * g(xx + h1) - 30.0 * g(xx) + 16.0 * g(xx - h1) -
                                g(xx - 2.0 * h1)) /
                               (12.0 * h * h) / 2.0;
                    default:
                        return (-g(xx + 3.0 * h1) + 8.0 * g(xx + 2.0 * h1) - 13.0 * g(xx + h1) + 13.0 * g(xx - h1) -
                                8.0 * g(xx - 2.0 * h1) + g(xx - 3.0 * h1)) /
                               (8.0 * h * h * h) / 6.0;
                    }
                };
                const Complex exact = psi0_derivative(i, j, 2, x, y, d.f);
                CHECK(std::abs(fx(x, y, i) - exact) < 1e-5 * std::max(1.0, std::abs(exact)));
            }
        // d^{(1,0)} of 1/(x - y) is -1/(x - y)^2
        CHECK(std::abs(psi0_derivative(1, 0, 1, x, y, {}) + 1.0 / ((x - y) * (x - y))) < 1e-14);
        CHECK(std::abs(psi0_derivative(0, 1, 1, x, y, {}) - 1.0 / ((x - y) * (x - y))) < 1e-14);
    }

    TEST_CASE("E moments")
    {
        CHECK(E_moment(0, 0, y, {}, 1) == Complex(0.0));
        LaurentPolynomial c;
        c.terms = {{0, {2.5, -1.0}}};
        CHECK(E_moment(0, 0, y, {c}, 1) == Complex(2.5, -1.0));
        const auto d = data(2, {0.01, 0.01});
        CHECK(E_moment(1, 3, y, d.f, 2) == Complex(0.0));
        // n = 1: f_1(y) * 1 + f_0 derivative-free term vanishes
        CHECK(std::abs(E_moment(0, 1, y, d.f, 2) - (d.f[1].evaluate(y) + 2.0 * y * d.f[2].evaluate(y))) < 1e-14);
    }

    TEST_CASE("R matrix")
    {
        const SchottkyContext zero(data(1, {0.0, 0.0}));
        CHECK(zero.R().isZero());

        SchottkyData one;
        one.g = 1;
        one.w_minus = {-1.0};
        one.w_plus = {{1.0, 0.5}};
        one.rho = {0.0004};
        one.p = 1;
        one.N = 8;
        const SchottkyContext c(one);
        const Complex expected = -0.02 / (one.w_minus[0] - one.w_plus[0]);
        CHECK(std::abs(c.R_entry(1, 0, 1, 0) - expected) < 1e-15);
        CHECK(c.flat(-1, 3) == 3);
        CHECK(c.flat(1, 3) == 8 + 3);
    }

    TEST_CASE("Neumann inverse")
    {
        const auto id = neumann_inverse(Matrix::Zero(6, 6));
        CHECK(id.solve == Matrix::Identity(6, 6));
        CHECK(id.series == Matrix::Identity(6, 6));

        std::mt19937 gen(5);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        Matrix m(10, 10);
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            for (Eigen::Index j = 0; j < m.cols(); ++j)
                m(i, j) = Complex(u(gen), u(gen));
        Eigen::JacobiSVD<Matrix> svd(m);
        m *= 0.5 / svd.singularValues()(0);
        const auto inv = neumann_inverse(m);
        CHECK((inv.solve - inv.series).cwiseAbs().maxCoeff() < 1e-10);
        CHECK(inv.residual < 1e-10);
        CHECK_THROWS_AS(neumann_inverse(0.95 * Matrix::Identity(4, 4)), ConvergenceError);
    }

    TEST_CASE("kernel vectors")
    {
        const SchottkyContext c(data(2, {0.0, 0.0}, 12, false));
        const auto kv = c.kernel_vectors(x, y);
        for (int a = 1; a <= 2; ++a) {
            CHECK(std::abs(kv.p_row(c.flat(a, 0)) - 1.0 / (x - c.data().w(a))) < 1e-15);
            CHECK(kv.q_col(c.flat(a, 0)) == Complex(0.0));
            CHECK(kv.p_row(c.flat(a, 1)) == Complex(0.0));
        }
        const SchottkyContext d(data(2, {0.01, Complex(0.0, 0.01)}));
        const auto kd = d.kernel_vectors(x, y);
        const int shift = 2 * 2 - 1;
        for (int a : {-2, -1, 1, 2})
            for (int m = 0; m + shift < 12; ++m)
                CHECK(kd.p_tilde_row(d.flat(a, m)) == kd.p_row(d.flat(a, m + shift)));
    }

    TEST_CASE("psi")
    {
        for (int p = 1; p <= 4; ++p) {
            const SchottkyContext zero(data(p, {0.0, 0.0}));
            CHECK(zero.psi(x, y).value == psi0(p, x, y, zero.data().f));
            const FormValue f = SchottkyContext(data(p, {0.01, 0.01})).psi(x, y);
            CHECK(f.weight("x") == p);
            CHECK(f.weight("y") == 1 - p);
            CHECK((f * f).weight("x") == 2 * p);
        }
        const SchottkyContext c12(data(2, {0.01, Complex(0.006, 0.008)}, 12));
        const SchottkyContext c16(data(2, {0.01, Complex(0.006, 0.008)}, 16));
        CHECK(std::abs(c12.psi(x, y).value - c16.psi(x, y).value) < 1e-8);
        CHECK(c12.inverse_residual() < 1e-10);
        for (double h : {1e-3, 1e-4, 1e-5}) {
            const Complex yy = x + h;
            CHECK(std::abs((x - yy) * c12.psi(x, yy).value - 1.0) < 10.0 * h);
        }
        const double h = 1e-5;
        const Complex fd = (c12.psi(x, y + h).value - c12.psi(x, y - h).value) / (2.0 * h);
        CHECK(std::abs(fd - c12.psi_derivative(1, x, y)) < 1e-8);
    }

    TEST_CASE("chi and theta")
    {
        const SchottkyContext zero(data(1, {0.0, 0.0}));
        const ChiTheta z = zero.chi_theta(x);
        for (int a : {-2, -1, 1, 2})
            CHECK(std::abs(z.chi_of(a, 2)[0] - psi0(1, x, zero.data().w(a), zero.data().f)) < 1e-14);

        for (int p : {1, 2, 3}) {
            const SchottkyContext c(data(p, {0.01, Complex(0.0, 0.02)}));
            const ChiTheta ct = c.chi_theta(x);
            for (int a = 1; a <= 2; ++a)
                for (int l = 0; l <= 2 * p - 2; ++l) {
                    const Complex rho = c.data().rho_of(a);
                    const Complex expected = ct.chi_of(a, 2)[l] + (p % 2 == 0 ? 1.0 : -1.0) *
                                                                      std::pow(rho, p - 1 - l) *
                                                                      ct.chi_of(-a, 2)[2 * p - 2 - l];
                    CHECK(std::abs(ct.theta[a - 1][l] - expected) < 1e-12 * std::max(1.0, std::abs(expected)));
                }
            if (p == 1)
                for (int a = 1; a <= 2; ++a)
                    CHECK(std::abs(ct.theta[a - 1][0] - (ct.chi_of(a, 2)[0] - ct.chi_of(-a, 2)[0])) < 1e-14);
        }
    }

    TEST_CASE("genusg_reduce")
    {
        const SchottkyContext c(data(2, {0.01, Complex(0.006, 0.008)}));
        const std::vector<Complex> pts = {y, Complex(0.5, -0.3), x};
        CHECK(genusg_reduce(ZeroFamily(Kind::genusg), c, pts).slot.value == Complex(0.0));
        const TableFamily single(Kind::genusg, 4, {{{{1, 1, 0}}, std::nullopt, 1.0}});
        const auto r = genusg_reduce(single, c, pts);
        CHECK(std::abs(r.slot.value - c.psi(x, y).value) < 1e-14);

        auto F = std::make_shared<TableFamily>(TableFamily(
            Kind::genusg, 4,
            {{{{1, 1, 0}}, std::nullopt, 0.5}, {{{2, 1, 2}}, std::nullopt, {0.1, 1.0}}, {{{0, 1, 1}}, std::nullopt, 2.0}}));
        auto G = std::make_shared<TableFamily>(
            TableFamily(Kind::genusg, 4, {{{{1, 1, 1}}, std::nullopt, -1.0}, {{{0, 2, 0}}, std::nullopt, {0.0, 3.0}}}));
        const Complex a{0.3, 0.7}, b{-1.1, 0.2};
        const LinearCombinationFamily H({{a, F}, {b, G}});
        const auto rh = genusg_reduce(H, c, pts, true);
        const auto rf = genusg_reduce(*F, c, pts, true);
        const auto rg = genusg_reduce(*G, c, pts, true);
        CHECK(std::abs(rh.slot.value - (a * rf.slot.value + b * rg.slot.value)) < 1e-12);
        CHECK(std::abs(rh.channel->value - (a * rf.channel->value + b * rg.channel->value)) < 1e-12);
        REQUIRE(rh.residual);
        CHECK(*rh.residual == doctest::Approx(std::abs(rh.slot.value - rh.channel->value)));
    }
}
