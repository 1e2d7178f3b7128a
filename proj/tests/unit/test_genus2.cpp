#include <doctest.h>

#include <memory>

#include "weierkit/elliptic.hpp"
#include "weierkit/family.hpp"
#include "weierkit/genus2.hpp"

using namespace weierkit;

namespace {

SewingData sewing(Complex eps, int p = 1, int N = 16)
{
    SewingData s;
    s.tau1 = {0.1, 1.0};
    s.tau2 = {-0.2, 1.3};
    s.epsilon = eps;
    s.p = p;
    s.N = N;
    return s;
}

const Complex x{0.13, 0.21}, y{-0.27, 0.4};

} // namespace

TEST_SUITE("genus2")
{
    TEST_CASE("index matrices")
    {
        const auto im = build_index_matrices(2, 8);
        CHECK(im.Gamma(0, 0) == Complex(1.0));
        CHECK(im.Gamma(0, 1) == Complex(0.0));
        Matrix expected = Matrix::Zero(8, 8);
        expected(0, 0) = 1.0;
        CHECK(im.Pi == expected);
        CHECK(im.Pi == im.Gamma * im.Gamma);
        CHECK(im.Delta(2, 0) == Complex(1.0)); // m = n + 2
        CHECK(build_index_matrices(1, 8).Pi == Matrix::Zero(8, 8));
        CHECK(build_index_matrices(1, 8).Delta == Matrix::Identity(8, 8));
        const auto p3 = build_index_matrices(3, 10);
        CHECK(p3.Pi.trace() == Complex(3.0)); // Id_{2p-3}
        CHECK_THROWS_AS(build_index_matrices(2, 4), DomainError);
    }

    TEST_CASE("Lambda")
    {
        CHECK(build_Lambda(1, sewing(0.0)) == Matrix::Zero(16, 16));
        const SewingData s = sewing(Complex(0.004, 0.003));
        const Matrix L = build_Lambda(2, s);
        for (int m = 1; m <= 16; ++m)
            for (int n = 1; n <= 16; ++n)
                if ((m + n) % 2 == 1)
                    CHECK(L(m - 1, n - 1) == Complex(0.0));
        const Complex sq = std::sqrt(s.epsilon);
        const Complex e4 = eisenstein_E(4, s.tau2).value;
        // m = 1, n = 3: eps^2 (-1)^4 C(3, 3) E_4
        CHECK(std::abs(L(0, 2) - sq * sq * sq * sq * e4) < 1e-15);
        const Matrix S = build_S(16);
        const Matrix diff = L - S * build_A(2, s) * S.inverse();
        CHECK(diff.cwiseAbs().maxCoeff() < 1e-12);
    }

    TEST_CASE("R, Q and P vectors")
    {
        const Genus2Context zero(sewing(0.0));
        CHECK(zero.R_row(1, x).isZero());
        CHECK(zero.Q_row(1, x).isZero());
        CHECK(zero.P_column(0, 2, y).isZero());

        const Genus2Context c(sewing(0.0025));
        const Genus2Context c4(sewing(0.01));
        const RowVector r = c.R_row(1, x), r4 = c4.R_row(1, x);
        CHECK(std::abs(r(0) - 0.05 * weierstrass_P(2, x, c.sewing().tau1).value) < 1e-14);
        for (int m = 1; m <= 6; ++m)
            CHECK(std::abs(r4(m - 1) / r(m - 1) - std::pow(2.0, m)) < 1e-10);

        const ColVector p0 = c.P_column(0, 1, y), p1 = c.P_column(1, 1, y);
        CHECK(std::abs(p0(0) - 0.05 * weierstrass_P(1, y, c.sewing().tau1).value) < 1e-14);
        CHECK(std::abs(p1(0) - 0.05 * weierstrass_P(2, y, c.sewing().tau1).value) < 1e-14);

        const Genus2Context d(sewing(std::polar(0.01, 0.4)));
        for (int a = 1; a <= 2; ++a) {
            const RowVector q = d.Q_row(a, x), qn = d.Q_row_neumann(a, x);
            CHECK((q - qn).norm() <= 1e-10 * q.norm());
        }
    }

    TEST_CASE("degeneration and p = 1")
    {
        const Genus2Context c(sewing(1e-20));
        for (int a = 1; a <= 2; ++a) {
            const Complex tau = c.sewing().tau(a);
            const Complex limit = weierstrass_P(1, x - y, tau).value - weierstrass_P(1, x, tau).value;
            CHECK(std::abs(c.weierstrass(0, Genus2Branch::same_torus, a, x, y) - limit) < 1e-8);
            CHECK(std::abs(c.weierstrass(0, Genus2Branch::cross_torus, a, x, y)) < 1e-8);
            CHECK(std::abs(c.weierstrass(2, Genus2Branch::same_torus, a, x, y) -
                           weierstrass_P(3, x - y, tau).value) < 1e-8);
        }
    }

    TEST_CASE("j > 0 against y-derivatives")
    {
        for (int p : {1, 2, 3}) {
            const Genus2Context c(sewing(Complex(0.004, 0.003), p));
            for (auto b : {Genus2Branch::same_torus, Genus2Branch::cross_torus}) {
                const double h = 1e-4;
                const auto f = [&](Complex yy) { return c.weierstrass(0, b, 1, x, yy); };
                const Complex d1 = (f(y + h) - f(y - h)) / (2.0 * h) / two_pi_i;
                CHECK(std::abs(d1 - c.weierstrass(1, b, 1, x, y)) < 1e-5 * std::max(1.0, std::abs(d1)));
            }
        }
    }

    TEST_CASE("symmetry under swapping the tori")
    {
        SewingData s = sewing(Complex(0.006, -0.002), 2);
        SewingData t = s;
        std::swap(t.tau1, t.tau2);
        const Genus2Context c(s), d(t);
        for (auto b : {Genus2Branch::same_torus, Genus2Branch::cross_torus})
            for (int j = 0; j <= 2; ++j)
                CHECK(std::abs(c.weierstrass(j, b, 1, x, y) - d.weierstrass(j, b, 2, x, y)) < 1e-12);
    }

    TEST_CASE("analytic in epsilon")
    {
        const auto value = [](Complex eps) {
            return Genus2Context(sewing(eps)).weierstrass(0, Genus2Branch::same_torus, 1, x, y);
        };
        const Complex e0 = 0.005;
        const auto deriv = [&](double h) { return (value(e0 + h) - value(e0 - h)) / (2.0 * h); };
        const Complex d1 = deriv(1e-4), d2 = deriv(5e-5);
        CHECK(std::abs(d1 - d2) <= 1e-3 * std::abs(d2));
    }

    TEST_CASE("f2 coefficients")
    {
        const Genus2Context c(sewing(0.0));
        const auto same = c.f2({x, 1});
        CHECK(same.f1 == Complex(1.0));
        CHECK(same.f2 == Complex(0.0));
        CHECK(same.f3.isZero());
        const auto other = c.f2({x, 2});
        CHECK(other.f1 == Complex(0.0));
        CHECK(other.f2 == Complex(1.0));

        SewingData lit = sewing(0.0);
        lit.literal_calF = true;
        const auto literal = Genus2Context(lit).f2({x, 1});
        CHECK(literal.f1 == Complex(1.0));
        CHECK(literal.f2 == Complex(1.0));
    }

    TEST_CASE("guards")
    {
        CHECK_THROWS_AS(Genus2Context(sewing(10.0)), ConvergenceError);
        CHECK_THROWS_AS(Genus2Context(sewing(0.01, 9, 24)), DomainError);
        CHECK_THROWS_AS(Genus2Context(sewing(0.01, 4, 8)), DomainError);
        SewingData bad = sewing(0.01);
        bad.tau2 = {0.0, -1.0};
        CHECK_THROWS_AS(Genus2Context{bad}, DomainError);
    }

    TEST_CASE("genus2_reduce")
    {
        const Genus2Context c(sewing(Complex(0.004, 0.003), 2));
        const std::vector<Genus2Point> pts = {{y, 1}, {Complex(0.3, 0.5), 2}, {x, 1}};
        const ZeroFamily zero(Kind::genus2);
        CHECK(genus2_reduce(zero, c, pts).slot.value == Complex(0.0));

        const TableFamily delta(Kind::genus2, 4, {{{{1, 1, 0}}, std::nullopt, 1.0}});
        const auto r = genus2_reduce(delta, c, pts);
        CHECK(std::abs(r.slot.value - c.weierstrass(0, pts[2], pts[0])) < 1e-15);

        auto F = std::make_shared<TableFamily>(TableFamily(
            Kind::genus2, 4,
            {{{{1, 1, 0}}, std::nullopt, 0.5}, {{{2, 1, 1}}, std::nullopt, {0.1, 1.0}}, {{{0, 3, 2}}, std::nullopt, 2.0},
             {{{0, 1, 0}}, std::nullopt, 1.5}}));
        auto G = std::make_shared<TableFamily>(TableFamily(
            Kind::genus2, 4, {{{{1, 1, 2}}, std::nullopt, -1.0}, {{{0, 2, 0}}, std::nullopt, {0.0, 3.0}}}));
        const Complex a{0.3, 0.7}, b{-1.1, 0.2};
        const LinearCombinationFamily H({{a, F}, {b, G}});
        const auto rh = genus2_reduce(H, c, pts, true);
        const auto rf = genus2_reduce(*F, c, pts, true);
        const auto rg = genus2_reduce(*G, c, pts, true);
        CHECK(std::abs(rh.slot.value - (a * rf.slot.value + b * rg.slot.value)) < 1e-12);
        CHECK(std::abs(rh.channel->value - (a * rf.channel->value + b * rg.channel->value)) < 1e-12);
    }
}
