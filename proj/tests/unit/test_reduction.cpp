#include <doctest.h>

#include <memory>
#include <random>
#include <thread>

#include "weierkit/elliptic.hpp"
#include "weierkit/genus0.hpp"
#include "weierkit/reduction.hpp"

using namespace weierkit;

namespace {

const Complex tau{0.0, 2.0};

std::shared_ptr<TableFamily> random_family(Kind kind, unsigned seed, int slots, int modes)
{
    std::mt19937 gen(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<OperatorIndex> ops;
    for (int k = 0; k <= slots; ++k)
        for (int m = 0; m < modes; ++m)
            ops.push_back({k, 1, m});
    std::vector<TableFamily::Entry> entries{{{}, std::nullopt, {u(gen), u(gen)}}};
    for (const auto& a : ops) {
        entries.push_back({{a}, std::nullopt, {u(gen), u(gen)}});
        for (const auto& b : ops)
            entries.push_back({{a, b}, std::nullopt, {u(gen), u(gen)}});
    }
    return std::make_shared<TableFamily>(kind, 4, std::move(entries));
}

// f_{k,m}(z, z_k) with z_0 = 0
Complex rational_coefficient(int k, int m, Complex z, std::span<const Complex> pts)
{
    return f_rational({k, m}, z, k == 0 ? Complex(0.0) : pts[k - 1]);
}

} // namespace

TEST_SUITE("reduction")
{
    TEST_CASE("zero family gives zero for every system")
    {
        const std::vector<Complex> pts = {{0.1, 0.3}, {0.45, 0.7}, {0.8, 1.1}};
        const std::vector<std::shared_ptr<const CoefficientSystem>> systems = {
            std::make_shared<RationalSystem>(),
            std::make_shared<EllipticSystem>(tau),
            std::make_shared<TwistedSystem>(tau, TwistData::from_angles(0.2, 0.3)),
            std::make_shared<JacobiSystem>(tau, Complex(0.3, 0.2)),
            std::make_shared<MultiparameterSystem>(tau, std::vector<Complex>{0.3, 0.1, 0.2}),
        };
        for (const auto& s : systems) {
            const ZeroFamily zero(s->kind());
            CHECK(apply_delta(2, zero, *s, pts).value == Complex(0.0));
            CHECK(check_chain_condition(1, zero, *s, pts) == 0.0);
            CHECK(functional_equation_residual(2, zero, *s, pts).residual == 0.0);
        }
    }

    TEST_CASE("kind dispatch and point checks")
    {
        const RationalSystem rational;
        const ZeroFamily elliptic(Kind::elliptic);
        const std::vector<Complex> pts = {0.3, 0.7};
        CHECK_THROWS_AS(apply_delta(1, elliptic, rational, pts), DomainError);
        const ZeroFamily zero(Kind::rational);
        CHECK_THROWS_AS(apply_delta(1, zero, rational, std::vector<Complex>{0.3, 0.3}), DomainError);
        CHECK_THROWS_AS(apply_delta(2, zero, rational, pts), DomainError);
        CHECK_THROWS_AS(apply_delta(1, zero, rational, std::vector<Complex>{0.3, std::nan("")}), DomainError);
    }

    TEST_CASE("rational single slot")
    {
        const RationalSystem sys;
        const TableFamily single(Kind::rational, 2, {{{{1, 1, 0}}, std::nullopt, 1.0}});
        const std::vector<Complex> pts = {{0.4, 0.1}, {1.3, -0.2}};
        const auto r = apply_delta(1, single, sys, pts);
        CHECK(std::abs(r.value - f_rational({1, 0}, pts[1], pts[0])) < 1e-15);
    }

    TEST_CASE("elliptic assembly")
    {
        const EllipticSystem sys(tau);
        const std::vector<Complex> c = {0.7, {0.1, -0.3}, -0.25, 0.05};
        std::vector<TableFamily::Entry> entries{{{{0, 1, 0}}, std::nullopt, 2.0}};
        for (int m = 0; m < 4; ++m)
            for (int k = 1; k <= 2; ++k)
                entries.push_back({{{k, 1, m}}, std::nullopt, c[m] * double(k)});
        const TableFamily fam(Kind::elliptic, 3, entries);
        const std::vector<Complex> pts = {{0.1, 0.3}, {0.45, 0.7}, {0.8, 1.1}};
        Complex expected = 2.0;
        for (int k = 1; k <= 2; ++k)
            for (int m = 0; m < 4; ++m)
                expected += weierstrass_P_zhu(m + 1, pts[2] - pts[k - 1], tau).value * c[m] * double(k);
        const auto r = apply_delta(2, fam, sys, pts);
        CHECK(std::abs(r.value - expected) < 1e-12);
        CHECK(r.truncation_error_estimate >= 0.0);
        CHECK(r.terms_used > 0);
    }

    TEST_CASE("chain condition equals the hand double sum")
    {
        const RationalSystem sys;
        const auto F = random_family(Kind::rational, 3, 2, 2);
        const std::vector<Complex> pts = {{0.3, 0.1}, {1.1, -0.4}, {-0.7, 0.9}};
        Complex expected = 0.0;
        for (int kp = 0; kp <= 2; ++kp)
            for (int mp = 0; mp < 2; ++mp)
                for (int k = 0; k <= 1; ++k)
                    for (int m = 0; m < 2; ++m)
                        expected += rational_coefficient(kp, mp, pts[2], pts) *
                                    rational_coefficient(k, m, pts[1], pts) *
                                    F->evaluate({}, {{k, 1, m}, {kp, 1, mp}});
        CHECK(check_chain_condition(1, *F, sys, pts) == doctest::Approx(std::abs(expected)).epsilon(1e-12));
    }

    TEST_CASE("linearity of every operation")
    {
        const EllipticSystem sys(tau);
        const auto F = random_family(Kind::elliptic, 4, 2, 3);
        const auto G = random_family(Kind::elliptic, 5, 2, 3);
        const Complex a{0.7, -0.2}, b{-1.3, 0.4};
        const LinearCombinationFamily H({{a, F}, {b, G}});
        const std::vector<Complex> pts = {{0.1, 0.3}, {0.45, 0.7}, {0.8, 1.1}};
        const std::span<const Complex> two(pts.data(), 2);
        const auto lin = [&](auto op) { return std::abs(op(H) - (a * op(*F) + b * op(*G))); };
        CHECK(lin([&](const Family& f) { return apply_delta(1, f, sys, two).value; }) < 1e-12);
        CHECK(lin([&](const Family& f) { return reduce_to_nullpoint(f, sys, two).report.value; }) < 1e-12);
        // check_chain_condition returns a modulus; linearity of the underlying sum is checked through
        // a one-term combination.
        const LinearCombinationFamily scaled({{a, F}});
        CHECK(check_chain_condition(1, scaled, sys, pts) ==
              doctest::Approx(std::abs(a) * check_chain_condition(1, *F, sys, pts)).epsilon(1e-12));
        const LinearCombinationFamily mismatched_ok({{1.0, F}});
        CHECK_THROWS_AS(LinearCombinationFamily({{1.0, F}, {1.0, std::make_shared<ZeroFamily>(Kind::rational)}}),
                        DomainError);
    }

    TEST_CASE("functional residual of a coboundary image")
    {
        auto sys = std::make_shared<EllipticSystem>(tau);
        const auto W = random_family(Kind::elliptic, 6, 2, 3);
        const auto image = std::make_shared<DeltaImageFamily>(W, sys);
        const std::vector<Complex> pts = {{0.1, 0.3}, {0.45, 0.7}, {0.8, 1.1}};
        const std::span<const Complex> two(pts.data(), 2);
        const Complex full = apply_delta(1, *image, *sys, two).value;
        const Complex zero_mode = image->evaluate(two.first(1), {{0, 1, 0}});
        const double r1 = functional_equation_residual(1, *image, *sys, two).residual;
        CHECK(r1 == doctest::Approx(std::abs(full - zero_mode)).epsilon(1e-12));
        CHECK(functional_equation_residual(1, *image, *sys, two).residual == r1);
    }

    TEST_CASE("rational continuation residual")
    {
        const RationalSystem sys;
        const auto F = random_family(Kind::rational, 8, 1, 2);
        const std::vector<Complex> pts = {{0.3, 0.1}, {1.1, -0.4}};
        const auto r = functional_equation_residual(1, *F, sys, pts);
        REQUIRE(r.continuation_residual);
        CHECK(std::isfinite(*r.continuation_residual));
    }

    TEST_CASE("null-point reduction")
    {
        const EllipticSystem sys(tau);
        const auto F = random_family(Kind::elliptic, 9, 2, 3);
        const auto n0 = reduce_to_nullpoint(*F, sys, std::span<const Complex>{});
        CHECK(n0.report.value == F->evaluate({}, {}));
        CHECK(n0.trace.size() == 1);

        const std::vector<Complex> pts = {{0.1, 0.3}, {0.45, 0.7}};
        const auto n1 = reduce_to_nullpoint(*F, sys, std::span<const Complex>(pts.data(), 1));
        CHECK(std::abs(n1.report.value - apply_delta(0, *F, sys, std::span<const Complex>(pts.data(), 1)).value) <
              1e-15);

        auto shared = std::make_shared<EllipticSystem>(tau);
        const DeltaImageFamily image(F, shared);
        const auto n2 = reduce_to_nullpoint(*F, sys, pts);
        CHECK(std::abs(n2.report.value - apply_delta(1, image, sys, pts).value) < 1e-12);
        Complex from_trace = 0.0;
        for (const auto& [word, c] : n2.trace)
            from_trace += c * F->evaluate({}, word);
        CHECK(std::abs(from_trace - n2.report.value) < 1e-12);
    }

    TEST_CASE("degenerate configurations are rejected")
    {
        const RationalSystem sys;
        const Complex z{0.8, 0.3};
        // f_{0,0}(z, 0) = 1/z and f_{0,1}(z, 0) = 1/z^2 cancel against these values
        const TableFamily fam(Kind::rational, 2, {{{{0, 1, 0}}, std::nullopt, 1.0}, {{{0, 1, 1}}, std::nullopt, -z}});
        CHECK_THROWS_AS(reduce_to_nullpoint(fam, sys, std::vector<Complex>{z}), DegenerateError);
        CHECK_NOTHROW(reduce_to_nullpoint(fam, sys, std::vector<Complex>{z * 1.5}));
    }

    TEST_CASE("seeded perturbation moves the chain residual")
    {
        auto sys = std::make_shared<RationalSystem>();
        const auto F = random_family(Kind::rational, 10, 2, 2);
        const std::vector<Complex> pts = {{0.3, 0.1}, {1.1, -0.4}, {-0.7, 0.9}};
        const double base = check_chain_condition(1, *F, *sys, pts);
        const PerturbedSystem p(sys, {1, 1, 0}, 1e-3);
        CHECK(std::abs(check_chain_condition(1, *F, p, pts) - base) >= 1e-4);
        const PerturbedSystem none(sys, {1, 1, 0}, 0.0);
        CHECK(check_chain_condition(1, *F, none, pts) == base);
    }

    TEST_CASE("multiparameter gate toggles the zero mode")
    {
        const std::vector<Complex> alpha = {1.0, 1.0};
        const MultiparameterSystem sys(tau, alpha);
        const TableFamily zero_mode(Kind::multiparameter, 3, {{{{0, 1, 0}}, std::nullopt, 1.0}});
        const std::vector<Complex> integral = {{0.25, 0.0}, {0.75, 0.0}, {0.3, 0.4}};
        const std::vector<Complex> generic = {{0.25, 0.0}, {0.6, 0.0}, {0.3, 0.4}};
        CHECK(sys.gate(integral));
        CHECK_FALSE(sys.gate(generic));
        CHECK(sys.branch(integral) == "integral");
        CHECK(apply_delta(2, zero_mode, sys, integral).value == Complex(1.0));
        CHECK(apply_delta(2, zero_mode, sys, generic).value == Complex(0.0));
    }

    TEST_CASE("Jacobi branch switch")
    {
        const Complex lattice = 1.0 * tau + 2.0;
        const JacobiSystem degenerate(tau, lattice + 1e-12);
        CHECK(degenerate.degenerate());
        CHECK(degenerate.kind() == Kind::jacobi_degenerate);
        CHECK(degenerate.lambda() == 1);
        CHECK(degenerate.mu() == 2);
        const JacobiSystem generic(tau, lattice + 1e-3);
        CHECK_FALSE(generic.degenerate());
        CHECK(generic.branch({}) == "generic");

        // degenerate zero mode carries e^{-z lambda}
        const TableFamily zm(Kind::jacobi, 2, {{{{0, 1, 1}}, std::nullopt, 1.0}});
        const std::vector<Complex> pts = {{0.2, 0.3}, {0.5, 0.6}};
        CHECK(std::abs(apply_delta(1, zm, degenerate, pts).value - std::exp(-pts[1])) < 1e-15);
        CHECK(apply_delta(1, zm, generic, pts).value == Complex(0.0));
    }

    TEST_CASE("twisted zero mode only without twist")
    {
        const TableFamily zm(Kind::twisted, 2, {{{{0, 1, 0}}, std::nullopt, 1.0}});
        const std::vector<Complex> pts = {{0.1, 0.3}, {0.45, 0.7}};
        CHECK(apply_delta(1, zm, TwistedSystem(tau, TwistData{}), pts).value == Complex(1.0));
        CHECK(apply_delta(1, zm, TwistedSystem(tau, TwistData::from_angles(0.5, 0.0)), pts).value == Complex(0.0));
        // p(n, k) weights multiply the slot terms
        const TableFamily slot(Kind::twisted, 2, {{{{1, 1, 0}}, std::nullopt, 1.0}});
        const TwistData t = TwistData::from_angles(0.3, 0.25);
        const TwistedSystem weighted(tau, t, {}, [](int, int k) { return Complex(2.0 * k); });
        CHECK(std::abs(apply_delta(1, slot, weighted, pts).value - 2.0 * twisted_P(1, t, pts[1] - pts[0], tau).value) <
              1e-14);
    }

    TEST_CASE("table families from JSON")
    {
        const auto fam = TableFamily::from_json(
            R"({"kind": "elliptic", "n_max": 2, "entries": [{"labels": [1, 1, 0], "value": [0.5, -1]},
                 {"labels": [1, 1, 0, 0, 1, 0], "value": [2, 0], "n": 1}]})");
        CHECK(fam.kind() == Kind::elliptic);
        CHECK(fam.evaluate({}, {{1, 1, 0}}) == Complex(0.5, -1.0));
        const std::vector<Complex> one = {0.1};
        CHECK(fam.evaluate(one, {{1, 1, 0}, {0, 1, 0}}) == Complex(2.0));
        CHECK(fam.evaluate({}, {{1, 1, 0}, {0, 1, 0}}) == Complex(0.0));
        CHECK(fam.evaluate({}, {{2, 1, 0}}) == Complex(0.0));
        CHECK(fam.mode_bound() == 0);
        const std::vector<Complex> many = {0.1, 0.2, 0.3};
        CHECK_THROWS_AS(fam.evaluate(many, {}), DomainError);
        CHECK_THROWS(TableFamily::from_json(R"({"kind": "nope", "n_max": 1, "entries": []})"));
        CHECK_THROWS(TableFamily::from_json(R"({"kind": "rational", "n_max": 1, "entries": [{"labels": [1, 1]}]})"));
    }

    TEST_CASE("families that are not concurrency safe are serialized")
    {
        int calls = 0;
        const FunctionFamily f(
            Kind::elliptic,
            [&](std::span<const Complex>, const ModeLabel& l) {
                ++calls;
                return l.empty() ? Complex(1.0) : Complex(0.0);
            },
            0, false);
        CHECK_FALSE(f.concurrency_safe());
        std::vector<std::thread> ts;
        for (int t = 0; t < 4; ++t)
            ts.emplace_back([&] {
                for (int i = 0; i < 1000; ++i)
                    f.guarded_evaluate({}, {});
            });
        for (auto& t : ts)
            t.join();
        CHECK(calls == 4000);
    }
}
