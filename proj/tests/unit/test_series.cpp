#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <doctest.h>

#include "pinchcert/errors.hpp"
#include "pinchcert/germ_parser.hpp"
#include "pinchcert/series.hpp"

using namespace pinchcert;
using namespace pinchcert::series;
using plumbing::LogPoint;

namespace {

constexpr double kTwoPiSq = 2.0 * std::numbers::pi * std::numbers::pi;

MultiIndex random_index(std::mt19937_64& rng, std::size_t n, unsigned max_entry) {
    std::uniform_int_distribution<unsigned> d(0, max_entry);
    std::vector<MultiIndex::value_type> e(n);
    for (auto& x : e) x = d(rng);
    return MultiIndex(e);
}

seq::SequenceEnvelope exact_teich(long long m_min, long long m_max, double slack = 0.0) {
    seq::RegimeConfig cfg;
    cfg.genus = 2;
    cfg.consts = hyp::HypConstants::defaults(2, 0.0);
    cfg.slack = slack;
    cfg.m_min = m_min;
    cfg.m_max = m_max;
    return seq::build_sequence(cfg);
}

}  // namespace

TEST_CASE("coefficients") {
    CHECK(sign(Coefficient(-3)) == -1);
    CHECK(sign(Coefficient(0)) == 0);
    CHECK(log_abs(Coefficient(-5, 2)) == doctest::Approx(std::log(2.5)));
    CHECK(to_string(Coefficient(-5, 2)) == "-5/2");
    CHECK(to_string(Coefficient(7)) == "7");
    const Coefficient huge = parse_decimal("1e400") / 3;
    CHECK(log_abs(huge) == doctest::Approx(400.0 * std::log(10.0) - std::log(3.0)).epsilon(1e-14));
    const Coefficient tiny = parse_decimal("1e-400");
    CHECK(log_abs(tiny) == doctest::Approx(-400.0 * std::log(10.0)).epsilon(1e-14));
}

TEST_CASE("multi-indices") {
    const MultiIndex a{1, 0, 2};
    CHECK(a.size() == 3);
    CHECK(a.total_degree() == 3);
    CHECK_FALSE(a.is_zero());
    CHECK(MultiIndex::zeros(4).is_zero());
    CHECK(to_string(a) == "(1,0,2)");
    CHECK_THROWS_AS(MultiIndex(std::vector<MultiIndex::value_type>{}), UsageError);
}

TEST_CASE("pinching order") {
    CHECK(compare({1, 8, 5, 2}, {2, 7, 5, 2}) == Order::Succeeds);
    CHECK(compare({2, 7, 5, 2}, {1, 8, 5, 2}) == Order::Precedes);
    CHECK(compare({3, 1}, {3, 1}) == Order::Equal);
    CHECK(succeeds({0, 1}, {3, 0}));
    CHECK(succeeds({0, 0, 1}, {100, 100, 0}));
    CHECK_THROWS_AS(compare({1, 2}, {1, 2, 3}), UsageError);

    SUBCASE("strict total order laws on random indices") {
        std::mt19937_64 rng(41);
        std::uniform_int_distribution<int> nd(1, 6);
        for (int k = 0; k < 10000; ++k) {
            const std::size_t n = static_cast<std::size_t>(nd(rng));
            const auto a = random_index(rng, n, 3);
            const auto b = random_index(rng, n, 3);
            const auto c = random_index(rng, n, 3);
            CHECK_FALSE(succeeds(a, a));
            const bool ab = succeeds(a, b);
            const bool ba = succeeds(b, a);
            CHECK((ab ? 1 : 0) + (ba ? 1 : 0) + (a == b ? 1 : 0) == 1);
            if (succeeds(a, b) && succeeds(b, c)) CHECK(succeeds(a, c));
        }
    }
    SUBCASE("the order is lexicographic from the last index") {
        std::mt19937_64 rng(43);
        for (int k = 0; k < 2000; ++k) {
            const auto a = random_index(rng, 4, 5);
            const auto b = random_index(rng, 4, 5);
            std::vector<unsigned> ra(a.entries().rbegin(), a.entries().rend());
            std::vector<unsigned> rb(b.entries().rbegin(), b.entries().rend());
            CHECK(succeeds(a, b) == (ra > rb));
        }
    }
}

TEST_CASE("germ storage") {
    AnalyticGerm f(2);
    f.add_term({1, 0}, Coefficient(2));
    f.add_term({1, 0}, Coefficient(-2));
    CHECK(f.terms().empty());
    f.add_term({0, 1}, Coefficient(1));
    f.add_term({3, 0}, Coefficient(1, 2));
    CHECK(f.terms().size() == 2);
    CHECK(f.terms().begin()->first == MultiIndex{3, 0});
    CHECK(f.max_variable() == 2);
    CHECK_FALSE(f.is_constant());
    CHECK_THROWS_AS(f.add_term({1, 0, 0}, Coefficient(1)), UsageError);

    const auto g = f.with_arity(4);
    CHECK(g.arity() == 4);
    CHECK(g.terms().begin()->first == MultiIndex{3, 0, 0, 0});
    CHECK_THROWS_AS(f.with_arity(1), ValidationError);

    CHECK_THROWS_AS(f.set_envelope({-1.0, 0.5}), ValidationError);
    CHECK_THROWS_AS(f.set_envelope({1.0, 0.0}), ValidationError);

    AnalyticGerm c(3);
    c.add_term(MultiIndex::zeros(3), Coefficient(5));
    CHECK(c.is_constant());
}

TEST_CASE("leading monomial") {
    CHECK(leading_monomial(parse_germ("t1^3 + t2")).beta == MultiIndex{3, 0});
    CHECK(leading_monomial(parse_germ("1 + t1")).beta == MultiIndex{0});
    const auto lt = leading_monomial(parse_germ("2*t1*t3^2 - 5*t2^4"));
    CHECK(lt.beta == MultiIndex{0, 4, 0});
    CHECK(lt.coeff == Coefficient(-5));
    CHECK_FALSE(lt.conditional);
    CHECK_THROWS_AS(leading_monomial(AnalyticGerm(2)), DegenerateGermError);

    auto f = parse_germ("t1 - t2");
    f.set_envelope({1.0, 1.0});
    CHECK(leading_monomial(f).conditional);
    CHECK_FALSE(leading_monomial(f, true).conditional);

    SUBCASE("the leading index precedes every other stored index") {
        std::mt19937_64 rng(47);
        for (int k = 0; k < 500; ++k) {
            AnalyticGerm g(3);
            for (int t = 0; t < 6; ++t) g.add_term(random_index(rng, 3, 4), Coefficient(t + 1));
            if (g.terms().empty()) continue;
            const auto beta = leading_monomial(g).beta;
            for (const auto& [alpha, c] : g.terms()) {
                if (!(alpha == beta)) CHECK(succeeds(alpha, beta));
            }
        }
    }
}

TEST_CASE("monomial evaluation in log coordinates") {
    CHECK(eval_log_abs_monomial({0, 0}, LogPoint{-1.0, -2.0}) == 0.0);
    CHECK(eval_log_abs_monomial({1, 0}, LogPoint{-kTwoPiSq, -4 * kTwoPiSq}) == -kTwoPiSq);
    CHECK(eval_log_abs_monomial({2, 3}, LogPoint{-1.0, -10.0}) == -32.0);
    CHECK_THROWS_AS(eval_log_abs_monomial({1, 1, 1}, LogPoint{-1.0, -10.0}), UsageError);
    CHECK_THROWS_AS(eval_log_abs_monomial({4000000000u}, LogPoint{-1e299}), PrecisionError);
}

TEST_CASE("tail bound") {
    SUBCASE("single variable, M = r = 1") {
        AnalyticGerm f(1);
        f.add_term({0}, Coefficient(1));
        f.set_envelope({1.0, 1.0});
        // Σ_{a>=1} 0.1^a = 1/9
        CHECK(tail_bound(f, {0}, LogPoint{std::log(0.1)}) == doctest::Approx(std::log(1.0 / 9.0)).epsilon(1e-12));
    }
    SUBCASE("stored tail only") {
        const auto f = parse_germ("t1 - t2");
        for (long long m = 2; m <= 8; ++m) {
            const double mm = static_cast<double>(m);
            const LogPoint p{-kTwoPiSq * mm, -kTwoPiSq * mm * mm};
            CHECK(tail_bound(f, {1, 0}, p) == doctest::Approx(-kTwoPiSq * mm * mm).epsilon(1e-12));
        }
        CHECK(tail_bound(parse_germ("t1"), {1}, LogPoint{-1.0}) == -HUGE_VAL);
    }
    SUBCASE("divergence") {
        AnalyticGerm f(2);
        f.add_term({0, 0}, Coefficient(1));
        f.set_envelope({1.0, 0.5});
        try {
            tail_bound(f, {0, 0}, LogPoint{-3.0, -0.1});
            FAIL("expected DivergenceError");
        } catch (const DivergenceError& e) {
            CHECK(e.index() == 2);
        }
    }
    SUBCASE("two variables against the closed form") {
        // Σ_{α ≻ 0} x^a y^b over all α != 0 is 1/((1-x)(1-y)) - 1
        AnalyticGerm f(2);
        f.add_term({0, 0}, Coefficient(1));
        f.set_envelope({1.0, 1.0});
        const double x = 0.25;
        const double y = 0.25;
        const double exact = 1.0 / ((1 - x) * (1 - y)) - 1.0;
        const double got = std::exp(tail_bound(f, {0, 0}, LogPoint{std::log(x), std::log(y)}));
        CHECK(got >= exact);
        CHECK(got <= exact * (1 + 1e-12));
    }
}

TEST_CASE("certificates") {
    SUBCASE("t1 - t2 on exact envelopes") {
        const auto f = parse_germ("t1 - t2", 3);
        const auto cert = certify(f, exact_teich(2, 10));
        CHECK(cert.beta == MultiIndex{1, 0, 0});
        REQUIRE(cert.m_star.has_value());
        CHECK(*cert.m_star == 2);
        CHECK_FALSE(cert.inconclusive());
        for (const auto& row : cert.rows) {
            const double mm = static_cast<double>(row.m);
            CHECK(row.margin == doctest::Approx(kTwoPiSq * (mm * mm - mm)).epsilon(1e-12));
        }
    }
    SUBCASE("reversed sign gives the same margins") {
        const auto a = certify(parse_germ("t1 - t2", 3), exact_teich(2, 6));
        const auto b = certify(parse_germ("t2 - t1", 3), exact_teich(2, 6));
        REQUIRE(a.rows.size() == b.rows.size());
        for (std::size_t k = 0; k < a.rows.size(); ++k) CHECK(a.rows[k].margin == b.rows[k].margin);
        CHECK(b.c_beta == Coefficient(-1));
    }
    SUBCASE("single monomial has an empty tail") {
        const auto cert = certify(parse_germ("t2", 3), exact_teich(2, 5));
        CHECK(cert.has_flag("vacuous-tail"));
        CHECK(*cert.m_star == 2);
        for (const auto& row : cert.rows) CHECK(row.margin == HUGE_VAL);
    }
    SUBCASE("constant germ") {
        const auto cert = certify(parse_germ("7", 3), exact_teich(2, 3));
        CHECK(cert.has_flag("vacuous"));
        CHECK(*cert.m_star == 2);
    }
    SUBCASE("a coefficient that outweighs the gap at small m") {
        // margin = 2π²(m² - m) - log 10^30 turns positive at m = 3
        const auto cert = certify(parse_germ("t1 - 1e30*t2", 3), exact_teich(2, 10));
        REQUIRE(cert.m_star.has_value());
        CHECK(*cert.m_star == 3);
        CHECK(cert.rows.front().margin < 0.0);
    }
    SUBCASE("a tie at m = 3 is not certified") {
        // 3λ_1 = λ_2 exactly at m = 3; the rounding pad keeps that margin negative
        const auto cert = certify(parse_germ("t1^3 - t2", 3), exact_teich(2, 10));
        CHECK(cert.beta == MultiIndex{3, 0, 0});
        REQUIRE(cert.m_star.has_value());
        CHECK(*cert.m_star == 4);
        CHECK(cert.rows[1].margin <= 0.0);
    }
    SUBCASE("envelopes require the lead-complete assertion") {
        auto f = parse_germ("t1 - t2", 3);
        f.set_envelope({1.0, 1.0});
        CHECK_THROWS_AS(certify(f, exact_teich(2, 5)), ValidationError);
        const auto cert = certify(f, exact_teich(2, 5), {true});
        CHECK(cert.has_flag("envelope"));
        CHECK(cert.has_flag("lead-complete"));
        REQUIRE(cert.m_star.has_value());
    }
    SUBCASE("an envelope that is too loose is inconclusive") {
        auto f = parse_germ("1e-40*t1", 3);
        f.set_envelope({1e40, 1.0});
        const auto cert = certify(f, exact_teich(2, 3), {true});
        CHECK(cert.inconclusive());
        CHECK(cert.has_flag("inconclusive"));
    }
    SUBCASE("arity mismatch") { CHECK_THROWS_AS(certify(parse_germ("t1 - t2"), exact_teich(2, 3)), UsageError); }
    SUBCASE("margins only shrink as slack grows") {
        const auto f = parse_germ("t1 - t2 + 3*t1*t3", 3);
        double prev = HUGE_VAL;
        for (double s : {0.0, 0.01, 0.05, 0.1, 0.3, 1.0}) {
            const auto cert = certify(f, exact_teich(5, 5, s));
            CHECK(cert.rows.front().margin <= prev);
            prev = cert.rows.front().margin;
        }
    }
}

TEST_CASE("exact signed evaluation") {
    const int plus1[] = {1};
    const auto a = eval_exact(parse_germ("t1"), LogPoint{-5.0}, plus1);
    CHECK(a.sign == 1);
    CHECK(a.log_abs == -5.0);

    const int plus2[] = {1, 1};
    const auto b = eval_exact(parse_germ("t1 - t2"), LogPoint{-5.0, -5.0}, plus2);
    CHECK(b.cancellation);
    CHECK(b.sign == 0);

    const auto c = eval_exact(parse_germ("t1 - t2"), LogPoint{-5.0, -20.0}, plus2);
    CHECK(c.sign == 1);
    CHECK_FALSE(c.cancellation);
    CHECK(c.log_abs == doctest::Approx(-5.000000305902367).epsilon(1e-14));

    const int mixed[] = {-1, 1};
    const auto d = eval_exact(parse_germ("t1 - t2"), LogPoint{-5.0, -20.0}, mixed);
    CHECK(d.sign == -1);

    const int bad[] = {2, 1};
    CHECK_THROWS_AS(eval_exact(parse_germ("t1 - t2"), LogPoint{-5.0, -20.0}, bad), UsageError);
}

TEST_CASE("tail bound is conservative on random polynomials") {
    std::mt19937_64 rng(53);
    std::uniform_real_distribution<double> lam(-6.0, -0.5);
    std::uniform_int_distribution<int> coef(-9, 9);
    for (int trial = 0; trial < 300; ++trial) {
        AnalyticGerm f(3);
        for (int t = 0; t < 8; ++t) f.add_term(random_index(rng, 3, 3), Coefficient(coef(rng)));
        if (f.terms().empty()) continue;
        const auto beta = leading_monomial(f).beta;
        const LogPoint p{lam(rng), lam(rng), lam(rng)};
        double direct = 0.0;
        for (const auto& [alpha, c] : f.terms()) {
            if (succeeds(alpha, beta)) direct += std::exp(log_abs(c) + eval_log_abs_monomial(alpha, p));
        }
        const double bound = tail_bound(f, beta, p);
        if (direct == 0.0) {
            CHECK(bound == -HUGE_VAL);
        } else {
            CHECK(bound >= std::log(direct));
        }
    }
}
