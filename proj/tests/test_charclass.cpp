#include <doctest.h>

#include <random>

#include "logcalc/charclass.hpp"
#include "test_util.hpp"

using namespace logcalc;
using testutil::cls;
using testutil::pn_ring;
using testutil::split_ring;

namespace {

Space pn_space(int n) {
    GradedRing r = pn_ring(n);
    std::string h = "H^" + std::to_string(n);
    std::string c = "(1+H)^" + std::to_string(n + 1);
    return make_space(r, testutil::cls(r, h), testutil::cls(r, c));
}

SCArrangement hyperplanes(const Space& s, int k) {
    std::vector<std::string> labels;
    std::vector<CohClass> classes;
    for (int i = 0; i < k; ++i) {
        labels.push_back("L" + std::to_string(i + 1));
        classes.push_back(cls(s.ring, "H"));
    }
    return make_arrangement(s, labels, classes);
}

// evaluate an exact scalar series at a nilpotent class
CohClass eval_series(const series::Scalar& q, const CohClass& x) {
    CohClass out = CohClass::zero(x.ring());
    CohClass power = CohClass::unit(x.ring());
    for (std::size_t j = 0; j < q.size(); ++j) {
        if (!q[j].is_zero()) out = out + q[j] * power;
        if (j + 1 < q.size()) power = power * x;
        if (power.is_zero()) break;
    }
    return out;
}

// t / (1 - e^{-t}): the rank-one Todd series
series::Scalar todd_series(int upto) {
    series::Scalar a(upto + 1);
    for (int j = 0; j <= upto; ++j) {
        Rational c(BigInt(1), BigInt::factorial(static_cast<unsigned>(j + 1)));
        a[j] = (j % 2 == 0) ? c : -c;
    }
    return series::inverse(a, upto);
}

}  // namespace

TEST_CASE("power sums: single root, split roots, trivial bundle") {
    GradedRing r = pn_ring(4);
    auto tc = make_total_chern(1, cls(r, "1 + H"));
    auto p = power_sums(tc, 4);
    for (int k = 1; k <= 4; ++k) CHECK(p[k - 1] == cls(r, "H^" + std::to_string(k)));

    GradedRing s = split_ring(2, 2);
    auto split = make_total_chern(2, cls(s, "(1+x1)*(1+x2)"));
    auto ps = power_sums(split, 2);
    CHECK(ps[0] == cls(s, "x1 + x2"));
    CHECK(ps[1] == cls(s, "x1^2 + x2^2"));

    auto triv = make_total_chern(3, CohClass::unit(r));
    for (const auto& pk : power_sums(triv, 4)) CHECK(pk.is_zero());
}

TEST_CASE("chern character of line bundles and split bundles") {
    GradedRing r = pn_ring(3);
    CHECK(chern_character(make_total_chern(1, cls(r, "1+H"))) == exp_class(cls(r, "H")));

    GradedRing s = split_ring(2, 3);
    CohClass x = cls(s, "x1"), y = cls(s, "x2");
    CHECK(chern_character(make_total_chern(2, cls(s, "(1+x1)*(1+x2)"))) ==
          exp_class(x) + exp_class(y));
}

TEST_CASE("chern character of the rank-0 divisor pushforward class") {
    // 0 -> O(-V) -> O -> O_V -> 0 gives c(O_V) = (1 - v)^{-1} at rank 0,
    // whose character is 1 - e^{-v}
    GradedRing r = pn_ring(4);
    CohClass v = cls(r, "H");
    auto tc = make_total_chern(0, invert(CohClass::unit(r) - v));
    CHECK(chern_character(tc) == CohClass::unit(r) - exp_class(-v));
    CHECK(tc.rank_violations() == std::vector<int>{1, 2, 3, 4});
}

TEST_CASE("whitney additivity of ch on split oracles") {
    for (int m = 1; m <= 4; ++m) {
        for (int n = 2; n <= 5; ++n) {
            GradedRing s = split_ring(m, n);
            CohClass total = CohClass::unit(s);
            CohClass sum = CohClass::zero(s);
            for (int i = 0; i < m; ++i) {
                CohClass xi = CohClass::generator(s, i);
                total = total * (CohClass::unit(s) + xi);
                sum = sum + exp_class(xi);
            }
            CHECK(chern_character(make_total_chern(m, total)) == sum);
        }
    }
}

TEST_CASE("todd class small cases") {
    GradedRing r = pn_ring(2);
    CHECK(todd_class(make_total_chern(0, CohClass::unit(r))) == cls(r, "1"));

    // rank 1 through degree 8: 1 + v/2 + v^2/12 + 0 v^3 - v^4/720
    GradedRing r4 = split_ring(1, 4);
    CohClass td = todd_class(make_total_chern(1, cls(r4, "1 + x1")));
    CHECK(td == cls(r4, "1 + 1/2*x1 + 1/12*x1^2 - 1/720*x1^4"));

    // Todd genus of the projective plane is 1
    Space p2 = pn_space(2);
    CohClass td_p2 = todd_class(make_total_chern(2, cls(p2.ring, "(1+H)^3")));
    CHECK(td_p2 == cls(p2.ring, "1 + 3/2*H + H^2"));
    CHECK(integrate(p2, td_p2) == Rational(1));
}

TEST_CASE("todd matches the split-series oracle and is multiplicative") {
    std::mt19937_64 rng(1729);
    std::uniform_int_distribution<long long> coef(-3, 3);
    for (int trial = 0; trial < 40; ++trial) {
        int m = 2 + static_cast<int>(trial % 3);
        int n = 4;
        GradedRing s = split_ring(m, n);
        series::Scalar q = todd_series(n);
        CohClass c1 = CohClass::unit(s), c2 = CohClass::unit(s);
        CohClass oracle = CohClass::unit(s);
        int half = m / 2;
        for (int i = 0; i < m; ++i) {
            CohClass root = Rational(coef(rng)) * CohClass::generator(s, i);
            CohClass& tgt = (i < half ? c1 : c2);
            tgt = tgt * (CohClass::unit(s) + root);
            oracle = oracle * eval_series(q, root);
        }
        CohClass lhs = todd_class(make_total_chern(m, c1 * c2));
        CHECK(lhs == oracle);
        CHECK(lhs == todd_class(make_total_chern(half, c1)) *
                         todd_class(make_total_chern(m - half, c2)));
    }
}

TEST_CASE("defining series identity x/td(x) = 1 - exp(-x)") {
    for (int n = 1; n <= 8; ++n) {
        GradedRing r = split_ring(1, n);  // Q[x]/(x^{n+1})
        CohClass x = CohClass::generator(r, 0);
        CohClass td = todd_class(make_total_chern(1, CohClass::unit(r) + x));
        CHECK(x * invert(td) == CohClass::unit(r) - exp_class(-x));
    }
}

TEST_CASE("segre classes") {
    GradedRing r = pn_ring(3);
    CohClass v = cls(r, "H");
    CHECK(segre(make_total_chern(1, CohClass::unit(r) + v)) ==
          cls(r, "1 - H + H^2 - H^3"));
    CHECK(segre(make_total_chern(1, CohClass::unit(r))) == CohClass::unit(r));

    GradedRing line = pn_ring(1);
    CHECK(segre(make_total_chern(2, cls(line, "1 + 2*H"))) == cls(line, "1 - 2*H"));

    std::mt19937_64 rng(55);
    for (int i = 0; i < 50; ++i) {
        CohClass u = testutil::random_class(r, rng, false);
        auto tc = make_total_chern(2, CohClass::unit(r) + u - u.graded_part(0));
        CHECK(segre(make_total_chern(2, segre(tc))) == tc.c);
    }
}

TEST_CASE("sheaf chern of SC divisors") {
    Space p2 = pn_space(2);
    CHECK(sheaf_chern_of_divisor(p2, hyperplanes(p2, 0)) == cls(p2.ring, "1"));
    CHECK(sheaf_chern_of_divisor(p2, hyperplanes(p2, 1)) == cls(p2.ring, "1 + H + H^2"));
    CHECK(sheaf_chern_of_divisor(p2, hyperplanes(p2, 3)) == cls(p2.ring, "1 + 3*H + 6*H^2"));
}

TEST_CASE("log-cotangent consistency on projective spaces") {
    Space p2 = pn_space(2);
    CHECK(omx_log_consistency(p2, hyperplanes(p2, 0)).pass);
    auto one = omx_log_consistency(p2, hyperplanes(p2, 1));
    CHECK(one.pass);
    CHECK(one.lhs == cls(p2.ring, "1 - 2*H + H^2"));

    Space p3 = pn_space(3);
    for (int k = 0; k <= 4; ++k) CHECK(omx_log_consistency(p3, hyperplanes(p3, k)).pass);
}

TEST_CASE("dual chern flips odd components") {
    GradedRing r = pn_ring(3);
    CHECK(dual_chern(cls(r, "1 + 4*H + 6*H^2 + 4*H^3")) ==
          cls(r, "1 - 4*H + 6*H^2 - 4*H^3"));
    CHECK(dual_chern(dual_chern(cls(r, "1 + 7*H + 5*H^3"))) == cls(r, "1 + 7*H + 5*H^3"));
}

TEST_CASE("total chern validation") {
    GradedRing r = pn_ring(2);
    CHECK_THROWS_AS(make_total_chern(1, cls(r, "2 + H")), std::invalid_argument);
    CHECK_THROWS_AS(make_total_chern(-1, cls(r, "1 + H")), std::invalid_argument);
    CHECK(make_total_chern(2, cls(r, "1 + H")).rank_violations().empty());
}
