#include <doctest.h>

#include <random>

#include "logcalc/rational.hpp"

using logcalc::BigInt;
using logcalc::Rational;

TEST_CASE("bigint basic values and strings") {
    CHECK(BigInt().is_zero());
    CHECK(BigInt(0).to_string() == "0");
    CHECK(BigInt(-1).to_string() == "-1");
    CHECK(BigInt(1234567890123456789LL).to_string() == "1234567890123456789");
    CHECK(BigInt::from_string("-00042").to_string() == "-42");
    CHECK(BigInt::from_string("+7") == BigInt(7));
    CHECK_THROWS_AS(BigInt::from_string("12a"), std::invalid_argument);
    CHECK_THROWS_AS(BigInt::from_string(""), std::invalid_argument);
    CHECK_THROWS_AS(BigInt::from_string("-"), std::invalid_argument);
}

TEST_CASE("bigint factorials and powers beyond 64 bits") {
    CHECK(BigInt::factorial(20).to_string() == "2432902008176640000");
    CHECK(BigInt::factorial(25).to_string() == "15511210043330985984000000");
    CHECK(BigInt(2).pow(100).to_string() == "1267650600228229401496703205376");
    CHECK(BigInt(10).pow(30) / BigInt(10).pow(10) == BigInt(10).pow(20));
    CHECK((BigInt::factorial(30) / BigInt::factorial(29)).to_long_long() == 30);
}

TEST_CASE("bigint arithmetic agrees with __int128 on random inputs") {
    std::mt19937_64 rng(20240817);
    std::uniform_int_distribution<long long> dist(-1000000000LL, 1000000000LL);
    for (int iter = 0; iter < 5000; ++iter) {
        long long a = dist(rng), b = dist(rng);
        BigInt A(a), B(b);
        CHECK((A + B).to_long_long() == a + b);
        CHECK((A - B).to_long_long() == a - b);
        __int128 p = static_cast<__int128>(a) * b;
        BigInt P = A * B;
        CHECK((P / (b == 0 ? BigInt(1) : B)) == (b == 0 ? P : A));
        __int128 q = P.is_zero() ? 0 : 1;
        (void)q;
        CHECK(P.to_long_long() == static_cast<long long>(p));
        if (b != 0) {
            CHECK((A / B).to_long_long() == a / b);
            CHECK((A % B).to_long_long() == a % b);
        }
    }
}

TEST_CASE("bigint division invariants on wide random inputs") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long long> dist(-1000000000000000LL, 1000000000000000LL);
    for (int iter = 0; iter < 2000; ++iter) {
        BigInt a = BigInt(dist(rng)) * BigInt(dist(rng)) + BigInt(dist(rng));
        BigInt b = BigInt(dist(rng));
        if (b.is_zero()) continue;
        BigInt q, r;
        BigInt::divmod(a, b, q, r);
        CHECK(q * b + r == a);
        CHECK(r.abs() < b.abs());
        if (!r.is_zero()) CHECK(r.signum() == a.signum());
    }
    CHECK_THROWS_AS(BigInt(5) / BigInt(0), std::domain_error);
}

TEST_CASE("bigint gcd") {
    CHECK(BigInt::gcd(BigInt(12), BigInt(18)) == BigInt(6));
    CHECK(BigInt::gcd(BigInt(-12), BigInt(18)) == BigInt(6));
    CHECK(BigInt::gcd(BigInt(0), BigInt(-7)) == BigInt(7));
    CHECK(BigInt::gcd(BigInt::factorial(22), BigInt(2).pow(19)) == BigInt(2).pow(19));
}

TEST_CASE("rational canonical form") {
    CHECK(Rational(6, 4).to_string() == "3/2");
    CHECK(Rational(6, -4).to_string() == "-3/2");
    CHECK(Rational(-6, -4).to_string() == "3/2");
    CHECK(Rational(0, -5).to_string() == "0");
    CHECK(Rational(8, 2).is_integer());
    CHECK(Rational::from_string("-10/15") == Rational(-2, 3));
    CHECK(Rational::from_string("7") == Rational(7));
    CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
}

TEST_CASE("rational field laws on random inputs") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<long long> num(-40, 40);
    std::uniform_int_distribution<long long> den(1, 23);
    auto rnd = [&] { return Rational(num(rng), den(rng)); };
    for (int iter = 0; iter < 3000; ++iter) {
        Rational a = rnd(), b = rnd(), c = rnd();
        CHECK(a + b == b + a);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a - a == Rational(0));
        if (!b.is_zero()) CHECK(a / b * b == a);
        if (!a.is_zero()) CHECK(a * a.inverse() == Rational(1));
    }
}

TEST_CASE("rational exact series coefficients stay exact") {
    // sum_{k=0}^{12} 1/k! has denominator 12! / gcd; just pin the exact value
    Rational s(0);
    for (unsigned k = 0; k <= 12; ++k) s += Rational(BigInt(1), BigInt::factorial(k));
    CHECK(s.to_string() == "260412269/95800320");
}
