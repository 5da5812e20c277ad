#include <catch2/catch_amalgamated.hpp>

#include "kaclab/polynomial.hpp"
#include "kaclab/rng.hpp"

using namespace kaclab;

TEST_CASE("degree and trailing zeros") {
    DPoly p{{0.0, 0.0, 1.0, 1.0}};
    REQUIRE(p.degree() == 3);
    REQUIRE(p.trailing_zeros() == 2);

    DPoly lead_zero{{1.0, 2.0, 0.0}};
    REQUIRE(lead_zero.degree() == 1);
    REQUIRE(lead_zero.slots() == 3);

    DPoly zero{{0.0, 0.0, 0.0}};
    REQUIRE(zero.degree() == -1);
    REQUIRE(zero.is_zero());
}

TEST_CASE("multiplicity at zero and the all-zero convention") {
    REQUIRE(multiplicity_at_zero(DPoly{{0.0, 0.0, 1.0, 1.0}}).tau == 2);
    REQUIRE(multiplicity_at_zero(DPoly{{1.0, 0.0, 0.0}}).tau == 0);
    auto mz = multiplicity_at_zero(DPoly{{0.0, 0.0, 0.0}});
    REQUIRE(mz.degenerate);
    REQUIRE(mz.tau == 2);  // slot length n+1 = 3 reports tau = n
}

TEST_CASE("negate transform flips odd coefficients") {
    DPoly p{{1.0, 1.0, 1.0}};
    auto q = transform_negate(p);
    REQUIRE(q.c == std::vector<double>{1.0, -1.0, 1.0});

    // x - 1 has root 1; the image has root -1
    DPoly lin{{-1.0, 1.0}};
    auto nl = transform_negate(lin);
    REQUIRE(nl.c == std::vector<double>{-1.0, -1.0});
    REQUIRE(nl.eval(-1.0) == 0.0);
}

TEST_CASE("reciprocal transform reverses the slot vector") {
    DPoly p{{-2.0, 1.0}};  // x - 2
    auto q = transform_reciprocal(p);
    REQUIRE(q.c == std::vector<double>{1.0, -2.0});  // 1 - 2x, root 1/2
    REQUIRE(q.eval(0.5) == 0.0);

    DPoly pal{{1.0, 3.0, 1.0}};
    REQUIRE(transform_reciprocal(pal).c == pal.c);

    REQUIRE_THROWS_AS(transform_reciprocal(DPoly{{0.0, 0.0}}), std::invalid_argument);
}

TEST_CASE("transforms are involutions") {
    CouplingStream s(11, 0);
    for (int rep = 0; rep < 50; ++rep) {
        std::size_t n = 1 + static_cast<std::size_t>(s.next() * 40);
        DPoly p;
        p.c.resize(n + 1);
        for (auto& c : p.c) c = (s.next() < 0.5 ? -1.0 : 1.0) * std::floor(s.next() * 9 + 1);
        REQUIRE(transform_negate(transform_negate(p)).c == p.c);
        if (p.c.front() != 0.0 && p.c.back() != 0.0)
            REQUIRE(transform_reciprocal(transform_reciprocal(p)).c == p.c);
    }
}

TEST_CASE("exact promotion reads doubles as dyadic rationals") {
    DPoly p{{0.1, -2.5, 3.0}};
    QPoly q = promote(p);
    REQUIRE(to_double(q.c[0]) == 0.1);
    REQUIRE(q.c[1] == Rational(-5, 2));
    REQUIRE(q.c[2] == 3);
    // 0.1 is not exactly 1/10 as a double, and promotion must preserve that
    REQUIRE(q.c[0] != Rational(1, 10));
}
