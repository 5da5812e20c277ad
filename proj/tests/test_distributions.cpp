#include <catch2/catch_amalgamated.hpp>

#include <mpfr.h>

#include <cmath>
#include <map>

#include "kaclab/distributions.hpp"
#include "kaclab/law_config.hpp"

using namespace kaclab;

TEST_CASE("four-moment law carries the advertised atoms") {
    auto law = make_four_moment();
    REQUIRE(law.atoms.size() == 4);
    std::map<double, Rational> expect{{-std::sqrt(5.0), Rational(1, 18)},
                                      {-1.0 / std::sqrt(2.0), Rational(4, 9)},
                                      {1.0 / std::sqrt(2.0), Rational(4, 9)},
                                      {std::sqrt(5.0), Rational(1, 18)}};
    for (const auto& a : law.atoms) {
        REQUIRE(expect.count(a.value) == 1);
        REQUIRE(a.mass == expect[a.value]);
    }
    REQUIRE(law.zero_mass == 0.0);
}

TEST_CASE("moment validation: exact sums for discrete laws") {
    auto fm = validate_moments(make_four_moment());
    REQUIRE(fm.mean == 0.0);
    REQUIRE(fm.variance == Catch::Approx(1.0).margin(1e-12));

    // fourth moment 3, computed exactly over the stored dyadic atoms
    Rational m4(0);
    for (const auto& a : make_four_moment().atoms) {
        Rational v = rational_from_double(a.value);
        m4 += a.mass * v * v * v * v;
    }
    REQUIRE(to_double(m4) == Catch::Approx(3.0).margin(1e-12));

    auto rad = validate_moments(make_rademacher());
    REQUIRE(rad.mean == 0.0);
    REQUIRE(rad.variance == 1.0);
    REQUIRE(rad.abs_moment == 1.0);

    REQUIRE(validate_moments(make_ternary(1.0 / 3.0)).variance ==
            Catch::Approx(1.0).margin(1e-12));
    REQUIRE(validate_moments(make_zero_atom(0.5)).variance ==
            Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("continuous builtins validate against their densities") {
    auto g = validate_moments(make_gaussian());
    REQUIRE(g.variance == Catch::Approx(1.0).margin(1e-12));
    REQUIRE(g.abs_moment == Catch::Approx(2.0 * std::sqrt(2.0 / M_PI)).margin(1e-9));
    auto u = validate_moments(make_uniform_sym());
    REQUIRE(u.variance == Catch::Approx(1.0).margin(1e-12));
    REQUIRE(u.abs_moment == Catch::Approx(3.0 * std::sqrt(3.0) / 4.0).margin(1e-9));
}

TEST_CASE("moment bound invariant holds for all builtins") {
    for (const char* name :
         {"gaussian", "rademacher", "uniform-sym", "four-moment", "ternary(0.25)", "zero-atom(0.5)"}) {
        auto law = builtin_law(name);
        auto m = validate_moments(law);
        REQUIRE(law.eps0 == 1.0);
        REQUIRE(m.abs_moment <= law.m0_bound * (1.0 + 1e-12) + 1e-12);
    }
}

TEST_CASE("quantile examples") {
    REQUIRE(make_rademacher().quantile(0.3) == -1.0);
    REQUIRE(make_uniform_sym().quantile(0.5) == 0.0);
    REQUIRE(make_zero_atom(0.5).quantile(0.5) == 0.0);
    REQUIRE_THROWS_AS(make_rademacher().quantile(0.0), std::invalid_argument);
    REQUIRE_THROWS_AS(make_rademacher().quantile(1.0), std::invalid_argument);
}

TEST_CASE("quantile is a nondecreasing map into the support") {
    for (const char* name : {"rademacher", "four-moment", "ternary(0.4)", "zero-atom(0.3)"}) {
        auto law = builtin_law(name);
        double prev = -1e300;
        for (int i = 1; i < 500; ++i) {
            double u = i / 500.0;
            double q = law.quantile(u);
            REQUIRE(q >= prev);
            prev = q;
            bool in_support = false;
            for (const auto& a : law.atoms) in_support |= a.value == q;
            REQUIRE(in_support);
        }
    }
}

TEST_CASE("sampling stays on the atoms") {
    CouplingStream s(5, 0);
    auto rad = make_rademacher().sample(s, 1000);
    for (double v : rad) REQUIRE((v == 1.0 || v == -1.0));
    auto fm_law = make_four_moment();
    auto fm = fm_law.sample(CouplingStream(5, 1), 1000);
    for (double v : fm) {
        bool ok = false;
        for (const auto& a : fm_law.atoms) ok |= a.value == v;
        REQUIRE(ok);
    }
}

TEST_CASE("gaussian sample mean passes the CLT sanity bound") {
    const std::size_t n = 1000000;
    CouplingStream s(123, 0);
    double sum = 0;
    for (std::size_t k = 0; k < n; ++k) sum += normal_quantile(s.next());
    REQUIRE(std::fabs(sum / n) < 4.0 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("empirical atom frequencies match masses within 5 sigma") {
    const std::size_t n = 100000;
    for (const char* name : {"rademacher", "four-moment", "zero-atom(0.5)"}) {
        auto law = builtin_law(name);
        CouplingStream s(777, 0);
        std::map<double, std::size_t> freq;
        for (std::size_t k = 0; k < n; ++k) freq[law.quantile(s.next())]++;
        for (const auto& a : law.atoms) {
            double p = to_double(a.mass);
            double sigma = std::sqrt(p * (1 - p) * n);
            REQUIRE(std::fabs(static_cast<double>(freq[a.value]) - p * n) <= 5.0 * sigma);
        }
    }
}

TEST_CASE("coupling: identical uniforms drive every law") {
    auto a = make_rademacher();
    auto b = make_four_moment();
    auto c = make_gaussian();
    for (std::uint64_t trial : {0ull, 9ull}) {
        CouplingStream sa(31, trial), sb(31, trial), sc(31, trial);
        auto va = a.sample(sa, 64);
        auto vb = b.sample(sb, 64);
        auto vc = c.sample(sc, 64);
        for (std::size_t k = 0; k < 64; ++k) {
            double u = uniform_at(31, trial, k);
            REQUIRE(va[k] == a.quantile(u));
            REQUIRE(vb[k] == b.quantile(u));
            REQUIRE(vc[k] == c.quantile(u));
        }
    }
}

TEST_CASE("normal quantile is accurate against an MPFR oracle") {
    // Phi(q(u)) must reproduce u to ~1e-15 relative, Phi via mpfr_erfc.
    mpfr_t x, phi;
    mpfr_init2(x, 256);
    mpfr_init2(phi, 256);
    for (double u : {1e-12, 1e-6, 0.001, 0.1, 0.25, 0.5, 0.75, 0.9, 0.999, 1 - 1e-6, 1 - 1e-12}) {
        double q = normal_quantile(u);
        mpfr_set_d(x, -q / std::sqrt(2.0), MPFR_RNDN);
        mpfr_erfc(phi, x, MPFR_RNDN);
        mpfr_div_ui(phi, phi, 2, MPFR_RNDN);
        double err = std::fabs(mpfr_get_d(phi, MPFR_RNDN) - u);
        REQUIRE(err <= 4e-15 * std::max(u, 1.0 - u) + 1e-300);
    }
    mpfr_clear(x);
    mpfr_clear(phi);
}

TEST_CASE("gaussian quantile discretizations are standardized") {
    for (int m : {4, 16, 64, 63}) {
        auto law = make_gaussian_discretization(m);
        REQUIRE(law.atoms.size() == static_cast<std::size_t>(m));
        auto mom = validate_moments(law);
        REQUIRE(mom.mean == 0.0);
        REQUIRE(mom.variance == Catch::Approx(1.0).margin(1e-12));
    }
    REQUIRE(make_gaussian_discretization(63).zero_mass == Catch::Approx(1.0 / 63).margin(1e-18));
}

TEST_CASE("parameter validation") {
    REQUIRE_THROWS_AS(make_ternary(0.0), std::invalid_argument);
    REQUIRE_THROWS_AS(make_ternary(1.0), std::invalid_argument);
    REQUIRE_THROWS_AS(make_zero_atom(1.0), std::invalid_argument);
    REQUIRE_THROWS_AS(builtin_law("cauchy"), std::invalid_argument);
    REQUIRE(builtin_law("zero-atom(0)").atoms.size() == 2);
}

TEST_CASE("JSON law config round trip and rejection") {
    nlohmann::json j = {{"name", "biased-three"},
                        {"atoms", {{-2.0, 1, 8}, {0.0, 3, 4}, {2.0, 1, 8}}}};
    auto law = law_from_json(j);
    REQUIRE(law.name == "biased-three");
    REQUIRE(law.zero_mass == 0.75);
    REQUIRE(validate_moments(law).variance == 1.0);

    nlohmann::json bad = {{"name", "broken"}, {"atoms", {{-1.0, 1, 2}, {1.0, 1, 3}}}};
    REQUIRE_THROWS_AS(law_from_json(bad), std::invalid_argument);  // masses sum != 1

    nlohmann::json skew = {{"name", "skew"}, {"atoms", {{-1.0, 1, 4}, {1.0, 3, 4}}}};
    REQUIRE_THROWS_AS(law_from_json(skew), std::invalid_argument);  // nonzero mean
}
