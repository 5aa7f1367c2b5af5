#include "doctest.h"

#include <array>
#include <random>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "fd6/stencil.hpp"

using fd6::CaseTag;
using fd6::CompactStencil;
using fd6::ScaledCoefficients;
using fd6::SourceDerivatives;
using fd6::StencilTable;
using fd6::stencil_offsets;

using Q = boost::multiprecision::cpp_rational;

namespace {

Q q(long long num, long long den) { return Q(num) / Q(den); }

std::array<Q, 15> r_vector(const Q& a, const Q& b) {
    const auto r = fd6::compute_r(ScaledCoefficients<Q>(a, b));
    return {r.r1, r.r2, r.r3, r.r4, r.r5, r.r6, r.r7, r.r8,
            r.r9, r.r10, r.r11, r.r12, r.r13, r.r14, r.r15};
}

template <class Scalar>
SourceDerivatives<Scalar> constant_source(const Scalar& value) {
    SourceDerivatives<Scalar> fd;
    for (int m = 0; m <= 4; ++m)
        for (int n = 0; m + n <= 4; ++n)
            fd.set(m, n, m + n == 0 ? value : Scalar(0));
    return fd;
}

} // namespace

TEST_CASE("r coefficients match exact rational values") {
    const std::array<Q, 15> r11 = {
        Q(2),       Q(2),        Q(1),        q(11, 20),  q(-7, 24),
        q(-7, 24),  q(37, 120),  q(37, 120),  q(3, 20),   q(-1, 8),
        q(-1, 8),   q(17, 120),  q(17, 120),  q(11, 20),  q(3, 20)};
    CHECK(r_vector(Q(1), Q(1)) == r11);

    const std::array<Q, 15> r21 = {
        Q(3),        Q(5),        Q(2),        q(61, 20),  q(-157, 120),
        q(-163, 240), q(173, 240), q(167, 240), q(11, 8),   q(-67, 80),
        q(-73, 160), q(83, 160),  q(77, 160),  q(107, 40), q(23, 80)};
    CHECK(r_vector(Q(2), Q(1)) == r21);

    const std::array<Q, 15> r32 = {
        Q(5),       Q(13),       Q(6),       q(269, 12), q(-87, 16),
        q(-89, 24), q(157, 80),  q(461, 240), q(521, 32), q(-185, 32),
        q(-65, 16), q(221, 96),  q(211, 96), q(499, 24), q(217, 32)};
    CHECK(r_vector(Q(3), Q(2)) == r32);
}

TEST_CASE("r coefficient signs are fixed for admissible inputs") {
    std::mt19937_64 rng(20260817);
    std::uniform_real_distribution<double> dist(1.0, 1000.0);
    for (int trial = 0; trial < 200; ++trial) {
        const double a = dist(rng), b = dist(rng);
        const auto r = fd6::compute_r(ScaledCoefficients<double>(a, b));
        CAPTURE(a);
        CAPTURE(b);
        CHECK(r.r1 > 0);
        CHECK(r.r2 > 0);
        CHECK(r.r3 > 0);
        CHECK(r.r4 > 0);
        CHECK(r.r5 < 0);
        CHECK(r.r6 < 0);
        CHECK(r.r7 > 0);
        CHECK(r.r8 > 0);
    }
}

TEST_CASE("coefficient validation enforces the lower bound") {
    CHECK_NOTHROW(ScaledCoefficients<double>(1.0, 1.0));
    CHECK_THROWS_WITH_AS(ScaledCoefficients<double>(0.5, 2.0),
                         doctest::Contains("a_eps"), fd6::DomainError);
    CHECK_THROWS_WITH_AS(ScaledCoefficients<double>(2.0, 0.5),
                         doctest::Contains("b_eps"), fd6::DomainError);
    CHECK_NOTHROW(ScaledCoefficients<double>(0.5, 2.0, true));
}

TEST_CASE("case selection prefers the first orientation on ties") {
    CHECK(fd6::select_case(2.0, 1.0) == CaseTag::AgeB);
    CHECK(fd6::select_case(1.0, 2.0) == CaseTag::AleB);
    CHECK(fd6::select_case(3.0, 3.0) == CaseTag::AgeB);
    CHECK_THROWS_AS(fd6::select_case(0.25, 4.0), fd6::DomainError);
    CHECK(fd6::select_case(0.25, 4.0, true) == CaseTag::AleB);
}

TEST_CASE("per-power table entries match exact rational values") {
    const auto t11 = fd6::build_table(ScaledCoefficients<Q>(Q(1), Q(1)),
                                      CaseTag::AgeB);
    CHECK(t11.at(0, 0, 1) == Q(20));
    CHECK(t11.at(-1, -1, 5) == q(-1, 4));
    CHECK(t11.at(1, 1, 6) == q(-3, 80));

    const auto t100_1 = fd6::build_table(
        ScaledCoefficients<Q>(Q(100), Q(1)), CaseTag::AgeB);
    CHECK(t100_1.at(-1, -1, 5) == q(-17346470533LL, 160));
    CHECK(t100_1.at(-1, 1, 5) == q(-16666336533LL, 160));
    CHECK(t100_1.at(0, 0, 6) == Q(53563771875LL));
    CHECK(t100_1.at(1, 0, 4) == Q(0));
    CHECK(t100_1.at(0, 1, 3) == q(-650015, 6));

    const auto t1_100 = fd6::build_table(
        ScaledCoefficients<Q>(Q(1), Q(100)), CaseTag::AleB);
    CHECK(t1_100.at(0, 0, 6) == q(3503468898375LL, 8));
    CHECK(t1_100.at(0, 1, 5) == q(-23266336467LL, 40));
}

TEST_CASE("every power slice of the table has an exactly zero row sum") {
    const std::vector<std::pair<Q, Q>> age = {
        {Q(1), Q(1)}, {Q(2), Q(1)}, {Q(100), Q(1)}, {q(7, 2), q(5, 3)}};
    for (const auto& [a, b] : age) {
        const auto t =
            fd6::build_table(ScaledCoefficients<Q>(a, b), CaseTag::AgeB);
        const auto u =
            fd6::build_table(ScaledCoefficients<Q>(b, a), CaseTag::AleB);
        for (int p = 0; p <= 6; ++p) {
            Q st(0), su(0);
            for (const auto& [k, l] : stencil_offsets) {
                st += t.at(k, l, p);
                su += u.at(k, l, p);
            }
            CAPTURE(p);
            CHECK(st == Q(0));
            CHECK(su == Q(0));
        }
    }
}

TEST_CASE("per-power sign pattern: nonnegative center, nonpositive "
          "off-center entries away from the shared powers' exceptions") {
    // Exact rational check over an integer lattice of admissible pairs.
    for (int ia = 1; ia <= 12; ++ia) {
        for (int ib = 1; ib <= ia; ++ib) {
            const auto t = fd6::build_table(
                ScaledCoefficients<Q>(Q(ia), Q(ib)), CaseTag::AgeB);
            for (int p = 0; p <= 6; ++p) {
                CAPTURE(ia);
                CAPTURE(ib);
                CAPTURE(p);
                CHECK(t.at(0, 0, p) >= Q(0));
            }
            for (const int p : {0, 1, 2, 3, 4, 6}) {
                for (const auto& [k, l] : stencil_offsets) {
                    if (k == 0 && l == 0) continue;
                    CAPTURE(ia);
                    CAPTURE(ib);
                    CAPTURE(p);
                    CAPTURE(k);
                    CAPTURE(l);
                    CHECK(t.at(k, l, p) <= Q(0));
                }
            }
        }
    }
}

TEST_CASE("the two orientations coincide when the coefficients are equal") {
    for (const int v : {1, 3, 10}) {
        const ScaledCoefficients<Q> sc{Q(v), Q(v)};
        const auto t1 = fd6::build_table(sc, CaseTag::AgeB);
        const auto t2 = fd6::build_table(sc, CaseTag::AleB);
        for (const auto& [k, l] : stencil_offsets)
            for (int p = 0; p <= 6; ++p) {
                CAPTURE(v);
                CAPTURE(p);
                CHECK(t1.at(k, l, p) == t2.at(k, l, p));
            }
    }
}

TEST_CASE("requesting a table inconsistent with the coefficients fails "
          "unless forced") {
    const ScaledCoefficients<double> sc(2.0, 1.0);
    CHECK_THROWS_WITH_AS(fd6::build_table(sc, CaseTag::AleB),
                         doctest::Contains("CaseAleB"), fd6::DomainError);
    CHECK_NOTHROW(fd6::build_table(sc, CaseTag::AleB, true));
}

TEST_CASE("collapsed stencil matches exact rational values") {
    SUBCASE("unit coefficients at unit mesh size") {
        const auto t = fd6::build_table(ScaledCoefficients<Q>(Q(1), Q(1)),
                                        CaseTag::AgeB);
        const auto s = fd6::collapse(t, Q(1));
        CHECK(s.at(1, 1) == q(-83, 80)); // = -1.0375
    }
    SUBCASE("first orientation at (2, 1), h = 1/4") {
        const auto t = fd6::build_table(ScaledCoefficients<Q>(Q(2), Q(1)),
                                        CaseTag::AgeB);
        const auto s = fd6::collapse(t, q(1, 4));
        CHECK(s.at(-1, -1) == q(-694003, 327680));
        CHECK(s.at(-1, 0) == q(-3687239, 491520));
        CHECK(s.at(-1, 1) == q(-540313, 327680));
        CHECK(s.at(0, -1) == q(-101687, 15360));
        CHECK(s.at(0, 0) == q(7343441, 245760));
        CHECK(s.at(0, 1) == q(-253457, 49152));
        CHECK(s.at(1, -1) == q(-252481, 196608));
        CHECK(s.at(1, 0) == q(-223681, 49152));
        CHECK(s.at(1, 1) == q(-65547, 65536));
        Q sum(0);
        for (const auto& [k, l] : stencil_offsets) sum += s.at(k, l);
        CHECK(sum == Q(0));
    }
    SUBCASE("second orientation at (1, 2), h = 1/4") {
        const auto t = fd6::build_table(ScaledCoefficients<Q>(Q(1), Q(2)),
                                        CaseTag::AleB);
        const auto s = fd6::collapse(t, q(1, 4));
        CHECK(s.at(-1, -1) == q(-555629, 262144));
        CHECK(s.at(-1, 0) == q(-1627553, 245760));
        CHECK(s.at(-1, 1) == q(-1010305, 786432));
        CHECK(s.at(0, -1) == q(-14754389, 1966080));
        CHECK(s.at(0, 0) == q(29386889, 983040));
        CHECK(s.at(0, 1) == q(-4475981, 983040));
        CHECK(s.at(1, -1) == q(-2161967, 1310720));
        CHECK(s.at(1, 0) == q(-5071501, 983040));
        CHECK(s.at(1, 1) == q(-1312047, 1310720));
        Q sum(0);
        for (const auto& [k, l] : stencil_offsets) sum += s.at(k, l);
        CHECK(sum == Q(0));
    }
}

TEST_CASE("collapsed stencil approaches the vanishing-mesh pattern") {
    const auto t = fd6::build_table(ScaledCoefficients<double>(7.0, 3.0),
                                    CaseTag::AgeB);
    const auto s = fd6::collapse(t, 1e-160);
    CHECK(s.at(0, 0) == doctest::Approx(20.0).epsilon(1e-14));
    CHECK(s.at(-1, 0) == doctest::Approx(-4.0).epsilon(1e-14));
    CHECK(s.at(1, 1) == doctest::Approx(-1.0).epsilon(1e-14));
}

TEST_CASE("collapse rejects nonpositive mesh sizes") {
    const auto t = fd6::build_table(ScaledCoefficients<double>(1.0, 1.0),
                                    CaseTag::AgeB);
    CHECK_THROWS_AS(fd6::collapse(t, 0.0), fd6::DomainError);
    CHECK_THROWS_AS(fd6::collapse(t, -0.5), fd6::DomainError);
}

TEST_CASE("collapsed stencil is monotone for random admissible inputs") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> coeff(1.0, 100.0);
    const std::array<double, 3> sizes = {1e-3, 1.0, 10.0};
    for (int trial = 0; trial < 200; ++trial) {
        const double a = coeff(rng), b = coeff(rng);
        const ScaledCoefficients<double> sc(a, b);
        const auto tag = fd6::select_case(a, b);
        const auto s = fd6::collapse(fd6::build_table(sc, tag),
                                     sizes[trial % sizes.size()]);
        CAPTURE(a);
        CAPTURE(b);
        CHECK(s.at(0, 0) > 0.0);
        for (const auto& [k, l] : stencil_offsets) {
            if (k == 0 && l == 0) continue;
            CAPTURE(k);
            CAPTURE(l);
            CHECK(s.at(k, l) <= 0.0);
        }
    }
}

TEST_CASE("source derivative table indexes by total order then by the "
          "second index") {
    CHECK(SourceDerivatives<double>::index(0, 0) == 0);
    CHECK(SourceDerivatives<double>::index(1, 0) == 1);
    CHECK(SourceDerivatives<double>::index(0, 1) == 2);
    CHECK(SourceDerivatives<double>::index(2, 0) == 3);
    CHECK(SourceDerivatives<double>::index(0, 4) == 14);
    CHECK_THROWS_AS(SourceDerivatives<double>::index(-1, 0),
                    fd6::DomainError);
    CHECK_THROWS_AS(SourceDerivatives<double>::index(3, 2),
                    fd6::DomainError);

    SourceDerivatives<double> fd;
    CHECK_FALSE(fd.has(2, 2));
    fd.set(2, 2, 5.0);
    CHECK(fd.has(2, 2));
    CHECK(fd.get(2, 2) == 5.0);
    CHECK_THROWS_AS(fd.get(4, 0), fd6::ContractViolation);
}

TEST_CASE("right-hand-side value matches exact rational references") {
    SUBCASE("constant source, vanishing mesh size") {
        const ScaledCoefficients<Q> sc(Q(3), Q(2));
        const auto fd = constant_source(Q(1));
        CHECK(fd6::rhs_value(sc, CaseTag::AgeB, Q(0), fd) == Q(6));
        CHECK(fd6::rhs_value(sc, CaseTag::AleB, Q(0), fd) == Q(6));
    }
    SUBCASE("constant source, unit coefficients, unit mesh size") {
        const ScaledCoefficients<Q> sc(Q(1), Q(1));
        const auto fd = constant_source(Q(1));
        CHECK(fd6::rhs_value(sc, CaseTag::AgeB, Q(1), fd) == q(179, 10));
        CHECK(fd6::rhs_value(sc, CaseTag::AleB, Q(1), fd) == q(179, 10));
    }
    SUBCASE("nontrivial derivative table at (2, 1), h = 1/4") {
        const ScaledCoefficients<Q> sc(Q(2), Q(1));
        SourceDerivatives<Q> fd;
        for (int m = 0; m <= 4; ++m)
            for (int n = 0; m + n <= 4; ++n)
                fd.set(m, n, q(1, 1 + m + 2 * n));
        CHECK(fd6::rhs_value(sc, CaseTag::AgeB, q(1, 4), fd) ==
              q(68357669, 7741440));
        CHECK(fd6::rhs_value(sc, CaseTag::AleB, q(1, 4), fd) ==
              q(27335243, 3096576));
    }
}

TEST_CASE("right-hand-side value reports a contract violation when a "
          "required derivative is missing") {
    const ScaledCoefficients<double> sc(2.0, 1.0);
    SourceDerivatives<double> fd;
    for (int m = 0; m <= 4; ++m)
        for (int n = 0; m + n <= 4; ++n)
            if (!(m == 0 && n == 4)) fd.set(m, n, 1.0);
    CHECK_THROWS_AS(fd6::rhs_value(sc, CaseTag::AgeB, 0.1, fd),
                    fd6::ContractViolation);
    CHECK_THROWS_AS(fd6::rhs_value(sc, CaseTag::AgeB, -0.1,
                                   constant_source(1.0)),
                    fd6::DomainError);
}
