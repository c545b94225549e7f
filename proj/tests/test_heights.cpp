#include <doctest.h>

#include <cmath>
#include <random>

#include "hadq/heights.hpp"
#include "hadq/numutil.hpp"

using namespace hadq;

namespace {

// Independent height oracle over Q: the literal sum over places, with the
// finite support read off a complete factorization.
double weil_oracle_q(const std::vector<Element>& coords) {
    std::vector<std::uint64_t> support;
    for (const auto& c : coords) {
        if (c.is_zero()) continue;
        for (const auto& [p, e] : factor_mpz(mpz_class(c.rat().get_num()))) {
            (void)e;
            if (p.fits_ulong_p()) support.push_back(p.get_ui());
        }
        for (const auto& [p, e] : factor_mpz(mpz_class(c.rat().get_den()))) {
            (void)e;
            if (p.fits_ulong_p()) support.push_back(p.get_ui());
        }
    }
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());
    double h = 0;
    for (std::uint64_t p : support) {
        long long best = 0;
        bool first = true;
        Place v = Place::finite_prime(p);
        for (const auto& c : coords) {
            if (c.is_zero()) continue;
            long long o = ord_at(v, c);
            if (first || o < best) best = o;
            first = false;
        }
        h -= static_cast<double>(best) * std::log(static_cast<double>(p));
    }
    double arch = -std::numeric_limits<double>::infinity();
    for (const auto& c : coords)
        if (!c.is_zero()) arch = std::max(arch, log_abs(c.rat()));
    return h + arch;
}

PowerSeries geometric(const FieldCtx& ctx, long ratio = 1) {
    return PowerSeries::rational_fn(PolyK::from_ints(ctx, {1}),
                                    PolyK::from_ints(ctx, {1, -ratio}));
}

PowerSeries catalan(const FieldCtx& ctx) {
    auto rel = BivariateRelation::from_matrix(
        ctx, {{Element::one(ctx), -Element::one(ctx), Element::zero(ctx)},
              {Element::zero(ctx), Element::zero(ctx), Element::one(ctx)}});
    return PowerSeries::algebraic(rel, Element::one(ctx));
}

}  // namespace

TEST_CASE("weil height basics") {
    FieldCtx ctx = FieldCtx::rationals();
    CHECK(weil_height(ctx, {Element::rational(1), Element::rational(2)}) ==
          doctest::Approx(std::log(2.0)));
    CHECK(weil_height(ctx, {Element::rational(1), Element::rational(1, 2),
                            Element::rational(1, 3)}) == doctest::Approx(std::log(6.0)));
    CHECK_THROWS_AS(weil_height(ctx, {Element::zero(ctx), Element::zero(ctx)}), AllZero);

    // (lambda : 2 lambda) has height log 2 for any nonzero lambda.
    for (long l : {1L, -7L, 360L}) {
        Element lam = Element::rational(l, 11);
        CHECK(weil_height(ctx, {lam, lam * Element::rational(2)}) ==
              doctest::Approx(std::log(2.0)));
    }
}

TEST_CASE("weil height agrees with the sum-over-places oracle") {
    std::mt19937_64 rng(2024);
    FieldCtx ctx = FieldCtx::rationals();
    std::uniform_int_distribution<long> small(-5000, 5000);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<Element> coords;
        std::uniform_int_distribution<int> len(1, 5);
        int n = len(rng);
        bool nonzero = false;
        for (int i = 0; i < n; ++i) {
            long a = small(rng);
            long b = small(rng);
            if (b == 0) b = 3;
            coords.push_back(Element::rational(a, std::abs(b)));
            nonzero = nonzero || a != 0;
        }
        if (!nonzero) coords[0] = Element::rational(1);
        CHECK(weil_height(ctx, coords) == doctest::Approx(weil_oracle_q(coords)).epsilon(1e-9));
    }
}

TEST_CASE("weil height scaling invariance and subadditivity") {
    std::mt19937_64 rng(555);
    FieldCtx ctx = FieldCtx::rationals();
    std::uniform_int_distribution<long> small(-300, 300);
    auto rnd = [&] {
        long a = small(rng);
        if (a == 0) a = 17;
        long b = small(rng);
        if (b == 0) b = 5;
        return Element::rational(a, std::abs(b));
    };
    for (int i = 0; i < 200; ++i) {
        std::vector<Element> coords{rnd(), rnd(), rnd()};
        Element lam = rnd();
        std::vector<Element> scaled;
        for (const auto& c : coords) scaled.push_back(c * lam);
        CHECK(weil_height(ctx, coords) == doctest::Approx(weil_height(ctx, scaled)).epsilon(1e-12));

        Element a = rnd(), b = rnd();
        double ha = height_of(ctx, a), hb = height_of(ctx, b);
        CHECK(height_of(ctx, a * b) <= ha + hb + 1e-9);
        // h(a+b) <= h(a) + h(b) + eps log 2 with eps = 1 over Q.
        CHECK(height_of(ctx, a + b) <= ha + hb + std::log(2.0) + 1e-9);
    }
}

TEST_CASE("weil height over a function field") {
    FieldCtx ff = FieldCtx::function_field(4);
    const GF& f = GF::get(4);
    Element x = Element::function_field(RatFn::from_poly(FqPoly::x(f)));
    // h(1 : x) = deg(x) log 4.
    CHECK(height_of(ff, x) == doctest::Approx(std::log(4.0)));
    CHECK(height_of(ff, x * x) == doctest::Approx(2 * std::log(4.0)));
    CHECK(height_of(ff, x.inverse()) == doctest::Approx(std::log(4.0)));
}

TEST_CASE("truncation height curve: geometric, polylog, doubling series") {
    FieldCtx ctx = FieldCtx::rationals();
    auto flat = truncation_height_curve(geometric(ctx), 1, {4, 16, 64});
    for (const auto& [n, v] : flat.samples) {
        (void)n;
        CHECK(v == doctest::Approx(0.0));
    }

    // Coefficients 2^n: (1/N) h = log 2 exactly.
    auto doubling = truncation_height_curve(geometric(ctx, 2), 1, {8, 32, 128});
    for (const auto& [n, v] : doubling.samples) {
        (void)n;
        CHECK(v == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    }

    // Sum t^n/n: the truncation height is exactly log lcm(1..N).
    auto poly = truncation_height_curve(PowerSeries::polylog(ctx, 1), 1, {100, 300, 500});
    mpz_class l = 1;
    std::uint64_t covered = 0;
    for (const auto& [n, v] : poly.samples) {
        for (std::uint64_t k = covered + 1; k <= n; ++k)
            mpz_lcm_ui(l.get_mpz_t(), l.get_mpz_t(), k);
        covered = n;
        CHECK(v == doctest::Approx(log_abs(l) / static_cast<double>(n)).epsilon(1e-9));
    }
    CHECK(poly.samples.back().second > 0.9);

    CHECK_THROWS_AS(truncation_height_curve(geometric(ctx), 1, {8, 8}), InvalidArgument);
    CHECK_THROWS_AS(truncation_height_curve(geometric(ctx), 0, {8}), InvalidArgument);
}

TEST_CASE("algebraic corpus has bounded truncation heights") {
    FieldCtx ctx = FieldCtx::rationals();
    for (auto f : {geometric(ctx, 2), catalan(ctx)}) {
        auto est = truncation_height_curve(f, 1, {8, 16, 32, 64, 128});
        for (const auto& [n, v] : est.samples) {
            (void)n;
            CHECK(v <= 2.0);  // both lie well under log 4 + slack
        }
    }
}

TEST_CASE("radius profile") {
    FieldCtx ctx = FieldCtx::rationals();
    auto geom = radius_profile(geometric(ctx), 20, 64);
    for (const auto& e : geom.per_place) CHECK(e.log_inv_radius == doctest::Approx(0.0));
    CHECK(geom.total == doctest::Approx(0.0));

    auto doubling = radius_profile(geometric(ctx, 2), 20, 64);
    for (const auto& e : doubling.per_place) {
        if (e.place.is_archimedean())
            CHECK(e.log_inv_radius == doctest::Approx(std::log(2.0)).epsilon(1e-12));
        else
            CHECK(e.log_inv_radius == doctest::Approx(0.0));
    }

    // Sum t^n/n: tiny positive contributions at finite places, vanishing with
    // the window length.
    auto poly = radius_profile(PowerSeries::polylog(ctx, 1), 10, 128);
    for (const auto& e : poly.per_place) {
        CHECK(e.log_inv_radius >= 0.0);
        if (!e.place.is_archimedean()) CHECK(e.log_inv_radius <= 0.2);
    }
}

TEST_CASE("radius profile is subadditive under Hadamard products") {
    FieldCtx ctx = FieldCtx::rationals();
    std::vector<PowerSeries> corpus{geometric(ctx, 2), catalan(ctx),
                                    PowerSeries::polylog(ctx, 1)};
    for (const auto& f : corpus)
        for (const auto& g : corpus) {
            auto pf = radius_profile(f, 20, 48);
            auto pg = radius_profile(g, 20, 48);
            auto pfg = radius_profile(hadamard_product(f, g), 20, 48);
            for (std::size_t i = 0; i < pfg.per_place.size(); ++i)
                CHECK(pfg.per_place[i].log_inv_radius <=
                      pf.per_place[i].log_inv_radius + pg.per_place[i].log_inv_radius + 1e-9);
        }
}

TEST_CASE("analyticity audit refutes the logarithm and accepts integral series") {
    FieldCtx ctx = FieldCtx::rationals();
    // log(1+t) has coefficients (-1)^{n+1}/n.
    PowerSeries log1p = diff_op(PolyK::from_ints(ctx, {-1}),
                                scale(Element::rational(-1), PowerSeries::polylog(ctx, 1)));
    auto audit = a_analyticity_audit(log1p, 100, 100, 3.0);
    double oracle = 0;
    for (std::uint64_t p : primes_upto(100)) {
        if (p > 100) break;
        oracle += std::log(static_cast<double>(p)) / static_cast<double>(p - 1);
    }
    CHECK(audit.divergence_sum == doctest::Approx(oracle).epsilon(1e-12));
    CHECK(!audit.refuted_at_bound);  // only 1.6 at this small bound
    for (const auto& e : audit.per_place) {
        if (e.place.prime() <= 100)
            CHECK(e.log_inv_radius ==
                  doctest::Approx(std::log(static_cast<double>(e.place.prime())) /
                                  static_cast<double>(e.place.prime() - 1)));
    }

    auto ok = a_analyticity_audit(catalan(ctx), 50, 64, 3.0);
    CHECK(ok.divergence_sum == doctest::Approx(0.0));
    CHECK(!ok.refuted_at_bound);
}

TEST_CASE("analyticity audit refutes the exponential via the factorial oracle") {
    FieldCtx ctx = FieldCtx::rationals();
    // Literal prefix of sum t^n/n!.
    std::vector<Element> coeffs;
    mpq_class fact = 1;
    for (int n = 0; n <= 64; ++n) {
        if (n > 0) fact *= n;
        coeffs.push_back(Element::rational(mpq_class(1) / fact));
    }
    PowerSeries expf = PowerSeries::literal(ctx, coeffs);
    auto audit = a_analyticity_audit(expf, 20, 64, 3.0);
    // Legendre: ord_p(n!) = sum floor(n/p^k); the audit estimate per place is
    // max over n of ord_p(n!) log p / (n-1).
    for (const auto& e : audit.per_place) {
        std::uint64_t p = e.place.prime();
        double expect = 0;
        for (std::uint64_t n = 2; n <= 64; ++n) {
            unsigned long ord = 0;
            for (std::uint64_t pk = p; pk <= n; pk *= p) ord += n / pk;
            expect = std::max(expect, ord * std::log(static_cast<double>(p)) /
                                          static_cast<double>(n - 1));
        }
        CHECK(e.log_inv_radius == doctest::Approx(expect).epsilon(1e-12));
    }
    CHECK(audit.refuted_at_bound);
    CHECK(audit.divergence_sum > 3.0);
}
