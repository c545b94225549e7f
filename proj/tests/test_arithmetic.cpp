#include <doctest.h>

#include <cmath>
#include <random>

#include "hadq/numutil.hpp"
#include "hadq/places.hpp"

using namespace hadq;

namespace {

// Brute-force irreducibility over F_q: no factorization into two smaller
// monic polynomials. Independent of FqPoly::irreducible.
bool irreducible_oracle(const FqPoly& f) {
    const GF& k = f.field();
    int d = f.deg();
    if (d <= 0) return false;
    for (int da = 1; 2 * da <= d; ++da) {
        unsigned long long count = 1;
        for (int i = 0; i < da; ++i) count *= k.q();
        for (unsigned long long idx = 0; idx < count; ++idx) {
            FqPoly a = FqPoly::monic_by_index(k, da, idx);
            if (a.divides(f)) return false;
        }
    }
    return true;
}

Element random_rational(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-1000000, 1000000);
    std::uniform_int_distribution<long> den(1, 1000000);
    long n = num(rng);
    if (n == 0) n = 7;
    return Element::rational(n, den(rng));
}

Element random_ff(const FieldCtx& ctx, std::mt19937_64& rng) {
    const GF& f = GF::get(ctx.q);
    std::uniform_int_distribution<int> deg(0, 6);
    std::uniform_int_distribution<GF::Elem> coeff(0, f.q() - 1);
    auto poly = [&](bool nonzero) {
        while (true) {
            int d = deg(rng);
            std::vector<GF::Elem> c(d + 1);
            for (auto& e : c) e = coeff(rng);
            FqPoly p(f, std::move(c));
            if (!nonzero || !p.is_zero()) return p;
        }
    };
    return Element::function_field(RatFn(poly(true), poly(true)));
}

}  // namespace

TEST_CASE("small finite field arithmetic") {
    for (unsigned q : {2u, 3u, 4u, 5u, 8u, 9u, 25u}) {
        const GF& f = GF::get(q);
        CHECK(f.q() == q);
        for (GF::Elem a = 0; a < q; ++a) {
            CHECK(f.add(a, f.neg(a)) == 0);
            if (a != 0) CHECK(f.mul(a, f.inv(a)) == 1);
            for (GF::Elem b = 0; b < q; ++b) {
                CHECK(f.mul(a, b) == f.mul(b, a));
                for (GF::Elem c = 0; c < std::min(q, 8u); ++c)
                    CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
            }
        }
    }
    CHECK_THROWS_AS(GF::get(6), InvalidArgument);
}

TEST_CASE("polynomial division and gcd over F_q") {
    const GF& f = GF::get(5);
    FqPoly a = FqPoly::parse(f, "x^4+2x^2+1");
    FqPoly b = FqPoly::parse(f, "x^2+1");
    auto [q, r] = a.divrem(b);
    CHECK(r.is_zero());
    CHECK((q * b) == a);
    CHECK(FqPoly::gcd(a, b) == b.monic());
    auto [g, u, v] = FqPoly::xgcd(FqPoly::parse(f, "x^2+1"), FqPoly::parse(f, "x+1"));
    CHECK((u * FqPoly::parse(f, "x^2+1") + v * FqPoly::parse(f, "x+1")) == g);
}

TEST_CASE("place enumeration over Q") {
    FieldCtx ctx = FieldCtx::rationals();
    auto places = enumerate_places(ctx, 10);
    REQUIRE(places.size() == 5);
    CHECK(places[0].str() == "inf");
    CHECK(places[1].str() == "p:2");
    CHECK(places[2].str() == "p:3");
    CHECK(places[3].str() == "p:5");
    CHECK(places[4].str() == "p:7");

    auto two = enumerate_places(ctx, 2);
    REQUIRE(two.size() == 2);
    CHECK(two[0].str() == "inf");
    CHECK(two[1].str() == "p:2");

    CHECK_THROWS_AS(enumerate_places(ctx, 1), InvalidArgument);
}

TEST_CASE("place enumeration over F_2(x) against a brute-force oracle") {
    FieldCtx ctx = FieldCtx::function_field(2);
    auto places = enumerate_places(ctx, 4);
    REQUIRE(places.size() == 4);
    CHECK(places[0].str() == "deg");
    CHECK(places[1].str() == "poly:q=2:x");
    CHECK(places[2].str() == "poly:q=2:x+1");
    CHECK(places[3].str() == "poly:q=2:x^2+x+1");
    for (const auto& p : places)
        if (p.kind() == Place::Kind::MonicIrreducible) CHECK(irreducible_oracle(p.pi()));

    // Determinism and duplicate-freeness at a larger bound.
    auto big = enumerate_places(ctx, 64);
    auto again = enumerate_places(ctx, 64);
    REQUIRE(big.size() == again.size());
    for (std::size_t i = 0; i < big.size(); ++i) {
        CHECK(big[i] == again[i]);
        for (std::size_t j = i + 1; j < big.size(); ++j) CHECK(!(big[i] == big[j]));
        if (big[i].kind() == Place::Kind::MonicIrreducible) {
            CHECK(irreducible_oracle(big[i].pi()));
            CHECK(big[i].pi().is_monic());
        }
    }
}

TEST_CASE("normalized absolute values") {
    FieldCtx ctx = FieldCtx::rationals();
    Place two = Place::finite_prime(2);
    CHECK(log_abs_at(two, Element::rational(12)) == doctest::Approx(-2 * std::log(2.0)));
    CHECK(log_abs_at(Place::archimedean(), Element::rational(-3, 2)) ==
          doctest::Approx(std::log(1.5)));

    FieldCtx ff = FieldCtx::function_field(3);
    Place x = Place::monic_irreducible(FqPoly::x(GF::get(3)));
    Element ex = Element::function_field(RatFn::from_poly(FqPoly::x(GF::get(3))));
    CHECK(log_abs_at(x, ex) == doctest::Approx(-std::log(3.0)));
    CHECK(log_abs_at(Place::degree_place(3), ex) == doctest::Approx(std::log(3.0)));

    CHECK(log_abs_at(two, Element::zero(ctx)) == -std::numeric_limits<double>::infinity());
}

TEST_CASE("log_abs is multiplicative") {
    std::mt19937_64 rng(12345);
    FieldCtx ctx = FieldCtx::rationals();
    std::vector<Place> places{Place::archimedean(), Place::finite_prime(2),
                              Place::finite_prime(3), Place::finite_prime(13)};
    for (int i = 0; i < 200; ++i) {
        Element a = random_rational(rng), b = random_rational(rng);
        for (const auto& v : places)
            CHECK(log_abs_at(v, a * b) ==
                  doctest::Approx(log_abs_at(v, a) + log_abs_at(v, b)).epsilon(1e-9));
    }
    FieldCtx ff = FieldCtx::function_field(5);
    std::vector<Place> ffplaces{Place::degree_place(5),
                                Place::monic_irreducible(FqPoly::x(GF::get(5))),
                                Place::monic_irreducible(FqPoly::parse(GF::get(5), "x^2+2"))};
    for (int i = 0; i < 100; ++i) {
        Element a = random_ff(ff, rng), b = random_ff(ff, rng);
        if (a.is_zero() || b.is_zero()) continue;
        for (const auto& v : ffplaces)
            CHECK(log_abs_at(v, a * b) ==
                  doctest::Approx(log_abs_at(v, a) + log_abs_at(v, b)).epsilon(1e-9));
    }
}

TEST_CASE("product formula defect is the zero combination") {
    FieldCtx ctx = FieldCtx::rationals();
    CHECK(product_formula_defect(ctx, Element::rational(6, 5)).is_zero());
    CHECK(product_formula_defect(ctx, Element::rational(1)).is_zero());
    CHECK_THROWS_AS(product_formula_defect(ctx, Element::zero(ctx)), ZeroElement);

    // x^2/(x+1) over F_5(x): ord_x = 2, ord_{x+1} = -1, ord_deg = -1;
    // the defect is (-2 + 1 + 1) log 5 = 0.
    FieldCtx ff = FieldCtx::function_field(5);
    const GF& f5 = GF::get(5);
    Element a = Element::function_field(
        RatFn(FqPoly::parse(f5, "x^2"), FqPoly::parse(f5, "x+1")));
    CHECK(ord_at(Place::monic_irreducible(FqPoly::x(f5)), a) == 2);
    CHECK(ord_at(Place::monic_irreducible(FqPoly::parse(f5, "x+1")), a) == -1);
    CHECK(ord_at(Place::degree_place(5), a) == -1);
    CHECK(product_formula_defect(ff, a).is_zero());
}

TEST_CASE("product formula holds for random elements of both fields") {
    std::mt19937_64 rng(987654321);
    FieldCtx ctx = FieldCtx::rationals();
    for (int i = 0; i < 1000; ++i)
        CHECK(product_formula_defect(ctx, random_rational(rng)).is_zero());
    FieldCtx ff = FieldCtx::function_field(5);
    for (int i = 0; i < 1000; ++i) {
        Element a = random_ff(ff, rng);
        if (a.is_zero()) continue;
        CHECK(product_formula_defect(ff, a).is_zero());
    }
}

TEST_CASE("place strings round trip") {
    FieldCtx ctx = FieldCtx::rationals();
    for (const char* s : {"inf", "p:2", "p:97"})
        CHECK(Place::parse(ctx, s).str() == s);
    FieldCtx ff = FieldCtx::function_field(3);
    for (const char* s : {"deg", "poly:q=3:x", "poly:q=3:x^2+1"})
        CHECK(Place::parse(ff, s).str() == s);
    CHECK_THROWS_AS(Place::parse(ctx, "deg"), ParseError);
    CHECK_THROWS_AS(Place::parse(ctx, "p:4"), InvalidArgument);
}

TEST_CASE("element parsing and canonical forms") {
    FieldCtx ctx = FieldCtx::rationals();
    CHECK(Element::parse(ctx, "22/7").str() == "22/7");
    CHECK(Element::parse(ctx, "4/6").str() == "2/3");
    CHECK(Element::parse(ctx, "-5").str() == "-5");

    FieldCtx ff = FieldCtx::function_field(5);
    Element e = Element::parse(ff, "(x^2+1)/(2x+2)");
    // Denominator made monic: (x^2+1)/(2(x+1)) = 3(x^2+1)/(x+1).
    CHECK(e.ff().den().is_monic());
    Element product = e * Element::parse(ff, "(x+1)");
    CHECK(product == Element::parse(ff, "3x^2+3"));
}
