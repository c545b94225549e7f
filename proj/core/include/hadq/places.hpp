#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hadq/field.hpp"

namespace hadq {

// A normalized absolute value of the global field: the archimedean place of
// Q, a finite prime, a monic irreducible of F_q[x], or the degree valuation
// of F_q(x). Non-archimedean places carry log |k(s)| with |k(s)| the residue
// field cardinality.
class Place {
public:
    enum class Kind { Archimedean, FinitePrime, MonicIrreducible, DegreePlace };

    Place() : kind_(Kind::Archimedean) {}
    static Place archimedean() { return Place(Kind::Archimedean); }
    static Place finite_prime(std::uint64_t p);
    static Place monic_irreducible(FqPoly pi);
    static Place degree_place(unsigned q);

    Kind kind() const { return kind_; }
    bool is_archimedean() const { return kind_ == Kind::Archimedean; }
    std::uint64_t prime() const { return p_; }
    const FqPoly& pi() const { return pi_; }
    unsigned base_q() const { return q_; }

    // |k(s)| and log |k(s)|; undefined for the archimedean place.
    std::uint64_t residue_card() const;
    double residue_log_card() const;
    unsigned residue_degree() const;  // degree of k(s) over the constant field

    bool operator==(const Place& o) const;
    bool operator<(const Place& o) const;  // archimedean, then (card, kind, lex)

    // "inf", "p:2", "poly:q=3:x^2+1", "deg".
    std::string str() const;
    static Place parse(const FieldCtx& ctx, const std::string& text);

private:
    explicit Place(Kind k) : kind_(k) {}
    Kind kind_;
    std::uint64_t p_ = 0;
    FqPoly pi_;
    unsigned q_ = 0;
};

// All non-archimedean places with residue cardinality <= bound, in increasing
// cardinality then lexicographic order; over Q the archimedean place comes
// first. bound >= 2 required.
std::vector<Place> enumerate_places(const FieldCtx& ctx, std::uint64_t bound);

// Exact valuation ord_s(a); a must be nonzero and s non-archimedean.
long long ord_at(const Place& s, const Element& a);

// log |a|_v under the normalization -ord_v(a) log |k(v)| (plain log |a| at the
// archimedean place); -infinity for a = 0.
double log_abs_at(const Place& v, const Element& a);

// An integer-weighted formal sum of the symbols {log p : p prime} over Q, or
// {log q} over F_q(x). Exactly zero is decidable, which is the point.
struct LogCombination {
    std::map<std::uint64_t, mpz_class> coeff;

    void add(std::uint64_t symbol, const mpz_class& c);
    bool is_zero() const;
    double value() const;  // numeric evaluation, for reports
    std::string str() const;
};

// The sum over all places of log|a|_v as a formal combination, computed from
// valuations on the finite side and a complete factorization on the
// archimedean side. The product formula says it is the zero combination.
LogCombination product_formula_defect(const FieldCtx& ctx, const Element& a);

}  // namespace hadq
