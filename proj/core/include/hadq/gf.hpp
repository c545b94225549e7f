#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hadq/errors.hpp"

namespace hadq {

// A small finite field F_q with q = p^k. Elements are indices in [0, q):
// the base-p digits of an index are the coordinates in the polynomial basis
// F_p[z]/(m(z)), where m is the lexicographically least monic irreducible of
// degree k over F_p (for k = 1 an index is simply the residue). Multiplication
// and inversion go through discrete exp/log tables, so instances are built
// once and interned.
class GF {
public:
    using Elem = std::uint32_t;

    // Interned accessor; q must be a prime power in [2, 2^20].
    static const GF& get(unsigned q);

    unsigned q() const { return q_; }
    unsigned p() const { return p_; }
    unsigned degree() const { return k_; }

    Elem zero() const { return 0; }
    Elem one() const { return 1; }

    Elem add(Elem a, Elem b) const;
    Elem sub(Elem a, Elem b) const;
    Elem neg(Elem a) const;
    Elem mul(Elem a, Elem b) const {
        if (a == 0 || b == 0) return 0;
        return exp_[(log_[a] + log_[b]) % (q_ - 1)];
    }
    Elem inv(Elem a) const {
        if (a == 0) throw ZeroElement();
        return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
    }
    Elem pow(Elem a, unsigned long long e) const;

    // Image of an integer under Z -> F_p -> F_q.
    Elem from_int(long long v) const;

    // Coordinates of the modulus polynomial (degree k, monic), k > 1 only.
    const std::vector<Elem>& modulus() const { return modulus_; }

    std::string elem_str(Elem a) const { return std::to_string(a); }

private:
    explicit GF(unsigned q);

    unsigned q_ = 0, p_ = 0, k_ = 0;
    std::vector<Elem> modulus_;        // degree-k monic irreducible over F_p
    std::vector<Elem> exp_, log_;      // discrete exp/log w.r.t. a generator
    Elem raw_mul(Elem a, Elem b) const;  // table-free, used during construction
};

// Dense univariate polynomial over a fixed GF; coefficients ascending,
// trailing zeros trimmed. The zero polynomial has empty storage and deg -1.
class FqPoly {
public:
    FqPoly() = default;
    explicit FqPoly(const GF& f) : f_(&f) {}
    FqPoly(const GF& f, std::vector<GF::Elem> coeffs);

    static FqPoly zero(const GF& f) { return FqPoly(f); }
    static FqPoly constant(const GF& f, GF::Elem c);
    static FqPoly x(const GF& f);
    // The monic polynomial whose coefficient tuple (constant first, leading 1
    // implied) is the base-q expansion of `index`; used to enumerate monics.
    static FqPoly monic_by_index(const GF& f, unsigned degree, unsigned long long index);

    const GF& field() const { return *f_; }
    int deg() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
    GF::Elem coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
    GF::Elem lc() const { return c_.empty() ? 0 : c_.back(); }
    bool is_monic() const { return lc() == 1; }
    const std::vector<GF::Elem>& coeffs() const { return c_; }

    FqPoly operator+(const FqPoly& o) const;
    FqPoly operator-(const FqPoly& o) const;
    FqPoly operator*(const FqPoly& o) const;
    FqPoly scaled(GF::Elem c) const;
    FqPoly monic() const;
    GF::Elem eval(GF::Elem x) const;

    // Quotient/remainder; divisor must be nonzero.
    std::pair<FqPoly, FqPoly> divrem(const FqPoly& d) const;
    FqPoly operator%(const FqPoly& d) const { return divrem(d).second; }
    bool divides(const FqPoly& other) const;

    static FqPoly gcd(FqPoly a, FqPoly b);  // monic (or zero)
    // Extended gcd: returns (g, u, v) with u*a + v*b = g, g monic.
    static std::tuple<FqPoly, FqPoly, FqPoly> xgcd(const FqPoly& a, const FqPoly& b);

    bool irreducible() const;

    bool operator==(const FqPoly& o) const { return c_ == o.c_; }
    // Order by (degree, coefficient tuple constant-first); used by places.
    static int cmp(const FqPoly& a, const FqPoly& b);

    std::string str(const std::string& var = "x") const;
    static FqPoly parse(const GF& f, const std::string& text, const std::string& var = "x");

private:
    const GF* f_ = nullptr;
    std::vector<GF::Elem> c_;
    void trim();
};

// All monic irreducibles of the given degree, in (degree, lex) order. Cached.
const std::vector<FqPoly>& monic_irreducibles(const GF& f, unsigned degree);

// A rational function over F_q in x, kept in lowest terms with monic
// denominator. The zero element is 0/1.
class RatFn {
public:
    RatFn() = default;
    explicit RatFn(const GF& f) : num_(FqPoly::zero(f)), den_(FqPoly::constant(f, 1)) {}
    RatFn(FqPoly num, FqPoly den);

    static RatFn from_poly(FqPoly p);

    const GF& field() const { return num_.field(); }
    const FqPoly& num() const { return num_; }
    const FqPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }

    RatFn operator+(const RatFn& o) const;
    RatFn operator-(const RatFn& o) const;
    RatFn operator*(const RatFn& o) const;
    RatFn operator/(const RatFn& o) const;
    RatFn operator-() const;
    RatFn inverse() const;
    bool operator==(const RatFn& o) const { return num_ == o.num_ && den_ == o.den_; }

    std::string str() const;
    static RatFn parse(const GF& f, const std::string& text);

private:
    FqPoly num_, den_;
};

}  // namespace hadq
