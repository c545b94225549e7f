#include "hadq/places.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "hadq/errors.hpp"
#include "hadq/numutil.hpp"

namespace hadq {

Place Place::finite_prime(std::uint64_t p) {
    if (!is_prime_u64(p)) throw InvalidArgument(std::to_string(p) + " is not prime");
    Place out(Kind::FinitePrime);
    out.p_ = p;
    return out;
}

Place Place::monic_irreducible(FqPoly pi) {
    if (!pi.is_monic() || !pi.irreducible())
        throw InvalidArgument("place polynomial must be monic irreducible");
    Place out(Kind::MonicIrreducible);
    out.q_ = pi.field().q();
    out.pi_ = std::move(pi);
    return out;
}

Place Place::degree_place(unsigned q) {
    GF::get(q);
    Place out(Kind::DegreePlace);
    out.q_ = q;
    return out;
}

std::uint64_t Place::residue_card() const {
    switch (kind_) {
        case Kind::FinitePrime:
            return p_;
        case Kind::MonicIrreducible: {
            std::uint64_t c = 1;
            for (int i = 0; i < pi_.deg(); ++i) c *= q_;
            return c;
        }
        case Kind::DegreePlace:
            return q_;
        default:
            throw InvalidArgument("archimedean place has no residue field");
    }
}

double Place::residue_log_card() const { return std::log(static_cast<double>(residue_card())); }

unsigned Place::residue_degree() const {
    switch (kind_) {
        case Kind::MonicIrreducible:
            return static_cast<unsigned>(pi_.deg());
        case Kind::DegreePlace:
            return 1;
        case Kind::FinitePrime:
            return 1;
        default:
            throw InvalidArgument("archimedean place has no residue field");
    }
}

bool Place::operator==(const Place& o) const {
    if (kind_ != o.kind_) return false;
    switch (kind_) {
        case Kind::Archimedean:
            return true;
        case Kind::FinitePrime:
            return p_ == o.p_;
        case Kind::MonicIrreducible:
            return q_ == o.q_ && pi_ == o.pi_;
        case Kind::DegreePlace:
            return q_ == o.q_;
    }
    return false;
}

bool Place::operator<(const Place& o) const {
    auto rank = [](Kind k) {
        switch (k) {
            case Kind::Archimedean:
                return 0;
            case Kind::DegreePlace:
                return 1;
            case Kind::FinitePrime:
                return 2;
            case Kind::MonicIrreducible:
                return 3;
        }
        return 4;
    };
    bool a_arch = kind_ == Kind::Archimedean, b_arch = o.kind_ == Kind::Archimedean;
    if (a_arch != b_arch) return a_arch;
    if (a_arch) return false;
    if (residue_card() != o.residue_card()) return residue_card() < o.residue_card();
    if (rank(kind_) != rank(o.kind_)) return rank(kind_) < rank(o.kind_);
    if (kind_ == Kind::FinitePrime) return p_ < o.p_;
    if (kind_ == Kind::MonicIrreducible) return FqPoly::cmp(pi_, o.pi_) < 0;
    return false;
}

std::string Place::str() const {
    switch (kind_) {
        case Kind::Archimedean:
            return "inf";
        case Kind::FinitePrime:
            return "p:" + std::to_string(p_);
        case Kind::MonicIrreducible:
            return "poly:q=" + std::to_string(q_) + ":" + pi_.str();
        case Kind::DegreePlace:
            return "deg";
    }
    return "?";
}

Place Place::parse(const FieldCtx& ctx, const std::string& text) {
    if (text == "inf") {
        if (ctx.kind != FieldKind::Rationals)
            throw ParseError("archimedean place only exists over Q");
        return archimedean();
    }
    if (text == "deg") {
        if (ctx.kind != FieldKind::FunctionField)
            throw ParseError("degree place only exists over a function field");
        return degree_place(ctx.q);
    }
    if (text.rfind("p:", 0) == 0) {
        if (ctx.kind != FieldKind::Rationals)
            throw ParseError("prime places only exist over Q");
        return finite_prime(std::stoull(text.substr(2)));
    }
    if (text.rfind("poly:q=", 0) == 0) {
        auto colon = text.find(':', 7);
        if (colon == std::string::npos) throw ParseError("bad place syntax: " + text);
        unsigned q = static_cast<unsigned>(std::stoul(text.substr(7, colon - 7)));
        if (ctx.kind != FieldKind::FunctionField || q != ctx.q)
            throw ParseError("place field mismatch: " + text);
        return monic_irreducible(FqPoly::parse(GF::get(q), text.substr(colon + 1)));
    }
    throw ParseError("bad place syntax: " + text);
}

std::vector<Place> enumerate_places(const FieldCtx& ctx, std::uint64_t bound) {
    if (bound < 2) throw InvalidArgument("place bound must be at least 2");
    std::vector<Place> out;
    if (ctx.kind == FieldKind::Rationals) {
        out.push_back(Place::archimedean());
        for (std::uint64_t p : primes_upto(bound)) {
            if (p > bound) break;
            out.push_back(Place::finite_prime(p));
        }
        return out;
    }
    const GF& f = GF::get(ctx.q);
    if (ctx.q <= bound) out.push_back(Place::degree_place(ctx.q));
    std::uint64_t card = ctx.q;
    for (unsigned d = 1; card <= bound; ++d) {
        for (const auto& pi : monic_irreducibles(f, d)) out.push_back(Place::monic_irreducible(pi));
        if (card > bound / ctx.q) break;  // next power would overflow the bound
        card *= ctx.q;
    }
    // Already ordered: degree place first, then by (degree, lex).
    return out;
}

namespace {

long long ord_rat(const mpq_class& a, std::uint64_t p) {
    long long v = static_cast<long long>(valuation(a.get_num(), p));
    long long w = static_cast<long long>(valuation(a.get_den(), p));
    return v - w;
}

long long ord_poly_pair(const RatFn& a, const FqPoly& pi) {
    auto count = [&](FqPoly f) {
        long long n = 0;
        while (!f.is_zero()) {
            auto [q, r] = f.divrem(pi);
            if (!r.is_zero()) break;
            ++n;
            f = std::move(q);
        }
        return n;
    };
    return count(a.num()) - count(a.den());
}

}  // namespace

long long ord_at(const Place& s, const Element& a) {
    if (a.is_zero()) throw ZeroElement();
    switch (s.kind()) {
        case Place::Kind::FinitePrime:
            return ord_rat(a.rat(), s.prime());
        case Place::Kind::MonicIrreducible:
            return ord_poly_pair(a.ff(), s.pi());
        case Place::Kind::DegreePlace:
            return a.ff().den().deg() - a.ff().num().deg();
        default:
            throw InvalidArgument("no valuation at the archimedean place");
    }
}

double log_abs_at(const Place& v, const Element& a) {
    if (a.is_zero()) return -std::numeric_limits<double>::infinity();
    if (v.is_archimedean()) return log_abs(a.rat());
    return -static_cast<double>(ord_at(v, a)) * v.residue_log_card();
}

void LogCombination::add(std::uint64_t symbol, const mpz_class& c) {
    if (sgn(c) == 0) return;
    auto it = coeff.find(symbol);
    if (it == coeff.end()) {
        coeff.emplace(symbol, c);
        return;
    }
    it->second += c;
    if (sgn(it->second) == 0) coeff.erase(it);
}

bool LogCombination::is_zero() const { return coeff.empty(); }

double LogCombination::value() const {
    double s = 0;
    for (const auto& [sym, c] : coeff) s += c.get_d() * std::log(static_cast<double>(sym));
    return s;
}

std::string LogCombination::str() const {
    if (coeff.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [sym, c] : coeff) {
        if (!first) os << " + ";
        os << c.get_str() << "*log(" << sym << ")";
        first = false;
    }
    return os.str();
}

LogCombination product_formula_defect(const FieldCtx& ctx, const Element& a) {
    if (a.is_zero()) throw ZeroElement();
    LogCombination defect;
    if (ctx.kind == FieldKind::Rationals) {
        // Finite places: enumerate the primes dividing numerator or
        // denominator, then recompute each valuation from the element itself.
        const mpq_class& r = a.rat();
        std::vector<std::uint64_t> support;
        for (const auto& [p, e] : factor_mpz(mpz_class(r.get_num()))) {
            (void)e;
            support.push_back(p.get_ui());
        }
        for (const auto& [p, e] : factor_mpz(mpz_class(r.get_den()))) {
            (void)e;
            support.push_back(p.get_ui());
        }
        std::sort(support.begin(), support.end());
        support.erase(std::unique(support.begin(), support.end()), support.end());
        for (std::uint64_t p : support)
            defect.add(p, mpz_class(static_cast<long>(-ord_rat(r, p))));  // log|a|_p = -ord_p(a) log p
        // Archimedean: log|a| = sum_p ord_p(a) log p, via the factorization.
        for (const auto& [p, e] : factor_mpz(mpz_class(r.get_num())))
            defect.add(p.get_ui(), mpz_class(e));
        for (const auto& [p, e] : factor_mpz(mpz_class(r.get_den())))
            defect.add(p.get_ui(), mpz_class(-static_cast<long>(e)));
        return defect;
    }
    // Function field: every log|k(s)| is deg(s) * log q, one symbol overall.
    const RatFn& r = a.ff();
    mpz_class total = 0;
    auto add_factors = [&](const FqPoly& f, int sign) {
        FqPoly rest = f;
        for (unsigned d = 1; rest.deg() > 0; ++d) {
            require_internal(d <= static_cast<unsigned>(f.deg()), "factorization runaway");
            for (const auto& pi : monic_irreducibles(rest.field(), d)) {
                while (pi.divides(rest)) {
                    // ord contribution at pi is deg(pi), with the sign of the
                    // numerator/denominator side; log|a|_pi = -ord * deg * log q.
                    total += sign * (-1) * pi.deg();
                    rest = rest.divrem(pi).first;
                }
                if (rest.deg() == 0) break;
            }
        }
    };
    add_factors(r.num(), 1);
    add_factors(r.den(), -1);
    // Degree place: ord = deg den - deg num.
    total += static_cast<long>(-(r.den().deg() - r.num().deg()));
    defect.add(ctx.q, total);
    return defect;
}

}  // namespace hadq
