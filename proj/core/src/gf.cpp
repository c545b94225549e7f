#include "hadq/gf.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>

namespace hadq {

namespace {

struct PrimePower {
    unsigned p, k;
};

PrimePower split_prime_power(unsigned q) {
    if (q < 2) throw InvalidArgument("field size must be at least 2");
    unsigned p = 0;
    for (unsigned d = 2; d * d <= q; ++d) {
        if (q % d == 0) {
            p = d;
            break;
        }
    }
    if (p == 0) return {q, 1};
    unsigned k = 0;
    unsigned m = q;
    while (m % p == 0) {
        m /= p;
        ++k;
    }
    if (m != 1) throw InvalidArgument("field size " + std::to_string(q) + " is not a prime power");
    return {p, k};
}

std::vector<unsigned long long> prime_factors_u64(unsigned long long n) {
    std::vector<unsigned long long> out;
    for (unsigned long long d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

}  // namespace

const GF& GF::get(unsigned q) {
    static std::mutex mu;
    static std::map<unsigned, std::unique_ptr<GF>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(q);
    if (it == cache.end()) it = cache.emplace(q, std::unique_ptr<GF>(new GF(q))).first;
    return *it->second;
}

GF::Elem GF::add(Elem a, Elem b) const {
    if (k_ == 1) return (a + b) % p_;
    Elem out = 0, mult = 1;
    for (unsigned i = 0; i < k_; ++i) {
        out += ((a % p_) + (b % p_)) % p_ * mult;
        a /= p_;
        b /= p_;
        mult *= p_;
    }
    return out;
}

GF::Elem GF::sub(Elem a, Elem b) const { return add(a, neg(b)); }

GF::Elem GF::neg(Elem a) const {
    if (k_ == 1) return a == 0 ? 0 : p_ - a;
    Elem out = 0, mult = 1;
    for (unsigned i = 0; i < k_; ++i) {
        Elem d = a % p_;
        out += (d == 0 ? 0 : p_ - d) * mult;
        a /= p_;
        mult *= p_;
    }
    return out;
}

GF::Elem GF::pow(Elem a, unsigned long long e) const {
    if (a == 0) return e == 0 ? 1 : 0;
    unsigned long long r = log_[a] % (q_ - 1);
    return exp_[static_cast<std::size_t>(r * (e % (q_ - 1)) % (q_ - 1))];
}

GF::Elem GF::from_int(long long v) const {
    long long r = v % static_cast<long long>(p_);
    if (r < 0) r += p_;
    return static_cast<Elem>(r);
}

GF::Elem GF::raw_mul(Elem a, Elem b) const {
    if (k_ == 1) return static_cast<Elem>((static_cast<unsigned long long>(a) * b) % p_);
    // Schoolbook product of digit vectors, reduced mod the modulus polynomial.
    std::vector<unsigned> da(k_), db(k_);
    for (unsigned i = 0; i < k_; ++i, a /= p_) da[i] = a % p_;
    for (unsigned i = 0; i < k_; ++i, b /= p_) db[i] = b % p_;
    std::vector<unsigned> prod(2 * k_ - 1, 0);
    for (unsigned i = 0; i < k_; ++i)
        for (unsigned j = 0; j < k_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
    for (int d = static_cast<int>(prod.size()) - 1; d >= static_cast<int>(k_); --d) {
        unsigned c = prod[d];
        if (c == 0) continue;
        prod[d] = 0;
        for (unsigned i = 0; i < k_; ++i) {
            unsigned sub = (c * modulus_[i]) % p_;
            prod[d - k_ + i] = (prod[d - k_ + i] + p_ - sub) % p_;
        }
    }
    Elem out = 0, mult = 1;
    for (unsigned i = 0; i < k_; ++i) {
        out += prod[i] * mult;
        mult *= p_;
    }
    return out;
}

GF::GF(unsigned q) {
    if (q > (1u << 20)) throw InvalidArgument("field size too large");
    auto pp = split_prime_power(q);
    q_ = q;
    p_ = pp.p;
    k_ = pp.k;

    if (k_ > 1) {
        // Lexicographically least monic irreducible of degree k over F_p,
        // found by trial division against all lower-degree monics.
        bool found = false;
        unsigned long long count = 1;
        for (unsigned i = 0; i < k_; ++i) count *= p_;
        for (unsigned long long idx = 0; idx < count && !found; ++idx) {
            std::vector<Elem> cand(k_ + 1, 0);
            unsigned long long t = idx;
            for (unsigned i = 0; i < k_; ++i, t /= p_) cand[i] = static_cast<Elem>(t % p_);
            cand[k_] = 1;
            if (cand[0] == 0) continue;  // divisible by z
            bool irred = true;
            for (unsigned d = 1; irred && 2 * d <= k_; ++d) {
                unsigned long long dcount = 1;
                for (unsigned i = 0; i < d; ++i) dcount *= p_;
                for (unsigned long long j = 0; j < dcount && irred; ++j) {
                    std::vector<Elem> div(d + 1, 0);
                    unsigned long long s = j;
                    for (unsigned i = 0; i < d; ++i, s /= p_) div[i] = static_cast<Elem>(s % p_);
                    div[d] = 1;
                    // Remainder of cand by div over F_p.
                    std::vector<Elem> rem = cand;
                    for (int dd = static_cast<int>(rem.size()) - 1;
                         dd >= static_cast<int>(d); --dd) {
                        unsigned c = rem[dd];
                        if (c == 0) continue;
                        rem[dd] = 0;
                        for (unsigned i = 0; i < d; ++i)
                            rem[dd - d + i] = (rem[dd - d + i] + p_ - (c * div[i]) % p_) % p_;
                    }
                    if (std::all_of(rem.begin(), rem.end(), [](Elem e) { return e == 0; }))
                        irred = false;
                }
            }
            if (irred) {
                modulus_.assign(cand.begin(), cand.begin() + k_);
                found = true;
            }
        }
        require_internal(found, "no irreducible modulus found");
    }

    // Generator search, then exp/log tables.
    auto factors = prime_factors_u64(q_ - 1);
    auto raw_pow = [&](Elem a, unsigned long long e) {
        Elem r = 1;
        while (e) {
            if (e & 1) r = raw_mul(r, a);
            a = raw_mul(a, a);
            e >>= 1;
        }
        return r;
    };
    Elem gen = 0;
    for (Elem g = 1; g < q_; ++g) {
        bool ok = true;
        for (auto f : factors)
            if (raw_pow(g, (q_ - 1) / f) == 1) {
                ok = false;
                break;
            }
        if (ok) {
            gen = g;
            break;
        }
    }
    require_internal(gen != 0, "no multiplicative generator found");
    exp_.assign(q_ - 1, 0);
    log_.assign(q_, 0);
    Elem cur = 1;
    for (unsigned i = 0; i + 1 < q_; ++i) {
        exp_[i] = cur;
        log_[cur] = i;
        cur = raw_mul(cur, gen);
    }
}

// ---------------------------------------------------------------------------
// FqPoly

void FqPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

FqPoly::FqPoly(const GF& f, std::vector<GF::Elem> coeffs) : f_(&f), c_(std::move(coeffs)) {
    for (auto c : c_) require_internal(c < f.q(), "coefficient out of field range");
    trim();
}

FqPoly FqPoly::constant(const GF& f, GF::Elem c) {
    FqPoly out(f);
    if (c != 0) out.c_ = {c};
    return out;
}

FqPoly FqPoly::x(const GF& f) { return FqPoly(f, {0, 1}); }

FqPoly FqPoly::monic_by_index(const GF& f, unsigned degree, unsigned long long index) {
    std::vector<GF::Elem> c(degree + 1, 0);
    for (unsigned i = 0; i < degree; ++i, index /= f.q())
        c[i] = static_cast<GF::Elem>(index % f.q());
    c[degree] = 1;
    return FqPoly(f, std::move(c));
}

FqPoly FqPoly::operator+(const FqPoly& o) const {
    std::vector<GF::Elem> c(std::max(c_.size(), o.c_.size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = f_->add(coeff(i), o.coeff(i));
    return FqPoly(*f_, std::move(c));
}

FqPoly FqPoly::operator-(const FqPoly& o) const {
    std::vector<GF::Elem> c(std::max(c_.size(), o.c_.size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = f_->sub(coeff(i), o.coeff(i));
    return FqPoly(*f_, std::move(c));
}

FqPoly FqPoly::operator*(const FqPoly& o) const {
    if (is_zero() || o.is_zero()) return FqPoly(*f_);
    std::vector<GF::Elem> c(c_.size() + o.c_.size() - 1, 0);
    for (std::size_t i = 0; i < c_.size(); ++i)
        for (std::size_t j = 0; j < o.c_.size(); ++j)
            c[i + j] = f_->add(c[i + j], f_->mul(c_[i], o.c_[j]));
    return FqPoly(*f_, std::move(c));
}

FqPoly FqPoly::scaled(GF::Elem s) const {
    std::vector<GF::Elem> c(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) c[i] = f_->mul(c_[i], s);
    return FqPoly(*f_, std::move(c));
}

FqPoly FqPoly::monic() const {
    if (is_zero() || is_monic()) return *this;
    return scaled(f_->inv(lc()));
}

GF::Elem FqPoly::eval(GF::Elem x) const {
    GF::Elem acc = 0;
    for (std::size_t i = c_.size(); i-- > 0;) acc = f_->add(f_->mul(acc, x), c_[i]);
    return acc;
}

std::pair<FqPoly, FqPoly> FqPoly::divrem(const FqPoly& d) const {
    if (d.is_zero()) throw ZeroElement();
    if (deg() < d.deg()) return {FqPoly(*f_), *this};
    std::vector<GF::Elem> rem = c_;
    std::vector<GF::Elem> quo(deg() - d.deg() + 1, 0);
    GF::Elem ilc = f_->inv(d.lc());
    for (int k = deg() - d.deg(); k >= 0; --k) {
        GF::Elem c = f_->mul(rem[k + d.deg()], ilc);
        quo[k] = c;
        if (c == 0) continue;
        for (int i = 0; i <= d.deg(); ++i)
            rem[k + i] = f_->sub(rem[k + i], f_->mul(c, d.coeff(i)));
    }
    return {FqPoly(*f_, std::move(quo)), FqPoly(*f_, std::move(rem))};
}

bool FqPoly::divides(const FqPoly& other) const { return other.divrem(*this).second.is_zero(); }

FqPoly FqPoly::gcd(FqPoly a, FqPoly b) {
    while (!b.is_zero()) {
        FqPoly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

std::tuple<FqPoly, FqPoly, FqPoly> FqPoly::xgcd(const FqPoly& a, const FqPoly& b) {
    const GF& f = a.field();
    FqPoly r0 = a, r1 = b;
    FqPoly s0 = FqPoly::constant(f, 1), s1 = FqPoly::zero(f);
    FqPoly t0 = FqPoly::zero(f), t1 = FqPoly::constant(f, 1);
    while (!r1.is_zero()) {
        auto [q, r] = r0.divrem(r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        FqPoly s2 = s0 - q * s1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        FqPoly t2 = t0 - q * t1;
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (!r0.is_zero() && !r0.is_monic()) {
        GF::Elem s = f.inv(r0.lc());
        r0 = r0.scaled(s);
        s0 = s0.scaled(s);
        t0 = t0.scaled(s);
    }
    return {r0, s0, t0};
}

bool FqPoly::irreducible() const {
    int d = deg();
    if (d <= 0) return false;
    if (d == 1) return true;
    for (unsigned e = 1; 2 * e <= static_cast<unsigned>(d); ++e)
        for (const auto& pi : monic_irreducibles(*f_, e))
            if (pi.divides(*this)) return false;
    return true;
}

int FqPoly::cmp(const FqPoly& a, const FqPoly& b) {
    if (a.deg() != b.deg()) return a.deg() < b.deg() ? -1 : 1;
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] != b.c_[i]) return a.c_[i] < b.c_[i] ? -1 : 1;
    }
    return 0;
}

std::string FqPoly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t i = c_.size(); i-- > 0;) {
        if (c_[i] == 0) continue;
        if (!out.empty()) out += "+";
        if (i == 0 || c_[i] != 1) out += std::to_string(c_[i]);
        if (i > 0) {
            if (c_[i] != 1) out += "*";
            out += var;
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

FqPoly FqPoly::parse(const GF& f, const std::string& text, const std::string& var) {
    // Sums of terms c, c*x^k, x^k, x; whitespace ignored; leading '-' negates.
    std::string s;
    for (char ch : text)
        if (!isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) throw ParseError("empty polynomial");
    std::vector<GF::Elem> coeffs;
    auto add_term = [&](GF::Elem c, unsigned k, bool negate) {
        if (coeffs.size() <= k) coeffs.resize(k + 1, 0);
        coeffs[k] = negate ? f.sub(coeffs[k], c) : f.add(coeffs[k], c);
    };
    std::size_t i = 0;
    bool neg = false;
    if (s[0] == '+' || s[0] == '-') {
        neg = s[0] == '-';
        i = 1;
    }
    while (i < s.size()) {
        unsigned long long c = 1;
        bool have_coeff = false;
        std::size_t start = i;
        while (i < s.size() && isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i > start) {
            c = std::stoull(s.substr(start, i - start));
            have_coeff = true;
        }
        unsigned k = 0;
        if (i < s.size() && s[i] == '*') ++i;
        if (s.compare(i, var.size(), var) == 0) {
            i += var.size();
            k = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                start = i;
                while (i < s.size() && isdigit(static_cast<unsigned char>(s[i]))) ++i;
                if (i == start) throw ParseError("missing exponent in " + text);
                k = static_cast<unsigned>(std::stoul(s.substr(start, i - start)));
            }
        } else if (!have_coeff) {
            throw ParseError("unexpected character in polynomial " + text);
        }
        // Integer tokens denote element indices in [0, q); over a prime field
        // that is the usual residue.
        add_term(static_cast<GF::Elem>(c % f.q()), k, neg);
        if (i < s.size()) {
            if (s[i] == '+')
                neg = false;
            else if (s[i] == '-')
                neg = true;
            else
                throw ParseError("unexpected character in polynomial " + text);
            ++i;
        }
    }
    return FqPoly(f, std::move(coeffs));
}

const std::vector<FqPoly>& monic_irreducibles(const GF& f, unsigned degree) {
    static std::mutex mu;
    static std::map<std::pair<unsigned, unsigned>, std::vector<FqPoly>> cache;
    std::lock_guard<std::mutex> lock(mu);
    // Fill bottom-up so each degree can trial-divide against the lower ones.
    for (unsigned d = 1; d <= degree; ++d) {
        auto key = std::make_pair(f.q(), d);
        if (cache.count(key)) continue;
        std::vector<FqPoly> out;
        unsigned long long count = 1;
        for (unsigned i = 0; i < d; ++i) count *= f.q();
        for (unsigned long long idx = 0; idx < count; ++idx) {
            FqPoly cand = FqPoly::monic_by_index(f, d, idx);
            bool irred = true;
            for (unsigned e = 1; irred && 2 * e <= d; ++e)
                for (const auto& pi : cache.at(std::make_pair(f.q(), e)))
                    if (pi.divides(cand)) {
                        irred = false;
                        break;
                    }
            if (irred) out.push_back(std::move(cand));
        }
        cache.emplace(key, std::move(out));
    }
    return cache.at(std::make_pair(f.q(), degree));
}

// ---------------------------------------------------------------------------
// RatFn

RatFn::RatFn(FqPoly num, FqPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw ZeroElement();
    if (num_.is_zero()) {
        den_ = FqPoly::constant(num_.field(), 1);
        return;
    }
    FqPoly g = FqPoly::gcd(num_, den_);
    if (g.deg() > 0) {
        num_ = num_.divrem(g).first;
        den_ = den_.divrem(g).first;
    }
    if (!den_.is_monic()) {
        GF::Elem s = den_.field().inv(den_.lc());
        num_ = num_.scaled(s);
        den_ = den_.scaled(s);
    }
}

RatFn RatFn::from_poly(FqPoly p) {
    const GF& f = p.field();
    return RatFn(std::move(p), FqPoly::constant(f, 1));
}

RatFn RatFn::operator+(const RatFn& o) const {
    return RatFn(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}
RatFn RatFn::operator-(const RatFn& o) const {
    return RatFn(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}
RatFn RatFn::operator*(const RatFn& o) const { return RatFn(num_ * o.num_, den_ * o.den_); }
RatFn RatFn::operator/(const RatFn& o) const {
    if (o.is_zero()) throw ZeroElement();
    return RatFn(num_ * o.den_, den_ * o.num_);
}
RatFn RatFn::operator-() const {
    RatFn out = *this;
    out.num_ = out.num_.scaled(out.num_.field().neg(1));
    return out;
}
RatFn RatFn::inverse() const {
    if (is_zero()) throw ZeroElement();
    return RatFn(den_, num_);
}

std::string RatFn::str() const {
    if (den_.is_one()) return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
}

RatFn RatFn::parse(const GF& f, const std::string& text) {
    // Split on a top-level '/'; each side is a polynomial, optionally in
    // parentheses.
    int depth = 0;
    std::size_t slash = std::string::npos;
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '(') ++depth;
        if (text[i] == ')') --depth;
        if (text[i] == '/' && depth == 0) {
            slash = i;
            break;
        }
    }
    auto strip = [](std::string s) {
        auto drop = [&] {
            while (!s.empty() && isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
            while (!s.empty() && isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
        };
        drop();
        while (s.size() >= 2 && s.front() == '(' && s.back() == ')') {
            int d = 0;
            bool wraps = true;
            for (std::size_t i = 0; i < s.size(); ++i) {
                if (s[i] == '(') ++d;
                if (s[i] == ')') --d;
                if (d == 0 && i + 1 < s.size()) {
                    wraps = false;
                    break;
                }
            }
            if (!wraps) break;
            s = s.substr(1, s.size() - 2);
            drop();
        }
        return s;
    };
    if (slash == std::string::npos) return RatFn::from_poly(FqPoly::parse(f, strip(text)));
    return RatFn(FqPoly::parse(f, strip(text.substr(0, slash))),
                 FqPoly::parse(f, strip(text.substr(slash + 1))));
}

}  // namespace hadq
