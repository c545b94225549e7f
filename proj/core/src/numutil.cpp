#include "hadq/numutil.hpp"

#include <cmath>
#include <mutex>

#include "hadq/errors.hpp"

namespace hadq {

const std::vector<std::uint64_t>& primes_upto(std::uint64_t bound) {
    static std::mutex mu;
    static std::vector<std::uint64_t> primes;
    static std::uint64_t sieved = 1;
    std::lock_guard<std::mutex> lock(mu);
    if (bound > sieved) {
        std::uint64_t target = std::max<std::uint64_t>(bound, 2 * sieved);
        std::vector<bool> comp(target + 1, false);
        primes.clear();
        for (std::uint64_t i = 2; i <= target; ++i) {
            if (comp[i]) continue;
            primes.push_back(i);
            for (std::uint64_t j = i * i; j <= target; j += i) comp[j] = true;
        }
        sieved = target;
    }
    // Return the cached list; callers stop at their own bound.
    return primes;
}

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

std::uint64_t invmod_u64(std::uint64_t a, std::uint64_t m) {
    // Extended Euclid on signed 128-bit accumulators.
    __int128 t = 0, newt = 1;
    __int128 r = m, newr = a % m;
    while (newr != 0) {
        __int128 q = r / newr;
        t -= q * newt;
        std::swap(t, newt);
        r -= q * newr;
        std::swap(r, newr);
    }
    require_internal(r == 1, "invmod of non-unit");
    if (t < 0) t += m;
    return static_cast<std::uint64_t>(t);
}

double log_abs(const mpz_class& z) {
    require_internal(sgn(z) != 0, "log of zero");
    signed long exp2;
    double mant = mpz_get_d_2exp(&exp2, z.get_mpz_t());
    return std::log(std::fabs(mant)) + static_cast<double>(exp2) * std::log(2.0);
}

double log_abs(const mpq_class& q) {
    return log_abs(mpq_class(q).get_num()) - log_abs(mpq_class(q).get_den());
}

std::vector<std::pair<mpz_class, unsigned>> factor_mpz(mpz_class n) {
    std::vector<std::pair<mpz_class, unsigned>> out;
    if (sgn(n) < 0) n = -n;
    require_internal(sgn(n) != 0, "factor of zero");
    if (n == 1) return out;
    bool below_square = false;
    for (std::uint64_t p : primes_upto(1000000)) {
        if (p > 1000000) break;
        if (mpz_cmp_ui(n.get_mpz_t(), 1) == 0) break;
        if (mpz_fits_ulong_p(n.get_mpz_t()) && p * p > mpz_get_ui(n.get_mpz_t())) {
            below_square = true;
            break;
        }
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            unsigned e = 0;
            while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
                mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
                ++e;
            }
            out.emplace_back(mpz_class(p), e);
        }
    }
    if (n != 1) {
        if (!below_square && mpz_probab_prime_p(n.get_mpz_t(), 32) == 0)
            throw FactorizationTooHard("composite cofactor " + n.get_str() +
                                       " beyond trial-division range");
        out.emplace_back(n, 1);
    }
    return out;
}

unsigned long valuation(const mpz_class& z, unsigned long p) {
    require_internal(sgn(z) != 0, "valuation of zero");
    mpz_class r;
    return mpz_remove(r.get_mpz_t(), z.get_mpz_t(), mpz_class(p).get_mpz_t());
}

}  // namespace hadq
