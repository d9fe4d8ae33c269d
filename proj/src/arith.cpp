#include "goppa/arith.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "goppa/errors.hpp"

namespace goppa {

namespace {

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
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

// One Pollard rho round with Brent cycling; n must be odd composite, not a prime power escape hatch.
std::uint64_t pollard_rho(std::uint64_t n) {
    if (n % 2 == 0) return 2;
    for (std::uint64_t c = 1;; ++c) {
        auto f = [&](std::uint64_t x) { return (mulmod_u64(x, x, n) + c) % n; };
        std::uint64_t x = 2, y = 2, d = 1;
        while (d == 1) {
            x = f(x);
            y = f(f(y));
            std::uint64_t diff = x > y ? x - y : y - x;
            d = std::gcd(diff, n);
        }
        if (d != n) return d;
    }
}

void factor_into(std::uint64_t n, std::vector<std::uint64_t>& out) {
    if (n == 1) return;
    if (is_prime_u64(n)) {
        out.push_back(n);
        return;
    }
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull}) {
        if (n % p == 0) {
            out.push_back(p);
            factor_into(n / p, out);
            return;
        }
    }
    std::uint64_t d = pollard_rho(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

} // namespace

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // This witness set decides primality for every n < 2^64.
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

FactoredInt FactoredInt::of(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("FactoredInt: n must be positive");
    FactoredInt fi;
    fi.value = n;
    std::vector<std::uint64_t> primes;
    factor_into(n, primes);
    std::sort(primes.begin(), primes.end());
    for (std::uint64_t p : primes) {
        if (!fi.factors.empty() && fi.factors.back().first == p)
            ++fi.factors.back().second;
        else
            fi.factors.emplace_back(p, 1);
    }
    return fi;
}

int moebius(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("moebius: n must be positive");
    if (n == 1) return 1;
    FactoredInt fi = FactoredInt::of(n);
    for (auto& [p, e] : fi.factors)
        if (e > 1) return 0;
    return (fi.factors.size() % 2 == 0) ? 1 : -1;
}

std::uint64_t euler_phi(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("euler_phi: n must be positive");
    std::uint64_t phi = 1;
    for (auto& [p, e] : FactoredInt::of(n).factors) {
        std::uint64_t pe = 1;
        for (int i = 0; i < e - 1; ++i) pe *= p;
        phi *= pe * (p - 1);
    }
    return phi;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("divisors: n must be positive");
    std::vector<std::uint64_t> ds{1};
    for (auto& [p, e] : FactoredInt::of(n).factors) {
        std::size_t count = ds.size();
        std::uint64_t pe = 1;
        for (int i = 0; i < e; ++i) {
            pe *= p;
            for (std::size_t j = 0; j < count; ++j) ds.push_back(ds[j] * pe);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

Big big_pow(const Big& q, std::uint64_t e) {
    Big r = 1, b = q;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

Big irreducible_count(const Big& q, std::uint64_t r) {
    if (q < 2 || r == 0) throw std::invalid_argument("irreducible_count: need q >= 2, r >= 1");
    Big sum = 0;
    for (std::uint64_t d : divisors(r)) sum += moebius(d) * big_pow(q, r / d);
    if (sum % r != 0)
        throw ConsistencyError("irreducible_count: divisor sum not divisible by r");
    return sum / r;
}

Big weighted_moebius_inversion(const std::function<Big(std::uint64_t)>& chi,
                               const std::function<Big(std::uint64_t)>& F,
                               std::uint64_t n) {
    Big g = 0;
    for (std::uint64_t d : divisors(n)) g += chi(d) * moebius(d) * F(n / d);
    return g;
}

} // namespace goppa
