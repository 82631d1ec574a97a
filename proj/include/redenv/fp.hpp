#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace redenv {

using u64 = std::uint64_t;
using i64 = std::int64_t;

// Arithmetic in F_p for a word-sized odd prime p. Values are kept reduced
// to [0, p) at all times; intermediate products fit in 64 bits because the
// moduli in play are tiny (p < 2^20 is more than enough for this library).
struct PrimeField {
    u64 p;

    explicit PrimeField(u64 p_) : p(p_) {
        if (p_ < 3 || !is_prime(p_))
            throw std::invalid_argument("PrimeField: modulus must be an odd prime >= 3, got " +
                                        std::to_string(p_));
        if (p_ >= (u64(1) << 20))
            throw std::invalid_argument("PrimeField: modulus too large for dense kernels");
    }

    static bool is_prime(u64 n) {
        if (n < 2) return false;
        for (u64 d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    }

    u64 reduce(i64 x) const {
        i64 r = x % i64(p);
        return r < 0 ? u64(r + i64(p)) : u64(r);
    }
    u64 add(u64 a, u64 b) const { u64 s = a + b; return s >= p ? s - p : s; }
    u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + p - b; }
    u64 neg(u64 a) const { return a == 0 ? 0 : p - a; }
    u64 mul(u64 a, u64 b) const { return (a * b) % p; }

    u64 pow(u64 a, u64 e) const {
        u64 r = 1 % p;
        a %= p;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }

    u64 inv(u64 a) const {
        if (a % p == 0) throw std::domain_error("PrimeField::inv of zero");
        return pow(a, p - 2);
    }
};

}  // namespace redenv
