#pragma once

// Scalar fields used by the exact linear-algebra side.
//
// A field type F exposes `using value_type`, the ring operations as member
// functions, and `from_int`.  PrimeField is the workhorse (random sampling
// over F_p makes generic-position arguments almost-sure events);
// RationalField is exact over Q and only meant for small hand-checked cases.

#include <boost/multiprecision/cpp_int.hpp>

#include <concepts>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

#include "rigikit/error.hpp"

namespace rigikit {

inline constexpr std::uint64_t kDefaultPrime = 2147483647ULL;  // 2^31 - 1

/// Deterministic primality test for 64-bit inputs below 2^32.
constexpr bool is_prime_u32(std::uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t f = 3; f * f <= n; f += 2)
        if (n % f == 0) return false;
    return true;
}

template <class F>
concept Field = requires(const F& f, typename F::value_type a, std::int64_t k) {
    { f.zero() } -> std::same_as<typename F::value_type>;
    { f.one() } -> std::same_as<typename F::value_type>;
    { f.add(a, a) } -> std::same_as<typename F::value_type>;
    { f.sub(a, a) } -> std::same_as<typename F::value_type>;
    { f.neg(a) } -> std::same_as<typename F::value_type>;
    { f.mul(a, a) } -> std::same_as<typename F::value_type>;
    { f.inv(a) } -> std::same_as<typename F::value_type>;
    { f.is_zero(a) } -> std::same_as<bool>;
    { f.from_int(k) } -> std::same_as<typename F::value_type>;
};

/// F_p with a runtime prime p < 2^32, so products fit in 64 bits.
class PrimeField {
public:
    using value_type = std::uint64_t;

    explicit PrimeField(std::uint64_t p = kDefaultPrime) : p_(p) {
        if (p >= (1ULL << 32) || !is_prime_u32(p))
            throw InputError("modulus " + std::to_string(p) + " is not a prime below 2^32");
    }

    std::uint64_t modulus() const { return p_; }

    value_type zero() const { return 0; }
    value_type one() const { return 1; }
    value_type add(value_type a, value_type b) const {
        value_type s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    value_type sub(value_type a, value_type b) const { return a >= b ? a - b : a + p_ - b; }
    value_type neg(value_type a) const { return a == 0 ? 0 : p_ - a; }
    value_type mul(value_type a, value_type b) const { return (a * b) % p_; }
    value_type pow(value_type a, std::uint64_t e) const {
        value_type r = 1;
        a %= p_;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    value_type inv(value_type a) const {
        if (a == 0) throw std::domain_error("inverse of zero in F_p");
        return pow(a, p_ - 2);
    }
    bool is_zero(value_type a) const { return a == 0; }
    value_type from_int(std::int64_t k) const {
        auto m = static_cast<std::int64_t>(p_);
        std::int64_t r = k % m;
        return static_cast<value_type>(r < 0 ? r + m : r);
    }
    /// Symmetric representative in (-p/2, p/2], handy for printing.
    std::int64_t to_signed(value_type a) const {
        return a > p_ / 2 ? static_cast<std::int64_t>(a) - static_cast<std::int64_t>(p_)
                          : static_cast<std::int64_t>(a);
    }

    template <class Rng>
    value_type random(Rng& rng) const {
        return std::uniform_int_distribution<value_type>(0, p_ - 1)(rng);
    }

    bool operator==(const PrimeField&) const = default;

private:
    std::uint64_t p_;
};

/// Exact rationals (arbitrary precision).  Small cases only.
class RationalField {
public:
    using value_type = boost::multiprecision::cpp_rational;

    value_type zero() const { return 0; }
    value_type one() const { return 1; }
    value_type add(const value_type& a, const value_type& b) const { return a + b; }
    value_type sub(const value_type& a, const value_type& b) const { return a - b; }
    value_type neg(const value_type& a) const { return -a; }
    value_type mul(const value_type& a, const value_type& b) const { return a * b; }
    value_type inv(const value_type& a) const {
        if (a == 0) throw std::domain_error("inverse of zero in Q");
        return 1 / a;
    }
    bool is_zero(const value_type& a) const { return a == 0; }
    value_type from_int(std::int64_t k) const { return value_type(k); }

    /// Small random integers; enough for generic behaviour on tiny inputs.
    template <class Rng>
    value_type random(Rng& rng) const {
        return value_type(std::uniform_int_distribution<int>(-50, 50)(rng));
    }
};

static_assert(Field<PrimeField>);
static_assert(Field<RationalField>);

// splitmix64 step.  Seed derivation contract for the whole library:
//   derive_seed(master, i) = splitmix64(master + (i + 1) * 0x9E3779B97F4A7C15)
// so case i of a fuzz run and trial t of a case are reproducible from one
// 64-bit master seed.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(master + (index + 1) * 0x9E3779B97F4A7C15ULL);
}

using Rng = std::mt19937_64;

}  // namespace rigikit
