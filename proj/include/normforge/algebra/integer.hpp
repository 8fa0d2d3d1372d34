#ifndef NORMFORGE_ALGEBRA_INTEGER_HPP
#define NORMFORGE_ALGEBRA_INTEGER_HPP

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace normforge {

using Integer = mpz_class;
using Rational = mpq_class;
using u64 = std::uint64_t;

// Valuation with +infinity for zero.
class Ord {
public:
    Ord() = default;
    Ord(long v) : v_(v), inf_(false) {}  // NOLINT
    static Ord infinity() { Ord o; o.inf_ = true; return o; }
    bool is_infinite() const { return inf_; }
    long value() const;
    bool operator==(const Ord& o) const { return inf_ == o.inf_ && (inf_ || v_ == o.v_); }
    std::strong_ordering operator<=>(const Ord& o) const
    {
        if (inf_ && o.inf_) return std::strong_ordering::equal;
        if (inf_) return std::strong_ordering::greater;
        if (o.inf_) return std::strong_ordering::less;
        return v_ <=> o.v_;
    }
    std::string str() const { return inf_ ? "inf" : std::to_string(v_); }

private:
    long v_ = 0;
    bool inf_ = false;
};

long vp(const Integer& n, const Integer& p);          // n != 0
Ord vp(const Rational& r, const Integer& p);           // +inf for 0
Integer ipow(const Integer& b, unsigned long e);
Integer powmod(const Integer& b, const Integer& e, const Integer& m);
u64 powmod_u64(u64 b, u64 e, u64 m);
u64 mulmod_u64(u64 a, u64 b, u64 m);
u64 invmod_u64(u64 a, u64 m);   // gcd(a,m)=1
Integer invmod(const Integer& a, const Integer& m);
bool is_prime(const Integer& n);
bool is_prime_u64(u64 n);
void require_prime(const Integer& p);

// Prime factorization of |n| (n != 0), ascending primes.
std::vector<std::pair<Integer, unsigned>> factor_integer(const Integer& n);
std::vector<Integer> prime_support(const Rational& r);

// Multiplicative order of a mod m (gcd(a,m)=1, m>1).
u64 multiplicative_order(u64 a, u64 m);
Integer multiplicative_order(const Integer& a, const Integer& m);
u64 euler_phi(u64 n);
std::vector<u64> divisors(u64 n);

Rational parse_rational(const std::string& s);
Integer parse_integer(const std::string& s);
std::string to_string(const Integer& n);
std::string to_string(const Rational& r);
u64 to_u64(const Integer& n);
long mod_floor(long a, long m);

}  // namespace normforge

#endif
