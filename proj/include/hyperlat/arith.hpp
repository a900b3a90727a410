#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace hl {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;

struct Overflow {};

i128 checked_mul(i128 a, i128 b);
i128 checked_add(i128 a, i128 b);

i64 gcd(i64 a, i64 b);
i128 gcd(i128 a, i128 b);
i64 lcm(i64 a, i64 b);

// floor square root, n >= 0
u64 isqrt(u64 n);
i128 isqrt(i128 n);
bool is_square(i128 n);

// (prime, exponent) pairs in ascending prime order; n >= 1
using Factorization = std::vector<std::pair<u64, int>>;
Factorization factor(u64 n);
Factorization factor(const mpz_class& n);

bool is_squarefree(i128 n);
bool is_squarefree(const mpz_class& n);
u64 squarefree_part(const mpz_class& n);

// ascending positive divisors
std::vector<i64> divisors(i64 n);

// Kronecker symbol (a/n) for n > 0
int kronecker(const mpz_class& a, const mpz_class& n);
int kronecker(i64 a, i64 n);

std::vector<u64> odd_primes(u64 n);

std::string to_string(i128 v);
mpz_class to_mpz(i128 v);
i128 to_i128(const mpz_class& v);

}  // namespace hl
