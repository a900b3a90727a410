#pragma once

#include <vector>

#include "hyperlat/arith.hpp"

namespace hl {

template <class T>
using Matrix = std::vector<std::vector<T>>;

// Elementary divisors, each dividing the previous one; zero divisors of the
// kernel come first.
std::vector<mpz_class> smith_divisors(const Matrix<mpz_class>& m);
std::vector<mpz_class> smith_divisors(const Matrix<i64>& m);

// Fast path for the enumerators. Returns false if an intermediate value
// leaves the 128-bit range; `out` is then unspecified.
bool smith_divisors_i128(Matrix<i128> m, std::vector<i128>& out);

struct ExponentInvariants {
    mpz_class a;   // largest nonzero elementary divisor
    mpz_class a1;  // product of distinct odd primes of a
    mpz_class a2;  // largest odd prime of a, 1 if none
};

ExponentInvariants exponent_of(const std::vector<mpz_class>& divisors);
ExponentInvariants exponent_a(const Matrix<mpz_class>& m);

}  // namespace hl
