#include "hyperlat/smith.hpp"

#include <algorithm>
#include <stdexcept>

namespace hl {

namespace {

inline i128 abs128(i128 v) { return v < 0 ? -v : v; }

template <class T>
T tabs(const T& v) {
    return v < 0 ? T(-v) : v;
}

template <class T>
T sub_mul(const T& a, const T& q, const T& b);

template <>
i128 sub_mul(const i128& a, const i128& q, const i128& b) {
    return checked_add(a, -checked_mul(q, b));
}

template <>
mpz_class sub_mul(const mpz_class& a, const mpz_class& q, const mpz_class& b) {
    return a - q * b;
}

template <class T>
T floor_div(const T& a, const T& b);

template <>
i128 floor_div(const i128& a, const i128& b) {
    return a / b;
}

template <>
mpz_class floor_div(const mpz_class& a, const mpz_class& b) {
    mpz_class q;
    mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

// Diagonalizes m in place; returns the diagonal in ascending divisibility
// order with zeros last.
template <class T>
std::vector<T> snf_diagonal(Matrix<T>& m) {
    const std::size_t rows = m.size();
    if (rows == 0) return {};
    const std::size_t cols = m[0].size();
    const std::size_t n = std::min(rows, cols);
    std::vector<T> diag;
    for (std::size_t t = 0; t < n; ++t) {
        for (;;) {
            std::size_t pr = rows, pc = cols;
            for (std::size_t i = t; i < rows; ++i)
                for (std::size_t j = t; j < cols; ++j)
                    if (m[i][j] != 0 && (pr == rows || tabs(m[i][j]) < tabs(m[pr][pc]))) {
                        pr = i;
                        pc = j;
                    }
            if (pr == rows) {
                for (std::size_t k = t; k < n; ++k) diag.push_back(T(0));
                return diag;
            }
            std::swap(m[t], m[pr]);
            for (auto& row : m) std::swap(row[t], row[pc]);
            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (m[i][t] == 0) continue;
                T q = floor_div(m[i][t], m[t][t]);
                for (std::size_t j = t; j < cols; ++j) m[i][j] = sub_mul(m[i][j], q, m[t][j]);
                if (m[i][t] != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (m[t][j] == 0) continue;
                T q = floor_div(m[t][j], m[t][t]);
                for (std::size_t i = t; i < rows; ++i) m[i][j] = sub_mul(m[i][j], q, m[i][t]);
                if (m[t][j] != 0) clean = false;
            }
            if (!clean) continue;
            std::size_t bad = rows;
            for (std::size_t i = t + 1; i < rows && bad == rows; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (m[i][j] % m[t][t] != 0) {
                        bad = i;
                        break;
                    }
            if (bad == rows) break;
            for (std::size_t j = t; j < cols; ++j) m[t][j] = m[t][j] + m[bad][j];
        }
        diag.push_back(tabs(m[t][t]));
    }
    return diag;
}

void require_square(std::size_t rows, const auto& m) {
    for (auto& r : m)
        if (r.size() != rows) throw std::invalid_argument("smith_divisors: matrix is not square");
}

template <class T>
std::vector<T> to_pari_order(std::vector<T> asc) {
    // ascending with zeros last -> zeros first, then descending
    std::vector<T> out;
    for (auto& v : asc)
        if (v == 0) out.push_back(v);
    for (auto it = asc.rbegin(); it != asc.rend(); ++it)
        if (*it != 0) out.push_back(*it);
    return out;
}

}  // namespace

bool smith_divisors_i128(Matrix<i128> m, std::vector<i128>& out) {
    try {
        out = to_pari_order(snf_diagonal(m));
        return true;
    } catch (const Overflow&) {
        return false;
    }
}

std::vector<mpz_class> smith_divisors(const Matrix<mpz_class>& m) {
    require_square(m.size(), m);
    Matrix<i128> small(m.size(), std::vector<i128>(m.size()));
    bool fits = true;
    for (std::size_t i = 0; i < m.size() && fits; ++i)
        for (std::size_t j = 0; j < m.size(); ++j) {
            if (mpz_sizeinbase(m[i][j].get_mpz_t(), 2) > 60) {
                fits = false;
                break;
            }
            small[i][j] = to_i128(m[i][j]);
        }
    std::vector<mpz_class> out;
    if (fits) {
        std::vector<i128> d;
        if (smith_divisors_i128(small, d)) {
            for (auto v : d) out.push_back(to_mpz(v));
            return out;
        }
    }
    Matrix<mpz_class> work = m;
    return to_pari_order(snf_diagonal(work));
}

std::vector<mpz_class> smith_divisors(const Matrix<i64>& m) {
    Matrix<mpz_class> z(m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        for (auto v : m[i]) z[i].emplace_back(static_cast<long>(v));
    return smith_divisors(z);
}

ExponentInvariants exponent_of(const std::vector<mpz_class>& divisors) {
    ExponentInvariants e{0, 1, 1};
    for (auto& d : divisors)
        if (d != 0) {
            e.a = d;
            break;
        }
    if (e.a == 0) throw std::invalid_argument("exponent_of: zero matrix");
    for (auto& pe : factor(e.a)) {
        if (pe.first == 2) continue;
        e.a1 *= static_cast<unsigned long>(pe.first);
        e.a2 = static_cast<unsigned long>(pe.first);
    }
    return e;
}

ExponentInvariants exponent_a(const Matrix<mpz_class>& m) { return exponent_of(smith_divisors(m)); }

}  // namespace hl
