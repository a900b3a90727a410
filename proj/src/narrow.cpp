#include "hyperlat/narrow.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <thread>

#include "hyperlat/smith.hpp"
#include "narrow_internal.hpp"

namespace hl {

namespace {

constexpr const char* kNames[] = {"AI1", "AI0", "AII1", "AII0", "AIII", "BI", "BII1", "BII2", "BIII"};

std::vector<i128> record_divisors(const NarrowPartRecord& r) {
    Matrix<i128> m(r.k, std::vector<i128>(r.k));
    for (int i = 0; i < r.k; ++i)
        for (int j = 0; j < r.k; ++j) m[i][j] = r.at(i, j);
    std::vector<i128> d;
    if (smith_divisors_i128(m, d)) return d;
    Matrix<mpz_class> z(r.k, std::vector<mpz_class>(r.k));
    for (int i = 0; i < r.k; ++i)
        for (int j = 0; j < r.k; ++j) z[i][j] = to_mpz(r.at(i, j));
    d.clear();
    for (auto& v : smith_divisors(z)) d.push_back(to_i128(v));
    return d;
}

Factorization factor128(i128 n) {
    if (n < 0) n = -n;
    if (n > static_cast<i128>(UINT64_MAX)) return factor(to_mpz(n));
    return factor(static_cast<u64>(n));
}

// factorization of a product, merged prime by prime
Factorization factor_product(const std::vector<i128>& xs) {
    Factorization out;
    for (i128 x : xs)
        for (auto& pe : factor128(x)) {
            auto it = std::lower_bound(out.begin(), out.end(), pe,
                                       [](auto& a, auto& b) { return a.first < b.first; });
            if (it != out.end() && it->first == pe.first)
                it->second += pe.second;
            else
                out.insert(it, pe);
        }
    return out;
}

// position of the exponent a(B) among the PARI-ordered divisors
int exponent_index(int k) { return k - 3; }

void fill_exponents(NarrowPartRecord& r, const std::vector<i128>& db, EnumerationSummary* s) {
    i128 v = db[exponent_index(r.k)];
    if (v <= 0) throw std::logic_error("narrow part with unexpected kernel");
    r.a = v;
    r.a1 = 1;
    r.a2 = 1;
    i128 r1 = 1, top = 0;
    for (auto& pe : factor128(v)) {
        r1 *= pe.first;
        top = pe.first;
        if (pe.first != 2) {
            r.a1 *= pe.first;
            r.a2 = pe.first;
        }
    }
    if (r1 % 2 == 0) r1 /= 2;
    if (!s) return;
    ++s->n;
    s->a = std::max(s->a, v);
    s->a1 = std::max(s->a1, r1);
    if (top > 0) s->a2 = std::max(s->a2, top);
}

}  // namespace

std::string to_string(NarrowType t) { return kNames[static_cast<int>(t)]; }

std::optional<NarrowType> parse_narrow_type(const std::string& s) {
    std::string u;
    for (char c : s) u.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    for (auto t : kAllNarrowTypes)
        if (u == kNames[static_cast<int>(t)]) return t;
    return std::nullopt;
}

int matrix_size(NarrowType t) {
    switch (t) {
        case NarrowType::AI1:
        case NarrowType::AI0:
        case NarrowType::BI: return 3;
        case NarrowType::AIII: return 5;
        default: return 4;
    }
}

void EnumerationSummary::merge(const EnumerationSummary& o) {
    n += o.n;
    a = std::max(a, o.a);
    a1 = std::max(a1, o.a1);
    a2 = std::max(a2, o.a2);
}

namespace detail {

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::atomic<bool> failed{false};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w)
        pool.emplace_back([&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= n || failed.load()) return;
                try {
                    fn(i);
                } catch (...) {
                    if (!failed.exchange(true)) err = std::current_exception();
                    return;
                }
            }
        });
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
}

}  // namespace detail

EnumerationSummary enumerate_narrow(NarrowType t, const EnumOptions& opt, const RecordSink& sink) {
    const auto units = detail::outer_units(t);
    EnumerationSummary total{t};
    constexpr std::size_t kBatch = 64;
    for (std::size_t start = 0; start < units.size(); start += kBatch) {
        std::size_t len = std::min(kBatch, units.size() - start);
        std::vector<EnumerationSummary> part(len, EnumerationSummary{t});
        std::vector<std::vector<NarrowPartRecord>> buf(sink ? len : 0);
        detail::parallel_for(len, opt.threads, [&](std::size_t i) {
            detail::run_unit(t, units[start + i], [&](NarrowPartRecord& r) {
                fill_exponents(r, record_divisors(r), &part[i]);
                if (sink) buf[i].push_back(r);
            });
        });
        for (std::size_t i = 0; i < len; ++i) {
            total.merge(part[i]);
            if (sink)
                for (auto& r : buf[i]) sink(r);
        }
    }
    return total;
}

TableHOracle::TableHOracle(const std::vector<InvariantTriple>& rows, i64 limit) : limit_(limit) {
    for (auto& r : rows) {
        if (r.h != 0 && r.h != 2) continue;
        auto [it, fresh] = known_.emplace(std::make_pair(r.d, r.eta), r.h);
        if (!fresh && it->second != r.h) throw std::invalid_argument("conflicting h for d=" + std::to_string(r.d));
    }
}

std::optional<int> TableHOracle::h(i64 d, i64 eta) const {
    if (d < 1 || !is_squarefree(static_cast<i128>(d)) || eta < 0) return std::nullopt;
    if (eta >= (i64{1} << odd_primes(static_cast<u64>(d)).size())) return std::nullopt;
    auto it = known_.find({d, eta});
    if (it != known_.end()) return it->second;
    (void)limit_;
    return kHAbove2;
}

UnknownH::UnknownH(i64 d_, i64 eta_)
    : std::runtime_error("unknown h for d=" + std::to_string(d_) + " eta=" + std::to_string(eta_)), d(d_), eta(eta_) {}

namespace {

struct MainState {
    const HOracle& oracle;
    std::map<std::pair<i64, i64>, int>& out;

    void offer(i64 d, i64 et) {
        auto h = oracle.h(d, et);
        if (!h) throw UnknownH(d, et);
        if (*h > 2 || *h == 1) return;
        out.emplace(std::make_pair(d, et), *h);
    }
};

i128 gcd_pos(i128 a, i128 b) { return gcd(a, b); }

bool two_exponent_odd(const Factorization& f) { return !f.empty() && f.front().first == 2 && f.front().second % 2 == 1; }

i64 odd_exponent_part(const Factorization& f) {
    i64 d = 1;
    for (auto& pe : f)
        if (pe.second % 2 == 1) d *= static_cast<i64>(pe.first);
    return d;
}

std::vector<i64> d1_primes(i64 d) {
    std::vector<i64> out;
    for (auto p : odd_primes(static_cast<u64>(d))) out.push_back(static_cast<i64>(p));
    return out;
}

int kro(const mpz_class& a, i64 p) { return kronecker(a, mpz_class(static_cast<long>(p))); }

// some odd prime of detb divides the diagonal product with even exponent
bool gamma_flag(const Factorization& fdetb, i128 P) {
    for (auto& pe : fdetb)
        if (pe.first != 2 && P % static_cast<i128>(pe.first) == 0 && pe.second % 2 == 0) return true;
    return false;
}

void main_cartan3(const NarrowPartRecord& r, MainState& st) {
    const i128 b11 = r.at(0, 0), b22 = r.at(1, 1), b33 = r.at(2, 2);
    const i128 P = (-b11) * (-b22) * (-b33);
    auto db = record_divisors(r);
    auto fdetb = factor_product(db);
    if (!is_squarefree(b11) || !is_squarefree(b22) || !is_squarefree(b33)) return;
    if (gcd_pos(P, 2) > 1 && gcd_pos(P, 8) < 8 && two_exponent_odd(fdetb)) return;
    if (r.alpha12 < 4 && gcd_pos(-b11, -b22) > 2) return;
    if (r.type == NarrowType::AI1 && r.alpha23 < 4 && gcd_pos(-b22, -b33) > 2) return;
    if (gamma_flag(fdetb, P)) return;
    if (r.alpha12 < 4) {
        i64 d = odd_exponent_part(fdetb);
        if (r.alpha12 == 1 && d % 3 != 2) return;
        i64 et = 0;
        if (d > 2) {
            auto ps = d1_primes(d);
            for (std::size_t k = 0; k < ps.size(); ++k) {
                i64 p = ps[k];
                int v = 1;
                if (r.alpha12 == 1)
                    v = kro(mpz_class(static_cast<long>(3 * (d / p))), p);
                else if (r.alpha12 == 2)
                    v = kro(mpz_class(static_cast<long>(d / p)), p);
                else if (p != 3)
                    v = kro(mpz_class(static_cast<long>(3 * (d / p))), p);
                if (v != 1) et += i64{1} << k;
            }
        }
        st.offer(d, et);
    } else if (r.alpha12 == 4) {
        i64 d2 = 1;
        for (auto& pe : fdetb)
            if (pe.second % 2 == 0 && pe.first != 2) d2 *= static_cast<i64>(pe.first);
        d2 = static_cast<i64>(2 * static_cast<i128>(d2) / gcd_pos(2 * static_cast<i128>(d2), P));
        for (i64 t : divisors(d2)) {
            if (d2 % 2 == 0 && two_exponent_odd(fdetb) && t % 2 == 1) continue;
            std::vector<i128> dbb;
            for (auto v : db) dbb.push_back(v * t);
            i64 d = odd_exponent_part(factor_product(dbb));
            i64 et = 0;
            if (d > 2) {
                auto ps = d1_primes(d);
                for (std::size_t k = 0; k < ps.size(); ++k)
                    if (kro(mpz_class(static_cast<long>(-(d / ps[k]))), ps[k]) != 1) et += i64{1} << k;
            }
            st.offer(d, et);
        }
    }
}

i128 det3(const NarrowPartRecord& r) {
    auto m = [&](int i, int j) { return to_mpz(r.at(i, j)); };
    mpz_class d = m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
                  m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
    return to_i128(d);
}

bool pair_gcd_reject(const NarrowPartRecord& r) {
    auto g = [&](int i, int j) { return gcd_pos(-r.at(i, i), -r.at(j, j)); };
    switch (r.type) {
        case NarrowType::AI0: return g(0, 1) > 2 || (r.alpha23 < 4 && g(1, 2) > 2);
        case NarrowType::AII1: return g(0, 1) > 2 || g(1, 2) > 2 || (r.alpha34 < 4 && g(2, 3) > 2);
        case NarrowType::AII0: return g(0, 1) > 2 || g(1, 2) > 2 || g(2, 3) > 2;
        case NarrowType::AIII: return g(0, 1) > 2 || g(1, 2) > 2 || g(2, 3) > 2 || g(3, 4) > 2;
        case NarrowType::BII1:
        case NarrowType::BIII:
            return g(0, 1) > 2 || g(1, 2) > 2 || (r.alpha34 == 2 && g(2, 3) > 1) || (r.alpha34 == 3 && g(2, 3) > 2);
        case NarrowType::BII2: return g(0, 1) > 2 || g(2, 3) > 2;
        default: throw std::logic_error("pair_gcd_reject: wrong type");
    }
}

void main_common(const NarrowPartRecord& r, MainState& st) {
    const int k = r.k;
    i128 P = 1;
    for (int i = 0; i < k; ++i) P = checked_mul(P, -r.at(i, i));
    auto db = record_divisors(r);
    for (int i = 0; i < k; ++i)
        if (!is_squarefree(r.at(i, i))) return;
    if (pair_gcd_reject(r)) return;
    // nonzero elementary divisors
    std::vector<i128> nz(db.begin() + (k - 3), db.end());
    Factorization fdetb;
    if (r.type == NarrowType::AI0) {
        i128 detb = det3(r);
        if (detb <= 0) throw std::logic_error("AI0 narrow part with non-positive determinant");
        if (detb == 1) return;
        fdetb = factor128(detb);
    } else {
        i128 detb = 1;
        for (auto v : nz) detb = checked_mul(detb, v);
        if (detb == 1) return;
        fdetb = factor_product(nz);
    }
    const i128 mod2 = k == 3 ? 8 : k == 4 ? 16 : 32;
    const i128 lowp = k == 4 ? 16 : 2;
    if (gcd_pos(P, lowp) > 1 && gcd_pos(P, mod2) < mod2 && two_exponent_odd(fdetb)) return;
    if (gamma_flag(fdetb, P)) return;
    const bool p_odd = P % 2 != 0;
    for (int pass = 0; pass <= 1; ++pass) {
        if (pass == 0 && p_odd && two_exponent_odd(fdetb)) continue;
        i128 scale = 1;
        if (pass == 1) {
            // the AII0 filter never runs its second pass
            if (!p_odd || r.type == NarrowType::AII0) continue;
            scale = 2;
        }
        std::vector<i128> cur;
        for (auto v : nz) cur.push_back(v * scale);
        const i64 d = odd_exponent_part(factor_product(cur));
        const i128 b11 = r.at(0, 0) * scale, b22 = r.at(1, 1) * scale;
        i64 et = 0;
        if (d > 2) {
            auto ps = d1_primes(d);
            for (std::size_t j = 0; j < ps.size(); ++j) {
                const i64 p = ps[j];
                int v;
                if (b11 % p == 0)
                    v = kro(to_mpz(b11 / p), p);
                else if (b22 % p == 0)
                    v = kro(to_mpz(b22 / p), p);
                else
                    v = kro(mpz_class(static_cast<long>(d / p)) * to_mpz(b11) * to_mpz(b22), p);
                if (v != 1) et += i64{1} << j;
            }
        }
        st.offer(d, et);
    }
}

}  // namespace

void main_filter(const NarrowPartRecord& r, const HOracle& oracle, std::map<std::pair<i64, i64>, int>& out) {
    MainState st{oracle, out};
    if (r.type == NarrowType::AI1 || r.type == NarrowType::BI)
        main_cartan3(r, st);
    else
        main_common(r, st);
}

std::vector<InvariantTriple> enumerate_main(NarrowType t, const HOracle& oracle, const EnumOptions& opt) {
    const auto units = detail::outer_units(t);
    std::vector<std::map<std::pair<i64, i64>, int>> part(units.size());
    detail::parallel_for(units.size(), opt.threads, [&](std::size_t i) {
        detail::run_unit(t, units[i], [&](NarrowPartRecord& r) { main_filter(r, oracle, part[i]); });
    });
    std::map<std::pair<i64, i64>, int> all;
    for (auto& m : part) all.insert(m.begin(), m.end());
    std::vector<InvariantTriple> out;
    for (auto& [k, h] : all) out.push_back({k.first, k.second, h});
    return out;
}

GlobalBounds global_bounds(const std::vector<EnumerationSummary>& s) {
    if (s.empty()) throw std::invalid_argument("global_bounds: no summaries");
    GlobalBounds g;
    g.a = -1;
    g.a1 = -1;
    g.a2 = -1;
    for (auto& e : s) {
        if (e.a > g.a) g.a = e.a, g.arg_a = e.type;
        if (e.a1 > g.a1) g.a1 = e.a1, g.arg_a1 = e.type;
        if (e.a2 > g.a2) g.a2 = e.a2, g.arg_a2 = e.type;
    }
    return g;
}

}  // namespace hl
