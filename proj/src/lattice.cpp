#include "hyperlat/lattice.hpp"

#include <algorithm>
#include <cctype>
#include <regex>
#include <sstream>

namespace hl {

LatticeForm LatticeForm::u_plus(i64 d) {
    LatticeForm f;
    f.shape = Shape::UPlusNeg;
    f.d = d;
    return f;
}

LatticeForm LatticeForm::diag(i64 n1, i64 n2, i64 n3, int e1, int e2, int e3) {
    LatticeForm f;
    f.shape = Shape::DiagGlue;
    f.n = {n1, n2, n3};
    f.eps = {e1, e2, e3};
    return f;
}

LatticeForm LatticeForm::a2(i64 n) {
    LatticeForm f;
    f.shape = Shape::A2Glue;
    f.a2n = n;
    return f;
}

namespace {

i64 parse_i64(const std::string& s) {
    std::size_t pos = 0;
    long long v = 0;
    try {
        v = std::stoll(s, &pos);
    } catch (const std::exception&) {
        throw FormError("bad integer '" + s + "'");
    }
    if (pos != s.size()) throw FormError("bad integer '" + s + "'");
    return v;
}

int parse_half(const std::string& s) {
    if (s == "0") return 0;
    if (s == "1/2") return 1;
    throw FormError("glue coordinate must be 0 or 1/2, got '" + s + "'");
}

}  // namespace

LatticeForm parse_form(std::string_view sv) {
    std::string s(sv);
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    static const std::regex re_u(R"(u\+(\d+))");
    static const std::regex re_diag(R"(diag\((\d+),-(\d+),-(\d+)(?:;([0-9/]+),([0-9/]+),([0-9/]+))?\))");
    static const std::regex re_a2(R"(a2\((\d+)\))");
    std::smatch m;
    LatticeForm f;
    if (std::regex_match(s, m, re_u)) {
        f = LatticeForm::u_plus(parse_i64(m[1]));
    } else if (std::regex_match(s, m, re_diag)) {
        f = LatticeForm::diag(parse_i64(m[1]), parse_i64(m[2]), parse_i64(m[3]));
        if (m[4].matched) f.eps = {parse_half(m[4]), parse_half(m[5]), parse_half(m[6])};
    } else if (std::regex_match(s, m, re_a2)) {
        f = LatticeForm::a2(parse_i64(m[1]));
    } else {
        throw FormError("unrecognized form '" + std::string(sv) + "'");
    }
    check_legal(f);
    return f;
}

std::string format_form(const LatticeForm& f) {
    std::ostringstream os;
    switch (f.shape) {
        case Shape::UPlusNeg: os << "U+" << f.d; break;
        case Shape::A2Glue: os << "a2(" << f.a2n << ")"; break;
        case Shape::DiagGlue:
            os << "diag(" << f.n[0] << ",-" << f.n[1] << ",-" << f.n[2];
            if (f.eps[0] || f.eps[1] || f.eps[2]) {
                os << ";";
                for (int i = 0; i < 3; ++i) os << (i ? "," : "") << (f.eps[i] ? "1/2" : "0");
            }
            os << ")";
            break;
    }
    return os.str();
}

void check_legal(const LatticeForm& f) {
    switch (f.shape) {
        case Shape::UPlusNeg:
            if (f.d < 1) throw FormError("U+d: d must be positive");
            break;
        case Shape::A2Glue:
            if (f.a2n < 1) throw FormError("a2(n): n must be positive");
            if (f.a2n % 3 != 2) throw FormError("a2(n): n must be 2 mod 3");
            break;
        case Shape::DiagGlue: {
            for (int i = 0; i < 3; ++i) {
                if (f.n[i] < 1) throw FormError("diag: n" + std::to_string(i + 1) + " must be positive");
                if (f.eps[i] != 0 && f.eps[i] != 1) throw FormError("diag: glue entries must be 0 or 1/2");
                if (f.eps[i] == 1 && f.n[i] % 2 != 0)
                    throw FormError("diag: n" + std::to_string(i + 1) + " must be even when its glue entry is 1/2");
            }
            i64 s = f.n[0] * f.eps[0] - f.n[1] * f.eps[1] - f.n[2] * f.eps[2];
            if (s % 4 != 0) throw FormError("diag: (n1e1-n2e2-n3e3)/4 must be an integer");
            break;
        }
    }
}

GramAndGlue gram_of(const LatticeForm& f) {
    check_legal(f);
    GramAndGlue r;
    switch (f.shape) {
        case Shape::UPlusNeg:
            r.g = {{{0, 1, 0}, {1, 0, 0}, {0, 0, -f.d}}};
            break;
        case Shape::DiagGlue:
            r.g = {{{f.n[0], 0, 0}, {0, -f.n[1], 0}, {0, 0, -f.n[2]}}};
            if (f.eps[0] || f.eps[1] || f.eps[2])
                r.glue.push_back({Q(f.eps[0], 2), Q(f.eps[1], 2), Q(f.eps[2], 2)});
            for (auto& q : r.glue)
                for (auto& x : q) x.canonicalize();
            break;
        case Shape::A2Glue:
            r.g = {{{3 * f.a2n, 0, 0}, {0, -2, 1}, {0, 1, -2}}};
            r.glue.push_back({Q(1, 3), Q(1, 3), Q(-1, 3)});
            break;
    }
    return r;
}

bool is_main(const LatticeForm& f) {
    Lattice L = Lattice::from_form(f);
    if (determinant(L) % 2 != 0) return true;
    for (int i = 0; i < 3; ++i)
        if (L.full_gram[i][i].get_num() % 2 != 0) return false;
    return true;
}

// ---- rational linear algebra ----

QMat identity3() {
    QMat m;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m[i][j] = (i == j) ? 1 : 0;
    return m;
}

QVec mul(const QMat& m, const QVec& v) {
    QVec r;
    for (int i = 0; i < 3; ++i) r[i] = m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2];
    return r;
}

QMat mul(const QMat& a, const QMat& b) {
    QMat r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j] + a[i][2] * b[2][j];
    return r;
}

QMat transpose(const QMat& m) {
    QMat r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r[i][j] = m[j][i];
    return r;
}

Q det(const QMat& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

QMat inverse(const QMat& m) {
    Q dt = det(m);
    if (dt == 0) throw std::domain_error("singular matrix");
    QMat r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            int i1 = (j + 1) % 3, i2 = (j + 2) % 3, j1 = (i + 1) % 3, j2 = (i + 2) % 3;
            r[i][j] = (m[i1][j1] * m[i2][j2] - m[i1][j2] * m[i2][j1]) / dt;
        }
    return r;
}

Q inner(const QMat& g, const QVec& v, const QVec& w) {
    Q s = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (g[i][j] != 0) s += v[i] * g[i][j] * w[j];
    return s;
}

Q inner(const Lattice& L, const QVec& v, const QVec& w) { return inner(L.gram, v, w); }
Q norm(const Lattice& L, const QVec& v) { return inner(L.gram, v, v); }

std::string to_string(const Q& q) { return q.get_str(); }

std::string to_string(const QVec& v) { return to_string(v[0]) + "," + to_string(v[1]) + "," + to_string(v[2]); }

Q parse_rational(std::string_view s) {
    std::string t(s);
    static const std::regex re(R"(-?\d+(/\d+)?)");
    if (!std::regex_match(t, re)) throw std::invalid_argument("bad rational '" + t + "'");
    Q q(t);
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator in '" + t + "'");
    q.canonicalize();
    return q;
}

// ---- full lattice ----

namespace {

bool is_integer(const Q& q) { return q.get_den() == 1; }

// Row echelon Z-basis of the rows of `rows` (integer vectors of length 3).
std::vector<std::array<mpz_class, 3>> hermite_rows(std::vector<std::array<mpz_class, 3>> rows) {
    std::size_t piv = 0;
    for (int c = 0; c < 3 && piv < rows.size(); ++c) {
        while (true) {
            std::size_t best = rows.size();
            for (std::size_t r = piv; r < rows.size(); ++r)
                if (rows[r][c] != 0 && (best == rows.size() || abs(rows[r][c]) < abs(rows[best][c]))) best = r;
            if (best == rows.size()) break;
            std::swap(rows[piv], rows[best]);
            bool done = true;
            for (std::size_t r = piv + 1; r < rows.size(); ++r) {
                if (rows[r][c] == 0) continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), rows[r][c].get_mpz_t(), rows[piv][c].get_mpz_t());
                for (int k = 0; k < 3; ++k) rows[r][k] -= q * rows[piv][k];
                if (rows[r][c] != 0) done = false;
            }
            if (done) {
                ++piv;
                break;
            }
        }
    }
    rows.resize(piv);
    return rows;
}

}  // namespace

Lattice Lattice::from_form(const LatticeForm& f) {
    GramAndGlue gg = gram_of(f);
    QMat g;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) g[i][j] = gg.g[i][j];
    Lattice L = from_gram(g, gg.glue);
    L.form = f;
    return L;
}

Lattice Lattice::from_gram(const QMat& gram, const std::vector<QVec>& glue) {
    std::vector<QVec> gens;
    for (int i = 0; i < 3; ++i) {
        QVec e{0, 0, 0};
        e[i] = 1;
        gens.push_back(e);
    }
    for (const auto& v : glue) gens.push_back(v);
    Lattice L = from_generators(gram, gens);
    L.glue = glue;
    return L;
}

Lattice Lattice::from_generators(const QMat& gram, const std::vector<QVec>& gens) {
    Lattice L;
    L.gram = gram;
    mpz_class D = 1;
    for (const auto& v : gens)
        for (const auto& x : v) D = lcm(D, mpz_class(x.get_den()));
    std::vector<std::array<mpz_class, 3>> rows;
    for (const auto& v : gens) {
        std::array<mpz_class, 3> r;
        for (int k = 0; k < 3; ++k) {
            Q t = v[k] * D;
            r[k] = t.get_num();
        }
        rows.push_back(r);
    }
    auto h = hermite_rows(rows);
    if (h.size() != 3) throw FormError("generators do not span a rank 3 lattice");
    for (int j = 0; j < 3; ++j)
        for (int i = 0; i < 3; ++i) {
            L.basis[i][j] = Q(h[j][i], D);
            L.basis[i][j].canonicalize();
        }
    L.basis_inv = inverse(L.basis);
    L.full_gram = mul(transpose(L.basis), mul(gram, L.basis));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (!is_integer(L.full_gram[i][j])) throw FormError("glue vectors break integrality of the lattice");
    if (det(L.full_gram) == 0) throw FormError("degenerate form");
    return L;
}

Lattice even_sublattice(const Lattice& L) {
    std::vector<QVec> cols(3);
    for (int j = 0; j < 3; ++j) cols[j] = {L.basis[0][j], L.basis[1][j], L.basis[2][j]};
    std::vector<QVec> gens;
    int odd = -1;
    for (int j = 0; j < 3; ++j) {
        if (L.full_gram[j][j].get_num() % 2 == 0) {
            gens.push_back(cols[j]);
        } else if (odd < 0) {
            odd = j;
            gens.push_back({2 * cols[j][0], 2 * cols[j][1], 2 * cols[j][2]});
        } else {
            gens.push_back({cols[j][0] + cols[odd][0], cols[j][1] + cols[odd][1], cols[j][2] + cols[odd][2]});
        }
    }
    return Lattice::from_generators(L.gram, gens);
}

Lattice scaled(const Lattice& L, const Q& s) {
    QMat g = L.gram;
    for (auto& row : g)
        for (auto& x : row) x *= s;
    std::vector<QVec> gens(3);
    for (int j = 0; j < 3; ++j) gens[j] = {L.basis[0][j], L.basis[1][j], L.basis[2][j]};
    return Lattice::from_generators(g, gens);
}

QVec full_coords(const Lattice& L, const QVec& v) { return mul(L.basis_inv, v); }

bool contains(const Lattice& L, const QVec& v) {
    QVec c = full_coords(L, v);
    return is_integer(c[0]) && is_integer(c[1]) && is_integer(c[2]);
}

mpz_class determinant(const Lattice& L) {
    Q d = det(L.full_gram);
    return abs(d.get_num());
}

std::vector<mpz_class> discriminant_divisors(const Lattice& L) {
    Matrix<mpz_class> m(3, std::vector<mpz_class>(3));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m[i][j] = L.full_gram[i][j].get_num();
    return smith_divisors(m);
}

bool is_primitive(const Lattice& L, const QVec& v) {
    QVec c = full_coords(L, v);
    mpz_class g = 0;
    for (const auto& x : c) {
        if (!is_integer(x)) throw NotInLattice("vector " + to_string(v) + " is not in the lattice");
        g = gcd(g, mpz_class(x.get_num()));
    }
    return g == 1;
}

bool is_root(const Lattice& L, const QVec& v) {
    if (!contains(L, v)) throw NotInLattice("vector " + to_string(v) + " is not in the lattice");
    Q n = norm(L, v);
    if (n >= 0) return false;
    if (!is_primitive(L, v)) return false;
    for (int j = 0; j < 3; ++j) {
        QVec b{L.basis[0][j], L.basis[1][j], L.basis[2][j]};
        Q t = 2 * inner(L, v, b) / n;
        if (!is_integer(t)) return false;
    }
    return true;
}

QVec reflect(const Lattice& L, const QVec& r, const QVec& x) {
    Q c = 2 * inner(L, x, r) / norm(L, r);
    return {x[0] - c * r[0], x[1] - c * r[1], x[2] - c * r[2]};
}

// ---- invariants ----

namespace {

i64 eta_from_signs(const std::vector<u64>& primes, const std::vector<int>& kro) {
    i64 eta = 0;
    for (std::size_t k = 0; k < primes.size(); ++k)
        if (kro[k] == -1) eta |= i64(1) << k;
    return eta;
}

void require_squarefree(i64 d) {
    if (d < 1 || !is_squarefree(i128(d))) throw FormError("determinant " + std::to_string(d) + " is not square-free");
}

}  // namespace

DEta invariants_d_eta(const LatticeForm& f) {
    check_legal(f);
    DEta r;
    std::vector<int> signs;
    switch (f.shape) {
        case Shape::UPlusNeg: {
            r.d = f.d;
            require_squarefree(r.d);
            for (u64 p : odd_primes(u64(r.d))) signs.push_back(kronecker(-r.d / i64(p), i64(p)));
            break;
        }
        case Shape::DiagGlue: {
            i64 prod = f.n[0] * f.n[1] * f.n[2];
            r.d = (f.eps[0] || f.eps[1] || f.eps[2]) ? prod / 4 : prod;
            require_squarefree(r.d);
            for (u64 pu : odd_primes(u64(r.d))) {
                i64 p = i64(pu);
                if (f.n[0] % p == 0)
                    signs.push_back(kronecker(f.n[0] / p, p));
                else if (f.n[1] % p == 0)
                    signs.push_back(kronecker(-f.n[1] / p, p));
                else
                    signs.push_back(kronecker(-f.n[2] / p, p));
            }
            break;
        }
        case Shape::A2Glue: {
            r.d = f.a2n;
            require_squarefree(r.d);
            for (u64 p : odd_primes(u64(r.d))) signs.push_back(kronecker(3 * r.d / i64(p), i64(p)));
            break;
        }
    }
    r.eta = eta_from_signs(odd_primes(u64(r.d)), signs);
    return r;
}

DEta invariants_d_eta(const Lattice& L) {
    mpz_class dz = determinant(L);
    if (!dz.fits_slong_p()) throw FormError("determinant too large");
    i64 d = dz.get_si();
    require_squarefree(d);
    QMat inv = inverse(L.full_gram);
    auto primes = odd_primes(u64(d));
    std::vector<int> signs;
    for (u64 pu : primes) {
        i64 p = i64(pu);
        Q s(d / p);
        int sign = 0;
        for (int j = 0; j < 3 && sign == 0; ++j) {
            QVec y{s * inv[0][j], s * inv[1][j], s * inv[2][j]};
            if (is_integer(y[0]) && is_integer(y[1]) && is_integer(y[2])) continue;
            Q u = Q(p) * inner(L.full_gram, y, y);
            mpz_class t = u.get_num() * u.get_den();
            sign = kronecker(t, mpz_class(p));
        }
        if (sign == 0) throw std::logic_error("discriminant group has no element of order p");
        signs.push_back(sign);
    }
    return {d, eta_from_signs(primes, signs)};
}

namespace {

int hilbert_symbol(mpz_class a, mpz_class b, const mpz_class& p) {
    int alpha = 0, beta = 0;
    while (a % p == 0) a /= p, ++alpha;
    while (b % p == 0) b /= p, ++beta;
    if (p == 2) {
        auto eps = [](const mpz_class& x) -> int {
            mpz_class r = ((x % 8) + 8) % 8;
            return ((r.get_si() - 1) / 2) % 2;
        };
        auto omega = [](const mpz_class& x) -> int {
            mpz_class r = ((x % 8) + 8) % 8;
            long v = r.get_si();
            return ((v * v - 1) / 8) % 2;
        };
        int e = eps(a) * eps(b) + alpha * omega(b) + beta * omega(a);
        return (e % 2) ? -1 : 1;
    }
    long pl = p.get_si();
    int sign = ((alpha * beta) % 2 == 1 && (pl % 4 == 3)) ? -1 : 1;
    if (beta % 2) sign *= kronecker(a, p);
    if (alpha % 2) sign *= kronecker(b, p);
    return sign;
}

}  // namespace

bool represents_zero(const Lattice& L) {
    // Lagrange diagonalization over Q
    QMat g = L.full_gram;
    std::vector<Q> diag;
    QMat e = identity3();
    std::vector<QVec> vs = {e[0], e[1], e[2]};
    for (int step = 0; step < 3; ++step) {
        for (const auto& w : vs)
            if (inner(g, w, w) == 0) return true;
        QVec v = vs.front();
        Q vv = inner(g, v, v);
        diag.push_back(vv);
        vs.erase(vs.begin());
        for (auto& w : vs) {
            Q c = inner(g, w, v) / vv;
            for (int k = 0; k < 3; ++k) w[k] -= c * v[k];
        }
    }
    if (diag.size() < 3) return true;
    std::array<mpz_class, 3> a;
    for (int i = 0; i < 3; ++i) a[i] = diag[i].get_num() * diag[i].get_den();
    mpz_class B = a[0] * a[1], C = a[0] * a[2];
    // <1, B, C> is isotropic iff (-B, -C)_v = 1 everywhere
    if (-B < 0 && -C < 0) return false;
    std::vector<mpz_class> ps = {2};
    for (const mpz_class& x : {B, C}) {
        for (auto [p, e] : factor(mpz_class(abs(x)))) {
            (void)e;
            ps.push_back(mpz_class(static_cast<unsigned long>(p)));
        }
    }
    std::sort(ps.begin(), ps.end());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
    for (const auto& p : ps)
        if (hilbert_symbol(-B, -C, p) != 1) return false;
    return true;
}

// ---- rescaling ----

mpz_class Rescaled::k_of(const QVec& alpha) const {
    if (!contains(S, alpha)) throw NotInLattice("vector " + to_string(alpha) + " is not in the lattice");
    mpz_class g = 0;
    for (int j = 0; j < 3; ++j) {
        QVec b{S.basis[0][j], S.basis[1][j], S.basis[2][j]};
        g = gcd(g, mpz_class(inner(S, alpha, b).get_num()));
    }
    return gcd(g, m);
}

QVec Rescaled::map_root(const QVec& alpha) const {
    Q k(k_of(alpha));
    return {alpha[0] / k, alpha[1] / k, alpha[2] / k};
}

Rescaled elementary_rescale(const Lattice& S, const mpz_class& m) {
    mpz_class d = determinant(S);
    if (m < 1 || d % m != 0) throw std::invalid_argument("m must be a positive divisor of the determinant");
    QMat dual = mul(S.basis, inverse(S.full_gram));  // columns: dual basis
    std::vector<QVec> glue = S.glue;
    Q f(d / m);
    for (int j = 0; j < 3; ++j) glue.push_back({S.basis[0][j], S.basis[1][j], S.basis[2][j]});
    for (int j = 0; j < 3; ++j) glue.push_back({f * dual[0][j], f * dual[1][j], f * dual[2][j]});
    QMat g = S.gram;
    for (auto& row : g)
        for (auto& x : row) x *= m;
    Rescaled r{Lattice::from_gram(g, glue), m, S};
    return r;
}

// ---- root pair predicates ----

RootPairVerdict root_pair_predicates(const Lattice& L, const QVec& r1, const QVec& r2) {
    if (!is_root(L, r1)) throw NotARoot("r1 is not a root");
    if (!is_root(L, r2)) throw NotARoot("r2 is not a root");
    QVec c{r1[1] * r2[2] - r1[2] * r2[1], r1[2] * r2[0] - r1[0] * r2[2], r1[0] * r2[1] - r1[1] * r2[0]};
    if (c[0] == 0 && c[1] == 0 && c[2] == 0) throw std::invalid_argument("roots are proportional");
    mpz_class d = determinant(L);
    RootPairVerdict v;
    auto sq_ok = [&](const QVec& r) {
        mpz_class t = -norm(L, r).get_num();
        if (!is_squarefree(t)) return false;
        for (auto [p, e] : factor(t)) {
            (void)e;
            if (p != 2 && d % mpz_class(static_cast<unsigned long>(p)) != 0) return false;
        }
        return true;
    };
    v.squarefree_r1 = sq_ok(r1);
    v.squarefree_r2 = sq_ok(r2);
    Q n1 = norm(L, r1), n2 = norm(L, r2), ip = inner(L, r1, r2);
    Q ratio = 4 * ip * ip / (n1 * n2);
    if (!is_integer(ratio) || !ratio.get_num().fits_slong_p()) throw std::logic_error("non-integral angle ratio for roots");
    v.ratio = ratio.get_num().get_si();
    if (v.ratio >= 0 && v.ratio <= 3) {
        v.gcd_applies = true;
        mpz_class g = gcd(mpz_class(n1.get_num()), mpz_class(n2.get_num()));
        v.gcd_ok = g <= 2;
    }
    if (v.ratio == 1) v.congruence_ok = (d % 3 == 2);
    if (v.ratio == 3) v.congruence_ok = (d % 3 == 0);
    v.represents_zero = v.ratio == 4 || represents_zero(L);
    v.isomorphic_to_u = v.represents_zero;
    return v;
}

}  // namespace hl
