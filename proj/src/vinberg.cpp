#include "hyperlat/vinberg.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace hl {

namespace {

using IVec = std::array<i128, 3>;
using IMat = std::array<IVec, 3>;

i128 as_int(const Q& q) {
    if (q.get_den() != 1) throw std::logic_error("expected an integer");
    return to_i128(q.get_num());
}

i128 iabs(i128 x) { return x < 0 ? -x : x; }

i128 floor_div(i128 a, i128 b) {
    i128 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

IVec imul(const IMat& A, const IVec& x) {
    IVec y{0, 0, 0};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) y[i] = checked_add(y[i], checked_mul(A[i][j], x[j]));
    return y;
}

i128 dot(const IVec& x, const IVec& y) {
    i128 s = 0;
    for (int i = 0; i < 3; ++i) s = checked_add(s, checked_mul(x[i], y[i]));
    return s;
}

i128 form(const IMat& A, const IVec& x, const IVec& y) { return dot(x, imul(A, y)); }

IVec axpy(i128 s, const IVec& x, const IVec& y) {
    return {checked_add(checked_mul(s, x[0]), y[0]), checked_add(checked_mul(s, x[1]), y[1]),
            checked_add(checked_mul(s, x[2]), y[2])};
}

// Search data in full-basis integer coordinates.
struct Engine {
    const Lattice* L = nullptr;
    IMat A{};
    IVec c{};
    IVec a{};      // A c
    i128 ga = 0;   // gcd of a
    IVec u0{};     // a . u0 = ga
    IVec k1{}, k2{};  // reduced basis of the kernel of a
    i128 q11 = 0, q12 = 0, q22 = 0;
    i128 l1u = 0, l2u = 0, q0u = 0;
    std::vector<i128> ks;  // possible values of -v^2
};

Engine make_engine(const Lattice& L, const QVec& center) {
    Engine E;
    E.L = &L;
    if (!contains(L, center)) throw NotInLattice("center " + to_string(center) + " is not in the lattice");
    if (norm(L, center) <= 0) throw std::invalid_argument("center must have positive square");
    QVec cf = full_coords(L, center);
    for (int i = 0; i < 3; ++i) {
        E.c[i] = as_int(cf[i]);
        for (int j = 0; j < 3; ++j) E.A[i][j] = as_int(L.full_gram[i][j]);
    }
    E.a = imul(E.A, E.c);

    IMat U{};
    for (int i = 0; i < 3; ++i) U[i][i] = 1;
    IVec w = E.a;
    int piv = 0;
    while (true) {
        piv = -1;
        for (int i = 0; i < 3; ++i)
            if (w[i] != 0 && (piv < 0 || iabs(w[i]) < iabs(w[piv]))) piv = i;
        bool done = true;
        for (int j = 0; j < 3; ++j) {
            if (j == piv || w[j] == 0) continue;
            i128 q = w[j] / w[piv];
            w[j] -= q * w[piv];
            for (int r = 0; r < 3; ++r) U[r][j] = checked_add(U[r][j], -checked_mul(q, U[r][piv]));
            if (w[j] != 0) done = false;
        }
        if (done) break;
    }
    i128 sg = w[piv] < 0 ? -1 : 1;
    E.ga = iabs(w[piv]);
    int o1 = (piv + 1) % 3, o2 = (piv + 2) % 3;
    for (int r = 0; r < 3; ++r) {
        E.u0[r] = sg * U[r][piv];
        E.k1[r] = U[r][o1];
        E.k2[r] = U[r][o2];
    }

    // Lagrange reduction for the positive definite form -A on the kernel
    while (true) {
        i128 p1 = -form(E.A, E.k1, E.k1), p2 = -form(E.A, E.k2, E.k2);
        if (p1 > p2) {
            std::swap(E.k1, E.k2);
            std::swap(p1, p2);
        }
        i128 b = -form(E.A, E.k1, E.k2);
        i128 mu = floor_div(2 * b + p1, 2 * p1);
        if (mu == 0) break;
        E.k2 = axpy(-mu, E.k1, E.k2);
    }
    E.q11 = form(E.A, E.k1, E.k1);
    E.q12 = form(E.A, E.k1, E.k2);
    E.q22 = form(E.A, E.k2, E.k2);
    E.l1u = form(E.A, E.u0, E.k1);
    E.l2u = form(E.A, E.u0, E.k2);
    E.q0u = form(E.A, E.u0, E.u0);

    std::vector<mpz_class> el = discriminant_divisors(L);
    mpz_class e = 1;
    for (const auto& x : el) e = lcm(e, x);
    mpz_class e2 = 2 * e;
    if (!e2.fits_slong_p()) throw std::overflow_error("discriminant exponent too large");
    for (i64 k : divisors(i64(e2.get_si()))) E.ks.push_back(k);
    return E;
}

i128 step_of(const Engine& E, i128 k) {
    i128 s = k % 2 == 0 ? k / 2 : k;
    return s / gcd(s, E.ga) * E.ga;
}

// All primitive roots x with a.x = t and x^2 = -k, in full coordinates.
void solve_plane(const Engine& E, i128 t, i128 k, std::vector<IVec>& out) {
    if (t % E.ga != 0) return;
    i128 s = t / E.ga;
    IVec x0{checked_mul(s, E.u0[0]), checked_mul(s, E.u0[1]), checked_mul(s, E.u0[2])};
    mpz_class l1 = to_mpz(s) * to_mpz(E.l1u), l2 = to_mpz(s) * to_mpz(E.l2u);
    mpz_class q0 = to_mpz(s) * to_mpz(s) * to_mpz(E.q0u);
    mpz_class q11 = to_mpz(E.q11), q12 = to_mpz(E.q12), q22 = to_mpz(E.q22);
    // q22 n^2 + 2 (q12 m + l2) n + (q11 m^2 + 2 l1 m + q0 + k) = 0
    // discriminant/4 in n: D(m) = -al m^2 + 2 be m + ga
    mpz_class al = q11 * q22 - q12 * q12;
    mpz_class be = q12 * l2 - q22 * l1;
    mpz_class gm = l2 * l2 - q22 * (q0 + to_mpz(k));
    mpz_class disc = be * be + al * gm;
    if (disc < 0) return;
    mpz_class sq = sqrt(disc);
    mpz_class lo, hi;
    mpz_fdiv_q(lo.get_mpz_t(), mpz_class(be - sq - 1).get_mpz_t(), al.get_mpz_t());
    mpz_fdiv_q(hi.get_mpz_t(), mpz_class(be + sq + 1).get_mpz_t(), al.get_mpz_t());
    i128 mlo = to_i128(lo), mhi = to_i128(hi);
    i128 ial = to_i128(al), ibe = to_i128(be), igm = to_i128(gm), il2 = to_i128(l2);
    for (i128 m = mlo; m <= mhi; ++m) {
        i128 D = checked_add(checked_add(-checked_mul(ial, checked_mul(m, m)), checked_mul(2 * ibe, m)), igm);
        if (D < 0 || !is_square(D)) continue;
        i128 r = isqrt(D);
        i128 lin = checked_add(checked_mul(E.q12, m), il2);
        for (int sgn = 0; sgn < (r == 0 ? 1 : 2); ++sgn) {
            i128 num = -lin + (sgn == 0 ? r : -r);
            if (num % E.q22 != 0) continue;
            i128 n = num / E.q22;
            IVec x = axpy(n, E.k2, axpy(m, E.k1, x0));
            if (gcd(gcd(x[0], x[1]), x[2]) != 1) continue;
            IVec y = imul(E.A, x);
            bool ok = true;
            for (int j = 0; j < 3 && ok; ++j) ok = (2 * y[j]) % k == 0;
            if (ok) out.push_back(x);
        }
    }
}

QVec to_generators(const Lattice& L, const IVec& x) {
    QVec v;
    for (int i = 0; i < 3; ++i) {
        v[i] = 0;
        for (int j = 0; j < 3; ++j) v[i] += L.basis[i][j] * Q(to_mpz(x[j]));
    }
    return v;
}

bool lex_less(const QVec& a, const QVec& b) {
    for (int i = 0; i < 3; ++i)
        if (a[i] != b[i]) return a[i] < b[i];
    return false;
}

std::vector<RootInfo> roots_at(const Engine& E, const Q& h, const std::vector<std::pair<i128, i128>>& tks) {
    std::vector<IVec> xs;
    std::vector<i128> kk;
    for (auto [t, k] : tks) {
        solve_plane(E, t, k, xs);
        kk.resize(xs.size(), k);
    }
    std::vector<RootInfo> out;
    for (std::size_t i = 0; i < xs.size(); ++i) out.push_back({to_generators(*E.L, xs[i]), Q(to_mpz(-kk[i])), h});
    std::sort(out.begin(), out.end(), [](const RootInfo& a, const RootInfo& b) { return lex_less(a.v, b.v); });
    return out;
}

// heights up to `bound`, each with the (t, k) pairs that realize it
std::map<Q, std::vector<std::pair<i128, i128>>> height_table(const Engine& E, const Q& bound) {
    std::map<Q, std::vector<std::pair<i128, i128>>> out;
    for (i128 k : E.ks) {
        i128 st = step_of(E, k);
        for (i128 t = st;; t += st) {
            Q h = Q(2 * to_mpz(t) * to_mpz(t), to_mpz(k));
            h.canonicalize();
            if (h > bound) break;
            out[h].push_back({t, k});
        }
    }
    return out;
}

Q det3(const QVec& a, const QVec& b, const QVec& c) {
    return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) + a[2] * (b[0] * c[1] - b[1] * c[0]);
}

QVec scale(const Q& s, const QVec& v) { return {s * v[0], s * v[1], s * v[2]}; }

QVec sub(const QVec& a, const QVec& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }

QVec add(const QVec& a, const QVec& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }

Q height_of(const Lattice& L, const QVec& c, const QVec& v) {
    Q t = inner(L, v, c);
    return 2 * t * t / -norm(L, v);
}

// Point strictly inside the polygon cut out by `roots` around the center.
QVec interior_point(const Lattice& L, const QVec& c, const std::vector<RootInfo>& roots) {
    std::vector<QVec> h0;
    for (const auto& r : roots)
        if (inner(L, r.v, c) == 0) h0.push_back(r.v);
    QVec w0{0, 0, 0};
    if (h0.size() == 1) {
        w0 = scale(-1, h0[0]);
    } else if (h0.size() >= 2) {
        Q g11 = norm(L, h0[0]), g12 = inner(L, h0[0], h0[1]), g22 = norm(L, h0[1]);
        Q dt = g11 * g22 - g12 * g12;
        Q al = (g22 - g12) / dt, be = (g11 - g12) / dt;
        w0 = add(scale(al, h0[0]), scale(be, h0[1]));
    }
    for (const auto& v : h0)
        if (inner(L, w0, v) <= 0) throw std::logic_error("height-0 roots do not bound a chamber");
    Q need = -norm(L, w0) / norm(L, c);
    for (const auto& r : roots) {
        Q t = inner(L, r.v, c);
        if (t > 0) need = std::max<Q>(need, -inner(L, w0, r.v) / t);
    }
    mpz_class N;
    mpz_fdiv_q(N.get_mpz_t(), need.get_num_mpz_t(), need.get_den_mpz_t());
    N += 1;
    if (N < 1) N = 1;
    return add(scale(Q(N), c), w0);
}

// The walls of a and b meet at a point of the closed polygon (p inside).
bool sides_meet(const Lattice& L, const QVec& p, const std::vector<RootInfo>& poly, const QVec& a, const QVec& b) {
    QVec cr{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
    QVec x = mul(inverse(L.gram), cr);
    if (x == QVec{0, 0, 0} || norm(L, x) < 0) return false;
    if (inner(L, x, p) < 0) x = scale(-1, x);
    for (const auto& r : poly)
        if (inner(L, x, r.v) < 0) return false;
    return true;
}

// On each side of the axis rho^perp, the boundary from some side to its
// image under T (T rho = rho) is a run of meeting sides.
bool periodic_band(const Lattice& L, const QVec& p, const std::vector<RootInfo>& ch, const QMat& T, const QVec& rho) {
    const std::size_t n = ch.size();
    std::map<QVec, std::size_t> pos;
    for (std::size_t i = 0; i < n; ++i) pos[ch[i].v] = i;
    std::vector<int> side(n);
    for (std::size_t i = 0; i < n; ++i) side[i] = sgn(inner(L, ch[i].v, rho));
    QMat Tinv = inverse(T);
    for (int s : {1, -1}) {
        bool any = false, ok = false;
        for (std::size_t i = 0; i < n && !ok; ++i) {
            if (side[i] != s) continue;
            any = true;
            for (const QMat* U : std::array<const QMat*, 2>{&T, &Tinv}) {
                auto it = pos.find(mul(*U, ch[i].v));
                if (it == pos.end() || it->second == i) continue;
                for (int dir : {1, -1}) {
                    std::size_t k = i;
                    bool good = true;
                    while (good && k != it->second) {
                        std::size_t k2 = (k + n + dir) % n;
                        good = side[k2] == s && sides_meet(L, p, ch, ch[k].v, ch[k2].v);
                        k = k2;
                    }
                    if (good) ok = true;
                }
            }
        }
        if (!any) ok = std::find(side.begin(), side.end(), 0) != side.end();
        if (!ok) return false;
    }
    return true;
}

QMat columns(const QVec& a, const QVec& b, const QVec& c) {
    QMat m;
    for (int i = 0; i < 3; ++i) {
        m[i][0] = a[i];
        m[i][1] = b[i];
        m[i][2] = c[i];
    }
    return m;
}

bool infinite_order(const QMat& M) {
    QMat p = M;
    for (int k = 1; k <= 12; ++k) {
        if (p == identity3()) return false;
        p = mul(p, M);
    }
    return true;
}

// One-dimensional kernel of m, if it has one.
std::optional<QVec> kernel_line(QMat m) {
    int row = 0;
    std::array<int, 3> pivcol{-1, -1, -1};
    for (int col = 0; col < 3 && row < 3; ++col) {
        int p = -1;
        for (int r = row; r < 3; ++r)
            if (m[r][col] != 0) {
                p = r;
                break;
            }
        if (p < 0) continue;
        std::swap(m[row], m[p]);
        for (int r = 0; r < 3; ++r) {
            if (r == row || m[r][col] == 0) continue;
            Q f = m[r][col] / m[row][col];
            for (int j = 0; j < 3; ++j) m[r][j] -= f * m[row][j];
        }
        pivcol[row] = col;
        ++row;
    }
    if (row != 2) return std::nullopt;
    int free = 3 - pivcol[0] - pivcol[1];
    QVec v{0, 0, 0};
    v[free] = 1;
    for (int r = 0; r < 2; ++r) v[pivcol[r]] = -m[r][free] / m[r][pivcol[r]];
    return v;
}

QVec primitive_in(const Lattice& L, const QVec& v) {
    QVec f = full_coords(L, v);
    mpz_class den = 1, g = 0;
    for (const auto& x : f) den = lcm(den, mpz_class(x.get_den()));
    for (const auto& x : f) g = gcd(g, mpz_class(Q(x * den).get_num()));
    return scale(Q(den, g), v);
}

}  // namespace

VinbergConfig default_config(const LatticeForm& f, const Q& max_height) {
    VinbergConfig cfg{Lattice::from_form(f), {}, {}, 0, 200};
    cfg.center = f.shape == Shape::UPlusNeg ? QVec{1, 1, 0} : QVec{1, 0, 0};
    cfg.height0 = height0_roots(cfg.lattice, cfg.center);
    cfg.max_height = max_height;
    return cfg;
}

std::vector<Q> admissible_heights(const VinbergConfig& cfg, const Q& bound) {
    try {
        Engine E = make_engine(cfg.lattice, cfg.center);
        std::vector<Q> out;
        for (const auto& [h, tks] : height_table(E, bound)) out.push_back(h);
        return out;
    } catch (const Overflow&) {
        throw std::overflow_error("height search exceeds 128-bit range");
    }
}

std::vector<RootInfo> candidate_roots(const VinbergConfig& cfg, const Q& h) {
    if (h < 0) throw std::invalid_argument("height must be non-negative");
    try {
        Engine E = make_engine(cfg.lattice, cfg.center);
        std::vector<std::pair<i128, i128>> tks;
        for (i128 k : E.ks) {
            Q t2 = h * Q(to_mpz(k)) / 2;
            if (t2.get_den() != 1 || !mpz_perfect_square_p(t2.get_num_mpz_t())) continue;
            i128 t = isqrt(to_i128(t2.get_num()));
            if (t % step_of(E, k) != 0) continue;
            tks.push_back({t, k});
        }
        if (tks.empty()) throw std::invalid_argument("height " + to_string(h) + " is not admissible");
        return roots_at(E, h, tks);
    } catch (const Overflow&) {
        throw std::overflow_error("height search exceeds 128-bit range");
    }
}

std::vector<QVec> height0_roots(const Lattice& L, const QVec& center) {
    VinbergConfig cfg{L, center, {}, 0, 200};
    std::vector<QVec> pos;
    for (const auto& r : candidate_roots(cfg, 0)) {
        int last = r.v[2] != 0 ? 2 : r.v[1] != 0 ? 1 : 0;
        if (r.v[last] > 0) pos.push_back(r.v);
    }
    if (pos.size() <= 1) return pos;
    std::vector<QVec> simple;
    for (int side : {1, -1})
        for (const auto& r : pos) {
            bool extreme = true;
            for (const auto& s : pos)
                if (det3(center, r, s) * side < 0) extreme = false;
            if (extreme && std::find(simple.begin(), simple.end(), r) == simple.end()) {
                simple.push_back(r);
                break;
            }
        }
    return simple;
}

bool vinberg_accept(const Lattice& L, const std::vector<RootInfo>& accepted, const QVec& v) {
    for (const auto& r : accepted)
        if (inner(L, r.v, v) < 0) return false;
    return true;
}

VinbergRun run_vinberg(const VinbergConfig& cfg) {
    const Lattice& L = cfg.lattice;
    VinbergRun run;
    for (const auto& v : cfg.height0) {
        if (inner(L, v, cfg.center) != 0) throw std::invalid_argument("height-0 root is not orthogonal to the center");
        if (!is_root(L, v)) throw NotARoot("height-0 vector " + to_string(v) + " is not a root");
        run.accepted.push_back({v, norm(L, v), 0});
    }
    try {
        Engine E = make_engine(L, cfg.center);
        for (const auto& [h, tks] : height_table(E, cfg.max_height)) {
            bool added = false;
            for (const auto& r : roots_at(E, h, tks)) {
                if (!vinberg_accept(L, run.accepted, r.v)) continue;
                run.accepted.push_back(r);
                added = true;
                if (run.accepted.size() >= cfg.max_roots) {
                    run.root_limit = true;
                    return run;
                }
            }
            run.reached_height = h;
            if (added && run.accepted.size() >= 3 && finite_area(L, cfg.center, run.accepted)) {
                run.closed = true;
                return run;
            }
        }
        run.reached_height = cfg.max_height;
    } catch (const Overflow&) {
        throw std::overflow_error("height search exceeds 128-bit range");
    }
    return run;
}

std::vector<RootInfo> order_chain(const Lattice& L, const QVec& center, const std::vector<RootInfo>& roots) {
    if (roots.empty()) return {};
    QVec p = interior_point(L, center, roots);
    Q pp = norm(L, p);
    std::vector<QVec> perp;
    for (const auto& r : roots) perp.push_back(sub(r.v, scale(inner(L, r.v, p) / pp, p)));
    const QVec& r0 = perp[0];
    auto half = [&](const QVec& u) {
        int cr = sgn(det3(p, r0, u));
        return (cr > 0 || (cr == 0 && inner(L, r0, u) < 0)) ? 0 : 1;
    };
    std::vector<std::size_t> idx(roots.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        int ha = half(perp[a]), hb = half(perp[b]);
        if (ha != hb) return ha < hb;
        return det3(p, perp[a], perp[b]) > 0;
    });
    std::vector<RootInfo> out;
    for (std::size_t i : idx) out.push_back(roots[i]);
    return out;
}

bool finite_area(const Lattice& L, const QVec& center, const std::vector<RootInfo>& roots) {
    if (roots.size() < 3) return false;
    std::vector<RootInfo> ch = order_chain(L, center, roots);
    QVec p = interior_point(L, center, roots);
    for (std::size_t i = 0; i < ch.size(); ++i)
        if (!sides_meet(L, p, ch, ch[i].v, ch[(i + 1) % ch.size()].v)) return false;
    return true;
}

std::string to_string(Reflectivity r) {
    switch (r) {
        case Reflectivity::FinitePolygon:
            return "finite-polygon";
        case Reflectivity::HyperbolicPeriodic:
            return "hyperbolic-periodic";
        case Reflectivity::Inconclusive:
            return "inconclusive";
    }
    return "inconclusive";
}

Q default_max_height(const LatticeForm&) { return 100000000; }

namespace {

Classification classify_at(const LatticeForm& f, const Q& H, std::size_t max_roots) {
    VinbergConfig cfg = default_config(f, H);
    cfg.max_roots = max_roots;
    const Lattice& L = cfg.lattice;
    VinbergRun run = run_vinberg(cfg);
    Classification out;
    out.chain = order_chain(L, cfg.center, run.accepted);
    if (run.closed) {
        out.kind = Reflectivity::FinitePolygon;
        out.note = std::to_string(run.accepted.size()) + " sides, closed at height " + to_string(run.reached_height);
        return out;
    }
    const auto& ch = out.chain;
    const std::size_t n = ch.size();
    if (n < 4) {
        out.note = "too few roots within the budget";
        return out;
    }
    std::set<QVec> known;
    for (const auto& r : ch) known.insert(r.v);
    auto gram3 = [&](const QVec& a, const QVec& b, const QVec& c) {
        return std::array<Q, 6>{norm(L, a), norm(L, b), norm(L, c), inner(L, a, b), inner(L, b, c), inner(L, a, c)};
    };
    const std::size_t need = std::max<std::size_t>(4, std::min<std::size_t>(8, n / 2));

    // Maps three adjacent sides onto three adjacent sides, in either orientation.
    std::vector<QMat> found;
    for (std::size_t i = 0; i < n; ++i) {
        const QVec &s0 = ch[i].v, &s1 = ch[(i + 1) % n].v, &s2 = ch[(i + 2) % n].v;
        QMat S = columns(s0, s1, s2);
        if (det(S) == 0) continue;
        QMat Sinv = inverse(S);
        auto gs = gram3(s0, s1, s2);
        for (std::size_t j = 0; j < n; ++j)
            for (int rev = 0; rev < 2; ++rev) {
                const QVec& t1 = ch[(j + 1) % n].v;
                const QVec& t0 = rev ? ch[(j + 2) % n].v : ch[j].v;
                const QVec& t2 = rev ? ch[j].v : ch[(j + 2) % n].v;
                if (gram3(t0, t1, t2) != gs) continue;
                QMat M = mul(columns(t0, t1, t2), Sinv);
                if (M == identity3()) continue;
                if (std::find(found.begin(), found.end(), M) != found.end()) continue;
                if (!is_isometry(L, M) || !preserves_lattice(L, M)) continue;
                std::size_t hits = 0;
                bool bad = false;
                for (const auto& r : ch) {
                    QVec im = mul(M, r.v);
                    if (known.count(im)) {
                        ++hits;
                        continue;
                    }
                    if (inner(L, im, cfg.center) < 0 || height_of(L, cfg.center, im) <= run.reached_height) {
                        bad = true;
                        break;
                    }
                }
                if (!bad && hits >= need) found.push_back(M);
            }
    }
    if (found.empty()) {
        out.note = "no symmetry of the chain within the budget";
        return out;
    }

    std::vector<QMat> trials;
    for (const auto& M : found)
        if (infinite_order(M)) trials.push_back(M);
    for (const auto& A : found)
        for (const auto& B : found) {
            QMat P = mul(A, B);
            if (infinite_order(P)) trials.push_back(P);
        }
    QVec p = interior_point(L, cfg.center, ch);
    bool axis_found = false;
    for (const auto& T0 : trials) {
        QMat R = mul(T0, T0);
        for (int i = 0; i < 3; ++i) R[i][i] -= 1;
        auto k = kernel_line(R);
        if (!k) continue;
        QVec rho = primitive_in(L, *k);
        if (norm(L, rho) >= 0) continue;
        axis_found = true;
        QMat T = mul(T0, rho) == rho ? T0 : mul(T0, T0);
        if (!periodic_band(L, p, ch, T, rho)) continue;
        Q rc = inner(L, rho, cfg.center);
        if (rc < 0 || (rc == 0 && lex_less(rho, QVec{0, 0, 0}))) rho = scale(-1, rho);
        std::vector<QMat> gens;
        for (const auto& M : found) {
            QVec im = mul(M, rho);
            if (im == rho || im == scale(-1, rho)) gens.push_back(M);
        }
        out.kind = Reflectivity::HyperbolicPeriodic;
        out.rho = rho;
        out.generators = gens;
        out.note = std::to_string(gens.size()) + " chain symmetries fixing rho up to sign";
        return out;
    }
    out.generators = found;
    out.note = axis_found ? "symmetries of infinite order found, boundary not periodic within the budget"
                          : "chain symmetries found, none of infinite order";
    return out;
}

}  // namespace

// Budgets 10^6, 10^7, ... below H, then H; stops at the first decided one.
Classification classify_reflectivity(const LatticeForm& f, const ClassifyBudget& budget) {
    Q H = budget.max_height == 0 ? default_max_height(f) : budget.max_height;
    for (Q h = 1000000; h < H; h *= 10) {
        Classification c = classify_at(f, h, budget.max_roots);
        if (c.kind != Reflectivity::Inconclusive) return c;
    }
    return classify_at(f, H, budget.max_roots);
}

}  // namespace hl
