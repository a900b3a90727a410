#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hyperlat/arith.hpp"
#include "hyperlat/smith.hpp"

namespace hl {

using Q = mpq_class;
using QVec = std::array<Q, 3>;
using QMat = std::array<QVec, 3>;  // row-major

enum class Shape { UPlusNeg, DiagGlue, A2Glue };

struct LatticeForm {
    Shape shape = Shape::UPlusNeg;
    i64 d = 0;                 // U+d
    std::array<i64, 3> n{};    // diag(n1,-n2,-n3)
    std::array<int, 3> eps{};  // glue (e1/2,e2/2,e3/2)
    i64 a2n = 0;               // <3n> + A2(1/3,1/3,-1/3)

    static LatticeForm u_plus(i64 d);
    static LatticeForm diag(i64 n1, i64 n2, i64 n3, int e1 = 0, int e2 = 0, int e3 = 0);
    static LatticeForm a2(i64 n);

    bool operator==(const LatticeForm&) const = default;
};

// Malformed text or a violated parameter rule; the message names the rule.
struct FormError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// A vector outside the lattice where a lattice vector was required.
struct NotInLattice : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// A lattice vector that is not a root where a root was required.
struct NotARoot : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Accepts `U+19`, `diag(1,-74,-2;0,1/2,1/2)`, `a2(17)`, case-insensitively.
LatticeForm parse_form(std::string_view s);
std::string format_form(const LatticeForm& f);

// Throws FormError if the parameters do not define an integral lattice.
void check_legal(const LatticeForm& f);
// Even whenever the determinant is even.
bool is_main(const LatticeForm& f);

struct GramAndGlue {
    std::array<std::array<i64, 3>, 3> g{};
    std::vector<QVec> glue;
};
GramAndGlue gram_of(const LatticeForm& f);

// Rank 3 lattice spanned by the standard generators and the glue vectors,
// with the bilinear form given by `gram` on the generators.
struct Lattice {
    std::optional<LatticeForm> form;
    QMat gram{};
    std::vector<QVec> glue;
    QMat basis{};      // columns: a Z-basis of the full lattice
    QMat basis_inv{};
    QMat full_gram{};  // integer Gram of the basis

    static Lattice from_form(const LatticeForm& f);
    static Lattice from_gram(const QMat& gram, const std::vector<QVec>& glue = {});
    // Lattice spanned by `gens` alone; `glue` is left empty.
    static Lattice from_generators(const QMat& gram, const std::vector<QVec>& gens);
};

Q inner(const Lattice& L, const QVec& v, const QVec& w);
Q norm(const Lattice& L, const QVec& v);
Q inner(const QMat& g, const QVec& v, const QVec& w);

QVec mul(const QMat& m, const QVec& v);
QMat mul(const QMat& a, const QMat& b);
QMat transpose(const QMat& m);
Q det(const QMat& m);
QMat inverse(const QMat& m);
QMat identity3();

std::string to_string(const Q& q);
std::string to_string(const QVec& v);
Q parse_rational(std::string_view s);

// Coordinates of v in the full basis.
QVec full_coords(const Lattice& L, const QVec& v);
bool contains(const Lattice& L, const QVec& v);
// Determinant of the full lattice (signature (1,2) gives a positive value).
mpz_class determinant(const Lattice& L);
// Elementary divisors of the discriminant group.
std::vector<mpz_class> discriminant_divisors(const Lattice& L);

bool is_primitive(const Lattice& L, const QVec& v);
// Throws NotInLattice when v is not a lattice vector.
bool is_root(const Lattice& L, const QVec& v);
// Reflection in the root r applied to x.
QVec reflect(const Lattice& L, const QVec& r, const QVec& x);

struct DEta {
    i64 d = 0;
    i64 eta = 0;
    bool operator==(const DEta&) const = default;
};

// Per-shape formulas on a standard form. Throws FormError when the
// determinant is not square-free.
DEta invariants_d_eta(const LatticeForm& f);
// Shape-independent computation from the discriminant form; any Gram matrix
// of the lattice gives the same result.
DEta invariants_d_eta(const Lattice& L);

// Sublattice of vectors with even square.
Lattice even_sublattice(const Lattice& L);
// Same vectors with the form multiplied by s.
Lattice scaled(const Lattice& L, const Q& s);

// Nonzero isotropic vector exists over Q.
bool represents_zero(const Lattice& L);

struct Rescaled {
    Lattice F;
    mpz_class m;
    // alpha / k(alpha, m), as a vector of F
    QVec map_root(const QVec& alpha) const;
    // k(alpha, m): largest divisor k of m with alpha/k in the dual of S
    mpz_class k_of(const QVec& alpha) const;

    Lattice S;
};

// F = S^{*,m}(m), det F = d m. Throws std::invalid_argument unless m | d.
Rescaled elementary_rescale(const Lattice& S, const mpz_class& m);

struct RootPairVerdict {
    bool squarefree_r1 = false, squarefree_r2 = false;  // part (a), both conditions
    i64 ratio = 0;                                      // 4(r1,r2)^2/(r1^2 r2^2)
    bool gcd_applies = false;
    bool gcd_ok = true;          // gcd(r1^2, r2^2) <= 2 when it applies
    bool congruence_ok = true;   // ratio 1: d = 2 mod 3; ratio 3: 3 | d
    bool represents_zero = false;
    bool isomorphic_to_u = false;  // reported when ratio is 4 or S represents 0

    bool pass() const { return squarefree_r1 && squarefree_r2 && gcd_ok && congruence_ok; }
};

// Throws NotARoot for non-roots and std::invalid_argument for proportional roots.
RootPairVerdict root_pair_predicates(const Lattice& L, const QVec& r1, const QVec& r2);

}  // namespace hl
