#include "hyperlat/vinberg.hpp"

namespace hl {

namespace {

bool is_zero(const QVec& v) { return v[0] == 0 && v[1] == 0 && v[2] == 0; }

QVec neg(const QVec& v) { return {-v[0], -v[1], -v[2]}; }

}  // namespace

Verdict verify_weyl_vector(const Lattice& L, const std::vector<QVec>& gplus, const std::vector<QVec>& gminus,
                           const QVec& rho, const std::optional<Q>& rho2) {
    if (!contains(L, rho)) throw NotInLattice("rho " + to_string(rho) + " is not in the lattice");
    if (!is_primitive(L, rho)) return {false, "rho is not primitive"};
    Q r2 = norm(L, rho);
    if (rho2 && r2 != *rho2) return {false, "rho^2 = " + to_string(r2) + ", expected " + to_string(*rho2)};
    for (std::size_t i = 0; i < gplus.size(); ++i)
        if (inner(L, gplus[i], rho) <= 0) return {false, "(a, rho) <= 0 for Gamma+ row " + std::to_string(i + 1)};
    for (std::size_t i = 0; i < gminus.size(); ++i)
        if (inner(L, gminus[i], rho) >= 0) return {false, "(a, rho) >= 0 for Gamma- row " + std::to_string(i + 1)};
    return {};
}

bool is_isometry(const Lattice& L, const QMat& M) { return mul(transpose(M), mul(L.gram, M)) == L.gram; }

bool preserves_lattice(const Lattice& L, const QMat& M) {
    QMat img = mul(M, L.basis);
    for (int j = 0; j < 3; ++j)
        if (!contains(L, {img[0][j], img[1][j], img[2][j]})) return false;
    return true;
}

Verdict verify_symmetry(const Lattice& L, const QMat& M, SymmetryKind kind, const QVec& rho,
                        const std::vector<QVec>& roots) {
    if (!preserves_lattice(L, M)) throw NotInLattice("matrix does not preserve the lattice");
    if (!is_isometry(L, M)) return {false, "M^T G M != G"};
    QVec mr = mul(M, rho);
    switch (kind) {
        case SymmetryKind::Central:
            if (mr != neg(rho)) return {false, "M(rho) != -rho"};
            if (mul(M, M) != identity3()) return {false, "M^2 != 1"};
            break;
        case SymmetryKind::Sliding:
            if (mr != neg(rho)) return {false, "M(rho) != -rho"};
            break;
        case SymmetryKind::Translation: {
            if (mr != rho) return {false, "M(rho) != rho"};
            QMat p = M;
            for (int k = 1; k <= 12; ++k) {
                if (p == identity3()) return {false, "M has finite order " + std::to_string(k)};
                p = mul(p, M);
            }
            break;
        }
    }
    for (std::size_t i = 0; i < roots.size(); ++i) {
        QVec im = mul(M, roots[i]);
        if (is_zero(im) || !is_root(L, im)) return {false, "image of root " + std::to_string(i + 1) + " is not a root"};
    }
    return {};
}

}  // namespace hl
