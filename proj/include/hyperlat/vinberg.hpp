#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hyperlat/lattice.hpp"

namespace hl {

struct Verdict {
    bool ok = true;
    std::string reason;  // first failed rule when !ok
};

// rho primitive lattice vector, optional printed square, (a, rho) > 0 on
// gplus and < 0 on gminus. Throws NotInLattice for a non-lattice rho.
Verdict verify_weyl_vector(const Lattice& L, const std::vector<QVec>& gplus, const std::vector<QVec>& gminus,
                           const QVec& rho, const std::optional<Q>& rho2 = std::nullopt);

enum class SymmetryKind { Central, Translation, Sliding };

// Matrices act on generator coordinates of column vectors. Throws
// NotInLattice when M does not preserve the lattice.
Verdict verify_symmetry(const Lattice& L, const QMat& M, SymmetryKind kind, const QVec& rho,
                        const std::vector<QVec>& roots = {});

bool is_isometry(const Lattice& L, const QMat& M);
bool preserves_lattice(const Lattice& L, const QMat& M);

// ---- Vinberg's algorithm ----

struct VinbergConfig {
    Lattice lattice;
    QVec center{};                 // c with c^2 > 0
    std::vector<QVec> height0;     // accepted roots orthogonal to c
    Q max_height = 0;
    std::size_t max_roots = 200;
};

// Default center and height-0 roots for a standard form.
VinbergConfig default_config(const LatticeForm& f, const Q& max_height);

struct RootInfo {
    QVec v{};
    Q square;  // v^2
    Q height;  // 2 (v, c)^2 / (-v^2)
};

// Admissible heights in increasing order up to `bound`.
std::vector<Q> admissible_heights(const VinbergConfig& cfg, const Q& bound);

// Roots of exactly height h with (v, c) > 0, sorted lexicographically.
// At h = 0 both signs of every root orthogonal to c are returned.
// Throws std::invalid_argument when h is not an admissible height and
// std::overflow_error when the search leaves 128-bit range.
std::vector<RootInfo> candidate_roots(const VinbergConfig& cfg, const Q& h);

bool vinberg_accept(const Lattice& L, const std::vector<RootInfo>& accepted, const QVec& v);

struct VinbergRun {
    std::vector<RootInfo> accepted;  // in acceptance order
    bool closed = false;             // polygon of finite area
    Q reached_height = 0;            // every height up to this one is complete
    bool root_limit = false;
};

VinbergRun run_vinberg(const VinbergConfig& cfg);

// Simple roots of the finite root system orthogonal to c, for the chamber
// in which a root is positive when its last nonzero coordinate is.
std::vector<QVec> height0_roots(const Lattice& L, const QVec& center);

// Accepted roots ordered by the position of their sides along the boundary,
// counterclockwise around an interior point of the polygon.
std::vector<RootInfo> order_chain(const Lattice& L, const QVec& center, const std::vector<RootInfo>& roots);

// Every pair of cyclically adjacent sides meets at a vertex of the polygon
// (possibly at infinity). Needs at least three roots.
bool finite_area(const Lattice& L, const QVec& center, const std::vector<RootInfo>& roots);

enum class Reflectivity { FinitePolygon, HyperbolicPeriodic, Inconclusive };
std::string to_string(Reflectivity r);

struct Classification {
    Reflectivity kind = Reflectivity::Inconclusive;
    std::vector<RootInfo> chain;
    std::vector<QMat> generators;  // lattice isometries preserving the root set
    std::optional<QVec> rho;       // fixed axis vector, rho^2 < 0
    std::string note;
};

struct ClassifyBudget {
    Q max_height = 0;  // 0: default_max_height(f)
    std::size_t max_roots = 200;
};

Q default_max_height(const LatticeForm& f);

// Tries the budgets 10^6, 10^7, ... below max_height and then max_height,
// returning the first result that is not inconclusive.
Classification classify_reflectivity(const LatticeForm& f, const ClassifyBudget& budget = {});

}  // namespace hl
