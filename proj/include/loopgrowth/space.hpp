#pragma once

#include "loopgrowth/series.hpp"

#include <map>
#include <memory>
#include <string>
#include <string_view>

namespace loopgrowth {

/// Immutable AST of a space built from spheres S^n (n >= 2) by wedge,
/// product, smash and suspension. Copies share structure.
class SpaceExpr {
public:
    enum class Kind { Sphere, Wedge, Product, Smash, Susp };

    static SpaceExpr sphere(int n);
    static SpaceExpr wedge(SpaceExpr left, SpaceExpr right);
    static SpaceExpr product(SpaceExpr left, SpaceExpr right);
    static SpaceExpr smash(SpaceExpr left, SpaceExpr right);
    static SpaceExpr susp(SpaceExpr inner);

    Kind kind() const;
    int sphere_dim() const;  // Sphere only
    const SpaceExpr& left() const;   // binary nodes
    const SpaceExpr& right() const;  // binary nodes
    const SpaceExpr& inner() const;  // Susp only

    bool operator==(const SpaceExpr& other) const;

private:
    struct Node;
    SpaceExpr() = default;
    explicit SpaceExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    std::shared_ptr<const Node> node_;
};

/// Grammar (ASCII, whitespace-insensitive, precedence ^ > x > v, all
/// left-associative):
///   expr := prod { "v" prod } ; prod := smash { "x" smash } ;
///   smash := atom { "^" atom } ;
///   atom := "S" integer | "Susp" "(" expr ")" | "(" expr ")"
SpaceExpr parse(std::string_view text);

/// Canonical form with minimal parentheses; parse(to_string(x)) == x.
std::string to_string(const SpaceExpr& x);

/// Unreduced rational homology Hilbert series (a polynomial).
RationalGF homology_gf(const SpaceExpr& x);
IntPolynomial reduced_homology(const SpaceExpr& x);

struct SpaceProfile {
    int connectivity = 0;  // pi_i = 0 for i <= connectivity
    int dimension = 0;     // top cell
    bool rationally_nontrivial = false;
};

SpaceProfile profile(const SpaceExpr& x);

/// Lowest degree with nonzero reduced rational homology (0 if none).
int least_reduced_degree(const SpaceExpr& x);

/// True when the expression is rationally a suspension: spheres, Susp
/// nodes, wedges of suspensions, and smashes with a suspension factor.
bool is_rational_suspension(const SpaceExpr& x);

/// Sphere dimension -> multiplicity.
using SphereList = std::map<int, Integer>;

/// Rational wedge-of-spheres decomposition; throws for non-suspensions.
SphereList wedge_decomposition(const SpaceExpr& x);

}  // namespace loopgrowth
