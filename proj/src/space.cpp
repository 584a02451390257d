#include "loopgrowth/space.hpp"

#include "loopgrowth/error.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace loopgrowth {

struct SpaceExpr::Node {
    Kind kind;
    int n = 0;
    std::array<SpaceExpr, 2> children;
};

namespace {

constexpr int kMaxSphereDim = 100000;

}  // namespace

SpaceExpr SpaceExpr::sphere(int n)
{
    if (n < 2)
        throw validation_error("spheres must be simply connected (n ≥ 2)");
    return SpaceExpr(std::make_shared<const Node>(Node{Kind::Sphere, n, {}}));
}

SpaceExpr SpaceExpr::wedge(SpaceExpr left, SpaceExpr right)
{
    return SpaceExpr(std::make_shared<const Node>(Node{Kind::Wedge, 0, {std::move(left), std::move(right)}}));
}

SpaceExpr SpaceExpr::product(SpaceExpr left, SpaceExpr right)
{
    return SpaceExpr(std::make_shared<const Node>(Node{Kind::Product, 0, {std::move(left), std::move(right)}}));
}

SpaceExpr SpaceExpr::smash(SpaceExpr left, SpaceExpr right)
{
    return SpaceExpr(std::make_shared<const Node>(Node{Kind::Smash, 0, {std::move(left), std::move(right)}}));
}

SpaceExpr SpaceExpr::susp(SpaceExpr inner)
{
    return SpaceExpr(std::make_shared<const Node>(Node{Kind::Susp, 0, {std::move(inner), SpaceExpr{}}}));
}

SpaceExpr::Kind SpaceExpr::kind() const { return node_->kind; }
int SpaceExpr::sphere_dim() const { return node_->n; }
const SpaceExpr& SpaceExpr::left() const { return node_->children[0]; }
const SpaceExpr& SpaceExpr::right() const { return node_->children[1]; }
const SpaceExpr& SpaceExpr::inner() const { return node_->children[0]; }

bool SpaceExpr::operator==(const SpaceExpr& other) const
{
    if (node_ == other.node_)
        return true;
    if (!node_ || !other.node_ || node_->kind != other.node_->kind)
        return false;
    switch (node_->kind) {
    case Kind::Sphere: return node_->n == other.node_->n;
    case Kind::Susp: return inner() == other.inner();
    default: return left() == other.left() && right() == other.right();
    }
}

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    SpaceExpr parse_all()
    {
        SpaceExpr e = wedge();
        skip_ws();
        if (pos_ != text_.size())
            fail("unexpected character", {"v", "x", "^", "end of input"});
        return e;
    }

private:
    SpaceExpr wedge()
    {
        SpaceExpr e = prod();
        while (accept('v'))
            e = SpaceExpr::wedge(std::move(e), prod());
        return e;
    }

    SpaceExpr prod()
    {
        SpaceExpr e = smash();
        while (accept('x'))
            e = SpaceExpr::product(std::move(e), smash());
        return e;
    }

    SpaceExpr smash()
    {
        SpaceExpr e = atom();
        while (accept('^'))
            e = SpaceExpr::smash(std::move(e), atom());
        return e;
    }

    SpaceExpr atom()
    {
        skip_ws();
        if (text_.substr(pos_).starts_with("Susp")) {
            pos_ += 4;
            if (!accept('('))
                fail("expected '(' after Susp", {"("});
            SpaceExpr inner = wedge();
            if (!accept(')'))
                fail("unbalanced parenthesis", {"v", "x", "^", ")"});
            return SpaceExpr::susp(std::move(inner));
        }
        if (accept('S')) {
            skip_ws();
            const std::size_t start = pos_;
            long value = 0;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                value = value * 10 + (text_[pos_] - '0');
                if (value > kMaxSphereDim)
                    throw ParseError("sphere dimension too large", start);
                ++pos_;
            }
            if (pos_ == start)
                fail("expected sphere dimension", {"integer"});
            if (value < 2)
                throw ParseError("spheres must be simply connected (n ≥ 2)", start);
            return SpaceExpr::sphere(static_cast<int>(value));
        }
        if (accept('(')) {
            SpaceExpr inner = wedge();
            if (!accept(')'))
                fail("unbalanced parenthesis", {"v", "x", "^", ")"});
            return inner;
        }
        fail("expected a space", {"S<integer>", "Susp(", "("});
    }

    void skip_ws()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool accept(char c)
    {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& what, std::vector<std::string> expected)
    {
        skip_ws();
        throw ParseError(what + " at offset " + std::to_string(pos_), pos_, std::move(expected));
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

int precedence(SpaceExpr::Kind k)
{
    switch (k) {
    case SpaceExpr::Kind::Wedge: return 1;
    case SpaceExpr::Kind::Product: return 2;
    case SpaceExpr::Kind::Smash: return 3;
    default: return 4;
    }
}

void print(const SpaceExpr& x, std::string& out)
{
    using K = SpaceExpr::Kind;
    switch (x.kind()) {
    case K::Sphere:
        out += 'S';
        out += std::to_string(x.sphere_dim());
        return;
    case K::Susp:
        out += "Susp(";
        print(x.inner(), out);
        out += ')';
        return;
    default: break;
    }
    const int p = precedence(x.kind());
    const char* op = x.kind() == K::Wedge ? " v " : x.kind() == K::Product ? " x " : " ^ ";
    const bool lparen = precedence(x.left().kind()) < p;
    const bool rparen = precedence(x.right().kind()) <= p;
    if (lparen)
        out += '(';
    print(x.left(), out);
    if (lparen)
        out += ')';
    out += op;
    if (rparen)
        out += '(';
    print(x.right(), out);
    if (rparen)
        out += ')';
}

}  // namespace

SpaceExpr parse(std::string_view text) { return Parser(text).parse_all(); }

std::string to_string(const SpaceExpr& x)
{
    std::string out;
    print(x, out);
    return out;
}

IntPolynomial reduced_homology(const SpaceExpr& x)
{
    using K = SpaceExpr::Kind;
    switch (x.kind()) {
    case K::Sphere: return IntPolynomial::monomial(1, static_cast<std::size_t>(x.sphere_dim()));
    case K::Wedge: return reduced_homology(x.left()) + reduced_homology(x.right());
    case K::Product: {
        IntPolynomial l = reduced_homology(x.left());
        IntPolynomial r = reduced_homology(x.right());
        return l + r + l * r;
    }
    case K::Smash: return reduced_homology(x.left()) * reduced_homology(x.right());
    case K::Susp: return reduced_homology(x.inner()).shifted(1);
    }
    return {};
}

RationalGF homology_gf(const SpaceExpr& x) { return RationalGF::polynomial(IntPolynomial{1} + reduced_homology(x)); }

SpaceProfile profile(const SpaceExpr& x)
{
    using K = SpaceExpr::Kind;
    SpaceProfile out;
    switch (x.kind()) {
    case K::Sphere:
        out.connectivity = x.sphere_dim() - 1;
        out.dimension = x.sphere_dim();
        break;
    case K::Wedge:
    case K::Product: {
        SpaceProfile l = profile(x.left());
        SpaceProfile r = profile(x.right());
        out.connectivity = std::min(l.connectivity, r.connectivity);
        out.dimension = x.kind() == K::Wedge ? std::max(l.dimension, r.dimension) : l.dimension + r.dimension;
        break;
    }
    case K::Smash: {
        SpaceProfile l = profile(x.left());
        SpaceProfile r = profile(x.right());
        out.connectivity = l.connectivity + r.connectivity + 1;
        out.dimension = l.dimension + r.dimension;
        break;
    }
    case K::Susp: {
        SpaceProfile in = profile(x.inner());
        out.connectivity = in.connectivity + 1;
        out.dimension = in.dimension + 1;
        break;
    }
    }
    out.rationally_nontrivial = !reduced_homology(x).is_zero();
    return out;
}

int least_reduced_degree(const SpaceExpr& x)
{
    IntPolynomial r = reduced_homology(x);
    for (int i = 0; i <= r.degree(); ++i)
        if (r[static_cast<std::size_t>(i)] != 0)
            return i;
    return 0;
}

bool is_rational_suspension(const SpaceExpr& x)
{
    using K = SpaceExpr::Kind;
    switch (x.kind()) {
    case K::Sphere:
    case K::Susp: return true;
    case K::Wedge: return is_rational_suspension(x.left()) && is_rational_suspension(x.right());
    case K::Smash: return is_rational_suspension(x.left()) || is_rational_suspension(x.right());
    case K::Product: return false;
    }
    return false;
}

SphereList wedge_decomposition(const SpaceExpr& x)
{
    if (!is_rational_suspension(x))
        throw validation_error("not rationally a wedge of spheres: product detected");
    SphereList out;
    IntPolynomial r = reduced_homology(x);
    for (int i = 0; i <= r.degree(); ++i)
        if (r[static_cast<std::size_t>(i)] != 0)
            out[i] = r[static_cast<std::size_t>(i)];
    return out;
}

}  // namespace loopgrowth
