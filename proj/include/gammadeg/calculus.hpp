#pragma once

#include <cctype>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "gammadeg/cohomology.hpp"
#include "gammadeg/degree.hpp"

namespace gammadeg {

// Expression tree over catalog atoms: Riemannian products and finite covers.
// CoverOf(target, known_factor) stands for "target is finitely covered by
// known_factor x remainder"; the node's value is the remainder's degree.
struct SpaceExpression;
using ExprPtr = std::shared_ptr<const SpaceExpression>;

struct AtomNode {
    std::string name; // rendered catalog name, e.g. "UO(5)"
};
struct ProductNode {
    std::vector<ExprPtr> factors;
};
struct CoverNode {
    ExprPtr target;
    ExprPtr known_factor;
};

struct SpaceExpression {
    std::variant<AtomNode, ProductNode, CoverNode> node;
};

inline ExprPtr make_atom(std::string name) {
    return std::make_shared<SpaceExpression>(SpaceExpression{AtomNode{std::move(name)}});
}
inline ExprPtr make_product(std::vector<ExprPtr> factors) {
    return std::make_shared<SpaceExpression>(SpaceExpression{ProductNode{std::move(factors)}});
}
inline ExprPtr make_cover(ExprPtr target, ExprPtr known_factor) {
    return std::make_shared<SpaceExpression>(
        SpaceExpression{CoverNode{std::move(target), std::move(known_factor)}});
}

inline std::string render(const SpaceExpression& e) {
    if (const auto* a = std::get_if<AtomNode>(&e.node)) return a->name;
    if (const auto* p = std::get_if<ProductNode>(&e.node)) {
        std::string s;
        for (std::size_t i = 0; i < p->factors.size(); ++i) {
            if (i) s += " x ";
            s += render(*p->factors[i]);
        }
        return s;
    }
    const auto& c = std::get<CoverNode>(e.node);
    return "cover(" + render(*c.target) + " / " + render(*c.known_factor) + ")";
}

// Grammar: atom := NAME '(' ints ')' | NAME ; expr := atom (' x ' atom)*
inline ExprPtr parse_expression(const std::string& text) {
    std::vector<ExprPtr> atoms;
    std::size_t pos = 0;
    const auto skip_ws = [&] {
        while (pos < text.size() && text[pos] == ' ') ++pos;
    };
    const auto parse_atom = [&]() -> ExprPtr {
        skip_ws();
        const std::size_t start = pos;
        while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) ||
                                     text[pos] == '_'))
            ++pos;
        if (pos == start)
            throw ParseError("expected a space name", static_cast<long>(start));
        std::string name = text.substr(start, pos - start);
        if (name == "x") // the product separator is not a space name
            throw ParseError("expected a space name", static_cast<long>(start));
        if (pos < text.size() && text[pos] == '(') {
            const std::size_t close = text.find(')', pos);
            if (close == std::string::npos)
                throw ParseError("missing ')'", static_cast<long>(pos));
            const std::string inside = text.substr(pos + 1, close - pos - 1);
            for (char ch : inside)
                if (!std::isdigit(static_cast<unsigned char>(ch)) && ch != ',' && ch != ' ' &&
                    ch != '-')
                    throw ParseError("bad parameter list '" + inside + "'",
                                     static_cast<long>(pos));
            name += "(" + inside + ")";
            pos = close + 1;
        }
        return make_atom(std::move(name));
    };

    atoms.push_back(parse_atom());
    for (;;) {
        skip_ws();
        if (pos == text.size()) break;
        if (text.compare(pos, 1, "x") == 0 &&
            (pos + 1 == text.size() || text[pos + 1] == ' ')) {
            ++pos;
            atoms.push_back(parse_atom());
        } else {
            throw ParseError("expected 'x' between factors", static_cast<long>(pos));
        }
    }
    if (atoms.size() == 1) return atoms[0];
    return make_product(std::move(atoms));
}

// deg(theta_1 x theta_2) = deg(theta_1) deg(theta_2); empty product is 1.
inline long long product_degree(const std::vector<long long>& factors) {
    long long acc = 1;
    for (long long f : factors) acc *= f;
    return acc;
}

// Degrees agree across an orientation-preserving Riemannian covering.
inline long long degree_via_cover(long long cover_degree) { return cover_degree; }

namespace detail {

struct ExprValue {
    long long degree = 1;
    int rank = 0;
    int dimension = 0;
};

inline ExprValue evaluate_node(const SpaceExpression& e, const Catalog& catalog,
                               std::uint64_t seed, const EngineOptions& opts) {
    if (const auto* a = std::get_if<AtomNode>(&e.node)) {
        const SpaceDescriptor& d = catalog.get(a->name);
        const DegreeReport rep = mapping_degree(d, seed, opts);
        return {rep.degree, d.rank, d.dimension};
    }
    if (const auto* p = std::get_if<ProductNode>(&e.node)) {
        ExprValue acc;
        for (const auto& f : p->factors) {
            const ExprValue v = evaluate_node(*f, catalog, seed, opts);
            acc.degree *= v.degree;
            acc.rank += v.rank;
            acc.dimension += v.dimension;
        }
        return acc;
    }
    const auto& c = std::get<CoverNode>(e.node);
    const ExprValue tv = evaluate_node(*c.target, catalog, seed, opts);
    const ExprValue fv = evaluate_node(*c.known_factor, catalog, seed, opts);
    // deg(cover) = deg(factor) * deg(remainder): divide out exactly
    const long long upstairs = degree_via_cover(tv.degree);
    if (fv.degree == 0 || upstairs % fv.degree != 0)
        throw NonDivisibleCover("cover degree " + std::to_string(upstairs) +
                                " not divisible by factor degree " +
                                std::to_string(fv.degree));
    return {upstairs / fv.degree, tv.rank - fv.rank, tv.dimension - fv.dimension};
}

} // namespace detail

inline DegreeReport evaluate_expression(const SpaceExpression& expr, const Catalog& catalog,
                                        std::uint64_t seed = 0, const EngineOptions& opts = {}) {
    // Witness collection only makes sense for a single atom.
    if (const auto* a = std::get_if<AtomNode>(&expr.node))
        return mapping_degree(catalog.get(a->name), seed, opts);
    EngineOptions inner = opts;
    inner.collect_preimages = false;
    const detail::ExprValue v = detail::evaluate_node(expr, catalog, seed, inner);
    DegreeReport rep;
    rep.space = render(expr);
    rep.degree = v.degree;
    rep.parity_sum = v.degree;
    rep.rank = v.rank;
    rep.theta_p_degree = (v.dimension % 2 == 0) ? 1 : -1;
    rep.fastpath_used = false;
    return rep;
}

inline DegreeReport evaluate_expression(const std::string& text, const Catalog& catalog,
                                        std::uint64_t seed = 0, const EngineOptions& opts = {}) {
    return evaluate_expression(*parse_expression(text), catalog, seed, opts);
}

// Kuenneth: a product has free rational cohomology iff every factor does.
inline bool free_cohomology(const SpaceExpression& expr, const Catalog& catalog) {
    if (const auto* a = std::get_if<AtomNode>(&expr.node))
        return free_cohomology(catalog.get(a->name));
    if (const auto* p = std::get_if<ProductNode>(&expr.node)) {
        for (const auto& f : p->factors)
            if (!free_cohomology(*f, catalog)) return false;
        return true;
    }
    throw Error("freeness of a cover is not determined by its factors");
}

} // namespace gammadeg
