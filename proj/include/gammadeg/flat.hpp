#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "gammadeg/rational.hpp"

namespace gammadeg {

// Tangent vector in the flat, coordinates in pi-units: a stored vector x
// stands for the tangent vector pi*x at the fixed origin.
struct FlatVector {
    std::vector<Rational> coords;

    FlatVector() = default;
    explicit FlatVector(std::vector<Rational> c) : coords(std::move(c)) {}

    std::size_t size() const { return coords.size(); }
    const Rational& operator[](std::size_t i) const { return coords[i]; }
    Rational& operator[](std::size_t i) { return coords[i]; }

    friend bool operator==(const FlatVector&, const FlatVector&) = default;
};

inline FlatVector operator+(const FlatVector& a, const FlatVector& b) {
    if (a.size() != b.size()) throw DimensionError("vector addition: length mismatch");
    FlatVector r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

inline FlatVector operator-(const FlatVector& a, const FlatVector& b) {
    if (a.size() != b.size()) throw DimensionError("vector subtraction: length mismatch");
    FlatVector r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

inline FlatVector operator*(const Rational& s, const FlatVector& v) {
    FlatVector r = v;
    for (auto& c : r.coords) c *= s;
    return r;
}

// A root representative alpha; the curvature eigenvalue is lambda = alpha^2.
// In pi-units the windows lambda < pi^2/4 and lambda < pi^2 become
// |alpha(x)| < 1/2 and |alpha(x)| < 1.
struct LinearForm {
    std::vector<Rational> coeffs;

    LinearForm() = default;
    explicit LinearForm(std::vector<Rational> c) : coeffs(std::move(c)) {}

    std::size_t size() const { return coeffs.size(); }
    bool is_zero() const {
        for (const auto& c : coeffs)
            if (!c.is_zero()) return false;
        return true;
    }

    friend bool operator==(const LinearForm&, const LinearForm&) = default;
};

inline LinearForm operator-(const LinearForm& f) {
    LinearForm r = f;
    for (auto& c : r.coeffs) c = -c;
    return r;
}

// Unit lattice: integer span of the generators B_1..B_r, in pi-units.
struct Lattice {
    std::vector<FlatVector> generators;

    std::size_t rank() const { return generators.size(); }

    friend bool operator==(const Lattice&, const Lattice&) = default;
};

inline Rational evaluate(const LinearForm& form, const FlatVector& x) {
    if (form.size() != x.size())
        throw DimensionError("evaluate: form has length " + std::to_string(form.size()) +
                             ", vector has length " + std::to_string(x.size()));
    Rational acc;
    for (std::size_t i = 0; i < x.size(); ++i) acc += form.coeffs[i] * x[i];
    return acc;
}

// Where |alpha(x)| sits relative to the regularity thresholds 1/2 and 1.
enum class Band { Zero, Inner, Half, Outer, Beyond };

inline const char* band_name(Band b) {
    switch (b) {
        case Band::Zero: return "Zero";
        case Band::Inner: return "Inner";
        case Band::Half: return "Half";
        case Band::Outer: return "Outer";
        case Band::Beyond: return "Beyond";
    }
    return "?";
}

inline Band classify_against_thresholds(const LinearForm& form, const FlatVector& x) {
    const Rational v = evaluate(form, x).abs();
    static const Rational half(1, 2);
    static const Rational one(1);
    if (v.is_zero()) return Band::Zero;
    if (v < half) return Band::Inner;
    if (v == half) return Band::Half;
    if (v < one) return Band::Outer;
    return Band::Beyond;
}

inline constexpr int kDefaultRankLimit = 26;

// All 2^r coset points x_delta = y_half + 1/2 * sum delta_j B_j, delta running
// through {0,1}^r with delta_1 as the fastest-changing bit.
inline std::vector<FlatVector> coset_representatives(const FlatVector& y_half,
                                                     const Lattice& lattice,
                                                     int rank_limit = kDefaultRankLimit) {
    const std::size_t r = lattice.rank();
    if (r > static_cast<std::size_t>(rank_limit))
        throw CapacityError("rank " + std::to_string(r) + " exceeds enumeration limit " +
                            std::to_string(rank_limit));
    static const Rational half(1, 2);
    std::vector<FlatVector> halved;
    halved.reserve(r);
    for (const auto& g : lattice.generators) halved.push_back(half * g);

    std::vector<FlatVector> out;
    out.reserve(std::size_t(1) << r);
    for (std::size_t bits = 0; bits < (std::size_t(1) << r); ++bits) {
        FlatVector x = y_half;
        for (std::size_t j = 0; j < r; ++j)
            if (bits >> j & 1) x = x + halved[j];
        out.push_back(std::move(x));
    }
    return out;
}

// Rational row reduction; true iff the generators are linearly independent.
inline bool linearly_independent(const std::vector<FlatVector>& vectors) {
    if (vectors.empty()) return true;
    std::vector<std::vector<Rational>> m;
    for (const auto& v : vectors) m.push_back(v.coords);
    const std::size_t rows = m.size(), cols = m[0].size();
    for (const auto& row : m)
        if (row.size() != cols) return false;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t pivot = rank;
        while (pivot < rows && m[pivot][c].is_zero()) ++pivot;
        if (pivot == rows) continue;
        std::swap(m[rank], m[pivot]);
        for (std::size_t i = rank + 1; i < rows; ++i) {
            if (m[i][c].is_zero()) continue;
            const Rational f = m[i][c] / m[rank][c];
            for (std::size_t k = c; k < cols; ++k) m[i][k] -= f * m[rank][k];
        }
        ++rank;
    }
    return rank == rows;
}

} // namespace gammadeg
