#pragma once

#include "gammadeg/degree.hpp"

namespace gammadeg {

struct CohomologyMeta {
    int rho = 0;
    std::optional<long long> total_dimension;
    bool free = false;
};

// rank(G) = rank(K) + rank(P), in its implementable form: every restricted
// root multiplicity is even. Vacuously true for tori and points.
inline bool splitting_rank(const SpaceDescriptor& d) {
    for (const auto& root : d.system.roots)
        if (root.multiplicity % 2 != 0) return false;
    return true;
}

// Whether H^*(P;Q) is a free algebra, resolved from the descriptor's rule.
// Inner spaces of positive dimension have cohomology concentrated in even
// degrees and are never free over odd generators.
inline bool free_cohomology(const SpaceDescriptor& d) {
    bool result;
    switch (d.free_rule) {
        case FreeRule::SplittingRank: result = splitting_rank(d); break;
        case FreeRule::AIOdd:
            if (d.params.empty()) throw DataError("'" + d.name + "': ai_odd rule needs n");
            result = d.params[0] % 2 == 1;
            break;
        case FreeRule::TorusOrPoint: result = true; break;
        case FreeRule::ExplicitTrue: result = true; break;
        case FreeRule::ExplicitFalse: result = false; break;
        default: throw DataError("unknown free rule");
    }
    if (d.family == Family::Custom && d.free_rule != FreeRule::ExplicitTrue &&
        d.free_rule != FreeRule::ExplicitFalse)
        throw DataError("'" + d.name + "': custom entries must state freeness explicitly");
    if (d.parity == ParityType::Inner && d.dimension > 0 && result)
        throw DataError("'" + d.name + "': inner parity contradicts free cohomology");
    if (result && d.rho && d.total_dim && *d.total_dim != (1LL << *d.rho))
        throw DataError("'" + d.name + "': dim H^* != 2^rho");
    return result;
}

inline CohomologyMeta cohomology_meta(const SpaceDescriptor& d) {
    CohomologyMeta m;
    m.free = free_cohomology(d);
    m.rho = d.rho.value_or(0);
    m.total_dimension = d.total_dim;
    return m;
}

struct ClassificationRow {
    std::string name;
    long long degree = 0;
    bool is_gamma = false;
    bool free = false;
    bool agrees = false;
};

struct ClassificationReport {
    std::vector<ClassificationRow> rows;
    int agree_count = 0;
    int disagree_count = 0;
    bool all_agree() const { return disagree_count == 0; }
};

// Machine check of the classification: over every connected-isotropy entry,
// (deg(theta) != 0) must coincide with freeness of the rational cohomology.
inline ClassificationReport verify_classification(const Catalog& catalog, std::uint64_t seed = 0,
                                                  const EngineOptions& opts = {}) {
    ClassificationReport rep;
    for (const auto& entry : catalog.entries) {
        if (!entry.connected_isotropy) continue;
        ClassificationRow row;
        row.name = entry.name;
        row.degree = mapping_degree(entry, seed, opts).degree;
        row.is_gamma = row.degree != 0;
        row.free = free_cohomology(entry);
        row.agrees = row.is_gamma == row.free;
        (row.agrees ? rep.agree_count : rep.disagree_count)++;
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

} // namespace gammadeg
