#pragma once

#include <json.hpp>

#include "gammadeg/cohomology.hpp"
#include "gammadeg/degree.hpp"

namespace gammadeg {

// Stable JSON shape:
// {space, degree, rank, fastpath, theta_p_degree, y: ["p/q",...], attempts,
//  preimages?: [{delta, v, epsilon, sign}]}
inline nlohmann::json to_json(const DegreeReport& rep, bool verbose = false) {
    nlohmann::json j;
    j["space"] = rep.space;
    j["degree"] = rep.degree;
    j["rank"] = rep.rank;
    j["fastpath"] = rep.fastpath_used;
    j["theta_p_degree"] = rep.theta_p_degree;
    nlohmann::json y = nlohmann::json::array();
    for (const auto& c : rep.generic_point.y.coords) y.push_back(c.str());
    j["y"] = y;
    j["attempts"] = rep.generic_point.attempts;
    if (rep.parity_sum != rep.degree) j["parity_sum"] = rep.parity_sum;
    if (!rep.caveat.empty()) j["caveat"] = rep.caveat;
    if (verbose && !rep.preimages.empty()) {
        nlohmann::json ps = nlohmann::json::array();
        for (const auto& p : rep.preimages) {
            nlohmann::json pj;
            std::string bits;
            for (auto b : p.delta) bits += b ? '1' : '0';
            pj["delta"] = bits;
            nlohmann::json v = nlohmann::json::array();
            for (const auto& c : p.v.coords) v.push_back(c.str());
            pj["v"] = v;
            pj["epsilon"] = p.epsilon;
            pj["sign"] = p.sign;
            ps.push_back(std::move(pj));
        }
        j["preimages"] = ps;
    }
    return j;
}

inline nlohmann::json to_json(const ClassificationReport& rep) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : rep.rows) {
        rows.push_back({{"name", r.name},
                        {"degree", r.degree},
                        {"is_gamma", r.is_gamma},
                        {"free", r.free},
                        {"agrees", r.agrees}});
    }
    return {{"rows", rows},
            {"agree", rep.agree_count},
            {"disagree", rep.disagree_count},
            {"all_agree", rep.all_agree()}};
}

} // namespace gammadeg
