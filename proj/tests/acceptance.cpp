// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. Every tolerance and budget is pinned here, not configurable.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "gammadeg/calculus.hpp"
#include "gammadeg/cohomology.hpp"
#include "gammadeg/degree.hpp"
#include "gammadeg/oracle.hpp"

using namespace gammadeg;

namespace {

int failures = 0;

void criterion(int id, const std::string& label, const std::function<bool(std::string&)>& body) {
    std::string detail;
    bool ok = false;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s  criterion %2d: %s (%.2fs)%s%s\n", ok ? "PASS" : "FAIL", id, label.c_str(),
                secs, detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

bool power_of_two(long long v) { return v > 0 && (v & (v - 1)) == 0; }

} // namespace

int main() {
    const Catalog cat = builtin_catalog();

    criterion(1, "sphere degrees: 2 on odd S(n), 0 on even, n=2..11", [&](std::string& why) {
        for (int n = 2; n <= 11; ++n) {
            const long long got = mapping_degree(cat.get("S(" + std::to_string(n) + ")")).degree;
            const long long want = (n % 2 == 1) ? 2 : 0;
            if (got != want) {
                why = "S(" + std::to_string(n) + ") = " + std::to_string(got);
                return false;
            }
        }
        return true;
    });

    criterion(2, "torus degrees: 2^r for T(r), r=0..8", [&](std::string& why) {
        for (int r = 0; r <= 8; ++r) {
            const long long got = mapping_degree(cat.get("T(" + std::to_string(r) + ")")).degree;
            if (got != (1LL << r)) {
                why = "T(" + std::to_string(r) + ") = " + std::to_string(got);
                return false;
            }
        }
        return true;
    });

    criterion(3, "UO degrees: 2^(m+1) for n=2m+1, 0 for even n, n=2..9", [&](std::string& why) {
        for (int n = 2; n <= 9; ++n) {
            const long long got = mapping_degree(cat.get("UO(" + std::to_string(n) + ")")).degree;
            const long long want = (n % 2 == 1) ? (2LL << (n / 2)) : 0;
            if (got != want) {
                why = "UO(" + std::to_string(n) + ") = " + std::to_string(got) +
                      ", want " + std::to_string(want);
                return false;
            }
        }
        return true;
    });

    criterion(4, "covering calculus: T(1) x AI(n) = UO(n), AI(2m+1) = 2^m", [&](std::string& why) {
        for (int n = 3; n <= 9; ++n) {
            const std::string ai = "AI(" + std::to_string(n) + ")";
            const long long prod = evaluate_expression("T(1) x " + ai, cat).degree;
            const long long uo = mapping_degree(cat.get("UO(" + std::to_string(n) + ")")).degree;
            if (prod != uo) {
                why = "T(1) x " + ai + " = " + std::to_string(prod) + " but UO = " +
                      std::to_string(uo);
                return false;
            }
            if (n % 2 == 1) {
                const long long got = mapping_degree(cat.get(ai)).degree;
                if (got != (1LL << (n / 2))) {
                    why = ai + " = " + std::to_string(got);
                    return false;
                }
            }
        }
        return true;
    });

    criterion(5, "even-multiplicity spaces: AII/E6F4/group degrees, fast path = full",
              [&](std::string& why) {
        struct Want {
            const char* name;
            long long degree;
        };
        for (const Want w : {Want{"AII(3)", 4}, Want{"AII(4)", 8}, Want{"E6F4", 4}, Want{"SU(2)", 2},
                             Want{"SU(3)", 4}, Want{"SU(4)", 8}}) {
            const auto& d = cat.get(w.name);
            const auto fast = mapping_degree(d);
            EngineOptions o;
            o.force_full = true;
            const auto full = mapping_degree(d, 0, o);
            if (fast.degree != w.degree || !fast.fastpath_used) {
                why = std::string(w.name) + " fast = " + std::to_string(fast.degree);
                return false;
            }
            if (full.degree != w.degree || full.fastpath_used) {
                why = std::string(w.name) + " full = " + std::to_string(full.degree);
                return false;
            }
            if (d.family == Family::GroupType && w.degree != (1LL << d.rank)) {
                why = std::string(w.name) + " != 2^rank";
                return false;
            }
        }
        return true;
    });

    criterion(6, "classification: free cohomology iff nonzero degree, all entries",
              [&](std::string& why) {
        const auto rep = verify_classification(cat);
        if (!rep.all_agree()) {
            for (const auto& row : rep.rows)
                if (!row.agrees) {
                    why = row.name + " disagrees";
                    return false;
                }
        }
        return rep.all_agree() && !rep.rows.empty();
    });

    criterion(7, "every degree is 0 or a power of two, 100 seeds per entry",
              [&](std::string& why) {
        for (const auto& e : cat.entries)
            for (std::uint64_t s = 0; s < 100; ++s) {
                const long long got = mapping_degree(e, s).degree;
                if (got != 0 && !power_of_two(got)) {
                    why = e.name + " seed " + std::to_string(s) + " = " + std::to_string(got);
                    return false;
                }
            }
        return true;
    });

    criterion(8, "degree is independent of the generic target, 100 seeds per entry",
              [&](std::string& why) {
        for (const auto& e : cat.entries) {
            const long long base = mapping_degree(e, 0).degree;
            for (std::uint64_t s = 1; s < 100; ++s)
                if (mapping_degree(e, s).degree != base) {
                    why = e.name + " differs at seed " + std::to_string(s);
                    return false;
                }
        }
        return true;
    });

    criterion(9, "oracles: floating-point sphere model (n=2..7), naive recomputation (rank<=8)",
              [&](std::string& why) {
        for (int n = 2; n <= 7; ++n) {
            const long long exact = mapping_degree(cat.get("S(" + std::to_string(n) + ")")).degree;
            if (oracle::sphere_degree(n) != exact) {
                why = "sphere model disagrees at n=" + std::to_string(n);
                return false;
            }
        }
        for (const auto& e : cat.entries) {
            if (e.rank > 8) continue;
            if (oracle::naive_degree(e) != mapping_degree(e).degree) {
                why = "naive recomputation disagrees on " + e.name;
                return false;
            }
        }
        return true;
    });

    criterion(10, "data checks: dimension identity holds, +-1 multiplicity faults are caught",
              [&](std::string& why) {
        if (!validate(cat).empty()) {
            why = "builtin catalog fails validation";
            return false;
        }
        for (const auto& e : cat.entries) {
            long long mult_sum = 0;
            for (const auto& rt : e.system.roots) mult_sum += rt.multiplicity;
            if (e.dimension != e.rank + mult_sum) {
                why = e.name + " breaks the dimension identity";
                return false;
            }
            if (e.system.roots.empty()) continue;
            for (const int bump : {+1, -1}) {
                SpaceDescriptor faulty = e;
                faulty.system.roots[0].multiplicity += bump;
                if (validate(faulty).empty()) {
                    why = e.name + ": multiplicity fault " + std::to_string(bump) +
                          " passed validation";
                    return false;
                }
                try {
                    mapping_degree(faulty);
                    why = e.name + ": engine accepted a faulty descriptor";
                    return false;
                } catch (const DataError&) {
                    // expected: the fault is refused, not silently computed
                }
            }
        }
        return true;
    });

    criterion(11, "UO(21): full 2^21 enumeration under 60s, identical on 1..8 threads",
              [&](std::string& why) {
        const auto d = make_uo(21);
        long long ref = 0;
        for (int th = 1; th <= 8; ++th) {
            EngineOptions o;
            o.threads = th;
            const auto t0 = std::chrono::steady_clock::now();
            const auto rep = mapping_degree(d, 0, o);
            const double secs =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            if (secs >= 60.0) {
                why = "threads=" + std::to_string(th) + " took " + std::to_string(secs) + "s";
                return false;
            }
            if (th == 1) {
                ref = rep.degree;
                if (ref != (2LL << 10)) { // n = 2*10+1
                    why = "degree = " + std::to_string(ref);
                    return false;
                }
            } else if (rep.degree != ref) {
                why = "threads=" + std::to_string(th) + " changed the result";
                return false;
            }
        }
        return true;
    });

    if (failures == 0) {
        std::printf("acceptance: all 11 criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d criterion(s) failed\n", failures);
    return 1;
}
