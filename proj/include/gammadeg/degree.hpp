#pragma once

#include <atomic>
#include <bit>
#include <cstdint>
#include <mutex>
#include <random>
#include <thread>
#include <vector>

#include "gammadeg/catalog.hpp"

namespace gammadeg {

struct GenericPoint {
    FlatVector y;     // target tangent vector Y, pi-units
    int attempts = 0; // candidates rejected before this one

    friend bool operator==(const GenericPoint&, const GenericPoint&) = default;
};

struct PreimageRepresentative {
    std::vector<std::uint8_t> delta; // delta in {0,1}^r
    FlatVector v;                    // geodesic initial vector, all |alpha(v)| < 1
    int epsilon = 0;
    int sign = 1; // (-1)^epsilon
};

struct DegreeReport {
    std::string space;
    long long degree = 0;
    int rank = 0;
    GenericPoint generic_point;
    std::vector<PreimageRepresentative> preimages; // populated only on request
    bool fastpath_used = false;
    int theta_p_degree = 1; // (-1)^dim(P)
    // Raw signed count over the preimage sheet. Equals `degree` except on
    // non-orientable spaces, where no integer degree exists and `degree` is 0.
    long long parity_sum = 0;
    std::string caveat;
};

struct EngineOptions {
    int rank_limit = kDefaultRankLimit;
    int max_attempts = 64;
    int threads = 1;
    bool force_full = false;
    bool collect_preimages = false;
};

// Collecting 2^r witnesses is only sane at small rank.
inline constexpr int kCollectRankLimit = 16;

namespace detail {

// Candidate target vectors. Seed 0 starts from the canonical choice of
// small negative strictly decreasing coordinates, then perturbs by
// tau = 1 - 1/(16+k); any other seed (and late attempts) draws seeded random
// rationals in (-1/8, 0)^r.
inline FlatVector generic_candidate(int rank, std::uint64_t seed, int attempt) {
    std::vector<Rational> y(rank);
    const int scaled_attempts = 8;
    if (seed == 0 && attempt <= scaled_attempts) {
        BigInt p3 = 1;
        for (int i = 0; i < rank; ++i) {
            p3 *= 3;
            y[i] = Rational(BigInt(-1), 4 * p3); // -2 * (1/8) / 3^(i+1)
        }
        if (attempt > 0) {
            const Rational tau(15 + attempt, 16 + attempt);
            for (auto& c : y) c *= tau;
        }
        return FlatVector(std::move(y));
    }
    std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(attempt) + 1);
    constexpr long long q = 104729; // prime, keeps shared denominators modest
    std::uniform_int_distribution<long long> dist(1, q - 1);
    for (auto& c : y) c = Rational(-dist(rng), 8 * q);
    return FlatVector(std::move(y));
}

// Y rejected: some preimage missed the regularity window. Retried internally.
struct RetryTarget {
    std::string reason;
};

} // namespace detail

// Some lattice translate of x with |alpha(v)| < 1 for every root: first x
// itself, then coefficients in {-1,0,1}^r, then {-2..2}^r.
inline FlatVector reduce_representative(const FlatVector& x, const RestrictedRootSystem& system) {
    auto valid = [&](const FlatVector& v) {
        static const Rational one(1);
        for (const auto& root : system.roots)
            if (!(evaluate(root.form, v).abs() < one)) return false;
        return true;
    };
    if (valid(x)) return x;

    const int r = system.rank;
    // The box search is exponential in the rank; past this point a reduction
    // being needed at all signals data the engine is not meant for.
    const int box_rank_limit = 16;
    if (r > box_rank_limit) {
        for (int j = 0; j < r; ++j)
            for (int t : {-1, 1, -2, 2}) {
                const FlatVector v = x + Rational(t) * system.lattice.generators[j];
                if (valid(v)) return v;
            }
        throw NoValidRepresentative("no conjugate-radius translate found (rank " +
                                    std::to_string(r) + ", bounded search)");
    }
    for (const int radius : {1, 2}) {
        const long long base = 2 * radius + 1;
        long long count = 1;
        for (int j = 0; j < r; ++j) count *= base;
        for (long long idx = 0; idx < count; ++idx) {
            long long rest = idx;
            FlatVector v = x;
            bool all_zero = true;
            for (int j = 0; j < r; ++j) {
                const int t = static_cast<int>(rest % base) - radius;
                rest /= base;
                if (t != 0) {
                    all_zero = false;
                    v = v + Rational(t) * system.lattice.generators[j];
                }
            }
            if (all_zero) continue;
            if (valid(v)) return v;
        }
    }
    throw NoValidRepresentative("no lattice translate inside the conjugate radius");
}

// Sign-rule parity: sum of multiplicities over roots with |alpha(v)| > 1/2,
// mod 2. Only odd multiplicities can change the parity, so even ones are
// skipped. Requires a reduced, regular v.
inline int epsilon_of(const FlatVector& v, const RestrictedRootSystem& system) {
    int parity = 0;
    for (const auto& root : system.roots) {
        const Band band = classify_against_thresholds(root.form, v);
        if (band == Band::Zero || band == Band::Half)
            throw RegularityViolation("root value on a regularity threshold (" +
                                      std::string(band_name(band)) + ")");
        if (band == Band::Beyond)
            throw RegularityViolation("representative outside the conjugate radius");
        if (band == Band::Outer && root.multiplicity % 2 == 1) parity ^= 1;
    }
    return parity;
}

namespace detail {

struct EnumerationResult {
    long long sum = 0;
    std::vector<PreimageRepresentative> preimages;
};

// Gray-code enumeration over {0,1}^r with incremental root values. All root
// values are integers over one shared denominator, so the threshold tests in
// the inner loop are integer comparisons. IntT is int64 when the precomputed
// value bound fits, otherwise an arbitrary-precision integer.
template <typename IntT>
class GrayEnumerator {
  public:
    GrayEnumerator(const RestrictedRootSystem& system, const FlatVector& y,
                   const EngineOptions& opts)
        : system_(system), opts_(opts), r_(system.rank) {
        static const Rational half(1, 2);
        y_half_ = half * y;
        for (const auto& g : system.lattice.generators) half_gens_.push_back(half * g);

        const std::size_t nroots = system.roots.size();
        BigInt denom = 1;
        base_.resize(nroots);
        step_.assign(nroots, std::vector<Rational>(r_));
        for (std::size_t a = 0; a < nroots; ++a) {
            base_[a] = evaluate(system.roots[a].form, y_half_);
            denom = lcm(denom, base_[a].den());
            for (int j = 0; j < r_; ++j) {
                step_[a][j] = evaluate(system.roots[a].form, half_gens_[j]);
                denom = lcm(denom, step_[a][j].den());
            }
        }
        denom_big_ = denom;
        odd_mult_.resize(nroots);
        for (std::size_t a = 0; a < nroots; ++a)
            odd_mult_[a] = system.roots[a].multiplicity % 2 == 1;
    }

    // Largest |N| the loop can see: |base| + sum of |steps|, plus one step of
    // slack, all scaled by the shared denominator.
    BigInt value_bound() const {
        BigInt worst = 0;
        for (std::size_t a = 0; a < base_.size(); ++a) {
            Rational m = base_[a].abs();
            Rational widest;
            for (int j = 0; j < r_; ++j) {
                m += step_[a][j].abs();
                if (step_[a][j].abs() > widest) widest = step_[a][j].abs();
            }
            m += widest;
            const BigInt bound = (m.num() * denom_big_) / m.den() + 1;
            if (bound > worst) worst = bound;
        }
        return worst;
    }

    EnumerationResult run() {
        const std::size_t total = std::size_t(1) << r_;
        const std::size_t chunk_size = std::size_t(1) << 14; // fixed: thread-count independent
        const std::size_t chunks = (total + chunk_size - 1) / chunk_size;

        EnumerationResult out;
        if (opts_.collect_preimages) out.preimages.resize(total);

        std::vector<long long> partial(chunks, 0);
        const int nthreads = std::max(1, std::min<int>(opts_.threads, static_cast<int>(chunks)));

        if (nthreads == 1) {
            for (std::size_t ci = 0; ci < chunks; ++ci)
                partial[ci] = run_chunk(ci * chunk_size,
                                        std::min(total, (ci + 1) * chunk_size), out.preimages);
        } else {
            std::atomic<std::size_t> next{0};
            std::atomic<bool> failed{false};
            std::exception_ptr first_error;
            std::mutex err_mu;
            auto worker = [&] {
                for (;;) {
                    const std::size_t ci = next.fetch_add(1);
                    if (ci >= chunks || failed.load(std::memory_order_relaxed)) return;
                    try {
                        partial[ci] = run_chunk(ci * chunk_size,
                                                std::min(total, (ci + 1) * chunk_size),
                                                out.preimages);
                    } catch (...) {
                        std::lock_guard<std::mutex> lock(err_mu);
                        if (!first_error) first_error = std::current_exception();
                        failed.store(true, std::memory_order_relaxed);
                    }
                }
            };
            std::vector<std::thread> pool;
            for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
            for (auto& t : pool) t.join();
            if (first_error) std::rethrow_exception(first_error);
        }
        for (std::size_t ci = 0; ci < chunks; ++ci) out.sum += partial[ci];
        return out;
    }

  private:
    // Per-root state flags within a chunk.
    static constexpr std::uint8_t kBeyond = 1;   // |N| >= D, outside the radius
    static constexpr std::uint8_t kBoundary = 2; // N = 0 or |N| = D/2 exactly
    static constexpr std::uint8_t kOuterOdd = 4; // contributes to the parity

    long long run_chunk(std::size_t begin, std::size_t end,
                        std::vector<PreimageRepresentative>& sink) {
        const std::size_t nroots = system_.roots.size();
        const IntT D = static_cast<IntT>(denom_big_);

        std::vector<IntT> value(nroots);
        std::vector<std::vector<IntT>> step_int(nroots, std::vector<IntT>(r_));
        for (std::size_t a = 0; a < nroots; ++a) {
            value[a] = static_cast<IntT>(base_[a].num() * (denom_big_ / base_[a].den()));
            for (int j = 0; j < r_; ++j)
                step_int[a][j] =
                    static_cast<IntT>(step_[a][j].num() * (denom_big_ / step_[a][j].den()));
        }
        // roots touched by each bit flip
        std::vector<std::vector<std::uint32_t>> by_bit(r_);
        for (int j = 0; j < r_; ++j)
            for (std::size_t a = 0; a < nroots; ++a)
                if (step_int[a][j] != 0) by_bit[j].push_back(static_cast<std::uint32_t>(a));

        std::uint64_t gray = begin ^ (begin >> 1);
        for (std::size_t a = 0; a < nroots; ++a)
            for (int j = 0; j < r_; ++j)
                if (gray >> j & 1) value[a] += step_int[a][j];

        std::vector<std::uint8_t> flags(nroots, 0);
        long long beyond_count = 0, boundary_count = 0;
        int parity = 0;
        auto reflag = [&](std::size_t a) {
            const IntT& n = value[a];
            const IntT abs_n = n < 0 ? IntT(-n) : n;
            std::uint8_t f = 0;
            if (abs_n >= D) f |= kBeyond;
            else if (n == 0 || abs_n * 2 == D) f |= kBoundary;
            else if (abs_n * 2 > D && odd_mult_[a]) f |= kOuterOdd;
            const std::uint8_t old = flags[a];
            if ((old ^ f) & kBeyond) beyond_count += (f & kBeyond) ? 1 : -1;
            if ((old ^ f) & kBoundary) boundary_count += (f & kBoundary) ? 1 : -1;
            if ((old ^ f) & kOuterOdd) parity ^= 1;
            flags[a] = f;
        };
        for (std::size_t a = 0; a < nroots; ++a) reflag(a);

        long long sum = 0;
        for (std::size_t i = begin; i < end; ++i) {
            int eps;
            if (beyond_count == 0) {
                if (boundary_count != 0)
                    throw RetryTarget{"root value hit a threshold exactly"};
                eps = parity;
                if (!sink.empty()) sink[i] = witness(gray, eps);
            } else {
                // some |alpha| >= 1: fetch a translate inside the radius
                eps = reduced_epsilon_int(value, step_int, by_bit, D);
                if (!sink.empty()) sink[i] = witness_reduced(gray, eps);
            }
            sum += eps ? -1 : 1;

            if (i + 1 < end) {
                const int j = std::countr_zero(i + 1);
                const bool now_set = !(gray >> j & 1);
                gray ^= std::uint64_t(1) << j;
                for (const std::uint32_t a : by_bit[j]) {
                    if (now_set) value[a] += step_int[a][j];
                    else value[a] -= step_int[a][j];
                    reflag(a);
                }
            }
        }
        return sum;
    }

    FlatVector coset_point(std::uint64_t gray) const {
        FlatVector x = y_half_;
        for (int j = 0; j < r_; ++j)
            if (gray >> j & 1) x = x + half_gens_[j];
        return x;
    }

    // Parity of the found translate, or RetryTarget if it grazes a threshold.
    int epsilon_from(const std::vector<IntT>& cand, const IntT& D) const {
        int parity = 0;
        for (std::size_t a = 0; a < cand.size(); ++a) {
            const IntT abs_n = cand[a] < 0 ? IntT(-cand[a]) : cand[a];
            if (cand[a] == 0 || abs_n * 2 == D)
                throw RetryTarget{"translated root value hit a threshold exactly"};
            if (abs_n * 2 > D && odd_mult_[a]) parity ^= 1;
        }
        return parity;
    }

    // Integer-domain version of reduce_representative + epsilon_of, searching
    // lattice translates in the same order (radius-1 box, then radius-2,
    // coordinate 0 fastest) over the shared-denominator root values. A full
    // generator is two half-generator steps.
    int reduced_epsilon_int(const std::vector<IntT>& value,
                            const std::vector<std::vector<IntT>>& step_int,
                            const std::vector<std::vector<std::uint32_t>>& by_bit,
                            const IntT& D) const {
        const std::size_t nroots = value.size();
        if (r_ > 16) {
            // bounded single-generator fallback, same as the rational search
            std::vector<IntT> cand(nroots);
            for (int j = 0; j < r_; ++j)
                for (int t : {-1, 1, -2, 2}) {
                    bool ok = true;
                    for (std::size_t a = 0; a < nroots; ++a) {
                        cand[a] = value[a] + IntT(2 * t) * step_int[a][j];
                        const IntT abs_n = cand[a] < 0 ? IntT(-cand[a]) : cand[a];
                        if (abs_n >= D) {
                            ok = false;
                            break;
                        }
                    }
                    if (ok) return epsilon_from(cand, D);
                }
            throw RetryTarget{"no conjugate-radius translate found (bounded search)"};
        }

        std::vector<IntT> cand(nroots);
        std::vector<std::uint8_t> bad(nroots);
        for (const int radius : {1, 2}) {
            std::vector<int> t(r_, -radius);
            long long bad_count = 0;
            for (std::size_t a = 0; a < nroots; ++a) {
                IntT s = value[a];
                for (int j = 0; j < r_; ++j) s += IntT(-2 * radius) * step_int[a][j];
                cand[a] = s;
                const IntT abs_n = s < 0 ? IntT(-s) : s;
                bad[a] = abs_n >= D ? 1 : 0;
                bad_count += bad[a];
            }
            auto touch = [&](std::size_t a, const IntT& dv) {
                cand[a] += dv;
                const IntT abs_n = cand[a] < 0 ? IntT(-cand[a]) : cand[a];
                const std::uint8_t b = abs_n >= D ? 1 : 0;
                bad_count += int(b) - int(bad[a]);
                bad[a] = b;
            };
            for (;;) {
                // t = 0 never matches: reduction only runs when x itself is out
                if (bad_count == 0) return epsilon_from(cand, D);
                int j = 0;
                while (j < r_ && t[j] == radius) {
                    t[j] = -radius;
                    for (const std::uint32_t a : by_bit[j])
                        touch(a, IntT(-4 * radius) * step_int[a][j]);
                    ++j;
                }
                if (j == r_) break;
                ++t[j];
                for (const std::uint32_t a : by_bit[j]) touch(a, IntT(2) * step_int[a][j]);
            }
        }
        throw RetryTarget{"no lattice translate inside the conjugate radius"};
    }

    PreimageRepresentative witness(std::uint64_t gray, int eps) const {
        PreimageRepresentative p;
        p.delta.resize(r_);
        for (int j = 0; j < r_; ++j) p.delta[j] = static_cast<std::uint8_t>(gray >> j & 1);
        p.v = coset_point(gray);
        p.epsilon = eps;
        p.sign = eps ? -1 : 1;
        return p;
    }

    PreimageRepresentative witness_reduced(std::uint64_t gray, int eps) const {
        PreimageRepresentative p = witness(gray, eps);
        p.v = reduce_representative(p.v, system_);
        return p;
    }

    const RestrictedRootSystem& system_;
    EngineOptions opts_;
    int r_;
    FlatVector y_half_;
    std::vector<FlatVector> half_gens_;
    std::vector<Rational> base_;
    std::vector<std::vector<Rational>> step_;
    std::vector<std::uint8_t> odd_mult_;
    BigInt denom_big_;
};

// One full enumeration for a fixed candidate Y; throws RetryTarget when Y
// turns out non-generic.
inline EnumerationResult enumerate_preimages(const RestrictedRootSystem& system,
                                             const FlatVector& y, const EngineOptions& opts) {
    const int r = system.rank;
    if (r > opts.rank_limit)
        throw CapacityError("rank " + std::to_string(r) + " exceeds enumeration limit " +
                            std::to_string(opts.rank_limit));
    if (opts.collect_preimages && r > kCollectRankLimit)
        throw CapacityError("preimage collection limited to rank " +
                            std::to_string(kCollectRankLimit));

    if (system.roots.empty()) {
        // Torus/point: the window is vacuous and every epsilon vanishes.
        EnumerationResult out;
        out.sum = 1LL << r;
        if (opts.collect_preimages) {
            static const Rational half(1, 2);
            const auto reps = coset_representatives(half * y, system.lattice, opts.rank_limit);
            for (std::size_t i = 0; i < reps.size(); ++i) {
                PreimageRepresentative p;
                p.delta.resize(r);
                for (int j = 0; j < r; ++j) p.delta[j] = static_cast<std::uint8_t>(i >> j & 1);
                p.v = reps[i];
                out.preimages.push_back(std::move(p));
            }
        }
        return out;
    }

    GrayEnumerator<BigInt> probe(system, y, opts);
    // int64 inner loop when every intermediate value provably fits
    static const BigInt kInt64Cap = (BigInt(1) << 62);
    if (probe.value_bound() * 2 < kInt64Cap) {
        GrayEnumerator<long long> fast(system, y, opts);
        return fast.run();
    }
    return probe.run();
}

} // namespace detail

// A target vector all of whose 2^r preimages admit representatives inside the
// regularity window. Deterministic for a fixed seed.
inline GenericPoint pick_generic(const RestrictedRootSystem& system, std::uint64_t seed,
                                 const EngineOptions& opts = {}) {
    if (system.rank < 1) throw Error("pick_generic requires rank >= 1");
    EngineOptions probe_opts = opts;
    probe_opts.collect_preimages = false;
    std::string last;
    for (int attempt = 0; attempt < opts.max_attempts; ++attempt) {
        FlatVector y = detail::generic_candidate(system.rank, seed, attempt);
        try {
            detail::enumerate_preimages(system, y, probe_opts);
            return GenericPoint{std::move(y), attempt};
        } catch (const detail::RetryTarget& t) {
            last = t.reason;
        }
    }
    throw NoGenericPoint("no generic target after " + std::to_string(opts.max_attempts) +
                         " attempts (last: " + last + "); catalog data is likely inconsistent");
}

inline DegreeReport mapping_degree(const SpaceDescriptor& space, std::uint64_t seed = 0,
                                   const EngineOptions& opts = {}) {
    if (const auto bad = validate(space); !bad.empty())
        throw DataError("'" + space.name + "' fails validation: " + bad.front());

    DegreeReport rep;
    rep.space = space.name;
    rep.rank = space.rank;
    rep.theta_p_degree = (space.dimension % 2 == 0) ? 1 : -1;
    rep.caveat = space.caveat;

    const bool all_even = std::all_of(
        space.system.roots.begin(), space.system.roots.end(),
        [](const RestrictedRoot& rt) { return rt.multiplicity % 2 == 0; });

    // Witness requests need the actual sheet walk, so they bypass the shortcut.
    if (all_even && !opts.force_full && !opts.collect_preimages) {
        // splitting rank: every epsilon vanishes, no enumeration needed
        if (space.rank >= 62)
            throw CapacityError("degree exceeds the representable range");
        rep.parity_sum = 1LL << space.rank;
        rep.degree = space.oriented ? rep.parity_sum : 0;
        rep.fastpath_used = true;
        rep.generic_point = GenericPoint{detail::generic_candidate(space.rank, seed, 0), 0};
        return rep;
    }

    std::string last;
    for (int attempt = 0; attempt < opts.max_attempts; ++attempt) {
        FlatVector y = detail::generic_candidate(space.rank, seed, attempt);
        try {
            auto result = detail::enumerate_preimages(space.system, y, opts);
            rep.parity_sum = result.sum;
            // the signed count is representative-dependent on a non-orientable
            // space; only an oriented one turns it into a mapping degree
            rep.degree = space.oriented ? result.sum : 0;
            rep.generic_point = GenericPoint{std::move(y), attempt};
            rep.preimages = std::move(result.preimages);
            return rep;
        } catch (const detail::RetryTarget& t) {
            last = t.reason;
        }
    }
    throw NoGenericPoint("no generic target for '" + space.name + "' after " +
                         std::to_string(opts.max_attempts) + " attempts (last: " + last +
                         "); catalog data is likely inconsistent");
}

inline bool is_gamma_canonical(const SpaceDescriptor& space, std::uint64_t seed = 0,
                               const EngineOptions& opts = {}) {
    return mapping_degree(space, seed, opts).degree != 0;
}

} // namespace gammadeg
