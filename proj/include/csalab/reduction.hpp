#pragma once

// Index-reduction gcd engines: the single- and double-transfer gcd of
// oracle(α)·[K(α):F]·|α| over α ∈ (Z/rZ)[G/H], with exhaustive
// enumeration inside a budget and deterministic seeded sampling beyond
// it.  The Schur index of the twisted algebra stays behind an oracle.

#include <csalab/arith.hpp>
#include <csalab/brauer.hpp>
#include <csalab/field.hpp>
#include <csalab/generic.hpp>
#include <csalab/groupring.hpp>

#include <cstdlib>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace csalab {

class transfer_setup {
public:
    transfer_setup(coset_space_ptr space, bigint r, bigint n,
                   std::optional<galois_context> bridge = {})
        : space_(std::move(space)), r_(std::move(r)), n_(std::move(n)),
          bridge_(std::move(bridge)) {
        if (!space_) throw precondition_error("transfer setup without a coset space");
        if (r_ < 1 || n_ < 1) throw precondition_error("transfer setup needs r >= 1 and n >= 1");
        if (bridge_ && !(bridge_->group() == space_->group_handle()))
            throw precondition_error("bridge Galois group differs from the setup group");
    }

    const coset_space_ptr& space() const { return space_; }
    const bigint& r() const { return r_; }
    const bigint& n() const { return n_; }
    const std::optional<galois_context>& bridge() const { return bridge_; }

    group_ring_element element(std::vector<bigint> coeffs) const {
        return group_ring_element(space_, r_, std::move(coeffs));
    }

private:
    coset_space_ptr space_;
    bigint r_;
    bigint n_;
    std::optional<galois_context> bridge_;
};

using single_oracle = std::function<bigint(const group_ring_element&)>;
using double_oracle =
    std::function<bigint(const group_ring_element&, const group_ring_element&)>;

enum class enumeration_mode { automatic, exhaustive, sampled };

struct enumeration_options {
    enumeration_mode mode = enumeration_mode::automatic;
    bigint budget = 1000000;
    std::uint64_t seed = 1;
    std::size_t samples = 10000;
};

struct reduction_report {
    bigint gcd_value;
    std::optional<std::vector<bigint>> witness_alpha;  // first α whose term equals the gcd
    std::optional<std::vector<bigint>> witness_beta;
    bigint terms = 0;
    bool exhaustive = true;
    std::uint64_t seed = 0;    // meaningful when sampled
    std::size_t samples = 0;   // meaningful when sampled
};

namespace detail {

// CSALAB_BUDGET caps every enumeration, whatever the options say.
inline bigint effective_budget(const bigint& requested) {
    if (const char* env = std::getenv("CSALAB_BUDGET")) {
        try {
            bigint ceiling(env);
            if (ceiling < 1) throw precondition_error("CSALAB_BUDGET must be positive");
            return requested < ceiling ? requested : ceiling;
        } catch (const std::runtime_error& e) {
            if (dynamic_cast<const precondition_error*>(&e)) throw;
            throw precondition_error("CSALAB_BUDGET is not an integer");
        }
    }
    return requested;
}

// Uniform draws in {0,…,r-1} by rejection, so the byte stream depends
// only on the seed and never on library implementation details.
class coefficient_sampler {
public:
    explicit coefficient_sampler(std::uint64_t seed) : rng_(seed) {}

    void fill(std::vector<bigint>& coeffs, const bigint& modulus) {
        if (modulus < 1 || modulus > bigint(std::uint64_t(1) << 32))
            throw precondition_error("sampled enumeration supports moduli up to 2^32");
        const std::uint64_t r = modulus.convert_to<std::uint64_t>();
        const std::uint64_t bound = UINT64_MAX - (UINT64_MAX % r + 1) % r;  // last accepted
        for (auto& c : coeffs) {
            std::uint64_t x = rng_();
            while (x > bound) x = rng_();
            c = bigint(x % r);
        }
    }

private:
    std::mt19937_64 rng_;
};

inline bigint pow_count(const bigint& base, std::size_t exp) {
    bigint v = 1;
    for (std::size_t i = 0; i < exp; ++i) v *= base;
    return v;
}

// Rightmost coefficient moves fastest: lexicographic ascending order.
inline bool odometer_step(std::vector<bigint>& coeffs, const bigint& base) {
    for (std::size_t i = coeffs.size(); i-- > 0;) {
        if (++coeffs[i] < base) return true;
        coeffs[i] = 0;
    }
    return false;
}

struct gcd_fold {
    bigint run = 0;
    std::optional<std::pair<std::vector<bigint>, std::vector<bigint>>> witness;

    // Invariant: when set, witness is the first element whose term equals
    // the running gcd (hence, at the end, the final gcd).
    void feed(const bigint& term, const std::vector<bigint>& a, const std::vector<bigint>& b) {
        if (term < 1) throw consistency_error("enumerated term is not positive");
        const bigint next = gcd(run, term);
        if (next != run) witness.reset();
        if (!witness && next == term) witness = std::make_pair(a, b);
        run = next;
    }
};

} // namespace detail

// oracle(α) · [K(α):F] · |α|.
inline bigint term_value(const transfer_setup& setup, const group_ring_element& alpha,
                         const single_oracle& oracle) {
    if (alpha.space_handle() != setup.space() || alpha.modulus() != setup.r())
        throw precondition_error("element does not live in the setup's group ring");
    const bigint s = oracle(alpha);
    if (s < 1) throw precondition_error("oracle returned a non-positive index");
    return s * fixed_degree(alpha) * weight(alpha, setup.n());
}

inline bigint term_value(const transfer_setup& s1, const transfer_setup& s2,
                         const group_ring_element& alpha, const group_ring_element& beta,
                         const double_oracle& oracle) {
    if (alpha.space_handle() != s1.space() || alpha.modulus() != s1.r())
        throw precondition_error("first element does not live in its setup's group ring");
    if (beta.space_handle() != s2.space() || beta.modulus() != s2.r())
        throw precondition_error("second element does not live in its setup's group ring");
    const bigint s = oracle(alpha, beta);
    if (s < 1) throw precondition_error("oracle returned a non-positive index");
    return s * fixed_degree(alpha) * fixed_degree(beta) * weight(alpha, s1.n()) *
           weight(beta, s2.n());
}

using single_observer = std::function<void(const group_ring_element&, const bigint&)>;
using double_observer =
    std::function<void(const group_ring_element&, const group_ring_element&, const bigint&)>;

inline reduction_report reduce_single(const transfer_setup& setup, const single_oracle& oracle,
                                      const enumeration_options& options = {},
                                      const single_observer& observer = {}) {
    const std::size_t len = setup.space()->count();
    const bigint total = detail::pow_count(setup.r(), len);
    const bigint budget = detail::effective_budget(options.budget);

    bool exhaustive = total <= budget;
    if (options.mode == enumeration_mode::exhaustive && !exhaustive)
        throw precondition_error("exhaustive enumeration exceeds the budget of " + budget.str());
    if (options.mode == enumeration_mode::sampled) exhaustive = false;

    detail::gcd_fold fold;
    reduction_report report;
    std::vector<bigint> coeffs(len, 0);
    auto feed = [&](const std::vector<bigint>& c) {
        group_ring_element alpha = setup.element(c);
        const bigint term = term_value(setup, alpha, oracle);
        if (observer) observer(alpha, term);
        fold.feed(term, c, {});
        ++report.terms;
    };

    if (exhaustive) {
        do feed(coeffs);
        while (detail::odometer_step(coeffs, setup.r()));
        report.exhaustive = true;
    } else {
        if (bigint(options.samples) + 1 > budget)
            throw precondition_error("sample count exceeds the budget of " + budget.str());
        feed(coeffs);  // the zero element anchors every sampled run
        detail::coefficient_sampler sampler(options.seed);
        for (std::size_t i = 0; i < options.samples; ++i) {
            sampler.fill(coeffs, setup.r());
            feed(coeffs);
        }
        report.exhaustive = false;
        report.seed = options.seed;
        report.samples = options.samples;
    }
    report.gcd_value = fold.run;
    if (fold.witness) report.witness_alpha = fold.witness->first;
    return report;
}

inline reduction_report reduce_double(const transfer_setup& s1, const transfer_setup& s2,
                                      const double_oracle& oracle,
                                      const enumeration_options& options = {},
                                      const double_observer& observer = {}) {
    const std::size_t len1 = s1.space()->count();
    const std::size_t len2 = s2.space()->count();
    const bigint total = detail::pow_count(s1.r(), len1) * detail::pow_count(s2.r(), len2);
    const bigint budget = detail::effective_budget(options.budget);

    bool exhaustive = total <= budget;
    if (options.mode == enumeration_mode::exhaustive && !exhaustive)
        throw precondition_error("exhaustive enumeration exceeds the budget of " + budget.str());
    if (options.mode == enumeration_mode::sampled) exhaustive = false;

    detail::gcd_fold fold;
    reduction_report report;
    std::vector<bigint> ca(len1, 0), cb(len2, 0);
    auto feed = [&](const std::vector<bigint>& a, const std::vector<bigint>& b) {
        group_ring_element alpha = s1.element(a);
        group_ring_element beta = s2.element(b);
        const bigint term = term_value(s1, s2, alpha, beta, oracle);
        if (observer) observer(alpha, beta, term);
        fold.feed(term, a, b);
        ++report.terms;
    };

    if (exhaustive) {
        // α is the major odometer: lexicographic on the concatenation.
        bool more_a = true;
        while (more_a) {
            bool more_b = true;
            while (more_b) {
                feed(ca, cb);
                more_b = detail::odometer_step(cb, s2.r());
            }
            more_a = detail::odometer_step(ca, s1.r());
        }
        report.exhaustive = true;
    } else {
        if (bigint(options.samples) + 1 > budget)
            throw precondition_error("sample count exceeds the budget of " + budget.str());
        feed(ca, cb);
        detail::coefficient_sampler sampler(options.seed);
        for (std::size_t i = 0; i < options.samples; ++i) {
            sampler.fill(ca, s1.r());
            sampler.fill(cb, s2.r());
            feed(ca, cb);
        }
        report.exhaustive = false;
        report.seed = options.seed;
        report.samples = options.samples;
    }
    report.gcd_value = fold.run;
    if (fold.witness) {
        report.witness_alpha = fold.witness->first;
        report.witness_beta = fold.witness->second;
    }
    return report;
}

// Constant oracle: the transfer field splits everything down to s0.
inline single_oracle split_oracle(bigint s0 = 1) {
    if (s0 < 1) throw precondition_error("split oracle value must be positive");
    return [s0 = std::move(s0)](const group_ring_element&) { return s0; };
}

inline double_oracle split_oracle_double(bigint s0 = 1) {
    if (s0 < 1) throw precondition_error("split oracle value must be positive");
    return [s0 = std::move(s0)](const group_ring_element&, const group_ring_element&) {
        return s0;
    };
}

// For classes the Galois action does not move, twisting by α collapses to
// an integer power: oracle(α) = index of B ⊗ A₀^{Σ n_gH} over the fixed
// field of H_α.  Memoized on (coefficient sum mod its period, H_α).
inline single_oracle unmoved_oracle(const mixed_class& b, const brauer_class& a0,
                                    const galois_context& bridge) {
    if (!(b.arith().base() == a0.base()))
        throw precondition_error("unmoved oracle needs both classes over the same base field");
    auto cache =
        std::make_shared<std::map<std::pair<bigint, std::vector<std::size_t>>, bigint>>();
    const bigint period = index(a0);
    return [b, a0, bridge, cache, period](const group_ring_element& alpha) {
        const bigint a = coefficient_sum(alpha) % period;
        const subgroup stab = stabilizer(alpha);
        const auto key = std::make_pair(a, stab.members());
        if (auto it = cache->find(key); it != cache->end()) return it->second;
        const mixed_class combined = tensor(b, mixed_class::pure(power(a0, a)));
        const bigint value = mixed_index(combined, bridge.fixed_field(stab));
        cache->emplace(key, value);
        return value;
    };
}

// Experiment hook: every enumerated coefficient vector must be listed.
inline single_oracle table_oracle(std::map<std::vector<bigint>, bigint> table) {
    auto shared = std::make_shared<std::map<std::vector<bigint>, bigint>>(std::move(table));
    return [shared](const group_ring_element& alpha) {
        auto it = shared->find(alpha.coeffs());
        if (it == shared->end()) throw precondition_error("table oracle has no entry for an enumerated element");
        return it->second;
    };
}

inline double_oracle table_oracle_double(std::map<std::vector<bigint>, bigint> table) {
    auto shared = std::make_shared<std::map<std::vector<bigint>, bigint>>(std::move(table));
    return [shared](const group_ring_element& alpha, const group_ring_element& beta) {
        std::vector<bigint> key = alpha.coeffs();
        key.insert(key.end(), beta.coeffs().begin(), beta.coeffs().end());
        auto it = shared->find(key);
        if (it == shared->end()) throw precondition_error("table oracle has no entry for an enumerated pair");
        return it->second;
    };
}

} // namespace csalab
