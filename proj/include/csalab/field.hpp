#pragma once

// Abelian number fields presented inside cyclotomic fields: a conductor m
// and the subgroup S of (Z/mZ)^x fixing the field.  The conductor is
// canonicalized to the minimal one at construction, so equality is
// structural.  Local degrees at rational places come from decomposition
// subgroups (inertia units together with a Frobenius lift).

#include <csalab/arith.hpp>
#include <csalab/groupring.hpp>

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <set>
#include <string>
#include <vector>

namespace csalab {

// A rational place: a finite prime or the real place.
class place {
public:
    explicit place(const bigint& q) : finite_(true), q_(q) {
        if (!is_prime(q)) throw precondition_error("place " + q.str() + " is not prime");
    }

    static place real() { return place(tag{}); }

    bool is_real() const { return !finite_; }

    const bigint& prime() const {
        if (!finite_) throw precondition_error("the real place has no residue prime");
        return q_;
    }

    std::string str() const { return finite_ ? q_.str() : "inf"; }

    friend bool operator==(const place& a, const place& b) = default;
    friend bool operator<(const place& a, const place& b) {
        if (a.finite_ != b.finite_) return a.finite_;  // finite primes first, real place last
        return a.q_ < b.q_;
    }

private:
    struct tag {};
    explicit place(tag) : finite_(false), q_(0) {}
    bool finite_;
    bigint q_;
};

namespace detail {

constexpr std::size_t max_conductor = 1000000;

inline std::vector<std::size_t> unit_residues(std::size_t m) {
    std::vector<std::size_t> units;
    for (std::size_t u = 0; u < m; ++u)
        if (std::gcd(u, m) == 1) units.push_back(u);
    return units;  // m = 1 gives {0}, the class of 1
}

inline std::vector<std::size_t> close_units(std::size_t m, const std::vector<std::size_t>& seed) {
    std::set<std::size_t> in(seed.begin(), seed.end());
    in.insert(1 % m);
    std::vector<std::size_t> work(in.begin(), in.end());
    for (std::size_t i = 0; i < work.size(); ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            std::size_t p = (work[i] * work[j]) % m;
            if (in.insert(p).second) work.push_back(p);
        }
    return {in.begin(), in.end()};
}

} // namespace detail

class galois_context;

class abelian_field {
public:
    abelian_field() : conductor_(1), fixing_{0}, degree_(1) {}

    abelian_field(const bigint& conductor, const std::vector<bigint>& fixing_generators) {
        if (conductor < 1) throw precondition_error("conductor must be positive");
        if (conductor > detail::max_conductor)
            throw precondition_error("conductor exceeds the supported range");
        const std::size_t m = conductor.convert_to<std::size_t>();
        std::vector<std::size_t> gens;
        for (const bigint& g : fixing_generators) {
            bigint r = g % m;
            if (r < 0) r += m;
            std::size_t u = r.convert_to<std::size_t>();
            if (std::gcd(u, m) != 1)
                throw precondition_error("fixing generator is not a unit mod the conductor");
            gens.push_back(u);
        }
        const auto full = detail::close_units(m, gens);
        const auto units = detail::unit_residues(m);
        degree_ = units.size() / full.size();
        // Minimal conductor d: the units ≡ 1 (mod d) must all fix the field.
        for (std::size_t d = 1; d <= m; ++d) {
            if (m % d != 0) continue;
            bool ok = true;
            for (std::size_t u : units)
                if (u % d == 1 % d && !std::binary_search(full.begin(), full.end(), u)) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            std::set<std::size_t> proj;
            for (std::size_t u : full) proj.insert(u % d);
            conductor_ = d;
            fixing_.assign(proj.begin(), proj.end());
            break;
        }
    }

    bigint conductor() const { return bigint(conductor_); }
    bigint degree() const { return bigint(degree_); }
    bool is_rationals() const { return conductor_ == 1; }

    // Sorted residues of the full fixing subgroup, at the minimal conductor.
    const std::vector<std::size_t>& fixing_members() const { return fixing_; }

    bool totally_real() const {
        return conductor_ <= 2 ||
               std::binary_search(fixing_.begin(), fixing_.end(), conductor_ - 1);
    }

    friend bool operator==(const abelian_field& a, const abelian_field& b) = default;

    // [K_w : Q_q], equal at every place w above v.
    bigint local_degree(const place& v) const {
        if (v.is_real()) return totally_real() ? 1 : 2;
        if (conductor_ == 1) return 1;
        const std::size_t m = conductor_;
        const bigint& q = v.prime();
        std::size_t q_part = 1, m_prime = m;
        if (q <= m) {
            const std::size_t qs = q.convert_to<std::size_t>();
            while (m_prime % qs == 0) {
                m_prime /= qs;
                q_part *= qs;
            }
        }
        const std::size_t q_mod = ((q % m_prime).convert_to<std::size_t>());
        std::vector<std::size_t> gens = fixing_;
        std::size_t frob = m;  // the unique unit ≡ q (mod m'), ≡ 1 (mod q_part)
        for (std::size_t u : detail::unit_residues(m)) {
            if (u % m_prime == 1 % m_prime) gens.push_back(u);  // inertia
            if (frob == m && u % m_prime == q_mod && u % q_part == 1 % q_part) frob = u;
        }
        if (frob == m) throw consistency_error("no Frobenius lift found");
        gens.push_back(frob);
        return bigint(detail::close_units(m, gens).size() / fixing_.size());
    }

    // Number of places of K above v.
    bigint place_count(const place& v) const { return degree() / local_degree(v); }

    bool contains(const abelian_field& sub) const {
        const std::size_t big = std::lcm(conductor_, sub.conductor_);
        if (big > detail::max_conductor)
            throw precondition_error("common conductor exceeds the supported range");
        for (std::size_t u : detail::unit_residues(big))
            if (fixes(u) && !sub.fixes(u)) return false;
        return true;
    }

    galois_context galois() const;

private:
    friend abelian_field compositum(const abelian_field&, const abelian_field&);

    bool fixes(std::size_t residue_of_multiple) const {
        return std::binary_search(fixing_.begin(), fixing_.end(),
                                  residue_of_multiple % conductor_);
    }

    std::size_t conductor_;
    std::vector<std::size_t> fixing_;
    std::size_t degree_;
};

inline abelian_field compositum(const abelian_field& a, const abelian_field& b) {
    const std::size_t big = std::lcm(a.conductor_, b.conductor_);
    if (big > detail::max_conductor)
        throw precondition_error("common conductor exceeds the supported range");
    std::vector<bigint> gens;
    for (std::size_t u : detail::unit_residues(big))
        if (a.fixes(u) && b.fixes(u)) gens.emplace_back(u);
    return abelian_field(bigint(big), gens);
}

// Gal(K/Q) = (Z/mZ)^x / S as a table group, with the dictionary between
// group elements and unit classes.  Element 0 is the identity coset and
// each element is labeled by its smallest unit representative.
class galois_context {
public:
    const abelian_field& field() const { return field_; }
    const group_ptr& group() const { return group_; }

    // Smallest unit representative of the element's coset.
    std::size_t unit_representative(std::size_t element) const { return reps_.at(element); }

    std::size_t element_of(const bigint& unit) const {
        bigint r = unit % field_.conductor();
        if (r < 0) r += field_.conductor();
        auto it = unit_to_element_.find(r.convert_to<std::size_t>());
        if (it == unit_to_element_.end())
            throw precondition_error(unit.str() + " is not a unit mod the conductor");
        return it->second;
    }

    // Image of Frob_q for q unramified (coprime to the conductor).
    std::size_t frobenius(const bigint& q) const { return element_of(q); }

    // Galois correspondence: the subfield fixed by a subgroup.
    abelian_field fixed_field(const subgroup& h) const {
        if (h.group_handle() != group_)
            throw precondition_error("subgroup is not over this Galois group");
        std::vector<bigint> gens;
        for (const auto& [u, e] : unit_to_element_)
            if (h.contains(e)) gens.emplace_back(u);
        return abelian_field(field_.conductor(), gens);
    }

private:
    friend class abelian_field;
    galois_context() = default;

    abelian_field field_;
    group_ptr group_;
    std::vector<std::size_t> reps_;
    std::map<std::size_t, std::size_t> unit_to_element_;
};

inline galois_context abelian_field::galois() const {
    const std::size_t m = conductor_;
    galois_context ctx;
    ctx.field_ = *this;
    for (std::size_t u : detail::unit_residues(m)) {
        if (ctx.unit_to_element_.count(u)) continue;
        const std::size_t e = ctx.reps_.size();
        ctx.reps_.push_back(u);
        for (std::size_t s : fixing_) ctx.unit_to_element_[(u * s) % m] = e;
    }
    const std::size_t n = ctx.reps_.size();
    std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            table[i][j] = ctx.unit_to_element_.at((ctx.reps_[i] * ctx.reps_[j]) % m);
    std::vector<std::string> labels;
    labels.reserve(n);
    for (std::size_t r : ctx.reps_) labels.push_back(m == 1 ? "1" : std::to_string(r));
    ctx.group_ = std::make_shared<const finite_group>(std::move(table), std::move(labels));
    return ctx;
}

} // namespace csalab
