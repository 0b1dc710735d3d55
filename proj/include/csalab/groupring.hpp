#pragma once

// Finite groups as validated multiplication tables, subgroups, left coset
// spaces G/H, and elements of (Z/rZ)[G/H] with the translation action:
// stabilizers, orbit decomposition, coefficient sum, and the weight
// prod_{gH} n/(n, n_gH).

#include <csalab/arith.hpp>

#include <algorithm>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace csalab {

// Immutable; identity is always element 0.  The constructor proves the
// table is a group law, so downstream code never re-checks.
class finite_group {
public:
    explicit finite_group(std::vector<std::vector<std::size_t>> table,
                          std::vector<std::string> labels = {})
        : table_(std::move(table)), labels_(std::move(labels)) {
        const std::size_t n = table_.size();
        if (n == 0) throw precondition_error("empty multiplication table");
        for (const auto& row : table_) {
            if (row.size() != n) throw precondition_error("multiplication table is not square");
            for (std::size_t v : row)
                if (v >= n) throw precondition_error("table entry out of range");
        }
        for (std::size_t a = 0; a < n; ++a)
            if (table_[0][a] != a || table_[a][0] != a)
                throw precondition_error("element 0 is not a two-sided identity");
        inverse_.assign(n, n);
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = 0; b < n; ++b)
                if (table_[a][b] == 0 && table_[b][a] == 0) {
                    inverse_[a] = b;
                    break;
                }
            if (inverse_[a] == n) throw precondition_error("element without two-sided inverse");
        }
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                for (std::size_t c = 0; c < n; ++c)
                    if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
                        throw precondition_error("multiplication table is not associative");
        if (!labels_.empty() && labels_.size() != n)
            throw precondition_error("label count differs from group order");
    }

    std::size_t order() const { return table_.size(); }

    std::size_t mul(std::size_t a, std::size_t b) const {
        if (a >= order() || b >= order()) throw precondition_error("group element out of range");
        return table_[a][b];
    }

    std::size_t inv(std::size_t a) const {
        if (a >= order()) throw precondition_error("group element out of range");
        return inverse_[a];
    }

    std::string label(std::size_t a) const {
        if (a >= order()) throw precondition_error("group element out of range");
        return labels_.empty() ? std::to_string(a) : labels_[a];
    }

    const std::vector<std::vector<std::size_t>>& table() const { return table_; }

    static finite_group cyclic(std::size_t n) {
        if (n == 0) throw precondition_error("cyclic group of order 0");
        std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) t[a][b] = (a + b) % n;
        return finite_group(std::move(t));
    }

    // Direct product of cyclic groups; index is mixed-radix over `orders`.
    static finite_group abelian(const std::vector<std::size_t>& orders) {
        std::size_t n = 1;
        for (std::size_t d : orders) {
            if (d == 0) throw precondition_error("cyclic factor of order 0");
            n *= d;
        }
        auto decode = [&](std::size_t x) {
            std::vector<std::size_t> digits(orders.size());
            for (std::size_t i = orders.size(); i-- > 0;) {
                digits[i] = x % orders[i];
                x /= orders[i];
            }
            return digits;
        };
        auto encode = [&](const std::vector<std::size_t>& digits) {
            std::size_t x = 0;
            for (std::size_t i = 0; i < orders.size(); ++i) x = x * orders[i] + digits[i];
            return x;
        };
        std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                auto da = decode(a), db = decode(b);
                for (std::size_t i = 0; i < orders.size(); ++i) da[i] = (da[i] + db[i]) % orders[i];
                t[a][b] = encode(da);
            }
        return finite_group(std::move(t));
    }

    // Order 2n: rotations r^s and reflections r^s f, encoded s + n*t.
    static finite_group dihedral(std::size_t n) {
        if (n == 0) throw precondition_error("dihedral parameter 0");
        const std::size_t m = 2 * n;
        std::vector<std::vector<std::size_t>> t(m, std::vector<std::size_t>(m));
        for (std::size_t s = 0; s < n; ++s)
            for (std::size_t u = 0; u < 2; ++u)
                for (std::size_t s2 = 0; s2 < n; ++s2)
                    for (std::size_t u2 = 0; u2 < 2; ++u2) {
                        std::size_t rs = (u == 0 ? s + s2 : s + n - s2) % n;
                        t[s + n * u][s2 + n * u2] = rs + n * ((u + u2) % 2);
                    }
        return finite_group(std::move(t));
    }

    // Order 4n: a^s b^t with a^{2n} = 1, b^2 = a^n, b a b^{-1} = a^{-1};
    // n = 2 is the quaternion group.
    static finite_group dicyclic(std::size_t n) {
        if (n == 0) throw precondition_error("dicyclic parameter 0");
        const std::size_t m = 2 * n;
        std::vector<std::vector<std::size_t>> t(2 * m, std::vector<std::size_t>(2 * m));
        for (std::size_t s = 0; s < m; ++s)
            for (std::size_t u = 0; u < 2; ++u)
                for (std::size_t s2 = 0; s2 < m; ++s2)
                    for (std::size_t u2 = 0; u2 < 2; ++u2) {
                        std::size_t rs, ru;
                        if (u == 0) {
                            rs = (s + s2) % m;
                            ru = u2;
                        } else if (u2 == 0) {
                            rs = (s + m - s2) % m;
                            ru = 1;
                        } else {
                            rs = (s + m - s2 + n) % m;
                            ru = 0;
                        }
                        t[s + m * u][s2 + m * u2] = rs + m * ru;
                    }
        return finite_group(std::move(t));
    }

    // Closure of permutations of {0,…,degree-1} under composition
    // (p*q)(x) = p(q(x)); identity becomes element 0.
    static finite_group from_permutations(std::size_t degree,
                                          const std::vector<std::vector<std::size_t>>& gens) {
        for (const auto& p : gens) {
            if (p.size() != degree) throw precondition_error("permutation degree mismatch");
            std::vector<bool> seen(degree, false);
            for (std::size_t v : p) {
                if (v >= degree || seen[v]) throw precondition_error("not a permutation");
                seen[v] = true;
            }
        }
        std::vector<std::size_t> id(degree);
        for (std::size_t i = 0; i < degree; ++i) id[i] = i;
        std::vector<std::vector<std::size_t>> elems{id};
        std::map<std::vector<std::size_t>, std::size_t> idx{{id, 0}};
        for (std::size_t next = 0; next < elems.size(); ++next)
            for (const auto& g : gens) {
                std::vector<std::size_t> prod(degree);
                for (std::size_t i = 0; i < degree; ++i) prod[i] = g[elems[next][i]];
                if (idx.emplace(prod, elems.size()).second) elems.push_back(std::move(prod));
            }
        const std::size_t n = elems.size();
        std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                std::vector<std::size_t> prod(degree);
                for (std::size_t i = 0; i < degree; ++i) prod[i] = elems[a][elems[b][i]];
                t[a][b] = idx.at(prod);
            }
        return finite_group(std::move(t));
    }

private:
    std::vector<std::vector<std::size_t>> table_;
    std::vector<std::string> labels_;
    std::vector<std::size_t> inverse_;
};

using group_ptr = std::shared_ptr<const finite_group>;

inline std::size_t element_order(const finite_group& g, std::size_t e) {
    std::size_t x = e, n = 1;
    while (x != 0) {
        x = g.mul(x, e);
        ++n;
    }
    return n;
}

class subgroup {
public:
    subgroup(group_ptr parent, std::vector<std::size_t> members)
        : parent_(std::move(parent)), members_(std::move(members)) {
        if (!parent_) throw precondition_error("subgroup without a parent group");
        std::sort(members_.begin(), members_.end());
        members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
        if (members_.empty() || members_[0] != 0)
            throw precondition_error("subgroup must contain the identity");
        for (std::size_t a : members_) {
            if (a >= parent_->order()) throw precondition_error("subgroup member out of range");
            if (!contains(parent_->inv(a))) throw precondition_error("subgroup not closed under inverse");
            for (std::size_t b : members_)
                if (!contains(parent_->mul(a, b)))
                    throw precondition_error("subgroup not closed under multiplication");
        }
    }

    static subgroup generated(group_ptr parent, const std::vector<std::size_t>& gens) {
        if (!parent) throw precondition_error("subgroup without a parent group");
        std::vector<std::size_t> closure{0};
        std::vector<bool> in(parent->order(), false);
        in[0] = true;
        for (std::size_t g : gens) {
            if (g >= parent->order()) throw precondition_error("generator out of range");
            if (!in[g]) {
                in[g] = true;
                closure.push_back(g);
            }
        }
        for (std::size_t i = 0; i < closure.size(); ++i)
            for (std::size_t j = 0; j < closure.size(); ++j) {
                std::size_t p = parent->mul(closure[i], closure[j]);
                if (!in[p]) {
                    in[p] = true;
                    closure.push_back(p);
                }
            }
        return subgroup(std::move(parent), std::move(closure));
    }

    static subgroup trivial(group_ptr parent) { return subgroup(std::move(parent), {0}); }

    static subgroup full(group_ptr parent) {
        std::vector<std::size_t> all(parent->order());
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
        return subgroup(std::move(parent), std::move(all));
    }

    const finite_group& group() const { return *parent_; }
    const group_ptr& group_handle() const { return parent_; }
    const std::vector<std::size_t>& members() const { return members_; }
    std::size_t size() const { return members_.size(); }
    std::size_t index() const { return parent_->order() / members_.size(); }

    bool contains(std::size_t e) const {
        return std::binary_search(members_.begin(), members_.end(), e);
    }

    friend bool operator==(const subgroup& a, const subgroup& b) {
        return a.parent_ == b.parent_ && a.members_ == b.members_;
    }

private:
    group_ptr parent_;
    std::vector<std::size_t> members_;
};

// Every subgroup, found by closing each found subgroup with each outside
// element; deterministic order (by size, then member list).
inline std::vector<subgroup> all_subgroups(const group_ptr& g) {
    std::vector<std::vector<std::size_t>> found{{0}};
    for (std::size_t i = 0; i < found.size(); ++i) {
        for (std::size_t e = 1; e < g->order(); ++e) {
            if (std::binary_search(found[i].begin(), found[i].end(), e)) continue;
            auto gens = found[i];
            gens.push_back(e);
            auto closed = subgroup::generated(g, gens).members();
            if (std::find(found.begin(), found.end(), closed) == found.end())
                found.push_back(std::move(closed));
        }
    }
    std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    std::vector<subgroup> out;
    out.reserve(found.size());
    for (auto& m : found) out.emplace_back(g, std::move(m));
    return out;
}

// Left cosets gH; coset 0 is H itself, and g acts by g·(xH) = (gx)H.
class coset_space {
public:
    explicit coset_space(subgroup sub) : sub_(std::move(sub)) {
        const finite_group& g = sub_.group();
        const std::size_t n = g.order();
        coset_of_.assign(n, n);
        for (std::size_t x = 0; x < n; ++x) {
            if (coset_of_[x] != n) continue;
            const std::size_t c = reps_.size();
            reps_.push_back(x);
            for (std::size_t h : sub_.members()) coset_of_[g.mul(x, h)] = c;
        }
        action_.assign(n, std::vector<std::size_t>(reps_.size()));
        for (std::size_t e = 0; e < n; ++e)
            for (std::size_t c = 0; c < reps_.size(); ++c)
                action_[e][c] = coset_of_[g.mul(e, reps_[c])];
    }

    const finite_group& group() const { return sub_.group(); }
    const group_ptr& group_handle() const { return sub_.group_handle(); }
    const subgroup& sub() const { return sub_; }
    std::size_t count() const { return reps_.size(); }
    std::size_t representative(std::size_t c) const { return reps_.at(c); }
    std::size_t coset_of(std::size_t e) const { return coset_of_.at(e); }

    std::size_t act(std::size_t e, std::size_t c) const {
        if (e >= coset_of_.size() || c >= reps_.size())
            throw precondition_error("coset action argument out of range");
        return action_[e][c];
    }

private:
    subgroup sub_;
    std::vector<std::size_t> coset_of_;
    std::vector<std::size_t> reps_;
    std::vector<std::vector<std::size_t>> action_;
};

using coset_space_ptr = std::shared_ptr<const coset_space>;

// alpha = sum n_c · c over the cosets, n_c canonicalized to {0,…,r-1}.
class group_ring_element {
public:
    group_ring_element(coset_space_ptr space, bigint modulus, std::vector<bigint> coeffs)
        : space_(std::move(space)), modulus_(std::move(modulus)), coeffs_(std::move(coeffs)) {
        if (!space_) throw precondition_error("group ring element without a coset space");
        if (modulus_ < 1) throw precondition_error("modulus must be positive");
        if (coeffs_.size() != space_->count())
            throw precondition_error("coefficient count differs from coset count");
        for (auto& c : coeffs_) {
            c %= modulus_;
            if (c < 0) c += modulus_;
        }
    }

    const coset_space& space() const { return *space_; }
    const coset_space_ptr& space_handle() const { return space_; }
    const bigint& modulus() const { return modulus_; }
    const std::vector<bigint>& coeffs() const { return coeffs_; }

    friend bool operator==(const group_ring_element& a, const group_ring_element& b) {
        return a.space_ == b.space_ && a.modulus_ == b.modulus_ && a.coeffs_ == b.coeffs_;
    }

private:
    coset_space_ptr space_;
    bigint modulus_;
    std::vector<bigint> coeffs_;
};

// (g·α)(c) = α(g⁻¹·c).
inline group_ring_element translate(std::size_t g, const group_ring_element& alpha) {
    const coset_space& sp = alpha.space();
    const std::size_t ginv = sp.group().inv(g);
    std::vector<bigint> out(sp.count());
    for (std::size_t c = 0; c < sp.count(); ++c) out[c] = alpha.coeffs()[sp.act(ginv, c)];
    return group_ring_element(alpha.space_handle(), alpha.modulus(), std::move(out));
}

inline subgroup stabilizer(const group_ring_element& alpha) {
    const coset_space& sp = alpha.space();
    std::vector<std::size_t> fix;
    for (std::size_t g = 0; g < sp.group().order(); ++g) {
        bool fixes = true;
        const std::size_t ginv = sp.group().inv(g);
        for (std::size_t c = 0; c < sp.count() && fixes; ++c)
            fixes = alpha.coeffs()[sp.act(ginv, c)] == alpha.coeffs()[c];
        if (fixes) fix.push_back(g);
    }
    return subgroup(sp.group_handle(), std::move(fix));
}

inline std::vector<std::vector<std::size_t>> orbits(const subgroup& sub, const coset_space& sp) {
    if (sub.group_handle() != sp.group_handle())
        throw precondition_error("subgroup and coset space have different parent groups");
    std::vector<bool> seen(sp.count(), false);
    std::vector<std::vector<std::size_t>> out;
    for (std::size_t c = 0; c < sp.count(); ++c) {
        if (seen[c]) continue;
        std::vector<std::size_t> orbit;
        for (std::size_t h : sub.members()) {
            std::size_t d = sp.act(h, c);
            if (!seen[d]) {
                seen[d] = true;
                orbit.push_back(d);
            }
        }
        std::sort(orbit.begin(), orbit.end());
        out.push_back(std::move(orbit));
    }
    return out;
}

// |α| = prod over cosets of n/(n, n_c); gcd(n, 0) = n makes zero
// coefficients contribute 1.
inline bigint weight(const group_ring_element& alpha, const bigint& n) {
    if (n < 1) throw precondition_error("weight needs n >= 1");
    bigint w = 1;
    for (const auto& c : alpha.coeffs()) w *= n / gcd(n, c);
    return w;
}

// [G : H_α], the degree of the fixed field of the stabilizer.
inline bigint fixed_degree(const group_ring_element& alpha) {
    return bigint(stabilizer(alpha).index());
}

// Integer sum of the canonical representatives, not reduced mod r.
inline bigint coefficient_sum(const group_ring_element& alpha) {
    bigint s = 0;
    for (const auto& c : alpha.coeffs()) s += c;
    return s;
}

} // namespace csalab
