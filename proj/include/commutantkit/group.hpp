#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace ck {

/// Elements are indices 0..m-1; labels are decorative.  The Cayley table is
/// fully verified on construction: associativity over all triples, a two-sided
/// identity, and a two-sided inverse for every element.
class FiniteGroup {
public:
    explicit FiniteGroup(std::vector<std::vector<std::size_t>> table,
                         std::vector<std::string> labels = {})
        : table_(std::move(table)), labels_(std::move(labels)) {
        m_ = table_.size();
        if (m_ == 0) throw std::invalid_argument("group: empty Cayley table");
        for (const auto& row : table_) {
            if (row.size() != m_) throw std::invalid_argument("group: non-square Cayley table");
            for (std::size_t v : row)
                if (v >= m_) throw std::invalid_argument("group: table entry out of range");
        }
        if (labels_.empty())
            for (std::size_t i = 0; i < m_; ++i) labels_.push_back("g" + std::to_string(i));
        if (labels_.size() != m_) throw std::invalid_argument("group: label count mismatch");
        verify();
    }

    std::size_t order() const { return m_; }
    std::size_t op(std::size_t x, std::size_t y) const { return table_[x][y]; }
    std::size_t identity() const { return identity_; }
    std::size_t inverse(std::size_t x) const { return inverse_[x]; }
    const std::string& label(std::size_t x) const { return labels_[x]; }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::vector<std::vector<std::size_t>>& table() const { return table_; }

    std::size_t element_order(std::size_t x) const {
        std::size_t k = 1, y = x;
        while (y != identity_) { y = op(y, x); ++k; }
        return k;
    }

    bool is_abelian() const {
        for (std::size_t x = 0; x < m_; ++x)
            for (std::size_t y = 0; y < m_; ++y)
                if (op(x, y) != op(y, x)) return false;
        return true;
    }

    static FiniteGroup trivial() { return FiniteGroup({{0}}, {"e"}); }

    static FiniteGroup cyclic(std::size_t n) {
        if (n == 0) throw std::invalid_argument("cyclic: order must be positive");
        std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
        std::vector<std::string> lab;
        for (std::size_t i = 0; i < n; ++i) {
            lab.push_back(i == 0 ? "e" : "r" + std::to_string(i));
            for (std::size_t j = 0; j < n; ++j) t[i][j] = (i + j) % n;
        }
        return FiniteGroup(std::move(t), std::move(lab));
    }

private:
    void verify() {
        // identity
        identity_ = m_;
        for (std::size_t e = 0; e < m_; ++e) {
            bool ok = true;
            for (std::size_t x = 0; x < m_; ++x)
                ok = ok && table_[e][x] == x && table_[x][e] == x;
            if (ok) { identity_ = e; break; }
        }
        if (identity_ == m_) throw std::invalid_argument("group: no identity element");
        // inverses
        inverse_.assign(m_, m_);
        for (std::size_t x = 0; x < m_; ++x) {
            for (std::size_t y = 0; y < m_; ++y)
                if (table_[x][y] == identity_ && table_[y][x] == identity_) {
                    inverse_[x] = y;
                    break;
                }
            if (inverse_[x] == m_) throw std::invalid_argument("group: missing inverse");
        }
        // associativity, all triples
        for (std::size_t x = 0; x < m_; ++x)
            for (std::size_t y = 0; y < m_; ++y)
                for (std::size_t z = 0; z < m_; ++z)
                    if (table_[table_[x][y]][z] != table_[x][table_[y][z]])
                        throw std::invalid_argument("group: non-associative table");
    }

    std::size_t m_;
    std::vector<std::vector<std::size_t>> table_;
    std::vector<std::string> labels_;
    std::size_t identity_ = 0;
    std::vector<std::size_t> inverse_;
};

using Permutation = std::vector<std::size_t>;

inline Permutation compose_perm(const Permutation& a, const Permutation& b) {
    // (a b)(x) = a(b(x))
    if (a.size() != b.size()) throw std::invalid_argument("compose_perm: size mismatch");
    Permutation r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[b[i]];
    return r;
}

/// Group generated by permutations of {0..k-1}, closed by breadth-first
/// search, together with the permutation realizing each element.
struct PermutationGroup {
    FiniteGroup group;
    std::vector<Permutation> perms;  // perms[i] realizes element i
};

inline PermutationGroup group_from_permutations(const std::vector<Permutation>& generators) {
    if (generators.empty()) throw std::invalid_argument("group_from_permutations: no generators");
    std::size_t k = generators.front().size();
    for (const auto& g : generators) {
        if (g.size() != k) throw std::invalid_argument("group_from_permutations: size mismatch");
        std::vector<bool> seen(k, false);
        for (std::size_t v : g) {
            if (v >= k || seen[v])
                throw std::invalid_argument("group_from_permutations: not a bijection");
            seen[v] = true;
        }
    }
    Permutation id(k);
    for (std::size_t i = 0; i < k; ++i) id[i] = i;
    std::vector<Permutation> elems{id};
    std::map<Permutation, std::size_t> index{{id, 0}};
    for (std::size_t head = 0; head < elems.size(); ++head) {
        for (const auto& g : generators) {
            Permutation nxt = compose_perm(elems[head], g);
            if (index.emplace(nxt, elems.size()).second) elems.push_back(nxt);
            if (elems.size() > 40320)
                throw std::invalid_argument("group_from_permutations: closure too large");
        }
    }
    std::size_t m = elems.size();
    std::vector<std::vector<std::size_t>> t(m, std::vector<std::size_t>(m));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            t[i][j] = index.at(compose_perm(elems[i], elems[j]));
    std::vector<std::string> labels;
    for (const auto& p : elems) {
        std::string s = "[";
        for (std::size_t i = 0; i < k; ++i) s += (i ? " " : "") + std::to_string(p[i]);
        labels.push_back(s + "]");
    }
    return PermutationGroup{FiniteGroup(std::move(t), std::move(labels)), std::move(elems)};
}

inline PermutationGroup symmetric_group_s3() {
    return group_from_permutations({{1, 0, 2}, {1, 2, 0}});
}

inline std::vector<std::vector<std::size_t>> conjugacy_classes(const FiniteGroup& g) {
    std::size_t m = g.order();
    std::vector<bool> done(m, false);
    std::vector<std::vector<std::size_t>> classes;
    for (std::size_t x = 0; x < m; ++x) {
        if (done[x]) continue;
        std::vector<std::size_t> cls;
        for (std::size_t w = 0; w < m; ++w) {
            std::size_t y = g.op(g.op(w, x), g.inverse(w));
            if (!done[y]) {
                done[y] = true;
                cls.push_back(y);
            }
        }
        classes.push_back(std::move(cls));
    }
    return classes;
}

/// Componentwise operation on pairs; element (x, y) gets index x*|G2| + y.
inline FiniteGroup product_group(const FiniteGroup& g1, const FiniteGroup& g2) {
    std::size_t m1 = g1.order(), m2 = g2.order(), m = m1 * m2;
    std::vector<std::vector<std::size_t>> t(m, std::vector<std::size_t>(m));
    std::vector<std::string> labels;
    for (std::size_t x1 = 0; x1 < m1; ++x1)
        for (std::size_t x2 = 0; x2 < m2; ++x2) {
            labels.push_back("(" + g1.label(x1) + "," + g2.label(x2) + ")");
            for (std::size_t y1 = 0; y1 < m1; ++y1)
                for (std::size_t y2 = 0; y2 < m2; ++y2)
                    t[x1 * m2 + x2][y1 * m2 + y2] = g1.op(x1, y1) * m2 + g2.op(x2, y2);
        }
    return FiniteGroup(std::move(t), std::move(labels));
}

inline FiniteGroup klein_four() {
    return product_group(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2));
}

}  // namespace ck
