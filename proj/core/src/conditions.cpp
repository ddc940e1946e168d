#include "ipr/conditions.hpp"

#include <algorithm>
#include <stdexcept>

namespace ipr {

FirstEntriesReport first_entries_check(const Matrix& a) {
    FirstEntriesReport rep;
    rep.satisfied = true;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        std::size_t lead = a.cols();
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (!a(i, j).is_zero()) {
                lead = j;
                break;
            }
        }
        if (lead == a.cols()) {
            rep.satisfied = false;
            rep.violation = "row " + std::to_string(i) + " is zero";
            return rep;
        }
        const Rational& e = a(i, lead);
        if (e.sign() < 0) {
            rep.satisfied = false;
            rep.violation = "row " + std::to_string(i) + " has negative first entry " + e.str();
            return rep;
        }
        auto it = rep.first_entries.find(lead);
        if (it == rep.first_entries.end()) {
            rep.first_entries.emplace(lead, e);
        } else if (it->second != e) {
            rep.satisfied = false;
            rep.violation = "column " + std::to_string(lead) + " has first entries " +
                            it->second.str() + " and " + e.str();
            return rep;
        }
    }
    return rep;
}

namespace {

bool is_zero_vec(const std::vector<Rational>& v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& r) { return r.is_zero(); });
}

// Echelon basis over Q, grown incrementally with backtracking support.
struct Echelon {
    struct Row {
        std::vector<Rational> vec;
        std::size_t pivot;
    };
    std::vector<Row> rows;

    // Reduces v in place against the basis; returns true iff it vanishes.
    bool reduce(std::vector<Rational>& v) const {
        for (const Row& r : rows) {
            if (v[r.pivot].is_zero()) continue;
            Rational f = v[r.pivot] / r.vec[r.pivot];
            for (std::size_t i = 0; i < v.size(); ++i) v[i] -= f * r.vec[i];
        }
        return is_zero_vec(v);
    }

    bool contains(const std::vector<Rational>& v) const {
        std::vector<Rational> w = v;
        return reduce(w);
    }

    void add(std::vector<Rational> v) {
        if (reduce(v)) return;
        std::size_t p = 0;
        while (v[p].is_zero()) ++p;
        rows.push_back({std::move(v), p});
    }

    std::size_t mark() const { return rows.size(); }
    void rollback(std::size_t m) { rows.resize(m); }
};

std::vector<std::size_t> mask_to_indices(unsigned mask) {
    std::vector<std::size_t> out;
    for (unsigned j = 0; mask; ++j, mask >>= 1)
        if (mask & 1u) out.push_back(j);
    return out;
}

struct PartitionSearch {
    const Matrix& a;
    std::size_t v;
    std::vector<std::vector<Rational>> subset_sum;  // indexed by column mask
    std::vector<char> zero_sum;
    Echelon span;
    std::vector<unsigned> parts;
    std::size_t want_parts = 0;

    explicit PartitionSearch(const Matrix& m) : a(m), v(m.cols()) {
        subset_sum.resize(std::size_t{1} << v);
        zero_sum.resize(std::size_t{1} << v);
        subset_sum[0].assign(a.rows(), Rational());
        zero_sum[0] = 1;
        for (unsigned mask = 1; mask < (1u << v); ++mask) {
            unsigned low = mask & (~mask + 1u);
            unsigned j = 0;
            while (!((low >> j) & 1u)) ++j;
            std::vector<Rational> s = subset_sum[mask ^ low];
            for (std::size_t i = 0; i < a.rows(); ++i) s[i] += a(i, j);
            zero_sum[mask] = is_zero_vec(s);
            subset_sum[mask] = std::move(s);
        }
    }

    void push_columns(unsigned mask) {
        for (std::size_t j : mask_to_indices(mask)) span.add(a.column(j));
    }

    // Fills slots t..want_parts-1 from `remaining`; submasks tried in
    // ascending order so the first hit is canonical.
    bool extend(std::size_t t, unsigned remaining) {
        if (t + 1 == want_parts) {
            if (remaining == 0) return false;
            parts.push_back(remaining);
            if (span.contains(subset_sum[remaining])) return true;
            parts.pop_back();
            return false;
        }
        for (unsigned s = (0u - remaining) & remaining; s;
             s = (s - remaining) & remaining) {
            if (s == remaining) break;  // later slots would be empty
            if (!span.contains(subset_sum[s])) continue;
            parts.push_back(s);
            std::size_t m = span.mark();
            push_columns(s);
            if (extend(t + 1, remaining & ~s)) return true;
            span.rollback(m);
            parts.pop_back();
        }
        return false;
    }

    bool run(std::size_t k) {
        want_parts = k;
        unsigned full = static_cast<unsigned>((std::size_t{1} << v) - 1);
        if (k == 1) {
            if (!zero_sum[full]) return false;
            parts.assign(1, full);
            return true;
        }
        for (unsigned first = (0u - full) & full; first; first = (first - full) & full) {
            if (first == full) break;
            if (!zero_sum[first]) continue;
            parts.assign(1, first);
            std::size_t m = span.mark();
            push_columns(first);
            if (extend(1, full & ~first)) return true;
            span.rollback(m);
            parts.clear();
        }
        return false;
    }
};

}  // namespace

std::optional<std::vector<Rational>> rational_span_member(
    const std::vector<std::vector<Rational>>& basis,
    const std::vector<Rational>& target) {
    const std::size_t d = target.size();
    const std::size_t n = basis.size();
    for (const auto& b : basis)
        if (b.size() != d) throw std::invalid_argument("rational_span_member: dimension mismatch");

    // Augmented [B | target] with basis vectors as columns; reduce to RREF.
    std::vector<std::vector<Rational>> m(d, std::vector<Rational>(n + 1));
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < n; ++j) m[i][j] = basis[j][i];
        m[i][n] = target[i];
    }

    std::vector<std::pair<std::size_t, std::size_t>> pivots;  // (row, col)
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < d; ++c) {
        std::size_t p = r;
        while (p < d && m[p][c].is_zero()) ++p;
        if (p == d) continue;
        std::swap(m[p], m[r]);
        Rational inv = Rational(1) / m[r][c];
        for (std::size_t j = c; j <= n; ++j) m[r][j] *= inv;
        for (std::size_t i = 0; i < d; ++i) {
            if (i == r || m[i][c].is_zero()) continue;
            Rational f = m[i][c];
            for (std::size_t j = c; j <= n; ++j) m[i][j] -= f * m[r][j];
        }
        pivots.emplace_back(r, c);
        ++r;
    }
    for (std::size_t i = r; i < d; ++i)
        if (!m[i][n].is_zero()) return std::nullopt;

    std::vector<Rational> coef(n);  // free variables stay zero
    for (auto [pr, pc] : pivots) coef[pc] = m[pr][n];
    return coef;
}

bool ColumnsConditionCertificate::revalidate(const Matrix& a) const {
    const std::size_t v = a.cols();
    if (partition.empty()) return false;
    std::vector<char> seen(v, 0);
    for (const auto& part : partition) {
        if (part.empty()) return false;
        for (std::size_t j : part) {
            if (j >= v || seen[j]) return false;
            seen[j] = 1;
        }
    }
    for (std::size_t j = 0; j < v; ++j)
        if (!seen[j]) return false;
    if (span_coefficients.size() + 1 != partition.size()) return false;

    auto part_sum = [&](const std::vector<std::size_t>& part) {
        std::vector<Rational> s(a.rows());
        for (std::size_t j : part)
            for (std::size_t i = 0; i < a.rows(); ++i) s[i] += a(i, j);
        return s;
    };

    if (!is_zero_vec(part_sum(partition[0]))) return false;

    std::vector<std::size_t> earlier;
    for (std::size_t t = 1; t < partition.size(); ++t) {
        earlier.insert(earlier.end(), partition[t - 1].begin(), partition[t - 1].end());
        std::sort(earlier.begin(), earlier.end());
        const auto& coef = span_coefficients[t - 1];
        if (coef.size() != earlier.size()) return false;
        std::vector<Rational> lhs(a.rows());
        for (std::size_t idx = 0; idx < earlier.size(); ++idx)
            for (std::size_t i = 0; i < a.rows(); ++i)
                lhs[i] += coef[idx] * a(i, earlier[idx]);
        std::vector<Rational> rhs = part_sum(partition[t]);
        if (lhs != rhs) return false;
    }
    return true;
}

std::optional<ColumnsConditionCertificate> columns_condition_check(const Matrix& a) {
    const std::size_t v = a.cols();
    if (v == 0 || a.rows() == 0) throw std::invalid_argument("columns_condition_check: empty matrix");
    if (v > 16) throw std::invalid_argument("columns_condition_check: more than 16 columns");

    PartitionSearch search(a);
    for (std::size_t k = 1; k <= v; ++k) {
        search.span.rollback(0);
        search.parts.clear();
        if (!search.run(k)) continue;

        ColumnsConditionCertificate cert;
        for (unsigned mask : search.parts) cert.partition.push_back(mask_to_indices(mask));
        std::vector<std::size_t> earlier;
        for (std::size_t t = 1; t < cert.partition.size(); ++t) {
            earlier.insert(earlier.end(), cert.partition[t - 1].begin(), cert.partition[t - 1].end());
            std::sort(earlier.begin(), earlier.end());
            std::vector<std::vector<Rational>> basis;
            basis.reserve(earlier.size());
            for (std::size_t j : earlier) basis.push_back(a.column(j));
            std::vector<Rational> target(a.rows());
            for (std::size_t j : cert.partition[t])
                for (std::size_t i = 0; i < a.rows(); ++i) target[i] += a(i, j);
            auto coef = rational_span_member(basis, target);
            if (!coef) throw std::logic_error("columns_condition_check: certificate assembly failed");
            cert.span_coefficients.push_back(std::move(*coef));
        }
        return cert;
    }
    return std::nullopt;
}

}  // namespace ipr
