#include "ipr/families.hpp"

#include <algorithm>
#include <stdexcept>

#include "checked_arith.hpp"
#include "ipr/search.hpp"

namespace ipr {

using detail::checked_add;
using detail::checked_mul;

RowFamily::RowFamily(FamilyKind k, CoefficientSeq coef) : kind(k), a(std::move(coef)) {
    if (kind == FamilyKind::mt && !a.compressed())
        throw std::invalid_argument("RowFamily: mt needs a compressed coefficient sequence");
}

namespace {

struct RowEmitter {
    std::size_t width;
    std::size_t cap;
    std::vector<std::vector<Rational>> rows;
    bool truncated = false;

    bool full() const { return rows.size() >= cap; }

    void emit(const std::vector<Rational>& row) {
        if (full()) {
            truncated = true;
            return;
        }
        rows.push_back(row);
    }
};

void weak_mt_rows(const IntSeq& a, RowEmitter& em) {
    const std::size_t m = a.size();
    std::vector<Rational> row(em.width);
    std::vector<std::size_t> pos(m);
    auto rec = [&](auto&& self, std::size_t i, std::size_t start) -> void {
        if (em.truncated) return;
        if (i == m) {
            em.emit(row);
            return;
        }
        for (std::size_t p = start; p + (m - i) <= em.width && !em.truncated; ++p) {
            row[p] = a[i];
            self(self, i + 1, p + 1);
            row[p] = Rational();
        }
    };
    rec(rec, 0, 0);
}

// Run lengths (lexicographic) for the support held in pos[0..s).
void mt_emit_comps(const IntSeq& a, const std::vector<std::size_t>& pos, std::size_t s,
                   RowEmitter& em) {
    const std::size_t m = a.size();
    std::vector<Rational> row(em.width);
    std::vector<std::size_t> runs(m);
    auto rec = [&](auto&& self, std::size_t i, std::size_t used) -> void {
        if (em.truncated) return;
        if (i + 1 == m) {
            runs[i] = s - used;
            std::size_t at = 0;
            for (std::size_t k = 0; k < m; ++k)
                for (std::size_t rep = 0; rep < runs[k]; ++rep) row[pos[at++]] = a[k];
            em.emit(row);
            for (std::size_t k = 0; k < s; ++k) row[pos[k]] = Rational();
            return;
        }
        for (std::size_t len = 1; used + len + (m - i - 1) <= s && !em.truncated; ++len) {
            runs[i] = len;
            self(self, i + 1, used + len);
        }
    };
    rec(rec, 0, 0);
}

void mt_rows(const IntSeq& a, RowEmitter& em) {
    const std::size_t m = a.size();
    std::vector<std::size_t> pos;
    pos.reserve(em.width);
    // Prefix-first: a support is emitted before its extensions.
    auto rec = [&](auto&& self, std::size_t start) -> void {
        if (em.truncated) return;
        if (pos.size() >= m) mt_emit_comps(a, pos, pos.size(), em);
        for (std::size_t p = start; p < em.width && !em.truncated; ++p) {
            pos.push_back(p);
            self(self, p + 1);
            pos.pop_back();
        }
    };
    rec(rec, 0);
}

long long binom(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    long long acc = 1;
    for (std::size_t i = 1; i <= k; ++i) {
        acc = checked_mul(acc, static_cast<long long>(n - k + i));
        acc /= static_cast<long long>(i);
    }
    return acc;
}

}  // namespace

EnumeratedRows enumerate_rows(const RowFamily& family, std::size_t width, std::size_t row_cap) {
    if (width == 0) throw std::invalid_argument("enumerate_rows: width must be >= 1");
    if (width < family.a.size())
        throw std::invalid_argument("enumerate_rows: width shorter than the coefficient sequence");
    if (row_cap == 0) throw std::invalid_argument("enumerate_rows: row_cap must be >= 1");
    RowEmitter em{width, row_cap, {}, false};
    if (family.kind == FamilyKind::weak_mt)
        weak_mt_rows(family.a.a, em);
    else
        mt_rows(family.a.a, em);
    EnumeratedRows out;
    out.truncated = em.truncated;
    out.matrix = Matrix::from_rows(em.rows);
    return out;
}

long long row_count(const RowFamily& family, std::size_t width) {
    const std::size_t m = family.a.size();
    if (width < m) return 0;
    if (family.kind == FamilyKind::weak_mt) return binom(width, m);
    long long total = 0;
    for (std::size_t s = m; s <= width; ++s)
        total = checked_add(total, checked_mul(binom(width, s), binom(s - 1, m - 1)));
    return total;
}

SubtractedSplit split_columns(const Matrix& a, std::size_t offset, std::size_t width) {
    if (width == 0) throw std::invalid_argument("split_columns: width must be >= 1");
    if (offset + width > a.cols()) throw std::invalid_argument("split_columns: block out of range");
    SubtractedSplit out;
    out.offset = offset;
    out.width = width;
    std::vector<std::vector<Rational>> fin(a.rows()), rem(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (j >= offset && j < offset + width)
                fin[i].push_back(a(i, j));
            else
                rem[i].push_back(a(i, j));
        }
    }
    out.finite_part = Matrix::from_rows(fin);
    out.remainder = Matrix::from_rows(rem);
    return out;
}

namespace {

Matrix distinct_rows(const Matrix& a) {
    std::vector<std::vector<Rational>> rows;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        std::vector<Rational> r(a.row(i).begin(), a.row(i).end());
        if (std::find(rows.begin(), rows.end(), r) == rows.end()) rows.push_back(std::move(r));
    }
    return Matrix::from_rows(rows);
}

}  // namespace

SubtractedReport validate_subtracted(const Matrix& a, std::size_t offset, std::size_t width,
                                     const RemainderEvidence& evidence,
                                     const std::optional<VerifySpec>& also_verify) {
    SubtractedReport rep;
    rep.note = "finite row support holds trivially at finite width";
    rep.no_zero_row = !a.has_zero_row();

    SubtractedSplit split = split_columns(a, offset, width);
    Matrix fin = distinct_rows(split.finite_part);
    rep.finite_part_first_entries = first_entries_check(fin);
    rep.finite_part_ok = rep.finite_part_first_entries.satisfied;
    if (also_verify) {
        Verdict v = verify_ipr_finite(fin, also_verify->n, also_verify->colors, also_verify->xmax);
        rep.finite_part_forced = (v.kind == VerdictKind::forced);
    }

    if (split.remainder.cols() == 0) {
        rep.remainder_ok = false;
        rep.remainder_mode = "none";
        rep.remainder_note = "remainder is empty: the block must leave columns over";
        return rep;
    }
    if (std::holds_alternative<FirstEntriesEvidence>(evidence)) {
        rep.remainder_mode = "first-entries";
        FirstEntriesReport fe = first_entries_check(split.remainder);
        rep.remainder_ok = fe.satisfied;
        rep.remainder_note =
            fe.satisfied ? "remainder satisfies the first-entries condition" : *fe.violation;
    } else if (const VerifySpec* spec = std::get_if<VerifySpec>(&evidence)) {
        rep.remainder_mode = "verify";
        Verdict v = verify_ipr_finite(split.remainder, spec->n, spec->colors, spec->xmax);
        rep.remainder_ok = (v.kind == VerdictKind::forced);
        rep.remainder_note = rep.remainder_ok
                                 ? "remainder forced at N=" + std::to_string(spec->n)
                                 : "remainder not forced at N=" + std::to_string(spec->n);
    } else {
        rep.remainder_mode = "declared";
        const Matrix& declared = std::get<DeclaredMatrixEvidence>(evidence).declared;
        rep.remainder_ok = (split.remainder == declared);
        rep.remainder_note = rep.remainder_ok ? "remainder equals the declared matrix"
                                              : "remainder differs from the declared matrix";
    }
    return rep;
}

}  // namespace ipr
