#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ipr/matrix.hpp"

namespace ipr {

// First-entries condition: no zero row, the first non-zero entry of every
// row is positive, and rows whose first non-zero entry lies in the same
// column agree on that entry.
struct FirstEntriesReport {
    bool satisfied = false;
    // column -> shared first-entry value, for columns that lead some row.
    std::map<std::size_t, Rational> first_entries;
    std::optional<std::string> violation;
};

FirstEntriesReport first_entries_check(const Matrix& a);

// Coefficients expressing target as a rational combination of the basis
// vectors, or nullopt if target is outside their span.  All vectors must
// share one dimension.  basis empty: only the zero target is in the span
// (witnessed by an empty coefficient list).
std::optional<std::vector<Rational>> rational_span_member(
    const std::vector<std::vector<Rational>>& basis,
    const std::vector<Rational>& target);

// Columns condition certificate: an ordered partition I_1..I_k of the
// column indices with sum(I_1) = 0 and, for t >= 2, sum(I_t) a rational
// combination of the columns in I_1..I_{t-1}.
struct ColumnsConditionCertificate {
    std::vector<std::vector<std::size_t>> partition;  // each part sorted ascending
    // span_coefficients[t-2]: coefficients over the columns in
    // I_1 u ... u I_{t-1}, listed in ascending column order.
    std::vector<std::vector<Rational>> span_coefficients;

    // Recomputes both certificate equations exactly against a.
    bool revalidate(const Matrix& a) const;
};

// Exhaustive ordered-set-partition search, by increasing part count, parts
// chosen in ascending bitmask order; returns the first certificate found.
// Exponential in the column count; throws std::invalid_argument above 16
// columns.
std::optional<ColumnsConditionCertificate> columns_condition_check(const Matrix& a);

}  // namespace ipr
