#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>

#include "ipr/conditions.hpp"
#include "ipr/matrix.hpp"
#include "ipr/systems.hpp"

namespace ipr {

enum class FamilyKind { mt, weak_mt };

// Row family over a fixed coefficient sequence a: a row r (over omega)
// belongs iff compress(r) == a (mt) or delete_zeros(r) == a (weak_mt).
// mt requires a compressed.
struct RowFamily {
    FamilyKind kind;
    CoefficientSeq a;

    RowFamily(FamilyKind k, CoefficientSeq coef);
};

struct EnumeratedRows {
    Matrix matrix;
    bool truncated = false;  // row_cap hit
};

// All family rows of the given width, as a matrix.  weak_mt rows are the
// placements of a into width slots, in lexicographic support order; mt rows
// additionally repeat each a_i over a run, supports in prefix-first order
// and run lengths in lexicographic order within a support.
EnumeratedRows enumerate_rows(const RowFamily& family, std::size_t width,
                              std::size_t row_cap = 5000);

// Exact number of family rows of the given width; throws
// std::overflow_error if it does not fit in long long.
long long row_count(const RowFamily& family, std::size_t width);

// Column split at [offset, offset+width): the candidate finite block and
// the remainder (all other columns, order kept).
struct SubtractedSplit {
    std::size_t offset = 0;
    std::size_t width = 0;
    Matrix finite_part;
    Matrix remainder;
};

SubtractedSplit split_columns(const Matrix& a, std::size_t offset, std::size_t width);

// How the remainder block is argued regular: the first-entries condition,
// a finite forced verdict at the given parameters, or entry-for-entry
// equality with a declared matrix.
struct FirstEntriesEvidence {};
struct VerifySpec {
    long long n = 1;
    int colors = 2;
    long long xmax = 0;  // <= 0: default
};
struct DeclaredMatrixEvidence {
    Matrix declared;
};
using RemainderEvidence = std::variant<FirstEntriesEvidence, VerifySpec, DeclaredMatrixEvidence>;

struct SubtractedReport {
    bool no_zero_row = false;
    bool finite_part_ok = false;
    FirstEntriesReport finite_part_first_entries;
    std::optional<bool> finite_part_forced;  // set when a verify pass was requested
    bool remainder_ok = false;
    std::string remainder_mode;
    std::string remainder_note;
    std::string note;

    bool passed() const {
        return no_zero_row && finite_part_ok && remainder_ok &&
               (!finite_part_forced || *finite_part_forced);
    }
};

// Checks the subtracted shape: no zero row, finite row support (trivial at
// finite width, recorded in note), distinct finite-block rows satisfying
// the first-entries condition, and the remainder backed by the given
// evidence.  also_verify additionally demands a forced verdict on the
// distinct finite-block rows.
SubtractedReport validate_subtracted(const Matrix& a, std::size_t offset, std::size_t width,
                                     const RemainderEvidence& evidence,
                                     const std::optional<VerifySpec>& also_verify = {});

}  // namespace ipr
