// Acceptance harness: one line per criterion, [PASS]/[FAIL], exit 1 on any
// failure.  Each criterion carries a wall-clock budget checked here, not by
// the surrounding test runner, so a slow pass is a failure too.
//
// Usage: ipr_acceptance [--seed S] [--only SUBSTRING]

#include <chrono>
#include <cstdint>
#include <cstring>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ipr/conditions.hpp"
#include "ipr/families.hpp"
#include "ipr/matrix.hpp"
#include "ipr/search.hpp"
#include "ipr/seq.hpp"
#include "ipr/systems.hpp"
#include "support/oracles.hpp"

namespace {

std::uint64_t g_seed = 1;

struct Failure {
    std::string detail;
};

void require(bool ok, const std::string& detail) {
    if (!ok) throw Failure{detail};
}

std::string show(const ipr::IntSeq& v) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i];
    os << ']';
    return os.str();
}

// The coloring searches below want plain value sets.
std::vector<std::vector<long long>> value_sets(const std::vector<ipr::ImageInstance>& images) {
    std::vector<std::vector<long long>> out;
    out.reserve(images.size());
    for (const auto& im : images) out.push_back(im.values);
    return out;
}

// ---- 1: sequence operators ----------------------------------------------

void crit_sequence_operators() {
    std::mt19937_64 rng(g_seed);
    std::uniform_int_distribution<int> len(0, 12), entry(-5, 5);
    for (int it = 0; it < 10'000; ++it) {
        ipr::IntSeq x(static_cast<std::size_t>(len(rng)));
        for (auto& e : x) e = entry(rng);
        ipr::IntSeq d = ipr::delete_zeros(x);
        ipr::IntSeq c = ipr::compress(x);
        require(ipr::delete_zeros(d) == d, "d not idempotent on " + show(x));
        require(ipr::compress(c) == c, "c not idempotent on " + show(x));
        require(ipr::compress(d) == c, "c != c after d on " + show(x));
        for (long long e : c) require(e != 0, "zero survived compression of " + show(x));
        for (std::size_t i = 1; i < c.size(); ++i)
            require(c[i] != c[i - 1], "equal neighbours in compression of " + show(x));
        require(ipr::is_compressed(c), "compression not compressed for " + show(x));
    }
}

// ---- 2: Schur thresholds -------------------------------------------------

void check_threshold(const ipr::Matrix& a, long long n, int r, long long xmax, bool want_forced,
                     const std::string& label) {
    ipr::Verdict v = ipr::verify_ipr_finite(a, n, r, xmax);
    require(v.enumeration_complete, label + ": enumeration incomplete");
    if (want_forced)
        require(v.kind == ipr::VerdictKind::forced, label + ": expected forced");
    else
        require(v.kind == ipr::VerdictKind::avoidable, label + ": expected avoidable");
}

void crit_schur_thresholds() {
    ipr::Matrix s = ipr::schur_matrix();
    check_threshold(s, 4, 2, 4, false, "schur N=4 r=2");
    check_threshold(s, 5, 2, 5, true, "schur N=5 r=2");
    check_threshold(s, 13, 3, 0, false, "schur N=13 r=3");
    check_threshold(s, 14, 3, 0, true, "schur N=14 r=3");

    // brute force over all 2-colorings agrees at the boundary
    for (long long n : {4LL, 5LL}) {
        auto en = ipr::enumerate_images(s, n, n);
        require(en.complete, "schur enumeration incomplete");
        auto brute = oracles::avoiding_coloring(value_sets(en.images), n, 2);
        auto fast = ipr::find_avoiding_coloring(en.images, n, 2);
        require(brute.has_value() == fast.has_value(), "oracle disagrees at N=" + std::to_string(n));
        if (brute) require(*brute == fast->assignment, "coloring differs at N=" + std::to_string(n));
    }
}

// ---- 3: van der Waerden thresholds ---------------------------------------

void crit_vdw_thresholds() {
    ipr::Matrix w = ipr::vdw_matrix(3);
    check_threshold(w, 8, 2, 8, false, "vdw N=8");
    check_threshold(w, 9, 2, 9, true, "vdw N=9");
}

// ---- 4: the doubling family stays avoidable ------------------------------

void crit_doubling_family() {
    ipr::Matrix a = ipr::Matrix::from_rows({{ipr::Rational(1)}, {ipr::Rational(2)}});
    for (long long n = 2; n <= 64; ++n) {
        ipr::Verdict v = ipr::verify_ipr_finite(a, n, 2);
        require(v.kind == ipr::VerdictKind::avoidable,
                "x,2x not avoidable at N=" + std::to_string(n));
    }
}

// ---- 5: row families against the exhaustive filter -----------------------

void crit_row_families() {
    for (std::size_t m = 1; m <= 3; ++m) {
        std::vector<std::size_t> idx(m, 0);
        for (;;) {
            ipr::IntSeq a(m);
            for (std::size_t i = 0; i < m; ++i) a[i] = static_cast<long long>(idx[i]) + 1;
            long long hi = *std::max_element(a.begin(), a.end());
            for (ipr::FamilyKind kind : {ipr::FamilyKind::weak_mt, ipr::FamilyKind::mt}) {
                if (kind == ipr::FamilyKind::mt && !ipr::is_compressed(a)) continue;
                ipr::RowFamily fam(kind, ipr::CoefficientSeq(a));
                for (std::size_t v = m; v <= 6; ++v) {
                    auto rows = ipr::enumerate_rows(fam, v, 1'000'000);
                    require(!rows.truncated, "family unexpectedly truncated");

                    // every vector over {0..max(a)}^v, filtered by d/c
                    std::set<ipr::IntSeq> want;
                    ipr::IntSeq r(v, 0);
                    for (;;) {
                        ipr::IntSeq key = kind == ipr::FamilyKind::mt ? ipr::compress(r)
                                                                      : ipr::delete_zeros(r);
                        if (key == a) want.insert(r);
                        std::size_t j = 0;
                        while (j < v && r[j] == hi) r[j++] = 0;
                        if (j == v) break;
                        ++r[j];
                    }

                    std::set<ipr::IntSeq> got;
                    for (std::size_t i = 0; i < rows.matrix.rows(); ++i) {
                        ipr::IntSeq row(v);
                        for (std::size_t j = 0; j < v; ++j)
                            row[j] = rows.matrix(i, j).to_int64();
                        got.insert(row);
                    }
                    require(got == want, "row set mismatch for a=" + show(a) +
                                             " width=" + std::to_string(v));
                    require(static_cast<long long>(got.size()) == ipr::row_count(fam, v),
                            "row_count mismatch for a=" + show(a));
                }
            }
            std::size_t j = 0;
            while (j < m && idx[j] == 2) idx[j++] = 0;
            if (j == m) break;
            ++idx[j];
        }
    }
}

// ---- 6: constant vectors give constant images ----------------------------

void crit_constant_image() {
    std::mt19937_64 rng(g_seed + 6);
    std::uniform_int_distribution<int> mlen(1, 3), entry(1, 3), wext(0, 3), dval(1, 20);
    for (int it = 0; it < 100; ++it) {
        ipr::IntSeq a(static_cast<std::size_t>(mlen(rng)));
        for (auto& e : a) e = entry(rng);
        std::size_t width = a.size() + static_cast<std::size_t>(wext(rng));
        auto rows = ipr::enumerate_rows(ipr::RowFamily(ipr::FamilyKind::weak_mt,
                                                       ipr::CoefficientSeq(a)),
                                        width, 100'000);
        long long d = dval(rng);
        long long expect = d * std::accumulate(a.begin(), a.end(), 0LL);
        ipr::IntSeq x(width, d);
        for (const ipr::Rational& q : ipr::matrix_image(rows.matrix, x))
            require(q == ipr::Rational(expect), "image of constant vector not constant");
    }

    // two truncations glued on the diagonal: scale each block by the
    // opposite coefficient sum and the whole image collapses to lcm(s1,s2)
    std::uniform_int_distribution<int> pick(1, 3);
    for (int it = 0; it < 20; ++it) {
        ipr::IntSeq a1(static_cast<std::size_t>(mlen(rng))), a2(static_cast<std::size_t>(mlen(rng)));
        for (auto& e : a1) e = pick(rng);
        for (auto& e : a2) e = pick(rng);
        std::size_t w1 = a1.size() + 1, w2 = a2.size() + 2;
        auto m1 = ipr::enumerate_rows(ipr::RowFamily(ipr::FamilyKind::weak_mt,
                                                     ipr::CoefficientSeq(a1)),
                                      w1, 100'000)
                      .matrix;
        auto m2 = ipr::enumerate_rows(ipr::RowFamily(ipr::FamilyKind::weak_mt,
                                                     ipr::CoefficientSeq(a2)),
                                      w2, 100'000)
                      .matrix;
        long long s1 = std::accumulate(a1.begin(), a1.end(), 0LL);
        long long s2 = std::accumulate(a2.begin(), a2.end(), 0LL);
        long long l = std::lcm(s1, s2);
        ipr::Matrix diag = ipr::diagonal_sum({m1, m2});
        ipr::IntSeq x(w1 + w2);
        std::fill(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(w1), l / s1);
        std::fill(x.begin() + static_cast<std::ptrdiff_t>(w1), x.end(), l / s2);
        for (const ipr::Rational& q : ipr::matrix_image(diag, x))
            require(q == ipr::Rational(l), "blockwise scaling did not level the image");
    }
}

// ---- 7: subsystems stay inside the parent sets ---------------------------

void crit_subsystem_containment() {
    std::mt19937_64 rng(g_seed + 7);
    std::uniform_int_distribution<int> xlen(1, 8), xval(1, 9), alen(1, 3), aval(1, 3);
    auto subset = [](const std::vector<long long>& inner, const std::vector<long long>& outer) {
        return std::includes(outer.begin(), outer.end(), inner.begin(), inner.end());
    };
    for (int it = 0; it < 1'000; ++it) {
        ipr::IntSeq x(static_cast<std::size_t>(xlen(rng)));
        for (auto& e : x) e = xval(rng);
        ipr::IntSeq a(static_cast<std::size_t>(alen(rng)));
        for (auto& e : a) e = aval(rng);
        ipr::IntSeq ac = ipr::compress(a);
        ipr::CoefficientSeq coef(ac.empty() ? ipr::IntSeq{1} : ac);

        // random separated block family over 1..|x|
        std::vector<std::vector<std::size_t>> blocks;
        std::size_t pos = 1;
        std::uniform_int_distribution<std::size_t> step(0, 1);
        while (pos <= x.size()) {
            std::vector<std::size_t> b;
            while (pos <= x.size() && (b.empty() || step(rng))) b.push_back(pos++);
            blocks.push_back(b);
            pos += step(rng);
        }
        ipr::BlockSystem bs(blocks);
        ipr::IntSeq ys = ipr::sum_subsystem(x, bs);
        ipr::IntSeq yp = ipr::product_subsystem(x, bs);

        require(subset(ipr::fs_set(ys), ipr::fs_set(x)), "fs of sum-subsystem escapes fs");
        require(subset(ipr::fp_set(yp), ipr::fp_set(x)), "fp of product-subsystem escapes fp");
        require(subset(ipr::mt_set(coef, ys), ipr::mt_set(coef, x)),
                "mt of sum-subsystem escapes mt");
        require(subset(ipr::wmt_set(coef, ys), ipr::mt_set(coef, x)),
                "wmt of sum-subsystem escapes mt");
        require(subset(ipr::pmt_set(coef, yp), ipr::pmt_set(coef, x)),
                "pmt of product-subsystem escapes pmt");
        require(subset(ipr::wmt_set(coef, x), ipr::mt_set(coef, x)), "wmt escapes mt");
    }
}

// ---- 8: the subtracted diagonal-sum construction gets forced --------------

// Frozen after the first derivation run; 0 means derive-and-report only.
constexpr long long kDiagonalGoldenN = 9;

ipr::Matrix diagonal_construction() {
    ipr::IntSeq a{1, 2};
    ipr::Matrix rem = ipr::enumerate_rows(ipr::RowFamily(ipr::FamilyKind::weak_mt,
                                                         ipr::CoefficientSeq(a)),
                                          4, 100)
                          .matrix;
    ipr::Matrix fin = ipr::schur_matrix();
    // every (finite row | remainder row) pair, finite block first
    std::vector<std::vector<ipr::Rational>> rows;
    for (std::size_t i = 0; i < fin.rows(); ++i)
        for (std::size_t k = 0; k < rem.rows(); ++k) {
            std::vector<ipr::Rational> r;
            for (std::size_t j = 0; j < fin.cols(); ++j) r.push_back(fin(i, j));
            for (std::size_t j = 0; j < rem.cols(); ++j) r.push_back(rem(k, j));
            rows.push_back(std::move(r));
        }
    ipr::Matrix sub = ipr::Matrix::from_rows(rows);
    return ipr::diagonal_sum({sub, rem});
}

void crit_subtracted_diagonal() {
    ipr::Matrix big = diagonal_construction();
    require(big.rows() == 24 && big.cols() == 10, "construction has the wrong shape");

    // the subtracted shape itself holds for the left block
    ipr::SubtractedReport rep =
        ipr::validate_subtracted(ipr::Matrix::from_rows([&] {
                                     std::vector<std::vector<ipr::Rational>> rows;
                                     for (std::size_t i = 0; i < 18; ++i) {
                                         std::vector<ipr::Rational> r;
                                         for (std::size_t j = 0; j < 6; ++j)
                                             r.push_back(big(i, j));
                                         rows.push_back(std::move(r));
                                     }
                                     return rows;
                                 }()),
                                 0, 2, ipr::FirstEntriesEvidence{});
    require(rep.passed(), "left block is not subtracted-shaped: " + rep.note);

    ipr::SearchOptions opts;
    opts.node_budget = 20'000'000;
    ipr::Verdict v = ipr::verify_ipr_deepening(big, 2, 40, 2, 0, opts);
    require(v.kind == ipr::VerdictKind::forced, "never forced up to N=40");
    std::cout << "      forced at N=" << v.n << " using " << v.images_used << " images\n";
    if (kDiagonalGoldenN > 0)
        require(v.n == kDiagonalGoldenN,
                "forced at N=" + std::to_string(v.n) + ", golden value is " +
                    std::to_string(kDiagonalGoldenN));
}

// ---- 9: the CNF export decides exactly like the search --------------------

void crit_cnf_equivalence() {
    struct Inst {
        ipr::Matrix a;
        long long n;
        int r;
    };
    std::vector<Inst> insts;
    for (long long n : {4LL, 5LL}) insts.push_back({ipr::schur_matrix(), n, 2});
    for (long long n : {13LL, 14LL}) insts.push_back({ipr::schur_matrix(), n, 3});
    for (long long n : {8LL, 9LL}) insts.push_back({ipr::vdw_matrix(3), n, 2});
    ipr::Matrix doubling = ipr::Matrix::from_rows({{ipr::Rational(1)}, {ipr::Rational(2)}});
    for (long long n = 2; n <= 14; ++n) insts.push_back({doubling, n, 2});

    for (const auto& [a, n, r] : insts) {
        auto en = ipr::enumerate_images(a, n, ipr::default_xmax(a, n));
        require(en.complete, "enumeration incomplete at N=" + std::to_string(n));
        auto direct = ipr::find_avoiding_coloring(en.images, n, r);
        auto cnf = oracles::parse_dimacs(ipr::export_cnf(en.images, n, r));
        require(cnf.vars == static_cast<int>(n) * r, "CNF variable count is off");
        auto model = oracles::dpll_solve(cnf);
        require(model.has_value() == direct.has_value(),
                "CNF satisfiability disagrees at N=" + std::to_string(n) +
                    " r=" + std::to_string(r));
        if (model) {
            auto col = ipr::coloring_from_model(*model, n, r);
            require(col.has_value(), "model does not decode to a coloring");
            for (const auto& im : en.images) {
                bool mono = true;
                for (long long val : im.values)
                    if (col->color_of(val) != col->color_of(im.values[0])) mono = false;
                require(!mono, "decoded model leaves an image monochromatic");
            }
        }
    }
}

// ---- 10: both structural conditions against brute force -------------------

void crit_small_matrix_conditions() {
    long long checked = 0;
    for (std::size_t u = 1; u <= 3; ++u)
        for (std::size_t v = 1; v <= 4; ++v) {
            std::vector<int> cells(u * v, -1);
            for (;;) {
                oracles::IntMat m(u, std::vector<long long>(v));
                std::vector<std::vector<ipr::Rational>> rows(u, std::vector<ipr::Rational>(v));
                for (std::size_t i = 0; i < u; ++i)
                    for (std::size_t j = 0; j < v; ++j) {
                        m[i][j] = cells[i * v + j];
                        rows[i][j] = ipr::Rational(m[i][j]);
                    }
                ipr::Matrix a = ipr::Matrix::from_rows(rows);
                bool fe = ipr::first_entries_check(a).satisfied;
                require(fe == oracles::first_entries(m),
                        "first-entries disagrees on a " + std::to_string(u) + "x" +
                            std::to_string(v) + " matrix");
                bool cc = ipr::columns_condition_check(a).has_value();
                require(cc == oracles::columns_condition(m),
                        "columns condition disagrees on a " + std::to_string(u) + "x" +
                            std::to_string(v) + " matrix");
                ++checked;
                std::size_t j = 0;
                while (j < cells.size() && cells[j] == 1) cells[j++] = -1;
                if (j == cells.size()) break;
                ++cells[j];
            }
        }
    require(checked == 559'380, "unexpected matrix count: " + std::to_string(checked));
}

// ---- runner ---------------------------------------------------------------

struct Criterion {
    const char* name;
    double limit_s;
    std::function<void()> fn;
};

}  // namespace

int main(int argc, char** argv) {
    std::string only;
    for (int i = 1; i < argc; ++i) {
        if (!std::strcmp(argv[i], "--seed") && i + 1 < argc)
            g_seed = std::strtoull(argv[++i], nullptr, 10);
        else if (!std::strcmp(argv[i], "--only") && i + 1 < argc)
            only = argv[++i];
    }

    const std::vector<Criterion> criteria = {
        {"sequence-operators", 1.0, crit_sequence_operators},
        {"schur-thresholds", 60.0, crit_schur_thresholds},
        {"vdw-thresholds", 5.0, crit_vdw_thresholds},
        {"doubling-family-avoidable", 10.0, crit_doubling_family},
        {"row-family-enumeration", 10.0, crit_row_families},
        {"constant-image-construction", 1.0, crit_constant_image},
        {"subsystem-containment", 10.0, crit_subsystem_containment},
        {"subtracted-diagonal-forced", 240.0, crit_subtracted_diagonal},
        {"cnf-equivalence", 60.0, crit_cnf_equivalence},
        {"small-matrix-conditions", 30.0, crit_small_matrix_conditions},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        if (!only.empty() && std::string(c.name).find(only) == std::string::npos) continue;
        auto t0 = std::chrono::steady_clock::now();
        std::string detail;
        try {
            c.fn();
        } catch (const Failure& f) {
            detail = f.detail;
        } catch (const std::exception& e) {
            detail = std::string("unexpected exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (detail.empty() && secs > c.limit_s)
            detail = "time limit exceeded";
        std::ostringstream line;
        if (detail.empty()) {
            line << "[PASS] " << c.name;
        } else {
            line << "[FAIL] " << c.name << ": " << detail;
            ++failures;
        }
        line.precision(2);
        line << "  (" << std::fixed << secs << "s, limit " << c.limit_s << "s)";
        std::cout << line.str() << '\n';
    }
    return failures == 0 ? 0 : 1;
}
