#include "ipr/search.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace ipr {

bool Coloring::valid() const {
    if (domain < 1 || colors < 1) return false;
    if (assignment.size() != static_cast<std::size_t>(domain)) return false;
    for (int c : assignment)
        if (c < 0 || c >= colors) return false;
    return true;
}

Coloring parse_coloring(std::istream& in) {
    std::string tok;
    std::vector<long long> nums;
    while (in >> tok) {
        if (tok[0] == '#') {
            std::string rest;
            std::getline(in, rest);
            continue;
        }
        try {
            std::size_t used = 0;
            long long val = std::stoll(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            nums.push_back(val);
        } catch (const std::exception&) {
            throw ParseError("coloring: bad token '" + tok + "'");
        }
    }
    if (nums.size() < 2) throw ParseError("coloring: missing 'N r' header");
    Coloring c;
    c.domain = nums[0];
    c.colors = static_cast<int>(nums[1]);
    if (c.domain < 1 || nums[1] < 1 || nums[1] > 1000000)
        throw ParseError("coloring: bad N or r");
    if (nums.size() != 2 + static_cast<std::size_t>(c.domain))
        throw ParseError("coloring: expected " + std::to_string(c.domain) + " colors, got " +
                         std::to_string(nums.size() - 2));
    c.assignment.reserve(static_cast<std::size_t>(c.domain));
    for (std::size_t i = 2; i < nums.size(); ++i) {
        if (nums[i] < 0 || nums[i] >= nums[1])
            throw ParseError("coloring: color " + std::to_string(nums[i]) + " out of range");
        c.assignment.push_back(static_cast<int>(nums[i]));
    }
    return c;
}

Coloring load_coloring_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open coloring file: " + path);
    return parse_coloring(in);
}

std::string render_coloring(const Coloring& c) {
    std::ostringstream out;
    out << c.domain << ' ' << c.colors << '\n';
    for (std::size_t i = 0; i < c.assignment.size(); ++i) {
        if (i) out << ' ';
        out << c.assignment[i];
    }
    out << '\n';
    return out.str();
}

namespace {

// Integer view of a rational matrix: coef = L * A entry-wise, L = lcm of
// all denominators.  Valid image values V satisfy V % L == 0 and
// V / L in [1..N].
struct Scaled {
    std::size_t u = 0, v = 0;
    long long scale = 1;
    std::vector<long long> coef;  // row-major

    long long at(std::size_t i, std::size_t j) const { return coef[i * v + j]; }
};

Scaled scale_matrix(const Matrix& a, long long xmax) {
    if (a.rows() == 0 || a.cols() == 0) throw std::invalid_argument("matrix must be nonempty");
    Scaled s;
    s.u = a.rows();
    s.v = a.cols();
    mpz_class l(1);
    for (std::size_t i = 0; i < s.u; ++i)
        for (std::size_t j = 0; j < s.v; ++j)
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a(i, j).den().get_mpz_t());
    if (!l.fits_slong_p()) throw std::overflow_error("denominator lcm too large");
    s.scale = static_cast<long long>(l.get_si());
    s.coef.resize(s.u * s.v);
    for (std::size_t i = 0; i < s.u; ++i) {
        for (std::size_t j = 0; j < s.v; ++j) {
            mpz_class c = a(i, j).num() * (l / a(i, j).den());
            if (!c.fits_slong_p()) throw std::overflow_error("scaled coefficient too large");
            s.coef[i * s.v + j] = static_cast<long long>(c.get_si());
        }
    }
    for (std::size_t i = 0; i < s.u; ++i) {
        unsigned __int128 mag = 0;
        for (std::size_t j = 0; j < s.v; ++j) {
            long long c = s.at(i, j);
            mag += static_cast<unsigned __int128>(c < 0 ? -(unsigned long long)c : c) *
                   static_cast<unsigned long long>(xmax);
        }
        if (mag > (static_cast<unsigned __int128>(1) << 62))
            throw std::overflow_error("xmax too large for 64-bit row arithmetic");
    }
    if (static_cast<unsigned __int128>(s.scale) * static_cast<unsigned long long>(xmax) >
        (static_cast<unsigned __int128>(1) << 62))
        throw std::overflow_error("scale too large for 64-bit row arithmetic");
    return s;
}

// DFS over x in [1..xmax]^v with per-row interval pruning.  Zero columns
// are pinned to 1.  visit(x, values) is called at every surviving leaf;
// values[i] = (row i of A*x), already divided by the scale.
class ImageDfs {
  public:
    ImageDfs(const Scaled& s, long long n, long long xmax, unsigned long long budget)
        : s_(s), n_(n), xmax_(xmax), budget_(budget) {
        lo_ = s_.scale;
        hi_ = s_.scale * n_;  // fits: scale*n checked by caller via scale_matrix magnitudes
        min_tail_.assign(s_.u * (s_.v + 1), 0);
        max_tail_.assign(s_.u * (s_.v + 1), 0);
        for (std::size_t i = 0; i < s_.u; ++i) {
            for (std::size_t j = s_.v; j-- > 0;) {
                long long c = s_.at(i, j);
                long long cmin = c >= 0 ? c : c * xmax_;
                long long cmax = c >= 0 ? c * xmax_ : c;
                min_tail_[i * (s_.v + 1) + j] = min_tail_[i * (s_.v + 1) + j + 1] + cmin;
                max_tail_[i * (s_.v + 1) + j] = max_tail_[i * (s_.v + 1) + j + 1] + cmax;
            }
        }
        zero_col_.assign(s_.v, true);
        for (std::size_t j = 0; j < s_.v; ++j)
            for (std::size_t i = 0; i < s_.u; ++i)
                if (s_.at(i, j) != 0) {
                    zero_col_[j] = false;
                    break;
                }
        x_.assign(s_.v, 0);
        partial_.assign(s_.u, 0);
        vals_.assign(s_.u, 0);
    }

    template <typename Visit>
    bool run(Visit&& visit) {  // returns false iff the budget ran out
        visit_ = [&](const IntSeq& x, const std::vector<long long>& vals) {
            return visit(x, vals);
        };
        stop_ = false;
        dfs(0);
        return !out_of_budget_;
    }

    unsigned long long nodes() const { return nodes_; }
    void request_stop() { stop_ = true; }

  private:
    void dfs(std::size_t j) {
        if (nodes_ == budget_) {
            out_of_budget_ = true;
            stop_ = true;
            return;
        }
        ++nodes_;
        if (j == s_.v) {
            leaf();
            return;
        }
        const long long last = zero_col_[j] ? 1 : xmax_;
        for (long long val = 1; val <= last && !stop_; ++val) {
            x_[j] = val;
            bool feasible = true;
            for (std::size_t i = 0; i < s_.u; ++i) {
                long long p = partial_[i] + s_.at(i, j) * val;
                if (p + max_tail_[i * (s_.v + 1) + j + 1] < lo_ ||
                    p + min_tail_[i * (s_.v + 1) + j + 1] > hi_) {
                    feasible = false;
                    break;
                }
            }
            if (!feasible) continue;
            for (std::size_t i = 0; i < s_.u; ++i) partial_[i] += s_.at(i, j) * val;
            dfs(j + 1);
            for (std::size_t i = 0; i < s_.u; ++i) partial_[i] -= s_.at(i, j) * val;
        }
    }

    void leaf() {
        for (std::size_t i = 0; i < s_.u; ++i) {
            long long p = partial_[i];
            if (p < lo_ || p > hi_) return;
            if (s_.scale != 1 && p % s_.scale != 0) return;
            vals_[i] = p / s_.scale;
        }
        if (!visit_(x_, vals_)) stop_ = true;
    }

    const Scaled& s_;
    long long n_, xmax_, lo_, hi_;
    unsigned long long budget_, nodes_ = 0;
    bool out_of_budget_ = false, stop_ = false;
    std::vector<long long> min_tail_, max_tail_, partial_, vals_;
    std::vector<bool> zero_col_;
    IntSeq x_;
    std::function<bool(const IntSeq&, const std::vector<long long>&)> visit_;
};

}  // namespace

long long default_xmax(const Matrix& a, long long n) {
    if (n < 1) throw std::invalid_argument("default_xmax: n must be >= 1");
    bool any_negative = false;
    Rational best;  // widest per-column bound seen
    bool have = false;
    for (std::size_t j = 0; j < a.cols(); ++j) {
        Rational colmax;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            const Rational& c = a(i, j);
            if (c.sign() < 0) any_negative = true;
            if (c > colmax) colmax = c;
        }
        if (colmax.sign() <= 0) continue;  // unconstrained column, pinned to 1 anyway
        Rational bound = Rational(n) / colmax;
        if (!have || bound > best) {
            best = bound;
            have = true;
        }
    }
    if (any_negative || !have) return n;
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), best.num().get_mpz_t(), best.den().get_mpz_t());
    if (!q.fits_slong_p()) throw std::overflow_error("default_xmax: bound too large");
    long long b = static_cast<long long>(q.get_si());
    return b < 1 ? 1 : b;
}

ImageEnumeration enumerate_images(const Matrix& a, long long n, long long xmax,
                                  unsigned long long node_budget) {
    if (n < 1) throw std::invalid_argument("enumerate_images: n must be >= 1");
    if (xmax < 1) throw std::invalid_argument("enumerate_images: xmax must be >= 1");
    Scaled s = scale_matrix(a, std::max(xmax, n));

    std::map<std::vector<long long>, IntSeq> seen;  // value set -> first witness
    ImageDfs dfs(s, n, xmax, node_budget);
    bool complete = dfs.run([&](const IntSeq& x, const std::vector<long long>& vals) {
        std::vector<long long> key = vals;
        std::sort(key.begin(), key.end());
        key.erase(std::unique(key.begin(), key.end()), key.end());
        seen.try_emplace(std::move(key), x);
        return true;
    });

    ImageEnumeration out;
    out.complete = complete;
    out.nodes = dfs.nodes();

    std::vector<ImageInstance> cand;
    cand.reserve(seen.size());
    for (auto& [vals, wit] : seen) cand.push_back({vals, wit});
    std::stable_sort(cand.begin(), cand.end(), [](const ImageInstance& a_, const ImageInstance& b_) {
        if (a_.values.size() != b_.values.size()) return a_.values.size() < b_.values.size();
        return a_.values < b_.values;
    });

    // Keep only inclusion-minimal value sets; a superset is implied.
    const std::size_t words = static_cast<std::size_t>((n + 63) / 64);
    std::vector<std::vector<std::uint64_t>> kept_bits;
    for (auto& c : cand) {
        std::vector<std::uint64_t> bits(words, 0);
        for (long long v : c.values)
            bits[static_cast<std::size_t>((v - 1) / 64)] |= std::uint64_t{1} << ((v - 1) % 64);
        bool dominated = false;
        for (const auto& k : kept_bits) {
            bool subset = true;
            for (std::size_t w = 0; w < words; ++w)
                if ((k[w] & ~bits[w]) != 0) {
                    subset = false;
                    break;
                }
            if (subset) {
                dominated = true;
                break;
            }
        }
        if (!dominated) {
            kept_bits.push_back(std::move(bits));
            out.images.push_back(std::move(c));
        }
    }
    return out;
}

namespace {

// Backtracking r-coloring search over fixed image constraints.  Values are
// assigned in increasing order, so each image keeps a "uniform prefix"
// state; once all but the last element of an image share a color, that
// color is forbidden on the last element.
class AvoidSearch {
  public:
    AvoidSearch(const std::vector<ImageInstance>& images, long long n, int r) : n_(n), r_(r) {
        full_mask_ = (r >= 32) ? ~0u : ((1u << r) - 1u);
        occ_.resize(static_cast<std::size_t>(n));
        for (const auto& img : images) {
            std::size_t id = sizes_.size();
            sizes_.push_back(img.values.size());
            if (img.values.size() == 1) has_singleton_ = true;
            for (std::size_t pos = 0; pos < img.values.size(); ++pos)
                occ_[static_cast<std::size_t>(img.values[pos] - 1)].push_back(
                    {static_cast<std::uint32_t>(id), static_cast<std::uint32_t>(pos),
                     static_cast<std::uint32_t>(img.values.back() - 1)});
        }
        uni_.assign(sizes_.size(), 0);
        ucolor_.assign(sizes_.size(), 0);
        forbid_.assign(static_cast<std::size_t>(n), 0);
        color_.assign(static_cast<std::size_t>(n), -1);
        img_trail_.resize(static_cast<std::size_t>(n));
        forbid_trail_.resize(static_cast<std::size_t>(n));
    }

    bool impossible() const { return has_singleton_; }

    // prefix: colors for values 2..prefix.size()+1 (value 1 is pinned to
    // color 0).  abort() is polled during the walk; aborted runs report
    // "not found", which the caller must ignore.
    std::optional<std::vector<int>> solve(const std::vector<int>& prefix,
                                          const std::function<bool()>& abort) {
        if (has_singleton_) return std::nullopt;
        abort_ = &abort;
        if (!try_assign(0, 0)) return std::nullopt;
        bool ok = true;
        std::size_t depth = 1;
        for (int c : prefix) {
            if (depth >= static_cast<std::size_t>(n_)) break;
            if (!try_assign(depth, c)) {
                ok = false;
                break;
            }
            ++depth;
        }
        std::optional<std::vector<int>> res;
        if (ok && dfs(depth)) {
            res = color_;
            for (std::size_t d = static_cast<std::size_t>(n_); d-- > depth;) undo(d);
        }
        while (depth-- > 0) undo(depth);
        return res;
    }

  private:
    struct Occ {
        std::uint32_t img, pos, last_value;  // last_value is 0-based
    };
    struct ImgUndo {
        std::uint32_t img;
        std::uint8_t uni, ucolor;
    };
    struct ForbidUndo {
        std::uint32_t value;
        std::uint32_t mask;
    };

    bool dfs(std::size_t depth) {
        if (depth == static_cast<std::size_t>(n_)) return true;
        if (++poll_ % 8192 == 0 && (*abort_)()) return false;
        std::uint32_t blocked = forbid_[depth];
        for (int c = 0; c < r_; ++c) {
            if ((blocked >> c) & 1u) continue;
            if (!try_assign(depth, c)) continue;
            if (dfs(depth + 1)) return true;
            undo(depth);
            if ((*abort_)()) return false;
        }
        return false;
    }

    // Applies color c to value depth+1; on conflict rolls back and returns
    // false.  Records per-depth undo info otherwise.
    bool try_assign(std::size_t depth, int c) {
        auto& itrail = img_trail_[depth];
        auto& ftrail = forbid_trail_[depth];
        itrail.clear();
        ftrail.clear();
        color_[depth] = c;
        for (const Occ& o : occ_[depth]) {
            itrail.push_back({o.img, uni_[o.img], ucolor_[o.img]});
            bool uni;
            if (o.pos == 0) {
                uni_[o.img] = 1;
                ucolor_[o.img] = static_cast<std::uint8_t>(c);
                uni = true;
            } else if (uni_[o.img] && ucolor_[o.img] == c) {
                uni = true;
            } else {
                uni_[o.img] = 0;
                uni = false;
            }
            if (!uni) continue;
            std::size_t sz = sizes_[o.img];
            if (o.pos + 1 == sz) {  // whole image one color
                rollback(depth);
                return false;
            }
            if (o.pos + 2 == sz) {
                std::uint32_t lv = o.last_value;
                ftrail.push_back({lv, forbid_[lv]});
                forbid_[lv] |= 1u << c;
                if (forbid_[lv] == full_mask_) {  // that value has no color left
                    rollback(depth);
                    return false;
                }
            }
        }
        return true;
    }

    void rollback(std::size_t depth) {
        auto& itrail = img_trail_[depth];
        for (std::size_t i = itrail.size(); i-- > 0;) {
            uni_[itrail[i].img] = itrail[i].uni;
            ucolor_[itrail[i].img] = itrail[i].ucolor;
        }
        auto& ftrail = forbid_trail_[depth];
        for (std::size_t i = ftrail.size(); i-- > 0;) forbid_[ftrail[i].value] = ftrail[i].mask;
        color_[depth] = -1;
    }

    void undo(std::size_t depth) { rollback(depth); }

    long long n_;
    int r_;
    std::uint32_t full_mask_;
    bool has_singleton_ = false;
    std::vector<std::size_t> sizes_;
    std::vector<std::vector<Occ>> occ_;
    std::vector<std::uint8_t> uni_, ucolor_;
    std::vector<std::uint32_t> forbid_;
    std::vector<int> color_;
    std::vector<std::vector<ImgUndo>> img_trail_;
    std::vector<std::vector<ForbidUndo>> forbid_trail_;
    unsigned long long poll_ = 0;
    const std::function<bool()>* abort_ = nullptr;
};

std::vector<int> block_prefix(long long block, int r, int depth) {
    std::vector<int> prefix(static_cast<std::size_t>(depth));
    for (int i = depth - 1; i >= 0; --i) {
        prefix[static_cast<std::size_t>(i)] = static_cast<int>(block % r);
        block /= r;
    }
    return prefix;
}

}  // namespace

std::optional<Coloring> find_avoiding_coloring(const std::vector<ImageInstance>& images,
                                               long long n, int colors, int threads) {
    if (n < 1) throw std::invalid_argument("find_avoiding_coloring: n must be >= 1");
    if (colors < 1 || colors > 31)
        throw std::invalid_argument("find_avoiding_coloring: r must be in 1..31");
    for (const auto& img : images) {
        if (img.values.empty() || !std::is_sorted(img.values.begin(), img.values.end()) ||
            std::adjacent_find(img.values.begin(), img.values.end()) != img.values.end() ||
            img.values.front() < 1 || img.values.back() > n)
            throw std::invalid_argument("find_avoiding_coloring: malformed image value set");
    }

    auto wrap = [&](std::vector<int> colv) {
        Coloring c;
        c.domain = n;
        c.colors = colors;
        c.assignment = std::move(colv);
        return c;
    };

    auto never = []() { return false; };
    if (threads <= 1 || n <= 2) {
        AvoidSearch search(images, n, colors);
        auto res = search.solve({}, never);
        if (!res) return std::nullopt;
        return wrap(std::move(*res));
    }

    int depth = 0;
    long long blocks = 1;
    while (blocks < 4ll * threads && depth < static_cast<int>(n - 1) && depth < 10) {
        blocks *= colors;
        ++depth;
    }

    std::vector<std::optional<std::vector<int>>> results(static_cast<std::size_t>(blocks));
    std::atomic<long long> next{0};
    std::atomic<long long> winner{blocks};
    auto worker = [&]() {
        AvoidSearch search(images, n, colors);
        for (;;) {
            long long b = next.fetch_add(1);
            if (b >= blocks) return;
            if (b > winner.load(std::memory_order_relaxed)) continue;
            auto abort = [&]() { return winner.load(std::memory_order_relaxed) < b; };
            auto res = search.solve(block_prefix(b, colors, depth), abort);
            if (res && !abort()) {
                results[static_cast<std::size_t>(b)] = std::move(res);
                long long cur = winner.load();
                while (b < cur && !winner.compare_exchange_weak(cur, b)) {
                }
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    long long w = winner.load();
    if (w >= blocks) return std::nullopt;
    return wrap(std::move(*results[static_cast<std::size_t>(w)]));
}

Verdict verify_ipr_finite(const Matrix& a, long long n, int colors, long long xmax,
                          const SearchOptions& opts) {
    if (n < 1) throw std::invalid_argument("verify_ipr_finite: n must be >= 1");
    if (colors < 1) throw std::invalid_argument("verify_ipr_finite: r must be >= 1");
    long long xm = xmax > 0 ? xmax : default_xmax(a, n);
    ImageEnumeration en = enumerate_images(a, n, xm, opts.node_budget);

    Verdict v;
    v.n = n;
    v.enumeration_complete = en.complete;
    if (en.images.empty()) {
        v.kind = VerdictKind::inconclusive;
        v.reason = en.complete ? InconclusiveReason::no_images : InconclusiveReason::budget_exhausted;
        return v;
    }
    auto coloring = find_avoiding_coloring(en.images, n, colors, opts.threads);
    if (!coloring) {
        // Sound even for truncated enumerations: more constraints cannot
        // revive an avoiding coloring.
        v.kind = VerdictKind::forced;
        v.images_used = en.images.size();
        return v;
    }
    if (!en.complete) {
        v.kind = VerdictKind::inconclusive;
        v.reason = InconclusiveReason::budget_exhausted;
        return v;
    }
    v.kind = VerdictKind::avoidable;
    v.coloring = std::move(coloring);
    return v;
}

Verdict verify_ipr_deepening(const Matrix& a, long long start_n, long long max_n, int colors,
                             long long xmax, const SearchOptions& opts) {
    if (start_n < 1 || max_n < start_n)
        throw std::invalid_argument("verify_ipr_deepening: need 1 <= start_n <= max_n");
    Verdict last;
    for (long long n = start_n; n <= max_n; ++n) {
        last = verify_ipr_finite(a, n, colors, xmax, opts);
        if (last.kind == VerdictKind::forced) return last;
    }
    return last;
}

std::optional<std::pair<IntSeq, int>> find_monochromatic_witness(const Matrix& a,
                                                                 const Coloring& coloring,
                                                                 long long xmax) {
    if (!coloring.valid()) throw std::invalid_argument("find_monochromatic_witness: bad coloring");
    long long n = coloring.domain;
    long long xm = xmax > 0 ? xmax : default_xmax(a, n);
    Scaled s = scale_matrix(a, std::max(xm, n));

    std::optional<std::pair<IntSeq, int>> found;
    ImageDfs dfs(s, n, xm, kDefaultSearchNodes);
    dfs.run([&](const IntSeq& x, const std::vector<long long>& vals) {
        int c = coloring.color_of(vals[0]);
        for (long long v : vals)
            if (coloring.color_of(v) != c) return true;
        found = {x, c};
        return false;  // lexicographically first witness
    });
    return found;
}

std::string export_cnf(const std::vector<ImageInstance>& images, long long n, int colors) {
    if (n < 1 || colors < 1) throw std::invalid_argument("export_cnf: need n >= 1, r >= 1");
    auto var = [&](long long value, int c) { return (value - 1) * colors + c + 1; };
    std::size_t clauses = static_cast<std::size_t>(n)                                  // >= one color
                          + static_cast<std::size_t>(n) * (static_cast<std::size_t>(colors) *
                                                           (colors - 1) / 2)           // <= one color
                          + images.size() * static_cast<std::size_t>(colors);
    std::ostringstream out;
    out << "p cnf " << n * colors << ' ' << clauses << '\n';
    for (long long value = 1; value <= n; ++value) {
        for (int c = 0; c < colors; ++c) out << var(value, c) << ' ';
        out << "0\n";
        for (int c = 0; c < colors; ++c)
            for (int d = c + 1; d < colors; ++d)
                out << '-' << var(value, c) << " -" << var(value, d) << " 0\n";
    }
    for (const auto& img : images)
        for (int c = 0; c < colors; ++c) {
            for (long long value : img.values) out << '-' << var(value, c) << ' ';
            out << "0\n";
        }
    return out.str();
}

std::optional<Coloring> coloring_from_model(const std::vector<int>& literals, long long n,
                                            int colors) {
    std::vector<char> truth(static_cast<std::size_t>(n) * colors + 1, -1);
    for (int lit : literals) {
        int v = lit < 0 ? -lit : lit;
        if (v == 0 || static_cast<long long>(v) > n * colors) continue;
        truth[static_cast<std::size_t>(v)] = lit > 0 ? 1 : 0;
    }
    Coloring c;
    c.domain = n;
    c.colors = colors;
    c.assignment.reserve(static_cast<std::size_t>(n));
    for (long long value = 1; value <= n; ++value) {
        int chosen = -1;
        for (int col = 0; col < colors; ++col) {
            char t = truth[static_cast<std::size_t>((value - 1) * colors + col + 1)];
            if (t == 1) {
                if (chosen != -1) return std::nullopt;
                chosen = col;
            } else if (t == -1) {
                return std::nullopt;  // incomplete model
            }
        }
        if (chosen == -1) return std::nullopt;
        c.assignment.push_back(chosen);
    }
    return c;
}

}  // namespace ipr
